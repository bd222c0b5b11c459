//! Hamming weights of grid cells, the `a^k b^(n-k)` monomial labels, and
//! weight frequency distributions against binomial coefficients.

use std::fmt;

use serde::Serialize;

use crate::encoding::hamming_weight;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::structure::Region;

/// `a^a b^b`, with `a` standing for A/T letters and `b` for C/G letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (sym, exp) in [('a', self.a), ('b', self.b)] {
            match exp {
                0 => {}
                1 => write!(f, "{sym}")?,
                e => write!(f, "{sym}^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightGrid {
    pub n: usize,
    pub weights: Vec<Vec<usize>>,
    pub monomials: Vec<Vec<Monomial>>,
}

impl WeightGrid {
    pub fn side(&self) -> usize {
        self.weights.len()
    }
}

pub fn weight_grid(grid: &Grid) -> WeightGrid {
    let n = grid.word_len();
    let weights: Vec<Vec<usize>> = grid
        .rows()
        .iter()
        .map(|row| row.iter().map(hamming_weight).collect())
        .collect();
    let monomials = weights
        .iter()
        .map(|row| row.iter().map(|&k| Monomial { a: k, b: n - k }).collect())
        .collect();
    WeightGrid {
        n,
        weights,
        monomials,
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyTable {
    pub n: usize,
    /// Number of cells of each weight `0..=n`.
    pub counts: Vec<u64>,
    pub binomial: Vec<u64>,
    /// `binomial[k] * total / 2^n`; empty when the total is not a multiple
    /// of `2^n`.
    pub expected: Vec<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn frequency_table(n: usize, weights: impl Iterator<Item = usize>) -> FrequencyTable {
    let mut counts = vec![0u64; n + 1];
    for w in weights {
        counts[w] += 1;
    }
    let total: u64 = counts.iter().sum();
    let coefficients: Vec<u64> = (0..=n).map(|k| binomial(n, k)).collect();
    let unit = 1u64 << n;
    let expected: Vec<u64> = if total.is_multiple_of(unit) {
        coefficients.iter().map(|c| c * (total / unit)).collect()
    } else {
        Vec::new()
    };
    let matches = expected == counts;
    FrequencyTable {
        n,
        counts,
        binomial: coefficients,
        expected,
        matches,
    }
}

pub fn frequency_distribution(grid: &Grid) -> FrequencyTable {
    frequency_table(grid.word_len(), grid.words().map(hamming_weight))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceVerdict {
    pub region: Region,
    pub counts: Vec<u64>,
    pub pass: bool,
}

/// Whether each region's weight frequencies are the binomial row scaled to
/// the region size. Region sizes must be multiples of `2^n`.
pub fn balance_report(grid: &Grid, regions: &[Region]) -> Result<Vec<BalanceVerdict>> {
    let wg = weight_grid(grid);
    let unit = 1usize << wg.n;
    regions
        .iter()
        .map(|region| {
            let cells = region.cells(wg.side())?;
            if cells.len() % unit != 0 {
                return Err(Error::Shape(format!(
                    "{region} has {} cells; weight balance for n={} needs a multiple of {unit}",
                    cells.len(),
                    wg.n
                )));
            }
            let table = frequency_table(wg.n, cells.iter().map(|(r, c)| wg.weights[*r][*c]));
            Ok(BalanceVerdict {
                region: *region,
                counts: table.counts,
                pass: table.matches,
            })
        })
        .collect()
}
