//! Exact line sums, square sums and magic/bimagic verdicts.
//!
//! All arithmetic is done in `u128`. The largest value the canonical tables
//! produce is the 16x16 binary square-sum `897_867_554_657_688`, well inside
//! that range; a 9-letter binary numeral squared and summed over a 512-wide
//! line also fits.

use serde::Serialize;

use crate::encoding::Notation;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::structure::{self, Region};

pub const PRIME_37: u128 = 37;

/// A grid rendered as integers under one notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericGrid {
    pub source: Option<String>,
    pub notation: Notation,
    pub values: Vec<Vec<u64>>,
}

impl NumericGrid {
    pub fn from_grid(grid: &Grid, notation: Notation) -> Result<NumericGrid> {
        Ok(NumericGrid {
            source: grid.name().map(str::to_owned),
            notation,
            values: grid.encode(notation)?,
        })
    }

    pub fn side(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.values[row][col]
    }

    pub fn region_sums(&self, region: Region) -> Result<RegionSums> {
        let (sum, square_sum) = region
            .cells(self.side())?
            .into_iter()
            .map(|(r, c)| u128::from(self.get(r, c)))
            .fold((0u128, 0u128), |(s, q), v| (s + v, q + v * v));
        Ok(RegionSums {
            region,
            sum,
            square_sum,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionSums {
    #[serde(flatten)]
    pub region: Region,
    pub sum: u128,
    pub square_sum: u128,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub magic: bool,
    pub bimagic: bool,
    pub column_bimagic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisibilityFact {
    pub value: u128,
    pub quotient: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagicReport {
    pub grid: Option<String>,
    pub notation: Notation,
    pub side: usize,
    /// Common row sum; absent when rows disagree.
    pub s1: Option<u128>,
    /// Common square-sum over rows, columns and both diagonals.
    pub s2: Option<u128>,
    /// Common square-sum over columns only.
    pub s2_columns: Option<u128>,
    pub verdicts: Verdict,
    /// Rows, then columns, then main and anti diagonal, then half-lines.
    pub regions: Vec<RegionSums>,
    pub divisibility: Vec<DivisibilityFact>,
}

impl MagicReport {
    fn of_kind<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a RegionSums> + 'a {
        self.regions.iter().filter(move |r| r.region.kind() == kind)
    }

    pub fn rows(&self) -> Vec<RegionSums> {
        self.of_kind("row").copied().collect()
    }

    pub fn columns(&self) -> Vec<RegionSums> {
        self.of_kind("column").copied().collect()
    }

    pub fn diagonals(&self) -> Vec<RegionSums> {
        self.regions
            .iter()
            .filter(|r| matches!(r.region, Region::MainDiagonal | Region::AntiDiagonal))
            .copied()
            .collect()
    }

    pub fn half_lines(&self) -> Vec<RegionSums> {
        self.regions
            .iter()
            .filter(|r| {
                matches!(
                    r.region,
                    Region::HalfRow { .. }
                        | Region::HalfColumn { .. }
                        | Region::HalfDiagonal { .. }
                )
            })
            .copied()
            .collect()
    }

    /// Values checked for divisibility by 37: S1, S2, the column S2 and
    /// every distinct half-line sum, ascending.
    pub fn divisibility_candidates(&self) -> Vec<u128> {
        let mut values: Vec<u128> = [self.s1, self.s2, self.s2_columns]
            .into_iter()
            .flatten()
            .chain(self.half_lines().iter().map(|h| h.sum))
            .collect();
        values.sort_unstable();
        values.dedup();
        values
    }

    /// Candidates that are not multiples of 37.
    pub fn non_divisible(&self) -> Vec<u128> {
        self.divisibility_candidates()
            .into_iter()
            .filter(|v| v % PRIME_37 != 0)
            .collect()
    }
}

fn common<I: IntoIterator<Item = u128>>(values: I) -> Option<u128> {
    let mut it = values.into_iter();
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

pub fn analyze(grid: &Grid, notation: Notation) -> Result<MagicReport> {
    analyze_numeric(&NumericGrid::from_grid(grid, notation)?)
}

pub fn analyze_numeric(values: &NumericGrid) -> Result<MagicReport> {
    let side = values.side();
    let sums = |regions: Vec<Region>| -> Result<Vec<RegionSums>> {
        regions.into_iter().map(|r| values.region_sums(r)).collect()
    };
    let rows = sums(structure::rows(side))?;
    let cols = sums(structure::columns(side))?;
    let diags = sums(structure::diagonals())?;
    let halves = sums(structure::half_lines(side))?;

    let lines = || rows.iter().chain(&cols).chain(&diags);
    let s1 = common(rows.iter().map(|r| r.sum));
    let magic = common(lines().map(|r| r.sum)).is_some();
    let s2 = common(lines().map(|r| r.square_sum));
    let s2_columns = common(cols.iter().map(|r| r.square_sum));

    let verdicts = Verdict {
        magic,
        bimagic: magic && s2.is_some(),
        column_bimagic: magic && s2_columns.is_some(),
    };

    let mut regions = rows;
    regions.extend(cols);
    regions.extend(diags);
    regions.extend(halves);

    let mut report = MagicReport {
        grid: values.source.clone(),
        notation: values.notation,
        side,
        s1,
        s2,
        s2_columns,
        verdicts,
        regions,
        divisibility: Vec::new(),
    };
    report.divisibility = divisibility_facts(&report);
    Ok(report)
}

pub fn divide_by_37(value: u128) -> Option<u128> {
    value.is_multiple_of(PRIME_37).then_some(value / PRIME_37)
}

pub fn divisibility_facts(report: &MagicReport) -> Vec<DivisibilityFact> {
    report
        .divisibility_candidates()
        .into_iter()
        .filter_map(|value| {
            divide_by_37(value).map(|quotient| DivisibilityFact { value, quotient })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockSums {
    #[serde(flatten)]
    pub region: Region,
    pub sum: u128,
    pub square_sum: u128,
    /// Whether the block is itself a magic square; evaluated for k >= 3.
    pub magic_subsquare: Option<bool>,
    /// The block's own magic line sum when it is magic.
    pub line_sum: Option<u128>,
}

pub fn block_report(grid: &Grid, notation: Notation, k: usize) -> Result<Vec<BlockSums>> {
    let values = NumericGrid::from_grid(grid, notation)?;
    let side = values.side();
    if k == 0 || side % k != 0 {
        return Err(Error::Shape(format!(
            "block size {k} does not divide grid side {side}"
        )));
    }
    structure::blocks(side, k)
        .into_iter()
        .map(|region| {
            let RegionSums {
                sum, square_sum, ..
            } = values.region_sums(region)?;
            let (magic_subsquare, line_sum) = if k >= 3 {
                let Region::Block { row, col, .. } = region else {
                    unreachable!()
                };
                let sub = NumericGrid {
                    source: None,
                    notation,
                    values: values.values[row * k..(row + 1) * k]
                        .iter()
                        .map(|r| r[col * k..(col + 1) * k].to_vec())
                        .collect(),
                };
                let inner = analyze_numeric(&sub)?;
                let magic = inner.verdicts.magic;
                (Some(magic), if magic { inner.s1 } else { None })
            } else {
                (None, None)
            };
            Ok(BlockSums {
                region,
                sum,
                square_sum,
                magic_subsquare,
                line_sum,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RectBlockSums {
    /// One-based block coordinates.
    pub block_row: usize,
    pub block_col: usize,
    pub rows: usize,
    pub cols: usize,
    pub sum: u128,
    pub square_sum: u128,
}

pub fn rect_block_report(
    grid: &Grid,
    notation: Notation,
    rows: usize,
    cols: usize,
) -> Result<Vec<RectBlockSums>> {
    let values = NumericGrid::from_grid(grid, notation)?;
    let side = values.side();
    if rows == 0 || cols == 0 || side % rows != 0 || side % cols != 0 {
        return Err(Error::Shape(format!(
            "{rows}x{cols} blocks do not tile a grid of side {side}"
        )));
    }
    let mut out = Vec::with_capacity((side / rows) * (side / cols));
    for br in 0..side / rows {
        for bc in 0..side / cols {
            let (sum, square_sum) = values.values[br * rows..(br + 1) * rows]
                .iter()
                .flat_map(|r| &r[bc * cols..(bc + 1) * cols])
                .map(|&v| u128::from(v))
                .fold((0, 0), |(s, q), v| (s + v, q + v * v));
            out.push(RectBlockSums {
                block_row: br + 1,
                block_col: bc + 1,
                rows,
                cols,
                sum,
                square_sum,
            });
        }
    }
    Ok(out)
}
