//! Probability grids from magic squares, Shannon entropy terms and line
//! sums, and the genome order index `S(P) = sum p^2`.
//!
//! Probabilities are kept as exact rationals `value / S1`. Entropy terms use
//! base-10 logarithms and are evaluated from the exact ratio, never from a
//! rounded display value. Zero cells contribute zero.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::encoding::Notation;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::magic::NumericGrid;

pub type Exact = Ratio<u128>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityGrid {
    pub source: Option<String>,
    pub notation: Notation,
    /// Common line sum used as the denominator.
    pub total: u128,
    pub values: Vec<Vec<u64>>,
}

impl ProbabilityGrid {
    pub fn side(&self) -> usize {
        self.values.len()
    }

    pub fn probability(&self, row: usize, col: usize) -> Exact {
        Ratio::new(u128::from(self.values[row][col]), self.total)
    }

    pub fn probability_f64(&self, row: usize, col: usize) -> f64 {
        ratio_to_f64(&self.probability(row, col))
    }

    fn line_cells(&self) -> Vec<(LineKind, Vec<(usize, usize)>)> {
        let n = self.side();
        let mut out = Vec::with_capacity(2 * n + 2);
        for r in 0..n {
            out.push((LineKind::Row(r), (0..n).map(|c| (r, c)).collect()));
        }
        for c in 0..n {
            out.push((LineKind::Column(c), (0..n).map(|r| (r, c)).collect()));
        }
        out.push((LineKind::MainDiagonal, (0..n).map(|i| (i, i)).collect()));
        out.push((
            LineKind::AntiDiagonal,
            (0..n).map(|i| (i, n - 1 - i)).collect(),
        ));
        out
    }

    /// Exact total probability of each row (all equal to one).
    pub fn row_totals(&self) -> Vec<Exact> {
        (0..self.side())
            .map(|r| (0..self.side()).map(|c| self.probability(r, c)).sum())
            .collect()
    }

    pub fn column_totals(&self) -> Vec<Exact> {
        (0..self.side())
            .map(|c| (0..self.side()).map(|r| self.probability(r, c)).sum())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum LineKind {
    Row(usize),
    Column(usize),
    MainDiagonal,
    AntiDiagonal,
}

pub fn ratio_to_f64(r: &Exact) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

/// Divides every cell by the common line sum. Rows and columns must all
/// share that sum.
pub fn normalize(grid: &Grid, notation: Notation) -> Result<ProbabilityGrid> {
    normalize_numeric(&NumericGrid::from_grid(grid, notation)?)
}

pub fn normalize_numeric(values: &NumericGrid) -> Result<ProbabilityGrid> {
    let n = values.side();
    let row_sum = |r: usize| {
        values.values[r]
            .iter()
            .map(|&v| u128::from(v))
            .sum::<u128>()
    };
    let col_sum = |c: usize| {
        values
            .values
            .iter()
            .map(|row| u128::from(row[c]))
            .sum::<u128>()
    };
    let total = row_sum(0);
    if let Some(r) = (1..n).find(|&r| row_sum(r) != total) {
        return Err(Error::Precondition(format!(
            "grid is not magic: row 1 sums to {total} but row {} sums to {}",
            r + 1,
            row_sum(r)
        )));
    }
    if let Some(c) = (0..n).find(|&c| col_sum(c) != total) {
        return Err(Error::Precondition(format!(
            "grid is not magic: rows sum to {total} but column {} sums to {}",
            c + 1,
            col_sum(c)
        )));
    }
    if total == 0 {
        return Err(Error::Precondition("line sum is zero".into()));
    }
    Ok(ProbabilityGrid {
        source: values.source.clone(),
        notation: values.notation,
        total,
        values: values.values.clone(),
    })
}

/// `-p log10 p`, with `0 log 0 = 0`.
pub fn entropy_term(p: &Exact) -> f64 {
    if p.numer().is_zero() {
        return 0.0;
    }
    let (Some(num), Some(den)) = (p.numer().to_f64(), p.denom().to_f64()) else {
        return f64::NAN;
    };
    -(num / den) * (num.log10() - den.log10())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub grid: Option<String>,
    pub notation: Notation,
    pub terms: Vec<Vec<f64>>,
    pub row_sums: Vec<f64>,
    pub col_sums: Vec<f64>,
    /// Main diagonal, then anti diagonal.
    pub diag_sums: [f64; 2],
    pub order_index_rows: Vec<f64>,
}

impl EntropyReport {
    /// Row and column sums together.
    pub fn line_sums(&self) -> impl Iterator<Item = f64> + '_ {
        self.row_sums.iter().chain(&self.col_sums).copied()
    }
}

pub fn shannon_report(p: &ProbabilityGrid) -> EntropyReport {
    let n = p.side();
    let terms: Vec<Vec<f64>> = (0..n)
        .map(|r| (0..n).map(|c| entropy_term(&p.probability(r, c))).collect())
        .collect();
    let row_sums = terms.iter().map(|row| row.iter().sum()).collect();
    let col_sums = (0..n)
        .map(|c| terms.iter().map(|row| row[c]).sum())
        .collect();
    let main: f64 = (0..n).map(|i| terms[i][i]).sum();
    let anti: f64 = (0..n).map(|i| terms[i][n - 1 - i]).sum();
    let order = order_index(p);
    EntropyReport {
        grid: p.source.clone(),
        notation: p.notation,
        terms,
        row_sums,
        col_sums,
        diag_sums: [main, anti],
        order_index_rows: order.rows().map(|l| ratio_to_f64(&l.value)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineIndex {
    pub line: LineKind,
    pub value: Exact,
}

impl Serialize for LineIndex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("LineIndex", 4)?;
        s.serialize_field("line", &self.line)?;
        s.serialize_field("numerator", &self.value.numer().to_string())?;
        s.serialize_field("denominator", &self.value.denom().to_string())?;
        s.serialize_field("decimal", &ratio_to_f64(&self.value))?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderIndex {
    pub lines: Vec<LineIndex>,
}

impl OrderIndex {
    pub fn rows(&self) -> impl Iterator<Item = &LineIndex> {
        self.lines
            .iter()
            .filter(|l| matches!(l.line, LineKind::Row(_)))
    }

    pub fn columns(&self) -> impl Iterator<Item = &LineIndex> {
        self.lines
            .iter()
            .filter(|l| matches!(l.line, LineKind::Column(_)))
    }

    /// The common value when every line agrees.
    pub fn common(&self) -> Option<Exact> {
        let first = self.lines.first()?.value;
        self.lines.iter().all(|l| l.value == first).then_some(first)
    }
}

/// `sum p^2` for every row, column and both diagonals.
pub fn order_index(p: &ProbabilityGrid) -> OrderIndex {
    let denom = p.total * p.total;
    let lines = p
        .line_cells()
        .into_iter()
        .map(|(line, cells)| {
            let squares: u128 = cells
                .iter()
                .map(|&(r, c)| {
                    let v = u128::from(p.values[r][c]);
                    v * v
                })
                .sum();
            LineIndex {
                line,
                value: Ratio::new(squares, denom),
            }
        })
        .collect();
    OrderIndex { lines }
}

/// Display precision used by the published tables: four decimals up to
/// 8x8, five above.
pub fn default_precision(side: usize) -> usize {
    if side > 8 {
        5
    } else {
        4
    }
}

pub fn format_decimal(value: f64, places: usize, decimal_comma: bool) -> String {
    let s = format!("{value:.places$}");
    if decimal_comma {
        s.replace('.', ",")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{load_canonical, CanonicalTableId};

    fn round(v: f64, places: i32) -> f64 {
        let f = 10f64.powi(places);
        (v * f).round() / f
    }

    #[test]
    fn r8a_bin_first_row_probabilities() {
        let p = normalize(&load_canonical(CanonicalTableId::R8A), Notation::Bin).unwrap();
        assert_eq!(p.total, 444444);
        let row: Vec<f64> = (0..8).map(|c| round(p.probability_f64(0, c), 5)).collect();
        assert_eq!(
            row,
            vec![0.0, 0.22525, 0.24977, 0.02498, 0.00023, 0.22502, 0.25, 0.02475]
        );
        assert_eq!(p.probability(0, 1), Ratio::new(100110, 444444));
    }

    #[test]
    fn normalized_lines_sum_to_one() {
        let p = normalize(&load_canonical(CanonicalTableId::R4), Notation::Bin).unwrap();
        assert!(p.row_totals().iter().all(|t| *t == Ratio::from_integer(1)));
        assert!(p
            .column_totals()
            .iter()
            .all(|t| *t == Ratio::from_integer(1)));
    }

    #[test]
    fn non_magic_rejected() {
        let err = normalize(&load_canonical(CanonicalTableId::M2), Notation::Dec).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("row 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn column_mismatch_rejected() {
        // rows all sum to 3, columns do not
        let values = NumericGrid {
            source: None,
            notation: Notation::Dec,
            values: vec![vec![1, 2], vec![1, 2]],
        };
        let err = normalize_numeric(&values).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("column 1")));
    }

    #[test]
    fn terms() {
        assert_eq!(round(entropy_term(&Ratio::new(11, 2222)), 4), 0.0114);
        assert_eq!(entropy_term(&Ratio::new(0, 5)), 0.0);
        assert_eq!(entropy_term(&Ratio::new(1, 1)), 0.0);
        assert_eq!(round(entropy_term(&Ratio::new(100110, 444444)), 4), 0.1458);
    }

    #[test]
    fn uniform_row_is_log_four() {
        let values = NumericGrid {
            source: None,
            notation: Notation::Dec,
            values: vec![vec![1; 4]; 4],
        };
        let report = shannon_report(&normalize_numeric(&values).unwrap());
        for s in &report.row_sums {
            assert!((s - 4f64.log10()).abs() < 1e-12);
        }
        assert_eq!(round(report.row_sums[0], 4), 0.6021);
    }

    #[test]
    fn degenerate_row_order_index_is_one() {
        let values = NumericGrid {
            source: None,
            notation: Notation::Dec,
            values: vec![vec![1, 0], vec![0, 1]],
        };
        let idx = order_index(&normalize_numeric(&values).unwrap());
        assert!(idx.rows().all(|l| l.value == Ratio::from_integer(1)));
    }

    #[test]
    fn r8b_order_index_is_s2_over_s1_squared() {
        let p = normalize(&load_canonical(CanonicalTableId::R8B), Notation::Bin).unwrap();
        let idx = order_index(&p);
        let expected = Ratio::new(44893328844u128, 444444u128 * 444444);
        assert_eq!(idx.common(), Some(expected));
        assert_eq!(round(ratio_to_f64(&expected), 4), 0.2273);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_decimal(0.67318, 4, false), "0.6732");
        assert_eq!(format_decimal(0.67318, 4, true), "0,6732");
        assert_eq!(default_precision(8), 4);
        assert_eq!(default_precision(16), 5);
    }
}
