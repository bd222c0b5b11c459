//! Regions of a square grid, per-place letter permutations, Latin-square and
//! orthogonality checks, and XOR letter grids.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::encoding::{xor_reduce, Nucleotide};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// A set of cells of an `N x N` grid. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Row(usize),
    Column(usize),
    MainDiagonal,
    AntiDiagonal,
    /// Aligned `size x size` block at block coordinates `(row, col)`.
    Block {
        size: usize,
        row: usize,
        col: usize,
    },
    /// Left (`half = 0`) or right half of a row.
    HalfRow {
        row: usize,
        half: usize,
    },
    HalfColumn {
        col: usize,
        half: usize,
    },
    /// Upper (`half = 0`) or lower half of the main or anti diagonal.
    HalfDiagonal {
        anti: bool,
        half: usize,
    },
}

impl Region {
    pub fn kind(&self) -> &'static str {
        match self {
            Region::Row(_) => "row",
            Region::Column(_) => "column",
            Region::MainDiagonal => "main_diagonal",
            Region::AntiDiagonal => "anti_diagonal",
            Region::Block { .. } => "block",
            Region::HalfRow { .. } => "half_row",
            Region::HalfColumn { .. } => "half_column",
            Region::HalfDiagonal { anti: false, .. } => "half_main_diagonal",
            Region::HalfDiagonal { anti: true, .. } => "half_anti_diagonal",
        }
    }

    /// One-based index parameters, for reports.
    pub fn index(&self) -> Vec<usize> {
        match *self {
            Region::Row(i) | Region::Column(i) => vec![i + 1],
            Region::MainDiagonal | Region::AntiDiagonal => vec![],
            Region::Block { size, row, col } => vec![size, row + 1, col + 1],
            Region::HalfRow { row, half } => vec![row + 1, half + 1],
            Region::HalfColumn { col, half } => vec![col + 1, half + 1],
            Region::HalfDiagonal { half, .. } => vec![half + 1],
        }
    }

    pub fn cells(&self, side: usize) -> Result<Vec<(usize, usize)>> {
        let out_of_range = || Error::Shape(format!("{self} lies outside a grid of side {side}"));
        let halves = |half: usize| -> Result<std::ops::Range<usize>> {
            if !side.is_multiple_of(2) {
                return Err(Error::Shape(format!("grid side {side} has no halves")));
            }
            if half > 1 {
                return Err(out_of_range());
            }
            let h = side / 2;
            Ok(half * h..(half + 1) * h)
        };
        Ok(match *self {
            Region::Row(r) if r < side => (0..side).map(|c| (r, c)).collect(),
            Region::Column(c) if c < side => (0..side).map(|r| (r, c)).collect(),
            Region::MainDiagonal => (0..side).map(|i| (i, i)).collect(),
            Region::AntiDiagonal => (0..side).map(|i| (i, side - 1 - i)).collect(),
            Region::Block { size, row, col } => {
                if size == 0 || !side.is_multiple_of(size) {
                    return Err(Error::Shape(format!(
                        "block size {size} does not divide grid side {side}"
                    )));
                }
                if row >= side / size || col >= side / size {
                    return Err(out_of_range());
                }
                let mut cells = Vec::with_capacity(size * size);
                for r in row * size..(row + 1) * size {
                    for c in col * size..(col + 1) * size {
                        cells.push((r, c));
                    }
                }
                cells
            }
            Region::HalfRow { row, half } if row < side => {
                halves(half)?.map(|c| (row, c)).collect()
            }
            Region::HalfColumn { col, half } if col < side => {
                halves(half)?.map(|r| (r, col)).collect()
            }
            Region::HalfDiagonal { anti, half } => halves(half)?
                .map(|i| if anti { (i, side - 1 - i) } else { (i, i) })
                .collect(),
            _ => return Err(out_of_range()),
        })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.index();
        if idx.is_empty() {
            return f.write_str(self.kind());
        }
        let parts: Vec<String> = idx.iter().map(usize::to_string).collect();
        write!(f, "{}[{}]", self.kind(), parts.join(","))
    }
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Region", 2)?;
        s.serialize_field("kind", self.kind())?;
        s.serialize_field("index", &self.index())?;
        s.end()
    }
}

pub fn rows(side: usize) -> Vec<Region> {
    (0..side).map(Region::Row).collect()
}

pub fn columns(side: usize) -> Vec<Region> {
    (0..side).map(Region::Column).collect()
}

pub fn diagonals() -> Vec<Region> {
    vec![Region::MainDiagonal, Region::AntiDiagonal]
}

/// All aligned `size x size` blocks, row-major. Empty when `size` does not
/// divide `side`.
pub fn blocks(side: usize, size: usize) -> Vec<Region> {
    if size == 0 || !side.is_multiple_of(size) {
        return Vec::new();
    }
    let n = side / size;
    (0..n)
        .flat_map(|row| (0..n).map(move |col| Region::Block { size, row, col }))
        .collect()
}

pub fn half_lines(side: usize) -> Vec<Region> {
    if !side.is_multiple_of(2) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for row in 0..side {
        for half in 0..2 {
            out.push(Region::HalfRow { row, half });
        }
    }
    for col in 0..side {
        for half in 0..2 {
            out.push(Region::HalfColumn { col, half });
        }
    }
    for anti in [false, true] {
        for half in 0..2 {
            out.push(Region::HalfDiagonal { anti, half });
        }
    }
    out
}

/// Rows, columns, both diagonals, aligned 2x2 and 4x4 blocks smaller than
/// the grid, and half-lines.
pub fn standard_regions(side: usize) -> Vec<Region> {
    let mut out = rows(side);
    out.extend(columns(side));
    out.extend(diagonals());
    for size in [2, 4] {
        if size < side {
            out.extend(blocks(side, size));
        }
    }
    out.extend(half_lines(side));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionVerdict {
    pub region: Region,
    pub pass: bool,
}

/// For each region, whether the letters at `place` (one-based) are evenly
/// spread over `{C, A, T, G}`: each letter appears `len / 4` times.
pub fn place_permutation_report(
    grid: &Grid,
    place: usize,
    regions: &[Region],
) -> Result<Vec<RegionVerdict>> {
    if place == 0 || place > grid.word_len() {
        return Err(Error::Shape(format!(
            "place {place} outside 1..={}",
            grid.word_len()
        )));
    }
    let letters = grid.project(place - 1)?;
    regions
        .iter()
        .map(|region| {
            let cells = region.cells(grid.side())?;
            if cells.len() % 4 != 0 {
                return Err(Error::Shape(format!(
                    "{region} has {} cells, not a multiple of 4",
                    cells.len()
                )));
            }
            let mut counts = [0usize; 4];
            for (r, c) in &cells {
                counts[letters[*r][*c].index()] += 1;
            }
            let each = cells.len() / 4;
            Ok(RegionVerdict {
                region: *region,
                pass: counts.iter().all(|&k| k == each),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatinReport {
    pub latin: bool,
    pub diagonal_latin: bool,
}

fn all_distinct<T: Eq + Hash>(items: impl IntoIterator<Item = T>) -> bool {
    let mut seen = HashSet::new();
    items.into_iter().all(|x| seen.insert(x))
}

fn check_square<T>(array: &[Vec<T>]) -> Result<usize> {
    let side = array.len();
    if let Some((r, row)) = array.iter().enumerate().find(|(_, row)| row.len() != side) {
        return Err(Error::Shape(format!(
            "row {} has {} entries in an array of side {side}",
            r + 1,
            row.len()
        )));
    }
    Ok(side)
}

fn alphabet_size<T: Eq + Hash>(array: &[Vec<T>]) -> usize {
    array.iter().flatten().collect::<HashSet<_>>().len()
}

pub fn latin_square_check<T: Eq + Hash>(array: &[Vec<T>]) -> Result<LatinReport> {
    let side = check_square(array)?;
    let symbols = alphabet_size(array);
    if symbols > side {
        return Err(Error::Shape(format!(
            "{symbols} distinct symbols cannot come from an alphabet of size {side}"
        )));
    }
    let rows_ok = array.iter().all(all_distinct);
    let cols_ok = (0..side).all(|c| all_distinct(array.iter().map(|row| &row[c])));
    let latin = rows_ok && cols_ok;
    let diagonal_latin = latin
        && all_distinct((0..side).map(|i| &array[i][i]))
        && all_distinct((0..side).map(|i| &array[i][side - 1 - i]));
    Ok(LatinReport {
        latin,
        diagonal_latin,
    })
}

/// True when superimposing the two arrays yields every ordered pair of
/// symbols at most once (hence exactly once, given `N` symbols each).
pub fn orthogonality_check<A, B>(a: &[Vec<A>], b: &[Vec<B>]) -> Result<bool>
where
    A: Eq + Hash,
    B: Eq + Hash,
{
    let side = check_square(a)?;
    if check_square(b)? != side {
        return Err(Error::Shape(format!(
            "arrays of side {side} and {} cannot be superimposed",
            b.len()
        )));
    }
    for (name, size) in [("first", alphabet_size(a)), ("second", alphabet_size(b))] {
        if size > side {
            return Err(Error::Shape(format!(
                "{name} array has {size} distinct symbols, more than {side}"
            )));
        }
    }
    Ok(all_distinct(
        a.iter().zip(b).flat_map(|(ra, rb)| ra.iter().zip(rb)),
    ))
}

/// Symbol for the XOR reduction of each cell: `a..h` for codons, `0..3`
/// for dinucleotides.
pub fn xor_letter_grid(grid: &Grid) -> Result<Vec<Vec<char>>> {
    let alphabet: &[u8] = match grid.word_len() {
        2 => b"0123",
        3 => b"abcdefgh",
        n => {
            return Err(Error::Shape(format!(
                "xor letter grids need words of length 2 or 3, got {n}"
            )))
        }
    };
    Ok(grid
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| alphabet[xor_reduce(w).value() as usize] as char)
                .collect()
        })
        .collect())
}

/// Partition of the symbols of a letter grid by the 2x2 block they occur
/// in: each block's symbol set, deduplicated and sorted.
pub fn block_symbol_groups(array: &[Vec<char>]) -> Vec<Vec<char>> {
    let side = array.len();
    let mut groups: Vec<Vec<char>> = blocks(side, 2)
        .into_iter()
        .filter_map(|b| b.cells(side).ok())
        .map(|cells| {
            let mut s: Vec<char> = cells.iter().map(|(r, c)| array[*r][*c]).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    groups.sort();
    groups.dedup();
    groups
}

/// Letter counts over a region at a place, keyed by nucleotide.
pub fn place_counts(
    grid: &Grid,
    place: usize,
    region: &Region,
) -> Result<HashMap<Nucleotide, usize>> {
    let letters = grid.project(
        place
            .checked_sub(1)
            .ok_or_else(|| Error::Shape("places are one-based".into()))?,
    )?;
    let mut counts = HashMap::new();
    for (r, c) in region.cells(grid.side())? {
        *counts.entry(letters[r][c]).or_insert(0) += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{load_canonical, CanonicalTableId};

    #[test]
    fn region_cells() {
        assert_eq!(Region::Row(1).cells(2).unwrap(), vec![(1, 0), (1, 1)]);
        assert_eq!(
            Region::AntiDiagonal.cells(3).unwrap(),
            vec![(0, 2), (1, 1), (2, 0)]
        );
        assert_eq!(
            Region::Block {
                size: 2,
                row: 1,
                col: 0
            }
            .cells(4)
            .unwrap(),
            vec![(2, 0), (2, 1), (3, 0), (3, 1)]
        );
        assert_eq!(
            Region::HalfDiagonal {
                anti: true,
                half: 1
            }
            .cells(4)
            .unwrap(),
            vec![(2, 1), (3, 0)]
        );
        assert!(Region::Block {
            size: 3,
            row: 0,
            col: 0
        }
        .cells(8)
        .is_err());
        assert!(Region::Row(8).cells(8).is_err());
        assert!(Region::HalfRow { row: 0, half: 0 }.cells(3).is_err());
    }

    #[test]
    fn region_labels() {
        assert_eq!(Region::Row(0).to_string(), "row[1]");
        assert_eq!(Region::MainDiagonal.to_string(), "main_diagonal");
        assert_eq!(
            Region::Block {
                size: 4,
                row: 0,
                col: 1
            }
            .to_string(),
            "block[4,1,2]"
        );
    }

    #[test]
    fn r4_place_permutations() {
        let r4 = load_canonical(CanonicalTableId::R4);
        let v = place_permutation_report(&r4, 1, &[Region::Row(0)]).unwrap();
        assert!(v[0].pass);
        let v = place_permutation_report(&r4, 2, &[Region::MainDiagonal]).unwrap();
        assert!(v[0].pass);
    }

    #[test]
    fn m2_column_fails() {
        let m2 = load_canonical(CanonicalTableId::M2);
        let v = place_permutation_report(&m2, 1, &[Region::Row(0), Region::Column(0)]).unwrap();
        assert!(v[0].pass);
        assert!(!v[1].pass);
    }

    #[test]
    fn permutation_report_errors() {
        let r4 = load_canonical(CanonicalTableId::R4);
        assert!(place_permutation_report(&r4, 0, &[]).is_err());
        assert!(place_permutation_report(&r4, 3, &[]).is_err());
        let half = Region::HalfRow { row: 0, half: 0 };
        assert!(matches!(
            place_permutation_report(&r4, 1, &[half]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn latin_checks() {
        let r4 = load_canonical(CanonicalTableId::R4);
        let first = r4.project(0).unwrap();
        let second = r4.project(1).unwrap();
        assert_eq!(
            latin_square_check(&first).unwrap(),
            LatinReport {
                latin: true,
                diagonal_latin: true
            }
        );
        assert!(latin_square_check(&second).unwrap().diagonal_latin);
        assert!(orthogonality_check(&first, &second).unwrap());
        assert!(!orthogonality_check(&first, &first).unwrap());

        let xor = xor_letter_grid(&r4).unwrap();
        assert_eq!(xor[0], vec!['3', '2', '0', '1']);
        assert!(!latin_square_check(&xor).unwrap().diagonal_latin);

        let mono = vec![vec!['C'; 4]; 4];
        assert!(!latin_square_check(&mono).unwrap().latin);
        let wide = vec![vec![0, 1], vec![2, 3]];
        assert!(matches!(latin_square_check(&wide), Err(Error::Shape(_))));
    }

    #[test]
    fn latin_all_one_symbol_side_one() {
        let one = vec![vec!['C']];
        assert_eq!(
            latin_square_check(&one).unwrap(),
            LatinReport {
                latin: true,
                diagonal_latin: true
            }
        );
    }

    #[test]
    fn orthogonality_shape_errors() {
        let a = vec![vec![0, 1], vec![1, 0]];
        let b = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(orthogonality_check(&a, &b).is_err());
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(orthogonality_check(&ragged, &a).is_err());
    }

    #[test]
    fn m2_places_orthogonal() {
        let m2 = load_canonical(CanonicalTableId::M2);
        assert!(orthogonality_check(&m2.project(0).unwrap(), &m2.project(1).unwrap()).unwrap());
    }

    #[test]
    fn xor_grid_needs_short_words() {
        assert!(xor_letter_grid(&load_canonical(CanonicalTableId::R16)).is_err());
        assert!(xor_letter_grid(&load_canonical(CanonicalTableId::M1)).is_err());
    }
}
