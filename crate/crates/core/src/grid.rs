//! Square grids of equal-length words, the embedded canonical tables, and
//! the plain-text grid format.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! n=2 size=4
//! AT TG CC GA
//! CA GC AG TT
//! GG CT TA AC
//! TC AA GT CG
//! ```
//!
//! Lines starting with `#` are ignored wherever they appear. The first
//! remaining line is the header; the next `size` lines hold `size`
//! whitespace-separated words each.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::encoding::{self, Notation, Nucleotide, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    name: Option<String>,
    word_len: usize,
    cells: Vec<Vec<Word>>,
}

impl Grid {
    pub fn new(cells: Vec<Vec<Word>>) -> Result<Grid> {
        let side = cells.len();
        if side == 0 {
            return Err(Error::Shape("grid has no rows".into()));
        }
        let word_len = cells[0].first().map(Word::len).unwrap_or(0);
        for (r, row) in cells.iter().enumerate() {
            if row.len() != side {
                return Err(Error::Shape(format!(
                    "row {} has {} cells, expected {side}",
                    r + 1,
                    row.len()
                )));
            }
            if let Some((c, w)) = row.iter().enumerate().find(|(_, w)| w.len() != word_len) {
                return Err(Error::Shape(format!(
                    "cell ({}, {}) has length {}, expected {word_len}",
                    r + 1,
                    c + 1,
                    w.len()
                )));
            }
        }
        Ok(Grid {
            name: None,
            word_len,
            cells,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Grid {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn side(&self) -> usize {
        self.cells.len()
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    /// Zero-based cell access.
    pub fn cell(&self, row: usize, col: usize) -> &Word {
        &self.cells[row][col]
    }

    pub fn rows(&self) -> &[Vec<Word>] {
        &self.cells
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.cells.iter().flatten()
    }

    pub fn position_of(&self, word: &Word) -> Option<(usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|w| w == word).map(|c| (r, c)))
    }

    /// Cells re-expressed as integers under `notation`.
    pub fn encode(&self, notation: Notation) -> Result<Vec<Vec<u64>>> {
        self.cells
            .iter()
            .map(|row| row.iter().map(|w| encoding::encode(w, notation)).collect())
            .collect()
    }

    /// Letter at `place` (zero-based) of every cell.
    pub fn project(&self, place: usize) -> Result<Vec<Vec<Nucleotide>>> {
        if place >= self.word_len {
            return Err(Error::Shape(format!(
                "place {} outside word length {}",
                place + 1,
                self.word_len
            )));
        }
        Ok(self
            .cells
            .iter()
            .map(|row| row.iter().map(|w| w.letters()[place]).collect())
            .collect())
    }

    /// True when the grid holds every word of its length exactly once.
    pub fn is_complete(&self) -> bool {
        let expected = 1usize << (2 * self.word_len);
        if self.side() * self.side() != expected {
            return false;
        }
        let distinct: HashSet<&Word> = self.words().collect();
        distinct.len() == expected
    }

    pub fn first_duplicate(&self) -> Option<(&Word, (usize, usize))> {
        let mut seen = HashSet::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, w) in row.iter().enumerate() {
                if !seen.insert(w) {
                    return Some((w, (r, c)));
                }
            }
        }
        None
    }

    pub fn swap(&mut self, a: (usize, usize), b: (usize, usize)) {
        let tmp = self.cells[a.0][a.1].clone();
        self.cells[a.0][a.1] = self.cells[b.0][b.1].clone();
        self.cells[b.0][b.1] = tmp;
    }

    pub fn replace(&mut self, at: (usize, usize), word: Word) -> Result<()> {
        if word.len() != self.word_len {
            return Err(Error::Shape(format!(
                "replacement word has length {}, expected {}",
                word.len(),
                self.word_len
            )));
        }
        self.cells[at.0][at.1] = word;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CanonicalTableId {
    M1,
    M2,
    M3,
    R4,
    R8A,
    R8B,
    R16,
    /// The sixteen antiparallel tetramers, one listed pair per half row.
    ENZ,
}

impl CanonicalTableId {
    pub const ALL: [CanonicalTableId; 8] = [
        CanonicalTableId::M1,
        CanonicalTableId::M2,
        CanonicalTableId::M3,
        CanonicalTableId::R4,
        CanonicalTableId::R8A,
        CanonicalTableId::R8B,
        CanonicalTableId::R16,
        CanonicalTableId::ENZ,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalTableId::M1 => "M1",
            CanonicalTableId::M2 => "M2",
            CanonicalTableId::M3 => "M3",
            CanonicalTableId::R4 => "R4",
            CanonicalTableId::R8A => "R8A",
            CanonicalTableId::R8B => "R8B",
            CanonicalTableId::R16 => "R16",
            CanonicalTableId::ENZ => "ENZ",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CanonicalTableId::M1 => "2x2 nucleotides",
            CanonicalTableId::M2 => "4x4 dinucleotides in code order",
            CanonicalTableId::M3 => "8x8 codons in code order",
            CanonicalTableId::R4 => "4x4 dinucleotide magic square (Khajuraho under dec)",
            CanonicalTableId::R8A => "8x8 codon magic square, bimagic in columns",
            CanonicalTableId::R8B => "8x8 codon bimagic square",
            CanonicalTableId::R16 => "16x16 tetramer bimagic square",
            CanonicalTableId::ENZ => "4x4 antiparallel restriction-site tetramers",
        }
    }

    fn source(self) -> &'static str {
        match self {
            CanonicalTableId::M1 => include_str!("../assets/m1.grid"),
            CanonicalTableId::M2 => include_str!("../assets/m2.grid"),
            CanonicalTableId::M3 => include_str!("../assets/m3.grid"),
            CanonicalTableId::R4 => include_str!("../assets/r4.grid"),
            CanonicalTableId::R8A => include_str!("../assets/r8a.grid"),
            CanonicalTableId::R8B => include_str!("../assets/r8b.grid"),
            CanonicalTableId::R16 => include_str!("../assets/r16.grid"),
            CanonicalTableId::ENZ => include_str!("../assets/enz.grid"),
        }
    }
}

impl fmt::Display for CanonicalTableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CanonicalTableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CanonicalTableId> {
        CanonicalTableId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown table id {s:?}")))
    }
}

pub fn load_canonical(id: CanonicalTableId) -> Grid {
    parse_grid(id.source())
        .unwrap_or_else(|e| panic!("embedded table {id} is malformed: {e}"))
        .with_name(id.as_str())
}

/// Comment lines (`#`) that precede the header of an embedded table.
pub fn canonical_notes(id: CanonicalTableId) -> Vec<&'static str> {
    id.source()
        .lines()
        .take_while(|l| l.trim_start().starts_with('#'))
        .map(|l| l.trim_start().trim_start_matches('#').trim_end())
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Require every word of the grid's length to appear exactly once.
    pub require_complete: bool,
}

pub fn parse_grid(text: &str) -> Result<Grid> {
    parse_grid_with(text, ParseOptions::default())
}

pub fn parse_grid_with(text: &str, options: ParseOptions) -> Result<Grid> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let (word_len, side) = parse_header(header_line, header)?;

    let mut rows = Vec::with_capacity(side);
    for (line_no, line) in lines {
        if rows.len() == side {
            return Err(Error::Shape(format!(
                "unexpected row {} on line {line_no}: grid size is {side}",
                rows.len() + 1
            )));
        }
        let row_index = rows.len() + 1;
        let row = line
            .split_whitespace()
            .map(|tok| {
                let word: Word = tok.parse().map_err(|e| match e {
                    Error::InvalidLetter { found, position } => Error::Parse {
                        line: line_no,
                        message: format!(
                            "invalid letter {found:?} in {tok:?} at offset {position}"
                        ),
                    },
                    other => other,
                })?;
                if word.len() != word_len {
                    return Err(Error::Shape(format!(
                        "row {row_index}: word {tok} has length {}, expected {word_len}",
                        word.len()
                    )));
                }
                Ok(word)
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != side {
            return Err(Error::Shape(format!(
                "row {row_index} has {} cells, expected {side}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != side {
        return Err(Error::Shape(format!(
            "expected {side} rows, found {}",
            rows.len()
        )));
    }

    let grid = Grid::new(rows)?;
    if options.require_complete {
        if let Some((w, (r, c))) = grid.first_duplicate() {
            return Err(Error::Data(format!(
                "duplicate word {w} at ({}, {})",
                r + 1,
                c + 1
            )));
        }
        if !grid.is_complete() {
            return Err(Error::Data(format!(
                "grid does not contain all {} words of length {word_len}",
                1usize << (2 * word_len)
            )));
        }
    }
    Ok(grid)
}

fn parse_header(line: usize, header: &str) -> Result<(usize, usize)> {
    let mut word_len = None;
    let mut side = None;
    for field in header.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected key=value in header, got {field:?}"),
        })?;
        let value: usize = value.parse().map_err(|_| Error::Parse {
            line,
            message: format!("{key} is not a positive integer: {value:?}"),
        })?;
        match key {
            "n" => word_len = Some(value),
            "size" => side = Some(value),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown header key {key:?}"),
                })
            }
        }
    }
    match (word_len, side) {
        (Some(n), Some(s)) if n > 0 && s > 0 => Ok((n, s)),
        _ => Err(Error::Parse {
            line,
            message: "header must be `n=<len> size=<side>`".into(),
        }),
    }
}

/// Writes the grid in the text format. With a notation, cells are written
/// as base-10 numerals instead of letters.
pub fn serialize_grid(grid: &Grid, notation: Option<Notation>) -> Result<String> {
    let mut out = format!("n={} size={}\n", grid.word_len(), grid.side());
    for row in grid.rows() {
        let cells = row
            .iter()
            .map(|w| match notation {
                None => Ok(w.to_string()),
                Some(n) => encoding::encode(w, n).map(|v| v.to_string()),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shapes() {
        let shapes = [
            (CanonicalTableId::M1, 2, 1),
            (CanonicalTableId::M2, 4, 2),
            (CanonicalTableId::M3, 8, 3),
            (CanonicalTableId::R4, 4, 2),
            (CanonicalTableId::R8A, 8, 3),
            (CanonicalTableId::R8B, 8, 3),
            (CanonicalTableId::R16, 16, 4),
            (CanonicalTableId::ENZ, 4, 4),
        ];
        for (id, side, n) in shapes {
            let g = load_canonical(id);
            assert_eq!((g.side(), g.word_len()), (side, n), "{id}");
            assert_eq!(g.name(), Some(id.as_str()));
        }
    }

    #[test]
    fn canonical_first_cells() {
        assert_eq!(
            load_canonical(CanonicalTableId::R4).cell(0, 0).to_string(),
            "AT"
        );
        assert_eq!(
            load_canonical(CanonicalTableId::R8B).cell(0, 0).to_string(),
            "CGG"
        );
        assert_eq!(
            load_canonical(CanonicalTableId::R16).cell(0, 1).to_string(),
            "TATA"
        );
    }

    #[test]
    fn completeness() {
        use CanonicalTableId::*;
        for id in [M1, M2, M3, R4, R8A, R8B, R16] {
            assert!(load_canonical(id).is_complete(), "{id}");
        }
        assert!(!load_canonical(ENZ).is_complete());
    }

    #[test]
    fn r4_notes_carry_raw_combination_block() {
        let notes = canonical_notes(CanonicalTableId::R4);
        assert!(notes.iter().any(|l| l.contains("17 19 20 18")));
    }

    #[test]
    fn serialize_with_notation() {
        let r4 = load_canonical(CanonicalTableId::R4);
        let dec = serialize_grid(&r4, Some(Notation::Dec)).unwrap();
        assert_eq!(dec.lines().nth(1), Some("7 12 1 14"));
        let digit = serialize_grid(&r4, Some(Notation::Digit)).unwrap();
        assert_eq!(digit.lines().nth(1), Some("23 34 11 42"));
    }

    #[test]
    fn ragged_row_reports_row_index() {
        let text = "n=2 size=4\nAT TG CC GA\nCA GC AG\nGG CT TA AC\nTC AA GT CG\n";
        let err = parse_grid(text).unwrap_err();
        assert_eq!(err, Error::Shape("row 2 has 3 cells, expected 4".into()));
    }

    #[test]
    fn bad_letter_is_named() {
        let text = "n=3 size=1\nAXT\n";
        match parse_grid(text).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("'X'"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse_grid(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_grid("n=2\nCC\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_grid("n=x size=1\nC\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_grid("n=1 size=2\nC A\n"),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            parse_grid("n=1 size=1\nC\nA\n"),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            parse_grid("n=2 size=1\nCCC\n"),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn duplicates_flagged_only_when_required() {
        let text = "n=1 size=2\nC C\nT G\n";
        assert!(parse_grid(text).is_ok());
        let strict = ParseOptions {
            require_complete: true,
        };
        assert!(matches!(parse_grid_with(text, strict), Err(Error::Data(_))));
        let ok = "n=1 size=2\n# comment\nC A   \nT G\n";
        assert!(parse_grid_with(ok, strict).is_ok());
    }
}
