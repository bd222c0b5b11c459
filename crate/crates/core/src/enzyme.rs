//! Restriction-enzyme tetramers built from four distinct bases.
//!
//! Sixteen such tetramers carry antiparallel `A-T`/`G-C` structure and are
//! listed with the number of known enzymes cutting at them, split by
//! whether the complementary pairs run in the same or opposite orientation.
//! Each same-orientation site is paired with the opposite-orientation site
//! obtained by moving its last letter to the front.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::encoding::{self, Notation, Nucleotide, Word};
use crate::error::{Error, Result};
use crate::grid::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Same,
    Opposite,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Same => "same",
            Orientation::Opposite => "opposite",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Orientation> {
        match s.to_ascii_lowercase().as_str() {
            "same" => Ok(Orientation::Same),
            "opposite" => Ok(Orientation::Opposite),
            other => Err(Error::Domain(format!("unknown orientation {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnzymeRecord {
    pub tetramer: &'static str,
    pub orientation: Orientation,
    pub enzyme_count: u32,
}

impl EnzymeRecord {
    pub fn word(&self) -> Word {
        self.tetramer
            .parse()
            .expect("embedded tetramers are valid words")
    }
}

/// Listed pairs, one row per pair: (same orientation, opposite orientation).
pub const ANTIPARALLEL_PAIRS: [(EnzymeRecord, EnzymeRecord); 8] = {
    const fn rec(
        tetramer: &'static str,
        orientation: Orientation,
        enzyme_count: u32,
    ) -> EnzymeRecord {
        EnzymeRecord {
            tetramer,
            orientation,
            enzyme_count,
        }
    }
    use Orientation::{Opposite as O, Same as S};
    [
        (rec("AGCT", S, 9), rec("TAGC", O, 0)),
        (rec("CGTA", S, 0), rec("ACGT", O, 2)),
        (rec("TACG", S, 0), rec("GTAC", O, 4)),
        (rec("CTAG", S, 9), rec("GCTA", O, 0)),
        (rec("GCAT", S, 1), rec("TGCA", O, 11)),
        (rec("TCGA", S, 32), rec("ATCG", O, 0)),
        (rec("ATGC", S, 0), rec("CATG", O, 3)),
        (rec("GATC", S, 45), rec("CGAT", O, 0)),
    ]
};

/// Enzyme totals stated in the table header. The per-site counts of the
/// same-orientation column add up to 96, not 88; both are kept as published.
pub const SAME_ORIENTATION_TOTAL: u32 = 88;
pub const OPPOSITE_ORIENTATION_TOTAL: u32 = 20;

pub fn count_total(orientation: Orientation) -> u32 {
    records_with(orientation)
        .iter()
        .map(|r| r.enzyme_count)
        .sum()
}

/// All sixteen records in table order, same-orientation column first.
pub fn records() -> Vec<EnzymeRecord> {
    let (same, opposite): (Vec<_>, Vec<_>) = ANTIPARALLEL_PAIRS.iter().copied().unzip();
    same.into_iter().chain(opposite).collect()
}

pub fn records_with(orientation: Orientation) -> Vec<EnzymeRecord> {
    records()
        .into_iter()
        .filter(|r| r.orientation == orientation)
        .collect()
}

fn require_distinct_tetramer(word: &Word) -> Result<()> {
    if word.len() != 4 {
        return Err(Error::Domain(format!("{word} is not a tetramer")));
    }
    let distinct: BTreeSet<Nucleotide> = word.letters().iter().copied().collect();
    if distinct.len() != 4 {
        return Err(Error::Domain(format!("{word} repeats a letter")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Listed(EnzymeRecord),
    Unlisted,
}

pub fn classify(tetramer: &Word) -> Result<Classification> {
    require_distinct_tetramer(tetramer)?;
    let text = tetramer.to_string();
    Ok(records()
        .into_iter()
        .find(|r| r.tetramer == text)
        .map_or(Classification::Unlisted, Classification::Listed))
}

/// True when some cyclically adjacent pair of letters (the last letter is
/// adjacent to the first) is `AT`, `TA`, `GC` or `CG`.
pub fn antiparallel_check(tetramer: &Word) -> Result<bool> {
    require_distinct_tetramer(tetramer)?;
    let l = tetramer.letters();
    Ok((0..4).any(|i| is_complementary_dimer(l[i], l[(i + 1) % 4])))
}

fn is_complementary_dimer(a: Nucleotide, b: Nucleotide) -> bool {
    use Nucleotide::*;
    matches!((a, b), (A, T) | (T, A) | (G, C) | (C, G))
}

/// The 24 tetramers that use each base once, in decimal order.
pub fn distinct_letter_tetramers() -> Vec<Word> {
    Word::all_of_length(4)
        .filter(|w| require_distinct_tetramer(w).is_ok())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrientationSums {
    pub same: u128,
    pub opposite: u128,
}

pub fn orientation_sums(notation: Notation) -> Result<OrientationSums> {
    let sum = |o| -> Result<u128> {
        records_with(o)
            .iter()
            .map(|r| encoding::encode(&r.word(), notation).map(u128::from))
            .sum()
    };
    Ok(OrientationSums {
        same: sum(Orientation::Same)?,
        opposite: sum(Orientation::Opposite)?,
    })
}

/// Whether both tetramers of every listed pair sit in the same aligned 4x4
/// block, and every such block lies in the lower half of a 16x16 grid.
pub fn block_locality_check(grid: &Grid) -> Result<bool> {
    if grid.word_len() != 4 || grid.side() != 16 {
        return Err(Error::Shape(format!(
            "block locality needs a 16x16 tetramer grid, got {0}x{0} of length {1}",
            grid.side(),
            grid.word_len()
        )));
    }
    let locate = |r: &EnzymeRecord| {
        grid.position_of(&r.word())
            .ok_or_else(|| Error::Data(format!("tetramer {} is missing from the grid", r.tetramer)))
    };
    let mut ok = true;
    for (same, opposite) in &ANTIPARALLEL_PAIRS {
        let (a, b) = (locate(same)?, locate(opposite)?);
        let block = |(r, c): (usize, usize)| (r / 4, c / 4);
        ok &= block(a) == block(b) && block(a).0 >= 2;
    }
    Ok(ok)
}

/// Applies the letter cycle `A -> G -> C -> T -> A` `steps` times.
pub fn cycle_letters(word: &Word, steps: usize) -> Word {
    use Nucleotide::*;
    const ORDER: [Nucleotide; 4] = [A, G, C, T];
    let letters = word
        .letters()
        .iter()
        .map(|l| {
            let i = ORDER.iter().position(|o| o == l).expect("four letters");
            ORDER[(i + steps) % 4]
        })
        .collect();
    Word::new(letters).expect("non-empty")
}

/// Whether the tetramers of one orientation map onto themselves under
/// [`cycle_letters`] with the given step count.
pub fn group_closed_under_cycle(orientation: Orientation, steps: usize) -> bool {
    let group: BTreeSet<String> = records_with(orientation)
        .iter()
        .map(|r| r.tetramer.to_owned())
        .collect();
    group.iter().all(|t| {
        let w: Word = t.parse().expect("valid");
        group.contains(&cycle_letters(&w, steps).to_string())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnzymeEntry {
    pub tetramer: String,
    pub orientation: Orientation,
    pub enzyme_count: u32,
    pub encodings: Encodings,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Encodings {
    pub bin: String,
    pub digit: u64,
    pub dec: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnzymeTable {
    pub records: Vec<EnzymeEntry>,
    pub sums: Vec<NotationSums>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotationSums {
    pub notation: Notation,
    pub same: u128,
    pub opposite: u128,
}

pub fn enzyme_table(filter: Option<Orientation>) -> Result<EnzymeTable> {
    let records = records()
        .into_iter()
        .filter(|r| filter.is_none_or(|o| r.orientation == o))
        .map(|r| {
            let w = r.word();
            Ok(EnzymeEntry {
                tetramer: r.tetramer.to_owned(),
                orientation: r.orientation,
                enzyme_count: r.enzyme_count,
                encodings: Encodings {
                    bin: encoding::render(&w, Notation::Bin)?,
                    digit: encoding::encode(&w, Notation::Digit)?,
                    dec: encoding::encode(&w, Notation::Dec)?,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sums = Notation::ALL
        .into_iter()
        .map(|n| {
            orientation_sums(n).map(|s| NotationSums {
                notation: n,
                same: s.same,
                opposite: s.opposite,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnzymeTable { records, sums })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{load_canonical, CanonicalTableId};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        match classify(&w("GATC")).unwrap() {
            Classification::Listed(r) => {
                assert_eq!(r.orientation, Orientation::Same);
                assert_eq!(r.enzyme_count, 45);
            }
            other => panic!("{other:?}"),
        }
        match classify(&w("TGCA")).unwrap() {
            Classification::Listed(r) => {
                assert_eq!((r.orientation, r.enzyme_count), (Orientation::Opposite, 11))
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify(&w("AGTC")).unwrap(), Classification::Unlisted);
        assert!(matches!(classify(&w("AATC")), Err(Error::Domain(_))));
        assert!(matches!(classify(&w("ATC")), Err(Error::Domain(_))));
    }

    #[test]
    fn counts_total() {
        assert_eq!(
            count_total(Orientation::Opposite),
            OPPOSITE_ORIENTATION_TOTAL
        );
        assert_eq!(count_total(Orientation::Same), 96);
    }

    #[test]
    fn pairs_are_rotations() {
        for (s, o) in &ANTIPARALLEL_PAIRS {
            let rotated = format!("{}{}", &s.tetramer[3..], &s.tetramer[..3]);
            assert_eq!(rotated, o.tetramer);
        }
    }

    #[test]
    fn antiparallel_examples() {
        assert!(antiparallel_check(&w("AGCT")).unwrap());
        assert!(!antiparallel_check(&w("AGTC")).unwrap());
        assert!(antiparallel_check(&w("AAGC")).is_err());
    }

    #[test]
    fn sums() {
        assert_eq!(
            orientation_sums(Notation::Dec).unwrap(),
            OrientationSums {
                same: 1028,
                opposite: 1028
            }
        );
        assert_eq!(orientation_sums(Notation::Digit).unwrap().same, 22220);
        assert_eq!(orientation_sums(Notation::Bin).unwrap().opposite, 44444444);
    }

    #[test]
    fn locality() {
        let r16 = load_canonical(CanonicalTableId::R16);
        assert!(block_locality_check(&r16).unwrap());
        assert!(block_locality_check(&load_canonical(CanonicalTableId::M2)).is_err());
    }

    #[test]
    fn letter_cycle() {
        assert_eq!(cycle_letters(&w("GATC"), 1), w("CGAT"));
        assert_eq!(cycle_letters(&w("GATC"), 4), w("GATC"));
    }

    #[test]
    fn table_export() {
        let t = enzyme_table(Some(Orientation::Opposite)).unwrap();
        assert_eq!(t.records.len(), 8);
        assert_eq!(t.sums.len(), 3);
        let first = &enzyme_table(None).unwrap().records[0];
        assert_eq!(first.tetramer, "AGCT");
        assert_eq!(first.encodings.bin, "01110010");
    }
}
