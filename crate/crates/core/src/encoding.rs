//! Nucleotides, words and their numeric notations.
//!
//! Each letter carries a fixed two-bit code (`C=00`, `A=01`, `T=10`, `G=11`)
//! and a fixed digit (`C=1`, `A=2`, `T=3`, `G=4`). A word of length `n` is
//! rendered as a `2n`-bit string, an `n`-digit string, or a decimal value in
//! `1..=4^n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest word that [`encode`] accepts. The binary notation of a 9-letter
/// word is an 18-digit numeral, which still fits a `u64`.
pub const MAX_ENCODED_LEN: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Nucleotide {
    C,
    A,
    T,
    G,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::C, Nucleotide::A, Nucleotide::T, Nucleotide::G];

    /// Two-bit code, `C=0b00` through `G=0b11`.
    pub const fn bits(self) -> u8 {
        match self {
            Nucleotide::C => 0b00,
            Nucleotide::A => 0b01,
            Nucleotide::T => 0b10,
            Nucleotide::G => 0b11,
        }
    }

    pub const fn digit(self) -> u8 {
        self.bits() + 1
    }

    /// Watson-Crick partner.
    pub const fn complement(self) -> Nucleotide {
        match self {
            Nucleotide::C => Nucleotide::G,
            Nucleotide::G => Nucleotide::C,
            Nucleotide::A => Nucleotide::T,
            Nucleotide::T => Nucleotide::A,
        }
    }

    /// A and T have differing bits in their two-bit code; C and G do not.
    pub const fn is_weak(self) -> bool {
        matches!(self, Nucleotide::A | Nucleotide::T)
    }

    pub const fn as_char(self) -> char {
        match self {
            Nucleotide::C => 'C',
            Nucleotide::A => 'A',
            Nucleotide::T => 'T',
            Nucleotide::G => 'G',
        }
    }

    pub fn from_char(c: char) -> Option<Nucleotide> {
        match c {
            'C' => Some(Nucleotide::C),
            'A' => Some(Nucleotide::A),
            'T' | 'U' => Some(Nucleotide::T),
            'G' => Some(Nucleotide::G),
            _ => None,
        }
    }

    pub const fn index(self) -> usize {
        self.bits() as usize
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A non-empty sequence of nucleotides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Nucleotide>);

impl Word {
    pub fn new(letters: Vec<Nucleotide>) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[Nucleotide] {
        &self.0
    }

    pub fn letter(&self, place: usize) -> Option<Nucleotide> {
        self.0.get(place).copied()
    }

    /// Every word of length `n` in lexicographic order of the two-bit codes,
    /// so the `k`-th word has decimal notation `k + 1`.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        let total = 1u64 << (2 * n as u32);
        (0..total).map(move |code| {
            let letters = (0..n)
                .rev()
                .map(|shift| Nucleotide::ALL[((code >> (2 * shift)) & 0b11) as usize])
                .collect();
            Word(letters)
        })
    }

    pub fn gray_pair(&self) -> GrayPair {
        GrayPair {
            top: self.0.iter().map(|l| l.bits() >> 1 == 1).collect(),
            bottom: self.0.iter().map(|l| l.bits() & 1 == 1).collect(),
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(position, c)| {
                Nucleotide::from_char(c).ok_or(Error::InvalidLetter { found: c, position })
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The first and second bits of every letter, as two rows of bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayPair {
    pub top: Vec<bool>,
    pub bottom: Vec<bool>,
}

impl GrayPair {
    pub fn xor(&self) -> BitString {
        BitString(
            self.top
                .iter()
                .zip(&self.bottom)
                .map(|(a, b)| a ^ b)
                .collect(),
        )
    }
}

/// Fixed-width bit string, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn value(&self) -> u64 {
        self.0.iter().fold(0, |acc, b| (acc << 1) | u64::from(*b))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    /// Two-bit codes concatenated and read as a base-10 numeral.
    Bin,
    /// Digits 1..4 concatenated and read as a base-10 numeral.
    Digit,
    /// Two-bit codes read in base 2, plus one.
    Dec,
}

impl Notation {
    pub const ALL: [Notation; 3] = [Notation::Bin, Notation::Digit, Notation::Dec];

    pub fn as_str(self) -> &'static str {
        match self {
            Notation::Bin => "bin",
            Notation::Digit => "digit",
            Notation::Dec => "dec",
        }
    }
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Notation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Notation> {
        match s.to_ascii_lowercase().as_str() {
            "bin" => Ok(Notation::Bin),
            "digit" => Ok(Notation::Digit),
            "dec" => Ok(Notation::Dec),
            other => Err(Error::Domain(format!("unknown notation {other:?}"))),
        }
    }
}

pub fn encode(word: &Word, notation: Notation) -> Result<u64> {
    if word.len() > MAX_ENCODED_LEN {
        return Err(Error::WordTooLong {
            len: word.len(),
            max: MAX_ENCODED_LEN,
        });
    }
    let letters = word.letters().iter();
    let value = match notation {
        Notation::Bin => letters.fold(0u64, |acc, l| {
            let b = u64::from(l.bits());
            acc * 100 + (b >> 1) * 10 + (b & 1)
        }),
        Notation::Digit => letters.fold(0u64, |acc, l| acc * 10 + u64::from(l.digit())),
        Notation::Dec => letters.fold(0u64, |acc, l| (acc << 2) | u64::from(l.bits())) + 1,
    };
    Ok(value)
}

/// Textual form of a word under a notation: the bit string for `Bin`
/// (leading zeros kept), the digit string for `Digit`, the decimal value for
/// `Dec`.
pub fn render(word: &Word, notation: Notation) -> Result<String> {
    Ok(match notation {
        Notation::Bin => {
            let width = 2 * word.len();
            format!("{:0width$}", encode(word, notation)?)
        }
        _ => encode(word, notation)?.to_string(),
    })
}

/// Bitwise XOR of the two rows of the word's [`GrayPair`].
pub fn xor_reduce(word: &Word) -> BitString {
    word.gray_pair().xor()
}

/// Number of letters drawn from `{A, T}`.
pub fn hamming_weight(word: &Word) -> usize {
    word.letters().iter().filter(|l| l.is_weak()).count()
}

pub fn complement(word: &Word) -> Word {
    Word(word.letters().iter().map(|l| l.complement()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AminoAcid {
    Ala,
    Arg,
    Asn,
    Asp,
    Cys,
    Gln,
    Glu,
    Gly,
    His,
    Ile,
    Leu,
    Lys,
    Met,
    Phe,
    Pro,
    Ser,
    Thr,
    Trp,
    Tyr,
    Val,
    Stop,
}

impl AminoAcid {
    pub fn label(self) -> &'static str {
        use AminoAcid::*;
        match self {
            Ala => "Ala",
            Arg => "Arg",
            Asn => "Asn",
            Asp => "Asp",
            Cys => "Cys",
            Gln => "Gln",
            Glu => "Glu",
            Gly => "Gly",
            His => "His",
            Ile => "Ile",
            Leu => "Leu",
            Lys => "Lys",
            Met => "Met",
            Phe => "Phe",
            Pro => "Pro",
            Ser => "Ser",
            Thr => "Thr",
            Trp => "Trp",
            Tyr => "Tyr",
            Val => "Val",
            Stop => "Stop",
        }
    }

    fn from_code(c: u8) -> AminoAcid {
        use AminoAcid::*;
        match c {
            b'A' => Ala,
            b'R' => Arg,
            b'N' => Asn,
            b'D' => Asp,
            b'C' => Cys,
            b'Q' => Gln,
            b'E' => Glu,
            b'G' => Gly,
            b'H' => His,
            b'I' => Ile,
            b'L' => Leu,
            b'K' => Lys,
            b'M' => Met,
            b'F' => Phe,
            b'P' => Pro,
            b'S' => Ser,
            b'T' => Thr,
            b'W' => Trp,
            b'Y' => Tyr,
            b'V' => Val,
            b'*' => Stop,
            _ => unreachable!("codon table holds only amino-acid codes"),
        }
    }
}

impl fmt::Display for AminoAcid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

// Standard genetic code, one-letter codes indexed by the first, second and
// third letters in T, C, A, G order.
const STANDARD_CODE: &[u8; 64] =
    b"FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";

fn tcag_index(l: Nucleotide) -> usize {
    match l {
        Nucleotide::T => 0,
        Nucleotide::C => 1,
        Nucleotide::A => 2,
        Nucleotide::G => 3,
    }
}

pub fn translate(codon: &Word) -> Result<AminoAcid> {
    let [a, b, c] = codon.letters() else {
        return Err(Error::Shape(format!(
            "codon must have 3 letters, got {}",
            codon.len()
        )));
    };
    let idx = 16 * tcag_index(*a) + 4 * tcag_index(*b) + tcag_index(*c);
    Ok(AminoAcid::from_code(STANDARD_CODE[idx]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn notations_of_sample_codons() {
        // 101001 in base 2 is 41, plus one
        assert_eq!(encode(&w("TTA"), Notation::Dec).unwrap(), 42);
        assert_eq!(encode(&w("AGC"), Notation::Dec).unwrap(), 29);
        assert_eq!(encode(&w("AT"), Notation::Dec).unwrap(), 7);
        assert_eq!(encode(&w("TAT"), Notation::Digit).unwrap(), 323);
        assert_eq!(encode(&w("CCC"), Notation::Bin).unwrap(), 0);
        assert_eq!(encode(&w("TAT"), Notation::Bin).unwrap(), 100110);
        assert_eq!(render(&w("AGC"), Notation::Bin).unwrap(), "011100");
    }

    #[test]
    fn encode_rejects_long_words() {
        let nine = w("GGGGGGGGG");
        assert_eq!(
            encode(&nine, Notation::Bin).unwrap(),
            111_111_111_111_111_111
        );
        assert_eq!(
            encode(&w("GGGGGGGGGG"), Notation::Dec),
            Err(Error::WordTooLong { len: 10, max: 9 })
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            "AXT".parse::<Word>(),
            Err(Error::InvalidLetter {
                found: 'X',
                position: 1
            })
        );
        assert_eq!("".parse::<Word>(), Err(Error::EmptyWord));
        assert_eq!(w("UAU"), w("TAT"));
    }

    #[test]
    fn xor_examples() {
        assert_eq!(xor_reduce(&w("GT")).to_string(), "01");
        assert_eq!(xor_reduce(&w("ACT")).to_string(), "101");
        assert_eq!(xor_reduce(&w("CCC")).to_string(), "000");
        assert_eq!(xor_reduce(&w("CGT")).to_string(), "001");
        assert_eq!(xor_reduce(&w("ATC")).to_string(), "110");
    }

    #[test]
    fn weights() {
        assert_eq!(hamming_weight(&w("CC")), 0);
        assert_eq!(hamming_weight(&w("AA")), 2);
        assert_eq!(hamming_weight(&w("TAT")), 3);
        assert_eq!(xor_reduce(&w("TAT")).count_ones(), 3);
    }

    #[test]
    fn complements() {
        assert_eq!(complement(&w("GATC")), w("CTAG"));
        assert_eq!(complement(&w("AAAA")), w("TTTT"));
        for t in Word::all_of_length(4) {
            assert_eq!(complement(&complement(&t)), t);
        }
    }

    #[test]
    fn translation() {
        assert_eq!(translate(&w("CAG")).unwrap(), AminoAcid::Gln);
        assert_eq!(translate(&w("TAA")).unwrap(), AminoAcid::Stop);
        assert_eq!(translate(&w("ATG")).unwrap(), AminoAcid::Met);
        let ser = Word::all_of_length(3)
            .filter(|c| translate(c).unwrap() == AminoAcid::Ser)
            .count();
        assert_eq!(ser, 6);
        let stops = Word::all_of_length(3)
            .filter(|c| translate(c).unwrap() == AminoAcid::Stop)
            .count();
        assert_eq!(stops, 3);
        assert!(matches!(translate(&w("CA")), Err(Error::Shape(_))));
    }

    #[test]
    fn all_of_length_is_in_decimal_order() {
        for (k, word) in Word::all_of_length(3).enumerate() {
            assert_eq!(encode(&word, Notation::Dec).unwrap(), k as u64 + 1);
        }
    }
}
