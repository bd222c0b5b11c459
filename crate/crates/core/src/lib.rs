//! Genetic-code tables read as magic and bimagic squares.
//!
//! Words over the nucleotide alphabet `{C, A, T, G}` are encoded into exact
//! integers under three notations (binary digits read as a decimal numeral,
//! the digits 1..4, and binary value plus one). The canonical tables shipped
//! in [`grid`] are then checked for magic sums, Latin structure, Hamming
//! weight balance, Shannon entropy and the genome order index, and the
//! antiparallel restriction-enzyme tetramers are classified in [`enzyme`].

pub mod cli;
pub mod encoding;
pub mod entropy;
pub mod enzyme;
pub mod error;
pub mod grid;
pub mod hamming;
pub mod magic;
pub mod structure;

pub use encoding::{Notation, Nucleotide, Word};
pub use error::{Error, Result};
pub use grid::{CanonicalTableId, Grid};
