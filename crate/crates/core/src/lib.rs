//! Numeration systems over strictly increasing integer sequences and the
//! combinatorial generation built on top of them.
//!
//! The crate is organized around one pipeline:
//!
//! * [`basis`] defines the sequence families (k-bonacci, Pell, powers of two,
//!   and two linear two-term recurrences) and serves their terms and per-digit
//!   bounds.
//! * [`codec`] encodes naturals greedily into digit strings and decodes them
//!   back; a prefix-sum condition characterizes exactly the strings the greedy
//!   algorithm can produce, which makes the representation unique.
//! * [`language`] materializes the set of padded representations of a fixed
//!   length. For the k-bonacci bases this set is precisely the binary strings
//!   with no run of k ones.
//! * [`graycode`] lists those languages (and all binary strings) in Gray
//!   order, one digit changing at a time, through lazy cursors.
//! * [`perm`] maps the binary strings to a class of pattern-avoiding
//!   permutations via inversion arrays and lists the class in an
//!   adjacent-transposition Gray order.
//! * [`oracle`] re-derives the same objects by brute force so the constructive
//!   modules can be certified against an independent implementation.

pub mod basis;
pub mod codec;
pub mod graycode;
pub mod language;
pub mod oracle;
pub mod perm;

pub use basis::{NumerationBasis, SequenceSpec};
pub use codec::{Digit, DigitString};
pub use graycode::GrayCursor;
pub use language::LanguageSet;
pub use oracle::{OracleReport, SizeGuard};
pub use perm::{InversionArray, Permutation};

/// Unbounded non-negative integer: sequence terms and decoded values grow
/// exponentially, so no fixed-width type is safe.
pub type Natural = num_bigint::BigUint;
