//! Greedy digit representations.
//!
//! `encode` peels off the largest sequence term at each step, so the digit at
//! position i is the quotient of the running remainder by a(i). A string is a
//! greedy output exactly when every prefix sum of d(i) * a(i), taken from the
//! least significant end, stays below the next term; `is_valid` checks that
//! condition directly. Positions are counted from the right: digit 0 is the
//! least significant.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::basis::{NumerationBasis, SequenceSpec};
use crate::Natural;

/// A single digit. Bounds depend on the basis and position but always fit a
/// machine word for representable parameters.
pub type Digit = u64;

/// A digit string, most significant digit first. The empty string is allowed
/// and decodes to 0.
///
/// `basis_tag` records which basis produced the string, for diagnostics only:
/// it does not participate in comparisons or hashing.
#[derive(Debug, Clone, Default)]
pub struct DigitString {
    digits: Vec<Digit>,
    basis_tag: Option<SequenceSpec>,
}

impl DigitString {
    pub fn new(digits: Vec<Digit>) -> Self {
        DigitString {
            digits,
            basis_tag: None,
        }
    }

    /// The empty string.
    pub fn empty() -> Self {
        DigitString::new(Vec::new())
    }

    /// The canonical representation of zero: a single 0 digit.
    pub fn zero() -> Self {
        DigitString::new(vec![0])
    }

    pub fn with_tag(mut self, spec: SequenceSpec) -> Self {
        self.basis_tag = Some(spec);
        self
    }

    pub fn basis_tag(&self) -> Option<SequenceSpec> {
        self.basis_tag
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at position i, counted from the right; 0 is least significant.
    pub fn digit_from_right(&self, i: usize) -> Digit {
        self.digits[self.digits.len() - 1 - i]
    }

    pub fn digits_from_right(&self) -> impl DoubleEndedIterator<Item = Digit> + '_ {
        self.digits.iter().rev().copied()
    }

    pub fn is_binary(&self) -> bool {
        self.digits.iter().all(|&d| d <= 1)
    }

    /// Significant digits: everything after the leading zeros. Empty for the
    /// zero string.
    pub fn significant_digits(&self) -> &[Digit] {
        let start = self.digits.iter().position(|&d| d != 0);
        match start {
            Some(i) => &self.digits[i..],
            None => &[],
        }
    }

    /// A new string with `prefix` prepended; drops the basis tag, since the
    /// result is no longer a greedy output.
    pub fn prefixed(&self, prefix: &[Digit]) -> DigitString {
        let mut digits = Vec::with_capacity(prefix.len() + self.digits.len());
        digits.extend_from_slice(prefix);
        digits.extend_from_slice(&self.digits);
        DigitString::new(digits)
    }
}

impl PartialEq for DigitString {
    fn eq(&self, other: &Self) -> bool {
        self.digits == other.digits
    }
}

impl Eq for DigitString {}

impl std::hash::Hash for DigitString {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.digits.hash(state);
    }
}

impl PartialOrd for DigitString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DigitString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.digits.cmp(&other.digits)
    }
}

impl fmt::Display for DigitString {
    /// Digits 0..=9 render as a plain digit run; larger alphabets switch to
    /// '.'-separated decimal so positions stay unambiguous.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.iter().all(|&d| d <= 9) {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let rendered: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", rendered.join("."))
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseDigitStringError {
    #[error("invalid digit {text:?} at offset {offset}")]
    InvalidDigit { offset: usize, text: String },
}

impl FromStr for DigitString {
    type Err = ParseDigitStringError;

    /// Inverse of `Display`: a run of single digits, or '.'-separated decimal
    /// values. The empty string parses to the empty digit string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(DigitString::empty());
        }
        if s.contains('.') {
            let mut digits = Vec::new();
            let mut offset = 0;
            for part in s.split('.') {
                let d = part.parse::<Digit>().map_err(|_| {
                    ParseDigitStringError::InvalidDigit {
                        offset,
                        text: part.to_string(),
                    }
                })?;
                digits.push(d);
                offset += part.len() + 1;
            }
            Ok(DigitString::new(digits))
        } else {
            s.chars()
                .enumerate()
                .map(|(offset, c)| {
                    c.to_digit(10)
                        .map(Digit::from)
                        .ok_or(ParseDigitStringError::InvalidDigit {
                            offset,
                            text: c.to_string(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(DigitString::new)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("digit {digit} at position {position} (0 = least significant) exceeds bound {bound}")]
    DigitOutOfRange {
        position: usize,
        digit: Digit,
        bound: Digit,
    },
    #[error("{len} significant digits do not fit in length {max}")]
    TooLong { len: usize, max: usize },
}

/// Greedy representation of n. Zero encodes as "0"; everything else starts
/// with a nonzero digit at the index of the largest term <= n.
pub fn encode(basis: &NumerationBasis, n: &Natural) -> DigitString {
    if n.is_zero() {
        return DigitString::zero().with_tag(basis.spec());
    }
    let top = basis
        .index_of_largest_leq(n)
        .expect("nonzero value has a leading term");
    let mut digits = Vec::with_capacity(top + 1);
    let mut rem = n.clone();
    for i in (0..=top).rev() {
        let a = basis.term(i);
        let d = (&rem / &a)
            .to_u64()
            .expect("greedy digit fits in a machine word");
        rem %= &a;
        digits.push(d);
    }
    debug_assert!(rem.is_zero());
    DigitString::new(digits).with_tag(basis.spec())
}

/// Value of a digit string: sum of d(i) * a(i). Leading zeros are accepted.
/// Digits are checked against the per-position bound of the basis.
pub fn decode(basis: &NumerationBasis, s: &DigitString) -> Result<Natural, CodecError> {
    let mut total = Natural::zero();
    for (position, digit) in s.digits_from_right().enumerate() {
        let bound = basis.digit_bound(position);
        if digit > bound {
            return Err(CodecError::DigitOutOfRange {
                position,
                digit,
                bound,
            });
        }
        if digit != 0 {
            total += basis.term(position) * digit;
        }
    }
    Ok(total)
}

/// Whether s is a greedy output (up to leading zeros): every prefix sum from
/// the low end must stay below the next term. This subsumes the per-digit
/// bound check.
pub fn is_valid(basis: &NumerationBasis, s: &DigitString) -> bool {
    let mut prefix = Natural::zero();
    for (i, digit) in s.digits_from_right().enumerate() {
        if digit != 0 {
            prefix += basis.term(i) * digit;
        }
        if prefix >= basis.term(i + 1) {
            return false;
        }
    }
    true
}

/// Left-pad with zeros to length m. The canonical "0" pads to all zeros (its
/// single digit is not significant). Errors when the significant digits do
/// not fit.
pub fn pad(s: &DigitString, m: usize) -> Result<DigitString, CodecError> {
    let significant = s.significant_digits();
    if significant.len() > m {
        return Err(CodecError::TooLong {
            len: significant.len(),
            max: m,
        });
    }
    let mut digits = vec![0; m - significant.len()];
    digits.extend_from_slice(significant);
    let padded = DigitString::new(digits);
    Ok(match s.basis_tag() {
        Some(tag) => padded.with_tag(tag),
        None => padded,
    })
}
