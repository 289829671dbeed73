//! Fixed-length languages of padded representations.
//!
//! For a basis with terms a(i), the language at length m holds the padded
//! representations of 0 .. a(m)-1, in value order. Two independent routes
//! build the same set for k-bonacci bases: counting through the codec, and a
//! prefix recursion that splits strings by their leading run of ones. The
//! k-bonacci languages coincide with the binary strings of length m that
//! avoid a run of k ones.

use thiserror::Error;

use crate::basis::NumerationBasis;
use crate::codec::{encode, pad, Digit, DigitString};
use crate::Natural;

use num_traits::{One, Zero};

/// How a [`LanguageSet`] was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Padded codec output for each value 0 .. a(m)-1.
    ByCounting,
    /// Prefix recursion on the leading run of ones.
    ByRecursion,
}

/// The language at one fixed length, with the order its construction induced.
#[derive(Debug, Clone)]
pub struct LanguageSet {
    m: usize,
    elements: Vec<DigitString>,
    provenance: Provenance,
}

impl LanguageSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[DigitString] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<DigitString> {
        self.elements
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DigitString> {
        self.elements.iter()
    }

    /// Elements sorted lexicographically; handy for set comparisons.
    pub fn sorted_elements(&self) -> Vec<DigitString> {
        let mut v = self.elements.clone();
        v.sort();
        v
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LanguageError {
    #[error("digit {digit} at position {position} (0 = least significant) is not binary")]
    NonBinaryDigit { position: usize, digit: Digit },
}

/// The length-m language of `basis`, one padded string per value below a(m),
/// in increasing value order. Sizes grow like a(m), so user-facing callers
/// should apply a size guard first.
pub fn language_by_counting(basis: &NumerationBasis, m: usize) -> LanguageSet {
    let limit = basis.term(m);
    let mut elements = Vec::new();
    let mut value = Natural::zero();
    while value < limit {
        let padded = pad(&encode(basis, &value), m)
            .expect("a value below a(m) has at most m significant digits");
        elements.push(padded);
        value += Natural::one();
    }
    LanguageSet {
        m,
        elements,
        provenance: Provenance::ByCounting,
    }
}

/// The length-m k-bonacci language by prefix recursion: below length k it is
/// all binary strings; from length k on, a string is a run of j-1 ones and a
/// zero (for j = 1..=k) followed by any string of the language k..j shorter.
pub fn language_by_recursion(k: u64, m: usize) -> LanguageSet {
    assert!(k >= 2, "run parameter k must be at least 2");
    LanguageSet {
        m,
        elements: recursion_level(k, m),
        provenance: Provenance::ByRecursion,
    }
}

fn recursion_level(k: u64, m: usize) -> Vec<DigitString> {
    if m < k as usize {
        return binary_level(m);
    }
    let mut out = Vec::new();
    for j in 1..=k as usize {
        let prefix = ones_then_zero(j);
        for s in recursion_level(k, m - j) {
            out.push(s.prefixed(&prefix));
        }
    }
    out
}

/// 1^(j-1) followed by 0.
fn ones_then_zero(j: usize) -> Vec<Digit> {
    let mut p = vec![1; j - 1];
    p.push(0);
    p
}

/// All 2^m binary strings, lexicographic: a 0-branch then a 1-branch, each
/// expanded recursively.
pub fn binary_strings(m: usize) -> LanguageSet {
    LanguageSet {
        m,
        elements: binary_level(m),
        provenance: Provenance::ByRecursion,
    }
}

fn binary_level(m: usize) -> Vec<DigitString> {
    if m == 0 {
        return vec![DigitString::empty()];
    }
    let sub = binary_level(m - 1);
    let mut out = Vec::with_capacity(sub.len() * 2);
    for s in &sub {
        out.push(s.prefixed(&[0]));
    }
    for s in &sub {
        out.push(s.prefixed(&[1]));
    }
    out
}

/// All 2^m binary strings again, but split by the leading run of ones: for
/// j = 1..=m a block of 1^(j-1) 0 followed by any shorter string, and the
/// all-ones string last. Used to cross-check `binary_strings`.
pub fn binary_strings_full_history(m: usize) -> LanguageSet {
    LanguageSet {
        m,
        elements: binary_full_history_level(m),
        provenance: Provenance::ByRecursion,
    }
}

fn binary_full_history_level(m: usize) -> Vec<DigitString> {
    if m == 0 {
        return vec![DigitString::empty()];
    }
    let mut out = Vec::new();
    for j in 1..=m {
        let prefix = ones_then_zero(j);
        for s in binary_full_history_level(m - j) {
            out.push(s.prefixed(&prefix));
        }
    }
    out.push(DigitString::new(vec![1; m]));
    out
}

/// Whether a binary string has no run of k consecutive ones. Errors on
/// non-binary digits.
pub fn avoids_ones_run(s: &DigitString, k: u64) -> Result<bool, LanguageError> {
    assert!(k >= 1, "run length must be positive");
    let mut run = 0u64;
    for (i, d) in s.digits_from_right().enumerate() {
        match d {
            0 => run = 0,
            1 => {
                run += 1;
                if run >= k {
                    return Ok(false);
                }
            }
            _ => {
                return Err(LanguageError::NonBinaryDigit {
                    position: i,
                    digit: d,
                })
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SequenceSpec;
    use num_traits::ToPrimitive;

    fn basis(spec: SequenceSpec) -> NumerationBasis {
        NumerationBasis::new(spec).unwrap()
    }

    fn rendered(set: &LanguageSet) -> Vec<String> {
        set.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn counting_examples() {
        let pell = basis(SequenceSpec::Pell);
        assert_eq!(
            rendered(&language_by_counting(&pell, 2)),
            ["00", "01", "10", "11", "20"]
        );
        let l0 = language_by_counting(&pell, 0);
        assert_eq!(l0.len(), 1);
        assert!(l0.elements()[0].is_empty());

        let b2 = basis(SequenceSpec::KBonacci { k: 2 });
        assert_eq!(
            rendered(&language_by_counting(&b2, 3)),
            ["000", "001", "010", "100", "101"]
        );
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(rendered(&language_by_recursion(2, 2)), ["00", "01", "10"]);
        assert_eq!(rendered(&language_by_recursion(3, 1)), ["0", "1"]);
        assert_eq!(
            rendered(&language_by_recursion(2, 3)),
            ["000", "001", "010", "100", "101"]
        );
    }

    #[test]
    fn binary_strings_examples() {
        assert_eq!(
            rendered(&binary_strings(3)),
            ["000", "001", "010", "011", "100", "101", "110", "111"]
        );
        assert_eq!(binary_strings(0).len(), 1);
        assert_eq!(
            rendered(&binary_strings_full_history(2)),
            ["00", "01", "10", "11"]
        );
    }

    #[test]
    fn full_history_matches_plain_binary() {
        for m in 0..=12 {
            let plain = binary_strings(m).sorted_elements();
            let split = binary_strings_full_history(m).sorted_elements();
            assert_eq!(plain, split, "m={m}");
            assert_eq!(plain.len(), 1 << m);
        }
    }

    #[test]
    fn avoids_ones_run_examples() {
        let s = |t: &str| t.parse::<DigitString>().unwrap();
        assert!(avoids_ones_run(&s("0110"), 3).unwrap());
        assert!(!avoids_ones_run(&s("0110"), 2).unwrap());
        assert!(avoids_ones_run(&s(""), 2).unwrap());
        assert_eq!(
            avoids_ones_run(&s("020"), 2),
            Err(LanguageError::NonBinaryDigit {
                position: 1,
                digit: 2
            })
        );
    }

    #[test]
    fn three_routes_agree_for_kbonacci() {
        for k in 2..=4u64 {
            let b = basis(SequenceSpec::KBonacci { k });
            for m in 0..=10 {
                let counted = language_by_counting(&b, m);
                let recursed = language_by_recursion(k, m);
                let filtered: Vec<DigitString> = binary_strings(m)
                    .into_elements()
                    .into_iter()
                    .filter(|s| avoids_ones_run(s, k).unwrap())
                    .collect();
                assert_eq!(counted.sorted_elements(), recursed.sorted_elements());
                assert_eq!(counted.sorted_elements(), filtered);
                assert_eq!(counted.len(), b.term(m).to_usize().unwrap());
            }
        }
    }

    #[test]
    fn cardinality_matches_terms_across_families() {
        let specs = [
            SequenceSpec::Pell,
            SequenceSpec::PowersOfTwo,
            SequenceSpec::KBonacci { k: 3 },
            SequenceSpec::LinearPlus { k: 3, h: 2 },
            SequenceSpec::LinearMinus { k: 3, h: 2 },
        ];
        for spec in specs {
            let b = basis(spec);
            for m in 0.. {
                let size = b.term(m);
                if size > Natural::from(1u32 << 14) {
                    break;
                }
                let set = language_by_counting(&b, m);
                assert_eq!(set.len(), size.to_usize().unwrap(), "{spec} m={m}");
                // No duplicates: value order means strictly new strings.
                let mut sorted = set.sorted_elements();
                sorted.dedup();
                assert_eq!(sorted.len(), set.len(), "{spec} m={m}");
            }
        }
    }

    #[test]
    fn kbonacci_languages_are_binary() {
        let b = basis(SequenceSpec::KBonacci { k: 3 });
        for m in 0..=10 {
            for s in language_by_counting(&b, m).iter() {
                assert!(s.is_binary(), "m={m} s={s}");
            }
        }
    }

    #[test]
    fn alphabet_is_attained() {
        let pell = basis(SequenceSpec::Pell);
        for m in 0..=10 {
            let max_digit = language_by_counting(&pell, m)
                .iter()
                .flat_map(|s| s.digits().to_vec())
                .max()
                .unwrap_or(0);
            assert_eq!(max_digit, pell.alphabet_for_length(m), "m={m}");
        }
    }
}
