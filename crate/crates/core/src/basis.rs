//! Sequence families and the numeration bases built from them.
//!
//! Every family starts at 1 and increases strictly, which is what makes the
//! greedy digit algorithm in [`crate::codec`] well defined. Terms are cached
//! as they are computed; the cache only ever appends, so concurrent readers
//! observe consistent values.

use std::fmt;
use std::sync::RwLock;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::codec::Digit;
use crate::Natural;

/// Which increasing integer sequence backs a numeration system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceSpec {
    /// 2^i for the first k terms, then each term is the sum of the k
    /// preceding ones. Requires k >= 2. k = 2 gives 1, 2, 3, 5, 8, ...
    KBonacci { k: u64 },
    /// 1, 2, 5, 12, 29, ... with a(m) = 2 a(m-1) + a(m-2).
    Pell,
    /// a(m) = 2^m, the ordinary binary system.
    PowersOfTwo,
    /// a(0) = 1, a(1) = k, a(m) = k a(m-1) + h a(m-2). Requires k >= h > 0.
    LinearPlus { k: u64, h: u64 },
    /// a(0) = 1, a(1) = k, a(m) = k a(m-1) - h a(m-2). Requires k > h > 0,
    /// which keeps the sequence strictly increasing.
    LinearMinus { k: u64, h: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("kbonacci requires k >= 2, got k = {k}")]
    KBonacciOrder { k: u64 },
    #[error("linplus requires k >= h > 0, got k = {k}, h = {h}")]
    LinearPlusParams { k: u64, h: u64 },
    #[error("linminus requires k > h > 0, got k = {k}, h = {h}")]
    LinearMinusParams { k: u64, h: u64 },
}

impl SequenceSpec {
    pub fn validate(self) -> Result<(), SpecError> {
        match self {
            SequenceSpec::KBonacci { k } if k < 2 => Err(SpecError::KBonacciOrder { k }),
            SequenceSpec::LinearPlus { k, h } if h == 0 || k < h => {
                Err(SpecError::LinearPlusParams { k, h })
            }
            SequenceSpec::LinearMinus { k, h } if h == 0 || k <= h => {
                Err(SpecError::LinearMinusParams { k, h })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SequenceSpec::KBonacci { k } => write!(f, "kbonacci(k={k})"),
            SequenceSpec::Pell => write!(f, "pell"),
            SequenceSpec::PowersOfTwo => write!(f, "pow2"),
            SequenceSpec::LinearPlus { k, h } => write!(f, "linplus(k={k},h={h})"),
            SequenceSpec::LinearMinus { k, h } => write!(f, "linminus(k={k},h={h})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    /// Every term is >= 1, so zero has no leading term.
    #[error("no sequence term is <= 0; zero is represented by the digit string \"0\"")]
    UndefinedForZero,
}

/// A validated sequence with a grow-only term cache.
///
/// Shared references may query terms from any number of threads; cache growth
/// happens under a write lock and never mutates existing entries.
#[derive(Debug)]
pub struct NumerationBasis {
    spec: SequenceSpec,
    terms: RwLock<Vec<Natural>>,
}

impl NumerationBasis {
    pub fn new(spec: SequenceSpec) -> Result<Self, SpecError> {
        spec.validate()?;
        Ok(NumerationBasis {
            spec,
            terms: RwLock::new(vec![Natural::one()]),
        })
    }

    pub fn spec(&self) -> SequenceSpec {
        self.spec
    }

    /// The i-th sequence term, 0-indexed. a(0) = 1 for every family.
    pub fn term(&self, i: usize) -> Natural {
        {
            let terms = self.terms.read().unwrap();
            if i < terms.len() {
                return terms[i].clone();
            }
        }
        let mut terms = self.terms.write().unwrap();
        while terms.len() <= i {
            let next = self.next_term(&terms);
            assert!(
                next > *terms.last().unwrap(),
                "sequence {} stopped increasing at index {}",
                self.spec,
                terms.len()
            );
            terms.push(next);
        }
        terms[i].clone()
    }

    fn next_term(&self, terms: &[Natural]) -> Natural {
        let m = terms.len();
        match self.spec {
            SequenceSpec::KBonacci { k } => {
                if m < k as usize {
                    Natural::one() << m
                } else {
                    terms[m - k as usize..].iter().sum()
                }
            }
            SequenceSpec::Pell => {
                if m == 1 {
                    Natural::from(2u32)
                } else {
                    &terms[m - 1] * 2u32 + &terms[m - 2]
                }
            }
            SequenceSpec::PowersOfTwo => &terms[m - 1] * 2u32,
            SequenceSpec::LinearPlus { k, h } => {
                if m == 1 {
                    Natural::from(k)
                } else {
                    &terms[m - 1] * k + &terms[m - 2] * h
                }
            }
            SequenceSpec::LinearMinus { k, h } => {
                if m == 1 {
                    Natural::from(k)
                } else {
                    let grow = &terms[m - 1] * k;
                    let shrink = &terms[m - 2] * h;
                    assert!(
                        grow > shrink,
                        "sequence {} would go non-positive at index {m}",
                        self.spec
                    );
                    grow - shrink
                }
            }
        }
    }

    /// Index of the largest term <= n. Errors for n = 0, which lies below
    /// every term.
    pub fn index_of_largest_leq(&self, n: &Natural) -> Result<usize, BasisError> {
        if n.is_zero() {
            return Err(BasisError::UndefinedForZero);
        }
        let mut i = 0;
        while self.term(i + 1) <= *n {
            i += 1;
        }
        Ok(i)
    }

    /// Largest digit usable at position i: floor((a(i+1) - 1) / a(i)).
    pub fn digit_bound(&self, i: usize) -> Digit {
        let hi = self.term(i + 1) - Natural::one();
        (hi / self.term(i))
            .to_u64()
            .expect("digit bound fits in a machine word")
    }

    /// Largest digit appearing in any valid string of length m: the maximum
    /// of digit_bound over positions 0..m, and 0 when m = 0 (the empty
    /// string uses no digits).
    pub fn alphabet_for_length(&self, m: usize) -> Digit {
        (0..m).map(|i| self.digit_bound(i)).max().unwrap_or(0)
    }
}

impl Clone for NumerationBasis {
    fn clone(&self) -> Self {
        NumerationBasis {
            spec: self.spec,
            terms: RwLock::new(self.terms.read().unwrap().clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn basis(spec: SequenceSpec) -> NumerationBasis {
        NumerationBasis::new(spec).unwrap()
    }

    fn terms(b: &NumerationBasis, n: usize) -> Vec<u64> {
        (0..n).map(|i| b.term(i).to_u64().unwrap()).collect()
    }

    #[test]
    fn pell_initial_terms() {
        let b = basis(SequenceSpec::Pell);
        assert_eq!(terms(&b, 5), vec![1, 2, 5, 12, 29]);
        assert_eq!(b.term(3), Natural::from(12u32));
    }

    #[test]
    fn kbonacci_initial_terms() {
        let b2 = basis(SequenceSpec::KBonacci { k: 2 });
        assert_eq!(terms(&b2, 6), vec![1, 2, 3, 5, 8, 13]);
        assert_eq!(b2.term(4), Natural::from(8u32));

        let b3 = basis(SequenceSpec::KBonacci { k: 3 });
        assert_eq!(terms(&b3, 7), vec![1, 2, 4, 7, 13, 24, 44]);
        assert_eq!(b3.term(2), Natural::from(4u32));
    }

    #[test]
    fn kbonacci_window_identity() {
        for k in 2..=5u64 {
            let b = basis(SequenceSpec::KBonacci { k });
            for m in k as usize..40 {
                let window: Natural = (m - k as usize..m).map(|i| b.term(i)).sum();
                assert_eq!(b.term(m), window, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn powers_of_two_terms() {
        let b = basis(SequenceSpec::PowersOfTwo);
        for m in 0..40 {
            assert_eq!(b.term(m), Natural::one() << m);
        }
        // Full-history identity: a(m) = a(m-1) + ... + a(0) + 1.
        for m in 1..40 {
            let history: Natural = (0..m).map(|i| b.term(i)).sum();
            assert_eq!(b.term(m), history + Natural::one());
        }
    }

    #[test]
    fn pell_agrees_with_linplus_2_1() {
        let pell = basis(SequenceSpec::Pell);
        let lin = basis(SequenceSpec::LinearPlus { k: 2, h: 1 });
        for m in 0..=30 {
            assert_eq!(pell.term(m), lin.term(m), "m={m}");
        }
    }

    #[test]
    fn linminus_terms_increase() {
        for (k, h) in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 6)] {
            let b = basis(SequenceSpec::LinearMinus { k, h });
            for m in 0..60 {
                assert!(b.term(m) < b.term(m + 1), "k={k} h={h} m={m}");
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(NumerationBasis::new(SequenceSpec::KBonacci { k: 1 }).is_err());
        assert!(NumerationBasis::new(SequenceSpec::KBonacci { k: 2 }).is_ok());
        assert!(NumerationBasis::new(SequenceSpec::LinearPlus { k: 2, h: 3 }).is_err());
        assert!(NumerationBasis::new(SequenceSpec::LinearPlus { k: 3, h: 0 }).is_err());
        assert!(NumerationBasis::new(SequenceSpec::LinearPlus { k: 3, h: 3 }).is_ok());
        assert!(NumerationBasis::new(SequenceSpec::LinearMinus { k: 3, h: 3 }).is_err());
        assert!(NumerationBasis::new(SequenceSpec::LinearMinus { k: 3, h: 0 }).is_err());
        assert!(NumerationBasis::new(SequenceSpec::LinearMinus { k: 3, h: 2 }).is_ok());
    }

    #[test]
    fn index_of_largest_leq_examples() {
        let pell = basis(SequenceSpec::Pell);
        assert_eq!(pell.index_of_largest_leq(&Natural::from(16u32)), Ok(3));
        assert_eq!(pell.index_of_largest_leq(&Natural::from(1u32)), Ok(0));
        assert_eq!(
            pell.index_of_largest_leq(&Natural::zero()),
            Err(BasisError::UndefinedForZero)
        );

        let b2 = basis(SequenceSpec::KBonacci { k: 2 });
        assert_eq!(b2.index_of_largest_leq(&Natural::from(7u32)), Ok(3));
    }

    #[test]
    fn digit_bound_examples() {
        let pell = basis(SequenceSpec::Pell);
        assert_eq!(pell.digit_bound(1), 2);

        let pow2 = basis(SequenceSpec::PowersOfTwo);
        for i in 0..30 {
            assert_eq!(pow2.digit_bound(i), 1);
        }

        let b3 = basis(SequenceSpec::KBonacci { k: 3 });
        assert_eq!(b3.digit_bound(5), 1);
        // Direct formula at the same position: (44 - 1) / 24.
        assert_eq!(43 / 24, 1u64);
    }

    #[test]
    fn kbonacci_bounds_are_binary() {
        for k in 2..=5u64 {
            let b = basis(SequenceSpec::KBonacci { k });
            for i in 0..=30 {
                assert_eq!(b.digit_bound(i), 1, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn alphabet_for_length_examples() {
        let pell = basis(SequenceSpec::Pell);
        assert_eq!(pell.alphabet_for_length(4), 2);
        assert_eq!(pell.alphabet_for_length(0), 0);

        let b2 = basis(SequenceSpec::KBonacci { k: 2 });
        assert_eq!(b2.alphabet_for_length(10), 1);

        let lp = basis(SequenceSpec::LinearPlus { k: 3, h: 2 });
        assert_eq!(lp.alphabet_for_length(0), 0);
        assert_eq!(lp.alphabet_for_length(1), 2);
        assert_eq!(lp.alphabet_for_length(6), 3);
    }

    #[test]
    fn concurrent_term_reads_are_consistent() {
        let b = Arc::new(basis(SequenceSpec::Pell));
        let expected: Vec<Natural> = (0..200).map(|i| b.term(i)).collect();
        let fresh = Arc::new(basis(SequenceSpec::Pell));
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let fresh = Arc::clone(&fresh);
                let expected = expected.clone();
                std::thread::spawn(move || {
                    for round in 0..50 {
                        let i = (t * 37 + round * 13) % 200;
                        assert_eq!(fresh.term(i), expected[i]);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
