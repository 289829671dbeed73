//! Brute-force re-derivations of everything the constructive modules build.
//!
//! The point of this module is independence: no recursion code is shared
//! with [`crate::codec`], [`crate::language`], or [`crate::perm`]. Values are
//! recomputed with plain machine-word arithmetic, strings are enumerated as
//! odometers over raw digit bounds, and permutations come from an exhaustive
//! swap generator. Agreement between the two routes is the evidence the
//! constructive side is right; every disagreement carries a concrete
//! counterexample.

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::basis::NumerationBasis;
use crate::codec::{Digit, DigitString};
use crate::graycode::{gray_language, hamming};
use crate::language::language_by_counting;
use crate::perm::{class_patterns, contains_pattern, perm_set, Permutation};
use crate::Natural;

/// Limits that keep exhaustive sweeps within desk scale. `max_set_elements`
/// caps materialized string sets, `max_perm_len` caps factorial enumeration,
/// and `max_brute_force` caps the odometer space of the uniqueness sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_set_elements: u64,
    pub max_perm_len: usize,
    pub max_brute_force: u64,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_set_elements: 1 << 22,
            max_perm_len: 9,
            max_brute_force: 1 << 26,
        }
    }
}

impl SizeGuard {
    /// No limits. For callers that accept the memory consequences.
    pub fn unlimited() -> Self {
        SizeGuard {
            max_set_elements: u64::MAX,
            max_perm_len: usize::MAX,
            max_brute_force: u64::MAX,
        }
    }

    /// Default limits with a different cap on materialized set sizes.
    pub fn with_max_elements(max_set_elements: u64) -> Self {
        SizeGuard {
            max_set_elements,
            ..SizeGuard::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("size guard: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: String,
        limit: String,
    },
}

fn guard(what: &'static str, actual: &Natural, limit: u64) -> Result<u64, OracleError> {
    match actual.to_u64() {
        Some(v) if v <= limit => Ok(v),
        _ => Err(OracleError::SizeGuard {
            what,
            actual: actual.to_string(),
            limit: limit.to_string(),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleStatus {
    Agree,
    Disagree,
}

/// Outcome of one oracle comparison. A disagreement always carries a
/// counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub check: &'static str,
    pub params: String,
    pub status: OracleStatus,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl OracleReport {
    fn agree(check: &'static str, params: String, detail: String) -> Self {
        OracleReport {
            check,
            params,
            status: OracleStatus::Agree,
            detail,
            counterexample: None,
        }
    }

    fn disagree(check: &'static str, params: String, detail: String, cx: String) -> Self {
        OracleReport {
            check,
            params,
            status: OracleStatus::Disagree,
            detail,
            counterexample: Some(cx),
        }
    }

    pub fn agreed(&self) -> bool {
        self.status == OracleStatus::Agree
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            OracleStatus::Agree => write!(f, "{} {}: agree ({})", self.check, self.params, self.detail),
            OracleStatus::Disagree => write!(
                f,
                "{} {}: DISAGREE ({}) counterexample: {}",
                self.check,
                self.params,
                self.detail,
                self.counterexample.as_deref().unwrap_or("<missing>")
            ),
        }
    }
}

/// Certify unique representation at length m: enumerate every digit vector
/// within the raw per-position bounds, keep those whose low-end prefix sums
/// stay below the next term, and check the kept values cover 0 .. a(m)-1
/// exactly once. Arithmetic is machine-word only, separate from the codec.
pub fn oracle_unique_representation(
    basis: &NumerationBasis,
    m: usize,
    limits: &SizeGuard,
) -> Result<OracleReport, OracleError> {
    let params = format!("seq={} m={m}", basis.spec());
    let cardinality = guard("set cardinality", &basis.term(m), limits.max_set_elements)? as usize;

    let mut terms = Vec::with_capacity(m + 1);
    for i in 0..=m {
        match basis.term(i).to_u128() {
            Some(t) => terms.push(t),
            None => {
                return Err(OracleError::SizeGuard {
                    what: "sequence term",
                    actual: basis.term(i).to_string(),
                    limit: u128::MAX.to_string(),
                })
            }
        }
    }
    let bounds: Vec<Digit> = (0..m).map(|i| basis.digit_bound(i)).collect();
    let mut space = 1u128;
    for &b in &bounds {
        space = space.saturating_mul(b as u128 + 1);
    }
    if space > limits.max_brute_force as u128 {
        return Err(OracleError::SizeGuard {
            what: "odometer space",
            actual: space.to_string(),
            limit: limits.max_brute_force.to_string(),
        });
    }

    let mut seen = vec![false; cardinality];
    let mut valid = 0usize;
    // digits[i] is the digit at position i (least significant first).
    let mut digits: Vec<Digit> = vec![0; m];
    loop {
        let mut prefix = 0u128;
        let mut ok = true;
        for i in 0..m {
            prefix += digits[i] as u128 * terms[i];
            if prefix >= terms[i + 1] {
                ok = false;
                break;
            }
        }
        if ok {
            // The full prefix sum is the decoded value, below a(m) by the
            // last check.
            let value = prefix as usize;
            if seen[value] {
                return Ok(OracleReport::disagree(
                    "uniqueness",
                    params,
                    format!("{valid} valid strings before conflict"),
                    format!(
                        "value {value} has a second valid representation {}",
                        render_low_first(&digits)
                    ),
                ));
            }
            seen[value] = true;
            valid += 1;
        }
        // Odometer step.
        let mut i = 0;
        while i < m {
            digits[i] += 1;
            if digits[i] > bounds[i] {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if i == m {
            break;
        }
    }

    if valid != cardinality {
        let missing = seen.iter().position(|&s| !s);
        return Ok(OracleReport::disagree(
            "uniqueness",
            params,
            format!("{valid} valid strings, expected {cardinality}"),
            match missing {
                Some(v) => format!("value {v} has no valid representation of length {m}"),
                None => "more valid strings than values".to_string(),
            },
        ));
    }
    Ok(OracleReport::agree(
        "uniqueness",
        params,
        format!("{valid} valid strings"),
    ))
}

fn render_low_first(digits: &[Digit]) -> String {
    let mut msd_first = digits.to_vec();
    msd_first.reverse();
    DigitString::new(msd_first).to_string()
}

/// All length-m binary strings with no k ones in a row, by filtering the
/// 2^m bit patterns with a local run scan.
pub fn oracle_filter_strings(
    k: u64,
    m: usize,
    limits: &SizeGuard,
) -> Result<Vec<DigitString>, OracleError> {
    assert!(k >= 2, "run parameter k must be at least 2");
    let space = Natural::from(1u32) << m;
    let count = guard("binary string space", &space, limits.max_set_elements)?;
    let mut out = Vec::new();
    'patterns: for bits in 0u64..count {
        // Bit m-1 is the leftmost digit.
        let mut run = 0u64;
        let mut digits = Vec::with_capacity(m);
        for pos in (0..m).rev() {
            let d = (bits >> pos) & 1;
            digits.push(d);
            if d == 1 {
                run += 1;
                if run >= k {
                    continue 'patterns;
                }
            } else {
                run = 0;
            }
        }
        out.push(DigitString::new(digits));
    }
    Ok(out)
}

/// All length-m permutations avoiding the three class patterns, by filtering
/// every permutation through the naive pattern checker.
pub fn oracle_filter_perms(
    k: u64,
    m: usize,
    limits: &SizeGuard,
) -> Result<Vec<Permutation>, OracleError> {
    assert!(k >= 2, "class parameter k must be at least 2");
    if m > limits.max_perm_len {
        return Err(OracleError::SizeGuard {
            what: "permutation length",
            actual: m.to_string(),
            limit: limits.max_perm_len.to_string(),
        });
    }
    let patterns = class_patterns(k);
    let mut out = Vec::new();
    let mut entries: Vec<u32> = (1..=m as u32).collect();
    permute_all(&mut entries, 0, &mut |es| {
        let perm = Permutation::new(es.to_vec()).expect("swap generator emits permutations");
        let avoids = patterns
            .iter()
            .all(|pat| !contains_pattern(&perm, pat).expect("lengths within the naive caps"));
        if avoids {
            out.push(perm);
        }
    });
    Ok(out)
}

fn permute_all(entries: &mut Vec<u32>, at: usize, f: &mut impl FnMut(&[u32])) {
    if at == entries.len() {
        f(entries);
        return;
    }
    for i in at..entries.len() {
        entries.swap(at, i);
        permute_all(entries, at + 1, f);
        entries.swap(at, i);
    }
}

/// Compare the filtered binary strings against the counted language of the
/// k-bonacci basis of the same order.
pub fn check_strings(k: u64, m: usize, limits: &SizeGuard) -> Result<OracleReport, OracleError> {
    let params = format!("k={k} m={m}");
    let basis = NumerationBasis::new(crate::basis::SequenceSpec::KBonacci { k })
        .expect("k validated by the caller");
    guard("set cardinality", &basis.term(m), limits.max_set_elements)?;
    let mut filtered = oracle_filter_strings(k, m, limits)?;
    filtered.sort();
    let counted = language_by_counting(&basis, m).sorted_elements();
    if filtered == counted {
        return Ok(OracleReport::agree(
            "strings",
            params,
            format!("{} strings", counted.len()),
        ));
    }
    let cx = first_difference(&filtered, &counted);
    Ok(OracleReport::disagree(
        "strings",
        params,
        format!("filter has {}, counting has {}", filtered.len(), counted.len()),
        cx,
    ))
}

/// Compare the filtered permutations against the recursive set construction.
pub fn check_perms(k: u64, m: usize, limits: &SizeGuard) -> Result<OracleReport, OracleError> {
    let params = format!("k={k} m={m}");
    let mut filtered = oracle_filter_perms(k, m, limits)?;
    filtered.sort();
    let mut constructed = perm_set(k, m);
    constructed.sort();
    if filtered == constructed {
        return Ok(OracleReport::agree(
            "perms",
            params,
            format!("{} permutations", constructed.len()),
        ));
    }
    let cx = first_difference(&filtered, &constructed);
    Ok(OracleReport::disagree(
        "perms",
        params,
        format!(
            "filter has {}, recursion has {}",
            filtered.len(),
            constructed.len()
        ),
        cx,
    ))
}

/// Drain the string Gray cursor and check it lists the filtered language with
/// one digit changing between neighbors.
pub fn check_gray(k: u64, m: usize, limits: &SizeGuard) -> Result<OracleReport, OracleError> {
    let params = format!("k={k} m={m}");
    let mut expected = oracle_filter_strings(k, m, limits)?;
    expected.sort();
    let mut listed = Vec::with_capacity(expected.len());
    let mut prev: Option<DigitString> = None;
    for s in gray_language(k, m) {
        if let Some(p) = &prev {
            let dist = hamming(p, &s).expect("cursor emits fixed-length strings");
            if dist != 1 {
                return Ok(OracleReport::disagree(
                    "gray",
                    params,
                    format!("distance {dist} between neighbors"),
                    format!("{p} -> {s}"),
                ));
            }
        }
        listed.push(s.clone());
        prev = Some(s);
    }
    let mut sorted = listed.clone();
    sorted.sort();
    if sorted == expected {
        return Ok(OracleReport::agree(
            "gray",
            params,
            format!("{} strings, all neighbor distances 1", listed.len()),
        ));
    }
    let cx = first_difference(&sorted, &expected);
    Ok(OracleReport::disagree(
        "gray",
        params,
        format!("cursor lists {}, language has {}", listed.len(), expected.len()),
        cx,
    ))
}

fn first_difference<T: Ord + fmt::Display>(a: &[T], b: &[T]) -> String {
    for i in 0..a.len().max(b.len()) {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) if x == y => continue,
            (Some(x), Some(y)) => return format!("index {i}: {x} vs {y}"),
            (Some(x), None) => return format!("index {i}: {x} vs <end>"),
            (None, Some(y)) => return format!("index {i}: <end> vs {y}"),
            (None, None) => break,
        }
    }
    "<identical>".to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SequenceSpec;

    fn basis(spec: SequenceSpec) -> NumerationBasis {
        NumerationBasis::new(spec).unwrap()
    }

    #[test]
    fn uniqueness_examples() {
        let limits = SizeGuard::default();
        let r = oracle_unique_representation(&basis(SequenceSpec::Pell), 3, &limits).unwrap();
        assert!(r.agreed());
        assert_eq!(r.detail, "12 valid strings");

        let r =
            oracle_unique_representation(&basis(SequenceSpec::KBonacci { k: 2 }), 4, &limits)
                .unwrap();
        assert!(r.agreed());
        assert_eq!(r.detail, "8 valid strings");

        let r =
            oracle_unique_representation(&basis(SequenceSpec::PowersOfTwo), 3, &limits).unwrap();
        assert!(r.agreed());
        assert_eq!(r.detail, "8 valid strings");
    }

    #[test]
    fn uniqueness_zero_length() {
        let limits = SizeGuard::default();
        let r = oracle_unique_representation(&basis(SequenceSpec::Pell), 0, &limits).unwrap();
        assert!(r.agreed());
        assert_eq!(r.detail, "1 valid strings");
    }

    #[test]
    fn uniqueness_respects_guard() {
        let limits = SizeGuard {
            max_set_elements: 10,
            ..SizeGuard::default()
        };
        let err = oracle_unique_representation(&basis(SequenceSpec::Pell), 9, &limits);
        assert!(matches!(err, Err(OracleError::SizeGuard { .. })));
    }

    #[test]
    fn filter_strings_examples() {
        let limits = SizeGuard::default();
        let out = oracle_filter_strings(2, 3, &limits).unwrap();
        let rendered: Vec<String> = out.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, ["000", "001", "010", "100", "101"]);

        let out = oracle_filter_strings(3, 2, &limits).unwrap();
        assert_eq!(out.len(), 4);

        let err = oracle_filter_strings(2, 23, &limits);
        assert!(matches!(err, Err(OracleError::SizeGuard { .. })));
    }

    #[test]
    fn filter_perms_examples() {
        let limits = SizeGuard::default();
        let out = oracle_filter_perms(2, 3, &limits).unwrap();
        let rendered: Vec<String> = out.iter().map(|p| p.to_string()).collect();
        let mut sorted = rendered.clone();
        sorted.sort();
        assert_eq!(sorted, ["123", "132", "213"]);

        let err = oracle_filter_perms(2, 10, &limits);
        assert!(matches!(err, Err(OracleError::SizeGuard { .. })));
    }

    #[test]
    fn check_functions_agree_at_small_sizes() {
        let limits = SizeGuard::default();
        for k in 2..=3u64 {
            for m in 0..=8usize {
                assert!(check_strings(k, m, &limits).unwrap().agreed(), "k={k} m={m}");
                assert!(check_gray(k, m, &limits).unwrap().agreed(), "k={k} m={m}");
                if m <= 6 {
                    assert!(check_perms(k, m, &limits).unwrap().agreed(), "k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn uniqueness_across_families() {
        let limits = SizeGuard::default();
        let specs = [
            SequenceSpec::Pell,
            SequenceSpec::PowersOfTwo,
            SequenceSpec::KBonacci { k: 3 },
            SequenceSpec::LinearPlus { k: 3, h: 2 },
            SequenceSpec::LinearMinus { k: 3, h: 2 },
        ];
        for spec in specs {
            for m in 0..=8 {
                let r = oracle_unique_representation(&basis(spec), m, &limits).unwrap();
                assert!(r.agreed(), "{spec} m={m}: {r}");
            }
        }
    }

    #[test]
    fn report_rendering() {
        let r = OracleReport::agree("uniqueness", "seq=pell m=3".into(), "12 valid strings".into());
        assert_eq!(r.to_string(), "uniqueness seq=pell m=3: agree (12 valid strings)");
        let d = OracleReport::disagree(
            "gray",
            "k=2 m=3".into(),
            "distance 2 between neighbors".into(),
            "010 -> 111".into(),
        );
        assert!(d.to_string().contains("DISAGREE"));
        assert!(d.to_string().contains("010 -> 111"));
    }
}
