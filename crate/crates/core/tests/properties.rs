//! Cross-cutting invariants: randomized round trips and exhaustive sweeps
//! that tie the modules together through the public API.

use graynum::basis::SequenceSpec;
use graynum::codec::{decode, encode, is_valid, pad, DigitString};
use graynum::graycode;
use graynum::language;
use graynum::perm;
use graynum::{Natural, NumerationBasis};

use num_traits::One;
use proptest::prelude::*;

fn all_specs() -> Vec<SequenceSpec> {
    vec![
        SequenceSpec::Pell,
        SequenceSpec::PowersOfTwo,
        SequenceSpec::KBonacci { k: 2 },
        SequenceSpec::KBonacci { k: 3 },
        SequenceSpec::KBonacci { k: 5 },
        SequenceSpec::LinearPlus { k: 3, h: 2 },
        SequenceSpec::LinearPlus { k: 7, h: 7 },
        SequenceSpec::LinearMinus { k: 3, h: 2 },
        SequenceSpec::LinearMinus { k: 9, h: 4 },
    ]
}

#[test]
fn round_trip_first_million() {
    for spec in [
        SequenceSpec::Pell,
        SequenceSpec::PowersOfTwo,
        SequenceSpec::KBonacci { k: 2 },
        SequenceSpec::LinearPlus { k: 3, h: 2 },
        SequenceSpec::LinearMinus { k: 3, h: 2 },
    ] {
        let basis = NumerationBasis::new(spec).unwrap();
        let mut n = Natural::from(0u32);
        for _ in 0..=1_000_000u32 {
            let s = encode(&basis, &n);
            assert_eq!(decode(&basis, &s).as_ref(), Ok(&n), "{spec} n={n}");
            n += Natural::one();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn round_trip_random_large(digits in "[1-9][0-9]{0,39}", which in 0usize..9) {
        let n: Natural = digits.parse().unwrap();
        let spec = all_specs()[which];
        let basis = NumerationBasis::new(spec).unwrap();
        let s = encode(&basis, &n);
        prop_assert!(is_valid(&basis, &s));
        prop_assert_eq!(decode(&basis, &s), Ok(n));
    }
}

proptest! {
    /// A fixed-length string is valid exactly when it is the padded encoding
    /// of its own decoded value.
    #[test]
    fn validity_means_canonical(
        which in 0usize..9,
        raw in proptest::collection::vec(0u64..=u64::MAX, 0..10),
    ) {
        let spec = all_specs()[which];
        let basis = NumerationBasis::new(spec).unwrap();
        let m = raw.len();
        // Clamp each drawn value into the per-position digit range.
        let digits: Vec<u64> = raw
            .iter()
            .rev()
            .enumerate()
            .map(|(i, &r)| r % (basis.digit_bound(i) + 1))
            .rev()
            .collect();
        let s = DigitString::new(digits);
        let value = decode(&basis, &s).expect("digits are within bounds");
        // Per-position bounds do not cap the total: the value may need more
        // than m digits, in which case the string cannot be valid.
        match pad(&encode(&basis, &value), m) {
            Ok(canonical) => prop_assert_eq!(is_valid(&basis, &s), canonical == s),
            Err(_) => prop_assert!(!is_valid(&basis, &s)),
        }
    }

    #[test]
    fn single_increment_validity(which in 0usize..9, n in 0u64..100_000, position in 0usize..8) {
        let spec = all_specs()[which];
        let basis = NumerationBasis::new(spec).unwrap();
        let s = encode(&basis, &Natural::from(n));
        prop_assume!(position < s.len());
        let mut digits = s.digits().to_vec();
        let idx = digits.len() - 1 - position;
        digits[idx] += 1;
        prop_assume!(digits[idx] <= basis.digit_bound(position));
        let bumped = DigitString::new(digits);
        // Still within per-position bounds, so it decodes; it is valid only
        // if it is the greedy form of what it decodes to.
        let value = decode(&basis, &bumped).expect("within bounds");
        match pad(&encode(&basis, &value), bumped.len()) {
            Ok(canonical) => prop_assert_eq!(is_valid(&basis, &bumped), canonical == bumped),
            Err(_) => prop_assert!(!is_valid(&basis, &bumped)),
        }
    }

    #[test]
    fn run_filter_matches_membership(k in 2u64..=5, bits in 0u64..(1 << 16)) {
        // Compare avoids_ones_run against a plain substring search.
        let digits: Vec<u64> = (0..16).rev().map(|i| (bits >> i) & 1).collect();
        let s = DigitString::new(digits);
        let needle = "1".repeat(k as usize);
        let expected = !s.to_string().contains(&needle);
        prop_assert_eq!(language::avoids_ones_run(&s, k), Ok(expected));
    }

    #[test]
    fn gray_cursor_matches_eager_random(k in 2u64..=5, m in 0usize..=11) {
        let lazy: Vec<DigitString> = graycode::gray_language(k, m).collect();
        prop_assert_eq!(lazy, graycode::gray_language_list(k, m));
    }

    #[test]
    fn perm_bijection_round_trip(values in proptest::collection::vec(0u64..=1, 0..12)) {
        let arr = perm::InversionArray::new(values);
        let p = perm::perm_from_string(&arr).unwrap();
        prop_assert_eq!(p.len(), arr.len() + 1);
        prop_assert_eq!(perm::inversion_array(&p).unwrap(), arr);
    }

    #[test]
    fn class_strings_transport(k in 2u64..=4, m in 1usize..=9) {
        // Every language string maps into the class and back to itself.
        for s in language::language_by_recursion(k, m).iter() {
            let p = perm::perm_from_string(&perm::InversionArray::from_digit_string(s)).unwrap();
            prop_assert!(perm::in_class(&p, k));
            prop_assert_eq!(perm::string_from_perm(&p).to_digit_string(), s.clone());
        }
    }
}
