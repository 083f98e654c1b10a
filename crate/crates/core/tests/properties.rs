use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use permutiple_core::cf::gauss_step;
use permutiple_core::concat::{concat_strings, concatenated_continuant};
use permutiple_core::continuant::{continuant, convergents_of};
use permutiple_core::{ContinuedFraction, Rational};
use proptest::prelude::*;

fn big(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

// Value of [x0; x1, ..., xn] by folding from the right, independent of continuants.
fn nested_value(xs: &[u64]) -> Rational {
    let mut acc = Rational::from_integer(BigInt::from(*xs.last().unwrap()));
    for &x in xs[..xs.len() - 1].iter().rev() {
        let inv = acc.recip().unwrap();
        acc = &Rational::from_integer(BigInt::from(x)) - &(&Rational::zero() - &inv);
    }
    acc
}

fn digits() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..50, 1..9)
}

#[test]
fn continuant_reversal_exhaustive() {
    for len in 0..=6u32 {
        for code in 0..6u64.pow(len) {
            let xs: Vec<u64> = (0..len).map(|i| code / 6u64.pow(i) % 6 + 1).collect();
            let mut rev = xs.clone();
            rev.reverse();
            assert_eq!(continuant(&big(&xs)), continuant(&big(&rev)), "{xs:?}");
        }
    }
}

#[test]
fn concatenation_identity_exhaustive() {
    for len in 0..=5u32 {
        for code in 0..4u64.pow(len) {
            let xs: Vec<u64> = (0..len).map(|i| code / 4u64.pow(i) % 4 + 1).collect();
            let whole = continuant(&big(&xs));
            for cut in 0..=xs.len() {
                let (l, r) = xs.split_at(cut);
                assert_eq!(concatenated_continuant(&big(l), &big(r)), whole);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn continuant_reversal(xs in prop::collection::vec(1u64..1000, 0..12)) {
        let mut rev = xs.clone();
        rev.reverse();
        prop_assert_eq!(continuant(&big(&xs)), continuant(&big(&rev)));
    }

    #[test]
    fn concatenation_identity(l in prop::collection::vec(1u64..100, 0..8), r in prop::collection::vec(1u64..100, 0..8)) {
        let whole = concat_strings(&big(&l), &big(&r));
        prop_assert_eq!(concatenated_continuant(&big(&l), &big(&r)), continuant(&whole));
    }

    #[test]
    fn concatenation_is_a_monoid(a in digits(), b in digits(), c in digits()) {
        let (a, b, c) = (big(&a), big(&b), big(&c));
        prop_assert_eq!(concat_strings(&concat_strings(&a, &b), &c), concat_strings(&a, &concat_strings(&b, &c)));
        prop_assert_eq!(concat_strings(&a, &[]), a.clone());
        prop_assert_eq!(concat_strings(&[], &a), a);
    }

    #[test]
    fn evaluation_matches_nested_fraction(xs in digits()) {
        let cf = ContinuedFraction::from_u64s(&xs).unwrap();
        prop_assert_eq!(cf.evaluate(), nested_value(&xs));
    }

    #[test]
    fn convergents_are_continuants(xs in digits()) {
        let d = big(&xs);
        let conv = convergents_of(&d);
        prop_assert_eq!(conv.len(), d.len());
        for (j, (p, q)) in conv.pairs().iter().enumerate() {
            prop_assert_eq!(p, &continuant(&d[..=j]));
            prop_assert_eq!(q, &continuant(&d[1..=j]));
        }
    }

    #[test]
    fn tail_product_is_reciprocal_denominator(xs in digits()) {
        let cf = ContinuedFraction::from_u64s(&xs).unwrap();
        let q = BigInt::from(cf.convergents().last().1.clone());
        prop_assert_eq!(cf.tails().product(), Rational::new(BigInt::one(), q).unwrap());
        let canon = cf.canonicalize();
        let mut x = canon.evaluate().fract();
        for g in canon.tails().tails() {
            prop_assert_eq!(g, &x);
            x = gauss_step(&x).unwrap();
        }
    }

    #[test]
    fn gauss_map_recovers_digits(xs in digits()) {
        let cf = ContinuedFraction::from_u64s(&xs).unwrap().canonicalize();
        let mut x = cf.evaluate().fract();
        for d in &cf.digits()[1..] {
            prop_assert!(!x.is_zero());
            prop_assert_eq!(x.recip().unwrap().floor(), BigInt::from(d.clone()));
            x = gauss_step(&x).unwrap();
        }
        prop_assert!(x.is_zero());
    }

    #[test]
    fn rational_round_trip(xs in digits()) {
        let cf = ContinuedFraction::from_u64s(&xs).unwrap();
        let canon = cf.canonicalize();
        prop_assert!(canon.is_canonical());
        prop_assert_eq!(canon.canonicalize(), canon.clone());
        prop_assert_eq!(canon.evaluate(), cf.evaluate());
        prop_assert_eq!(ContinuedFraction::from_rational(&cf.evaluate()).unwrap(), canon);
    }

    #[test]
    fn text_round_trip(xs in digits()) {
        let cf = ContinuedFraction::from_u64s(&xs).unwrap();
        prop_assert_eq!(cf.to_string().parse::<ContinuedFraction>().unwrap(), cf);
    }
}

#[test]
fn zero_continuant_is_one() {
    assert_eq!(continuant(&[]), BigUint::one());
    assert!(!continuant(&big(&[1])).is_zero());
}
