use gammalab_core::exact::{partial_fraction_residual, Rat};
use gammalab_core::mp::{
    digamma_int, euler_gamma, frac_part_certified, gamma_cross_check_bits, ln_point, log_factorial, Ball, BigFloat,
    ErrBound,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn ln_functional_equation_on_seeded_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let p = 96;
    for _ in 0..100 {
        let x = BigFloat::from_f64(rng.gen_range(1e-6..1e6));
        let y = BigFloat::from_f64(rng.gen_range(1e-6..1e6));
        let xy = &x * &y;
        let lhs = ln_point(&xy, p).unwrap();
        let rhs = ln_point(&x, p).unwrap().add(&ln_point(&y, p).unwrap(), p);
        assert!(lhs.overlaps(&rhs), "x = {x}, y = {y}");
    }
}

#[test]
fn escalation_soundness() {
    for p in [64u32, 128, 256] {
        assert!(euler_gamma(p).overlaps(&euler_gamma(p + 64)));
        assert!(log_factorial(200, p).overlaps(&log_factorial(200, p + 64)));
        assert!(digamma_int(17, p).overlaps(&digamma_int(17, p + 64)));
    }
}

#[test]
fn gamma_dual_parameter_check_at_192() {
    assert!(gamma_cross_check_bits(192) >= 120.0);
}

#[test]
fn log_factorial_stirling_sandwich() {
    for m in 2..=400u64 {
        let v = log_factorial(m, 72).to_f64();
        let mf = m as f64;
        assert!(v >= mf * mf.ln() - mf && v <= mf * mf.ln(), "m = {m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn frac_reconstructs_exactly(mant in -1_000_000_000i64..1_000_000_000, shift in 0i64..40) {
        let x = BigFloat::from_parts(BigInt::from(mant), -shift);
        let err = ErrBound::pow2(-60);
        if x == BigFloat::from_int(x.floor()) {
            // an integer with a nonzero radius straddles
            prop_assert!(frac_part_certified(&x, err).is_err());
            return Ok(());
        }
        let (int_part, frac) = frac_part_certified(&x, err).unwrap();
        prop_assert_eq!(&BigFloat::from_int(int_part) + frac.mid(), x);
        prop_assert!(frac.mid().signum() >= 0);
        prop_assert!(frac.mid() < &BigFloat::one());
    }

    #[test]
    fn ball_sum_contains_exact_sum(a in -1e12f64..1e12, b in -1e12f64..1e12, p in 8u32..80) {
        let x = Ball::exact(BigFloat::from_f64(a));
        let y = Ball::exact(BigFloat::from_f64(b));
        let s = x.add(&y, p);
        prop_assert!(s.contains(&(&BigFloat::from_f64(a) + &BigFloat::from_f64(b))));
        let prod = x.mul(&y, p);
        prop_assert!(prod.contains(&(&BigFloat::from_f64(a) * &BigFloat::from_f64(b))));
    }

    #[test]
    fn partial_fractions_hold_at_random_rationals(n in 1u64..12, num in -10_000i64..10_000, den in 1i64..500) {
        let x = Rat::new(BigInt::from(num), BigInt::from(den));
        if let Ok(r) = partial_fraction_residual(n, &x) {
            prop_assert!(r.is_zero());
        }
    }
}
