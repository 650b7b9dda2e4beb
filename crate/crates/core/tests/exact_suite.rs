use gammalab_core::exact::suite::{run_suite, Reference, SuiteConfig};
use gammalab_core::exact::{
    a_exact, integrality_witness, lcm_upto, zero_sum_centered_residual, zero_sum_one_sided_residual,
};
use num_traits::Zero;

#[test]
fn full_suite_to_200() {
    let report = run_suite(&SuiteConfig::for_n_max(200), &Reference);
    for c in &report.checks {
        assert!(c.passed(), "{} failed at {:?}", c.identity, c.first_failure);
        assert!(c.cases > 0);
    }
}

#[test]
fn zero_sums_and_integrality_spot_checks() {
    for n in [1u64, 2, 17, 64, 199, 200] {
        assert!(zero_sum_centered_residual(n).is_zero());
        assert!(zero_sum_one_sided_residual(n).is_zero());
        let w = integrality_witness(n).unwrap();
        let d = num_bigint::BigInt::from(lcm_upto(2 * n).unwrap());
        assert_eq!(num_rational::BigRational::from_integer(w), a_exact(n) * num_rational::BigRational::from_integer(d));
    }
}
