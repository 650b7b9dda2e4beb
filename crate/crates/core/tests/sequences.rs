use gammalab_core::mp::{euler_gamma, ErrBound, PrecisionPolicy};
use gammalab_core::sequences::{
    criterion_probe, criterion_probe_at, gamma_roundtrip, i_closed_form, i_series, l_consistency, log_s_exponents,
    s_limit_probe,
};

#[test]
fn l_cross_method_up_to_30() {
    for n in 1..=30 {
        let c = l_consistency(n, 128).unwrap();
        assert!(c.pass, "n = {n}");
    }
}

#[test]
fn i_cross_method_up_to_20() {
    let mut prev = None;
    for n in 1..=20u64 {
        let (s, _) = i_series(n, ErrBound::pow2(-(4 * n as i64 + 80))).unwrap();
        let c = i_closed_form(n, 6 * n as u32 + 160).unwrap();
        assert!(s.overlaps(&c), "n = {n}");
        assert!(s.is_strictly_positive());
        if let Some(p) = prev.replace(s.clone()) {
            assert!(s.upper() < gammalab_core::mp::Ball::lower(&p));
        }
    }
}

#[test]
fn gamma_roundtrip_at_twenty() {
    let r = gamma_roundtrip(20, 512).unwrap();
    assert!(r.agree);
    assert!(r.digits() >= 30.0, "{}", r.digits());
    for n in [1, 5, 12] {
        let r = gamma_roundtrip(n, 160).unwrap();
        assert!(r.agree, "n = {n}");
        assert!(r.estimate.overlaps(&euler_gamma(160)));
    }
}

#[test]
fn exponent_integrality_up_to_100() {
    for n in 1..=100 {
        log_s_exponents(n).unwrap();
    }
}

#[test]
fn criterion_probe_up_to_60() {
    let policy = PrecisionPolicy { frac_bits: 40, ..Default::default() };
    for n in 1..=60 {
        let c = criterion_probe(n, &policy).unwrap();
        let twice = criterion_probe_at(n, 2 * c.precision, policy.frac_bits).unwrap();
        let diff = c.frac_log_s.sub(&twice.frac_log_s, 2 * c.precision);
        assert!(diff.abs_upper().log2() <= -32.0, "n = {n}");
        assert_eq!(c.floor_log_s, twice.floor_log_s);
    }
}

#[test]
fn s_limit_decays() {
    for n in [1u64, 2, 3, 5] {
        let v: Vec<f64> = [100u64, 1000, 10_000].iter().map(|&r| s_limit_probe(n, r, 96).unwrap().to_f64().abs()).collect();
        assert!(v[0] > v[1] && v[1] > v[2], "n = {n}: {v:?}");
    }
}
