use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::ball::Ball;
use super::bound::ErrBound;
use super::elementary::{ln2_const, memo_constant, Constant};
use crate::exact::{bernoulli, harmonic, harmonic_uncached, Int, Rat};

/// Guard bits used when choosing Euler–Maclaurin parameters.
pub const GAMMA_GUARD: u32 = 32;

/// Largest `N` for which `H_N` is summed exactly.
const EXACT_HARMONIC_LIMIT: u64 = 1 << 16;

/// `γ = H_N − ln N − 1/(2N) + Σ_{k=1}^{K} B_{2k}/(2k·N^{2k}) + R` with `N = 2^log2_n`
/// and `|R| <= |B_{2K+2}|/((2K+2)·N^{2K+2})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaParams {
    pub log2_n: u32,
    pub terms: u32,
}

/// `log2 |B_{2k}|` upper estimate from `|B_{2k}| <= 2·ζ(2)·(2k)!/(2π)^{2k}`.
fn log2_bernoulli_estimate(two_k: u32) -> f64 {
    let lf: f64 = (2..=two_k).map(|i| (i as f64).log2()).sum();
    1.0 + (std::f64::consts::PI.powi(2) / 6.0).log2() + lf
        - two_k as f64 * (2.0 * std::f64::consts::PI).log2()
}

/// Smallest `N = 2^a` (and then smallest `K`) whose remainder estimate is below `2^-(p+guard)`.
pub fn gamma_params(p: u32) -> GammaParams {
    let target = (p + GAMMA_GUARD) as f64;
    let k_max = ((p + GAMMA_GUARD) / 8).clamp(30, 400);
    for a in 1..=40u32 {
        for k in 1..=k_max {
            let m = 2 * k + 2;
            let est = log2_bernoulli_estimate(m) - (m as f64).log2() - (m as f64) * a as f64;
            if est <= -target {
                return GammaParams { log2_n: a, terms: k };
            }
        }
    }
    GammaParams { log2_n: 40, terms: k_max }
}

/// Euler's constant with explicit Euler–Maclaurin parameters.
pub fn euler_gamma_with(params: GammaParams, p: u32) -> Ball {
    let w = p + 16;
    let a = params.log2_n;
    let n: u64 = 1 << a;
    let harmonic_n = if n <= 4096 {
        harmonic(n)
    } else if n <= EXACT_HARMONIC_LIMIT {
        harmonic_uncached(n)
    } else {
        return harmonic_float(n, w).sub(&tail_terms(params, w, a), w).round(p);
    };
    // Everything except ln N is an exact rational.
    let n_big = Int::from(n);
    let mut rational = harmonic_n - Rat::new(Int::one(), Int::from(2u64) * &n_big);
    let mut n_pow = Int::one();
    for k in 1..=params.terms as u64 {
        n_pow *= &n_big * &n_big;
        rational += bernoulli(2 * k) / (Rat::from_integer(Int::from(2 * k)) * Rat::from_integer(n_pow.clone()));
    }
    let remainder = remainder_bound(params);
    let ln_n = ln2_const(w + 8).mul_int(&BigInt::from(a), w);
    Ball::from_rat(&rational, w).sub(&ln_n, w).widen(remainder).round(p)
}

fn remainder_bound(params: GammaParams) -> ErrBound {
    let m = 2 * params.terms as u64 + 2;
    let n_pow = num_traits::pow(Int::one() << params.log2_n as usize, m as usize);
    let r = bernoulli(m).abs() / (Rat::from_integer(Int::from(m)) * Rat::from_integer(n_pow));
    ErrBound::upper_of_rat(&r)
}

/// `ln N + 1/(2N) − Σ_k B_{2k}/(2k·N^{2k})` widened by the remainder, for the float path.
fn tail_terms(params: GammaParams, w: u32, a: u32) -> Ball {
    let n_big = Int::one() << a as usize;
    let mut rational = Rat::new(Int::one(), Int::from(2u64) * &n_big);
    let mut n_pow = Int::one();
    for k in 1..=params.terms as u64 {
        n_pow *= &n_big * &n_big;
        rational -= bernoulli(2 * k) / (Rat::from_integer(Int::from(2 * k)) * Rat::from_integer(n_pow.clone()));
    }
    let ln_n = ln2_const(w + 8).mul_int(&BigInt::from(a), w);
    Ball::from_rat(&rational, w).add(&ln_n, w).widen(remainder_bound(params))
}

fn harmonic_float(n: u64, w: u32) -> Ball {
    let mut acc = Ball::zero();
    for k in 1..=n {
        acc = acc.add(&Ball::from_int(1).div_int(&BigInt::from(k), w).expect("k > 0"), w);
    }
    acc
}

/// Euler's constant to `p` bits, memoized per precision.
pub fn euler_gamma(p: u32) -> Ball {
    memo_constant(Constant::EulerGamma, p, || euler_gamma_with(gamma_params(p), p))
}

/// `ψ(k+1) = H_k − γ`.
pub fn digamma_int(k: u64, p: u32) -> Ball {
    Ball::from_rat(&harmonic(k), p + 8).sub(&euler_gamma(p + 8), p)
}

/// Agreement of two independent parameter choices, `(N, K)` and `(4N, K+2)`,
/// in bits: `−log2 |γ₁ − γ₂|` (infinite when identical).
pub fn gamma_cross_check_bits(p: u32) -> f64 {
    let base = gamma_params(p);
    let alt = GammaParams { log2_n: base.log2_n + 2, terms: base.terms + 2 };
    let g1 = euler_gamma_with(base, p);
    let g2 = euler_gamma_with(alt, p);
    let diff = g1.sub(&g2, p + 64);
    if diff.mid().is_zero() {
        return f64::INFINITY;
    }
    -ErrBound::upper_of(diff.mid()).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::BigFloat;

    const GAMMA_40: &str = "0.5772156649015328606065120900824024310422";

    #[test]
    fn gamma_digits() {
        let g = euler_gamma(128);
        assert!(g.rad().log2() <= -127.0);
        let s = g.mid().to_decimal(33);
        assert_eq!(&s[..34], &GAMMA_40[..34]);
    }

    #[test]
    fn gamma_dual_parameters_agree() {
        for p in [64, 128, 192] {
            assert!(gamma_cross_check_bits(p) >= (p - GAMMA_GUARD) as f64, "p = {p}");
        }
        let base = gamma_params(128);
        let g1 = euler_gamma_with(base, 128);
        let g2 = euler_gamma_with(GammaParams { log2_n: base.log2_n + 2, terms: base.terms + 2 }, 128);
        assert!(g1.overlaps(&g2));
    }

    #[test]
    fn float_harmonic_path_matches() {
        // Force the float path with a large N and a small K.
        let params = GammaParams { log2_n: 17, terms: 3 };
        let g = euler_gamma_with(params, 100);
        assert!(g.overlaps(&euler_gamma(100)));
        assert!(g.rad().log2() < -90.0);
    }

    #[test]
    fn harmonic_minus_log_converges_from_above() {
        // H_N − ln N − γ ≈ 1/(2N)
        let p = 96;
        let n = 10_000u64;
        let h = Ball::from_rat(&harmonic_uncached(n), p);
        let l = crate::mp::ln_point(&BigFloat::from_int(n), p).unwrap();
        let excess = h.sub(&l, p).sub(&euler_gamma(p), p);
        let lead = 1.0 / (2.0 * n as f64);
        assert!(excess.is_strictly_positive());
        assert!((excess.to_f64() - lead).abs() < lead * 1e-3);
    }

    #[test]
    fn digamma_values() {
        let p = 96;
        assert_eq!(digamma_int(0, p).to_f64(), -euler_gamma(p).to_f64());
        assert!((digamma_int(1, p).to_f64() - 0.422_784_335_098_467_1).abs() < 1e-15);
        // ψ(k+1) − ln k shrinks like 1/(2k)
        let gap = |k: u64| {
            let l = crate::mp::ln_point(&BigFloat::from_int(k), p).unwrap();
            digamma_int(k, p).sub(&l, p).to_f64().abs()
        };
        let (g2, g4) = (gap(100), gap(10_000));
        assert!(g4 < g2 / 50.0);
        assert!((g2 - 0.005).abs() < 1e-4);
    }
}
