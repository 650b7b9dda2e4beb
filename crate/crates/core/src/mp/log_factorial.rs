use std::collections::HashMap;
use std::sync::Mutex;

use super::ball::Ball;
use super::bound::ErrBound;
use super::elementary::ln_point;
use super::float::BigFloat;

/// Cumulative `ln(m!)` per precision: entry `m` holds `Σ_{k<=m} ln k`.
static CUMULATIVE: Mutex<Option<HashMap<u32, Vec<Ball>>>> = Mutex::new(None);

fn with_cache<R>(f: impl FnOnce(&mut HashMap<u32, Vec<Ball>>) -> R) -> R {
    let mut guard = CUMULATIVE.lock().unwrap_or_else(|e| e.into_inner());
    f(guard.get_or_insert_with(HashMap::new))
}

/// `ln k` with absolute error at most `2^-(p+7)`.
fn ln_term(k: u64, p: u32) -> Ball {
    // ln k < 2^scale, so a relative bound at p+8+scale becomes absolute at p+7
    let scale = (64 - k.leading_zeros()).next_power_of_two().trailing_zeros() + 1;
    ln_point(&BigFloat::from_int(k), p + 8 + scale).expect("k >= 2")
}

/// `ln(m!)` with absolute error at most `m·2^(2−p)`.
///
/// Terms are summed without rounding, so the bound grows only with the
/// number of terms and not with the size of the sum.
pub fn log_factorial(m: u64, p: u32) -> Ball {
    let (start, mut acc) = with_cache(|cache| {
        let row = cache.entry(p).or_insert_with(|| vec![Ball::zero(), Ball::zero()]);
        if let Some(v) = row.get(m as usize) {
            return (None, v.clone());
        }
        (Some(row.len() as u64), row.last().cloned().expect("non-empty"))
    });
    let Some(start) = start else { return acc };
    let mut extension = Vec::with_capacity((m + 1 - start) as usize);
    for k in start..=m {
        acc = acc.add_exact(&ln_term(k, p));
        extension.push(acc.clone());
    }
    with_cache(|cache| {
        let row = cache.get_mut(&p).expect("row created above");
        // Another thread may have extended the row meanwhile; values are identical.
        let have = row.len() as u64;
        if have < m + 1 {
            row.extend(extension.into_iter().skip((have - start) as usize));
        }
    });
    acc
}

/// `ln((a)!/(b)!) = Σ_{k=b+1}^{a} ln k` for `a >= b`.
pub fn log_factorial_ratio(a: u64, b: u64, p: u32) -> Ball {
    log_factorial(a, p).sub(&log_factorial(b, p), p + 64)
}

/// Copy of the cached cumulative sums at precision `p`.
pub fn log_factorial_snapshot(p: u32) -> Vec<Ball> {
    with_cache(|cache| cache.get(&p).cloned().unwrap_or_default())
}

/// Precisions with cached rows.
pub fn log_factorial_precisions() -> Vec<u32> {
    let mut ps: Vec<u32> = with_cache(|cache| cache.keys().copied().collect());
    ps.sort_unstable();
    ps
}

/// Installs cumulative sums loaded from elsewhere, if longer than what is cached.
/// Returns `false` (and installs nothing) when the values fail the per-entry bound check.
pub fn preload_log_factorials(p: u32, values: Vec<Ball>) -> bool {
    if values.len() < 2 || values[0] != Ball::zero() || values[1] != Ball::zero() {
        return false;
    }
    for (m, v) in values.iter().enumerate() {
        if v.rad() > ErrBound::ulps(m as u64, 2 - p as i64) {
            return false;
        }
    }
    // spot check the last entry against a direct evaluation
    let last = values.len() as u64 - 1;
    let direct = (2..=last.min(64)).fold(Ball::zero(), |acc, k| acc.add_exact(&ln_term(k, p)));
    if !values[last.min(64) as usize].overlaps(&direct) {
        return false;
    }
    with_cache(|cache| {
        let row = cache.entry(p).or_default();
        if row.len() < values.len() {
            *row = values;
        }
    });
    true
}

/// `Σ_{i=1}^{j} ln(base + i)`, i.e. `ln((base+j)!/base!)`, without touching the cache.
/// Absolute error at most `j·2^-(p+7)`.
pub fn log_rising(base: u64, j: u64, p: u32) -> Ball {
    let mut acc = Ball::zero();
    for i in 1..=j {
        acc = acc.add_exact(&ln_term(base + i, p));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(log_factorial(0, 64), Ball::zero());
        assert_eq!(log_factorial(1, 64), Ball::zero());
        let l2 = log_factorial(2, 64);
        assert!(l2.overlaps(&crate::mp::ln2_const(64)));
        let diff = log_factorial(24, 96).sub(&log_factorial(23, 96), 96);
        assert!(diff.overlaps(&ln_point(&BigFloat::from_int(24), 96).unwrap()));
    }

    #[test]
    fn bound_and_sandwich() {
        let p = 80;
        for m in [2u64, 10, 100, 1000] {
            let v = log_factorial(m, p);
            assert!(v.rad() <= ErrBound::ulps(m, 2 - p as i64));
            let mf = m as f64;
            let x = v.to_f64();
            assert!(x >= mf * mf.ln() - mf && x <= mf * mf.ln(), "m = {m}");
        }
        // 20! = 2432902008176640000
        let l20 = log_factorial(20, p).to_f64();
        assert!((l20 - 2_432_902_008_176_640_000f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn cache_is_consistent_across_orders() {
        let p = 77;
        let late = log_factorial(300, p);
        let early = log_factorial(150, p);
        let fresh = (2..=150u64).fold(Ball::zero(), |acc, k| acc.add_exact(&ln_term(k, p)));
        assert_eq!(early, fresh);
        assert_eq!(log_factorial(300, p), late);
        assert_eq!(log_factorial_snapshot(p).len(), 301);
    }

    #[test]
    fn preload_rejects_corrupt_values() {
        let p = 71;
        let mut good: Vec<Ball> = (0..=80).map(|m| log_factorial(m, p)).collect();
        assert!(preload_log_factorials(p, good.clone()));
        good[64] = Ball::from_int(5);
        assert!(!preload_log_factorials(73, good));
    }

    #[test]
    fn rising_matches_ratio() {
        let p = 96;
        let r = log_rising(40, 7, p);
        assert!(r.overlaps(&log_factorial_ratio(47, 40, p)));
    }

    #[test]
    fn escalation_is_sound() {
        assert!(log_factorial(500, 64).overlaps(&log_factorial(500, 128)));
    }
}
