use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-size non-negative integer.
pub type Nat = BigUint;
/// Arbitrary-size signed integer.
pub type Int = BigInt;
/// Exact rational, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Grow-only memo table. Entry `i` is a pure function of entries `0..i`, so
/// concurrent fills of the same index always agree.
pub(crate) struct Table<T> {
    rows: Mutex<Vec<T>>,
}

impl<T: Clone> Table<T> {
    pub(crate) const fn new() -> Self {
        Table { rows: Mutex::new(Vec::new()) }
    }

    pub(crate) fn get(&self, index: usize, mut next: impl FnMut(&[T]) -> T) -> T {
        let mut rows = self.rows.lock().unwrap_or_else(|e| e.into_inner());
        while rows.len() <= index {
            let value = next(&rows);
            rows.push(value);
        }
        rows[index].clone()
    }

    pub(crate) fn snapshot(&self) -> Vec<T> {
        self.rows.lock().unwrap_or_else(|e| e.into_inner()).clone()
    }

    /// Replaces the contents with `values` when they extend what is stored.
    pub(crate) fn seed(&self, values: Vec<T>) {
        let mut rows = self.rows.lock().unwrap_or_else(|e| e.into_inner());
        if values.len() > rows.len() {
            *rows = values;
        }
    }
}

static FACTORIALS: Table<Nat> = Table::new();
static HARMONICS: Table<Rat> = Table::new();
static LCMS: Table<Nat> = Table::new();
static BERNOULLI: Table<Rat> = Table::new();
static STIRLING: Table<Vec<Nat>> = Table::new();

pub fn factorial(n: u64) -> Nat {
    FACTORIALS.get(n as usize, |prev| match prev.last() {
        None => Nat::one(),
        Some(last) => last * Nat::from(prev.len()),
    })
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<Nat> {
    if k > n {
        return Err(Error::domain(format!("binomial({n}, {k}) with k > n")));
    }
    let k = k.min(n - k);
    let mut acc = Nat::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// The whole row `C(n, 0..=n)`.
pub fn binomial_row(n: u64) -> Vec<Nat> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = Nat::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// `H_n = 1 + 1/2 + … + 1/n`, with `H_0 = 0`. Memoized incrementally.
pub fn harmonic(n: u64) -> Rat {
    HARMONICS.get(n as usize, |prev| match prev.last() {
        None => Rat::zero(),
        Some(last) => last + Rat::new(Int::one(), Int::from(prev.len())),
    })
}

/// `H_n` by binary splitting, without touching the memo table. Used for the
/// one-off large `n` of the Euler-constant evaluation.
pub fn harmonic_uncached(n: u64) -> Rat {
    fn split(a: u64, b: u64) -> (Int, Int) {
        // sum_{k=a}^{b-1} 1/k = p/q
        if b - a == 1 {
            return (Int::one(), Int::from(a));
        }
        let m = a + (b - a) / 2;
        let (p1, q1) = split(a, m);
        let (p2, q2) = split(m, b);
        (p1 * &q2 + p2 * &q1, q1 * q2)
    }
    if n == 0 {
        return Rat::zero();
    }
    let (p, q) = split(1, n + 1);
    Rat::new(p, q)
}

/// `d_n = lcm(1, 2, …, n)`.
pub fn lcm_upto(n: u64) -> Result<Nat> {
    if n == 0 {
        return Err(Error::domain("lcm_upto(0) is undefined"));
    }
    Ok(LCMS.get(n as usize, |prev| match prev.last() {
        None => Nat::one(),
        Some(last) => last.lcm(&Nat::from(prev.len())),
    }))
}

/// Stored `d_0 = 1, d_1, …` values.
pub fn lcm_table_snapshot() -> Vec<Nat> {
    LCMS.snapshot()
}

/// Installs `d_0, d_1, …` loaded from elsewhere after checking
/// `d_0 = 1` and `d_i = lcm(d_{i−1}, i)`. Returns whether they were accepted.
pub fn preload_lcm_table(values: Vec<Nat>) -> bool {
    if values.first() != Some(&Nat::one()) {
        return false;
    }
    let chained = values.windows(2).enumerate().all(|(i, w)| w[1] == w[0].lcm(&Nat::from(i + 1)));
    if chained {
        LCMS.seed(values);
    }
    chained
}

/// Bernoulli number `B_index` with `B_1 = −1/2`; odd indices above one are zero.
///
/// Built from the convolution recurrence `Σ_{k=0}^{m} C(m+1, k)·B_k = 0`.
pub fn bernoulli(index: u64) -> Rat {
    if index > 1 && index % 2 == 1 {
        return Rat::zero();
    }
    BERNOULLI.get(index as usize, |prev| {
        let m = prev.len() as u64;
        if m == 0 {
            return Rat::one();
        }
        if m > 1 && m % 2 == 1 {
            return Rat::zero();
        }
        let row = binomial_row(m + 1);
        let mut acc = Rat::zero();
        for (k, b) in prev.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rat::from_integer(Int::from(row[k].clone()));
            }
        }
        -acc / Rat::from_integer(Int::from(m + 1))
    })
}

/// Row `m` of the unsigned Stirling numbers of the first kind, the
/// coefficients of the rising factorial `x(x+1)…(x+m−1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingRow {
    pub m: u64,
    pub values: Vec<Nat>,
}

impl StirlingRow {
    pub fn get(&self, k: u64) -> Nat {
        self.values.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn sum(&self) -> Nat {
        self.values.iter().sum()
    }
}

/// `[m+1, k] = m·[m, k] + [m, k−1]`, memoized by row.
pub fn stirling1_row(m: u64) -> StirlingRow {
    let values = STIRLING.get(m as usize, |prev| match prev.last() {
        None => vec![Nat::one()],
        Some(last) => {
            let mm = Nat::from(prev.len() - 1);
            let mut row = vec![Nat::zero(); last.len() + 1];
            for (k, v) in last.iter().enumerate() {
                row[k] += v * &mm;
                row[k + 1] += v;
            }
            row
        }
    });
    StirlingRow { m, values }
}

/// Stored Stirling rows `0, 1, …`.
pub fn stirling_rows_snapshot() -> Vec<Vec<Nat>> {
    STIRLING.snapshot()
}

/// Installs Stirling rows loaded from elsewhere after checking each against
/// the recurrence from its predecessor. Returns whether they were accepted.
pub fn preload_stirling_rows(rows: Vec<Vec<Nat>>) -> bool {
    if rows.first().map(Vec::as_slice) != Some(&[Nat::one()][..]) {
        return false;
    }
    let consistent = rows.windows(2).enumerate().all(|(m, w)| {
        let (last, row) = (&w[0], &w[1]);
        if row.len() != last.len() + 1 {
            return false;
        }
        let mm = Nat::from(m);
        (0..row.len()).all(|k| {
            let from_same = last.get(k).map(|v| v * &mm).unwrap_or_default();
            let from_prev = if k > 0 { last[k - 1].clone() } else { Nat::zero() };
            row[k] == from_same + from_prev
        })
    });
    if consistent {
        STIRLING.seed(rows);
    }
    consistent
}

/// Residuals of the three small-`k` closed forms
/// `[m+1, 0] = 0`, `[m+1, 1] = m!`, `[m+1, 2] = m!·H_m`.
pub fn stirling_small_k_residuals(m: u64) -> (Rat, Rat, Rat) {
    small_k_residuals_of(&stirling1_row(m + 1), m)
}

pub(crate) fn small_k_residuals_of(row: &StirlingRow, m: u64) -> (Rat, Rat, Rat) {
    let fact = Rat::from_integer(Int::from(factorial(m)));
    let entry = |k| Rat::from_integer(Int::from(row.get(k)));
    (
        entry(0),
        entry(1) - &fact,
        entry(2) - fact * harmonic(m),
    )
}

pub(crate) fn nat_to_rat(n: &Nat) -> Rat {
    Rat::from_integer(Int::from(n.clone()))
}
