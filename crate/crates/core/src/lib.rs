//! Exact and certified-numeric verification of the decomposition
//!
//! ```text
//! I_n = C(2n, n)·γ + L_n − A_n
//! ```
//!
//! of the vanishing double integral `I_n` into a multiple of Euler's constant,
//! a logarithmic part and a rational part.
//!
//! The crate is split the way the work is split:
//!
//! * [`exact`] holds everything that can be checked with zero rounding error:
//!   harmonic numbers, binomials, Stirling rows, the partial fraction
//!   coefficients of `1/(x(x+1)…(x+n))²` and the zero-sum identities.
//! * [`mp`] is a small arbitrary-precision float layer in which every value
//!   carries a rigorous absolute error bound ([`mp::Ball`]).
//! * [`sequences`] computes the per-`n` quantities (two routes each for `L_n`
//!   and `I_n`) and the irrationality-criterion probe.
//! * [`asymptotics`] turns the asymptotic laws into ratio-to-model scans.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod mp;
pub mod sequences;

pub use error::{Error, Result};
