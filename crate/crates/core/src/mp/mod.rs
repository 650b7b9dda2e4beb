//! Certified multiprecision values: dyadic midpoints with explicit absolute error bounds.

mod ball;
mod bound;
mod elementary;
mod float;
mod frac;
mod gamma;
mod log_factorial;
mod policy;

pub use ball::Ball;
pub use bound::ErrBound;
pub use elementary::{constant_snapshot, ln2_const, ln_point, pi_const, preload_constant, Constant};
pub use float::BigFloat;
pub use frac::{frac_part_ball, frac_part_certified};
pub use gamma::{digamma_int, euler_gamma, euler_gamma_with, gamma_cross_check_bits, gamma_params, GammaParams, GAMMA_GUARD};
pub use log_factorial::{
    log_factorial, log_factorial_precisions, log_factorial_ratio, log_factorial_snapshot, log_rising,
    preload_log_factorials,
};
pub use policy::PrecisionPolicy;
