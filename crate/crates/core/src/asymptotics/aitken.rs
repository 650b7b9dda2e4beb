use crate::error::{Error, Result};

/// Aitken Δ² extrapolation of the last three values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AitkenResult {
    pub value: f64,
    /// Second difference too small to divide by; `value` is the last raw value.
    pub degenerate: bool,
}

/// `x₂ − (x₂ − x₁)²/((x₂ − x₁) − (x₁ − x₀))` on the last three points.
pub fn aitken_limit(values: &[f64]) -> Result<AitkenResult> {
    if values.len() < 3 {
        return Err(Error::domain("Aitken extrapolation needs at least three values"));
    }
    let [x0, x1, x2] = [values[values.len() - 3], values[values.len() - 2], values[values.len() - 1]];
    if !(x0.is_finite() && x1.is_finite() && x2.is_finite()) {
        return Err(Error::domain("non-finite value in Aitken input"));
    }
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let den = d2 - d1;
    let scale = x0.abs().max(x1.abs()).max(x2.abs()).max(f64::MIN_POSITIVE);
    if den.abs() <= 64.0 * f64::EPSILON * scale {
        return Ok(AitkenResult { value: x2, degenerate: true });
    }
    Ok(AitkenResult { value: x2 - d2 * d2 / den, degenerate: false })
}
