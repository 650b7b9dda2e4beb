use crate::error::{Error, Result};

/// Working-precision plan for a certified computation.
///
/// `frac_bits` is the number of correct bits wanted after the binary point of the
/// final quantity; `initial_bits` overrides the automatically derived start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub frac_bits: u32,
    pub guard_bits: u32,
    pub max_bits: u32,
    pub auto_escalate: bool,
    pub initial_bits: Option<u32>,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { frac_bits: 64, guard_bits: 64, max_bits: 1 << 16, auto_escalate: true, initial_bits: None }
    }
}

impl PrecisionPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.guard_bits < 32 {
            return Err(Error::domain(format!("guard bits must be at least 32, got {}", self.guard_bits)));
        }
        if self.max_bits < self.frac_bits + self.guard_bits {
            return Err(Error::domain("max precision below target plus guard"));
        }
        if let Some(b) = self.initial_bits {
            if b < 16 || b > self.max_bits {
                return Err(Error::domain(format!("starting precision {b} outside 16..={}", self.max_bits)));
            }
        }
        Ok(())
    }

    /// Starting precision given an estimate of the bits lost before the binary point.
    pub fn start(&self, magnitude_bits: u32) -> u32 {
        self.initial_bits
            .unwrap_or(magnitude_bits + self.frac_bits + self.guard_bits)
            .min(self.max_bits)
    }

    /// Next precision after a failure at `p`: doubled, capped at `max_bits`.
    pub fn escalate(&self, p: u32) -> Result<u32> {
        if !self.auto_escalate {
            return Err(Error::PrecisionExhausted { max_bits: p });
        }
        if p >= self.max_bits {
            return Err(Error::PrecisionExhausted { max_bits: self.max_bits.max(p) });
        }
        Ok(p.saturating_mul(2).min(self.max_bits))
    }

    /// Runs `attempt` at increasing precisions until it stops reporting
    /// [`Error::PrecisionInsufficient`]; other errors pass through.
    pub fn run<T>(&self, magnitude_bits: u32, mut attempt: impl FnMut(u32) -> Result<T>) -> Result<(T, u32)> {
        let mut p = self.start(magnitude_bits);
        loop {
            match attempt(p) {
                Ok(v) => return Ok((v, p)),
                Err(Error::PrecisionInsufficient { extra_bits }) => {
                    let doubled = self.escalate(p)?;
                    let wanted = p.saturating_add(extra_bits.min(u32::MAX as u64) as u32);
                    p = doubled.max(wanted.min(self.max_bits));
                }
                Err(e) => return Err(e),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = PrecisionPolicy::default();
        p.validate().unwrap();
        assert_eq!(p.start(100), 228);
        let bad = PrecisionPolicy { guard_bits: 16, ..p };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn escalation_doubles_then_stops() {
        let p = PrecisionPolicy { max_bits: 1000, ..Default::default() };
        assert_eq!(p.escalate(300).unwrap(), 600);
        assert_eq!(p.escalate(600).unwrap(), 1000);
        assert!(matches!(p.escalate(1000), Err(Error::PrecisionExhausted { max_bits: 1000 })));
        let fixed = PrecisionPolicy { auto_escalate: false, ..p };
        assert!(fixed.escalate(300).is_err());
    }

    #[test]
    fn run_retries_until_success() {
        let policy = PrecisionPolicy { frac_bits: 10, guard_bits: 32, max_bits: 4096, ..Default::default() };
        let (v, p) = policy
            .run(0, |p| if p < 500 { Err(Error::PrecisionInsufficient { extra_bits: 1 }) } else { Ok(p) })
            .unwrap();
        assert_eq!(v, p);
        assert!(p >= 500);
        let capped = PrecisionPolicy { max_bits: 100, ..policy };
        let r: Result<(u32, u32)> = capped.run(0, |_| Err(Error::PrecisionInsufficient { extra_bits: 1 }));
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }
}
