//! Evaluation context and the crate-wide error type.
//!
//! Every numerical routine takes an [`EvalContext`] describing the binary
//! precision of the backing scalar, the absolute accuracy target and a cap on
//! series truncation. Values that cannot be produced within those limits are
//! reported through [`Error`] instead of being silently degraded.

use thiserror::Error;

/// Mantissa width of IEEE binary64, the backing scalar of the numeric core.
pub const F64_PRECISION_BITS: u32 = 53;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the numerical and exact routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series would need more terms than the context allows.
    #[error("truncation error: needed {needed} terms, cap is {cap}")]
    Truncation { needed: usize, cap: usize },
    /// The point lies on a boundary line of the four-region integral.
    #[error("region error: {0}")]
    Region(String),
    /// The requested value is identically zero or otherwise degenerate.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A series or iteration does not converge fast enough.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// Quadrature or refinement could not reach the requested accuracy.
    #[error("accuracy error: estimate {estimate:e} exceeds target {target:e}")]
    Accuracy { estimate: f64, target: f64 },
    /// Invalid configuration (precision, tolerance, unsupported field, ...).
    #[error("configuration error: {0}")]
    Configuration(String),
    /// A contour passes too close to a zero for the phase to be tracked.
    #[error("contour error: {0}")]
    Contour(String),
}

/// Precision, accuracy target and work limits for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalContext {
    /// Binary precision of the scalar type doing the arithmetic.
    pub precision_bits: u32,
    /// Absolute accuracy target (relative for values larger than one).
    pub tol: f64,
    /// Upper bound on the number of terms of any truncated series.
    pub max_terms: usize,
    /// Upper bound on the number of quadrature panels per integral.
    pub panel_budget: usize,
}

impl Default for EvalContext {
    fn default() -> Self {
        Self {
            precision_bits: F64_PRECISION_BITS,
            tol: 1e-13,
            max_terms: 100_000,
            panel_budget: 4096,
        }
    }
}

impl EvalContext {
    /// Builds a validated context.
    ///
    /// Fails when `tol < 2^(1 - precision_bits)`, when `max_terms` is zero, or
    /// when more bits are requested than the binary64 core provides.
    pub fn new(precision_bits: u32, tol: f64, max_terms: usize) -> Result<Self> {
        let ctx = Self {
            precision_bits,
            tol,
            max_terms,
            ..Self::default()
        };
        ctx.validate()?;
        Ok(ctx)
    }

    /// Default context with a different accuracy target.
    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(F64_PRECISION_BITS, tol, Self::default().max_terms)
    }

    /// Checks the invariants of the context.
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits == 0 || self.precision_bits > F64_PRECISION_BITS {
            return Err(Error::Configuration(format!(
                "precision of {} bits is outside 1..={} supported by the binary64 core",
                self.precision_bits, F64_PRECISION_BITS
            )));
        }
        let floor = 2f64.powi(1 - self.precision_bits as i32);
        if !(self.tol.is_finite() && self.tol >= floor) {
            return Err(Error::Configuration(format!(
                "tolerance {:e} is below 2^(1-{}) = {:e}",
                self.tol, self.precision_bits, floor
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::Configuration("max_terms must be at least 1".into()));
        }
        if self.panel_budget == 0 {
            return Err(Error::Configuration("panel_budget must be at least 1".into()));
        }
        Ok(())
    }

    /// Accuracy target scaled to the magnitude of a value.
    pub fn target_for(&self, magnitude: f64) -> f64 {
        self.tol * magnitude.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_context_is_valid() {
        assert!(EvalContext::default().validate().is_ok());
    }

    #[test]
    fn tolerance_below_precision_floor_is_rejected() {
        assert!(matches!(
            EvalContext::new(53, 1e-17, 10),
            Err(Error::Configuration(_))
        ));
        assert!(EvalContext::new(24, 1e-6, 10).is_ok());
        assert!(EvalContext::new(24, 1e-8, 10).is_err());
    }

    #[test]
    fn excess_precision_is_rejected() {
        assert!(matches!(
            EvalContext::new(128, 1e-30, 10),
            Err(Error::Configuration(_))
        ));
    }

    #[test]
    fn zero_term_cap_is_rejected() {
        assert!(EvalContext::new(53, 1e-10, 0).is_err());
    }
}
