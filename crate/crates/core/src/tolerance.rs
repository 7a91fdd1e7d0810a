//! Absolute/relative comparison tolerances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mixed absolute/relative tolerance.
///
/// Two scalars compare equal when `|a - b| <= abs + rel * max(|a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if abs.is_nan() || rel.is_nan() || abs < 0.0 || rel < 0.0 {
            return Err(Error::InvalidInput(format!(
                "tolerance components must be nonnegative, got abs={abs}, rel={rel}"
            )));
        }
        Ok(Tolerance { abs, rel })
    }

    /// Purely absolute tolerance.
    pub fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_values() {
        let tol = Tolerance::default();
        assert_eq!(tol.abs, 1e-10);
        assert_eq!(tol.rel, 1e-9);
    }

    #[test]
    fn close_mixes_abs_and_rel() {
        let tol = Tolerance {
            abs: 1e-10,
            rel: 1e-9,
        };
        assert!(tol.close(1.0, 1.0 + 5e-10));
        assert!(tol.close(1e6, 1e6 + 5e-4));
        assert!(!tol.close(1.0, 1.0 + 1e-6));
    }

    #[test]
    fn rejects_negative() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(0.0, f64::NAN).is_err());
    }
}
