//! Quadrature and sign-structure tools for integrating `(f)₊` and `|f|`.

mod partition;
mod quadrature;
mod roots;

pub use partition::{signed_variation, Sign, SignPartition, Variation};
pub use quadrature::integrate;
pub use roots::{bisect, find_sign_changes, DEFAULT_GRID, MIN_GRID, ROOT_WIDTH};

use crate::error::{Error, Result};

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections of any single panel.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_depth: 60,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::InvalidParameter("quadrature tolerances must be positive"));
        }
        if max_depth < 10 {
            return Err(Error::InvalidParameter("quadrature max_depth must be at least 10"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_depth,
        })
    }
}
