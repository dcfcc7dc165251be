use alloc::vec::Vec;

use super::{find_sign_changes, integrate, QuadratureConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

/// A split of `[a, b]` into segments on which a function keeps one sign.
#[derive(Debug, Clone, PartialEq)]
pub struct SignPartition {
    breakpoints: Vec<f64>,
    signs: Vec<Sign>,
}

impl SignPartition {
    /// `breakpoints` must be strictly increasing with one more entry than `signs`.
    pub fn new(breakpoints: Vec<f64>, signs: Vec<Sign>) -> Result<Self> {
        if breakpoints.len() < 2 || signs.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidParameter(
                "partition needs n + 1 breakpoints for n segments",
            ));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) || breakpoints.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "partition breakpoints must be finite and strictly increasing",
            ));
        }
        Ok(Self { breakpoints, signs })
    }

    /// Refines the mandatory `edges` (window edges and discontinuities) with the
    /// sign changes of `f` found on each edge-to-edge segment.
    pub fn build<F: Fn(f64) -> f64>(f: F, edges: &[f64], grid_n: usize) -> Result<Self> {
        if edges.len() < 2 || edges.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("partition edges must be strictly increasing"));
        }
        let mut breakpoints = Vec::with_capacity(edges.len());
        breakpoints.push(edges[0]);
        for seg in edges.windows(2) {
            for r in find_sign_changes(&f, seg[0], seg[1], grid_n) {
                if r > *breakpoints.last().unwrap() && r < seg[1] {
                    breakpoints.push(r);
                }
            }
            breakpoints.push(seg[1]);
        }
        let signs = breakpoints.windows(2).map(|w| probe_sign(&f, w[0], w[1])).collect();
        Self::new(breakpoints, signs)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `(start, end, sign)` for every segment.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, Sign)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.signs)
            .map(|(w, &s)| (w[0], w[1], s))
    }

    pub fn start(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn end(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1]
    }
}

fn probe_sign<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Sign {
    for frac in [0.5, 0.25, 0.75, 0.125, 0.875] {
        let v = f(lo + frac * (hi - lo));
        if v > 0.0 {
            return Sign::Positive;
        }
        if v < 0.0 {
            return Sign::Negative;
        }
    }
    Sign::Zero
}

/// Positive, negative and total variation of the antiderivative of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Variation {
    /// `∫ f₊`
    pub positive: f64,
    /// `∫ f₋`
    pub negative: f64,
    /// `∫ |f|`
    pub total: f64,
}

/// Integrates `f₊`, `f₋` and `|f|` segment by segment over a sign partition.
///
/// On each segment `f` has one sign, so `∫|f| = |∫f|` there. A segment whose
/// integral disagrees in sign with its probed sign (a root missed by the scan)
/// is booked by the sign of its integral.
pub fn signed_variation<F: Fn(f64) -> f64>(
    f: F,
    partition: &SignPartition,
    cfg: &QuadratureConfig,
) -> Result<Variation> {
    let mut out = Variation::default();
    for (lo, hi, _) in partition.segments() {
        let v = integrate(&f, lo, hi, cfg)?;
        if v > 0.0 {
            out.positive += v;
        } else {
            out.negative -= v;
        }
        out.total += v.abs();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn builds_segments_around_roots() {
        let p = SignPartition::build(|x| x * x - 1.0, &[-2.0, 0.5, 2.0], 1000).unwrap();
        assert_eq!(p.breakpoints().len(), 5);
        assert_eq!(
            p.signs(),
            &[Sign::Positive, Sign::Negative, Sign::Negative, Sign::Positive]
        );
        assert_abs_diff_eq!(p.breakpoints()[1], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.breakpoints()[3], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_malformed_partitions() {
        assert!(SignPartition::new(alloc::vec![0.0, 1.0], alloc::vec![]).is_err());
        assert!(SignPartition::new(alloc::vec![1.0, 0.0], alloc::vec![Sign::Zero]).is_err());
        assert!(SignPartition::build(|x| x, &[1.0], 100).is_err());
    }

    #[test]
    fn variation_of_sine() {
        let cfg = QuadratureConfig::default();
        let p = SignPartition::build(libm::sin, &[0.0, 2.0 * core::f64::consts::PI], 1000).unwrap();
        let v = signed_variation(libm::sin, &p, &cfg).unwrap();
        assert_abs_diff_eq!(v.positive, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(v.negative, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(v.total, 4.0, epsilon = 1e-10);
    }

    #[test]
    fn nonnegative_integrand_has_equal_parts() {
        let cfg = QuadratureConfig::default();
        let p = SignPartition::build(libm::exp, &[0.0, 1.0], 1000).unwrap();
        let v = signed_variation(libm::exp, &p, &cfg).unwrap();
        assert_eq!(v.positive, v.total);
        assert_eq!(v.negative, 0.0);
    }
}
