//! Transfer functions with declared discontinuities.
//!
//! [`PiecewiseSmooth`] is what the index computations consume: a value map, a
//! derivative map valid away from breakpoints, and the breakpoints themselves
//! with their jump sizes. Breakpoints are always declared by the
//! implementation; nothing here tries to detect jumps numerically.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::distributions::WindowedDistribution;
use crate::error::{Error, Result};

/// A point where the derivative is not evaluated, with the size of the jump
/// `h(x+) − h(x)` there (zero for a continuous kink or a plain segment seam).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub at: f64,
    pub jump: f64,
}

/// A left-continuous function that is differentiable between its breakpoints.
pub trait PiecewiseSmooth {
    fn value(&self, x: f64) -> Result<f64>;

    /// Errors with [`Error::SingularPoint`] at a breakpoint carrying a jump.
    fn derivative(&self, x: f64) -> Result<f64>;

    /// Breakpoints in strictly increasing order.
    fn breakpoints(&self) -> Vec<Breakpoint>;

    /// Left end of the domain of definition.
    fn domain_start(&self) -> f64 {
        f64::NEG_INFINITY
    }
}

impl<F: PiecewiseSmooth + ?Sized> PiecewiseSmooth for &F {
    fn value(&self, x: f64) -> Result<f64> {
        (**self).value(x)
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        (**self).derivative(x)
    }

    fn breakpoints(&self) -> Vec<Breakpoint> {
        (**self).breakpoints()
    }

    fn domain_start(&self) -> f64 {
        (**self).domain_start()
    }
}

/// Regime-switching transfer function
///
/// `h(x) = (γ + δ/x²) e^(γx − δ/x) (1 + ρ·1{x > x0})` for `x ≥ 0`.
///
/// Below `x0` this is the flexible-Weibull hazard rate, which has a bathtub
/// shape; above it the whole curve is scaled by `1 + ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferFunction {
    gamma: f64,
    delta: f64,
    x0: f64,
    rho: f64,
}

impl TransferFunction {
    pub fn new(gamma: f64, delta: f64, x0: f64, rho: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParameter("gamma must be positive and finite"));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter("delta must be positive and finite"));
        }
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(Error::InvalidParameter("switch point x0 must be positive and finite"));
        }
        if !(rho.is_finite() && rho > -1.0) {
            return Err(Error::InvalidParameter("regime factor rho must exceed -1"));
        }
        Ok(Self { gamma, delta, x0, rho })
    }

    /// `γ = 0.1, δ = 1, x0 = 10` with the given regime factor.
    pub fn preset(rho: f64) -> Result<Self> {
        Self::new(0.1, 1.0, 10.0, rho)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    fn regime(&self, x: f64) -> f64 {
        if x > self.x0 {
            1.0 + self.rho
        } else {
            1.0
        }
    }

    /// `(γ + δ/x²) e^(γx − δ/x)` without the regime factor, for `x > 0`.
    fn base_value(&self, x: f64) -> f64 {
        let (g, d) = (self.gamma, self.delta);
        let direct = (g + d / (x * x)) * libm::exp(g * x - d / x);
        if direct.is_finite() {
            return direct;
        }
        // δ/x² overflows long after e^(−δ/x) has underflowed; combine in log space.
        libm::exp(libm::log(g * x * x + d) - 2.0 * libm::log(x) + g * x - d / x)
    }

    /// `((γx² + δ)² − 2δx)/x⁴ · e^(γx − δ/x)` without the regime factor.
    fn base_derivative(&self, x: f64) -> f64 {
        let (g, d) = (self.gamma, self.delta);
        let q = g * x * x + d;
        let num = q * q - 2.0 * d * x;
        let x2 = x * x;
        let direct = num / (x2 * x2) * libm::exp(g * x - d / x);
        if direct.is_finite() {
            return direct;
        }
        if num == 0.0 {
            return 0.0;
        }
        let mag = libm::exp(libm::log(num.abs()) - 4.0 * libm::log(x) + g * x - d / x);
        libm::copysign(mag, num)
    }

    /// Evaluates `h(x)`; `h(0) = 0` is the limit from the right.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain {
                what: "transfer input x",
                value: x,
            });
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        Ok(self.base_value(x) * self.regime(x))
    }

    /// Evaluates `h'(x)` for `x > 0`, `x ≠ x0` when `ρ ≠ 0`.
    pub fn deriv(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain {
                what: "transfer input x",
                value: x,
            });
        }
        if x == self.x0 && self.rho != 0.0 {
            return Err(Error::SingularPoint { x });
        }
        Ok(self.base_derivative(x) * self.regime(x))
    }

    /// `h(x0+) − h(x0) = ρ(γ + δ/x0²) e^(γx0 − δ/x0)`.
    pub fn jump_size(&self) -> f64 {
        if self.rho == 0.0 {
            return 0.0;
        }
        self.rho * self.base_value(self.x0)
    }
}

impl PiecewiseSmooth for TransferFunction {
    fn value(&self, x: f64) -> Result<f64> {
        self.eval(x)
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        self.deriv(x)
    }

    fn breakpoints(&self) -> Vec<Breakpoint> {
        if self.rho == 0.0 {
            Vec::new()
        } else {
            vec![Breakpoint {
                at: self.x0,
                jump: self.jump_size(),
            }]
        }
    }

    fn domain_start(&self) -> f64 {
        0.0
    }
}

pub fn eval(tf: &TransferFunction, x: f64) -> Result<f64> {
    tf.eval(x)
}

pub fn deriv(tf: &TransferFunction, x: f64) -> Result<f64> {
    tf.deriv(x)
}

pub fn jump_size(tf: &TransferFunction) -> f64 {
    tf.jump_size()
}

type RealMap = Box<dyn Fn(f64) -> f64 + Send + Sync>;

struct Segment {
    end: f64,
    value: RealMap,
    derivative: RealMap,
}

/// A user-supplied function assembled from smooth pieces on consecutive
/// intervals `[start, e1], (e1, e2], …`.
///
/// Every seam is a declared breakpoint. Its jump is the difference of the two
/// neighbouring value maps at the seam, so the function is left-continuous.
pub struct PiecewiseFunction {
    start: f64,
    segments: Vec<Segment>,
    breakpoints: Vec<Breakpoint>,
}

impl core::fmt::Debug for PiecewiseFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PiecewiseFunction")
            .field("start", &self.start)
            .field("ends", &self.segments.iter().map(|s| s.end).collect::<Vec<_>>())
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

pub struct PiecewiseBuilder {
    start: f64,
    segments: Vec<Segment>,
}

impl PiecewiseBuilder {
    /// Appends a piece ending at `end` with its value and derivative maps.
    pub fn segment<V, D>(mut self, end: f64, value: V, derivative: D) -> Self
    where
        V: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.segments.push(Segment {
            end,
            value: Box::new(value),
            derivative: Box::new(derivative),
        });
        self
    }

    pub fn build(self) -> Result<PiecewiseFunction> {
        if self.segments.is_empty() {
            return Err(Error::InvalidParameter("piecewise function needs at least one segment"));
        }
        if !self.start.is_finite() {
            return Err(Error::InvalidParameter("piecewise function start must be finite"));
        }
        let mut prev = self.start;
        for s in &self.segments {
            if !(s.end.is_finite() && s.end > prev) {
                return Err(Error::InvalidParameter(
                    "segment ends must be finite and strictly increasing",
                ));
            }
            prev = s.end;
        }
        let breakpoints = self
            .segments
            .windows(2)
            .map(|pair| {
                let at = pair[0].end;
                Breakpoint {
                    at,
                    jump: (pair[1].value)(at) - (pair[0].value)(at),
                }
            })
            .collect();
        Ok(PiecewiseFunction {
            start: self.start,
            segments: self.segments,
            breakpoints,
        })
    }
}

impl PiecewiseFunction {
    pub fn starting_at(start: f64) -> PiecewiseBuilder {
        PiecewiseBuilder {
            start,
            segments: Vec::new(),
        }
    }

    pub fn end(&self) -> f64 {
        self.segments.last().map_or(self.start, |s| s.end)
    }

    fn segment_for(&self, x: f64) -> Result<&Segment> {
        if !(x >= self.start && x <= self.end()) {
            return Err(Error::Domain {
                what: "piecewise function input x",
                value: x,
            });
        }
        // `x <= end` picks the left piece at a seam (left continuity).
        let i = self.segments.partition_point(|s| s.end < x);
        Ok(&self.segments[i])
    }
}

impl PiecewiseSmooth for PiecewiseFunction {
    fn value(&self, x: f64) -> Result<f64> {
        Ok((self.segment_for(x)?.value)(x))
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        if self.breakpoints.iter().any(|b| b.at == x && b.jump != 0.0) {
            return Err(Error::SingularPoint { x });
        }
        Ok((self.segment_for(x)?.derivative)(x))
    }

    fn breakpoints(&self) -> Vec<Breakpoint> {
        self.breakpoints.clone()
    }

    fn domain_start(&self) -> f64 {
        self.start
    }
}

/// `−h` for any piecewise-smooth `h`.
#[derive(Debug, Clone, Copy)]
pub struct Negated<F>(pub F);

impl<F: PiecewiseSmooth> PiecewiseSmooth for Negated<F> {
    fn value(&self, x: f64) -> Result<f64> {
        self.0.value(x).map(|v| -v)
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        self.0.derivative(x).map(|v| -v)
    }

    fn breakpoints(&self) -> Vec<Breakpoint> {
        self.0
            .breakpoints()
            .into_iter()
            .map(|b| Breakpoint {
                at: b.at,
                jump: -b.jump,
            })
            .collect()
    }

    fn domain_start(&self) -> f64 {
        self.0.domain_start()
    }
}

/// `H(u) = h'(F⁻¹(u)) / f(F⁻¹(u))`, the derivative of `h ∘ F⁻¹`.
#[derive(Debug, Clone)]
pub struct HFunction<F> {
    tf: F,
    dist: WindowedDistribution,
}

impl<F: PiecewiseSmooth> HFunction<F> {
    pub fn new(tf: F, dist: WindowedDistribution) -> Result<Self> {
        if dist.window().a() < tf.domain_start() {
            return Err(Error::InvalidParameter("window extends below the function's domain"));
        }
        Ok(Self { tf, dist })
    }

    pub fn function(&self) -> &F {
        &self.tf
    }

    pub fn distribution(&self) -> &WindowedDistribution {
        &self.dist
    }

    /// Breakpoints strictly inside the window, paired with their images
    /// `τ_k = F(x_k)` in the quantile domain.
    pub fn interior_breakpoints(&self) -> Vec<(f64, Breakpoint)> {
        let w = self.dist.window();
        self.tf
            .breakpoints()
            .into_iter()
            .filter(|b| w.contains_interior(b.at))
            .map(|b| (self.dist.cdf(b.at), b))
            .collect()
    }

    /// `H(u)` for `u ∈ (0, 1]`; `u = 1` is the left limit at `b`.
    pub fn eval(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u <= 1.0) {
            return Err(Error::Domain {
                what: "probability u",
                value: u,
            });
        }
        let x = self.dist.quantile(u)?;
        let slope = self.tf.derivative(x)?;
        Ok(slope / self.dist.density_quantile(u)?)
    }
}

pub fn h_function<F: PiecewiseSmooth>(hf: &HFunction<F>, u: f64) -> Result<f64> {
    hf.eval(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{LomaxParams, Window};
    use approx::assert_relative_eq;

    const H_AT_X0: f64 = 0.270_556_342_227_264_46;

    fn tf(rho: f64) -> TransferFunction {
        TransferFunction::preset(rho).unwrap()
    }

    fn hfn(alpha: f64, a: f64, b: f64, rho: f64) -> HFunction<TransferFunction> {
        let d = WindowedDistribution::new(LomaxParams::new(alpha, 1.0).unwrap(), Window::new(a, b).unwrap()).unwrap();
        HFunction::new(tf(rho), d).unwrap()
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(TransferFunction::new(0.0, 1.0, 10.0, 0.0).is_err());
        assert!(TransferFunction::new(0.1, -1.0, 10.0, 0.0).is_err());
        assert!(TransferFunction::new(0.1, 1.0, 0.0, 0.0).is_err());
        assert!(TransferFunction::new(0.1, 1.0, 10.0, -1.0).is_err());
    }

    #[test]
    fn eval_at_origin_switch_point_and_above() {
        assert_eq!(tf(0.5).eval(0.0).unwrap(), 0.0);
        for rho in [-0.5, 0.0, 0.5] {
            assert_relative_eq!(tf(rho).eval(10.0).unwrap(), H_AT_X0, max_relative = 1e-12);
        }
        assert_relative_eq!(tf(0.5).eval(10.0 + 1e-9).unwrap(), 1.5 * H_AT_X0, max_relative = 1e-8);
        assert!(tf(0.0).eval(-1.0).is_err());
    }

    #[test]
    fn eval_is_finite_near_zero() {
        for &x in &[1e-300, 1e-160, 1e-20, 1e-3] {
            let v = tf(0.0).eval(x).unwrap();
            assert!(v.is_finite() && v >= 0.0);
            let d = tf(0.0).deriv(x).unwrap();
            assert!(d.is_finite());
        }
    }

    #[test]
    fn deriv_values() {
        // 1641/160000 · e^1.95
        assert_relative_eq!(
            tf(0.0).deriv(20.0).unwrap(),
            0.072_087_976_998_418_94,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            tf(0.5).deriv(20.0).unwrap(),
            1.5 * 0.072_087_976_998_418_94,
            max_relative = 1e-12
        );
        assert!(matches!(tf(0.5).deriv(10.0), Err(Error::SingularPoint { .. })));
        assert!(tf(0.0).deriv(10.0).is_ok());
        assert!(matches!(tf(0.0).deriv(0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn jump_sizes() {
        assert_relative_eq!(tf(0.5).jump_size(), 0.135_278_171_113_632_2, max_relative = 1e-12);
        assert_relative_eq!(tf(-0.5).jump_size(), -0.135_278_171_113_632_2, max_relative = 1e-12);
        assert_eq!(tf(0.0).jump_size(), 0.0);
        assert!(tf(0.0).breakpoints().is_empty());
        assert_eq!(tf(0.5).breakpoints().len(), 1);
    }

    #[test]
    fn left_continuity_and_jump_identity() {
        let f = tf(0.5);
        let at = f.eval(10.0).unwrap();
        let mut step = 1e-3;
        while step > 1e-12 {
            let left = f.eval(10.0 - step).unwrap();
            assert!((left - at).abs() < 1e-9 + 0.1 * step, "step {step}");
            step /= 10.0;
        }
        let right = f.eval(10.0 + 1e-12).unwrap();
        assert!((right - at - f.jump_size()).abs() < 1e-9);
    }

    #[test]
    fn h_at_upper_edge_reference_values() {
        assert_relative_eq!(
            hfn(1.5, 0.0, 20.0, 0.5).eval(1.0).unwrap(),
            144.1699,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            hfn(5.0, 0.0, 20.0, 0.5).eval(1.0).unwrap(),
            18.548e5,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            hfn(1.5, 0.0, 20.0, -0.5).eval(1.0).unwrap(),
            48.0566,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            hfn(1.5, 0.0, 20.0, 0.0).eval(1.0).unwrap(),
            96.1133,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            hfn(5.0, 0.0, 20.0, 0.0).eval(1.0).unwrap(),
            12.365e5,
            max_relative = 1e-4
        );
    }

    #[test]
    fn h_scales_derivative_by_density() {
        let hf = hfn(1.5, 0.0, 20.0, 0.5);
        let d = *hf.distribution();
        for &x in &[0.3, 2.0, 9.0, 11.0, 19.5] {
            let u = d.cdf(x);
            let expected = tf(0.5).deriv(x).unwrap() / d.pdf(x);
            assert_relative_eq!(hf.eval(u).unwrap(), expected, max_relative = 1e-10);
        }
        assert!(hf.eval(0.0).is_err());
        assert!(hf.eval(1.1).is_err());

        // Close to b under a light tail the double u = F(x) no longer pins x
        // down, so compare at the point u represents.
        let hf = hfn(5.0, 0.0, 20.0, 0.5);
        let d = *hf.distribution();
        for &x in &[15.0, 19.9] {
            let xq = d.quantile(d.cdf(x)).unwrap();
            let expected = tf(0.5).deriv(xq).unwrap() / d.pdf(xq);
            assert_relative_eq!(hf.eval(d.cdf(x)).unwrap(), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn interior_breakpoints_respect_half_open_window() {
        let d = |a: f64, b: f64| {
            WindowedDistribution::new(LomaxParams::new(1.5, 1.0).unwrap(), Window::new(a, b).unwrap()).unwrap()
        };
        assert_eq!(
            HFunction::new(tf(0.5), d(8.0, 12.0))
                .unwrap()
                .interior_breakpoints()
                .len(),
            1
        );
        assert!(HFunction::new(tf(0.5), d(8.0, 10.0))
            .unwrap()
            .interior_breakpoints()
            .is_empty());
        assert!(HFunction::new(tf(0.5), d(10.0, 12.0))
            .unwrap()
            .interior_breakpoints()
            .is_empty());
    }

    #[test]
    fn piecewise_function_jumps_and_left_continuity() {
        let f = PiecewiseFunction::starting_at(0.0)
            .segment(1.0, |x| x, |_| 1.0)
            .segment(2.0, |x| x - 3.0, |_| 1.0)
            .segment(3.0, |x| x - 3.0, |_| 1.0)
            .build()
            .unwrap();
        let bps = f.breakpoints();
        assert_eq!(
            bps,
            vec![Breakpoint { at: 1.0, jump: -3.0 }, Breakpoint { at: 2.0, jump: 0.0 }]
        );
        assert_eq!(f.value(1.0).unwrap(), 1.0);
        assert_eq!(f.value(1.5).unwrap(), -1.5);
        assert!(matches!(f.derivative(1.0), Err(Error::SingularPoint { .. })));
        assert_eq!(f.derivative(2.0).unwrap(), 1.0);
        assert!(f.value(3.5).is_err());
        assert!(PiecewiseFunction::starting_at(0.0)
            .segment(0.0, |x| x, |_| 1.0)
            .build()
            .is_err());
    }

    #[test]
    fn negation_flips_values_and_jumps() {
        let n = Negated(tf(0.5));
        assert_relative_eq!(n.value(12.0).unwrap(), -tf(0.5).eval(12.0).unwrap());
        assert_relative_eq!(n.breakpoints()[0].jump, -tf(0.5).jump_size());
    }
}
