//! Lomax signal distribution and its restriction to a transfer window.
//!
//! Inputs are fed to a filter only when the signal `T ~ Lomax(α, β)` falls into
//! a window `(a, b]`, so the input law is `T` conditioned on `T ∈ (a, b]`. All
//! quantities here have closed forms; quantiles are never obtained by numerical
//! inversion.
//!
//! Internally the window is parametrised by survival probabilities
//! `S(t) = 1 − F(t)` rather than by the cdf, which keeps the quantile accurate
//! deep in the tail where `F(b)` rounds to `1`.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{self, StreamRng};

/// Windows whose probability mass falls below this are rejected.
pub const MIN_WINDOW_MASS: f64 = 1e-300;

/// Shape `alpha` and scale `beta` of a Lomax distribution on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LomaxParams {
    alpha: f64,
    beta: f64,
}

impl LomaxParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter("Lomax shape alpha must be positive and finite"));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter("Lomax scale beta must be positive and finite"));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `1 − (β/(t+β))^α`.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        check_support(t)?;
        Ok(-libm::expm1(-self.alpha * libm::log1p(t / self.beta)))
    }

    /// `(β/(t+β))^α`, the upper tail probability.
    pub fn survival(&self, t: f64) -> Result<f64> {
        check_support(t)?;
        Ok(self.survival_unchecked(t))
    }

    /// `αβ^α/(t+β)^(α+1)`.
    pub fn pdf(&self, t: f64) -> Result<f64> {
        check_support(t)?;
        Ok(self.pdf_unchecked(t))
    }

    /// `β((1−u)^(−1/α) − 1)` for `u ∈ [0, 1)`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain {
                what: "probability u",
                value: u,
            });
        }
        Ok(self.beta * libm::expm1(-libm::log1p(-u) / self.alpha))
    }

    /// Density along the quantile function, `(α/β)(1−u)^(1+1/α)`.
    pub fn density_quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain {
                what: "probability u",
                value: u,
            });
        }
        Ok(self.density_at_survival(1.0 - u))
    }

    fn survival_unchecked(&self, t: f64) -> f64 {
        libm::exp(-self.alpha * libm::log1p(t / self.beta))
    }

    fn pdf_unchecked(&self, t: f64) -> f64 {
        self.alpha / self.beta * libm::exp(-(self.alpha + 1.0) * libm::log1p(t / self.beta))
    }

    /// Quantile expressed through the survival probability `s = 1 − u`.
    fn quantile_at_survival(&self, s: f64) -> f64 {
        self.beta * libm::expm1(-libm::log(s) / self.alpha)
    }

    fn density_at_survival(&self, s: f64) -> f64 {
        self.alpha / self.beta * libm::pow(s, 1.0 + 1.0 / self.alpha)
    }
}

fn check_support(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "Lomax argument t",
            value: t,
        })
    }
}

pub fn lomax_cdf(p: &LomaxParams, t: f64) -> Result<f64> {
    p.cdf(t)
}

pub fn lomax_pdf(p: &LomaxParams, t: f64) -> Result<f64> {
    p.pdf(t)
}

pub fn lomax_quantile(p: &LomaxParams, u: f64) -> Result<f64> {
    p.quantile(u)
}

pub fn lomax_density_quantile(p: &LomaxParams, u: f64) -> Result<f64> {
    p.density_quantile(u)
}

/// A transfer window `(a, b]`, open on the left and closed on the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    a: f64,
    b: f64,
}

impl Window {
    /// Windows must sit inside the support `[0, ∞)` of the signal.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter("window edges must be finite"));
        }
        if a < 0.0 {
            return Err(Error::InvalidParameter("window must lie in [0, inf)"));
        }
        if a >= b {
            return Err(Error::InvalidParameter("window requires a < b"));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Whether `x ∈ (a, b]`.
    pub fn contains(&self, x: f64) -> bool {
        x > self.a && x <= self.b
    }

    /// Whether `x ∈ (a, b)`.
    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.a && x < self.b
    }
}

/// Lomax signal conditioned on falling into a [`Window`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowedDistribution {
    base: LomaxParams,
    window: Window,
    fa: f64,
    fb: f64,
    sa: f64,
    sb: f64,
    mass: f64,
}

impl WindowedDistribution {
    pub fn new(base: LomaxParams, window: Window) -> Result<Self> {
        let sa = base.survival_unchecked(window.a);
        let sb = base.survival_unchecked(window.b);
        let mass = sa - sb;
        if !(mass >= MIN_WINDOW_MASS) {
            return Err(Error::EmptyWindow {
                a: window.a,
                b: window.b,
            });
        }
        Ok(Self {
            base,
            window,
            fa: base.cdf(window.a)?,
            fb: base.cdf(window.b)?,
            sa,
            sb,
            mass,
        })
    }

    pub fn base(&self) -> &LomaxParams {
        &self.base
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// Cached `F_T(a)`.
    pub fn fa(&self) -> f64 {
        self.fa
    }

    /// Cached `F_T(b)`.
    pub fn fb(&self) -> f64 {
        self.fb
    }

    /// `F_T(b) − F_T(a)`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if !(x > self.window.a) {
            return 0.0;
        }
        if x > self.window.b {
            return 1.0;
        }
        ((self.sa - self.base.survival_unchecked(x)) / self.mass).clamp(0.0, 1.0)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if self.window.contains(x) {
            self.base.pdf_unchecked(x) / self.mass
        } else {
            0.0
        }
    }

    /// `F_T⁻¹(F_T(a) + t(F_T(b) − F_T(a)))` for `t ∈ [0, 1]`.
    pub fn quantile(&self, t: f64) -> Result<f64> {
        check_unit(t)?;
        if t == 0.0 {
            return Ok(self.window.a);
        }
        if t == 1.0 {
            return Ok(self.window.b);
        }
        let x = self.base.quantile_at_survival(self.survival_at(t));
        Ok(x.clamp(self.window.a, self.window.b))
    }

    /// `f ∘ F⁻¹(t)`; at `t = 1` this is the left limit `f(b)`.
    pub fn density_quantile(&self, t: f64) -> Result<f64> {
        check_unit(t)?;
        Ok(self.base.density_at_survival(self.survival_at(t)) / self.mass)
    }

    /// `1 − F_T(a) − t(F_T(b) − F_T(a))`, anchored at whichever edge is closer.
    fn survival_at(&self, t: f64) -> f64 {
        if t <= 0.5 {
            self.sa - t * self.mass
        } else {
            self.sb + (1.0 - t) * self.mass
        }
    }

    /// `n` draws from the conditioned law, using the input stream of `seed`.
    pub fn sample(&self, seed: u64, n: usize) -> Vec<f64> {
        let mut rng = rng::stream(seed, rng::INPUT_STREAM);
        self.sample_with(&mut rng, n)
    }

    /// Inverse-transform sampling from a caller-owned generator.
    ///
    /// Uniform variates live on `[0, 1)`. A variate whose image is not strictly
    /// above `a` (`u = 0`, or rounding at the left edge) is redrawn, so every
    /// value lies in `(a, b]`.
    pub fn sample_with(&self, rng: &mut StreamRng, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let u: f64 = rng.random();
            if u == 0.0 {
                continue;
            }
            let x = self.base.quantile_at_survival(self.survival_at(u)).min(self.window.b);
            if x > self.window.a {
                out.push(x);
            }
        }
        out
    }
}

fn check_unit(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "probability t",
            value: t,
        })
    }
}

pub fn windowed_cdf(w: &WindowedDistribution, x: f64) -> f64 {
    w.cdf(x)
}

pub fn windowed_pdf(w: &WindowedDistribution, x: f64) -> f64 {
    w.pdf(x)
}

pub fn windowed_quantile(w: &WindowedDistribution, t: f64) -> Result<f64> {
    w.quantile(t)
}

pub fn windowed_density_quantile(w: &WindowedDistribution, t: f64) -> Result<f64> {
    w.density_quantile(t)
}

pub fn sample(w: &WindowedDistribution, seed: u64, n: usize) -> Vec<f64> {
    w.sample(seed, n)
}
