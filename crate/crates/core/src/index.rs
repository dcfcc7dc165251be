//! Exact index of increase of a piecewise-smooth function on a window.
//!
//! For a left-continuous `h` with jumps `Δh_k` at interior breakpoints,
//!
//! ```text
//!          Σ (Δh_k)₊ + ∫ (h')₊
//! I(h) = ----------------------
//!          Σ |Δh_k|  + ∫ |h'|
//! ```
//!
//! The limit of the empirical index under inputs `X ~ F` is the same ratio
//! written over `u ∈ (0, 1)` with `H = h' ∘ F⁻¹ / f ∘ F⁻¹` in place of `h'`.
//! A change of variables shows the two agree, so the value does not depend on
//! `F` once the window is fixed. [`theoretical_index`] works in `x` and is the
//! primary route; [`theoretical_index_via_h`] works in `u` and serves as an
//! independent cross-check.

use alloc::vec::Vec;

use crate::distributions::Window;
use crate::error::{Error, Result};
use crate::numerics::{signed_variation, QuadratureConfig, SignPartition, DEFAULT_GRID};
use crate::transfer::{Breakpoint, HFunction, PiecewiseSmooth};

/// Windows starting at the left end of the domain are integrated from this
/// far inside it.
pub const DOMAIN_EDGE_OFFSET: f64 = 1e-12;

/// Denominators below this make the index undefined.
pub const DEGENERATE_TOTAL: f64 = 1e-14;

/// Numerator and denominator pieces of the index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexBreakdown {
    /// `Σ (Δh_k)₊`
    pub jump_pos: f64,
    /// `Σ |Δh_k|`
    pub jump_abs: f64,
    /// `∫ (h')₊`
    pub int_pos: f64,
    /// `∫ |h'|`
    pub int_abs: f64,
    pub value: f64,
}

impl IndexBreakdown {
    fn assemble(jumps: &[Breakpoint], int_pos: f64, int_abs: f64) -> Result<Self> {
        let jump_pos: f64 = jumps.iter().map(|b| b.jump.max(0.0)).sum();
        let jump_abs: f64 = jumps.iter().map(|b| b.jump.abs()).sum();
        let total = jump_abs + int_abs;
        if !(total >= DEGENERATE_TOTAL) {
            return Err(Error::DegenerateFunction { total_variation: total });
        }
        let value = ((jump_pos + int_pos) / total).clamp(0.0, 1.0);
        Ok(Self {
            jump_pos,
            jump_abs,
            int_pos,
            int_abs,
            value,
        })
    }

    /// Positive plus negative variation.
    pub fn total_variation(&self) -> f64 {
        self.jump_abs + self.int_abs
    }
}

/// Index of increase of `f` on `window`, integrating `f'` in the input domain.
pub fn theoretical_index<F: PiecewiseSmooth + ?Sized>(
    f: &F,
    window: &Window,
    cfg: &QuadratureConfig,
) -> Result<IndexBreakdown> {
    theoretical_index_with_grid(f, window, cfg, DEFAULT_GRID)
}

/// [`theoretical_index`] with an explicit sign-change scan resolution.
pub fn theoretical_index_with_grid<F: PiecewiseSmooth + ?Sized>(
    f: &F,
    window: &Window,
    cfg: &QuadratureConfig,
    grid_n: usize,
) -> Result<IndexBreakdown> {
    let start = f.domain_start();
    if window.a() < start {
        return Err(Error::InvalidParameter("window extends below the function's domain"));
    }
    let lo = if window.a() == start {
        start + DOMAIN_EDGE_OFFSET
    } else {
        window.a()
    };
    if !(lo < window.b()) {
        return Err(Error::InvalidParameter("window is too narrow to integrate over"));
    }

    // A breakpoint on the window edge is not a jump of h on (a, b].
    let interior: Vec<Breakpoint> = f
        .breakpoints()
        .into_iter()
        .filter(|b| b.at > lo && b.at < window.b())
        .collect();

    let mut edges = Vec::with_capacity(interior.len() + 2);
    edges.push(lo);
    edges.extend(interior.iter().map(|b| b.at));
    edges.push(window.b());

    let slope = |x: f64| f.derivative(x).unwrap_or(f64::NAN);
    let partition = SignPartition::build(slope, &edges, grid_n)?;
    let var = signed_variation(slope, &partition, cfg)?;
    IndexBreakdown::assemble(&interior, var.positive, var.total)
}

/// Index of increase computed in the quantile domain by integrating `H₊` and
/// `|H|` over `(0, 1)`, split at the images `τ_k` of the interior breakpoints.
///
/// Agrees with [`theoretical_index`] up to quadrature error, whatever the
/// input distribution.
pub fn theoretical_index_via_h<F: PiecewiseSmooth>(
    hf: &HFunction<F>,
    cfg: &QuadratureConfig,
) -> Result<IndexBreakdown> {
    theoretical_index_via_h_with_grid(hf, cfg, DEFAULT_GRID)
}

pub fn theoretical_index_via_h_with_grid<F: PiecewiseSmooth>(
    hf: &HFunction<F>,
    cfg: &QuadratureConfig,
    grid_n: usize,
) -> Result<IndexBreakdown> {
    let interior = hf.interior_breakpoints();
    let mut edges = Vec::with_capacity(interior.len() + 2);
    edges.push(0.0);
    for (tau, _) in &interior {
        if *tau > *edges.last().unwrap() && *tau < 1.0 {
            edges.push(*tau);
        }
    }
    edges.push(1.0);

    let h = |u: f64| hf.eval(u).unwrap_or(f64::NAN);
    let partition = SignPartition::build(h, &edges, grid_n)?;
    let var = signed_variation(h, &partition, cfg)?;
    let jumps: Vec<Breakpoint> = interior.into_iter().map(|(_, b)| b).collect();
    IndexBreakdown::assemble(&jumps, var.positive, var.total)
}

/// `(u, H(u))` on the grid `u_i = i / grid_n`, `i = 1..=grid_n`.
///
/// A node landing on a discontinuity of `H` is replaced by the midpoint of the
/// preceding grid cell, so the row reports the left-hand behaviour.
pub fn emit_h_profile<F: PiecewiseSmooth>(hf: &HFunction<F>, grid_n: usize) -> Result<Vec<(f64, f64)>> {
    h_profile_rows(hf, grid_n)?.collect()
}

/// Lazy form of [`emit_h_profile`], one row at a time.
pub fn h_profile_rows<F: PiecewiseSmooth>(
    hf: &HFunction<F>,
    grid_n: usize,
) -> Result<impl Iterator<Item = Result<(f64, f64)>> + '_> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter("H profile needs at least two grid points"));
    }
    let step = 1.0 / grid_n as f64;
    Ok((1..=grid_n).map(move |i| {
        let u = if i == grid_n { 1.0 } else { i as f64 * step };
        match hf.eval(u) {
            Ok(v) => Ok((u, v)),
            Err(Error::SingularPoint { .. }) => {
                let shifted = u - 0.5 * step;
                hf.eval(shifted).map(|v| (shifted, v))
            }
            Err(e) => Err(e),
        }
    }))
}
