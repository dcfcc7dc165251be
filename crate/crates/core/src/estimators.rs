//! Sample-based index of increase and the `B_n` degeneracy diagnostic.
//!
//! Given pairs `(X_i, Y_i)`, sort by `X` and look at the concomitants
//! `Y_[1], …, Y_[n]`. The empirical index is
//! `Σ (Y_[i] − Y_[i−1])₊ / Σ |Y_[i] − Y_[i−1]|` and
//! `B_n = n^(−1/2) Σ |Y_[i] − Y_[i−1]|`. When `B_n` diverges, as it does under
//! additive noise, the index is pulled to `1/2` whatever the underlying
//! function looks like.

use alloc::vec::Vec;

use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::rng::{self, StreamRng};

/// Input/output pairs, at least two, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePairs {
    pairs: Vec<(f64, f64)>,
}

impl SamplePairs {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::InvalidParameter("at least two sample pairs are required"));
        }
        if pairs.iter().any(|(x, y)| !(x.is_finite() && y.is_finite())) {
            return Err(Error::InvalidParameter("sample pairs must be finite"));
        }
        Ok(Self { pairs })
    }

    pub fn from_columns(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidParameter("input and output columns differ in length"));
        }
        Self::new(xs.iter().copied().zip(ys.iter().copied()).collect())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// Outputs ordered by their inputs. The sort is stable, so pairs sharing an
    /// input keep their original relative order.
    pub fn concomitants(&self) -> Vec<f64> {
        let mut sorted = self.pairs.clone();
        sorted.sort_by(|p, q| p.0.total_cmp(&q.0));
        sorted.into_iter().map(|(_, y)| y).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    pub index: f64,
    /// `Σ (ΔY)₊`
    pub numerator: f64,
    /// `Σ |ΔY|`
    pub denominator: f64,
    pub bn: f64,
    pub n: usize,
    /// Number of sorted inputs equal to their predecessor.
    pub duplicate_x: usize,
}

/// Index, its two sums and `B_n` for outputs already ordered by input.
pub fn estimate_ordered(ys: &[f64]) -> Result<EstimateResult> {
    if ys.len() < 2 {
        return Err(Error::InvalidParameter("at least two outputs are required"));
    }
    let (mut numerator, mut denominator) = (0.0, 0.0);
    for w in ys.windows(2) {
        let d = w[1] - w[0];
        if d > 0.0 {
            numerator += d;
        }
        denominator += d.abs();
    }
    if !denominator.is_finite() {
        return Err(Error::InvalidParameter("outputs must be finite"));
    }
    if denominator == 0.0 {
        return Err(Error::DegenerateSample);
    }
    let n = ys.len();
    Ok(EstimateResult {
        index: (numerator / denominator).clamp(0.0, 1.0),
        numerator,
        denominator,
        bn: denominator / libm::sqrt(n as f64),
        n,
        duplicate_x: 0,
    })
}

/// `Σ (y_i − y_{i−1})₊ / Σ |y_i − y_{i−1}|`.
pub fn index_from_ordered_outputs(ys: &[f64]) -> Result<f64> {
    estimate_ordered(ys).map(|r| r.index)
}

/// Index of increase of the concomitant sequence of `s`.
pub fn empirical_index(s: &SamplePairs) -> Result<EstimateResult> {
    let mut sorted = s.pairs.clone();
    sorted.sort_by(|p, q| p.0.total_cmp(&q.0));
    let duplicate_x = sorted.windows(2).filter(|w| w[0].0 == w[1].0).count();
    let ys: Vec<f64> = sorted.into_iter().map(|(_, y)| y).collect();
    let mut r = estimate_ordered(&ys)?;
    r.duplicate_x = duplicate_x;
    Ok(r)
}

/// Outputs of `g` on the equidistant grid `t_i = (i − 1)/(n − 1)`.
pub fn grid_outputs<G: Fn(f64) -> f64>(g: G, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![g(0.0)],
        _ => (0..n).map(|i| g(i as f64 / (n - 1) as f64)).collect(),
    }
}

/// `ys` plus independent `N(0, sigma²)` noise from the noise stream of `seed`.
pub fn noisy_outputs(ys: &[f64], sigma: f64, seed: u64) -> Result<Vec<f64>> {
    let mut out = ys.to_vec();
    let mut rng = rng::stream(seed, rng::NOISE_STREAM);
    add_noise_with(&mut rng, &mut out, sigma)?;
    Ok(out)
}

/// Adds `N(0, sigma²)` noise in place; `sigma = 0` leaves `ys` untouched.
pub fn add_noise_with(rng: &mut StreamRng, ys: &mut [f64], sigma: f64) -> Result<()> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::InvalidParameter(
            "noise standard deviation must be finite and >= 0",
        ));
    }
    if sigma == 0.0 {
        return Ok(());
    }
    let normal = Normal::new(0.0, sigma).map_err(|_| Error::InvalidParameter("invalid noise distribution"))?;
    for y in ys.iter_mut() {
        *y += normal.sample(rng);
    }
    Ok(())
}
