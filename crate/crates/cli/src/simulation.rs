//! Reproducible Monte Carlo trajectories of the empirical index.
//!
//! Each replication `r` owns the seed `split_seed(base_seed, r)`. From it, one
//! stream of inputs and an independent stream of noise are drawn up to the
//! largest sample size. The estimate at size `n` uses the first `n` pairs, so
//! the rows of a replication trace one growing sample. Replications run in
//! parallel; rows are sorted by `(n, replication)` before they are returned,
//! which makes the output independent of the thread count.

use std::io::Write;

use monotone_index::estimators::{add_noise_with, empirical_index, SamplePairs};
use monotone_index::rng::{self, split_seed};
use monotone_index::{Error, TransferFunction, WindowedDistribution};
use rayon::prelude::*;

use crate::error::CliError;
use crate::format::sig;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dist: WindowedDistribution,
    pub tf: TransferFunction,
    pub noise_sigma: f64,
    pub n_grid: Vec<usize>,
    pub replications: usize,
    pub base_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_grid.is_empty() {
            return Err(Error::InvalidParameter("n_grid must not be empty"));
        }
        if self.n_grid[0] < 2 || self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "n_grid must be strictly increasing with every n >= 2",
            ));
        }
        if self.replications == 0 {
            return Err(Error::InvalidParameter("replications must be at least 1"));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return Err(Error::InvalidParameter("noise sigma must be finite and >= 0"));
        }
        Ok(())
    }
}

/// Twenty log-spaced sample sizes from 10² to 10⁵.
pub fn default_n_grid() -> Vec<usize> {
    log_grid(100, 100_000, 20)
}

/// `points` sizes spaced evenly in `log n` between `lo` and `hi`, rounded and
/// deduplicated.
pub fn log_grid(lo: usize, hi: usize, points: usize) -> Vec<usize> {
    if points < 2 || lo >= hi {
        return vec![lo];
    }
    let (l, h) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = (0..points)
        .map(|i| (l + (h - l) * i as f64 / (points - 1) as f64).exp().round() as usize)
        .collect();
    out.dedup();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Degenerate,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub n: usize,
    pub replication: usize,
    pub seed: u64,
    /// NaN when the row is degenerate.
    pub index: f64,
    pub bn: f64,
    pub status: RowStatus,
}

fn run_replication(cfg: &ExperimentConfig, replication: usize) -> Result<Vec<TrajectoryPoint>, Error> {
    let seed = split_seed(cfg.base_seed, replication as u64);
    let n_max = *cfg.n_grid.last().expect("validated n_grid");

    let xs = cfg.dist.sample_with(&mut rng::stream(seed, rng::INPUT_STREAM), n_max);
    let mut ys = xs.iter().map(|&x| cfg.tf.eval(x)).collect::<Result<Vec<_>, _>>()?;
    add_noise_with(&mut rng::stream(seed, rng::NOISE_STREAM), &mut ys, cfg.noise_sigma)?;

    cfg.n_grid
        .iter()
        .map(|&n| {
            let pairs = SamplePairs::from_columns(&xs[..n], &ys[..n])?;
            let (index, bn, status) = match empirical_index(&pairs) {
                Ok(r) => (r.index, r.bn, RowStatus::Ok),
                Err(Error::DegenerateSample) => (f64::NAN, 0.0, RowStatus::Degenerate),
                Err(e) => return Err(e),
            };
            Ok(TrajectoryPoint {
                n,
                replication,
                seed,
                index,
                bn,
                status,
            })
        })
        .collect()
}

/// Runs every replication on a pool of `threads` workers (0 picks rayon's default).
pub fn run_experiment(cfg: &ExperimentConfig, threads: usize) -> Result<Vec<TrajectoryPoint>, CliError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let per_rep: Vec<Vec<TrajectoryPoint>> = pool.install(|| {
        (0..cfg.replications)
            .into_par_iter()
            .map(|r| run_replication(cfg, r))
            .collect::<Result<_, _>>()
    })?;
    let mut rows: Vec<TrajectoryPoint> = per_rep.into_iter().flatten().collect();
    rows.sort_by_key(|p| (p.n, p.replication));
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub median: f64,
    pub q10: f64,
    pub q90: f64,
    pub mean_bn: f64,
    /// Non-degenerate rows that entered the summary.
    pub count: usize,
}

/// Quantile of sorted data by linear interpolation between order statistics
/// at position `p (m − 1)`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let pos = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Per-`n` median, 10% and 90% quantiles of the index and mean `B_n` across
/// replications. Degenerate rows are left out; a size with no usable rows
/// reports NaN.
pub fn summarize(points: &[TrajectoryPoint]) -> Vec<SummaryRow> {
    let mut ns: Vec<usize> = points.iter().map(|p| p.n).collect();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let ok: Vec<&TrajectoryPoint> = points
                .iter()
                .filter(|p| p.n == n && p.status == RowStatus::Ok)
                .collect();
            if ok.is_empty() {
                return SummaryRow {
                    n,
                    median: f64::NAN,
                    q10: f64::NAN,
                    q90: f64::NAN,
                    mean_bn: f64::NAN,
                    count: 0,
                };
            }
            let mut idx: Vec<f64> = ok.iter().map(|p| p.index).collect();
            idx.sort_by(f64::total_cmp);
            SummaryRow {
                n,
                median: quantile_sorted(&idx, 0.5),
                q10: quantile_sorted(&idx, 0.1),
                q90: quantile_sorted(&idx, 0.9),
                mean_bn: ok.iter().map(|p| p.bn).sum::<f64>() / ok.len() as f64,
                count: ok.len(),
            }
        })
        .collect()
}

pub const TRAJECTORY_HEADER: &str = "n,replication,seed,index,bn,status";
pub const SUMMARY_HEADER: &str = "n,median,q10,q90,mean_bn";

pub fn write_trajectory<W: Write + ?Sized>(
    out: &mut W,
    points: &[TrajectoryPoint],
    digits: usize,
) -> std::io::Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            p.n,
            p.replication,
            p.seed,
            sig(p.index, digits),
            sig(p.bn, digits),
            p.status.as_str()
        )?;
    }
    Ok(())
}

pub fn write_summary<W: Write + ?Sized>(out: &mut W, rows: &[SummaryRow], digits: usize) -> std::io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            sig(r.median, digits),
            sig(r.q10, digits),
            sig(r.q90, digits),
            sig(r.mean_bn, digits)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use monotone_index::{LomaxParams, Window};

    fn config(reps: usize, n_grid: Vec<usize>, sigma: f64) -> ExperimentConfig {
        ExperimentConfig {
            dist: WindowedDistribution::new(LomaxParams::new(1.5, 1.0).unwrap(), Window::new(0.0, 2.0).unwrap())
                .unwrap(),
            tf: TransferFunction::preset(0.0).unwrap(),
            noise_sigma: sigma,
            n_grid,
            replications: reps,
            base_seed: 7,
        }
    }

    #[test]
    fn single_row_is_deterministic() {
        let cfg = config(1, vec![10], 0.0);
        let a = run_experiment(&cfg, 1).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a, run_experiment(&cfg, 1).unwrap());
        assert_eq!(a[0].seed, split_seed(7, 0));
    }

    #[test]
    fn output_is_independent_of_thread_count() {
        let cfg = config(9, vec![10, 50, 200], 0.1);
        let one = run_experiment(&cfg, 1).unwrap();
        let many = run_experiment(&cfg, 4).unwrap();
        assert_eq!(one.len(), 27);
        assert_eq!(one, many);
        assert!(one
            .windows(2)
            .all(|w| (w[0].n, w[0].replication) < (w[1].n, w[1].replication)));
    }

    #[test]
    fn adding_replications_keeps_existing_rows() {
        let few = run_experiment(&config(3, vec![20, 40], 0.1), 2).unwrap();
        let more = run_experiment(&config(6, vec![20, 40], 0.1), 2).unwrap();
        for p in &few {
            assert!(more.contains(p));
        }
    }

    #[test]
    fn rows_depend_only_on_their_own_n() {
        let short = run_experiment(&config(2, vec![30], 0.1), 1).unwrap();
        let long = run_experiment(&config(2, vec![30, 500], 0.1), 1).unwrap();
        assert_eq!(short[..], long[..2]);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(config(0, vec![10], 0.0).validate().is_err());
        assert!(config(1, vec![1], 0.0).validate().is_err());
        assert!(config(1, vec![10, 10], 0.0).validate().is_err());
        assert!(config(1, vec![], 0.0).validate().is_err());
        assert!(config(1, vec![10], -1.0).validate().is_err());
    }

    #[test]
    fn constant_outputs_are_flagged_not_fatal() {
        // Inputs far below the bathtub's rise give h(x) = 0 in floating point.
        let mut cfg = config(2, vec![5, 10], 0.0);
        cfg.dist =
            WindowedDistribution::new(LomaxParams::new(1.5, 1.0).unwrap(), Window::new(0.0, 1e-4).unwrap()).unwrap();
        let rows = run_experiment(&cfg, 1).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows
            .iter()
            .all(|r| r.status == RowStatus::Degenerate && r.index.is_nan()));
        let s = summarize(&rows);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].count, 0);
    }

    fn point(n: usize, replication: usize, index: f64) -> TrajectoryPoint {
        TrajectoryPoint {
            n,
            replication,
            seed: 0,
            index,
            bn: 1.0,
            status: RowStatus::Ok,
        }
    }

    #[test]
    fn summary_of_single_and_constant_replications() {
        let s = summarize(&[point(10, 0, 0.3)]);
        assert_eq!((s[0].median, s[0].q10, s[0].q90), (0.3, 0.3, 0.3));
        let s = summarize(&(0..5).map(|r| point(10, r, 0.7)).collect::<Vec<_>>());
        assert_eq!(s[0].q90 - s[0].q10, 0.0);
    }

    #[test]
    fn summary_matches_sort_and_interpolate_oracle() {
        let values: Vec<f64> = (0..20)
            .map(|i| ((i * 37 + 11) % 20) as f64 / 19.0 + 0.01 * i as f64)
            .collect();
        let rows: Vec<TrajectoryPoint> = values.iter().enumerate().map(|(r, &v)| point(100, r, v)).collect();
        let s = summarize(&rows)[0];

        // Brute force: for each p, the value v with (# strictly below) ≤ p(m−1)
        // ≤ (# at or below) − 1, interpolated towards the next larger value.
        let oracle = |p: f64| {
            let m = values.len();
            let pos = p * (m - 1) as f64;
            let k = pos.floor() as usize;
            let kth = |k: usize| {
                *values
                    .iter()
                    .find(|&&v| {
                        values.iter().filter(|&&w| w < v).count() <= k && values.iter().filter(|&&w| w <= v).count() > k
                    })
                    .unwrap()
            };
            let lo = kth(k);
            let hi = kth((k + 1).min(m - 1));
            lo + (hi - lo) * (pos - k as f64)
        };
        assert!((s.median - oracle(0.5)).abs() < 1e-15);
        assert!((s.q10 - oracle(0.1)).abs() < 1e-15);
        assert!((s.q90 - oracle(0.9)).abs() < 1e-15);
    }

    #[test]
    fn log_grid_shape() {
        let g = default_n_grid();
        assert_eq!(g.first(), Some(&100));
        assert_eq!(g.last(), Some(&100_000));
        assert_eq!(g.len(), 20);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        let rows = [
            point(10, 0, 2.0 / 3.0),
            TrajectoryPoint {
                status: RowStatus::Degenerate,
                index: f64::NAN,
                ..point(10, 1, 0.0)
            },
        ];
        write_trajectory(&mut buf, &rows, 6).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "n,replication,seed,index,bn,status\n10,0,0,0.666667,1,ok\n10,1,0,NaN,1,degenerate\n"
        );
    }
}
