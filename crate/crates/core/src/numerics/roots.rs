use alloc::vec::Vec;

/// Default number of scan subintervals per segment.
pub const DEFAULT_GRID: usize = 100_000;
/// Scans never use fewer subintervals than this.
pub const MIN_GRID: usize = 100;
/// Width to which bisection narrows a bracket.
pub const ROOT_WIDTH: f64 = 1e-12;
/// Scan nodes at the segment edges are pulled inward by this fraction of the
/// segment, so a function undefined exactly at an edge is never evaluated there.
const EDGE_INSET: f64 = 1e-12;

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Narrows a sign-change bracket `[lo, hi]` to width [`ROOT_WIDTH`].
///
/// Stops early on an exact zero or once the bracket can no longer be split in
/// floating point.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = sign(f(lo));
    while hi - lo > ROOT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if sign(fm) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `f` in `(a, b)` where it changes sign, in increasing order.
///
/// `grid_n` equal subintervals are scanned (at least [`MIN_GRID`]); every
/// strict sign change between consecutive nonzero nodes is refined by
/// bisection. Nodes where `f` is zero or not finite are skipped, so runs of
/// underflowed values do not produce spurious roots. Pairs of roots closer
/// together than one grid cell are missed.
pub fn find_sign_changes<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, grid_n: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    if !(a < b) {
        return roots;
    }
    let n = grid_n.max(MIN_GRID);
    let width = b - a;
    let node = |k: usize| {
        if k == 0 {
            a + width * EDGE_INSET
        } else if k == n {
            b - width * EDGE_INSET
        } else {
            a + width * (k as f64 / n as f64)
        }
    };

    let mut last: Option<(f64, i8)> = None;
    for k in 0..=n {
        let x = node(k);
        let v = f(x);
        if !v.is_finite() {
            continue;
        }
        let s = sign(v);
        if s == 0 {
            continue;
        }
        if let Some((x_prev, s_prev)) = last {
            if s != s_prev {
                roots.push(bisect(&f, x_prev, x));
            }
        }
        last = Some((x, s));
    }
    roots
}
