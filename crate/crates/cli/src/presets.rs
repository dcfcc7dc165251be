//! Named parameter sets used throughout the numerical study.

use monotone_index::{LomaxParams, Window};

/// `(0,2]`, `(8,12]` and `(0,20]`.
pub fn window(name: &str) -> Option<Window> {
    let (a, b) = match name {
        "w02" => (0.0, 2.0),
        "w812" => (8.0, 12.0),
        "w020" => (0.0, 20.0),
        _ => return None,
    };
    Window::new(a, b).ok()
}

/// `α = 1.5` (mean but no variance) or `α = 5`, both with `β = 1`.
pub fn lomax(name: &str) -> Option<LomaxParams> {
    let alpha = match name {
        "a15" => 1.5,
        "a5" => 5.0,
        _ => return None,
    };
    LomaxParams::new(alpha, 1.0).ok()
}

pub const GAMMA: f64 = 0.1;
pub const DELTA: f64 = 1.0;
pub const X0: f64 = 10.0;
pub const RHOS: [f64; 3] = [-0.5, 0.0, 0.5];
pub const WINDOW_NAMES: [&str; 3] = ["w02", "w812", "w020"];
pub const LOMAX_NAMES: [&str; 2] = ["a15", "a5"];
