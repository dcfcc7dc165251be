use monotone_index::distributions::{LomaxParams, Window, WindowedDistribution};
use monotone_index::index::{emit_h_profile, theoretical_index, theoretical_index_via_h};
use monotone_index::numerics::QuadratureConfig;
use monotone_index::transfer::{HFunction, TransferFunction};

const WINDOWS: [(f64, f64); 3] = [(0.0, 2.0), (8.0, 12.0), (0.0, 20.0)];
const RHOS: [f64; 3] = [-0.5, 0.0, 0.5];
const ALPHAS: [f64; 2] = [1.5, 5.0];

fn hf(alpha: f64, w: Window, rho: f64) -> HFunction<TransferFunction> {
    let d = WindowedDistribution::new(LomaxParams::new(alpha, 1.0).unwrap(), w).unwrap();
    HFunction::new(TransferFunction::preset(rho).unwrap(), d).unwrap()
}

#[test]
fn input_and_quantile_domains_agree_on_all_presets() {
    let cfg = QuadratureConfig::default();
    for (a, b) in WINDOWS {
        let w = Window::new(a, b).unwrap();
        for rho in RHOS {
            let x = theoretical_index(&TransferFunction::preset(rho).unwrap(), &w, &cfg).unwrap();
            for alpha in ALPHAS {
                let u = theoretical_index_via_h(&hf(alpha, w, rho), &cfg).unwrap();
                assert!((x.value - u.value).abs() < 1e-6, "alpha={alpha} ({a},{b}] rho={rho}");
                assert!((x.int_abs - u.int_abs).abs() < 1e-6);
                assert_eq!(x.jump_abs, u.jump_abs);
            }
        }
    }
}

#[test]
fn profile_last_row_is_h_at_one() {
    let rows = emit_h_profile(&hf(1.5, Window::new(0.0, 20.0).unwrap(), 0.5), 1000).unwrap();
    let (u, h) = *rows.last().unwrap();
    assert_eq!(u, 1.0);
    assert!((h - 144.1699).abs() < 1e-3);
}
