//! Independent reference computations for the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// `h_E^H h_B` by the explicit double sum over all `M * N` elements of the
/// half-wavelength array, straight from the angles.
pub fn brute_force_correlation(
    m_rows: usize,
    n_cols: usize,
    (az_b, pitch_b): (f64, f64),
    (az_e, pitch_e): (f64, f64),
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..m_rows {
        for n in 0..n_cols {
            let (m, n) = (m as f64, n as f64);
            let e = PI * (m * az_e.cos() + n * az_e.sin()) * pitch_e.cos();
            let b = PI * (m * az_b.cos() + n * az_b.sin()) * pitch_b.cos();
            acc += Complex64::from_polar(1.0, e - b);
        }
    }
    acc / (m_rows * n_cols) as f64
}

/// `|h_E^H h_B|` for a canonical-frame UAV at `(x, y, g)`, computed from the
/// coordinate ratios without the crate's geometry code.
pub fn brute_force_residual(m: usize, n: usize, x_e: f64, g: f64, yaw: f64, x: f64, y: f64) -> f64 {
    let angles = |tx: f64| {
        let (dx, dy) = (x - tx, y);
        let az = dy.atan2(dx) - yaw;
        let pitch = g.atan2(dx.hypot(dy));
        (az, pitch)
    };
    brute_force_correlation(m, n, angles(0.0), angles(x_e)).norm()
}

/// Minimizers of `f` on an evenly spaced grid, as grid coordinates: interior
/// points no larger than both neighbours.
pub fn dense_scan_minima(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)> {
    let n = ((hi - lo) / step).floor() as usize + 1;
    let xs: Vec<f64> = (0..n).map(|i| lo + i as f64 * step).collect();
    let v: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    (1..n - 1)
        .filter(|&i| v[i] <= v[i - 1] && v[i] <= v[i + 1])
        .map(|i| (xs[i], v[i]))
        .collect()
}

/// The reference scenario with the given array size, Eve distance, height and yaw.
pub fn scenario(m: usize, n: usize, x_e: f64, g: f64, yaw: f64) -> spwt_core::ScenarioConfig {
    let mut s = spwt_core::ScenarioConfig::reference();
    s.array = spwt_core::array::ArrayGeometry::half_wavelength(m, n, 3e9).unwrap();
    s.eve = spwt_core::geometry::Position3D::ground(x_e, 0.0);
    s.uav_height_m = g;
    s.yaw = spwt_core::geometry::YawAngle::new(yaw).unwrap();
    s
}

/// `M, N` from {2, 4, 8}, `X_E` in [100, 1000] m, `g` in [50, 400] m and a
/// yaw at least 0.1 rad from every multiple of `pi/2`, redrawn until the
/// `k = 1` closed form has a real root for the row or column factor.
pub fn random_feasible_scenario(rng: &mut impl rand::Rng) -> spwt_core::ScenarioConfig {
    let sizes = [2usize, 4, 8];
    loop {
        let m = sizes[rng.random_range(0..3)];
        let n = sizes[rng.random_range(0..3)];
        let x_e = rng.random_range(100.0..=1000.0);
        let g = rng.random_range(50.0..=400.0);
        let quadrant = rng.random_range(0..4) as f64;
        let yaw = quadrant * PI / 2.0 + rng.random_range(0.1..(PI / 2.0 - 0.1));
        let (m_f, n_f) = (m as f64, n as f64);
        let need = x_e * x_e + 4.0 * g * g;
        let row = m_f * m_f * yaw.cos().powi(2) * x_e * x_e >= need;
        let col = n_f * n_f * yaw.sin().powi(2) * x_e * x_e >= need;
        if row || col {
            return scenario(m, n, x_e, g, yaw);
        }
    }
}
