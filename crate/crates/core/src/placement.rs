//! Where to park the UAV so that Eve sits on a null of Bob's beam.
//!
//! Two one-dimensional loci decouple the null condition:
//!
//! * **Azimuth scheme**, `X_A = X_E / 2`: both users are seen at the same
//!   pitch and `theta_B = pi - theta_E`, so the row factor of `h_E^H h_B`
//!   vanishes when `cos(theta_B) cos(phi_E) = k / (M |cos theta_A|)` (column
//!   factor: `N |sin theta_A|`). On this line that is a closed form in `Y_A`:
//!
//!   ```text
//!   Y_A = +/- sqrt((M^2 cos^2(theta_A) X_E^2 - k^2 X_E^2 - 4 k^2 g^2) / (4 k^2))
//!   ```
//!
//! * **Pitch scheme**, `Y_A = 0` outside `[0, X_E]`: both users share the
//!   azimuth and the row factor vanishes when
//!   `cos(phi_E) - cos(phi_B) = +/- 2 l / (M cos theta'_E)` (column factor:
//!   `N sin theta'_E`). The left side has no closed form, but its magnitude
//!   shrinks monotonically with the UAV's distance from the Bob/Eve segment,
//!   so the position is found by bisection.
//!
//! Every candidate is certified by recomputing `|h_E^H h_B|` from scratch.

use alloc::{format, string::String, vec::Vec};
use core::f64::consts::FRAC_PI_2;

// unused whenever std is linked and the inherent f64 methods win
#[allow(unused_imports)]
use num_traits::Float;

use crate::array::{cross_correlation, steering_vector_for, ArrayGeometry};
use crate::error::{Error, Result};
use crate::geometry::{look_angles, wrap_angle, LookAngles, Position3D, YawAngle};
use crate::scenario::ScenarioConfig;
use crate::signalmodel::{canonical_channels, evaluate_link};

/// Largest `|h_E^H h_B|` accepted at a returned solution.
pub const NULL_RESIDUAL_TOLERANCE: f64 = 1e-8;
/// Candidates closer than this (m) are merged.
pub const DUPLICATE_DISTANCE_M: f64 = 1e-6;
pub const BISECTION_TOLERANCE: f64 = 1e-12;
pub const BISECTION_MAX_ITERATIONS: usize = 200;
/// Search range (m) for the distance of a pitch-scheme UAV from the segment.
pub const BRACKET_RANGE_M: (f64, f64) = (1e-6, 1e6);
pub const BRACKET_PRESCAN_POINTS: usize = 64;
/// Grid minima above this residual are not reported by the oracle.
pub const ORACLE_THRESHOLD: f64 = 1e-2;

/// Null order `k` (azimuth scheme) or `l` (pitch scheme).
///
/// A multiple of `M` or `N` would place the zero of a geometric series on its
/// removable singularity, where the factor equals `M` (or `N`) instead of 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NullIndex(u32);

impl NullIndex {
    pub fn new(index: u32, geom: &ArrayGeometry) -> Result<Self> {
        let idx = NullIndex(index);
        idx.check(geom)?;
        Ok(idx)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn check(self, geom: &ArrayGeometry) -> Result<()> {
        let k = self.0 as usize;
        if k == 0 || k.is_multiple_of(geom.m_rows) || k.is_multiple_of(geom.n_cols) {
            return Err(Error::InvalidIndex {
                index: self.0,
                m: geom.m_rows,
                n: geom.n_cols,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Azimuth,
    Pitch,
}

/// Which sign of the `+/-` in the null equation a solution satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Which geometric series of `h_E^H h_B` is driven to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NullFactor {
    /// The `M`-term series along the rows.
    Row,
    /// The `N`-term series along the columns.
    Column,
}

/// Pitch-scheme branch: `X_A < 0` or `X_A > X_E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementSolution {
    /// UAV position, in the same frame as the scenario's Bob and Eve.
    pub position: Position3D,
    pub scheme: Scheme,
    pub branch: Branch,
    pub index_used: NullIndex,
    pub factor_used: NullFactor,
    /// `|h_E^H h_B|` recomputed at `position`.
    pub null_residual: f64,
    /// Residual of the scheme's scalar null equation: for the azimuth scheme
    /// `|cos(theta_B) cos(phi_E) - k / (dim |trig(theta_A)|)|`, for the pitch
    /// scheme `|cos(phi_E) - cos(phi_B) - target|`.
    pub equation_residual: f64,
    /// Secrecy rate at `position` with the scenario's power settings.
    pub sr_at_solution: f64,
}

/// An azimuth-scheme root that failed null verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RejectedCandidate {
    pub position: Position3D,
    pub branch: Branch,
    pub factor: NullFactor,
    pub null_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AzimuthSolutions {
    pub solutions: Vec<PlacementSolution>,
    pub rejected: Vec<RejectedCandidate>,
}

fn factor_dimension(geom: &ArrayGeometry, factor: NullFactor) -> usize {
    match factor {
        NullFactor::Row => geom.m_rows,
        NullFactor::Column => geom.n_cols,
    }
}

fn yaw_trig(yaw: YawAngle, factor: NullFactor) -> f64 {
    match factor {
        NullFactor::Row => yaw.radians().cos(),
        NullFactor::Column => yaw.radians().sin(),
    }
}

/// `Y_A^2` from the closed form; negative when the locus has no null of
/// order `k` for this factor.
pub fn azimuth_radicand(scenario: &ScenarioConfig, k: NullIndex, factor: NullFactor) -> f64 {
    let dim = factor_dimension(&scenario.array, factor) as f64;
    let trig = yaw_trig(scenario.yaw, factor);
    let x_e = scenario.eve_distance();
    let g = scenario.uav_height_m;
    let k = k.get() as f64;
    (dim * dim * trig * trig * x_e * x_e - k * k * x_e * x_e - 4.0 * k * k * g * g) / (4.0 * k * k)
}

/// `|h_E^H h_B|` with the UAV at `uav` (scenario frame), recomputed from the
/// geometry. Non-finite if the position is degenerate.
pub fn null_residual_at(scenario: &ScenarioConfig, uav: &Position3D) -> f64 {
    let residual = || -> Result<f64> {
        let canonical = scenario.frame()?.apply(uav);
        let (h_b, h_e) = canonical_channels(scenario, &canonical)?;
        Ok(cross_correlation(&h_e, &h_b)?.norm())
    };
    residual().unwrap_or(f64::INFINITY)
}

pub fn verify_null(solution: &PlacementSolution, scenario: &ScenarioConfig) -> f64 {
    null_residual_at(scenario, &solution.position)
}

fn check_solvable(scenario: &ScenarioConfig, index: NullIndex) -> Result<()> {
    scenario.validate()?;
    scenario.yaw.check_solver_feasible()?;
    index.check(&scenario.array)
}

/// Every verified null on the `X_A = X_E / 2` line: up to two roots (`+/-`)
/// from each of the row and column equations, duplicates merged.
pub fn solve_azimuth_scheme(
    scenario: &ScenarioConfig,
    index: NullIndex,
) -> Result<Vec<PlacementSolution>> {
    let found = solve_azimuth_scheme_detailed(scenario, index)?;
    if found.solutions.is_empty() {
        return Err(Error::InfeasibleGeometry(format!(
            "{} closed-form candidate(s) failed null verification",
            found.rejected.len()
        )));
    }
    Ok(found.solutions)
}

/// Like [`solve_azimuth_scheme`], also reporting candidates that failed
/// verification. Fails only when no radicand is non-negative.
pub fn solve_azimuth_scheme_detailed(
    scenario: &ScenarioConfig,
    index: NullIndex,
) -> Result<AzimuthSolutions> {
    check_solvable(scenario, index)?;
    let frame = scenario.frame()?;
    let x_a = scenario.eve_distance() / 2.0;
    let g = scenario.uav_height_m;
    let k = index.get() as f64;

    let mut out = AzimuthSolutions::default();
    let mut seen: Vec<Position3D> = Vec::new();
    let mut any_real = false;
    for factor in [NullFactor::Row, NullFactor::Column] {
        let radicand = azimuth_radicand(scenario, index, factor);
        if radicand < 0.0 {
            continue;
        }
        any_real = true;
        let dim = factor_dimension(&scenario.array, factor) as f64;
        let required = k / (dim * yaw_trig(scenario.yaw, factor).abs());
        for branch in [Branch::Plus, Branch::Minus] {
            let canonical = Position3D::new(x_a, branch.sign() * radicand.sqrt(), g);
            if seen
                .iter()
                .any(|p| p.distance(&canonical) < DUPLICATE_DISTANCE_M)
            {
                continue;
            }
            seen.push(canonical);

            let position = frame.invert(&canonical);
            let null_residual = null_residual_at(scenario, &position);
            if !(null_residual <= NULL_RESIDUAL_TOLERANCE) {
                out.rejected.push(RejectedCandidate {
                    position,
                    branch,
                    factor,
                    null_residual,
                });
                continue;
            }
            let slant = (x_a * x_a + canonical.y * canonical.y + g * g).sqrt();
            out.solutions.push(PlacementSolution {
                position,
                scheme: Scheme::Azimuth,
                branch,
                index_used: index,
                factor_used: factor,
                null_residual,
                equation_residual: (x_a / slant - required).abs(),
                sr_at_solution: evaluate_link(scenario, &position)?.secrecy_rate_bps_hz,
            });
        }
    }
    if !any_real {
        return Err(Error::InfeasibleGeometry(String::from(
            "no real Y_A on the X_A = X_E/2 line for this null index; \
             adjust theta_a or height (increase M^2 cos^2 theta_a or N^2 sin^2 theta_a relative to 1 + 4 g^2 / X_E^2)",
        )));
    }
    Ok(out)
}

/// Canonical-frame UAV position on the `Y_A = 0` line at distance `u` outside
/// the Bob/Eve segment.
fn pitch_locus_point(x_e: f64, g: f64, side: Side, u: f64) -> Position3D {
    match side {
        Side::Left => Position3D::new(-u, 0.0, g),
        Side::Right => Position3D::new(x_e + u, 0.0, g),
    }
}

/// `cos(phi_E) - cos(phi_B)` with the UAV on the pitch locus at distance `u`
/// from the segment. Positive on the left side, negative on the right, and
/// its magnitude decreases strictly in `u`.
pub fn pitch_cosine_difference(scenario: &ScenarioConfig, side: Side, u: f64) -> Result<f64> {
    let x_e = scenario.eve_distance();
    let uav = pitch_locus_point(x_e, scenario.uav_height_m, side, u);
    let b = look_angles(&uav, &Position3D::ground(0.0, 0.0), scenario.yaw)?;
    let e = look_angles(&uav, &Position3D::ground(x_e, 0.0), scenario.yaw)?;
    Ok(e.pitch.cos() - b.pitch.cos())
}

/// Null on the `Y_A = 0` locus on the chosen side, driving the chosen factor
/// to zero.
pub fn solve_pitch_scheme(
    scenario: &ScenarioConfig,
    index: NullIndex,
    side: Side,
    factor: NullFactor,
) -> Result<PlacementSolution> {
    check_solvable(scenario, index)?;
    let frame = scenario.frame()?;
    let x_e = scenario.eve_distance();
    let g = scenario.uav_height_m;

    // theta'_E is constant along each side of the locus.
    let probe = pitch_locus_point(x_e, g, side, 1.0);
    let eve_azimuth = look_angles(&probe, &Position3D::ground(x_e, 0.0), scenario.yaw)?.azimuth_rel;
    let trig = match factor {
        NullFactor::Row => eve_azimuth.cos(),
        NullFactor::Column => eve_azimuth.sin(),
    };
    if trig.abs() < 1e-12 {
        return Err(Error::InfeasibleGeometry(String::from(
            "the chosen factor has no pitch dependence at this yaw",
        )));
    }
    let dim = factor_dimension(&scenario.array, factor) as f64;
    let side_sign = match side {
        Side::Left => 1.0,
        Side::Right => -1.0,
    };
    let target = side_sign * 2.0 * index.get() as f64 / (dim * trig.abs());
    let branch = if side_sign * trig > 0.0 {
        Branch::Plus
    } else {
        Branch::Minus
    };

    let f = |u: f64| pitch_cosine_difference(scenario, side, u).map(|d| d - target);

    let (lo_u, hi_u) = BRACKET_RANGE_M;
    let ratio = (hi_u / lo_u).ln() / (BRACKET_PRESCAN_POINTS - 1) as f64;
    let mut bracket = None;
    let mut prev = (lo_u, f(lo_u)?);
    for i in 1..BRACKET_PRESCAN_POINTS {
        let u = lo_u * (ratio * i as f64).exp();
        let fu = f(u)?;
        if prev.1 == 0.0 {
            bracket = Some((prev, prev));
            break;
        }
        if prev.1.signum() != fu.signum() {
            bracket = Some((prev, (u, fu)));
            break;
        }
        prev = (u, fu);
    }
    let Some(((mut lo, mut f_lo), (mut hi, _))) = bracket else {
        let sup = x_e / (x_e * x_e + g * g).sqrt();
        return Err(Error::InfeasibleGeometry(format!(
            "required |cos phi_E - cos phi_B| = {:.6} is outside the attainable range (0, {:.6}); \
             adjust theta_a or height",
            target.abs(),
            sup
        )));
    };

    let mut best = (lo, f_lo.abs());
    for _ in 0..BISECTION_MAX_ITERATIONS {
        if best.1 <= BISECTION_TOLERANCE || hi <= lo {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid.abs() < best.1 {
            best = (mid, f_mid.abs());
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    let (u, equation_residual) = best;
    let position = frame.invert(&pitch_locus_point(x_e, g, side, u));
    let null_residual = null_residual_at(scenario, &position);
    if !(null_residual <= NULL_RESIDUAL_TOLERANCE) {
        return Err(Error::InfeasibleGeometry(format!(
            "bisection root failed null verification (|h_E^H h_B| = {null_residual:e})"
        )));
    }
    Ok(PlacementSolution {
        position,
        scheme: Scheme::Pitch,
        branch,
        index_used: index,
        factor_used: factor,
        null_residual,
        equation_residual,
        sr_at_solution: evaluate_link(scenario, &position)?.secrecy_rate_bps_hz,
    })
}

/// Every feasible pitch-scheme solution (both sides, both factors).
pub fn solve_pitch_scheme_all(
    scenario: &ScenarioConfig,
    index: NullIndex,
) -> Result<Vec<PlacementSolution>> {
    let mut solutions = Vec::new();
    let mut last_err = None;
    for side in [Side::Left, Side::Right] {
        for factor in [NullFactor::Row, NullFactor::Column] {
            match solve_pitch_scheme(scenario, index, side, factor) {
                Ok(s) => {
                    if !solutions.iter().any(|p: &PlacementSolution| {
                        p.position.distance(&s.position) < DUPLICATE_DISTANCE_M
                    }) {
                        solutions.push(s);
                    }
                }
                Err(e @ Error::InfeasibleGeometry(_)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
    }
    match (solutions.is_empty(), last_err) {
        (true, Some(e)) => Err(e),
        _ => Ok(solutions),
    }
}

/// Search region for [`grid_null_oracle`], in the canonical frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Locus {
    /// The azimuth-scheme line `x = X_E / 2`.
    MidpointLine { y_min: f64, y_max: f64 },
    /// The pitch-scheme line `y = 0`.
    AxisLine { x_min: f64, x_max: f64 },
    Box {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
}

/// `|h_E^H h_B|` sampled on a rectangular canonical-frame grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// Row-major with `x` varying fastest: `values[iy * xs.len() + ix]`.
    pub values: Vec<f64>,
}

impl ResidualGrid {
    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.xs.len() + ix]
    }
}

/// Angles toward a ground node that stay defined directly overhead, where the
/// pitch is `pi/2` and the steering vector no longer depends on azimuth.
fn zenith_safe_angles(uav: &Position3D, target: &Position3D, yaw: YawAngle) -> LookAngles {
    look_angles(uav, target, yaw).unwrap_or(LookAngles {
        azimuth: 0.0,
        pitch: FRAC_PI_2,
        azimuth_rel: wrap_angle(-yaw.radians()),
    })
}

/// `|h_E^H h_B|` at a canonical-frame UAV position by direct summation.
pub fn canonical_residual(scenario: &ScenarioConfig, uav: &Position3D) -> f64 {
    let bob = Position3D::ground(0.0, 0.0);
    let eve = Position3D::ground(scenario.eve_distance(), 0.0);
    let h_b = steering_vector_for(
        &scenario.array,
        &zenith_safe_angles(uav, &bob, scenario.yaw),
    );
    let h_e = steering_vector_for(
        &scenario.array,
        &zenith_safe_angles(uav, &eve, scenario.yaw),
    );
    cross_correlation(&h_e, &h_b)
        .map(|c| c.norm())
        .unwrap_or(f64::INFINITY)
}

pub fn residual_grid(scenario: &ScenarioConfig, xs: &[f64], ys: &[f64]) -> ResidualGrid {
    let g = scenario.uav_height_m;
    let values = ys
        .iter()
        .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
        .map(|(x, y)| canonical_residual(scenario, &Position3D::new(x, y, g)))
        .collect();
    ResidualGrid {
        xs: xs.to_vec(),
        ys: ys.to_vec(),
        values,
    }
}

fn axis(min: f64, max: f64, resolution: f64) -> Result<Vec<f64>> {
    crate::grid::stepped(min, resolution, max)
}

/// Brute-force search for nulls: samples `|h_E^H h_B|` on the locus at the
/// given spacing and returns the interior local minima below
/// [`ORACLE_THRESHOLD`], smallest first. Positions are canonical-frame.
pub fn grid_null_oracle(
    scenario: &ScenarioConfig,
    locus: Locus,
    resolution: f64,
) -> Result<Vec<(Position3D, f64)>> {
    if !(resolution > 0.0) {
        return Err(Error::InvalidParameter {
            name: "resolution",
            reason: format!("grid resolution must be positive, got {resolution}"),
        });
    }
    let g = scenario.uav_height_m;
    let mut minima = Vec::new();
    match locus {
        Locus::MidpointLine { y_min, y_max } => {
            let x = scenario.eve_distance() / 2.0;
            let ys = axis(y_min, y_max, resolution)?;
            let grid = residual_grid(scenario, &[x], &ys);
            for i in line_minima(&grid.values) {
                minima.push((Position3D::new(x, ys[i], g), grid.values[i]));
            }
        }
        Locus::AxisLine { x_min, x_max } => {
            let xs = axis(x_min, x_max, resolution)?;
            let grid = residual_grid(scenario, &xs, &[0.0]);
            for i in line_minima(&grid.values) {
                minima.push((Position3D::new(xs[i], 0.0, g), grid.values[i]));
            }
        }
        Locus::Box {
            x_min,
            x_max,
            y_min,
            y_max,
        } => {
            let xs = axis(x_min, x_max, resolution)?;
            let ys = axis(y_min, y_max, resolution)?;
            let grid = residual_grid(scenario, &xs, &ys);
            for (ix, iy) in box_minima(&grid) {
                minima.push((Position3D::new(xs[ix], ys[iy], g), grid.at(ix, iy)));
            }
        }
    }
    minima.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(minima)
}

fn line_minima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| {
            values[i] < ORACLE_THRESHOLD && values[i] < values[i - 1] && values[i] <= values[i + 1]
        })
        .collect()
}

fn box_minima(grid: &ResidualGrid) -> Vec<(usize, usize)> {
    let (nx, ny) = (grid.xs.len(), grid.ys.len());
    let mut out = Vec::new();
    for iy in 1..ny.saturating_sub(1) {
        for ix in 1..nx.saturating_sub(1) {
            let v = grid.at(ix, iy);
            if v >= ORACLE_THRESHOLD {
                continue;
            }
            let mut is_min = true;
            'nbr: for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let w = grid.at((ix as i64 + dx) as usize, (iy as i64 + dy) as usize);
                    // strict against earlier neighbours so plateaus report once
                    let earlier = dy < 0 || (dy == 0 && dx < 0);
                    if (earlier && v >= w) || (!earlier && v > w) {
                        is_min = false;
                        break 'nbr;
                    }
                }
            }
            if is_min {
                out.push((ix, iy));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ScenarioConfig {
        ScenarioConfig::reference()
    }

    fn k1(s: &ScenarioConfig) -> NullIndex {
        NullIndex::new(1, &s.array).unwrap()
    }

    #[test]
    fn reference_radicand() {
        let s = reference();
        let r = azimuth_radicand(&s, k1(&s), NullFactor::Row);
        assert!((r - 397_500.0).abs() < 1e-6);
    }

    #[test]
    fn reference_azimuth_solutions() {
        let s = reference();
        let sols = solve_azimuth_scheme(&s, k1(&s)).unwrap();
        // row and column equations coincide at theta_A = pi/4
        assert_eq!(sols.len(), 2);
        for sol in &sols {
            assert!((sol.position.x - 250.0).abs() < 1e-12);
            assert!((sol.position.y.abs() - 630.476).abs() < 1e-3);
            assert!(sol.null_residual <= 1e-10);
            assert!(sol.equation_residual < 1e-15);
        }
        assert_ne!(sols[0].branch, sols[1].branch);
    }

    #[test]
    fn tall_uav_is_infeasible() {
        let mut s = reference();
        s.uav_height_m = 10_000.0;
        assert!(matches!(
            solve_azimuth_scheme(&s, k1(&s)),
            Err(Error::InfeasibleGeometry(_))
        ));
    }

    #[test]
    fn axis_yaw_is_rejected() {
        let mut s = reference();
        s.yaw = YawAngle::new(FRAC_PI_2).unwrap();
        assert!(matches!(
            solve_azimuth_scheme(&s, k1(&reference())),
            Err(Error::InvalidYaw { .. })
        ));
        assert!(matches!(
            solve_pitch_scheme(&s, k1(&reference()), Side::Left, NullFactor::Row),
            Err(Error::InvalidYaw { .. })
        ));
    }

    #[test]
    fn index_multiple_of_array_size_is_rejected() {
        let s = reference();
        assert!(matches!(
            NullIndex::new(4, &s.array),
            Err(Error::InvalidIndex { .. })
        ));
        assert!(matches!(
            NullIndex::new(0, &s.array),
            Err(Error::InvalidIndex { .. })
        ));
        let two = ArrayGeometry::half_wavelength(2, 3, 3e9).unwrap();
        assert!(NullIndex::new(3, &two).is_err());
        assert!(NullIndex::new(5, &two).is_ok());
        // an index valid for one geometry is re-checked against the scenario
        let k5 = NullIndex::new(5, &two).unwrap();
        let mut s8 = reference();
        s8.array = ArrayGeometry::half_wavelength(5, 4, 3e9).unwrap();
        assert!(matches!(
            solve_azimuth_scheme(&s8, k5),
            Err(Error::InvalidIndex { .. })
        ));
    }

    #[test]
    fn pitch_left_reference() {
        let s = reference();
        let sol = solve_pitch_scheme(&s, k1(&s), Side::Left, NullFactor::Row).unwrap();
        assert!(
            (sol.position.x + 47.7527).abs() < 1e-3,
            "x = {}",
            sol.position.x
        );
        assert_eq!(sol.position.y, 0.0);
        assert!(sol.equation_residual <= 1e-9);
        assert!(sol.null_residual <= 1e-8);
    }

    #[test]
    fn pitch_right_mirrors_left() {
        let s = reference();
        let left = solve_pitch_scheme(&s, k1(&s), Side::Left, NullFactor::Row).unwrap();
        let right = solve_pitch_scheme(&s, k1(&s), Side::Right, NullFactor::Row).unwrap();
        assert!(right.position.x > 500.0);
        assert!((right.position.x - 500.0 + left.position.x).abs() < 1e-6);
        assert!(right.null_residual <= 1e-8);
    }

    #[test]
    fn verify_null_rejects_generic_points() {
        let s = reference();
        assert!(null_residual_at(&s, &Position3D::new(100.0, 100.0, 200.0)) > 1e-3);
        assert!(null_residual_at(&s, &Position3D::new(0.0, 0.0, 200.0)).is_infinite());
    }

    #[test]
    fn single_antenna_pattern_has_no_nulls() {
        let mut s = reference();
        s.array = ArrayGeometry::half_wavelength(1, 1, 3e9).unwrap();
        let minima = grid_null_oracle(
            &s,
            Locus::Box {
                x_min: -100.0,
                x_max: 600.0,
                y_min: -300.0,
                y_max: 300.0,
            },
            25.0,
        )
        .unwrap();
        assert!(minima.is_empty());
        assert!((canonical_residual(&s, &Position3D::new(0.0, 0.0, 200.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn oracle_rejects_bad_resolution() {
        let s = reference();
        let locus = Locus::AxisLine {
            x_min: -10.0,
            x_max: 10.0,
        };
        assert!(grid_null_oracle(&s, locus, 0.0).is_err());
        assert!(grid_null_oracle(&s, locus, -1.0).is_err());
    }
}
