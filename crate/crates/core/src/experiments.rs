//! Secrecy-rate studies: the solver's placement against seeded random
//! deployments, over SNR and over the signal/AN power split.

use alloc::{format, string::String, vec::Vec};

// unused whenever std is linked and the inherent f64 methods win
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardUniform};

use crate::error::{Error, Result};
use crate::geometry::Position3D;
use crate::placement::{
    solve_azimuth_scheme, solve_pitch_scheme_all, NullIndex, PlacementSolution, Scheme,
};
pub use crate::scenario::ScenarioConfig;
use crate::signalmodel::evaluate_link;

/// Random deployments closer than this (m, horizontally) to Bob or Eve are
/// redrawn.
pub const BASELINE_EXCLUSION_M: f64 = 1.0;
/// SNR used to stand in for `-inf` dB.
pub const VANISHING_SNR_DB: f64 = -100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl GroundBox {
    /// `[-1000, 1000]^2` m.
    pub const DEFAULT_BASELINE: GroundBox = GroundBox {
        x_min: -1000.0,
        x_max: 1000.0,
        y_min: -1000.0,
        y_max: 1000.0,
    };

    pub fn center(&self) -> (f64, f64) {
        (
            0.5 * (self.x_min + self.x_max),
            0.5 * (self.y_min + self.y_max),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Column name of the swept variable (`snr_db` or `alpha`).
    pub x_label: String,
    pub x_axis: Vec<f64>,
    /// `sr_proposed`, `sr_theory`, then `sr_rand1..`.
    pub series: Vec<Series>,
    pub scenario: ScenarioConfig,
    pub scheme: Scheme,
    /// The placements behind `sr_proposed`.
    pub placements: Vec<PlacementSolution>,
    /// The random deployments behind `sr_rand*`.
    pub baselines: Vec<Position3D>,
}

impl SweepResult {
    pub fn series(&self, name: &str) -> Option<&[f64]> {
        self.series
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.values.as_slice())
    }

    pub fn baseline_series(&self) -> impl Iterator<Item = &Series> {
        self.series.iter().filter(|s| s.name.starts_with("sr_rand"))
    }
}

/// `n` uniform draws in `bounds` at altitude `z` from a ChaCha8 stream seeded
/// with `seed`, skipping draws within [`BASELINE_EXCLUSION_M`] of any point
/// in `avoid`.
pub fn random_baseline_positions(
    n: usize,
    bounds: &GroundBox,
    z: f64,
    seed: u64,
    avoid: &[Position3D],
) -> Vec<Position3D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let ux: f64 = StandardUniform.sample(&mut rng);
        let uy: f64 = StandardUniform.sample(&mut rng);
        let p = Position3D::new(
            bounds.x_min + ux * (bounds.x_max - bounds.x_min),
            bounds.y_min + uy * (bounds.y_max - bounds.y_min),
            z,
        );
        if avoid
            .iter()
            .all(|a| a.horizontal_distance(&p) >= BASELINE_EXCLUSION_M)
        {
            out.push(p);
        }
    }
    out
}

/// All placements the chosen scheme produces with null index 1.
pub fn proposed_placements(
    scenario: &ScenarioConfig,
    scheme: Scheme,
) -> Result<Vec<PlacementSolution>> {
    let index = NullIndex::new(1, &scenario.array)?;
    match scheme {
        Scheme::Azimuth => solve_azimuth_scheme(scenario, index),
        Scheme::Pitch => solve_pitch_scheme_all(scenario, index),
    }
}

fn best_secrecy_rate(
    scenario: &ScenarioConfig,
    positions: impl Iterator<Item = Position3D>,
) -> Result<f64> {
    let mut best = 0.0f64;
    for p in positions {
        best = best.max(evaluate_link(scenario, &p)?.secrecy_rate_bps_hz);
    }
    Ok(best)
}

fn check_grid(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter {
            name,
            reason: String::from("grid must not be empty"),
        });
    }
    if let Some(bad) = grid.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("grid value {bad} is not finite"),
        });
    }
    Ok(())
}

fn baselines_for(scenario: &ScenarioConfig, n: usize) -> Vec<Position3D> {
    random_baseline_positions(
        n,
        &GroundBox::DEFAULT_BASELINE,
        scenario.uav_height_m,
        scenario.seed,
        &[scenario.bob, scenario.eve],
    )
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    x_label: &str,
    x_axis: Vec<f64>,
    proposed: Vec<f64>,
    theory: Vec<f64>,
    random: Vec<Vec<f64>>,
    scenario: &ScenarioConfig,
    scheme: Scheme,
    placements: Vec<PlacementSolution>,
    baselines: Vec<Position3D>,
) -> SweepResult {
    let mut series = Vec::with_capacity(2 + random.len());
    series.push(Series {
        name: String::from("sr_proposed"),
        values: proposed,
    });
    series.push(Series {
        name: String::from("sr_theory"),
        values: theory,
    });
    for (i, values) in random.into_iter().enumerate() {
        series.push(Series {
            name: format!("sr_rand{}", i + 1),
            values,
        });
    }
    SweepResult {
        x_label: String::from(x_label),
        x_axis,
        series,
        scenario: *scenario,
        scheme,
        placements,
        baselines,
    }
}

/// Secrecy rate versus SNR (`P_s / sigma^2`, same noise at Bob and Eve), all
/// power on the confidential signal. The proposed curve takes the best of the
/// scheme's placements at each point; the random deployments are drawn once
/// and held across the sweep.
pub fn sweep_snr(
    scenario: &ScenarioConfig,
    scheme: Scheme,
    snr_db_grid: &[f64],
    n_random_baselines: usize,
) -> Result<SweepResult> {
    check_grid("snr_db", snr_db_grid)?;
    let placements = proposed_placements(scenario, scheme)?;
    let baselines = baselines_for(scenario, n_random_baselines);

    let mut proposed = Vec::with_capacity(snr_db_grid.len());
    let mut theory = Vec::with_capacity(snr_db_grid.len());
    let mut random = alloc::vec![Vec::with_capacity(snr_db_grid.len()); n_random_baselines];
    for &snr_db in snr_db_grid {
        let at = scenario.at_snr(snr_db, 1.0)?;
        proposed.push(best_secrecy_rate(
            &at,
            placements.iter().map(|p| p.position),
        )?);
        theory.push((1.0 + 10f64.powf(snr_db / 10.0)).log2());
        for (curve, p) in random.iter_mut().zip(&baselines) {
            curve.push(evaluate_link(&at, p)?.secrecy_rate_bps_hz);
        }
    }
    Ok(assemble(
        "snr_db",
        snr_db_grid.to_vec(),
        proposed,
        theory,
        random,
        scenario,
        scheme,
        placements,
        baselines,
    ))
}

/// Secrecy rate versus the power split `alpha` at a fixed SNR.
///
/// The proposed deployment needs no AN, so it keeps `alpha = 1` at every grid
/// point and its curve is flat. The random deployments split power by the
/// swept `alpha`.
pub fn sweep_alpha(
    scenario: &ScenarioConfig,
    scheme: Scheme,
    snr_db: f64,
    alpha_grid: &[f64],
    n_random_baselines: usize,
) -> Result<SweepResult> {
    check_grid("alpha", alpha_grid)?;
    if let Some(bad) = alpha_grid.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("alpha grid value {bad} lies outside [0, 1]"),
        });
    }
    let placements = proposed_placements(scenario, scheme)?;
    let baselines = baselines_for(scenario, n_random_baselines);
    let full_signal = scenario.at_snr(snr_db, 1.0)?;
    let proposed_sr = best_secrecy_rate(&full_signal, placements.iter().map(|p| p.position))?;
    let theory_sr = (1.0 + 10f64.powf(snr_db / 10.0)).log2();

    let mut random = alloc::vec![Vec::with_capacity(alpha_grid.len()); n_random_baselines];
    for &alpha in alpha_grid {
        let at = scenario.at_snr(snr_db, alpha)?;
        for (curve, p) in random.iter_mut().zip(&baselines) {
            curve.push(evaluate_link(&at, p)?.secrecy_rate_bps_hz);
        }
    }
    Ok(assemble(
        "alpha",
        alpha_grid.to_vec(),
        alloc::vec![proposed_sr; alpha_grid.len()],
        alloc::vec![theory_sr; alpha_grid.len()],
        random,
        scenario,
        scheme,
        placements,
        baselines,
    ))
}
