//! Transmit beamforming, artificial noise and the resulting link quality.
//!
//! The UAV sends `s = sqrt(alpha P_s) v x + sqrt((1 - alpha) P_s) w` with the
//! beam `v = h_B` and AN `w = (I - h_B h_B^H) z`, `z ~ CN(0, I)`. Bob's
//! channel annihilates `w`; Eve's sees AN power `|h_E^H w|^2`, whose mean is
//! `||(I - h_B h_B^H) h_E||^2 = 1 - |h_E^H h_B|^2`.

use alloc::{format, vec, vec::Vec};

use num_complex::Complex64;
// unused whenever std is linked and the inherent f64 methods win
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::array::{cross_correlation, steering_vector_for, SteeringVector};
use crate::error::{Error, Result};
use crate::geometry::{look_angles, Position3D};
use crate::scenario::ScenarioConfig;

/// Slack allowed on `|rho| <= 1` for rounding in unit-norm vectors.
pub const CORRELATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerConfig {
    /// `P_s` (W).
    pub total_power_w: f64,
    /// Fraction of `P_s` on the confidential signal; the rest feeds AN.
    pub alpha: f64,
    /// `sigma_B^2` (W).
    pub noise_b_w: f64,
    /// `sigma_E^2` (W).
    pub noise_e_w: f64,
}

impl PowerConfig {
    pub fn new(total_power_w: f64, alpha: f64, noise_b_w: f64, noise_e_w: f64) -> Result<Self> {
        let p = PowerConfig {
            total_power_w,
            alpha,
            noise_b_w,
            noise_e_w,
        };
        p.validate()?;
        Ok(p)
    }

    /// Equal noise at Bob and Eve with `P_s / sigma^2 = 10^(snr_db / 10)`.
    pub fn from_snr_db(total_power_w: f64, alpha: f64, snr_db: f64) -> Result<Self> {
        let noise = total_power_w / 10f64.powf(snr_db / 10.0);
        Self::new(total_power_w, alpha, noise, noise)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be positive and finite, got {v}"),
                })
            }
        };
        positive("total_power_w", self.total_power_w)?;
        positive("noise_b_w", self.noise_b_w)?;
        positive("noise_e_w", self.noise_e_w)?;
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: format!(
                    "power allocation factor must lie in [0, 1], got {}",
                    self.alpha
                ),
            });
        }
        Ok(())
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.total_power_w, alpha, self.noise_b_w, self.noise_e_w)
    }
}

/// Dense Hermitian projector, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    dim: usize,
    data: Vec<Complex64>,
}

impl Projector {
    /// `I - h h^H` for a unit-norm `h`.
    pub fn orthogonal_to(h: &SteeringVector) -> Self {
        let h = h.as_slice();
        let dim = h.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, hi) in h.iter().enumerate() {
            for (j, hj) in h.iter().enumerate() {
                let identity = if i == j { 1.0 } else { 0.0 };
                data[i * dim + j] = Complex64::new(identity, 0.0) - hi * hj.conj();
            }
        }
        Projector { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            x.len(),
            self.dim,
            "projector applied to a vector of the wrong size"
        );
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn compose(&self, other: &Projector) -> Projector {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.data[i * dim + k];
                for j in 0..dim {
                    data[i * dim + j] += a * other.data[k * dim + j];
                }
            }
        }
        Projector { dim, data }
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Projector) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeamformerPair {
    /// Confidential beam, equal to Bob's steering vector.
    pub v: SteeringVector,
    /// `I - h_B h_B^H`, maps `z` to the AN vector `w`.
    pub projector: Projector,
}

pub fn build_beamformers(h_b: &SteeringVector) -> BeamformerPair {
    BeamformerPair {
        v: h_b.clone(),
        projector: Projector::orthogonal_to(h_b),
    }
}

/// Whether Monte-Carlo AN realizations are used as drawn or scaled to unit
/// norm per realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AnNormalization {
    /// `w = (I - h_B h_B^H) z`, the model's definition.
    #[default]
    Unnormalized,
    /// `w / ||w||`. Mean AN power at Eve becomes `(1 - |rho|^2) / (MN - 1)`.
    UnitNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloConfig {
    pub n_samples: usize,
    pub seed: u64,
    pub normalization: AnNormalization,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkMetrics {
    pub sinr_b: f64,
    pub sinr_e: f64,
    pub secrecy_rate_bps_hz: f64,
    /// `h_E^H h_B` at the evaluated position.
    pub rho: Complex64,
}

fn check_correlation(rho: Complex64) -> Result<f64> {
    let magnitude = rho.norm();
    if !(magnitude <= 1.0 + CORRELATION_SLACK) {
        return Err(Error::InvalidCorrelation { magnitude });
    }
    Ok(rho.norm_sqr().min(1.0))
}

/// SINR at a receiver whose channel has correlation `gain` with `v = h_B`,
/// with AN power replaced by its expectation `1 - |gain|^2`.
fn sinr_expected(gain_sqr: f64, power: &PowerConfig, noise_w: f64) -> f64 {
    let p = power.total_power_w;
    let an = (1.0 - power.alpha) * p * (1.0 - gain_sqr).max(0.0);
    power.alpha * p * gain_sqr / (an + noise_w)
}

/// `alpha P_s |rho|^2 / ((1 - alpha) P_s (1 - |rho|^2) + sigma_E^2)`.
pub fn sinr_eve_analytic(rho: Complex64, power: &PowerConfig) -> Result<f64> {
    let gain_sqr = check_correlation(rho)?;
    Ok(sinr_expected(gain_sqr, power, power.noise_e_w))
}

/// Monte-Carlo estimate of Eve's SINR from AN realizations of `w`.
///
/// The confidential power `alpha P_s |h_E^H v|^2` is deterministic; the AN
/// power `|h_E^H w|^2` is averaged over `n_samples` draws of
/// `z ~ CN(0, I_MN)` (each entry two independent normals scaled by
/// `1/sqrt(2)`) from a ChaCha8 stream seeded with `seed`. The estimate is the
/// signal power over the sample-mean interference-plus-noise power, which
/// converges to [`sinr_eve_analytic`].
pub fn sinr_eve_monte_carlo(
    h_e: &SteeringVector,
    pair: &BeamformerPair,
    power: &PowerConfig,
    n_samples: usize,
    seed: u64,
) -> f64 {
    sinr_eve_monte_carlo_with(
        h_e,
        pair,
        power,
        &MonteCarloConfig {
            n_samples,
            seed,
            normalization: AnNormalization::Unnormalized,
        },
    )
}

pub fn sinr_eve_monte_carlo_with(
    h_e: &SteeringVector,
    pair: &BeamformerPair,
    power: &PowerConfig,
    config: &MonteCarloConfig,
) -> f64 {
    let h = h_e.as_slice();
    let dim = h.len();
    let n = config.n_samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut z = vec![Complex64::new(0.0, 0.0); dim];
    let scale = core::f64::consts::FRAC_1_SQRT_2;

    // projector is Hermitian: h_E^H (P z) = (P h_E)^H z
    let projected_h = pair.projector.apply(h);

    let mut an_power_sum = 0.0;
    for _ in 0..n {
        for zi in z.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *zi = Complex64::new(re * scale, im * scale);
        }
        an_power_sum += match config.normalization {
            AnNormalization::Unnormalized => projected_h
                .iter()
                .zip(&z)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
                .norm_sqr(),
            AnNormalization::UnitNorm => {
                let w = pair.projector.apply(&z);
                let norm_sqr: f64 = w.iter().map(|x| x.norm_sqr()).sum();
                if norm_sqr > 0.0 {
                    h.iter()
                        .zip(&w)
                        .map(|(a, b)| a.conj() * b)
                        .sum::<Complex64>()
                        .norm_sqr()
                        / norm_sqr
                } else {
                    0.0
                }
            }
        };
    }
    let mean_an_power = an_power_sum / n as f64;

    let signal: Complex64 = h
        .iter()
        .zip(pair.v.as_slice())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let p = power.total_power_w;
    power.alpha * p * signal.norm_sqr()
        / ((1.0 - power.alpha) * p * mean_an_power + power.noise_e_w)
}

/// `max(0, log2(1 + sinr_b) - log2(1 + sinr_e))` in bits/s/Hz.
pub fn secrecy_rate(sinr_b: f64, sinr_e: f64) -> f64 {
    ((1.0 + sinr_b).log2() - (1.0 + sinr_e).log2()).max(0.0)
}

/// Steering vectors toward Bob and Eve from `uav`, all in the canonical frame.
pub(crate) fn canonical_channels(
    scenario: &ScenarioConfig,
    uav_canonical: &Position3D,
) -> Result<(SteeringVector, SteeringVector)> {
    let bob = Position3D::ground(0.0, 0.0);
    let eve = Position3D::ground(scenario.eve_distance(), 0.0);
    let angles_b = look_angles(uav_canonical, &bob, scenario.yaw)?;
    let angles_e = look_angles(uav_canonical, &eve, scenario.yaw)?;
    Ok((
        steering_vector_for(&scenario.array, &angles_b),
        steering_vector_for(&scenario.array, &angles_e),
    ))
}

/// Link quality with the UAV at `uav` (same frame as the scenario's Bob and
/// Eve), using the expected AN power at each receiver.
pub fn evaluate_link(scenario: &ScenarioConfig, uav: &Position3D) -> Result<LinkMetrics> {
    let frame = scenario.frame()?;
    let (h_b, h_e) = canonical_channels(scenario, &frame.apply(uav))?;
    let pair = build_beamformers(&h_b);
    let rho = cross_correlation(&h_e, &h_b)?;
    let bob_gain = cross_correlation(&h_b, &pair.v)?;

    let power = &scenario.power;
    let sinr_b = sinr_expected(check_correlation(bob_gain)?, power, power.noise_b_w);
    let sinr_e = sinr_eve_analytic(rho, power)?;
    Ok(LinkMetrics {
        sinr_b,
        sinr_e,
        secrecy_rate_bps_hz: secrecy_rate(sinr_b, sinr_e),
        rho,
    })
}
