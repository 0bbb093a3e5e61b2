use alloc::format;

// unused whenever std is linked and the inherent f64 methods win
#[allow(unused_imports)]
use num_traits::Float;

use crate::array::ArrayGeometry;
use crate::error::{Error, Result};
use crate::geometry::{canonicalize_frame, FrameTransform, Position3D, YawAngle};
use crate::signalmodel::PowerConfig;

/// Full parameterization of one Bob/Eve/UAV deployment.
///
/// Bob and Eve may be given in any ground frame; solvers and link evaluation
/// move everything into the canonical frame (Bob at the origin, Eve on `+X`)
/// first. The yaw angle is always measured from the Bob-to-Eve axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub array: ArrayGeometry,
    pub bob: Position3D,
    pub eve: Position3D,
    /// UAV altitude `g` (m).
    pub uav_height_m: f64,
    pub yaw: YawAngle,
    pub power: PowerConfig,
    /// Carried for reporting only; secrecy rates are per Hz.
    pub bandwidth_hz: f64,
    pub seed: u64,
}

impl ScenarioConfig {
    /// 4x4 array at 3 GHz, 5 MHz bandwidth, 1 W, `g = 200 m`, Eve at
    /// `(500 m, 0)`, yaw `pi/4`. Noise is set for a 15 dB SNR with all power
    /// on the confidential signal.
    pub fn reference() -> Self {
        let total_power_w = 1.0;
        ScenarioConfig {
            array: ArrayGeometry::half_wavelength(4, 4, 3e9).expect("valid array"),
            bob: Position3D::ground(0.0, 0.0),
            eve: Position3D::ground(500.0, 0.0),
            uav_height_m: 200.0,
            yaw: YawAngle::new(core::f64::consts::FRAC_PI_4).expect("valid yaw"),
            power: PowerConfig::from_snr_db(total_power_w, 1.0, 15.0).expect("valid power"),
            bandwidth_hz: 5e6,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.uav_height_m.is_finite() && self.uav_height_m > 0.0) {
            return Err(Error::InvalidParameter {
                name: "uav_height_m",
                reason: format!("UAV height must be positive, got {}", self.uav_height_m),
            });
        }
        if self.bob.z != 0.0 || self.eve.z != 0.0 {
            return Err(Error::InvalidParameter {
                name: "ground nodes",
                reason: format!(
                    "Bob and Eve must have z = 0 (got {} and {})",
                    self.bob.z, self.eve.z
                ),
            });
        }
        self.power.validate()?;
        self.frame().map(|_| ())
    }

    pub fn frame(&self) -> Result<FrameTransform> {
        canonicalize_frame(&self.bob, &self.eve)
    }

    /// `X_E`: Eve's coordinate on the canonical X axis.
    pub fn eve_distance(&self) -> f64 {
        self.bob.horizontal_distance(&self.eve)
    }

    pub fn with_power(self, power: PowerConfig) -> Self {
        ScenarioConfig { power, ..self }
    }

    /// Same scenario with `sigma_B^2 = sigma_E^2 = P_s / 10^(snr_db/10)` and
    /// the given power split.
    pub fn at_snr(self, snr_db: f64, alpha: f64) -> Result<Self> {
        let power = PowerConfig::from_snr_db(self.power.total_power_w, alpha, snr_db)?;
        Ok(self.with_power(power))
    }

    /// `P_s / sigma_B^2` in dB.
    pub fn snr_db(&self) -> f64 {
        10.0 * (self.power.total_power_w / self.power.noise_b_w).log10()
    }
}
