//! Scenario files: flat `key = value` text, one pair per line, `#` comments.
//!
//! A run manifest (`manifest.json`) is accepted in place of a text file; its
//! config keys are read and everything else is ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{Map, Value};
use spwt_core::array::ArrayGeometry;
use spwt_core::geometry::{Position3D, YawAngle};
use spwt_core::signalmodel::PowerConfig;
use spwt_core::ScenarioConfig;
use thiserror::Error;

/// Keys a scenario file may set. `theta_a_deg` is an alias, converted to
/// `theta_a_rad` at parse time.
pub const KEYS: &[&str] = &[
    "m",
    "n",
    "f_c_hz",
    "d_m",
    "x_e_m",
    "g_m",
    "theta_a_rad",
    "theta_a_deg",
    "p_w",
    "sigma2_w",
    "alpha",
    "seed",
    "bandwidth_hz",
    "k",
];

/// Used when `sigma2_w` is absent: noise power for this SNR.
pub const DEFAULT_SNR_DB: f64 = 15.0;
const DEFAULT_BANDWIDTH_HZ: f64 = 5e6;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: field `{field}`: {reason}")]
    Field {
        line: usize,
        field: String,
        reason: String,
    },
    #[error("missing required field `{0}`")]
    Missing(&'static str),
    #[error("field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

/// Raw values with the line each came from (0 for overrides and manifests).
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    values: BTreeMap<String, (String, usize)>,
}

impl RawConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        if text.trim_start().starts_with('{') {
            Self::from_manifest(&text)
        } else {
            Self::parse(&text)
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: line_no,
                    reason: format!("expected `key = value`, found `{content}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::Field {
                    line: line_no,
                    field: key.to_string(),
                    reason: format!("unknown key (expected one of {})", KEYS.join(", ")),
                });
            }
            if value.is_empty() {
                return Err(ConfigError::Field {
                    line: line_no,
                    field: key.to_string(),
                    reason: "empty value".into(),
                });
            }
            if let Some((_, first)) = raw.values.get(key) {
                return Err(ConfigError::Field {
                    line: line_no,
                    field: key.to_string(),
                    reason: format!("already set on line {first}"),
                });
            }
            raw.values
                .insert(key.to_string(), (value.to_string(), line_no));
        }
        Ok(raw)
    }

    fn from_manifest(text: &str) -> Result<Self, ConfigError> {
        let obj: Map<String, Value> =
            serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
                line: e.line(),
                reason: format!("invalid manifest JSON: {e}"),
            })?;
        let mut raw = RawConfig::default();
        for key in KEYS {
            match obj.get(*key) {
                None | Some(Value::Null) => {}
                Some(Value::Number(n)) => {
                    raw.values.insert(key.to_string(), (n.to_string(), 0));
                }
                Some(other) => {
                    return Err(ConfigError::Invalid {
                        field: key.to_string(),
                        reason: format!("expected a number in the manifest, found {other}"),
                    })
                }
            }
        }
        Ok(raw)
    }

    /// Applies a `key=value` override on top of the file.
    pub fn set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let Some((key, value)) = assignment.split_once('=') else {
            return Err(ConfigError::Invalid {
                field: assignment.to_string(),
                reason: "override must look like key=value".into(),
            });
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::Invalid {
                field: key.to_string(),
                reason: "unknown key".into(),
            });
        }
        // an override of either yaw spelling replaces the other
        if key.starts_with("theta_a_") {
            self.values.remove("theta_a_rad");
            self.values.remove("theta_a_deg");
        }
        self.values
            .insert(key.to_string(), (value.trim().to_string(), 0));
        Ok(())
    }

    fn field_error(&self, key: &str, reason: String) -> ConfigError {
        match self.values.get(key) {
            Some((_, line)) if *line > 0 => ConfigError::Field {
                line: *line,
                field: key.to_string(),
                reason,
            },
            _ => ConfigError::Invalid {
                field: key.to_string(),
                reason,
            },
        }
    }

    fn float(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        let Some((text, _)) = self.values.get(key) else {
            return Ok(None);
        };
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Some(v)),
            _ => Err(self.field_error(key, format!("`{text}` is not a finite number"))),
        }
    }

    fn integer(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        let Some((text, _)) = self.values.get(key) else {
            return Ok(None);
        };
        text.parse::<u64>()
            .map(Some)
            .map_err(|_| self.field_error(key, format!("`{text}` is not a non-negative integer")))
    }

    fn require_float(&self, key: &'static str) -> Result<f64, ConfigError> {
        self.float(key)?.ok_or(ConfigError::Missing(key))
    }

    fn require_integer(&self, key: &'static str) -> Result<u64, ConfigError> {
        self.integer(key)?.ok_or(ConfigError::Missing(key))
    }

    pub fn resolve(&self) -> Result<ResolvedConfig, ConfigError> {
        let theta_a_rad = match (self.float("theta_a_rad")?, self.float("theta_a_deg")?) {
            (Some(_), Some(_)) => {
                return Err(self.field_error(
                    "theta_a_deg",
                    "set either theta_a_rad or theta_a_deg, not both".into(),
                ))
            }
            (Some(r), None) => r,
            (None, Some(d)) => d.to_radians(),
            (None, None) => return Err(ConfigError::Missing("theta_a_rad")),
        };
        let p_w = self.require_float("p_w")?;
        let cfg = ResolvedConfig {
            m: self.require_integer("m")? as usize,
            n: self.require_integer("n")? as usize,
            f_c_hz: self.require_float("f_c_hz")?,
            d_m: self.float("d_m")?,
            x_e_m: self.require_float("x_e_m")?,
            g_m: self.require_float("g_m")?,
            theta_a_rad,
            p_w,
            sigma2_w: self
                .float("sigma2_w")?
                .unwrap_or(p_w / 10f64.powf(DEFAULT_SNR_DB / 10.0)),
            alpha: self.float("alpha")?.unwrap_or(1.0),
            seed: self.integer("seed")?,
            bandwidth_hz: self.float("bandwidth_hz")?.unwrap_or(DEFAULT_BANDWIDTH_HZ),
            k: self.integer("k")?.unwrap_or(1) as u32,
        };
        cfg.scenario(0).map_err(|e| match e {
            ScenarioError::Field(field, reason) => self.field_error(field, reason),
        })?;
        Ok(cfg)
    }
}

/// A scenario file with defaults filled in. The seed stays optional so the
/// command line and environment can supply it.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub m: usize,
    pub n: usize,
    pub f_c_hz: f64,
    /// Element spacing; half a wavelength when absent.
    pub d_m: Option<f64>,
    pub x_e_m: f64,
    pub g_m: f64,
    pub theta_a_rad: f64,
    pub p_w: f64,
    pub sigma2_w: f64,
    pub alpha: f64,
    pub seed: Option<u64>,
    pub bandwidth_hz: f64,
    /// Null index for the solvers.
    pub k: u32,
}

enum ScenarioError {
    Field(&'static str, String),
}

impl ResolvedConfig {
    fn scenario(&self, seed: u64) -> Result<ScenarioConfig, ScenarioError> {
        let bad = |field: &'static str| {
            move |e: spwt_core::Error| ScenarioError::Field(field, e.to_string())
        };
        let array_field = match (self.m, self.n) {
            (0, _) => "m",
            (_, 0) => "n",
            _ => "f_c_hz",
        };
        let mut array = ArrayGeometry::half_wavelength(self.m, self.n, self.f_c_hz)
            .map_err(bad(array_field))?;
        if let Some(d) = self.d_m {
            array = array.with_spacing(d).map_err(bad("d_m"))?;
        }
        let power =
            PowerConfig::new(self.p_w, self.alpha, self.sigma2_w, self.sigma2_w).map_err(|e| {
                let field = match &e {
                    spwt_core::Error::InvalidParameter { name: "alpha", .. } => "alpha",
                    spwt_core::Error::InvalidParameter {
                        name: "total_power_w",
                        ..
                    } => "p_w",
                    _ => "sigma2_w",
                };
                ScenarioError::Field(field, e.to_string())
            })?;
        if !(self.x_e_m > 0.0) {
            return Err(ScenarioError::Field(
                "x_e_m",
                format!("Eve must sit on +X, got {}", self.x_e_m),
            ));
        }
        let scenario = ScenarioConfig {
            array,
            bob: Position3D::ground(0.0, 0.0),
            eve: Position3D::ground(self.x_e_m, 0.0),
            uav_height_m: self.g_m,
            yaw: YawAngle::new(self.theta_a_rad).map_err(bad("theta_a_rad"))?,
            power,
            bandwidth_hz: self.bandwidth_hz,
            seed,
        };
        scenario.validate().map_err(bad("g_m"))?;
        Ok(scenario)
    }

    /// The core scenario with the given seed.
    pub fn to_scenario(&self, seed: u64) -> ScenarioConfig {
        match self.scenario(seed) {
            Ok(s) => s,
            Err(_) => unreachable!("validated in RawConfig::resolve"),
        }
    }

    /// Every config key with its resolved value, for the manifest.
    pub fn echo(&self, seed: u64) -> Vec<(&'static str, Value)> {
        let num = |v: f64| Value::from(v);
        let spacing = self
            .d_m
            .unwrap_or_else(|| self.to_scenario(seed).array.spacing_m);
        vec![
            ("m", Value::from(self.m)),
            ("n", Value::from(self.n)),
            ("f_c_hz", num(self.f_c_hz)),
            ("d_m", num(spacing)),
            ("x_e_m", num(self.x_e_m)),
            ("g_m", num(self.g_m)),
            ("theta_a_rad", num(self.theta_a_rad)),
            ("p_w", num(self.p_w)),
            ("sigma2_w", num(self.sigma2_w)),
            ("alpha", num(self.alpha)),
            ("seed", Value::from(seed)),
            ("bandwidth_hz", num(self.bandwidth_hz)),
            ("k", Value::from(self.k)),
        ]
    }
}

/// `--seed`, then the file, then `SPWT_SEED`, then 0.
pub fn resolve_seed(
    flag: Option<u64>,
    file: Option<u64>,
    env: Option<&str>,
) -> Result<u64, ConfigError> {
    if let Some(s) = flag.or(file) {
        return Ok(s);
    }
    match env {
        Some(text) => text.trim().parse().map_err(|_| ConfigError::Invalid {
            field: "SPWT_SEED".into(),
            reason: format!("`{text}` is not a non-negative integer"),
        }),
        None => Ok(0),
    }
}
