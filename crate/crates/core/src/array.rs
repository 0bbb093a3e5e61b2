//! Planar-array steering vectors and the Bob/Eve cross-correlation.
//!
//! Element `(m, n)` (zero-based, row `m` parallel to the flight direction)
//! of the steering vector toward array-frame azimuth `theta'` and pitch `phi`
//! is
//!
//! ```text
//! h[m, n] = exp(-j k d (m cos theta' + n sin theta') cos phi) / sqrt(M N)
//! ```
//!
//! with `k = 2 pi f_c / c`. Storage is row-major: index `m * N + n`.
//!
//! The phase is linear in `(m, n)`, so `h_E^H h_B` always factors into a row
//! geometric series times a column geometric series. Its nulls are the zeros
//! of either factor.

use alloc::{format, vec::Vec};
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
// unused whenever std is linked and the inherent f64 methods win
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::LookAngles;
use crate::SPEED_OF_LIGHT;

/// Phase increments closer than this to a multiple of `2pi` are treated as the
/// removable singularity of the geometric ratio.
pub const SINGULARITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    pub m_rows: usize,
    pub n_cols: usize,
    pub carrier_hz: f64,
    pub spacing_m: f64,
}

impl ArrayGeometry {
    /// `M x N` array with half-wavelength spacing `d = c / (2 f_c)`.
    pub fn half_wavelength(m_rows: usize, n_cols: usize, carrier_hz: f64) -> Result<Self> {
        if m_rows == 0 || n_cols == 0 {
            return Err(Error::InvalidParameter {
                name: "array",
                reason: format!("array dimensions must be positive, got {m_rows}x{n_cols}"),
            });
        }
        if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
            return Err(Error::InvalidParameter {
                name: "carrier_hz",
                reason: format!("carrier frequency must be positive, got {carrier_hz}"),
            });
        }
        Ok(ArrayGeometry {
            m_rows,
            n_cols,
            carrier_hz,
            spacing_m: SPEED_OF_LIGHT / (2.0 * carrier_hz),
        })
    }

    pub fn with_spacing(self, spacing_m: f64) -> Result<Self> {
        if !(spacing_m.is_finite() && spacing_m > 0.0) {
            return Err(Error::InvalidParameter {
                name: "spacing_m",
                reason: format!("element spacing must be positive, got {spacing_m}"),
            });
        }
        Ok(ArrayGeometry { spacing_m, ..self })
    }

    pub fn element_count(&self) -> usize {
        self.m_rows * self.n_cols
    }

    /// `2 pi f_c d / c`: the phase advance between neighbouring elements per
    /// unit direction cosine. Equals `pi` for half-wavelength spacing.
    pub fn phase_scale(&self) -> f64 {
        TAU * self.carrier_hz * self.spacing_m / SPEED_OF_LIGHT
    }
}

/// Unit-norm array response, row-major over `(m, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    m_rows: usize,
    n_cols: usize,
    entries: Vec<Complex64>,
}

impl SteeringVector {
    /// Wraps raw entries. The caller is responsible for unit norm.
    pub fn from_entries(m_rows: usize, n_cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != m_rows * n_cols {
            return Err(Error::DimensionMismatch {
                left: m_rows * n_cols,
                right: entries.len(),
            });
        }
        Ok(SteeringVector {
            m_rows,
            n_cols,
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m_rows, self.n_cols)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    /// Zero-based element `(m, n)`.
    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.entries[m * self.n_cols + n]
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

pub fn steering_vector(geom: &ArrayGeometry, azimuth_rel: f64, pitch: f64) -> SteeringVector {
    let (m_rows, n_cols) = (geom.m_rows, geom.n_cols);
    let scale = 1.0 / ((m_rows * n_cols) as f64).sqrt();
    let k = geom.phase_scale() * pitch.cos();
    let (row_cos, col_sin) = (k * azimuth_rel.cos(), k * azimuth_rel.sin());
    let mut entries = Vec::with_capacity(m_rows * n_cols);
    for m in 0..m_rows {
        for n in 0..n_cols {
            let phase = -(m as f64 * row_cos + n as f64 * col_sin);
            entries.push(Complex64::from_polar(scale, phase));
        }
    }
    SteeringVector {
        m_rows,
        n_cols,
        entries,
    }
}

pub fn steering_vector_for(geom: &ArrayGeometry, angles: &LookAngles) -> SteeringVector {
    steering_vector(geom, angles.azimuth_rel, angles.pitch)
}

/// `h_e^H h_b`.
pub fn cross_correlation(h_e: &SteeringVector, h_b: &SteeringVector) -> Result<Complex64> {
    if h_e.len() != h_b.len() {
        return Err(Error::DimensionMismatch {
            left: h_e.len(),
            right: h_b.len(),
        });
    }
    Ok(h_e
        .entries
        .iter()
        .zip(&h_b.entries)
        .map(|(e, b)| e.conj() * b)
        .sum())
}

/// `sum_{i=0}^{count-1} exp(j i delta)`.
///
/// Evaluated as `exp(j (count-1) delta / 2) sin(count delta / 2) / sin(delta / 2)`
/// after reducing `delta` into `(-pi, pi]`, which is the geometric ratio
/// `(e^{j count delta} - 1) / (e^{j delta} - 1)` without its cancellation near
/// the removable singularity. At the singularity the sine ratio is replaced
/// by its limit `count`.
pub fn geometric_sum(count: usize, delta: f64) -> Complex64 {
    let d = delta - TAU * (delta / TAU).round();
    let d = if d <= -PI { d + TAU } else { d };
    let c = count as f64;
    // the sine ratio tends to `count`; the phase term is kept so the result
    // stays first-order accurate inside the tolerance band
    let amplitude = if d.abs() < SINGULARITY_TOLERANCE {
        c
    } else {
        (c * d / 2.0).sin() / (d / 2.0).sin()
    };
    Complex64::from_polar(amplitude, (c - 1.0) * d / 2.0)
}

/// Per-axis phase increments of `conj(h_E) h_B` from element to element.
///
/// On the equal-pitch locus the row increment is written as
/// `k (cos theta'_E - cos theta'_B) cos phi_E`; on the equal-azimuth locus as
/// `k cos theta'_E (cos phi_E - cos phi_B)`. Elsewhere the general difference
/// of direction cosines is used. All three agree algebraically.
pub fn phase_increments(geom: &ArrayGeometry, b: &LookAngles, e: &LookAngles) -> (f64, f64) {
    let k = geom.phase_scale();
    let (sb, cb) = b.azimuth_rel.sin_cos();
    let (se, ce) = e.azimuth_rel.sin_cos();
    if b.pitch == e.pitch {
        let cp = e.pitch.cos();
        (k * (ce - cb) * cp, k * (se - sb) * cp)
    } else if b.azimuth_rel == e.azimuth_rel {
        let dp = e.pitch.cos() - b.pitch.cos();
        (k * ce * dp, k * se * dp)
    } else {
        let (cpb, cpe) = (b.pitch.cos(), e.pitch.cos());
        (k * (ce * cpe - cb * cpb), k * (se * cpe - sb * cpb))
    }
}

/// Normalized row and column factors: `h_E^H h_B = row * column`, with the
/// row factor `(1/M) sum_m ...` and the column factor `(1/N) sum_n ...`.
pub fn correlation_factors(
    geom: &ArrayGeometry,
    angles_b: &LookAngles,
    angles_e: &LookAngles,
) -> (Complex64, Complex64) {
    let (row_inc, col_inc) = phase_increments(geom, angles_b, angles_e);
    (
        geometric_sum(geom.m_rows, row_inc) / geom.m_rows as f64,
        geometric_sum(geom.n_cols, col_inc) / geom.n_cols as f64,
    )
}

/// `h_E^H h_B` as a product of two geometric series.
pub fn cross_correlation_closed_form(
    geom: &ArrayGeometry,
    angles_b: &LookAngles,
    angles_e: &LookAngles,
) -> Complex64 {
    let (row, col) = correlation_factors(geom, angles_b, angles_e);
    row * col
}
