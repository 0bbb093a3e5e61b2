//! Node coordinates and the angles a UAV-mounted array sees toward ground nodes.
//!
//! The working frame puts Bob at the origin and Eve on the positive X axis,
//! with the UAV at `(x_a, y_a, g)`. The azimuth toward a ground node is the
//! direction of the horizontal vector from the node to the UAV, so
//! `cos(theta_B) = X_A / sqrt(X_A^2 + Y_A^2)`. The pitch is the elevation of
//! that same vector: `sin(phi) = g / slant range`. Azimuths are rotated into
//! the array frame by subtracting the yaw angle `theta_A`.

use core::f64::consts::{FRAC_PI_2, PI, TAU};

use alloc::format;
// unused whenever std is linked and the inherent f64 methods win
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Horizontal distance (m) below which the azimuth toward a node is undefined.
pub const DEGENERATE_HORIZONTAL_DISTANCE: f64 = 1e-9;

/// Distance (rad) from a multiple of `pi/2` at which a yaw angle is rejected
/// by the placement solvers.
pub const YAW_AXIS_TOLERANCE: f64 = 1e-9;

/// Tolerance used by [`midpoint_symmetry_check`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Position3D {
    pub x: f64,
    pub y: f64,
    /// Altitude. Ground nodes have `z = 0`, the UAV flies at `z = g > 0`.
    pub z: f64,
}

impl Position3D {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Position3D { x, y, z }
    }

    pub const fn ground(x: f64, y: f64) -> Self {
        Position3D { x, y, z: 0.0 }
    }

    pub fn horizontal_distance(&self, other: &Position3D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn distance(&self, other: &Position3D) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// UAV heading relative to the Bob-to-Eve axis, in `(0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YawAngle(f64);

impl YawAngle {
    /// Accepts any angle strictly inside `(0, 2pi)`. Axis-aligned headings are
    /// representable here; the solvers reject them separately through
    /// [`YawAngle::check_solver_feasible`].
    pub fn new(theta_a: f64) -> Result<Self> {
        if theta_a.is_finite() && theta_a > 0.0 && theta_a < TAU {
            Ok(YawAngle(theta_a))
        } else {
            Err(Error::InvalidYaw { theta_a })
        }
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::new(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Distance to the closest multiple of `pi/2`.
    pub fn axis_offset(self) -> f64 {
        let q = self.0 / FRAC_PI_2;
        (q - q.round()).abs() * FRAC_PI_2
    }

    /// With the yaw on an axis, one of `cos(theta_A)`, `sin(theta_A)` vanishes
    /// and the null equations lose a factor.
    pub fn check_solver_feasible(self) -> Result<Self> {
        if self.axis_offset() < YAW_AXIS_TOLERANCE {
            Err(Error::InvalidYaw { theta_a: self.0 })
        } else {
            Ok(self)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LookAngles {
    /// Azimuth in `[0, 2pi)`.
    pub azimuth: f64,
    /// Elevation in `[0, pi/2]`.
    pub pitch: f64,
    /// Azimuth in the array frame, `azimuth - theta_A` wrapped to `[0, 2pi)`.
    pub azimuth_rel: f64,
}

/// Wraps an angle into `[0, 2pi)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let r = theta % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed difference `a - b` reduced to `(-pi, pi]`.
pub fn angle_difference(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Angles toward a ground `target` as seen from the array on `uav`.
pub fn look_angles(uav: &Position3D, target: &Position3D, yaw: YawAngle) -> Result<LookAngles> {
    if !(uav.z > 0.0) {
        return Err(Error::InvalidParameter {
            name: "uav.z",
            reason: format!("UAV altitude must be positive, got {}", uav.z),
        });
    }
    let dx = uav.x - target.x;
    let dy = uav.y - target.y;
    let horizontal = dx.hypot(dy);
    if horizontal < DEGENERATE_HORIZONTAL_DISTANCE {
        return Err(Error::DegenerateGeometry(format!(
            "UAV at ({}, {}) is directly above the node at ({}, {})",
            uav.x, uav.y, target.x, target.y
        )));
    }
    let azimuth = wrap_angle(dy.atan2(dx));
    let pitch = (uav.z - target.z).atan2(horizontal);
    Ok(LookAngles {
        azimuth,
        pitch,
        azimuth_rel: wrap_angle(azimuth - yaw.radians()),
    })
}

/// True when the UAV sits on the perpendicular bisector of Bob and Eve, i.e.
/// `phi_B = phi_E` and `theta_B = pi - theta_E`. Positions are in the
/// canonical frame (Bob at the origin, Eve on `+X`).
pub fn midpoint_symmetry_check(uav: &Position3D, bob: &Position3D, eve: &Position3D) -> bool {
    // Yaw does not enter either condition.
    let yaw = YawAngle(FRAC_PI_2 / 2.0);
    let (Ok(b), Ok(e)) = (look_angles(uav, bob, yaw), look_angles(uav, eve, yaw)) else {
        return false;
    };
    (b.pitch - e.pitch).abs() <= SYMMETRY_TOLERANCE
        && angle_difference(b.azimuth, PI - e.azimuth).abs() <= SYMMETRY_TOLERANCE
}

/// Rigid ground-plane transform (translation then rotation about Z) that
/// takes arbitrary Bob/Eve coordinates to the canonical frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameTransform {
    /// Added to a raw point before rotating.
    pub translation: (f64, f64),
    /// Rotation (rad) applied after translation.
    pub rotation: f64,
    cos_r: f64,
    sin_r: f64,
}

impl FrameTransform {
    pub fn identity() -> Self {
        Self::new((0.0, 0.0), 0.0)
    }

    fn new(translation: (f64, f64), rotation: f64) -> Self {
        FrameTransform {
            translation,
            rotation,
            cos_r: rotation.cos(),
            sin_r: rotation.sin(),
        }
    }

    /// Raw frame to canonical frame. Altitude is unchanged.
    pub fn apply(&self, p: &Position3D) -> Position3D {
        let x = p.x + self.translation.0;
        let y = p.y + self.translation.1;
        Position3D::new(
            self.cos_r * x - self.sin_r * y,
            self.sin_r * x + self.cos_r * y,
            p.z,
        )
    }

    /// Canonical frame back to the raw frame.
    pub fn invert(&self, p: &Position3D) -> Position3D {
        let x = self.cos_r * p.x + self.sin_r * p.y;
        let y = -self.sin_r * p.x + self.cos_r * p.y;
        Position3D::new(x - self.translation.0, y - self.translation.1, p.z)
    }
}

/// Builds the transform mapping `bob_raw` to the origin and `eve_raw` to
/// `(|eve_raw - bob_raw|, 0, 0)`.
pub fn canonicalize_frame(bob_raw: &Position3D, eve_raw: &Position3D) -> Result<FrameTransform> {
    let dx = eve_raw.x - bob_raw.x;
    let dy = eve_raw.y - bob_raw.y;
    if dx.hypot(dy) < DEGENERATE_HORIZONTAL_DISTANCE {
        return Err(Error::DegenerateGeometry(format!(
            "Bob and Eve coincide at ({}, {})",
            bob_raw.x, bob_raw.y
        )));
    }
    let rotation = -dy.atan2(dx);
    Ok(FrameTransform::new((-bob_raw.x, -bob_raw.y), rotation))
}
