use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The UAV sits (numerically) straight above a ground node, so the
    /// azimuth toward it is undefined.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("dimension mismatch: {left} vs {right} array elements")]
    DimensionMismatch { left: usize, right: usize },

    #[error("correlation magnitude {magnitude} exceeds 1")]
    InvalidCorrelation { magnitude: f64 },

    /// Yaw angles on the axes (`p * pi/2`) make the null equations singular,
    /// and yaw must lie in the open interval `(0, 2pi)`.
    #[error("invalid yaw angle {theta_a} rad: must lie in (0, 2pi) and differ from p*pi/2")]
    InvalidYaw { theta_a: f64 },

    /// The null index is a multiple of a dimension of the array, which puts
    /// the zero of the geometric series on top of its removable singularity.
    #[error("invalid null index {index}: must be positive and not a multiple of M={m} or N={n}")]
    InvalidIndex { index: u32, m: usize, n: usize },

    #[error("infeasible geometry: {0}")]
    InfeasibleGeometry(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}
