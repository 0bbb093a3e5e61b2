//! Secure precise wireless transmission (SPWT) from a UAV-mounted planar array.
//!
//! A UAV carrying an `M x N` half-wavelength planar array serves a ground user
//! (Bob) while an eavesdropper (Eve) listens from another ground position. The
//! confidential beam is matched to Bob's line-of-sight steering vector and
//! artificial noise (AN) is projected into the orthogonal complement of it.
//! When the UAV is parked where Eve's steering vector is orthogonal to Bob's,
//! Eve receives no confidential power at all, so the secrecy rate reaches
//! `log2(1 + alpha P_s / sigma_B^2)` without spending anything on AN.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`geometry`]: node positions, look angles, canonical Bob/Eve frame.
//! * [`array`]: steering vectors and the Bob/Eve cross-correlation, both as a
//!   direct sum and as a product of two geometric series.
//! * [`signalmodel`]: beamformer/AN projector, SINR (analytic and Monte-Carlo)
//!   and secrecy rate.
//! * [`placement`]: the closed-form azimuth-locus solver, the bisection
//!   pitch-locus solver and a brute-force grid oracle.
//! * [`experiments`]: secrecy-rate sweeps over SNR and power split against
//!   seeded random deployments.
//!
//! Channel gains are pure steering vectors. There is no path loss, so Bob's
//! received signal power does not depend on range.

#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod array;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod grid;
pub mod placement;
pub mod scenario;
pub mod signalmodel;

pub use error::{Error, Result};
pub use scenario::ScenarioConfig;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
