//! Inclusive stepped ranges (`start:step:stop`).

use alloc::{format, vec::Vec};

// unused whenever std is linked and the inherent f64 methods win
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// `start, start + step, ...` up to and including `stop` (within a small
/// relative slack so `0:0.1:1` ends at `1`).
pub fn stepped(start: f64, step: f64, stop: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && step.is_finite() && stop.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: format!("grid bounds must be finite, got {start}:{step}:{stop}"),
        });
    }
    if !(step > 0.0) {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: format!("grid step must be positive, got {step}"),
        });
    }
    if stop < start {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: format!("grid stop {stop} is below start {start}"),
        });
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_snr_grid() {
        let g = stepped(0.0, 2.0, 20.0).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[10], 20.0);
    }

    #[test]
    fn alpha_grid_reaches_one() {
        let g = stepped(0.0, 0.1, 1.0).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[10], 1.0);
    }

    #[test]
    fn bad_grids() {
        assert!(stepped(0.0, 0.0, 1.0).is_err());
        assert!(stepped(0.0, -1.0, 1.0).is_err());
        assert!(stepped(2.0, 1.0, 1.0).is_err());
        assert_eq!(stepped(-1000.0, 5.0, 1000.0).unwrap().len(), 401);
    }
}
