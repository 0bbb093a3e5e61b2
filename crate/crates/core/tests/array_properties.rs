mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spwt_core::array::{
    correlation_factors, cross_correlation, cross_correlation_closed_form, steering_vector,
    ArrayGeometry,
};
use spwt_core::geometry::{look_angles, LookAngles, Position3D, YawAngle};

use common::brute_force_correlation;

fn geom(m: usize, n: usize) -> ArrayGeometry {
    ArrayGeometry::half_wavelength(m, n, 3e9).unwrap()
}

fn angles(azimuth_rel: f64, pitch: f64) -> LookAngles {
    LookAngles {
        azimuth: azimuth_rel,
        pitch,
        azimuth_rel,
    }
}

proptest! {
    #[test]
    fn steering_vector_is_unit_norm_with_equal_moduli(
        m in 1usize..=8, n in 1usize..=8, az in 0.0..TAU, pitch in 0.0..=FRAC_PI_2,
    ) {
        let h = steering_vector(&geom(m, n), az, pitch);
        prop_assert!((h.norm() - 1.0).abs() <= 1e-12);
        let expected = 1.0 / ((m * n) as f64).sqrt();
        for z in h.as_slice() {
            prop_assert!((z.norm() - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn correlation_is_bounded_and_conjugate_symmetric(
        m in 1usize..=8, n in 1usize..=8,
        az_a in 0.0..TAU, p_a in 0.0..=FRAC_PI_2, az_b in 0.0..TAU, p_b in 0.0..=FRAC_PI_2,
    ) {
        let g = geom(m, n);
        let a = steering_vector(&g, az_a, p_a);
        let b = steering_vector(&g, az_b, p_b);
        let ab = cross_correlation(&a, &b).unwrap();
        let ba = cross_correlation(&b, &a).unwrap();
        prop_assert!(ab.norm() <= 1.0 + 1e-12);
        prop_assert!((ab - ba.conj()).norm() <= 1e-14);
    }
}

#[test]
fn closed_form_matches_direct_sum_on_ten_thousand_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for trial in 0..10_000 {
        let m = rng.random_range(1..=8);
        let n = rng.random_range(1..=8);
        let g = geom(m, n);
        let b = (
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..=FRAC_PI_2),
        );
        // every fourth draw sits on one of the special loci
        let e = match trial % 4 {
            1 => (rng.random_range(0.0..TAU), b.1),
            2 => (b.0, rng.random_range(0.0..=FRAC_PI_2)),
            _ => (
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..=FRAC_PI_2),
            ),
        };
        let closed = cross_correlation_closed_form(&g, &angles(b.0, b.1), &angles(e.0, e.1));
        let direct = brute_force_correlation(m, n, b, e);
        let via_vectors = cross_correlation(
            &steering_vector(&g, e.0, e.1),
            &steering_vector(&g, b.0, b.1),
        )
        .unwrap();
        worst = worst
            .max((closed - direct).norm())
            .max((via_vectors - direct).norm());
    }
    assert!(worst <= 1e-10, "worst closed-form/direct-sum gap {worst:e}");
}

#[test]
fn closed_form_matches_near_removable_singularities() {
    // increments a hair away from multiples of 2pi
    let g = geom(8, 8);
    for eps in [0.0, 1e-12, 1e-10, 1e-9, 2e-9, 1e-7, 1e-5] {
        let b = (0.0, 0.0);
        let e = ((1.0 - eps / PI).acos(), 0.0);
        let closed = cross_correlation_closed_form(&g, &angles(b.0, b.1), &angles(e.0, e.1));
        let direct = brute_force_correlation(8, 8, b, e);
        assert!(
            (closed - direct).norm() <= 1e-10,
            "eps {eps}: {}",
            (closed - direct).norm()
        );
    }
    let same = angles(1.0, 0.3);
    let (row, col) = correlation_factors(&g, &same, &same);
    assert_eq!((row.re, col.re), (1.0, 1.0));
}

#[test]
fn reference_optimum_zeroes_the_row_factor() {
    let g = geom(4, 4);
    let yaw = YawAngle::new(PI / 4.0).unwrap();
    let y = 397_500f64.sqrt();
    let uav = Position3D::new(250.0, y, 200.0);
    let b = look_angles(&uav, &Position3D::ground(0.0, 0.0), yaw).unwrap();
    let e = look_angles(&uav, &Position3D::ground(500.0, 0.0), yaw).unwrap();
    assert_eq!(b.pitch, e.pitch);

    let lhs = 4.0 * PI * (e.azimuth_rel.cos() - b.azimuth_rel.cos()) * e.pitch.cos();
    assert!((lhs + TAU).abs() <= 1e-9, "M pi dcos cos(phi) = {lhs}");

    let (row, _) = correlation_factors(&g, &b, &e);
    assert!(row.norm() <= 1e-12);
    let h_b = steering_vector(&g, b.azimuth_rel, b.pitch);
    let h_e = steering_vector(&g, e.azimuth_rel, e.pitch);
    assert!(cross_correlation(&h_e, &h_b).unwrap().norm() <= 1e-10);
}

#[test]
fn equal_pitch_nulls_are_sound() {
    // choose phi and theta'_B, then place theta'_E so that
    // M pi (cos theta'_E - cos theta'_B) cos phi = +/- 2 k pi
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 2_000 {
        let m = rng.random_range(2..=8usize);
        let n = rng.random_range(1..=8usize);
        let k = rng.random_range(1..(2 * m) as u32) as f64;
        if (k as usize).is_multiple_of(m) {
            continue;
        }
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let pitch = rng.random_range(0.0..1.4f64);
        let az_b = rng.random_range(0.0..TAU);
        let cos_e = az_b.cos() + sign * 2.0 * k / (m as f64 * pitch.cos());
        if cos_e.abs() > 1.0 {
            continue;
        }
        let az_e = if rng.random_bool(0.5) {
            cos_e.acos()
        } else {
            -cos_e.acos()
        };
        let direct = brute_force_correlation(m, n, (az_b, pitch), (az_e, pitch));
        let closed =
            cross_correlation_closed_form(&geom(m, n), &angles(az_b, pitch), &angles(az_e, pitch));
        assert!(direct.norm() <= 1e-10, "m={m} k={k}: {}", direct.norm());
        assert!(closed.norm() <= 1e-10);
        checked += 1;
    }
}
