mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spwt_core::geometry::{Position3D, YawAngle};
use spwt_core::placement::{
    azimuth_radicand, grid_null_oracle, null_residual_at, pitch_cosine_difference,
    solve_azimuth_scheme, solve_azimuth_scheme_detailed, solve_pitch_scheme,
    solve_pitch_scheme_all, verify_null, Locus, NullFactor, NullIndex, Side,
};
use spwt_core::signalmodel::evaluate_link;
use spwt_core::{Error, ScenarioConfig};

use common::{brute_force_residual, dense_scan_minima, random_feasible_scenario, scenario};

fn k1(s: &ScenarioConfig) -> NullIndex {
    NullIndex::new(1, &s.array).unwrap()
}

#[test]
fn row_feasibility_matches_the_threshold_both_ways() {
    let mut checked = (0, 0);
    for m in [2usize, 3, 4, 8] {
        for yaw_deg in (5..360).step_by(10) {
            let yaw = (yaw_deg as f64).to_radians();
            for g in [20.0, 75.0, 150.0, 300.0, 900.0, 4000.0] {
                for x_e in [80.0, 500.0, 1300.0] {
                    let s = scenario(m, 3, x_e, g, yaw);
                    let m_f = m as f64;
                    let lhs = m_f * m_f * yaw.cos().powi(2) * x_e * x_e;
                    let rhs = x_e * x_e + 4.0 * g * g;
                    let feasible = lhs >= rhs;
                    assert_eq!(
                        azimuth_radicand(&s, k1(&s), NullFactor::Row) >= 0.0,
                        feasible
                    );
                    let row_found = solve_azimuth_scheme_detailed(&s, k1(&s))
                        .map(|r| r.solutions.iter().any(|p| p.factor_used == NullFactor::Row))
                        .unwrap_or(false);
                    assert_eq!(row_found, feasible, "m={m} yaw={yaw_deg} g={g} x_e={x_e}");
                    if feasible {
                        checked.0 += 1
                    } else {
                        checked.1 += 1
                    }
                }
            }
        }
    }
    assert!(checked.0 > 50 && checked.1 > 50, "{checked:?}");
}

#[test]
fn every_returned_solution_is_a_null() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let s = random_feasible_scenario(&mut rng);
        for sol in solve_azimuth_scheme(&s, k1(&s)).unwrap() {
            assert!(verify_null(&sol, &s) <= 1e-8);
            assert!((sol.position.x - s.eve_distance() / 2.0).abs() < 1e-9);
            let independent = brute_force_residual(
                s.array.m_rows,
                s.array.n_cols,
                s.eve_distance(),
                s.uav_height_m,
                s.yaw.radians(),
                sol.position.x,
                sol.position.y,
            );
            assert!(independent <= 1e-8, "{independent}");
        }
        if let Ok(sols) = solve_pitch_scheme_all(&s, k1(&s)) {
            for sol in sols {
                assert!(verify_null(&sol, &s) <= 1e-8);
                assert_eq!(sol.position.y, 0.0);
                assert!(sol.position.x < 0.0 || sol.position.x > s.eve_distance());
            }
        }
    }
}

#[test]
fn closed_form_agrees_with_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let s = random_feasible_scenario(&mut rng);
        let sols = solve_azimuth_scheme(&s, k1(&s)).unwrap();
        let reach = sols.iter().map(|p| p.position.y.abs()).fold(0.0, f64::max) + 20.0;
        let minima = grid_null_oracle(
            &s,
            Locus::MidpointLine {
                y_min: -reach,
                y_max: reach,
            },
            0.5,
        )
        .unwrap();
        for sol in &sols {
            assert!(
                minima
                    .iter()
                    .any(|(p, _)| (p.y - sol.position.y).abs() <= 0.5),
                "no oracle minimum near y = {}",
                sol.position.y
            );
        }
    }
}

#[test]
fn oracle_finds_reference_minima_symmetrically() {
    let s = ScenarioConfig::reference();
    let minima = grid_null_oracle(
        &s,
        Locus::MidpointLine {
            y_min: -2000.0,
            y_max: 2000.0,
        },
        1.0,
    )
    .unwrap();
    for target in [630.476, -630.476] {
        assert!(minima.iter().any(|(p, _)| (p.y - target).abs() <= 1.0));
    }
    let mut ys: Vec<f64> = minima.iter().map(|(p, _)| p.y).collect();
    ys.sort_by(f64::total_cmp);
    let mut mirrored: Vec<f64> = ys.iter().map(|y| -y).collect();
    mirrored.sort_by(f64::total_cmp);
    assert_eq!(ys.len(), mirrored.len());
    for (a, b) in ys.iter().zip(&mirrored) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn midpoint_residual_is_even_in_y() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let s = random_feasible_scenario(&mut rng);
        let x = s.eve_distance() / 2.0;
        let y = rng.random_range(1.0..3000.0);
        let up = null_residual_at(&s, &Position3D::new(x, y, s.uav_height_m));
        let down = null_residual_at(&s, &Position3D::new(x, -y, s.uav_height_m));
        assert!((up - down).abs() < 1e-12);
    }
}

#[test]
fn nulls_are_sharp() {
    let s = ScenarioConfig::reference();
    for sol in solve_azimuth_scheme(&s, k1(&s)).unwrap() {
        let at = verify_null(&sol, &s);
        let mut moved = sol.position;
        moved.y += 5.0;
        let off = null_residual_at(&s, &moved);
        assert!(off >= 10.0 * at, "{at} {off}");
    }
    assert!(null_residual_at(&s, &Position3D::new(100.0, 100.0, 200.0)) > 1e-3);
}

#[test]
fn solutions_reach_the_noise_limited_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let alpha = rng.random_range(0.05..=1.0);
        let snr = rng.random_range(-5.0..25.0);
        let s = random_feasible_scenario(&mut rng)
            .at_snr(snr, alpha)
            .unwrap();
        let mut sols = solve_azimuth_scheme(&s, k1(&s)).unwrap();
        sols.extend(solve_pitch_scheme_all(&s, k1(&s)).unwrap_or_default());
        let p = s.power;
        let limit = (1.0 + p.alpha * p.total_power_w / p.noise_b_w).log2();
        for sol in sols {
            let link = evaluate_link(&s, &sol.position).unwrap();
            assert!(link.sinr_e <= 1e-15, "{}", link.sinr_e);
            assert!((link.secrecy_rate_bps_hz - limit).abs() <= 1e-9);
            assert!((sol.sr_at_solution - limit).abs() <= 1e-9);
        }
    }
}

#[test]
fn pitch_difference_is_monotone_on_each_branch() {
    // Delta = cos(phi_E) - cos(phi_B) rises toward 0 as the UAV moves in
    // from -inf, and falls away from 0 past Eve: strictly increasing in X_A
    // on both outer branches, strictly decreasing in the distance u.
    let s = ScenarioConfig::reference();
    let us: Vec<f64> = (0..1000).map(|i| 1e-3 * 1.02f64.powi(i)).collect();
    for side in [Side::Left, Side::Right] {
        let d: Vec<f64> = us
            .iter()
            .map(|&u| pitch_cosine_difference(&s, side, u).unwrap())
            .collect();
        for w in d.windows(2) {
            assert!(w[1].abs() < w[0].abs());
            match side {
                Side::Left => assert!(w[0] > 0.0 && w[1] < w[0]),
                Side::Right => assert!(w[0] < 0.0 && w[1] > w[0]),
            }
        }
    }
}

#[test]
fn pitch_left_root_matches_dense_scan() {
    let s = ScenarioConfig::reference();
    let sol = solve_pitch_scheme(&s, k1(&s), Side::Left, NullFactor::Row).unwrap();
    assert!(sol.equation_residual <= 1e-9);
    assert!(sol.null_residual <= 1e-8);
    assert!((sol.position.x + 47.7527).abs() < 1e-3);
    let f = |x: f64| brute_force_residual(4, 4, 500.0, 200.0, FRAC_PI_4, x, 0.0);
    let minima = dense_scan_minima(f, -60.0, -40.0, 0.01);
    assert!(minima
        .iter()
        .any(|(x, v)| (x - sol.position.x).abs() <= 0.01 && *v < 1e-3));
}

#[test]
fn pitch_right_root_mirrors_the_left() {
    let s = ScenarioConfig::reference();
    let left = solve_pitch_scheme(&s, k1(&s), Side::Left, NullFactor::Row).unwrap();
    let right = solve_pitch_scheme(&s, k1(&s), Side::Right, NullFactor::Row).unwrap();
    assert!(right.position.x > 500.0);
    assert!(right.null_residual <= 1e-8 && right.equation_residual <= 1e-9);
    assert!(((right.position.x - 500.0) + left.position.x).abs() < 1e-6);
}

#[test]
fn unreachable_pitch_target_is_infeasible() {
    // 2 / (M |cos theta'_E|) > 1 cannot be met: |Delta| < 1 everywhere.
    let s = scenario(2, 2, 500.0, 200.0, 1.3);
    assert!(matches!(
        solve_pitch_scheme(&s, k1(&s), Side::Left, NullFactor::Row),
        Err(Error::InfeasibleGeometry(_))
    ));
}

#[test]
fn axis_yaws_are_rejected_by_both_solvers() {
    for p in 1..4 {
        let mut s = ScenarioConfig::reference();
        s.yaw = YawAngle::new(p as f64 * FRAC_PI_2).unwrap();
        assert!(matches!(
            solve_azimuth_scheme(&s, k1(&s)),
            Err(Error::InvalidYaw { .. })
        ));
        assert!(matches!(
            solve_pitch_scheme_all(&s, k1(&s)),
            Err(Error::InvalidYaw { .. })
        ));
    }
    assert!(YawAngle::new(0.0).is_err() && YawAngle::new(2.0 * PI).is_err());
}

#[test]
fn index_multiples_of_the_array_size_are_rejected() {
    let s = scenario(4, 6, 500.0, 200.0, FRAC_PI_4);
    for bad in [0, 4, 6, 8, 12] {
        assert!(matches!(
            NullIndex::new(bad, &s.array),
            Err(Error::InvalidIndex { .. })
        ));
    }
    for ok in [1, 2, 3, 5, 7] {
        assert!(NullIndex::new(ok, &s.array).is_ok());
    }
}
