use std::f64::consts::PI;

use super::*;
use crate::analytic::{exact_phase, exact_scattering_length};

const MORSE_D_OVER_A: f64 = 0.8668 / 0.3408;

fn exp(s: f64) -> PotentialModel {
    PotentialModel::exponential(s, 1.0).unwrap()
}

fn hulthen(s: f64) -> PotentialModel {
    PotentialModel::hulthen(s, 1.0).unwrap()
}

fn morse(s: f64) -> PotentialModel {
    PotentialModel::morse(s, 1.0, MORSE_D_OVER_A).unwrap()
}

fn deuteron() -> PotentialModel {
    PotentialModel::morse(0.33509414149514, 0.3408, 0.8668).unwrap()
}

fn cfg(n: usize, r: f64) -> SolveConfig {
    SolveConfig::new(0, n, r).unwrap()
}

// tan(d1 - d2), insensitive to the branch of either phase
fn tan_gap(t1: f64, t2: f64) -> f64 {
    (t1 - t2) / (1.0 + t1 * t2)
}

#[test]
fn free_problem_has_no_phase() {
    let m = exp(0.0);
    let c = cfg(64, 20.0);
    for p in [0.3, 1.0, 2.5] {
        let t = schrod_phase_shift(&m, p, &c).unwrap().tan_delta;
        assert!(t.abs() < 1e-12, "{t}");
        assert_eq!(volterra_phase_shift(&m, p, &c).unwrap().tan_delta, 0.0);
        let comp = composite_solve(&m, p, &c.clone().with_equal_partitions(3).unwrap()).unwrap();
        assert!(comp.output.tan_delta.abs() < 1e-12);
    }
    assert!(schrod_scattering_length(&m, &c).unwrap().value.abs() < 1e-12);
    assert_eq!(volterra_scattering_length(&m, &c).unwrap().value, 0.0);
    assert_eq!(fredholm_determinant(&m, 0.7, &c).unwrap().value, 1.0);
}

#[test]
fn exponential_phase_against_oracle() {
    let m = exp(0.8);
    let exact = exact_phase(&m, 0, 1.0).unwrap().tan_delta;
    let out = schrod_phase_shift(&m, 1.0, &cfg(48, 25.0)).unwrap();
    assert!(
        (out.tan_delta - exact).abs() < 1e-10,
        "{} vs {exact}",
        out.tan_delta
    );
    assert!(
        out.diagnostics.warnings.is_empty(),
        "{:?}",
        out.diagnostics.warnings
    );
    let v = volterra_phase_shift(&m, 1.0, &cfg(48, 25.0)).unwrap();
    assert!((v.tan_delta - exact).abs() < 1e-10);
}

#[test]
fn volterra_and_schrodinger_agree_at_half() {
    let m = exp(0.8);
    let c = cfg(64, 30.0);
    let a = schrod_phase_shift(&m, 0.5, &c).unwrap().tan_delta;
    let b = volterra_phase_shift(&m, 0.5, &c).unwrap().tan_delta;
    assert!((a - b).abs() < 1e-10);
}

#[test]
fn morse_phase_crosses_zero() {
    let m = morse(0.2);
    let c = cfg(64, 30.0);
    let deltas: Vec<f64> = (1..=40)
        .map(|i| schrod_phase_shift(&m, 0.05 * i as f64, &c).unwrap().delta)
        .collect();
    let unwrapped = unwrap_phases(&deltas);
    let flips = unwrapped
        .windows(2)
        .filter(|w| w[0] > 0.0 && w[1] <= 0.0)
        .count();
    assert_eq!(flips, 1, "{unwrapped:?}");
}

#[test]
fn hulthen_sweep_relative_error() {
    let m = hulthen(0.8);
    let c = cfg(64, 30.0);
    let mut total = 0.0;
    for i in 1..=100 {
        let xi = 0.02 * i as f64;
        let exact = exact_phase(&m, 0, xi).unwrap();
        let t = volterra_phase_shift(&m, xi, &c).unwrap().tan_delta;
        total += (tan_gap(t, exact.tan_delta).atan() / exact.delta).abs();
    }
    assert!(
        total / 100.0 < 1e-9,
        "average relative error {}",
        total / 100.0
    );
}

#[test]
fn cutoff_warning() {
    let out = schrod_phase_shift(&exp(0.8), 1.0, &cfg(48, 12.0)).unwrap();
    assert_eq!(out.diagnostics.warnings.len(), 1);
    assert!(SolveConfig::new(0, 48, 5.0)
        .unwrap()
        .validate(&exp(0.8))
        .is_err());
}

#[test]
fn hulthen_scattering_length_against_oracle() {
    let m = hulthen(0.5);
    let exact = exact_scattering_length(&m).unwrap().value;
    let c = cfg(48, 30.0);
    for got in [
        schrod_scattering_length(&m, &c).unwrap(),
        volterra_scattering_length(&m, &c).unwrap(),
    ] {
        assert!((got.value - exact).abs() < 1e-9, "{} vs {exact}", got.value);
        assert!(!got.near_pole);
    }
}

#[test]
fn scattering_lengths_agree_without_charge() {
    let m = exp(0.8);
    let c = cfg(64, 30.0);
    let a = schrod_scattering_length(&m, &c).unwrap().value;
    let b = volterra_scattering_length(&m, &c).unwrap().value;
    assert!((a - b).abs() < 1e-10, "{a} {b}");
}

fn pole_location(model: fn(f64) -> PotentialModel, lo: f64, hi: f64, route: Method) -> (f64, bool) {
    let c = cfg(64, 30.0);
    let den = |s: f64| -> Result<f64> {
        let m = model(s);
        match route {
            Method::Schrodinger => schrod_scattering_length(&m, &c).map(|a| a.denominator),
            _ => volterra_scattering_length(&m, &c).map(|a| a.denominator),
        }
    };
    let s0 = brent(den, lo, hi, 1e-14).unwrap();
    let at = match route {
        Method::Schrodinger => schrod_scattering_length(&model(s0), &c).unwrap(),
        _ => volterra_scattering_length(&model(s0), &c).unwrap(),
    };
    (s0, at.near_pole)
}

#[test]
fn scattering_length_poles() {
    for route in [Method::Schrodinger, Method::Volterra] {
        let (s, flagged) = pole_location(exp, 1.3, 1.6, route);
        assert!(
            (s - 1.44577).abs() < 1e-3 && flagged,
            "{route:?} exponential pole at {s}"
        );
        let (s, flagged) = pole_location(hulthen, 0.9, 1.1, route);
        assert!(
            (s - 1.0).abs() < 1e-3 && flagged,
            "{route:?} Hulthen pole at {s}"
        );
        let (s, flagged) = pole_location(morse, 0.2, 0.3, route);
        assert!(
            (s - 0.25).abs() < 1e-3 && flagged,
            "{route:?} Morse pole at {s}"
        );
    }
}

#[test]
fn a_changes_sign_through_exponential_pole() {
    let c = cfg(64, 30.0);
    let below = schrod_scattering_length(&exp(1.44), &c).unwrap().value;
    let above = schrod_scattering_length(&exp(1.45), &c).unwrap().value;
    assert!(below > 0.0 && above < 0.0, "{below} {above}");
}

#[test]
fn bound_state_benchmarks() {
    let e = exp((PI / 2.0).powi(2));
    let h = hulthen(3.0);
    let c = cfg(64, 30.0);
    for b in [
        schrod_bound_state(&e, &c, (0.1, 0.5)).unwrap(),
        bound_state_from_determinant(&e, &c, (0.1, 0.5)).unwrap(),
    ] {
        assert!((b.x - 0.25).abs() < 1e-10, "{}", b.x);
    }
    for b in [
        schrod_bound_state(&h, &c, (0.5, 1.5)).unwrap(),
        bound_state_from_determinant(&h, &c, (0.5, 1.5)).unwrap(),
    ] {
        assert!((b.x - 1.0).abs() < 1e-10, "{}", b.x);
        assert!((b.energy + 0.5).abs() < 1e-9);
    }
}

#[test]
fn determinant_changes_sign_at_quarter() {
    let e = exp((PI / 2.0).powi(2));
    let c = cfg(64, 30.0);
    let lo = fredholm_determinant(&e, 0.24, &c).unwrap().value;
    let hi = fredholm_determinant(&e, 0.26, &c).unwrap().value;
    assert!(lo * hi < 0.0);
}

#[test]
fn determinant_tends_to_one() {
    let c = cfg(64, 30.0);
    let weak = fredholm_determinant(&exp(1e-5), 20.0, &c).unwrap().value;
    assert!((weak - 1.0).abs() < 1e-6, "{weak}");
    // exponential well: Delta = Gamma(1 + 2x) J_2x(2 sqrt s) / s^x, and 1 - s / (1 + 2x) to first order
    let s = (PI / 2.0).powi(2);
    let strong = fredholm_determinant(&exp(s), 20.0, &c).unwrap().value;
    let born = 1.0 - s / 41.0;
    assert!(
        (strong - born).abs() < s * s / 41.0 / 40.0,
        "{strong} vs {born}"
    );
}

#[test]
fn determinant_matches_quadrature_form() {
    // kappa R below n / 4 takes the single-interval quadrature; forcing partitions must agree
    let m = hulthen(3.0);
    let c = cfg(64, 12.0);
    for kappa in [0.3, 0.9, 1.2] {
        let quad = fredholm_determinant(&m, kappa, &c).unwrap().value;
        let basis = Basis::bound(&m, 0, kappa).unwrap();
        let (matched, _) =
            super::composite::matched_determinant(&m, &basis, &[0.0, 4.0, 7.0, 12.0], 64).unwrap();
        assert!((quad - matched).abs() < 1e-10, "{quad} {matched}");
    }
}

#[test]
fn deuteron_routes_agree() {
    let m = deuteron();
    let c = SolveConfig::for_model(&m, 0).with_n(96);
    let br = (0.01 / m.a, 0.2 / m.a);
    let s = schrod_bound_state(&m, &c, br).unwrap();
    let d = bound_state_from_determinant(&m, &c, br).unwrap();
    assert!((s.x - d.x).abs() < 1e-10, "{} {}", s.x, d.x);
}

#[test]
fn single_partition_matches_volterra() {
    let m = exp(0.8);
    let c = cfg(48, 30.0);
    for p in [0.2, 1.0, 1.7] {
        let v = volterra_phase_shift(&m, p, &c).unwrap().tan_delta;
        let comp = composite_solve(&m, p, &c).unwrap().output.tan_delta;
        assert!((v - comp).abs() < 1e-12, "{v} {comp}");
    }
}

#[test]
fn four_partitions_match_one() {
    let m = exp(0.8);
    let one = composite_solve(&m, 1.0, &cfg(48, 30.0))
        .unwrap()
        .output
        .tan_delta;
    let four = composite_solve(&m, 1.0, &cfg(48, 30.0).with_equal_partitions(4).unwrap()).unwrap();
    assert!((one - four.output.tan_delta).abs() < 1e-10);
}

#[test]
fn local_wronskian_is_constant() {
    let p = 1.0;
    let sol = composite_solve(
        &exp(0.8),
        p,
        &cfg(48, 30.0).with_equal_partitions(4).unwrap(),
    )
    .unwrap();
    let mid = sol.wronskians_at_midpoints().unwrap();
    for (piece, w_mid) in sol.pieces.iter().zip(&mid) {
        let (u, du) = piece.u_hi;
        let (w, dw) = piece.w_hi;
        assert!((w * du - u * dw - w_mid).abs() < 1e-9 * w_mid.abs());
    }
    // beyond the potential the local pair is the free one
    assert!((mid[3] - p).abs() < 1e-9, "{}", mid[3]);
}

#[test]
fn hulthen_s8_has_two_states() {
    let m = hulthen(8.0);
    let c = cfg(64, 30.0);
    let states = bound_states(&m, &c, 0.05, 6.0, 120).unwrap();
    let xs: Vec<f64> = states.iter().map(|b| b.x).collect();
    assert_eq!(xs.len(), 2, "{xs:?}");
    assert!(
        (xs[0] - 3.5).abs() < 1e-9 && (xs[1] - 1.0).abs() < 1e-9,
        "{xs:?}"
    );
}

#[test]
fn hydrogen_levels_by_matching() {
    let m = PotentialModel::coulomb(1.0, 1.0).unwrap();
    for l in 0..3 {
        let c = SolveConfig::new(l, 64, 60.0)
            .unwrap()
            .with_method(Method::Schrodinger);
        let xs: Vec<f64> = bound_states(&m, &c, 0.15, 1.5, 150)
            .unwrap()
            .iter()
            .map(|b| b.x)
            .collect();
        let want: Vec<f64> = (l + 1..=6).map(|n| 1.0 / n as f64).collect();
        assert_eq!(xs.len(), want.len(), "l = {l}: {xs:?}");
        for (x, w) in xs.iter().zip(&want) {
            assert!((x - w).abs() < 1e-9 * w, "l = {l}: {x} vs {w}");
        }
    }
}

#[test]
fn coulomb_tail_routes_agree() {
    let c = cfg(64, 30.0);
    for z in [1.0, -1.0] {
        let m = exp(0.8).with_coulomb(z, 20.0).unwrap();
        for p in [0.1, 0.5, 1.0] {
            let v = volterra_phase_shift(&m, p, &c).unwrap().tan_delta;
            let s = schrod_phase_shift(&m, p, &c).unwrap().tan_delta;
            let comp =
                composite_solve(&m, p, &c.clone().with_equal_partitions(3).unwrap()).unwrap();
            assert!((v - s).abs() < 1e-9 && (v - comp.output.tan_delta).abs() < 1e-9);
        }
        let a = schrod_scattering_length(&m, &c).unwrap().value;
        let b = volterra_scattering_length(&m, &c).unwrap().value;
        assert!((a - b).abs() < 1e-9 * a.abs(), "{a} {b}");
    }
}

#[test]
fn threshold_slope_is_scattering_length() {
    let c = cfg(64, 30.0);
    for m in [exp(0.8), hulthen(0.5), morse(0.2)] {
        let a = volterra_scattering_length(&m, &c).unwrap().value;
        let xi = 1e-3;
        let t = volterra_phase_shift(&m, xi, &c).unwrap().tan_delta / xi;
        assert!(((t - a) / a).abs() < 1e-4, "{t} vs {a}");
    }
}

#[test]
fn dispatch_and_convergence_report() {
    let m = exp(0.8);
    let c = cfg(48, 30.0)
        .with_method(Method::Schrodinger)
        .with_convergence_check(true);
    let out = phase_shift(&m, 1.0, &c).unwrap();
    let rep = out.diagnostics.convergence.unwrap();
    // R -> 1.5 R keeps N, so that leg resolves a little less
    assert!(rep.doubled_n < 1e-10 && rep.extended_r < 1e-8, "{rep:?}");
    let b = bound_state(
        &exp((PI / 2.0).powi(2)),
        &c.clone().with_method(Method::Composite),
        (0.1, 0.5),
    )
    .unwrap();
    assert!((b.x - 0.25).abs() < 1e-10);
    assert!(b.diagnostics.convergence.is_some());
    assert_eq!("Volterra".parse::<Method>().unwrap(), Method::Volterra);
    assert!("shooting".parse::<Method>().is_err());
}

#[test]
fn phase_unwrapping() {
    let raw = [1.4, -1.5, -1.2, 1.5, 1.0];
    let u = unwrap_phases(&raw);
    assert!((u[1] - (PI - 1.5)).abs() < 1e-15);
    assert!(
        (u[3] - 1.5).abs() < 1e-15 || (u[3] - (1.5 + 0.0)).abs() < 1e-15 || u[3] > u[2] - PI / 2.0
    );
    for w in u.windows(2) {
        assert!((w[1] - w[0]).abs() <= PI / 2.0);
    }
}

#[test]
fn partitions_are_validated() {
    let c = cfg(16, 10.0);
    assert!(c
        .clone()
        .with_partitions(vec![0.0, 5.0, 4.0, 10.0])
        .is_err());
    assert!(c.clone().with_partitions(vec![1.0, 10.0]).is_err());
    assert!(c.clone().with_partitions(vec![0.0, 3.0, 10.0]).is_ok());
    assert_eq!(c.with_equal_partitions(5).unwrap().partition_count(), 5);
}
