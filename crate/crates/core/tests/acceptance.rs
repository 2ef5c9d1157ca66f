//! Release gate: one test per acceptance criterion, each printing a single
//! `acceptance NN <what>: PASS|FAIL` line before asserting. Run with
//! `--nocapture` to see the lines for passing criteria as well.

use gpcas::condensate::{
    condensate_energy, critical_kappa, gp_residual, hole_threshold, robin_thresholds, solve_delta,
    solve_hole, solve_robin, CondensateSolution,
};
use gpcas::ellipj::{complete_k, jacobi_triple, EllipticModulus};
use gpcas::forces::{condensate_force, total_force, Background};
use gpcas::meanfield::{bound_state, meanfield_energy, threshold_expansion};
use gpcas::models::{ModelConfig, PhysicalParams};
use gpcas::spectrum::{
    asym_subtraction, mode_fn_numeric, stability_scan, vacuum_energy_renormalized,
    vacuum_energy_subcritical, FluctuationPotential,
};
use gpcas::{Error, Result};
use rand::{Rng, SeedableRng};

const M1: PhysicalParams = PhysicalParams { m: 1.0, lambda: 1.0 };

fn delta(kappa: f64) -> ModelConfig {
    ModelConfig::Delta { kappa }
}

fn robin(kappa: f64, length: f64) -> ModelConfig {
    ModelConfig::RobinDirichlet { kappa, length }
}

fn hole(depth: f64, width: f64) -> ModelConfig {
    ModelConfig::PotentialHole { depth, width }
}

fn report(n: &str, what: &str, pass: bool) {
    println!("acceptance {n} {what}: {}", if pass { "PASS" } else { "FAIL" });
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn solve_any(config: ModelConfig) -> Result<CondensateSolution> {
    match config {
        ModelConfig::Delta { .. } => solve_delta(config, M1),
        ModelConfig::RobinDirichlet { .. } => solve_robin(config, M1),
        ModelConfig::PotentialHole { .. } => solve_hole(config, M1),
    }
}

#[test]
fn criterion_01_interval_thresholds() {
    let th = robin_thresholds(2.0, 1.0).unwrap();
    let ok = (th.l0 - 0.549306).abs() < 1e-4
        && (th.l1.unwrap() - 0.55536).abs() < 1e-4
        && (th.l2.unwrap() - 1.66608).abs() < 1e-4;
    report("01", "interval thresholds at kappa = 2", ok);
    assert!(ok, "{th:?}");
}

#[test]
fn criterion_02_critical_coupling() {
    let kc = critical_kappa(2.2, 1.0);
    let ok = (kc - 1.0 / 2.2_f64.tanh()).abs() < 1e-6 && (kc - 1.025).abs() < 1e-3;
    report("02", "critical coupling of the L = 2.2 interval", ok);
    assert!(ok, "kappa_c = {kc}");
}

#[test]
fn criterion_03_delta_closed_forms() {
    let e_bs = meanfield_energy(&bound_state(delta(2.0), M1).unwrap());
    let e_cond = condensate_energy(&solve_delta(delta(2.0), M1).unwrap());
    let ok = (e_bs + 2.25).abs() < 1e-9 * 2.25 && (e_cond + 8.0 / 3.0).abs() < 1e-9 * (8.0 / 3.0);
    report("03", "delta-model energies hit their closed forms", ok);
    assert!(ok, "E_bs = {e_bs}, E_cond = {e_cond}");
}

#[test]
fn criterion_04_energy_ordering() {
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut check = |config: ModelConfig| {
        let e_bs = meanfield_energy(&bound_state(config, M1).unwrap());
        let e_cond = condensate_energy(&solve_any(config).unwrap());
        worst = worst.max(e_cond - e_bs);
    };
    for kappa in linspace(1.02, 3.0, 30) {
        check(delta(kappa));
    }
    let th = robin_thresholds(2.0, 1.0).unwrap();
    let (l0, l1, l2) = (th.l0, th.l1.unwrap(), th.l2.unwrap());
    let span = l1 - l0;
    for length in linspace(l0 + 0.03 * span, l1 - 0.03 * span, 15) {
        check(robin(2.0, length));
    }
    for length in linspace(l2 + 0.035, 3.0, 15) {
        check(robin(2.0, length));
    }
    let u0c = hole_threshold(1.0, 1.0).unwrap();
    for depth in linspace(u0c + 0.05, 10.0, 20) {
        check(hole(depth, 1.0));
    }
    let ok = worst <= 1e-12;
    report("04", "bound-state energy bounds the condensate energy", ok);
    assert!(ok, "max(E_cond - E_bs) = {worst}");
}

#[test]
fn criterion_05_shared_threshold_coefficient() {
    // One-parameter fit -E/delta² at two offsets, extrapolated to threshold;
    // the cubic term cancels and the remainder is O(delta²).
    let fit = |energy: &dyn Fn(f64) -> f64, kc: f64| {
        let d = 0.004;
        let c1 = -energy(kc + d) / (d * d);
        let c2 = -energy(kc + 2.0 * d) / (4.0 * d * d);
        2.0 * c1 - c2
    };
    let mut ok = true;
    let mut detail = String::new();
    for (name, config, kc) in [
        ("delta", delta(2.0), 1.0),
        ("robin", robin(2.0, 2.0), critical_kappa(2.0, 1.0)),
    ] {
        let with_kappa = |kappa: f64| match config {
            ModelConfig::Delta { .. } => delta(kappa),
            ModelConfig::RobinDirichlet { length, .. } => robin(kappa, length),
            ModelConfig::PotentialHole { .. } => unreachable!(),
        };
        let c_th = threshold_expansion(config, M1).unwrap();
        let c_bs = fit(
            &|kappa| meanfield_energy(&bound_state(with_kappa(kappa), M1).unwrap()),
            kc,
        );
        let c_cond = fit(
            &|kappa| condensate_energy(&solve_any(with_kappa(kappa)).unwrap()),
            kc,
        );
        ok &= (c_bs - c_th).abs() < 0.01 * c_th
            && (c_cond - c_th).abs() < 0.01 * c_th
            && (c_bs - c_cond).abs() < 0.01 * c_th;
        detail.push_str(&format!(
            "{name}: c_th={c_th} c_bs={c_bs} c_cond={c_cond}; "
        ));
    }
    report("05", "both energies share the threshold coefficient", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_06_modulus_gap() {
    let th = robin_thresholds(2.0, 1.0).unwrap();
    let (l0, l1, l2) = (th.l0, th.l1.unwrap(), th.l2.unwrap());
    let mut ok = true;
    for length in linspace(l1 + 1e-3, l2 - 1e-3, 50) {
        ok &= matches!(solve_robin(robin(2.0, length), M1), Err(Error::KGap(_)));
    }
    for length in linspace(l0 + 1e-3, l1 - 1e-3, 20) {
        ok &= solve_robin(robin(2.0, length), M1).is_ok();
    }
    for length in linspace(l2 + 1e-3, 3.0, 20) {
        ok &= solve_robin(robin(2.0, length), M1).is_ok();
    }
    report("06", "the modulus gap refuses and its flanks solve", ok);
    assert!(ok);
}

#[test]
fn criterion_07_gp_residuals() {
    let mut worst: f64 = 0.0;
    for config in [delta(2.0), robin(2.0, 0.552), robin(2.0, 2.2), hole(6.0, 1.0)] {
        worst = worst.max(gp_residual(&solve_any(config).unwrap(), 400));
    }
    let ok = worst < 1e-6;
    report("07", "field-equation residuals on 400-point grids", ok);
    assert!(ok, "max residual = {worst}");
}

#[test]
fn criterion_08_mode_function_oracle() {
    let v = FluctuationPotential::zero();
    let mut worst: f64 = 0.0;
    for xi in linspace(1.0, 50.0, 100) {
        let numeric = mode_fn_numeric(xi, &v, 0.5, 2.2).unwrap();
        let exact = (1.0 - 0.5 / xi) + (1.0 + 0.5 / xi) * (-2.0 * xi * 2.2).exp();
        worst = worst.max(((numeric - exact) / exact).abs());
    }
    let closed = vacuum_energy_subcritical(M1, 0.5, 2.2).unwrap().e0_ren;
    let numeric_e0 = vacuum_energy_renormalized(&v, M1, 0.5, 2.2).unwrap().e0_ren;
    let routes_agree = (closed - numeric_e0).abs() < 1e-6;
    let ok = worst < 1e-8 && routes_agree;
    report("08", "numeric mode function against the closed form", ok);
    assert!(ok, "worst rel = {worst}, closed = {closed}, numeric = {numeric_e0}");
}

#[test]
fn criterion_09_asymptotic_subtraction_decay() {
    let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
    let v = FluctuationPotential::from_condensate(sol).unwrap();
    let pts: Vec<(f64, f64)> = (0..9)
        .map(|i| 20.0 * 5.0_f64.powf(i as f64 / 8.0))
        .map(|xi| {
            let phi = mode_fn_numeric(xi, &v, 1.3, 3.0).unwrap();
            let d = (phi.ln() - asym_subtraction(xi, &v, 1.3)).abs();
            (xi.ln(), d.ln())
        })
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let ok = slope <= -1.8;
    report("09", "subtracted log mode function decays quadratically", ok);
    assert!(ok, "fitted exponent = {slope}");
}

#[test]
fn criterion_10_spectral_stability() {
    let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
    let exact = FluctuationPotential::from_condensate(sol).unwrap();
    let approx =
        FluctuationPotential::from_bound_state(bound_state(robin(1.3, 3.0), M1).unwrap()).unwrap();
    let z_exact = stability_scan(&exact, M1, 1.3, 3.0).unwrap();
    let z_approx = stability_scan(&approx, M1, 1.3, 3.0).unwrap();
    let z_bare = stability_scan(&FluctuationPotential::zero(), M1, 2.0, 2.2).unwrap();
    let ok = z_exact.is_empty() && z_approx.is_empty() && z_bare.len() == 1;
    report("10", "condensate backgrounds carry no imaginary modes", ok);
    assert!(
        ok,
        "exact: {z_exact:?}, approx: {z_approx:?}, bare: {z_bare:?}"
    );
}

#[test]
fn criterion_11a_subcritical_force_repulsive() {
    let f = total_force(robin(0.5, 2.2), M1, Background::Exact).unwrap();
    let ok = f.f_total > 0.0 && f.f_cond == 0.0;
    report("11a", "subcritical fluctuation force is repulsive", ok);
    assert!(ok, "{f:?}");
}

#[test]
fn criterion_11b_critical_vacuum_energy_sign() {
    let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
    let v = FluctuationPotential::from_condensate(sol).unwrap();
    let e0 = vacuum_energy_renormalized(&v, M1, 1.3, 3.0).unwrap().e0_ren;
    let ok = e0 < 0.0;
    report("11b", "renormalized vacuum energy negative at kappa 1.3, L 3", ok);
    assert!(ok, "e0_ren = {e0}; known-failing, see README");
}

#[test]
fn criterion_11c_condensate_force_repulsive() {
    let mut ok = true;
    for length in [1.7, 1.95, 2.2, 2.45, 2.7, 3.0] {
        let f = condensate_force(robin(2.0, length), M1).unwrap();
        ok &= f.f_cond > 0.0;
    }
    report("11c", "condensate force repulsive beyond the gap", ok);
    assert!(ok);
}

#[test]
fn criterion_12_background_insensitivity() {
    let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
    let exact_v = FluctuationPotential::from_condensate(sol).unwrap();
    let approx_v =
        FluctuationPotential::from_bound_state(bound_state(robin(1.3, 3.0), M1).unwrap()).unwrap();
    let e_exact = vacuum_energy_renormalized(&exact_v, M1, 1.3, 3.0).unwrap().e0_ren;
    let e_approx = vacuum_energy_renormalized(&approx_v, M1, 1.3, 3.0).unwrap().e0_ren;
    let ratio = ((e_exact - e_approx) / e_exact).abs();
    let ok = (e_exact - 0.043_039_687_586_078_09).abs() < 1e-3
        && (e_approx - 0.040_666_894_996_144_96).abs() < 1e-3
        && ratio < 0.06;
    report("12", "vacuum energy barely cares which background", ok);
    assert!(ok, "exact = {e_exact}, approx = {e_approx}, ratio = {ratio}");
}

#[test]
fn criterion_13_elliptic_engine() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xacce_9713);
    let mut ok = true;
    for _ in 0..1000 {
        let z = rng.gen_range(-5.0..5.0);
        let k = rng.gen_range(0.0..1.0);
        let t = jacobi_triple(z, EllipticModulus::new(k).unwrap());
        ok &= (t.sn * t.sn + t.cn * t.cn - 1.0).abs() < 1e-12;
        ok &= (t.dn * t.dn + k * k * t.sn * t.sn - 1.0).abs() < 1e-12;
    }
    let h = 1e-5;
    for _ in 0..1000 {
        let z = rng.gen_range(-5.0..5.0);
        let k = rng.gen_range(0.0..1.0);
        let mo = EllipticModulus::new(k).unwrap();
        let t = jacobi_triple(z, mo);
        let plus = jacobi_triple(z + h, mo);
        let minus = jacobi_triple(z - h, mo);
        ok &= ((plus.sn - minus.sn) / (2.0 * h) - t.cn * t.dn).abs() < 1e-6;
        ok &= ((plus.cn - minus.cn) / (2.0 * h) + t.sn * t.dn).abs() < 1e-6;
        ok &= ((plus.dn - minus.dn) / (2.0 * h) + k * k * t.sn * t.cn).abs() < 1e-6;
    }
    for _ in 0..1000 {
        let z = rng.gen_range(-5.0..5.0);
        let k = rng.gen_range(0.0..0.995);
        let mo = EllipticModulus::new(k).unwrap();
        let period = 4.0 * complete_k(mo).unwrap();
        let t0 = jacobi_triple(z, mo);
        let t1 = jacobi_triple(z + period, mo);
        ok &= (t0.sn - t1.sn).abs() < 1e-10
            && (t0.cn - t1.cn).abs() < 1e-10
            && (t0.dn - t1.dn).abs() < 1e-10;
    }
    for z in [-4.2, -1.0, 0.3, 2.9_f64] {
        let trig = jacobi_triple(z, EllipticModulus::new(0.0).unwrap());
        ok &= (trig.sn - z.sin()).abs() < 1e-14 && (trig.cn - z.cos()).abs() < 1e-14;
        let hyp = jacobi_triple(z, EllipticModulus::new(1.0).unwrap());
        ok &= (hyp.sn - z.tanh()).abs() < 1e-14 && (hyp.cn - 1.0 / z.cosh()).abs() < 1e-14;
    }
    report("13", "elliptic identities, derivatives, periods, limits", ok);
    assert!(ok);
}

#[test]
fn criterion_14_deterministic_figures() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let code = gpcas::cli::run_from([
            "gpcas",
            "figure",
            "1",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let first = std::fs::read(a.path().join("fig1.csv")).unwrap();
    let second = std::fs::read(b.path().join("fig1.csv")).unwrap();
    let ok = !first.is_empty() && first == second;
    report("14", "figure tables are byte-for-byte reproducible", ok);
    assert!(ok);
}
