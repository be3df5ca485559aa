use std::f64::consts::PI;

use pbec::constants::{thermal_rate, two_pi, HBAR};
use pbec::lda_spectrum::*;
use pbec::open_spectrum::{bose, dispersion_extract, linspace, pl_open};
use pbec::params::{mu_thomas_fermi_rate, PhysicalParams};
use pbec::quadrature::{integrate, QuadratureSpec};
use proptest::prelude::*;

fn base(g: f64) -> (PhysicalParams, f64) {
    let p = PhysicalParams::default().with_g_tilde(g);
    let mu = mu_thomas_fermi_rate(&p).unwrap();
    (p, mu)
}

fn lcg(seed: u64) -> impl FnMut() -> f64 {
    let mut s = seed;
    move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn tight() -> QuadratureSpec {
    QuadratureSpec { rel_tol: 1e-10, abs_floor: 1e-14, max_intervals: 20000, ..Default::default() }
}

fn weight_area(eps: f64, mu_local: f64, kappa: f64, a: f64, b: f64, breaks: &[f64]) -> f64 {
    let mut pts = vec![a, b];
    pts.extend(breaks.iter().copied().filter(|x| *x > a && *x < b));
    pts.sort_by(f64::total_cmp);
    integrate(&|w| weight_closed_eps(eps, w, mu_local, kappa), &pts, &tight()).unwrap().value
}

#[test]
fn free_weight_window_areas() {
    let kappa = two_pi(1e9);
    let eps = 200.0 * kappa;
    let area40 = weight_area(eps, 0.0, kappa, eps - 40.0 * kappa, eps + 40.0 * kappa, &[eps]);
    // a unit Lorentzian holds (2/π)·atan(40) ≈ 0.984 inside ±40κ
    let exact40 = 2.0 / PI * 40f64.atan();
    assert!((area40 - exact40).abs() < 1e-8, "{area40} vs {exact40}");
    let area100 = weight_area(eps, 0.0, kappa, eps - 100.0 * kappa, eps + 100.0 * kappa, &[eps]);
    assert!((area100 - 1.0).abs() < 0.01);
    // and it is exactly the single Lorentzian
    for d in [-7.0, -0.3, 0.0, 2.0, 31.0] {
        let w = eps + d * kappa;
        let a = weight_closed_eps(eps, w, 0.0, kappa);
        assert!((a - lorentzian(w - eps, kappa)).abs() < 1e-9 * lorentzian(0.0, kappa));
    }
}

#[test]
fn sum_rule_and_ghost_area() {
    let (_, mu) = base(1e-3);
    // the ghost area is −v² up to Lorentzian leakage across ω = 0 of order κ/ξ
    let kappa = two_pi(0.1e9);
    let mut rnd = lcg(7);
    for _ in 0..20 {
        let mu_l = mu * (0.8 + 0.2 * rnd());
        let eps = mu_l * (0.05 + 0.25 * rnd());
        let xi = (eps * (eps + 2.0 * mu_l)).sqrt();
        let big = 1e5 * kappa;
        let total = weight_area(eps, mu_l, kappa, -xi - big, xi + big, &[-xi, 0.0, xi]);
        assert!((total - 1.0).abs() < 0.01, "sum rule {total}");

        let (u2, v2) = closed_coefficients(eps, mu_l);
        let ghost = weight_area(eps, mu_l, kappa, -xi - big, 0.0, &[-xi]);
        // oracle: exact half-line areas of the two Lorentzians
        let t = (xi / kappa).atan() / PI;
        let tail = 1.0 / PI * (kappa / (xi + big)).atan();
        let exact = u2 * (0.5 - t - tail) - v2 * (0.5 + t - tail);
        assert!((ghost - exact).abs() < 1e-6 * exact.abs(), "{ghost} vs {exact}");
        assert!((ghost / -v2 - 1.0).abs() < 0.01, "ghost {ghost} vs {}", -v2);
    }
}

#[test]
fn coefficient_identity() {
    let (p, mu) = base(1e-3);
    let r_tf = (2.0 * HBAR * mu / (p.mass() * p.omega0 * p.omega0)).sqrt();
    let mut rnd = lcg(3);
    for _ in 0..1000 {
        let k = 6e5 * rnd();
        let env = LocalEnvironment::harmonic(2.0 * r_tf * rnd(), mu, &p);
        let eps = p.kinetic_rate(k);
        let m = env.mu_local.max(0.0);
        let xi = local_dispersion(eps, &env);
        let gap = (eps + m + xi) - (eps + m - xi);
        assert!((gap - 2.0 * xi).abs() <= 4.0 * f64::EPSILON * (eps + m + xi));
        if xi > 0.0 {
            let (u2, v2) = closed_coefficients(eps, env.mu_local);
            assert!((u2 - v2 - 1.0).abs() < 1e-9 * u2.max(1.0));
        }
        assert!(env.mu_local <= mu);
    }
}

#[test]
fn bose_tail_and_global_limit() {
    let t = 300.0;
    let theta = thermal_rate(t);
    let kappa = two_pi(1e9);
    let env = LocalEnvironment::homogeneous(0.0);
    for w in [0.3 * theta, theta, 4.0 * theta] {
        assert_eq!(bose_local(w, &env, t, kappa), bose(w, theta));
    }
    let h = 1e-3 * theta;
    let w = 10.0 * theta;
    let slope = (bose_local(w + h, &env, t, kappa).ln() - bose_local(w - h, &env, t, kappa).ln()) / (2.0 * h);
    assert!((slope * theta + 1.0).abs() < 0.02);
    let trapped = LocalEnvironment { r: 1e-6, mu_local: 0.0, v_r: 3.0 * theta };
    let near = bose_local(3.0 * theta + 1e-9 * kappa, &trapped, t, kappa);
    assert!(near.is_finite());
    assert_eq!(near, 1.0 / (0.1 * kappa / theta).exp_m1());
}

fn small_axes(p: &PhysicalParams, mu: f64) -> (Vec<f64>, Vec<f64>) {
    let k_max = (6.0 * mu / p.hbar_over_2m()).sqrt();
    (linspace(0.0, k_max, 24), linspace(-2.0 * mu, 8.0 * mu, 96))
}

#[test]
fn radial_sampling_converges() {
    let (p, mu) = base(1e-3);
    let (k, w) = small_axes(&p, mu);
    let base = ClosedOptions::new(&p);
    let run = |rule| pl_closed(&k, &w, &p, ClosedOptions { rule, ..base }).unwrap();
    let a = run(RadialRule::Fixed(16));
    let b = run(RadialRule::Fixed(32));
    let scale = b.max();
    let diff = (&a.values - &b.values).iter().fold(0.0f64, |m, x| m.max(x.abs()));
    assert!(diff < 0.005 * scale, "fixed doubling {}", diff / scale);
    let adaptive = run(RadialRule::Adaptive(QuadratureSpec::default()));
    let diff = (&adaptive.values - &b.values).iter().fold(0.0f64, |m, x| m.max(x.abs()));
    assert!(diff < 0.005 * scale, "adaptive vs fixed {}", diff / scale);
}

#[test]
fn flat_potential_reproduces_homogeneous_product() {
    let (p, mu) = base(1e-3);
    let eval = ClosedModelEval::new(&p, ClosedOptions::new(&p)).unwrap();
    let mut rnd = lcg(11);
    for _ in 0..200 {
        let eps = 5.0 * mu * rnd();
        let w = mu * (-3.0 + 12.0 * rnd());
        let r_cut = 1e-5 * (0.5 + rnd());
        let direct = eval.integrand(eps, w, 0.0);
        let lda = lda_integral(&eval, eps, w, &|_| 0.0, r_cut, PI * r_cut * r_cut, &[], &QuadratureSpec::default()).unwrap();
        assert!((lda - direct).abs() <= 1e-10 * direct.abs(), "{lda} vs {direct}");
    }
}

#[test]
fn radius_and_potential_integrals_agree() {
    let (p, mu) = base(1e-3);
    let spec = QuadratureSpec { rel_tol: 1e-9, abs_floor: 1e-13, max_intervals: 20000, ..Default::default() };
    let opts = ClosedOptions { rule: RadialRule::Adaptive(spec), ..ClosedOptions::new(&p) };
    let eval = ClosedModelEval::new(&p, opts).unwrap();
    let m_w2 = p.mass() * p.omega0 * p.omega0;
    let r_tf = (2.0 * HBAR * mu / m_w2).sqrt();
    let area = PI * r_tf * r_tf;
    let v_of_r = |r: f64| 0.5 * m_w2 * r * r / HBAR;
    let r_of_v = |v: f64| (2.0 * HBAR * v / m_w2).sqrt();
    let mut rnd = lcg(5);
    for _ in 0..30 {
        let eps = 4.0 * mu * rnd();
        let w = mu * (-1.0 + 6.0 * rnd());
        let in_v = eval.point(eps, w, 0.0).unwrap();
        let breaks: Vec<f64> = eval.breakpoints(eps, w).into_iter().map(r_of_v).collect();
        let in_r = lda_integral(&eval, eps, w, &v_of_r, 2.0 * r_tf, area, &breaks, &spec).unwrap();
        assert!((in_r - in_v).abs() < 1e-6 * in_v.abs().max(1e-3 * eval.integrand(eps, eps.max(w), 0.0).abs()), "{in_r} vs {in_v}");
    }
}

#[test]
fn trap_frequency_drops_out_at_fixed_mu() {
    let (p, mu) = base(1e-3);
    // μ ∝ Ω₀ √g̃: tighter trap with weaker interaction keeps μ
    let tight_trap = PhysicalParams { omega0: 10.0 * p.omega0, ..p }.with_g_tilde(1e-5);
    let mu2 = mu_thomas_fermi_rate(&tight_trap).unwrap();
    assert!((mu2 / mu - 1.0).abs() < 1e-12);
    let (k, w) = small_axes(&p, mu);
    let a = pl_closed(&k, &w, &p, ClosedOptions::new(&p)).unwrap();
    let b = pl_closed(&k, &w, &tight_trap, ClosedOptions::new(&tight_trap)).unwrap();
    let diff = (&a.values - &b.values).iter().fold(0.0f64, |m, x| m.max(x.abs()));
    assert!(diff <= 1e-3 * a.max(), "{}", diff / a.max());
}

#[test]
fn no_interaction_collapses_to_parabola() {
    let p = PhysicalParams::default().with_g_tilde(0.0);
    let kappa = p.kappa_broad;
    let k_max = (100.0 * kappa / p.hbar_over_2m()).sqrt();
    // the Rayleigh-Jeans Bose factor pulls the peak down by κ²/2ε; keep that under 0.02 cell
    let k: Vec<f64> = linspace(0.65 * k_max, k_max, 12);
    let w = linspace(0.0, 120.0 * kappa, 481);
    let dw = w[1] - w[0];
    let grid = pl_closed(&k, &w, &p, ClosedOptions::new(&p)).unwrap();
    let curve = dispersion_extract(&grid);
    for (kk, peak) in curve.k.iter().zip(&curve.omega_peak) {
        let eps = p.kinetic_rate(*kk);
        let peak = peak.expect("peak");
        assert!((peak - eps).abs() < 0.1 * dw, "k={kk}: {} cells", (peak - eps) / dw);
    }
}

fn homogeneous_vs_open(g: f64) -> f64 {
    let (p, mu) = base(g);
    let kappa = p.kappa_broad;
    let k_lo = (0.1 * mu / p.hbar_over_2m()).sqrt();
    let k_hi = (10.0 * mu / p.hbar_over_2m()).sqrt();
    let k = linspace(k_lo, k_hi, 16);
    let xi_max = (10.0 * mu * 12.0 * mu).sqrt();
    let w = linspace(-0.25 * xi_max, 1.25 * xi_max, 1500);
    let closed = pl_closed(&k, &w, &p, ClosedOptions { model: ClosedModel::Homogeneous, ..ClosedOptions::new(&p) }).unwrap();
    let open = pl_open(&k, &w, &p, mu, p.gamma_net, p.temperature).unwrap();
    let (a, b) = (dispersion_extract(&closed), dispersion_extract(&open));
    a.omega_peak
        .iter()
        .zip(&b.omega_peak)
        .map(|(x, y)| (x.expect("closed ridge") - y.expect("open ridge")).abs() / kappa)
        .fold(0.0, f64::max)
}

#[test]
fn homogeneous_ridge_matches_open_model() {
    for g in [1e-3, 1e-5] {
        let worst = homogeneous_vs_open(g);
        assert!(worst < 1.0, "g̃={g}: {worst} κ");
    }
}

#[test]
fn trapped_ridge_lies_between_local_extremes() {
    let (p, mu) = base(1e-3);
    let k = vec![(mu / p.hbar_over_2m()).sqrt(), (4.0 * mu / p.hbar_over_2m()).sqrt()];
    let w = linspace(0.0, 8.0 * mu, 4001);
    let grid = pl_closed(&k, &w, &p, ClosedOptions::new(&p)).unwrap();
    let curve = dispersion_extract(&grid);
    for (kk, peak) in k.iter().zip(&curve.omega_peak) {
        let eps = p.kinetic_rate(*kk);
        let peak = peak.expect("peak");
        let hi = (eps * (eps + 2.0 * mu)).sqrt();
        assert!(peak >= eps - p.kappa_broad && peak <= hi + p.kappa_broad, "{} {} {}", eps, peak, hi);
        let width = lda_line_broadening(*kk, &p).unwrap();
        assert!((hi - eps - width).abs() < 1e-9 * width);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn closed_grid_non_negative(g_exp in -6.0f64..-2.5, t in 80.0f64..600.0, local in any::<bool>()) {
        let p = PhysicalParams { temperature: t, ..PhysicalParams::default() }.with_g_tilde(10f64.powf(g_exp));
        let mu = mu_thomas_fermi_rate(&p).unwrap();
        let (k, w) = small_axes(&p, mu);
        let bose = if local { BoseConvention::Local } else { BoseConvention::Global };
        let grid = pl_closed(&k, &w, &p, ClosedOptions { bose, ..ClosedOptions::new(&p) }).unwrap();
        let ok = grid.values.iter().all(|v| v.is_finite() && *v >= 0.0);
        prop_assert!(ok);
    }

    #[test]
    fn weight_sum_rule_identity(eps in 1e9f64..1e13, mu in 0.0f64..1e13) {
        let (u2, v2) = closed_coefficients(eps, mu);
        let d = u2 - v2;
        prop_assert!((d - 1.0).abs() < 1e-9 * u2.max(1.0));
    }
}
