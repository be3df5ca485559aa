use num_complex::Complex64;
use pbec::cgpe::{
    auto_extent, evolve_open, relax_with, ComplexField2D, EvolutionSpec, Mode, PotentialMap, RelaxSpec, Solver,
};
use pbec::constants::HBAR;
use pbec::params::{mu_thomas_fermi_rate, DerivedQuantities, PhysicalParams};

fn params(g: f64) -> PhysicalParams {
    PhysicalParams::default().with_g_tilde(g)
}

fn rms_radius(f: &ComplexField2D) -> f64 {
    let xs = pbec::cgpe::coordinates(f.n(), f.extent);
    let mut num = 0.0;
    let mut den = 0.0;
    for ((iy, ix), z) in f.values.indexed_iter() {
        let d = z.norm_sqr();
        num += d * (xs[ix] * xs[ix] + xs[iy] * xs[iy]);
        den += d;
    }
    (num / den).sqrt()
}

fn gaussian(p: &PhysicalParams, n: usize, extent: f64, shift: f64) -> ComplexField2D {
    let a = (HBAR / (p.mass() * p.omega0)).sqrt();
    let mut f = ComplexField2D::from_fn(n, extent, |x, y| {
        let r2 = (x - shift).powi(2) + y * y;
        Complex64::new((-r2 / (2.0 * a * a)).exp(), 0.0)
    })
    .unwrap();
    f.scale_to(p.n_bec);
    f
}

#[test]
fn conservative_evolution_keeps_number_and_energy() {
    let p = params(1e-3);
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(256, extent, &p).unwrap();
    let ground = relax_with(&v, &p, p.n_bec, &RelaxSpec::default(), None).unwrap();
    let mut solver = Solver::new(&v, &p).unwrap();
    let dt = solver.auto_dt_real(ground.mu);
    // displaced condensate: sloshes, far from stationary
    let a = 3e-6;
    let mut f = ComplexField2D::from_fn(256, extent, |x, y| {
        let xs = ((x - a) / extent * 256.0 + 128.0).round() as usize % 256;
        let ys = (y / extent * 256.0 + 128.0).round() as usize % 256;
        ground.field.values[[ys, xs]]
    })
    .unwrap();
    let n0 = f.particle_number();
    let e0 = solver.energies(&f).total();
    solver.evolve(&mut f, &EvolutionSpec::conservative(dt, 1000)).unwrap();
    let dn = (f.particle_number() - n0).abs() / n0;
    let de = (solver.energies(&f).total() - e0).abs() / e0.abs();
    assert!(dn < 1e-10, "number drift {dn:e}");
    assert!(de < 1e-8, "energy drift {de:e}");
}

#[test]
fn gaussian_ground_state_width() {
    let p = params(0.0);
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(256, extent, &p).unwrap();
    let r = relax_with(&v, &p, p.n_bec, &RelaxSpec::default(), None).unwrap();
    let a = (HBAR / (p.mass() * p.omega0)).sqrt();
    let width = rms_radius(&r.field);
    assert!((width / a - 1.0).abs() < 0.01, "width {width:e} vs {a:e}");
    assert!((r.mu / p.omega0 - 1.0).abs() < 0.01, "mu {}", r.mu / p.omega0);
}

#[test]
fn thomas_fermi_ground_state() {
    let p = params(1e-3);
    let d = DerivedQuantities::new(&p).unwrap();
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(256, extent, &p).unwrap();
    let r = relax_with(&v, &p, p.n_bec, &RelaxSpec::default(), None).unwrap();
    let n_center = r.field.central_density();
    let tf = d.tf_peak_density();
    assert!((n_center / tf - 1.0).abs() < 0.02, "central density ratio {}", n_center / tf);
    // the exact eigenvalue sits above the Thomas-Fermi value by the kinetic
    // energy of the edge layer, about 2% at μ ≈ 5.6 ħΩ₀
    let mu_tf = mu_thomas_fermi_rate(&p).unwrap();
    let excess = r.mu / mu_tf - 1.0;
    assert!(excess > 0.0 && excess < 0.025, "mu ratio {}", r.mu / mu_tf);
    let e = r.energies;
    assert!((e.kinetic / (p.n_bec * mu_tf) - excess).abs() < 0.01);
    // 2D harmonic virial theorem: E_kin − E_pot + E_int = 0
    assert!((e.kinetic - e.potential + e.interaction).abs() < 0.01 * e.potential);
    assert!((r.field.particle_number() / p.n_bec - 1.0).abs() < 1e-12);
}

#[test]
fn imaginary_time_energy_never_increases() {
    let p = params(1e-3);
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(64, extent, &p).unwrap();
    let mut f = gaussian(&p, 64, extent, 4e-6);
    let mut solver = Solver::new(&v, &p).unwrap();
    let dt = 0.1 / (v.max() - v.min()).max(solver.g_rate() * f.peak_density());
    let spec = EvolutionSpec { dt, steps: 1, mode: Mode::ImaginaryTime, gain: pbec::cgpe::Gain::Conservative };
    let mut last = solver.energies(&f).total();
    for i in 0..400 {
        solver.step(&mut f, &spec).unwrap();
        f.scale_to(p.n_bec);
        let e = solver.energies(&f).total();
        assert!(e <= last * (1.0 + 1e-14), "step {i}: {e} > {last}");
        last = e;
    }
}

#[test]
fn oscillator_ground_state_is_stationary() {
    let p = params(0.0);
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(128, extent, &p).unwrap();
    let mut f = gaussian(&p, 128, extent, 0.0);
    let before = f.density();
    let mut solver = Solver::new(&v, &p).unwrap();
    let dt = solver.auto_dt_real(0.0);
    solver.evolve(&mut f, &EvolutionSpec::conservative(dt, 1000)).unwrap();
    let peak = before.iter().copied().fold(0.0, f64::max);
    let worst = f
        .density()
        .iter()
        .zip(before.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(worst / peak < 1e-6, "max density change {:e}", worst / peak);
}

fn benchmark_state(p: &PhysicalParams, v: &PotentialMap, dt: f64, total: f64) -> ComplexField2D {
    let mut f = gaussian(p, v.n(), v.extent, 5e-6);
    let mut solver = Solver::new(v, p).unwrap();
    let steps = (total / dt).round() as usize;
    solver.evolve(&mut f, &EvolutionSpec::conservative(dt, steps)).unwrap();
    f
}

#[test]
fn strang_splitting_is_second_order() {
    let p = PhysicalParams { n_bec: 1e3, ..params(1e-3) };
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(64, extent, &p).unwrap();
    let solver = Solver::new(&v, &p).unwrap();
    let dt = 0.4 / solver.eps_max();
    let total = 400.0 * dt;
    let reference = benchmark_state(&p, &v, dt / 16.0, total);
    let err = |f: &ComplexField2D| {
        f.values
            .iter()
            .zip(reference.values.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let e1 = err(&benchmark_state(&p, &v, dt, total));
    let e2 = err(&benchmark_state(&p, &v, dt / 2.0, total));
    let ratio = e1 / e2;
    assert!((3.4..=4.6).contains(&ratio), "error ratio {ratio}");
}

#[test]
fn constant_potential_is_a_gauge() {
    let p = params(1e-3);
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(64, extent, &p).unwrap();
    let shifted = v.shifted(3.0 * p.omega0);
    let mut a = gaussian(&p, 64, extent, 3e-6);
    let mut b = a.clone();
    let mut sa = Solver::new(&v, &p).unwrap();
    let mut sb = Solver::new(&shifted, &p).unwrap();
    let dt = sb.auto_dt_real(0.0);
    sa.evolve(&mut a, &EvolutionSpec::conservative(dt, 200)).unwrap();
    sb.evolve(&mut b, &EvolutionSpec::conservative(dt, 200)).unwrap();
    let peak = a.peak_density();
    for (x, y) in a.values.iter().zip(b.values.iter()) {
        assert!((x.norm_sqr() - y.norm_sqr()).abs() < 1e-12 * peak);
    }
}

#[test]
fn mirror_profile_drives_the_same_dynamics() {
    let p = params(1e-3);
    let extent = auto_extent(&p).unwrap();
    let n = 64;
    let r_mirror = pbec::cgpe::mirror_radius_for_trap(&p);
    let xs = pbec::cgpe::coordinates(n, extent);
    let dl = ndarray::Array2::from_shape_fn((n, n), |(iy, ix)| -(xs[ix] * xs[ix] + xs[iy] * xs[iy]) / (2.0 * r_mirror));
    let from_mirror = pbec::cgpe::potential_from_mirror(&dl, extent, &p).unwrap();
    // a uniform offset of the mirror only shifts the potential
    let offset = dl.mapv(|x| x + p.lambda_vac / (2.0 * p.q as f64) * 0.01);
    let shifted = pbec::cgpe::potential_from_mirror(&offset, extent, &p).unwrap();
    let mut a = gaussian(&p, n, extent, 3e-6);
    let mut b = a.clone();
    let mut sa = Solver::new(&from_mirror, &p).unwrap();
    let mut sb = Solver::new(&shifted, &p).unwrap();
    let dt = sa.auto_dt_real(0.0).min(sb.auto_dt_real(0.0));
    sa.evolve(&mut a, &EvolutionSpec::conservative(dt, 200)).unwrap();
    sb.evolve(&mut b, &EvolutionSpec::conservative(dt, 200)).unwrap();
    let peak = a.peak_density();
    for (x, y) in a.values.iter().zip(b.values.iter()) {
        assert!((x.norm_sqr() - y.norm_sqr()).abs() < 1e-9 * peak);
    }
}

#[test]
fn uniform_box_relaxes_to_uniform_density() {
    let p = params(1e-3);
    let extent = 1e-4;
    let v = PotentialMap::uniform(64, extent, 0.0).unwrap();
    let r = relax_with(&v, &p, p.n_bec, &RelaxSpec::default(), None).unwrap();
    let expected = p.n_bec / (extent * extent);
    for z in r.field.values.iter() {
        assert!((z.norm_sqr() / expected - 1.0).abs() < 1e-6);
    }
}

fn uniform_state(n: usize, extent: f64, density: f64) -> ComplexField2D {
    ComplexField2D::from_fn(n, extent, |_, _| Complex64::new(density.sqrt(), 0.0)).unwrap()
}

#[test]
fn homogeneous_open_state_is_stationary() {
    let p = params(1e-3);
    let d = DerivedQuantities::new(&p).unwrap();
    let (n, extent) = (32, 1e-3);
    let n0 = d.tf_peak_density();
    let f = uniform_state(n, extent, n0);
    let v = PotentialMap::uniform(n, extent, 0.0).unwrap();
    let solver = Solver::new(&v, &p).unwrap();
    let dt = solver.auto_dt_real(d.mu);
    let gamma = p.gamma_net;
    let big = pbec::params::saturation_coefficient(gamma, n0).unwrap();
    let steps = (10.0 / gamma / dt).ceil() as usize;
    let out = evolve_open(&f, &v, &p, &EvolutionSpec::open(dt, steps, gamma, big)).unwrap();
    assert!((out.peak_density() / n0 - 1.0).abs() < 0.01);
}

#[test]
fn pure_loss_decays_monotonically() {
    let p = params(1e-3);
    let extent = auto_extent(&p).unwrap();
    let v = PotentialMap::harmonic(64, extent, &p).unwrap();
    let mut f = gaussian(&p, 64, extent, 2e-6);
    let mut solver = Solver::new(&v, &p).unwrap();
    let dt = solver.auto_dt_real(0.0);
    let spec = EvolutionSpec::open(dt, 1, -p.kappa_cav, 1e-9);
    let mut last = f.particle_number();
    for _ in 0..200 {
        solver.step(&mut f, &spec).unwrap();
        let now = f.particle_number();
        assert!(now < last);
        last = now;
    }
}

#[test]
fn small_seed_grows_to_logistic_fixed_point() {
    let p = params(1e-3);
    let (n, extent) = (32, 1e-3);
    let gamma = p.gamma_net;
    let big = 1e-3;
    let f = uniform_state(n, extent, 1e-3 * gamma / big);
    let v = PotentialMap::uniform(n, extent, 0.0).unwrap();
    let solver = Solver::new(&v, &p).unwrap();
    let dt = solver.auto_dt_real(0.0);
    let steps = (8.0 / gamma / dt).ceil() as usize;
    let out = evolve_open(&f, &v, &p, &EvolutionSpec::open(dt, steps, gamma, big)).unwrap();
    let fixed = gamma / big * extent * extent;
    assert!((out.particle_number() / fixed - 1.0).abs() < 1e-3, "{}", out.particle_number() / fixed);
}
