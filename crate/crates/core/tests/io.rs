use ndarray::Array2;
use pbec::constants::two_pi;
use pbec::io::config::{Normalization, SpectrumModel, KEYS};
use pbec::io::{parse_config, read_curve, read_grid, read_pgm, sha256_hex, write_curve, write_grid, write_pgm, Provenance, RunConfig};
use pbec::lda_spectrum::ClosedModel;
use pbec::open_spectrum::DispersionCurve;
use pbec::{Error, SpectrumGrid};
use proptest::prelude::*;

fn shipped(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn line_of(e: Error) -> usize {
    match e {
        Error::Config { line, .. } => line,
        other => panic!("expected a config error, got {other}"),
    }
}

#[test]
fn empty_file_gives_defaults() {
    let cfg = parse_config("").unwrap();
    assert_eq!(cfg, RunConfig::default());
    assert_eq!(parse_config("# nothing\n\n   \n").unwrap(), cfg);
    assert_eq!(cfg.spectrum.model, SpectrumModel::Closed);
    assert_eq!(cfg.spectrum.normalization, Normalization::UnitMax);
    let text = cfg.emit();
    for (key, _, _) in KEYS {
        assert!(text.lines().any(|l| l.starts_with(&format!("{key} = "))), "{key}");
    }
}

#[test]
fn shipped_strong_config() {
    let cfg = parse_config(&shipped("strong.conf")).unwrap();
    let p = &cfg.physical;
    assert_eq!(p.gamma_net, two_pi(1e9));
    assert_eq!(p.temperature, 300.0);
    assert_eq!(p.omega0, two_pi(40e9));
    assert_eq!(p.n_bec, 1e5);
    assert_eq!(p.g_tilde, Some(1e-3));
    assert_eq!(cfg.spectrum.model, SpectrumModel::Open);
    assert_eq!(cfg.spectrum.closed_trap, ClosedModel::Homogeneous);
    assert_eq!((cfg.spectrum.nk, cfg.spectrum.nomega), (512, 1024));
}

#[test]
fn shipped_configs_parse() {
    for name in ["strong.conf", "weak.conf", "camera.conf", "optics.conf"] {
        parse_config(&shipped(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let weak = parse_config(&shipped("weak.conf")).unwrap();
    assert_eq!(weak.physical.g_tilde, Some(1e-5));
}

#[test]
fn round_trip_through_emission() {
    for name in ["strong.conf", "camera.conf", "optics.conf"] {
        let cfg = parse_config(&shipped(name)).unwrap();
        let again = parse_config(&cfg.emit()).unwrap();
        assert_eq!(cfg, again, "{name}");
        assert_eq!(cfg.emit(), again.emit());
        assert_eq!(cfg.sha256(), sha256_hex(cfg.emit().as_bytes()));
    }
    let chi = parse_config("chi3 = 5e-20\n").unwrap();
    assert_eq!(chi.physical.g_tilde, None);
    assert_eq!(parse_config(&chi.emit()).unwrap(), chi);
}

#[test]
fn diagnostics_carry_line_numbers() {
    assert_eq!(line_of(parse_config("n_bec = 1e5\n\nbogus = 3\n").unwrap_err()), 3);
    assert_eq!(line_of(parse_config("# c\nn_bec = many\n").unwrap_err()), 2);
    assert_eq!(line_of(parse_config("n_bec = 1e5\nn_bec = 2e5\n").unwrap_err()), 2);
    assert_eq!(line_of(parse_config("just words\n").unwrap_err()), 1);
    assert_eq!(line_of(parse_config("\n\nbit_depth = 10\n").unwrap_err()), 3);
    assert_eq!(line_of(parse_config("model = half-open\n").unwrap_err()), 1);
    let msg = parse_config("temperature = -3\n").unwrap_err().to_string();
    assert!(msg.contains("line 1"), "{msg}");
}

#[test]
fn ambiguous_interaction_source() {
    let e = parse_config("g_tilde = 1e-3\n# both\nchi3 = 5e-20\n").unwrap_err();
    assert!(e.to_string().contains("ambiguous"), "{e}");
    assert_eq!(line_of(e), 3);
    let e = parse_config("chi3 = 5e-20\ng_tilde = 1e-3\n").unwrap_err();
    assert_eq!(line_of(e), 2);
}

fn grid() -> SpectrumGrid {
    let k = vec![-2.5e5, 0.0, 2.5e5];
    let w = vec![-1e10, 1.0 / 3.0, 7e11, 1.5e12];
    let v = Array2::from_shape_fn((4, 3), |(i, j)| (i as f64 + 0.1) * (j as f64 - 1.0 / 7.0));
    SpectrumGrid::new(k, w, v).unwrap()
}

#[test]
fn grid_round_trip_is_exact() {
    let cfg = RunConfig::default();
    let g = grid();
    let text = write_grid(&g, &Provenance::new(&cfg, "test"));
    assert!(text.starts_with("# pbec-grid v1\n# k_axis 1/m: "));
    let (back, header) = read_grid(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(header.get("config_sha256"), Some(cfg.sha256().as_str()));
    assert_eq!(header.config, cfg.emit());
    assert_eq!(write_grid(&back, &Provenance::new(&cfg, "test")), text);
}

#[test]
fn curve_round_trip_keeps_flags() {
    let c = DispersionCurve { k: vec![-1e5, 0.0, 1e5], omega_peak: vec![Some(2.0e11 / 3.0), None, Some(-4.0)] };
    let text = write_curve(&c, &Provenance::new(&RunConfig::default(), "test"));
    assert!(text.contains("k,omega_peak,flag\n"));
    assert!(text.contains(",,1\n"));
    let (back, _) = read_curve(&text).unwrap();
    assert_eq!(back, c);
}

#[test]
fn malformed_files_rejected() {
    assert!(read_grid("# pbec-curve v1\n").is_err());
    let text = write_grid(&grid(), &Provenance::new(&RunConfig::default(), "test"));
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    assert!(read_grid(&lines.join("\n")).is_err());
    assert!(read_pgm(b"P2\n1 1\n255\n\x00").is_err());
    assert!(read_pgm(b"P5\n2 2\n255\n\x00").is_err());
}

proptest! {
    #[test]
    fn pgm_round_trip(vals in prop::collection::vec(0u32..65536, 12), depth in prop::sample::select(vec![8u32, 12, 16])) {
        let max = (1u32 << depth) - 1;
        let v = Array2::from_shape_vec((4, 3), vals.iter().map(|x| (x % (max + 1)) as f64).collect()).unwrap();
        let g = SpectrumGrid::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 2.0, 3.0], v.clone()).unwrap();
        let (img, maxval) = read_pgm(&write_pgm(&g, depth).unwrap()).unwrap();
        prop_assert_eq!(maxval, max);
        for i in 0..4 {
            for j in 0..3 {
                prop_assert_eq!(img[[3 - i, j]] as f64, v[[i, j]]);
            }
        }
    }

    #[test]
    fn numbers_round_trip(x in 1e-3f64..1e12) {
        let cfg = parse_config(&format!("k_max = {x:e}\n")).unwrap();
        prop_assert_eq!(cfg.spectrum.k_max, Some(x));
        prop_assert_eq!(parse_config(&cfg.emit()).unwrap(), cfg);
    }
}
