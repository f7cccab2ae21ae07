//! Identity suites over the catalog, the engines and gauge transforms.

use aybe::catalog::{self, get, Arity, RSolution, NAMES};
use aybe::linalg::{c, identity, re, CMat};
use aybe::rmatrix::{apply_gauge, engine_solution, EngineSpec};
use aybe::verify::{self, classical_limit, laurent_v, LimitConfig, SampleConfig};
use aybe::C64;
use std::sync::Arc;

fn engines() -> Vec<RSolution> {
    [
        EngineSpec::Elliptic { tau: c(0.0, 1.1) },
        EngineSpec::Elliptic { tau: c(0.3, 1.2) },
        EngineSpec::Nodal { n: 2, d: 1 },
        EngineSpec::Nodal { n: 3, d: 1 },
        EngineSpec::Nodal { n: 3, d: 2 },
        EngineSpec::Cusp { n: 2, d: 1 },
        EngineSpec::Cusp { n: 3, d: 1 },
        EngineSpec::SemistableNodal,
    ]
    .into_iter()
    .map(|s| engine_solution(s).unwrap())
    .collect()
}

#[test]
fn engines_satisfy_aybe_and_unitarity() {
    for sol in engines() {
        let rep = verify::aybe(&sol, &SampleConfig::new(50, 1e-8)).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = verify::unitarity(&sol, &SampleConfig::new(50, 1e-10)).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}

#[test]
fn catalog_quantum_entries_satisfy_aybe() {
    for name in NAMES {
        let sol = get(name).unwrap();
        if sol.arity().is_classical() {
            let rep = verify::cybe(&sol, &SampleConfig::new(50, 1e-9)).unwrap();
            assert!(rep.pass, "{rep:?}");
        } else {
            for rep in [verify::aybe(&sol, &SampleConfig::new(50, 1e-9)), verify::unitarity(&sol, &SampleConfig::new(50, 1e-9))] {
                let rep = rep.unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
    }
}

#[test]
fn dual_equation_examples() {
    assert!(verify::aybe_dual(&get("trg21").unwrap(), &SampleConfig::new(50, 1e-9)).unwrap().pass);
    let ell = catalog::get_with("ell21", &catalog::CatalogParams { tau: c(0.0, 1.2) }).unwrap();
    assert!(verify::aybe_dual(&ell, &SampleConfig::new(50, 1e-8)).unwrap().pass);
}

#[test]
fn qybe_examples() {
    for (name, v0) in [("rat21", 0.7), ("trg21", 0.4), ("ell21", 0.3)] {
        let rep = verify::qybe(&get(name).unwrap(), re(v0), &SampleConfig::new(30, 1e-8)).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}

fn gauge_diag(v: C64, y: C64) -> CMat {
    let mut g = identity(2);
    g[(0, 0)] = (v * 0.3 + y * y).exp();
    g[(1, 1)] = c(1.5, 0.2) + v * y * 0.1;
    g
}

#[test]
fn gauged_solutions_still_satisfy_aybe() {
    for name in ["rat21", "trg21"] {
        let g = apply_gauge(&get(name).unwrap(), Arc::new(gauge_diag)).unwrap();
        let rep = verify::aybe(&g, &SampleConfig::new(30, 1e-8)).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}

#[test]
fn scalar_gauge_does_not_change_classical_limit() {
    let cc = c(0.4, 0.2);
    let rat = get("rat21").unwrap();
    let gauged = apply_gauge(&rat, Arc::new(move |v: C64, y: C64| identity(2) * (cc * v * y).exp())).unwrap();
    let spectral = RSolution::new("gauged", Arity::Spectral, 2, vec![], move |a| gauged.eval4(re(0.0), a[0], a[1], a[2]));
    let grid = [(c(0.1, 0.0), c(0.8, 0.1)), (c(-0.3, 0.2), c(0.4, -0.1))];
    let a = classical_limit(&spectral, &grid, &LimitConfig::default()).unwrap();
    let b = classical_limit(&rat, &grid, &LimitConfig::default()).unwrap();
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!((x - y).max_abs() < 1e-7);
    }
}

#[test]
fn rational_residue_is_half_identity() {
    let l = laurent_v(&get("rat21").unwrap(), c(0.1, 0.0), c(0.9, 0.2), 0.1).unwrap();
    let (alpha, defect) = l.identity_component(-1).unwrap();
    assert!((alpha - re(0.5)).norm() < 1e-10 && defect < 1e-10);
    assert_eq!(l.pole_order(1e-8), 1);
}

#[test]
fn laurent_coefficients_are_stable_under_radius_halving() {
    for name in ["ell21", "trg21", "rat21"] {
        let sol = get(name).unwrap();
        let a = laurent_v(&sol, c(0.0, 0.0), c(0.45, 0.1), 0.2).unwrap();
        let b = laurent_v(&sol, c(0.0, 0.0), c(0.45, 0.1), 0.1).unwrap();
        assert!((a.coeff(-1).unwrap() - b.coeff(-1).unwrap()).max_abs() < 1e-7, "{name}");
    }
}

#[test]
fn semistable_limit_diverges_with_higher_pole() {
    let sol = get("trg20_semistable").unwrap();
    let l = laurent_v(&sol, c(0.0, 0.0), c(0.5, 0.1), 0.1).unwrap();
    assert!(l.pole_order(1e-8) >= 2);
    assert!(matches!(classical_limit(&sol, &[(c(0.0, 0.0), c(0.5, 0.1))], &LimitConfig::default()), Err(aybe::Error::Divergence(_))));
}

#[test]
fn elliptic_classical_limit() {
    let sol = get("ell21").unwrap();
    let grid = [(c(0.0, 0.0), c(0.3, 0.1)), (c(0.1, 0.0), c(-0.25, 0.05))];
    let lim = classical_limit(&sol, &grid, &LimitConfig::default()).unwrap();
    // The projected limit is πθ₃(0)² times `ell21_classical`.
    let p = aybe::thetafn::ThetaParams::with_tau(c(0.0, 1.1)).unwrap();
    let t3 = aybe::thetafn::theta_j(3, re(0.0), &p).unwrap();
    let scaled = get("ell21_classical").unwrap().scaled(t3 * t3 * std::f64::consts::PI, "scaled");
    assert!(lim.max_deviation(&scaled).unwrap() < 1e-7);
}
