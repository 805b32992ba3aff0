//! Eigenvalues along the radius, the boundary-integral derivative and sweeps.

mod common;

use schwarz_eigen::schwarz::{
    fd_derivative, fd_derivative_richardson, hadamard_derivative, lambda_of_r, phi_limit_zero,
    sweep, Verdict,
};
use schwarz_eigen::{BasisSpec, ConformalMap, Error, GridSpec};

fn ctx() -> (BasisSpec, GridSpec) {
    (BasisSpec::default(), GridSpec::default())
}

fn map(c: &[f64]) -> ConformalMap {
    ConformalMap::from_real(c).unwrap()
}

#[test]
fn eigenvalue_values() {
    let (b, g) = ctx();
    let j2 = common::j0_zero().powi(2);
    let l = lambda_of_r(&ConformalMap::identity(), 0.5, &b, &g)
        .unwrap()
        .lambda;
    assert!((l - 4.0 * j2).abs() < 1e-8 * l);
    let l = lambda_of_r(&map(&[0.0, 0.7]), 0.5, &b, &g).unwrap().lambda;
    assert!((l - j2 / (0.49 * 0.25)).abs() < 1e-8 * l);
    let l = lambda_of_r(&map(&[0.0, 0.0, 1.0]), 0.6, &b, &g)
        .unwrap()
        .lambda;
    assert!((l - j2 / 0.6f64.powi(4)).abs() < 1e-6 * l);
}

#[test]
fn linear_maps_balance_the_decrease_criterion() {
    let (b, g) = ctx();
    for a in [0.7, 1.0, 2.0] {
        for r in [0.3, 0.8] {
            let sol = lambda_of_r(&map(&[0.0, a]), r, &b, &g).unwrap();
            let d = hadamard_derivative(&sol, g.n_ang).unwrap();
            assert!((d * r + 2.0 * sol.lambda).abs() < 1e-9 * sol.lambda);
        }
    }
}

#[test]
fn central_difference_values() {
    let (b, g) = ctx();
    let j2 = common::j0_zero().powi(2);
    let fd = fd_derivative(&ConformalMap::identity(), 0.5, 1e-3, &b, &g).unwrap();
    let exact = -2.0 * j2 / 0.125;
    assert!((fd - exact).abs() < 1e-5 * exact.abs());

    let f = map(&[0.0, 1.0, 0.3]);
    for r in [0.2, 0.5, 0.8] {
        let sol = lambda_of_r(&f, r, &b, &g).unwrap();
        let had = hadamard_derivative(&sol, g.n_ang).unwrap();
        let fd = fd_derivative(&f, r, 1e-3, &b, &g).unwrap();
        assert!((fd - had).abs() < 1e-4 * fd.abs(), "r = {r}");
        // O(h²): halving the step cuts the gap by about four
        let fd2 = fd_derivative(&f, r, 5e-4, &b, &g).unwrap();
        let ratio = (fd - had).abs() / (fd2 - had).abs();
        assert!((3.5..4.5).contains(&ratio), "r = {r}: ratio {ratio}");
        let rich = fd_derivative_richardson(&f, r, 1e-3, &b, &g).unwrap();
        assert!((rich - had).abs() < 1e-7 * had.abs());
    }
}

#[test]
fn stencils_straddling_a_critical_radius_are_refused() {
    let (b, g) = ctx();
    // f' = 1 − z has its zero on |z| = 1; f' = 1 − 2z at |z| = 0.5
    let f = map(&[0.0, 1.0, -1.0]);
    let err = fd_derivative(&f, 0.5, 1e-3, &b, &g).unwrap_err();
    assert!(matches!(err, Error::NearCriticalRadius { .. }));
    assert!(matches!(
        lambda_of_r(&f, 0.5, &b, &g).unwrap_err(),
        Error::NearCriticalRadius { .. }
    ));
}

#[test]
fn sweep_verdicts() {
    let (b, g) = ctx();
    let id = sweep(&ConformalMap::identity(), 0.05, 0.95, 19, &b, &g).unwrap();
    assert_eq!(id.verdict, Verdict::Constant);
    assert_eq!(id.points.len(), 19);
    assert!(id.points.iter().all(|p| (p.phi - 1.0).abs() < 1e-8));

    let lin = sweep(&map(&[0.0, 0.7]), 0.05, 0.95, 7, &b, &g).unwrap();
    assert_eq!(lin.verdict, Verdict::Constant);
    assert!(lin.points.iter().all(|p| (p.phi - 1.0 / 0.49).abs() < 1e-8));

    let sq = sweep(&map(&[0.0, 0.0, 1.0]), 0.05, 0.95, 7, &b, &g).unwrap();
    assert_eq!(sq.verdict, Verdict::Decreasing);
    for p in &sq.points {
        assert!((p.phi * p.r * p.r - 1.0).abs() < 1e-5);
    }

    let quad = sweep(&map(&[0.0, 1.0, 0.3]), 0.05, 0.95, 19, &b, &g).unwrap();
    assert_eq!(quad.verdict, Verdict::Decreasing);
    for p in &quad.points {
        assert!(p.univalent_certified);
        assert!(p.decrease_criterion < 0.0);
        assert!(p.chain_slack.0 >= -1e-10 && p.chain_slack.1 >= -1e-10);
        assert!((p.dlambda_fd - p.dlambda_hadamard).abs() < 1e-4 * p.dlambda_fd.abs());
    }
}

#[test]
fn near_linear_maps_are_reported_honestly() {
    let (b, g) = ctx();
    let rep = sweep(&map(&[0.0, 1.0, 1e-6]), 0.1, 0.9, 5, &b, &g).unwrap();
    assert_eq!(rep.verdict, Verdict::ConstantWithinTolerance);
}

#[test]
fn sweeps_skip_critical_radii() {
    let (b, g) = ctx();
    // f' = 1 − 2z: critical radius 0.5 is a grid point of the sweep
    let rep = sweep(&map(&[0.0, 1.0, -1.0]), 0.1, 0.9, 9, &b, &g).unwrap();
    assert_eq!(rep.skipped, vec![0.5]);
    assert_eq!(rep.points.len(), 8);
}

#[test]
fn small_radius_limits() {
    let (b, g) = ctx();
    for (c, expect) in [
        (vec![0.0, 1.0], 1.0),
        (vec![0.0, 1.0, 0.3], 1.0),
        (vec![0.0, 2.0, 0.3], 0.25),
    ] {
        let p = phi_limit_zero(&map(&c), &b, &g).unwrap();
        assert!((p - expect).abs() < 2e-2, "{c:?}: {p}");
    }
    assert!(phi_limit_zero(&map(&[0.0, 0.0, 1.0]), &b, &g).is_err());
}
