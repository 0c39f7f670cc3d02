use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use vortexline::surface::{integrate, make_torus};
use vortexline::vortex::io::{read_solution, write_solution};
use vortexline::vortex::{
    bradlow_limit, curvature_field, density_field, solve, solve_taubes, solve_taubes_from,
    verify_solution, Divisor, Solution, SolveOptions, TaubesSolution, VortexParams,
};
use vortexline::{Error, GridField, TorusGeometry};

fn square(n: usize) -> Arc<TorusGeometry> {
    make_torus(Complex64::i(), 1.0, (n, n)).unwrap()
}

fn params(geom: &Arc<TorusGeometry>, tau: f64, zs: &[Complex64]) -> VortexParams {
    let d = Divisor::simple(geom, zs).unwrap();
    VortexParams::new(tau, geom.clone(), d).unwrap()
}

fn solved(tau: f64, zs: &[Complex64], n: usize) -> TaubesSolution {
    solve_taubes(&params(&square(n), tau, zs), &SolveOptions::default()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn bradlow_integral_at_eight_pi() {
    let s = solved(8.0 * PI, &[Complex64::new(0.0, 0.0)], 128);
    assert!(rel(integrate(&s.exp_u), 12.0 * PI) < 1e-6);
    assert!(s.residual_linf <= 1e-10);
    let rep = verify_solution(&Solution::Vortex(Box::new(s.clone())));
    assert!(rep.pde_residual_scaled <= 1e-10);
    assert!(rep.positivity_margin > 0.0);
    // the flux and Bradlow defects are the same identity rearranged
    assert!((rep.flux_defect - 0.5 * rep.bradlow_defect).abs() < 1e-12 * 12.0 * PI);
}

#[test]
fn residual_confirmed_on_doubled_grid() {
    let coarse = solved(8.0 * PI, &[Complex64::new(0.0, 0.0)], 128);
    let fine_params = coarse.params.with_geometry(square(256)).unwrap();
    let fine = solve_taubes(&fine_params, &SolveOptions::default()).unwrap();
    let mut diff: f64 = 0.0;
    for i in 0..128 {
        for j in 0..128 {
            let a = coarse.v.at(i, j);
            let b = fine.v.at(2 * i, 2 * j);
            diff = diff.max((a - b).abs());
        }
    }
    assert!(diff < 1e-8, "grid drift {diff:e}");
}

#[test]
fn near_bradlow_density_collapses() {
    let tau = 2.0 * PI * 1.01;
    let s = solved(tau, &[Complex64::new(0.0, 0.0)], 128);
    let expected = 2.0 * (tau - 2.0 * PI);
    assert!(rel(integrate(&s.exp_u), expected) < 1e-6);
    assert!(s.exp_u.max() < 3.0 * expected);
}

#[test]
fn translation_equivariance_on_grid_vectors() {
    let geom = square(64);
    let z = Complex64::new(0.2, 0.35);
    let base = solve_taubes(&params(&geom, 6.0 * PI, &[z]), &SolveOptions::default()).unwrap();
    let (di, dj) = (5isize, -9isize);
    let w = Complex64::new(di as f64 / 64.0, dj as f64 / 64.0);
    let moved = solve_taubes(&params(&geom, 6.0 * PI, &[z + w]), &SolveOptions::default()).unwrap();
    let shifted = base.exp_u.shifted(di, dj);
    let d = shifted.sub(&moved.exp_u).norm_inf();
    assert!(d < 1e-9 * moved.exp_u.max(), "{d:e}");
}

#[test]
fn degenerate_branch() {
    let geom = square(32);
    let p = params(&geom, 2.0 * PI, &[Complex64::new(0.1, 0.1)]);
    let d = bradlow_limit(&p).unwrap();
    assert_eq!(d.curvature_density, 2.0 * PI);
    assert_eq!(d.moment_map_value(), 2.0 * PI);
    let two = VortexParams::new(
        4.0 * PI,
        geom.clone(),
        Divisor::simple(&geom, &[Complex64::new(0.1, 0.1), Complex64::new(0.6, 0.4)]).unwrap(),
    )
    .unwrap();
    assert!((bradlow_limit(&two).unwrap().flux() - 4.0 * PI).abs() < 1e-12);
    match solve(&p, &SolveOptions::default()).unwrap() {
        Solution::Degenerate(_) => {}
        Solution::Vortex(_) => panic!("expected the degenerate branch"),
    }
    let rep = verify_solution(&Solution::Degenerate(d));
    assert!(rep.degenerate);
    assert_eq!(rep.pde_residual_linf, 0.0);
    assert_eq!(rep.bradlow_defect, 0.0);

    let stable = params(&geom, 3.0 * PI, &[Complex64::new(0.1, 0.1)]);
    assert!(matches!(bradlow_limit(&stable), Err(Error::Domain(_))));
    assert!(matches!(
        solve_taubes(&p, &SolveOptions::default()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn bradlow_violation_is_rejected() {
    let geom = square(32);
    let d = Divisor::simple(&geom, &[Complex64::new(0.0, 0.0)]).unwrap();
    assert!(matches!(
        VortexParams::new(PI, geom, d),
        Err(Error::Domain(_))
    ));
}

#[test]
fn density_and_curvature_at_cores() {
    let tau = 6.0 * PI;
    let s = solved(
        tau,
        &[Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.5)],
        64,
    );
    let rho = density_field(&s);
    let f = curvature_field(&s);
    let core_b = 32 * 64 + 32;
    assert_eq!(rho.values()[0], 0.0);
    assert_eq!(rho.values()[core_b], 0.0);
    assert_eq!(f.values()[0], tau);
    assert_eq!(f.max(), tau);
    assert!((integrate(&f) - 4.0 * PI).abs() < 1e-8);
    // quadratic vanishing next to a simple core
    let near = |k: usize| rho.at(k, 0);
    let ratio = near(2) / near(1);
    assert!((ratio - 4.0).abs() < 0.2, "{ratio}");
}

#[test]
fn double_core_vanishes_to_fourth_order() {
    let geom = square(64);
    let d = Divisor::new(
        vec![vortexline::PointOnTorus::new(
            &geom,
            Complex64::new(0.0, 0.0),
        )],
        vec![2],
    )
    .unwrap();
    let p = VortexParams::new(6.0 * PI, geom, d).unwrap();
    let s = solve_taubes(&p, &SolveOptions::default()).unwrap();
    let ratio = s.exp_u.at(2, 0) / s.exp_u.at(1, 0);
    assert!((ratio - 16.0).abs() < 1.0, "{ratio}");
    assert_eq!(s.exp_grad_u_sq.values()[0], 0.0);
}

#[test]
fn independent_of_initial_guess() {
    let geom = square(64);
    let p = params(
        &geom,
        5.0 * PI,
        &[Complex64::new(0.3, 0.1), Complex64::new(0.7, 0.6)],
    );
    let a = solve_taubes(&p, &SolveOptions::default()).unwrap();
    let init = GridField::from_fn(geom.clone(), |z| {
        1.0 + 0.4 * (2.0 * PI * z.re).sin() - 0.3 * (2.0 * PI * z.im).cos()
    });
    let b = solve_taubes_from(&p, &SolveOptions::default(), Some(init)).unwrap();
    assert!(a.v.sub(&b.v).norm_inf() <= 1e-8);
}

#[test]
fn inversion_symmetric_divisor_gives_even_solution() {
    let n = 64;
    let geom = square(n);
    let z0 = Complex64::new(0.125, 0.1875);
    let s = solve_taubes(
        &params(&geom, 5.0 * PI, &[z0, -z0]),
        &SolveOptions::default(),
    )
    .unwrap();
    for i in 0..n {
        for j in 0..n {
            let a = s.u.at(i, j);
            let b = s.u.at((n - i) % n, (n - j) % n);
            assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
        }
    }
}

#[test]
fn newton_tail_is_quadratic() {
    let s = solved(8.0 * PI, &[Complex64::new(0.0, 0.0)], 128);
    // iterates above the roundoff floor
    let h: Vec<f64> = s
        .residual_history
        .iter()
        .copied()
        .filter(|&e| e > 1e-9)
        .collect();
    assert!(h.len() >= 3);
    for w in h[h.len() - 3..].windows(2) {
        assert!(w[1] <= 10.0 * w[0] * w[0], "{:?}", h);
    }
}

#[test]
fn spectral_grid_convergence() {
    let z = [Complex64::new(0.0, 0.0)];
    let errs: Vec<f64> = [(16, 32), (32, 64)]
        .iter()
        .map(|&(n, m)| {
            let a = solved(60.0 * PI, &z, n);
            let b = solved(60.0 * PI, &z, m);
            let mut d: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    d = d.max((a.v.at(i, j) - b.v.at(2 * i, 2 * j)).abs());
                }
            }
            d
        })
        .collect();
    // much faster than the 2⁻⁴ a fourth-order scheme would give
    assert!(errs[1] < 1e-2 * errs[0], "{errs:?}");
}

#[test]
fn container_roundtrip() {
    let s = solved(6.0 * PI, &[Complex64::new(0.21, 0.4)], 32);
    let sol = Solution::Vortex(Box::new(s.clone()));
    let mut buf = Vec::new();
    write_solution(&sol, &mut buf).unwrap();
    let (header, back) = read_solution(&buf[..]).unwrap();
    assert_eq!(header.fields, vec!["u0", "v", "u"]);
    assert_eq!(header.newton_iters, s.newton_iters);
    match back {
        Solution::Vortex(b) => {
            assert_eq!(b.v.values(), s.v.values());
            assert_eq!(b.u.values(), s.u.values());
            assert_eq!(b.params.tau, s.params.tau);
        }
        Solution::Degenerate(_) => panic!(),
    }

    let mut bad = buf.clone();
    bad[0] = b'X';
    assert!(matches!(read_solution(&bad[..]), Err(Error::Format(_))));
    let truncated = &buf[..buf.len() - 8];
    assert!(read_solution(truncated).is_err());

    let geom = square(16);
    let p = params(&geom, 2.0 * PI, &[Complex64::new(0.1, 0.1)]);
    let deg = Solution::Degenerate(bradlow_limit(&p).unwrap());
    let mut buf = Vec::new();
    write_solution(&deg, &mut buf).unwrap();
    assert!(matches!(
        read_solution(&buf[..]).unwrap().1,
        Solution::Degenerate(_)
    ));
}
