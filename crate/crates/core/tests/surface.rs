//! Green's function against an independent Ewald lattice sum, plus
//! quadrature checks of its normalisation and of convolution against it.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vortexline::surface::{
    green_kernel, green_regular_part_at_origin, greens_function, integrate, make_torus,
    poisson_solve,
};
use vortexline::{GridField, PointOnTorus, TorusGeometry};

/// Exponential integral E₁(x), x > 0.
fn e1(x: f64) -> f64 {
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            sum -= term / k as f64;
        }
        -0.577_215_664_901_532_9 - x.ln() + sum
    } else {
        // modified Lentz continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..300 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Heat-kernel split of `G` at time `s`: reciprocal sum + image sum.
fn ewald(geom: &TorusGeometry, z: Complex64) -> f64 {
    let a = geom.area();
    let l = geom.scale();
    let s = 0.02 * l * l;
    let (w1, w2) = geom.periods();
    let mut acc = s / a;
    for m in -12i64..=12 {
        for n in -12i64..=12 {
            if m != 0 || n != 0 {
                let k = geom.wavevector(m, n);
                let k2 = k[0] * k[0] + k[1] * k[1];
                acc -= (k[0] * z.re + k[1] * z.im).cos() * (-k2 * s).exp() / (k2 * a);
            }
            let r = z - w1 * m as f64 - w2 * n as f64;
            acc -= e1(r.norm_sqr() / (4.0 * s)) / (4.0 * PI);
        }
    }
    acc
}

fn tori() -> Vec<std::sync::Arc<TorusGeometry>> {
    vec![
        make_torus(Complex64::i(), 1.0, (64, 64)).unwrap(),
        make_torus(Complex64::new(0.5, 3f64.sqrt() / 2.0), 2.0, (64, 64)).unwrap(),
        make_torus(Complex64::new(0.3, 1.7), 3.5, (64, 128)).unwrap(),
    ]
}

#[test]
fn kernel_matches_ewald_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in tori() {
        for _ in 0..8 {
            let z = g.from_lattice(rng.random::<f64>(), rng.random::<f64>());
            if g.reduce_centered(z).norm() < 1e-3 {
                continue;
            }
            let (ours, _) = green_kernel(&g, z);
            let oracle = ewald(&g, z);
            assert!((ours - oracle).abs() < 1e-10, "{ours} vs {oracle}");
        }
    }
}

#[test]
fn singular_part_is_the_planar_log() {
    for g in tori() {
        let reg = green_regular_part_at_origin(&g);
        let mut prev = f64::INFINITY;
        for r in [1e-1, 1e-2, 1e-3] {
            let z = Complex64::from_polar(r * g.scale(), 0.7);
            let d = ewald(&g, z) - z.norm().ln() / (2.0 * PI);
            // bounded, and converging to the regular part at rate O(r²)
            let gap = (d - reg).abs();
            assert!(gap < 2.0 * r * r + 1e-9, "gap {gap} at r {r}");
            assert!(gap <= prev);
            prev = gap;
        }
    }
}

#[test]
fn kernel_is_symmetric_in_its_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in tori() {
        for _ in 0..20 {
            let x = g.from_lattice(rng.random(), rng.random());
            let y = g.from_lattice(rng.random(), rng.random());
            let a = green_kernel(&g, x - y).0;
            let b = green_kernel(&g, y - x).0;
            assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
        }
    }
}

/// Gauss–Legendre nodes and weights on [0, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            (0.5 * (x + 1.0), 0.5 * w)
        })
        .collect()
}

/// Smooth step: 1 for t ≤ 0, 0 for t ≥ 1.
fn step(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / (1.0 - t)).exp();
    let b = (-1.0 / t).exp();
    a / (a + b)
}

/// `∫ G(z₀ − y) f(y) dy` with a partition of unity around the singularity:
/// a fine trapezoid rule for the smooth remainder and polar Gauss–Legendre
/// (with `r ∝ x⁴`) for the singular disc.
fn convolve(geom: &TorusGeometry, z0: Complex64, f: &dyn Fn(Complex64) -> f64) -> f64 {
    let (r1, r2) = (0.1 * geom.scale(), 0.25 * geom.scale());
    let chi = |r: f64| step((r - r1) / (r2 - r1));
    let fine = 384usize;
    let mut smooth = 0.0;
    for i in 0..fine {
        for j in 0..fine {
            let y = geom.from_lattice(i as f64 / fine as f64, j as f64 / fine as f64);
            let d = geom.reduce_centered(z0 - y);
            let c = chi(d.norm());
            if c < 1.0 {
                smooth += (1.0 - c) * green_kernel(geom, d).0 * f(y);
            }
        }
    }
    smooth *= geom.area() / (fine * fine) as f64;

    let nphi = 64;
    let gl = gauss_legendre(48);
    let mut disc = 0.0;
    for (lo, hi, power) in [(0.0, r1, 4), (r1, r2, 1)] {
        for &(x, w) in &gl {
            let (r, dr) = if power == 4 {
                (lo + (hi - lo) * x.powi(4), (hi - lo) * 4.0 * x.powi(3))
            } else {
                (lo + (hi - lo) * x, hi - lo)
            };
            if r == 0.0 {
                continue;
            }
            let mut ring = 0.0;
            for k in 0..nphi {
                let e = Complex64::from_polar(r, 2.0 * PI * k as f64 / nphi as f64);
                ring += green_kernel(geom, -e).0 * f(z0 + e);
            }
            disc += w * dr * r * chi(r) * ring * 2.0 * PI / nphi as f64;
        }
    }
    smooth + disc
}

#[test]
fn kernel_has_zero_mean_by_quadrature() {
    let g = make_torus(Complex64::new(0.5, 3f64.sqrt() / 2.0), 2.0, (64, 64)).unwrap();
    let m = convolve(&g, Complex64::new(0.31, 0.17), &|_| 1.0);
    assert!(m.abs() < 1e-10, "{m:e}");
}

#[test]
fn convolution_reproduces_poisson_solve() {
    let g = make_torus(Complex64::new(0.3, 1.1), 1.0, (64, 64)).unwrap();
    let f = |z: Complex64| {
        let (s, t) = g.to_lattice(z);
        (2.0 * PI * s).cos() + 0.5 * (2.0 * PI * (s + 2.0 * t)).sin() - 0.25 * (4.0 * PI * t).cos()
    };
    let field = GridField::from_fn(g.clone(), f);
    let u = poisson_solve(&field).unwrap();
    for (i, j) in [(0usize, 0usize), (17, 40), (50, 9)] {
        let z = g.node(i, j);
        let conv = convolve(&g, z, &f);
        let want = u.at(i, j);
        assert!((conv - want).abs() < 1e-8, "{conv} vs {want}");
    }
}

#[test]
fn sampled_kernel_flags_its_source() {
    let g = make_torus(Complex64::i(), 1.0, (32, 32)).unwrap();
    let src = PointOnTorus::from_lattice(&g, 3.0 / 32.0, 5.0 / 32.0);
    let s = greens_function(&g, &src);
    assert_eq!(s.singular_node, Some(3 * 32 + 5));
    assert_eq!(
        s.field.values()[3 * 32 + 5],
        green_regular_part_at_origin(&g)
    );
    // trapezoid mean of an on-node log singularity converges slowly, only
    // check it is small
    assert!(integrate(&s.field).abs() < 1e-2);
}
