mod support {
    pub mod product_ring;
}

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use support::product_ring;
use vortexline::cohomology::{
    chern_vertical, cup, dh_slope_class, eta, family_class, integrate_top,
    one_two_bracket_identities, predicted_volume, rational, theta, volume_positive_above_bradlow,
    volume_positive_iff_above_bradlow, vortex_class, vortex_class_tau_derivative, Coeff, CohClass,
};

fn top(r: u32, g: u32, k: u32) -> Coeff {
    let c = cup(&eta(r, g).pow(r - k), &theta(r, g).pow(k)).unwrap();
    integrate_top(&c).value
}

#[test]
fn intersection_rule_matches_product_ring() {
    // the certified small cases, then everything cheap enough to enumerate
    for (r, k) in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)] {
        for g in 0..=3u32 {
            let oracle = product_ring::intersection_number(r, g, k);
            assert_eq!(
                top(r as u32, g, k),
                Coeff::rational(oracle),
                "r={r} g={g} k={k}"
            );
        }
    }
    for r in 3..=4usize {
        for g in 0..=2u32 {
            for k in 0..=r as u32 {
                let oracle = product_ring::intersection_number(r, g, k);
                assert_eq!(
                    top(r as u32, g, k),
                    Coeff::rational(oracle),
                    "r={r} g={g} k={k}"
                );
            }
        }
    }
}

#[test]
fn mixed_products_match_product_ring() {
    // (η + 2θ)² (3η − θ) on Sym³ of genus 2, by both routes
    let (r, g) = (3u32, 2u32);
    let a = eta(r, g)
        .add(&theta(r, g).scale(&Coeff::integer(2)))
        .unwrap();
    let b = eta(r, g)
        .scale(&Coeff::integer(3))
        .sub(&theta(r, g))
        .unwrap();
    let ours = integrate_top(&cup(&a.pow(2), &b).unwrap()).value;

    let (pe, pt) = (product_ring::eta(3), product_ring::theta(3, 2));
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    let minus = BigRational::from_integer(BigInt::from(-1));
    let pa = pe.add(&pt.scale(&two));
    let pb = pe.scale(&three).add(&pt.scale(&minus));
    let oracle = pa.pow(2).mul(&pb).integrate_sym();
    assert_eq!(ours, Coeff::rational(oracle));
}

#[test]
fn vortex_class_examples() {
    let pi = |c: i64| Coeff::pi_multiple(rational(c, 1));
    let c = vortex_class(&pi(8), 1, 1);
    assert_eq!(c.coefficient(1, 0), Coeff::monomial(rational(12, 1), 2, 0));
    assert_eq!(c.coefficient(0, 1), Coeff::monomial(rational(4, 1), 2, 0));
    assert_eq!(
        integrate_top(&c).value,
        Coeff::monomial(rational(16, 1), 2, 0)
    );

    assert!(predicted_volume(&pi(2), 1, 0).value.is_zero());
    for r in 1..=6u32 {
        for g in 0..=4u32 {
            let deg = vortex_class(&pi(2 * r as i64), r, g);
            let want = theta(r, g).scale(&Coeff::monomial(rational(4, 1), 2, 0));
            assert_eq!(deg, want);
        }
    }
}

#[test]
fn predicted_volume_closed_forms() {
    let t = Coeff::t();
    let pi = Coeff::pi();
    let two_pi = Coeff::pi_multiple(rational(2, 1));
    // r=1, g=1: 2πT
    assert_eq!(predicted_volume(&t, 1, 1).value, &two_pi * &t);
    // r=2, g=1: 2π²T(T − 4π)
    let want = &(&Coeff::monomial(rational(2, 1), 2, 0) * &t) * &(&t - &pi.scale(&rational(4, 1)));
    assert_eq!(predicted_volume(&t, 2, 1).value, want);
    // r=1, g=0: 2π(T − 2π)
    assert_eq!(predicted_volume(&t, 1, 0).value, &two_pi * &(&t - &two_pi));
    // (2, 1, 8π) → 64π⁴
    let v = predicted_volume(&Coeff::pi_multiple(rational(8, 1)), 2, 1).value;
    assert_eq!(v, Coeff::monomial(rational(64, 1), 4, 0));
}

#[test]
fn family_class_reduces_to_vortex_class() {
    for r in 1..=6u32 {
        for g in 0..=4u32 {
            for (num, den) in [(7, 1), (21, 10), (2 * r as i64, 1), (1, 3)] {
                let tau_a = Coeff::pi_multiple(rational(num, den));
                // split τA as τ·A with A = 3/2
                let area = Coeff::rational(rational(3, 2));
                let tau = tau_a.scale(&rational(2, 3));
                assert_eq!(family_class(&tau, &area, r, g), vortex_class(&tau_a, r, g));
            }
            // and fully symbolic in τA
            let t = Coeff::t();
            assert_eq!(
                family_class(&t, &Coeff::one(), r, g),
                vortex_class(&t, r, g)
            );
        }
    }
}

#[test]
fn bracket_examples() {
    let area = Coeff::rational(rational(5, 1));
    let (w1, one2) = one_two_bracket_identities(2, 1, &area);
    assert_eq!(w1, eta(2, 1).scale(&area));
    let want = eta(2, 1)
        .scale(&Coeff::integer(4))
        .sub(&theta(2, 1).scale(&Coeff::integer(2)))
        .unwrap();
    assert_eq!(one2, want);
}

#[test]
fn chern_vertical_examples() {
    for g in 0..=5u32 {
        let c = chern_vertical(1, g);
        assert_eq!(integrate_top(&c).value, Coeff::integer(2 - 2 * g as i64));
    }
    assert_eq!(chern_vertical(1, 0), eta(1, 0).scale(&Coeff::integer(2)));
    assert_eq!(
        chern_vertical(2, 1),
        eta(2, 1)
            .scale(&Coeff::integer(2))
            .sub(&theta(2, 1))
            .unwrap()
    );
    let c = chern_vertical(1, 1);
    assert_eq!(c.coefficient(1, 0), Coeff::one());
    assert_eq!(c.coefficient(0, 1), Coeff::integer(-1));
    // mixed product against the vortex class is a plain exact number
    let tau_a = Coeff::pi_multiple(rational(9, 1));
    let k = vortex_class(&tau_a, 3, 2)
        .pow(2)
        .scale_rational(&rational(1, 2));
    let v = integrate_top(&cup(&chern_vertical(3, 2), &k).unwrap());
    assert!(v.value.is_numeric());
}

#[test]
fn dh_slope_is_the_tau_derivative() {
    for r in 1..=4u32 {
        for g in 0..=3u32 {
            let area = Coeff::rational(rational(3, 1));
            let slope = dh_slope_class(r, g, &area);
            assert_eq!(slope, vortex_class_tau_derivative(r, g, &area));
            assert_eq!(slope, eta(r, g).scale(&Coeff::pi_multiple(rational(6, 1))));
        }
    }
    let s = integrate_top(&dh_slope_class(1, 1, &Coeff::one())).value;
    assert_eq!(s, Coeff::pi_multiple(rational(2, 1)));
}

#[test]
fn volume_positivity() {
    for r in 1..=4u32 {
        for g in 0..=3u32 {
            assert!(volume_positive_above_bradlow(r, g), "r={r} g={g}");
        }
    }
    assert!(volume_positive_iff_above_bradlow(1, 0));
    assert!(volume_positive_iff_above_bradlow(2, 1));
    // positive below the bound as well: 2πτA and 2π²(τA − 4π)²
    assert!(!volume_positive_iff_above_bradlow(1, 1));
    assert!(!volume_positive_iff_above_bradlow(2, 0));
}

fn small_class(r: u32, g: u32, coeffs: &[i64]) -> CohClass {
    let mut out = CohClass::zero(r, g);
    let mut k = 0;
    for p in 0..=r {
        for q in 0..=g.min(r - p) {
            let c = coeffs[k % coeffs.len()];
            k += 1;
            out = out
                .add(&CohClass::monomial(r, g, p, q, Coeff::integer(c)))
                .unwrap();
        }
    }
    out
}

proptest! {
    #[test]
    fn cup_is_commutative_and_associative(
        r in 1u32..5, g in 0u32..4,
        a in proptest::collection::vec(-5i64..5, 1..8),
        b in proptest::collection::vec(-5i64..5, 1..8),
        c in proptest::collection::vec(-5i64..5, 1..8),
    ) {
        let (x, y, z) = (small_class(r, g, &a), small_class(r, g, &b), small_class(r, g, &c));
        prop_assert_eq!(cup(&x, &y).unwrap(), cup(&y, &x).unwrap());
        prop_assert_eq!(
            cup(&cup(&x, &y).unwrap(), &z).unwrap(),
            cup(&x, &cup(&y, &z).unwrap()).unwrap()
        );
        let lhs = cup(&x, &y.add(&z).unwrap()).unwrap();
        let rhs = cup(&x, &y).unwrap().add(&cup(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn family_identity_for_rational_tau_area(
        r in 1u32..7, g in 0u32..5, num in 1i64..200, den in 1i64..50,
    ) {
        let tau_a = Coeff::pi_multiple(rational(num, den));
        prop_assert_eq!(
            family_class(&tau_a, &Coeff::one(), r, g),
            vortex_class(&tau_a, r, g)
        );
    }
}
