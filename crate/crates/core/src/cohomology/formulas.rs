use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{eta, integrate_top, theta, Coeff, CohClass, IntegralValue};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn two_pi() -> Coeff {
    Coeff::pi_multiple(BigRational::from_integer(BigInt::from(2)))
}

/// `[σ_τ] = 2π(τA·η + 2π(θ − rη))`. `tau_area` may contain the symbol `T`.
pub fn vortex_class(tau_area: &Coeff, r: u32, g: u32) -> CohClass {
    let e = eta(r, g);
    let shift = theta(r, g)
        .sub(&e.scale(&Coeff::integer(r as i64)))
        .expect("same (r, g)");
    e.scale(tau_area)
        .add(&shift.scale(&two_pi()))
        .expect("same (r, g)")
        .scale(&two_pi())
}

/// `∫ [σ_τ]^r / r!`.
pub fn predicted_volume(tau_area: &Coeff, r: u32, g: u32) -> IntegralValue {
    let top = vortex_class(tau_area, r, g).pow(r);
    let v = integrate_top(&top);
    IntegralValue {
        value: v
            .value
            .scale(&BigRational::new(BigInt::from(1), factorial(r))),
    }
}

/// The two slant-product brackets of the universal divisor on a fibre:
/// `w^{[1]} = (∫w)·η` for a fibre class with integral `a`, and
/// `1^{[2]} = 2rη − 2θ`.
pub fn one_two_bracket_identities(r: u32, g: u32, fiber_integral: &Coeff) -> (CohClass, CohClass) {
    let w1 = eta(r, g).scale(fiber_integral);
    let one2 = eta(r, g)
        .scale(&Coeff::integer(2 * r as i64))
        .sub(&theta(r, g).scale(&Coeff::integer(2)))
        .expect("same (r, g)");
    (w1, one2)
}

/// `2π(τ·w^{[1]} − π·1^{[2]})` with `w` the fibre area form, `∫w = A`.
pub fn family_class(tau: &Coeff, area: &Coeff, r: u32, g: u32) -> CohClass {
    let (w1, one2) = one_two_bracket_identities(r, g, area);
    w1.scale(tau)
        .sub(&one2.scale(&Coeff::pi()))
        .expect("same (r, g)")
        .scale(&two_pi())
}

/// `c₁(T^v Sym^r) = ½(c₁(TΣ)^{[1]} + 1^{[2]}) = (1 − g + r)η − θ`.
pub fn chern_vertical(r: u32, g: u32) -> CohClass {
    let c1_sigma = Coeff::integer(2 - 2 * g as i64);
    let (w1, one2) = one_two_bracket_identities(r, g, &c1_sigma);
    w1.add(&one2)
        .expect("same (r, g)")
        .scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(2)))
}

/// `d[σ_τ]/dτ = 2πA·η`.
pub fn dh_slope_class(r: u32, g: u32, area: &Coeff) -> CohClass {
    let slope = eta(r, g).scale(&(&two_pi() * area));
    debug_assert_eq!(slope, vortex_class_tau_derivative(r, g, area));
    slope
}

/// Formal `τ`-derivative of `vortex_class(τ·A)`, i.e. `A·∂/∂T` of the
/// symbolic class.
pub fn vortex_class_tau_derivative(r: u32, g: u32, area: &Coeff) -> CohClass {
    vortex_class(&Coeff::t(), r, g).map_coefficients(|c| &c.derivative_t() * area)
}

/// Univariate rational polynomial, lowest degree first.
type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect(),
    )
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = trim(a.clone());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap().clone() / &lead;
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= &f * c;
        }
        r = trim(r);
    }
    r
}

/// Sign changes of the Sturm chain at `x`.
fn sturm_changes(chain: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

/// Distinct real roots in the half-open interval `(a, b]`.
fn roots_in(p: &Poly, a: &BigRational, b: &BigRational) -> usize {
    let chain = sturm_chain(p);
    sturm_changes(&chain, a) - sturm_changes(&chain, b)
}

/// The predicted volume as a polynomial `Q(x)` with
/// `Vol(τA = πx) = π^{2r} Q(x)`; the volume is homogeneous of degree `2r`
/// in `(π, τA)`.
pub fn volume_polynomial(r: u32, g: u32) -> Poly {
    let v = predicted_volume(&Coeff::t(), r, g).value;
    let mut q = vec![BigRational::zero(); 2 * r as usize + 1];
    for (&(a, b), c) in v.terms() {
        debug_assert_eq!(a + b, 2 * r);
        q[b as usize] += c;
    }
    trim(q)
}

/// `Vol > 0` for every `τA > 2πr`: after `τA = 2πr + s` all coefficients of
/// the volume, as a polynomial in `π` and `s`, are nonnegative and not all
/// zero.
pub fn volume_positive_above_bradlow(r: u32, g: u32) -> bool {
    let v = predicted_volume(&Coeff::t(), r, g).value;
    let shift = &Coeff::pi_multiple(BigRational::from_integer(BigInt::from(2 * r))) + &Coeff::t();
    let shifted = v.substitute_t(&shift);
    !shifted.is_zero() && shifted.all_nonnegative()
}

/// `Vol > 0 ⇔ τA > 2πr` on `τA > 0`: positive above the bound and `≤ 0` on
/// `(0, 2πr]`. Returns `false` when the second half fails or cannot be
/// certified by root isolation.
pub fn volume_positive_iff_above_bradlow(r: u32, g: u32) -> bool {
    if !volume_positive_above_bradlow(r, g) {
        return false;
    }
    let q = volume_polynomial(r, g);
    let zero = BigRational::zero();
    let bound = BigRational::from_integer(BigInt::from(2 * r));
    // no root strictly inside (0, 2r), so Q has constant sign there
    let inside = roots_in(&q, &zero, &bound) - usize::from(eval(&q, &bound).is_zero());
    if inside > 0 {
        return false;
    }
    let mid = BigRational::from_integer(BigInt::from(r));
    !eval(&q, &mid).is_positive() && !eval(&q, &bound).is_positive()
}

/// Convenience: `τA = c·π` for a rational `c`.
pub fn tau_area_pi(c: BigRational) -> Coeff {
    Coeff::pi_multiple(c)
}

/// `true` when `τA` is exactly the Bradlow value `2πr`.
pub fn is_degenerate(tau_area: &Coeff, r: u32) -> bool {
    (tau_area - &Coeff::pi_multiple(BigRational::from_integer(BigInt::from(2 * r)))).is_zero()
}
