use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Coeff;
use crate::error::{domain, Result};

/// A class in `H*(Sym^r Σ_g)` written as `Σ c_pq η^p θ^q`.
///
/// Monomials above the top degree (`p + q > r`) and powers `θ^q` with
/// `q > g` vanish and are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    r: u32,
    g: u32,
    terms: BTreeMap<(u32, u32), Coeff>,
}

/// An exact number `Σ c·π^a` (a [`Coeff`] free of the symbol `T`, unless a
/// symbolic `τA` was requested).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralValue {
    pub value: Coeff,
}

impl IntegralValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl fmt::Display for IntegralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl CohClass {
    pub fn zero(r: u32, g: u32) -> Self {
        Self {
            r,
            g,
            terms: BTreeMap::new(),
        }
    }

    /// `c·η^p θ^q`.
    pub fn monomial(r: u32, g: u32, p: u32, q: u32, c: Coeff) -> Self {
        let mut out = Self::zero(r, g);
        out.add_term((p, q), c);
        out
    }

    pub fn one(r: u32, g: u32) -> Self {
        Self::monomial(r, g, 0, 0, Coeff::one())
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    /// Nonzero coefficients keyed by `(η-exponent, θ-exponent)`.
    pub fn terms(&self) -> &BTreeMap<(u32, u32), Coeff> {
        &self.terms
    }

    pub fn coefficient(&self, p: u32, q: u32) -> Coeff {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, key: (u32, u32), c: Coeff) {
        if key.0 + key.1 > self.r || key.1 > self.g || c.is_zero() {
            return;
        }
        let sum = &self.terms.get(&key).cloned().unwrap_or_default() + &c;
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    fn check(&self, other: &CohClass) -> Result<()> {
        if (self.r, self.g) != (other.r, other.g) {
            return domain(format!(
                "classes on Sym^{} of genus {} and Sym^{} of genus {}",
                self.r, self.g, other.r, other.g
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CohClass) -> Result<CohClass> {
        self.add(&other.scale(&Coeff::integer(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> CohClass {
        let mut out = Self::zero(self.r, self.g);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &BigRational) -> CohClass {
        self.scale(&Coeff::rational(c.clone()))
    }

    pub fn pow(&self, k: u32) -> CohClass {
        let mut acc = Self::one(self.r, self.g);
        for _ in 0..k {
            acc = cup_unchecked(&acc, self);
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Coeff) -> Coeff) -> CohClass {
        let mut out = Self::zero(self.r, self.g);
        for (k, v) in &self.terms {
            out.add_term(*k, f(v));
        }
        out
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(p, q), c)| {
                let mut mono = String::new();
                match p {
                    0 => {}
                    1 => mono.push('η'),
                    _ => mono.push_str(&format!("η^{p}")),
                }
                match q {
                    0 => {}
                    1 => mono.push('θ'),
                    _ => mono.push_str(&format!("θ^{q}")),
                }
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})·{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn eta(r: u32, g: u32) -> CohClass {
    CohClass::monomial(r, g, 1, 0, Coeff::one())
}

pub fn theta(r: u32, g: u32) -> CohClass {
    CohClass::monomial(r, g, 0, 1, Coeff::one())
}

fn cup_unchecked(a: &CohClass, b: &CohClass) -> CohClass {
    let mut out = CohClass::zero(a.r, a.g);
    for (&(p1, q1), c1) in &a.terms {
        for (&(p2, q2), c2) in &b.terms {
            out.add_term((p1 + p2, q1 + q2), c1 * c2);
        }
    }
    out
}

/// Cup product; commutative since η and θ have even degree.
pub fn cup(a: &CohClass, b: &CohClass) -> Result<CohClass> {
    a.check(b)?;
    Ok(cup_unchecked(a, b))
}

fn falling_factorial(g: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(g - i))
}

/// `∫_{Sym^r} η^{r−k} θ^k = g!/(g−k)!` for `k ≤ min(r, g)`; monomials below
/// the top degree integrate to zero.
pub fn integrate_top(c: &CohClass) -> IntegralValue {
    let mut value = Coeff::zero();
    for (&(p, q), coeff) in &c.terms {
        if p + q == c.r && q <= c.g {
            let n = BigRational::from_integer(falling_factorial(c.g, q));
            value = &value + &coeff.scale(&n);
        }
    }
    IntegralValue { value }
}
