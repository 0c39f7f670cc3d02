//! Brute-force cohomology of `Σ_g^r` with rational coefficients.
//!
//! Each factor has basis `1, α_1..α_g, β_1..β_g, pt` with `α_a β_a = pt`,
//! `β_a α_a = −pt`; tensor products multiply with Koszul signs. The pullbacks
//! of `η` and `θ` from `Sym^r` are the symmetric classes `Σ_i pt_i` and
//! `Σ_a (Σ_i α_{i,a})(Σ_j β_{j,a})`, and `∫_{Sym^r} = (1/r!) ∫_{Σ^r}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Basis label of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Factor {
    One,
    Alpha(u32),
    Beta(u32),
    Pt,
}

impl Factor {
    fn degree(self) -> u32 {
        match self {
            Factor::One => 0,
            Factor::Alpha(_) | Factor::Beta(_) => 1,
            Factor::Pt => 2,
        }
    }

    /// Product in `H*(Σ)`: `(sign, factor)` or `None` for zero.
    fn mul(self, other: Factor) -> Option<(i32, Factor)> {
        match (self, other) {
            (Factor::One, x) | (x, Factor::One) => Some((1, x)),
            (Factor::Alpha(a), Factor::Beta(b)) if a == b => Some((1, Factor::Pt)),
            (Factor::Beta(a), Factor::Alpha(b)) if a == b => Some((-1, Factor::Pt)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductClass {
    r: usize,
    terms: BTreeMap<Vec<Factor>, BigRational>,
}

impl ProductClass {
    fn zero(r: usize) -> Self {
        Self {
            r,
            terms: BTreeMap::new(),
        }
    }

    fn single(r: usize, slot: usize, f: Factor) -> Self {
        let mut key = vec![Factor::One; r];
        key[slot] = f;
        let mut out = Self::zero(r);
        out.terms.insert(key, BigRational::one());
        out
    }

    pub fn one(r: usize) -> Self {
        let mut out = Self::zero(r);
        out.terms.insert(vec![Factor::One; r], BigRational::one());
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let slot = out.terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.r);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.r);
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                // moving y_j past x_i for i > j
                let mut sign = 1i32;
                for j in 0..self.r {
                    for i in j + 1..self.r {
                        if x[i].degree() % 2 == 1 && y[j].degree() % 2 == 1 {
                            sign = -sign;
                        }
                    }
                }
                let mut key = Vec::with_capacity(self.r);
                let mut alive = true;
                for i in 0..self.r {
                    match x[i].mul(y[i]) {
                        Some((s, f)) => {
                            sign *= s;
                            key.push(f);
                        }
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
                if alive {
                    let c = cx * cy * BigRational::from_integer(BigInt::from(sign));
                    let single = Self {
                        r: self.r,
                        terms: BTreeMap::from([(key, c)]),
                    };
                    out = out.add(&single);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.r), |acc, _| acc.mul(self))
    }

    /// `∫_{Sym^r}` of a symmetric class: the `pt ⊗ … ⊗ pt` coefficient over `r!`.
    pub fn integrate_sym(&self) -> BigRational {
        let top = vec![Factor::Pt; self.r];
        let c = self
            .terms
            .get(&top)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let fact = (1..=self.r as i64).fold(BigInt::from(1), |a, k| a * BigInt::from(k));
        c / BigRational::from_integer(fact)
    }
}

pub fn eta(r: usize) -> ProductClass {
    (0..r).fold(ProductClass::zero(r), |acc, i| {
        acc.add(&ProductClass::single(r, i, Factor::Pt))
    })
}

pub fn theta(r: usize, g: u32) -> ProductClass {
    let mut out = ProductClass::zero(r);
    for a in 1..=g {
        let alpha = (0..r).fold(ProductClass::zero(r), |acc, i| {
            acc.add(&ProductClass::single(r, i, Factor::Alpha(a)))
        });
        let beta = (0..r).fold(ProductClass::zero(r), |acc, i| {
            acc.add(&ProductClass::single(r, i, Factor::Beta(a)))
        });
        out = out.add(&alpha.mul(&beta));
    }
    out
}

/// `∫_{Sym^r} η^{r−k} θ^k` by brute force.
pub fn intersection_number(r: usize, g: u32, k: u32) -> BigRational {
    eta(r)
        .pow(r as u32 - k)
        .mul(&theta(r, g).pow(k))
        .integrate_sym()
}
