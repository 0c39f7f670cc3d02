use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact coefficient: a polynomial in `π` and a formal symbol `T` (standing
/// for `τA` when it is kept symbolic) with rational coefficients.
///
/// Keys are `(π-power, T-power)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coeff {
    terms: BTreeMap<(u32, u32), BigRational>,
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0, 0)
    }

    pub fn monomial(c: BigRational, pi_pow: u32, t_pow: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((pi_pow, t_pow), c);
        }
        Self { terms }
    }

    pub fn rational(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(rational(n, 1))
    }

    /// `c·π`
    pub fn pi_multiple(c: BigRational) -> Self {
        Self::monomial(c, 1, 0)
    }

    pub fn pi() -> Self {
        Self::pi_multiple(BigRational::one())
    }

    /// The formal symbol `T`.
    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigRational> {
        &self.terms
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `∂/∂T`
    pub fn derivative_t(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                out.add_term((a, b - 1), c * BigInt::from(b));
            }
        }
        out
    }

    /// Replaces `T` by another coefficient.
    pub fn substitute_t(&self, value: &Coeff) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out = &out + &(&Self::monomial(c.clone(), a, 0) * &value.pow(b));
        }
        out
    }

    /// Free of `T`.
    pub fn is_numeric(&self) -> bool {
        self.terms.keys().all(|&(_, b)| b == 0)
    }

    /// `Some(c)` when the coefficient is `c·π^k` for a single `k`.
    pub fn as_pi_monomial(&self) -> Option<(BigRational, u32)> {
        match self.terms.len() {
            0 => Some((BigRational::zero(), 0)),
            1 => {
                let (&(a, b), c) = self.terms.iter().next()?;
                (b == 0).then(|| (c.clone(), a))
            }
            _ => None,
        }
    }

    pub fn eval(&self, pi: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                c.to_f64().unwrap_or(f64::NAN) * pi.powi(a as i32) * t.powi(b as i32)
            })
            .sum()
    }

    /// Numeric value with `π = 3.14159…`; `T` must be absent.
    pub fn to_f64(&self) -> f64 {
        self.eval(std::f64::consts::PI, f64::NAN)
    }

    /// Every monomial coefficient is ≥ 0.
    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 1 {
        return String::new();
    }
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

impl fmt::Display for Coeff {
    /// Highest `T` power first, then highest `π` power, e.g. `2π²T − 8π³`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|x, y| (y.1, y.0).cmp(&(x.1, x.0)));
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let sign = if c.is_negative() { "−" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "−")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let symbols = format!(
                "{}{}",
                if key.0 > 0 {
                    format!("π{}", superscript(key.0))
                } else {
                    String::new()
                },
                if key.1 > 0 {
                    format!("T{}", superscript(key.1))
                } else {
                    String::new()
                },
            );
            if mag.is_one() && !symbols.is_empty() {
                write!(f, "{symbols}")?;
            } else if mag.is_integer() {
                write!(f, "{}{symbols}", mag.numer())?;
            } else if symbols.is_empty() {
                write!(f, "{}/{}", mag.numer(), mag.denom())?;
            } else {
                write!(f, "({}/{}){symbols}", mag.numer(), mag.denom())?;
            }
        }
        Ok(())
    }
}
