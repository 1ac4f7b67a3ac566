//! Exact scalars: rational Laurent polynomials in the formal parameter eps.
//!
//! `EpsScalar` is the coefficient ring K = Q[eps, eps^-1] of everything in this
//! crate. All arithmetic is exact; there is no rounding anywhere in the system.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Result, WeylError};

pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational Laurent polynomial in eps.
///
/// Invariant: no stored zero coefficients, so two scalars are equal iff their
/// term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsScalar {
    terms: BTreeMap<i64, Rational>,
}

impl EpsScalar {
    pub fn zero() -> Self {
        EpsScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(0, r)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(k)))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// The monomial `coeff * eps^exp`.
    pub fn term(exp: i64, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        EpsScalar { terms }
    }

    pub fn eps() -> Self {
        Self::term(1, Rational::one())
    }

    pub fn eps_pow(exp: i64) -> Self {
        Self::term(exp, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of eps^exp (zero if absent).
    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// True if the scalar is a plain rational (no eps dependence).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// Extract the plain rational value, if eps-free.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_rational() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add_assign_term(&mut self, exp: i64, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EpsScalar {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by eps^k (shift all exponents).
    pub fn shift_eps(&self, k: i64) -> Self {
        EpsScalar {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Exact division by eps: every exponent must be >= 1.
    pub fn div_eps_exact(&self) -> Result<Self> {
        if let Some(e) = self.min_exp() {
            if e < 1 {
                return Err(WeylError::NotDivisibleByEps(e));
            }
        }
        Ok(self.shift_eps(-1))
    }
}

impl Add for &EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: &EpsScalar) -> EpsScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_assign_term(*e, c);
        }
        out
    }
}

impl AddAssign<&EpsScalar> for EpsScalar {
    fn add_assign(&mut self, rhs: &EpsScalar) {
        for (e, c) in &rhs.terms {
            self.add_assign_term(*e, c);
        }
    }
}

impl Sub for &EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: &EpsScalar) -> EpsScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_assign_term(*e, &(-c));
        }
        out
    }
}

impl Neg for &EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        EpsScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &EpsScalar {
    type Output = EpsScalar;
    fn mul(self, rhs: &EpsScalar) -> EpsScalar {
        let mut out = EpsScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_assign_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders in the CLI expression grammar, e.g. `1/2*e^2 + 3 - 2*e^-1`.
impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest eps power first.
        for (exp, coeff) in self.terms.iter().rev() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let eps_part = match *exp {
                0 => None,
                1 => Some("e".to_string()),
                e => Some(format!("e^{e}")),
            };
            match eps_part {
                None => write!(f, "{}", fmt_rational(&abs))?,
                Some(ep) => {
                    if abs.is_one() {
                        write!(f, "{ep}")?;
                    } else {
                        write!(f, "{}*{}", fmt_rational(&abs), ep)?;
                    }
                }
            }
        }
        Ok(())
    }
}
