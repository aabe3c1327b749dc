use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::{Embedding, QuadElem, QuadField, Rational};
use crate::{Error, Result};

/// `u + v√a` with `u, v, a ∈ F`; under an embedding σ with `σ(a) > 0` the
/// radical maps to the positive root `√σ(a)`.
///
/// Arithmetic is formal, in `F[t]/(t² − a)`. When `a` is a square in `F` that
/// ring has zero divisors, so values headed for division or polynomial gcds
/// are first collapsed with [`TowerElem::at_embedding`].
#[derive(Debug, Clone)]
pub struct TowerElem {
    a: QuadElem,
    u: QuadElem,
    v: QuadElem,
}

impl TowerElem {
    pub fn new(a: QuadElem, u: QuadElem, v: QuadElem) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidParameter("tower radicand must be nonzero"));
        }
        Ok(TowerElem { a, u, v })
    }

    pub fn from_quad(u: QuadElem) -> Self {
        let f = u.field();
        TowerElem {
            a: QuadElem::one(f),
            v: QuadElem::zero(f),
            u,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_quad(QuadElem::from_rational(QuadField::rationals(), r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_quad(QuadElem::from_int(QuadField::rationals(), n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√a` itself.
    pub fn sqrt_of(a: QuadElem) -> Result<Self> {
        let f = a.field();
        Self::new(a, QuadElem::zero(f), QuadElem::one(f))
    }

    pub fn radicand(&self) -> &QuadElem {
        &self.a
    }

    pub fn u(&self) -> &QuadElem {
        &self.u
    }

    pub fn v(&self) -> &QuadElem {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    /// True when the value lies in `F`.
    pub fn in_base(&self) -> bool {
        self.v.is_zero()
    }

    /// True when the value is a rational number.
    pub fn is_rational(&self) -> bool {
        self.v.is_zero() && self.u.is_rational()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| self.u.x())
    }

    pub fn conj(&self) -> Self {
        TowerElem {
            a: self.a.clone(),
            u: self.u.clone(),
            v: -&self.v,
        }
    }

    /// Relative norm `u² − a v²` down to `F`.
    pub fn relative_norm(&self) -> QuadElem {
        &self.u * &self.u - &self.a * &(&self.v * &self.v)
    }

    /// Exact sign of the embedded value.
    pub fn sign(&self, e: Embedding) -> Result<i8> {
        let su = self.u.sign(e);
        if self.v.is_zero() {
            return Ok(su);
        }
        if self.a.sign(e) <= 0 {
            return Err(Error::NegativeRadicand);
        }
        let sv = self.v.sign(e);
        if su == 0 || su == sv {
            return Ok(if su == 0 { sv } else { su });
        }
        Ok(match self.relative_norm().sign(e) {
            1 => su,
            -1 => sv,
            _ => 0,
        })
    }

    /// Folds `√a` into `F` when `a` is a square there, using the branch of
    /// the square root that is positive under `e`.
    pub fn at_embedding(&self, e: Embedding) -> Self {
        if self.v.is_zero() {
            return self.clone();
        }
        match self.a.sqrt_in_field() {
            Some(s) => {
                let s = if s.sign(e) < 0 { -s } else { s };
                TowerElem {
                    a: self.a.clone(),
                    u: &self.u + &(&self.v * &s),
                    v: QuadElem::zero(self.a.field()),
                }
            }
            None => self.clone(),
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.v.is_zero() {
            return Ok(TowerElem {
                a: self.a.clone(),
                u: self.u.checked_inv()?,
                v: self.v.clone(),
            });
        }
        let n = self.relative_norm().checked_inv()?;
        Ok(TowerElem {
            a: self.a.clone(),
            u: &self.u * &n,
            v: -(&self.v * &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn magnitude_bound(&self) -> BigInt {
        let root_a = self.a.magnitude_bound().sqrt() + BigInt::one();
        self.u.magnitude_bound() + self.v.magnitude_bound() * root_a
    }

    pub fn scale(&self, c: &QuadElem) -> Self {
        TowerElem {
            a: self.a.clone(),
            u: &self.u * c,
            v: &self.v * c,
        }
    }

    fn unify(&self, rhs: &Self) -> QuadElem {
        if rhs.v.is_zero() || self.a == rhs.a {
            self.a.clone()
        } else if self.v.is_zero() {
            rhs.a.clone()
        } else {
            panic!("mixed tower radicands {} and {}", self.a, rhs.a)
        }
    }
}

impl PartialEq for TowerElem {
    fn eq(&self, other: &Self) -> bool {
        if self.v.is_zero() && other.v.is_zero() {
            self.u == other.u
        } else {
            self.a == other.a && self.u == other.u && self.v == other.v
        }
    }
}

impl Eq for TowerElem {}

impl From<QuadElem> for TowerElem {
    fn from(u: QuadElem) -> Self {
        Self::from_quad(u)
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "({})+({})√({})", self.u, self.v, self.a)
        }
    }
}

impl Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        TowerElem {
            a: self.a.clone(),
            u: -&self.u,
            v: -&self.v,
        }
    }
}

impl Neg for TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        -&self
    }
}

impl Add for &TowerElem {
    type Output = TowerElem;
    fn add(self, rhs: &TowerElem) -> TowerElem {
        TowerElem {
            a: self.unify(rhs),
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }
}

impl Sub for &TowerElem {
    type Output = TowerElem;
    fn sub(self, rhs: &TowerElem) -> TowerElem {
        TowerElem {
            a: self.unify(rhs),
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }
}

impl Mul for &TowerElem {
    type Output = TowerElem;
    fn mul(self, rhs: &TowerElem) -> TowerElem {
        let a = self.unify(rhs);
        let (u, v) = if rhs.v.is_zero() {
            (&self.u * &rhs.u, &self.v * &rhs.u)
        } else if self.v.is_zero() {
            (&self.u * &rhs.u, &self.u * &rhs.v)
        } else {
            (
                &self.u * &rhs.u + &a * &(&self.v * &rhs.v),
                &self.u * &rhs.v + &self.v * &rhs.u,
            )
        };
        TowerElem { a, u, v }
    }
}

/// Panics on a zero divisor; use [`TowerElem::checked_div`] to get an error.
impl Div for &TowerElem {
    type Output = TowerElem;
    fn div(self, rhs: &TowerElem) -> TowerElem {
        self.checked_div(rhs).expect("division by zero in F(√a)")
    }
}

super::forward_binops!(TowerElem);
