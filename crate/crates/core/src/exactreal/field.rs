//! The real quadratic field `F = Q(√d)` and its two real embeddings.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use super::{rational_sqrt, sign_of, Rational};
use crate::{Error, Result};

/// `Q(√d)` for a square-free `d > 1`, or `Q` itself when `d = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d < 1 || !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        Ok(QuadField { d })
    }

    pub const fn rationals() -> Self {
        QuadField { d: 1 }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn degree(&self) -> usize {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    /// `O_F = Z[(1+√d)/2]` when `d ≡ 1 (mod 4)`, otherwise `Z[√d]`.
    pub fn half_integral_basis(&self) -> bool {
        self.d != 1 && self.d.rem_euclid(4) == 1
    }

    pub fn embeddings(&self) -> alloc::vec::Vec<Embedding> {
        if self.is_rational() {
            alloc::vec![Embedding::SIGMA1]
        } else {
            alloc::vec![Embedding::SIGMA1, Embedding::SIGMA2]
        }
    }

    pub fn check_embedding(&self, e: Embedding) -> Result<()> {
        if e.index() == 1 || (e.index() == 2 && !self.is_rational()) {
            Ok(())
        } else {
            Err(Error::InvalidEmbedding(e.index()))
        }
    }
}

fn is_square_free(d: i64) -> bool {
    let mut n = d;
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// A real embedding of `F`. `σ₁` sends `√d` to the positive root, `σ₂` to the
/// negative one. Square roots of a tower radicand always go to the positive
/// real root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    index: u8,
}

impl Embedding {
    pub const SIGMA1: Embedding = Embedding { index: 1 };
    pub const SIGMA2: Embedding = Embedding { index: 2 };

    pub fn new(index: u8) -> Result<Self> {
        match index {
            1 | 2 => Ok(Embedding { index }),
            _ => Err(Error::InvalidEmbedding(index)),
        }
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub(crate) fn radical_sign(&self) -> i8 {
        if self.index == 1 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{}", self.index)
    }
}

/// `x + y√d` with rational coordinates.
///
/// Elements with `y = 0` are rational and mix freely with elements of any
/// other quadratic field; mixing two genuinely quadratic elements from
/// different fields is a programming error and panics.
#[derive(Debug, Clone)]
pub struct QuadElem {
    field: QuadField,
    x: Rational,
    y: Rational,
}

impl QuadElem {
    pub fn new(field: QuadField, x: Rational, y: Rational) -> Self {
        if field.is_rational() {
            QuadElem {
                field,
                x: x + y,
                y: Rational::zero(),
            }
        } else {
            QuadElem { field, x, y }
        }
    }

    pub fn from_rational(field: QuadField, x: Rational) -> Self {
        QuadElem {
            field,
            x,
            y: Rational::zero(),
        }
    }

    pub fn from_int(field: QuadField, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero(field: QuadField) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: QuadField) -> Self {
        Self::from_int(field, 1)
    }

    /// `√d` itself.
    pub fn sqrt_d(field: QuadField) -> Self {
        Self::new(field, Rational::zero(), Rational::one())
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            field: self.field,
            x: self.x.clone(),
            y: -self.y.clone(),
        }
    }

    /// Field norm `x² − d y²`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - self.d_rat() * &self.y * &self.y
    }

    pub fn trace(&self) -> Rational {
        &self.x + &self.x
    }

    fn d_rat(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.field.d))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn checked_inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadElem {
            field: self.field,
            x: &self.x / &n,
            y: -(&self.y / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.checked_inv()?)
    }

    /// Exact sign of `σ_e(self)`.
    pub fn sign(&self, e: Embedding) -> i8 {
        let sx = sign_of(&self.x);
        let sy = sign_of(&self.y) * e.radical_sign();
        if sy == 0 {
            return sx;
        }
        if sx == 0 || sx == sy {
            return if sx == 0 { sy } else { sx };
        }
        let lhs = &self.x * &self.x;
        let rhs = self.d_rat() * &self.y * &self.y;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => 0,
        }
    }

    pub fn is_integral(&self) -> bool {
        if self.field.half_integral_basis() {
            let two_y = &self.y * Rational::from_integer(BigInt::from(2));
            two_y.is_integer() && (&self.x - &self.y).is_integer()
        } else {
            self.x.is_integer() && self.y.is_integer()
        }
    }

    /// Integer coordinates `(p, q)` with respect to the `Z`-basis `{1, ω}` of
    /// `O_F`, or `None` when the element is not integral.
    pub fn integral_coords(&self) -> Option<(BigInt, BigInt)> {
        if !self.is_integral() {
            return None;
        }
        if self.field.half_integral_basis() {
            let q = (&self.y * Rational::from_integer(BigInt::from(2))).to_integer();
            let p = (&self.x - &self.y).to_integer();
            Some((p, q))
        } else {
            Some((self.x.to_integer(), self.y.to_integer()))
        }
    }

    /// Inverse of [`integral_coords`](Self::integral_coords).
    pub fn from_integral_coords(field: QuadField, p: BigInt, q: BigInt) -> Self {
        if field.is_rational() {
            return Self::from_rational(field, Rational::from_integer(p));
        }
        if field.half_integral_basis() {
            let half = Rational::new(q, BigInt::from(2));
            Self::new(field, Rational::from_integer(p) + &half, half)
        } else {
            Self::new(field, Rational::from_integer(p), Rational::from_integer(q))
        }
    }

    /// A square root inside `F`, when one exists.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let f = self.field;
        let d = self.d_rat();
        if self.y.is_zero() {
            if let Some(r) = rational_sqrt(&self.x) {
                return Some(Self::from_rational(f, r));
            }
            if f.is_rational() {
                return None;
            }
            // x = d q²
            return rational_sqrt(&(&self.x / &d)).map(|q| Self::new(f, Rational::zero(), q));
        }
        // (p + q√d)² = p² + d q² + 2pq√d, so p² is a root of
        // 4P² − 4xP + d y² = 0, i.e. P = (x ± √(x² − d y²)) / 2.
        let s = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for cand in [(&self.x + &s) / &two, (&self.x - &s) / &two] {
            if cand.is_positive() {
                if let Some(p) = rational_sqrt(&cand) {
                    let q = &self.y / (&p * &two);
                    let root = Self::new(f, p, q);
                    if &root.square() == self {
                        return Some(root);
                    }
                }
            }
        }
        None
    }

    /// A positive integer bounding `|σ(self)|` for every embedding σ.
    pub fn magnitude_bound(&self) -> BigInt {
        let sqrt_d = BigInt::from(self.field.d.sqrt() + 1);
        ceil_abs(&self.x) + ceil_abs(&self.y) * sqrt_d + BigInt::one()
    }

    fn unify(&self, rhs: &Self) -> QuadField {
        if self.field == rhs.field || rhs.y.is_zero() {
            self.field
        } else if self.y.is_zero() {
            rhs.field
        } else {
            panic!(
                "mixed quadratic fields Q(√{}) and Q(√{})",
                self.field.d, rhs.field.d
            )
        }
    }

    /// Reinterpret a rational element inside `field`.
    pub fn lift_to(&self, field: QuadField) -> Self {
        if self.field == field {
            return self.clone();
        }
        assert!(
            self.y.is_zero(),
            "cannot move an irrational element between fields"
        );
        Self::from_rational(field, self.x.clone())
    }

    /// Parses `x`, `y√d`, `x+y√d` or `x-y√d` with rational `x`, `y` written as
    /// `p` or `p/q`. `sqrt(d)` and `sqrtd` are accepted in place of `√d`.
    pub fn parse(field: QuadField, s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .replace("sqrt(d)", "√d")
            .replace("sqrtd", "√d");
        if t.is_empty() {
            return Err(err());
        }
        let Some(pos) = t.find("√d") else {
            return Ok(Self::from_rational(
                field,
                parse_rational(&t).ok_or_else(err)?,
            ));
        };
        if pos + "√d".len() != t.len() {
            return Err(err());
        }
        let head = &t[..pos];
        // split at the last sign that is not in leading position
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (xs, ys) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let x = parse_rational(xs).ok_or_else(err)?;
        let y = match ys {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
        };
        if field.is_rational() && !y.is_zero() {
            return Err(err());
        }
        Ok(Self::new(field, x, y))
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn ceil_abs(r: &Rational) -> BigInt {
    let a = r.abs();
    let (q, rem) = a.numer().div_rem(a.denom());
    if rem.is_zero() {
        q
    } else {
        q + 1
    }
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        if self.field == other.field || (self.y.is_zero() && other.y.is_zero()) {
            self.x == other.x && self.y == other.y
        } else {
            false
        }
    }
}

impl Eq for QuadElem {}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() {
            return write!(f, "{}", self.x);
        }
        if self.y.is_negative() {
            write!(f, "{}-{}√d", self.x, -self.y.clone())
        } else {
            write!(f, "{}+{}√d", self.x, self.y)
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            field: self.field,
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        let field = self.unify(rhs);
        QuadElem {
            field,
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        let field = self.unify(rhs);
        QuadElem {
            field,
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        let field = self.unify(rhs);
        let d = Rational::from_integer(BigInt::from(field.d));
        QuadElem {
            field,
            x: &self.x * &rhs.x + d * &self.y * &rhs.y,
            y: &self.x * &rhs.y + &self.y * &rhs.x,
        }
    }
}

/// Panics on a zero divisor; use [`QuadElem::checked_div`] to get an error.
impl Div for &QuadElem {
    type Output = QuadElem;
    fn div(self, rhs: &QuadElem) -> QuadElem {
        self.checked_div(rhs).expect("division by zero in Q(√d)")
    }
}

super::forward_binops!(QuadElem);

impl Mul<&Rational> for &QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &Rational) -> QuadElem {
        QuadElem {
            field: self.field,
            x: &self.x * rhs,
            y: &self.y * rhs,
        }
    }
}
