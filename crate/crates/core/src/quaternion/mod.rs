//! Quaternion algebras `(a, b)_F` over a real quadratic field, their orders,
//! norm-one units and real matrix representations.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::exactreal::{Embedding, QuadElem, QuadField};
use crate::{Error, Result};

mod split;
mod tau;
mod units;

pub use split::{normalize_positive_a, scaling_equiv, swap_equiv, Transport};
pub use tau::{tau, tau_entries};
pub use units::{
    congruence_units, enumerate_norm_one, in_congruence_subgroup, is_polar_regular,
    norm_one_coords, GroupSpec, OrderSpec,
};

#[derive(Debug)]
struct AlgebraData {
    field: QuadField,
    a: QuadElem,
    b: QuadElem,
    ab: QuadElem,
    split: Vec<Embedding>,
}

/// The algebra `(a, b)_F` with basis `1, i, j, k`, `i² = a`, `j² = b`,
/// `k = ij = −ji`. Cheap to clone.
#[derive(Debug, Clone)]
pub struct AlgebraDesc(Arc<AlgebraData>);

impl AlgebraDesc {
    /// Rational `a` or `b` are moved into `field`; nonzero values are
    /// required but integrality is not (see [`AlgebraDesc::is_integral`]).
    pub fn new(field: QuadField, a: QuadElem, b: QuadElem) -> Result<Self> {
        let a = lift(field, &a)?;
        let b = lift(field, &b)?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidParameter(
                "quaternion parameters must be nonzero",
            ));
        }
        let split = field
            .embeddings()
            .into_iter()
            .filter(|&e| a.sign(e) > 0 || b.sign(e) > 0)
            .collect();
        let ab = &a * &b;
        Ok(AlgebraDesc(Arc::new(AlgebraData {
            field,
            a,
            b,
            ab,
            split,
        })))
    }

    pub fn from_ints(field: QuadField, a: i64, b: i64) -> Result<Self> {
        Self::new(
            field,
            QuadElem::from_int(field, a),
            QuadElem::from_int(field, b),
        )
    }

    pub fn field(&self) -> QuadField {
        self.0.field
    }

    pub fn a(&self) -> &QuadElem {
        &self.0.a
    }

    pub fn b(&self) -> &QuadElem {
        &self.0.b
    }

    pub fn ab(&self) -> &QuadElem {
        &self.0.ab
    }

    pub fn is_integral(&self) -> bool {
        self.0.a.is_integral() && self.0.b.is_integral()
    }

    pub fn split_embeddings(&self) -> &[Embedding] {
        &self.0.split
    }

    /// Number of real places at which the algebra splits.
    pub fn r(&self) -> usize {
        self.0.split.len()
    }

    pub fn is_split_at(&self, e: Embedding) -> bool {
        self.0.split.contains(&e)
    }

    /// `σ(a) > 0` at every split embedding.
    pub fn is_normalized(&self) -> bool {
        self.0.split.iter().all(|&e| self.0.a.sign(e) > 0)
    }
}

/// True iff `alg ⊗_σ R ≅ M₂(R)`, i.e. `σ(a) > 0` or `σ(b) > 0`.
pub fn is_split_at(alg: &AlgebraDesc, e: Embedding) -> bool {
    alg.is_split_at(e)
}

impl PartialEq for AlgebraDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.a == other.0.a && self.0.b == other.0.b)
    }
}

impl Eq for AlgebraDesc {}

impl fmt::Display for AlgebraDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.0.field.d();
        if d == 1 {
            write!(f, "({}, {})_Q", self.0.a, self.0.b)
        } else {
            write!(f, "({}, {})_Q(√{d})", self.0.a, self.0.b)
        }
    }
}

fn lift(field: QuadField, x: &QuadElem) -> Result<QuadElem> {
    if x.field() == field {
        Ok(x.clone())
    } else if x.is_rational() {
        Ok(x.lift_to(field))
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// `x0 + x1 i + x2 j + x3 k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatElem {
    alg: AlgebraDesc,
    c: [QuadElem; 4],
}

impl QuatElem {
    pub fn new(alg: &AlgebraDesc, c: [QuadElem; 4]) -> Result<Self> {
        let f = alg.field();
        let [x0, x1, x2, x3] = c;
        Ok(QuatElem {
            alg: alg.clone(),
            c: [lift(f, &x0)?, lift(f, &x1)?, lift(f, &x2)?, lift(f, &x3)?],
        })
    }

    pub fn from_ints(alg: &AlgebraDesc, c: [i64; 4]) -> Self {
        let f = alg.field();
        QuatElem {
            alg: alg.clone(),
            c: c.map(|n| QuadElem::from_int(f, n)),
        }
    }

    pub fn scalar(alg: &AlgebraDesc, s: QuadElem) -> Result<Self> {
        let z = QuadElem::zero(alg.field());
        Self::new(alg, [s, z.clone(), z.clone(), z])
    }

    pub fn zero(alg: &AlgebraDesc) -> Self {
        Self::from_ints(alg, [0, 0, 0, 0])
    }

    pub fn one(alg: &AlgebraDesc) -> Self {
        Self::from_ints(alg, [1, 0, 0, 0])
    }

    pub fn i(alg: &AlgebraDesc) -> Self {
        Self::from_ints(alg, [0, 1, 0, 0])
    }

    pub fn j(alg: &AlgebraDesc) -> Self {
        Self::from_ints(alg, [0, 0, 1, 0])
    }

    pub fn k(alg: &AlgebraDesc) -> Self {
        Self::from_ints(alg, [0, 0, 0, 1])
    }

    pub fn algebra(&self) -> &AlgebraDesc {
        &self.alg
    }

    pub fn coords(&self) -> &[QuadElem; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(QuadElem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(QuadElem::is_zero)
    }

    /// Membership in the order spanned over `O_F` by `1, i, j, k`.
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(QuadElem::is_integral)
    }

    /// `x0² − a x1² − b x2² + ab x3²`.
    pub fn reduced_norm(&self) -> QuadElem {
        let [x0, x1, x2, x3] = &self.c;
        let al = &self.alg;
        x0.square() - al.a() * &x1.square() - al.b() * &x2.square() + al.ab() * &x3.square()
    }

    /// `2 x0`.
    pub fn reduced_trace(&self) -> QuadElem {
        &self.c[0] + &self.c[0]
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = &self.c;
        QuatElem {
            alg: self.alg.clone(),
            c: [x0.clone(), -x1, -x2, -x3],
        }
    }

    pub fn scale(&self, s: &QuadElem) -> Self {
        let s = s.lift_to(self.alg.field());
        QuatElem {
            alg: self.alg.clone(),
            c: self.c.clone().map(|x| &x * &s),
        }
    }

    pub fn checked_inverse(&self) -> Result<Self> {
        let n = self.reduced_norm();
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj().scale(&n.checked_inv()?))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.alg != rhs.alg {
            return Err(Error::AlgebraMismatch);
        }
        let [x0, x1, x2, x3] = &self.c;
        let [y0, y1, y2, y3] = &rhs.c;
        let (a, b, ab) = (self.alg.a(), self.alg.b(), self.alg.ab());
        let z0 = x0 * y0 + a * &(x1 * y1) + b * &(x2 * y2) - ab * &(x3 * y3);
        let z1 = x0 * y1 + x1 * y0 - b * &(x2 * y3) + b * &(x3 * y2);
        let z2 = x0 * y2 + x2 * y0 + a * &(x1 * y3) - a * &(x3 * y1);
        let z3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
        Ok(QuatElem {
            alg: self.alg.clone(),
            c: [z0, z1, z2, z3],
        })
    }

    /// `x y x⁻¹`.
    pub fn conjugate_by(&self, x: &Self) -> Result<Self> {
        x.checked_mul(self)?.checked_mul(&x.checked_inverse()?)
    }

    /// Half the reduced trace of `x ȳ`, the bilinear form attached to the
    /// reduced norm.
    pub fn norm_form(&self, rhs: &Self) -> QuadElem {
        let [x0, x1, x2, x3] = &self.c;
        let [y0, y1, y2, y3] = &rhs.c;
        let al = &self.alg;
        x0 * y0 - al.a() * &(x1 * y1) - al.b() * &(x2 * y2) + al.ab() * &(x3 * y3)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&QuadElem, &QuadElem) -> QuadElem) -> Self {
        assert!(self.alg == rhs.alg, "quaternions from different algebras");
        QuatElem {
            alg: self.alg.clone(),
            c: core::array::from_fn(|n| f(&self.c[n], &rhs.c[n])),
        }
    }
}

pub fn quat_mul(x: &QuatElem, y: &QuatElem) -> Result<QuatElem> {
    x.checked_mul(y)
}

pub fn reduced_norm(x: &QuatElem) -> QuadElem {
    x.reduced_norm()
}

pub fn quat_conj(x: &QuatElem) -> QuatElem {
    x.conj()
}

pub fn quat_inverse(x: &QuatElem) -> Result<QuatElem> {
    x.checked_inverse()
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (x, unit) in self.c.iter().zip(["", "i", "j", "k"]) {
            if x.is_zero() {
                continue;
            }
            let body = if x.is_rational() {
                alloc::format!("{}", x.x())
            } else {
                alloc::format!("({x})")
            };
            if wrote && !body.starts_with('-') {
                f.write_str("+")?;
            }
            if unit.is_empty() {
                f.write_str(&body)?;
            } else if x.is_one() {
                f.write_str(unit)?;
            } else if body == "-1" {
                write!(f, "-{unit}")?;
            } else {
                write!(f, "{body}·{unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &QuatElem {
    type Output = QuatElem;
    fn add(self, rhs: &QuatElem) -> QuatElem {
        self.zip(rhs, |x, y| x + y)
    }
}

impl Sub for &QuatElem {
    type Output = QuatElem;
    fn sub(self, rhs: &QuatElem) -> QuatElem {
        self.zip(rhs, |x, y| x - y)
    }
}

/// Panics on mismatched algebras; [`QuatElem::checked_mul`] reports it.
impl Mul for &QuatElem {
    type Output = QuatElem;
    fn mul(self, rhs: &QuatElem) -> QuatElem {
        self.checked_mul(rhs)
            .expect("quaternions from different algebras")
    }
}

impl Neg for &QuatElem {
    type Output = QuatElem;
    fn neg(self) -> QuatElem {
        QuatElem {
            alg: self.alg.clone(),
            c: self.c.clone().map(|x| -x),
        }
    }
}

impl Neg for QuatElem {
    type Output = QuatElem;
    fn neg(self) -> QuatElem {
        -&self
    }
}

macro_rules! forward_ring_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuatElem> for QuatElem {
            type Output = QuatElem;
            fn $m(self, rhs: QuatElem) -> QuatElem {
                $tr::$m(&self, &rhs)
            }
        }
        impl $tr<&QuatElem> for QuatElem {
            type Output = QuatElem;
            fn $m(self, rhs: &QuatElem) -> QuatElem {
                $tr::$m(&self, rhs)
            }
        }
    )*};
}
forward_ring_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> crate::Rational {
    crate::Rational::new(n.into(), d.into())
}
