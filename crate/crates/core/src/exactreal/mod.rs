//! Exact arithmetic in the tower `Q ⊂ F = Q(√d) ⊂ E = F(√a)` and algebraic
//! reals used as boundary points of the hyperbolic plane.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

mod algreal;
mod approx;
mod dyadic;
mod field;
mod tower;

pub use algreal::{AlgebraicReal, Branch};
pub use approx::{embed_approx, ExactValue};
pub use dyadic::{Dyadic, DyadicInterval};
pub use field::{Embedding, QuadElem, QuadField};
pub use tower::TowerElem;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub(crate) fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = exact_isqrt(r.numer())?;
    let d = exact_isqrt(r.denom())?;
    Some(Rational::new(n, d))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Owned and mixed-reference operator impls that delegate to `&T op &T`.
macro_rules! forward_binops {
    ($t:ty) => {
        $crate::exactreal::forward_binops!(@one $t, Add, add);
        $crate::exactreal::forward_binops!(@one $t, Sub, sub);
        $crate::exactreal::forward_binops!(@one $t, Mul, mul);
        $crate::exactreal::forward_binops!(@one $t, Div, div);
    };
    (@one $t:ty, $tr:ident, $m:ident) => {
        impl core::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                core::ops::$tr::$m(&self, &rhs)
            }
        }
        impl core::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                core::ops::$tr::$m(&self, rhs)
            }
        }
        impl core::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                core::ops::$tr::$m(self, &rhs)
            }
        }
    };
}
pub(crate) use forward_binops;
