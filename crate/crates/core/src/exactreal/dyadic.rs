use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use alloc::string::ToString;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::Error;

/// The binary fraction `m / 2^k`, normalized so that `m` is odd or `k = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    k: u32,
}

impl Dyadic {
    pub fn new(m: BigInt, k: u32) -> Self {
        let mut d = Dyadic { m, k };
        d.normalize();
        d
    }

    pub fn from_int(n: BigInt) -> Self {
        Dyadic { m: n, k: 0 }
    }

    fn normalize(&mut self) {
        if self.m.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.m.is_even() {
            self.m >>= 1;
            self.k -= 1;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.m.clone(), BigInt::one() << self.k)
    }

    /// Exact when the rational's denominator is a power of two.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let den = r.denom();
        let k = den.trailing_zeros().unwrap_or(0);
        (BigInt::one() << k == *den).then(|| Dyadic::new(r.numer().clone(), k as u32))
    }

    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let k = self.k.max(other.k);
        let a = &self.m << (k - self.k);
        let b = &other.m << (k - other.k);
        Dyadic::new(a + b, k + 1)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.m.bits() as i64;
        // keep 60 significant bits before converting
        let shift = (bits - 60).max(0);
        let m: i64 = (&self.m >> shift as usize).try_into().unwrap_or(0);
        libm::ldexp(m as f64, (shift - self.k as i64).clamp(-2000, 2000) as i32)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let k = self.k.max(other.k);
        (&self.m << (k - self.k)).cmp(&(&other.m << (k - other.k)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.m, self.k)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::Parse(s.to_string());
        let (m, k) = match s.trim().split_once("/2^") {
            Some((m, k)) => (m, k),
            None => (s.trim(), "0"),
        };
        Ok(Dyadic::new(
            m.parse().map_err(|_| err())?,
            k.parse().map_err(|_| err())?,
        ))
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi);
        DyadicInterval { lo, hi }
    }

    pub fn point(p: Dyadic) -> Self {
        DyadicInterval {
            lo: p.clone(),
            hi: p,
        }
    }

    pub fn width(&self) -> Rational {
        self.hi.to_rational() - self.lo.to_rational()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn disjoint(&self, other: &DyadicInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.lo.midpoint(&self.hi).to_f64()
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_format() {
        let d = Dyadic::new(BigInt::from(12), 3);
        assert_eq!(d.to_string(), "3/2^1");
        assert_eq!("3/2^1".parse::<Dyadic>().unwrap(), d);
        assert_eq!(
            "-5".parse::<Dyadic>().unwrap(),
            Dyadic::from_int(BigInt::from(-5))
        );
        assert_eq!(Dyadic::new(BigInt::from(0), 9).to_string(), "0/2^0");
    }

    #[test]
    fn midpoint_and_order() {
        let a = Dyadic::from_int(BigInt::from(1));
        let b = Dyadic::new(BigInt::from(3), 1);
        let m = a.midpoint(&b);
        assert_eq!(m.to_rational(), Rational::new(5.into(), 4.into()));
        assert!(a < m && m < b);
        assert!((m.to_f64() - 1.25).abs() < 1e-15);
        assert_eq!(
            Dyadic::from_rational(&Rational::new(1.into(), 3.into())),
            None
        );
    }
}
