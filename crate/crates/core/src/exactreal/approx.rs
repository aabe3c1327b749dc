use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use super::{AlgebraicReal, Dyadic, DyadicInterval, Embedding, QuadElem, Rational, TowerElem};
use crate::{Error, Result};

/// A real number that can be compared exactly against rationals under a
/// given embedding.
pub trait ExactValue {
    fn cmp_rational(&self, t: &Rational, e: Embedding) -> Result<Ordering>;

    /// Dyadic interval containing the value; it seeds the bisection.
    fn enclosure(&self, e: Embedding) -> Result<DyadicInterval>;
}

fn symmetric_enclosure(bound: BigInt) -> DyadicInterval {
    let mut b = BigInt::one();
    while b < bound {
        b <<= 1;
    }
    DyadicInterval::new(Dyadic::from_int(-b.clone()), Dyadic::from_int(b))
}

impl ExactValue for QuadElem {
    fn cmp_rational(&self, t: &Rational, e: Embedding) -> Result<Ordering> {
        self.field().check_embedding(e)?;
        let diff = self - &QuadElem::from_rational(self.field(), t.clone());
        Ok(diff.sign(e).cmp(&0))
    }

    fn enclosure(&self, _e: Embedding) -> Result<DyadicInterval> {
        Ok(symmetric_enclosure(self.magnitude_bound()))
    }
}

impl ExactValue for TowerElem {
    fn cmp_rational(&self, t: &Rational, e: Embedding) -> Result<Ordering> {
        let diff = self - &TowerElem::from_rational(t.clone());
        Ok(diff.sign(e)?.cmp(&0))
    }

    fn enclosure(&self, e: Embedding) -> Result<DyadicInterval> {
        self.sign(e)?;
        Ok(symmetric_enclosure(self.magnitude_bound()))
    }
}

impl ExactValue for AlgebraicReal {
    fn cmp_rational(&self, t: &Rational, e: Embedding) -> Result<Ordering> {
        if e != self.embedding() && !self.has_rational_data() {
            return Err(Error::InvalidEmbedding(e.index()));
        }
        self.cmp_rational_exact(t)
    }

    fn enclosure(&self, e: Embedding) -> Result<DyadicInterval> {
        if e != self.embedding() && !self.has_rational_data() {
            return Err(Error::InvalidEmbedding(e.index()));
        }
        Ok(self.interval().clone())
    }
}

/// Bisects an enclosure of `σ_e(x)` down to width at most `2^-precision_bits`.
/// Lands on a point interval when a midpoint hits the value exactly.
pub fn embed_approx<T: ExactValue + ?Sized>(
    x: &T,
    e: Embedding,
    precision_bits: u32,
) -> Result<DyadicInterval> {
    if precision_bits == 0 {
        return Err(Error::InvalidParameter("precision_bits must be at least 1"));
    }
    let target = Rational::new(BigInt::one(), BigInt::one() << precision_bits);
    let mut iv = x.enclosure(e)?;
    while !iv.is_point() && iv.width() > target {
        iv = bisect(x, e, iv)?;
    }
    Ok(iv)
}

pub(crate) fn bisect<T: ExactValue + ?Sized>(
    x: &T,
    e: Embedding,
    iv: DyadicInterval,
) -> Result<DyadicInterval> {
    if iv.is_point() {
        return Ok(iv);
    }
    let mid = iv.lo.midpoint(&iv.hi);
    Ok(match x.cmp_rational(&mid.to_rational(), e)? {
        Ordering::Equal => DyadicInterval::point(mid),
        Ordering::Greater => DyadicInterval::new(mid, iv.hi),
        Ordering::Less => DyadicInterval::new(iv.lo, mid),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QuadField;

    #[test]
    fn approx_examples() {
        let f = QuadField::new(2).unwrap();
        let one = QuadElem::one(f);
        let iv = embed_approx(&one, Embedding::SIGMA1, 10).unwrap();
        assert!(iv.is_point());
        assert_eq!(iv.lo.to_rational(), Rational::one());

        use core::f64::consts::SQRT_2;
        let r2 = QuadElem::sqrt_d(f);
        let iv = embed_approx(&r2, Embedding::SIGMA1, 4).unwrap();
        assert!(iv.width() <= Rational::new(1.into(), 16.into()));
        assert!(iv.lo.to_f64() <= SQRT_2 && SQRT_2 <= iv.hi.to_f64());

        let iv = embed_approx(&r2, Embedding::SIGMA2, 4).unwrap();
        assert!(iv.width() <= Rational::new(1.into(), 16.into()));
        assert!(iv.lo.to_f64() <= -SQRT_2 && -SQRT_2 <= iv.hi.to_f64());

        assert!(embed_approx(&r2, Embedding::SIGMA1, 0).is_err());
    }

    #[test]
    fn approx_tower_rejects_negative_radicand() {
        let f = QuadField::new(2).unwrap();
        let t = TowerElem::sqrt_of(QuadElem::sqrt_d(f)).unwrap();
        assert_eq!(
            embed_approx(&t, Embedding::SIGMA2, 8),
            Err(Error::NegativeRadicand)
        );
        let iv = embed_approx(&t, Embedding::SIGMA1, 20).unwrap();
        // 2^(1/4)
        assert!(iv.lo.to_f64() <= 1.189207115 && 1.189207115 <= iv.hi.to_f64());
    }
}
