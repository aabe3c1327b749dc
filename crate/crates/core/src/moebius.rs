//! Fractional linear action of real 2×2 matrices on the boundary of the
//! hyperbolic plane, Jordan types and axes of hyperbolic elements.

use core::cmp::Ordering;
use core::fmt;

use crate::exactreal::{AlgebraicReal, Branch, Embedding, Rational, TowerElem};
use crate::{Error, Result};

/// An invertible matrix with entries in `E = F(√a)`, read through a fixed
/// real embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2R {
    /// `a11, a12, a21, a22`.
    m: [TowerElem; 4],
    e: Embedding,
    det: TowerElem,
}

impl Mat2R {
    pub fn new(entries: [[TowerElem; 2]; 2], e: Embedding) -> Result<Self> {
        let [[a11, a12], [a21, a22]] = entries;
        let m = [a11, a12, a21, a22].map(|x| x.at_embedding(e));
        let det = (&m[0] * &m[3] - &m[1] * &m[2]).at_embedding(e);
        if det.sign(e)? == 0 {
            return Err(Error::NotInvertible);
        }
        for x in &m {
            x.sign(e)?;
        }
        Ok(Mat2R { m, e, det })
    }

    pub fn from_rationals(entries: [[Rational; 2]; 2], e: Embedding) -> Result<Self> {
        Self::new(entries.map(|row| row.map(TowerElem::from_rational)), e)
    }

    pub fn from_ints(entries: [[i64; 2]; 2], e: Embedding) -> Result<Self> {
        Self::new(entries.map(|row| row.map(TowerElem::from_int)), e)
    }

    pub fn identity(e: Embedding) -> Self {
        Self::from_ints([[1, 0], [0, 1]], e).expect("identity")
    }

    pub fn entries(&self) -> [[&TowerElem; 2]; 2] {
        [[&self.m[0], &self.m[1]], [&self.m[2], &self.m[3]]]
    }

    pub fn embedding(&self) -> Embedding {
        self.e
    }

    pub fn det(&self) -> &TowerElem {
        &self.det
    }

    pub fn det_sign(&self) -> i8 {
        self.det.sign(self.e).expect("checked at construction")
    }

    pub fn trace(&self) -> TowerElem {
        &self.m[0] + &self.m[3]
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.e != rhs.e {
            return Err(Error::InvalidParameter(
                "matrices carry different embeddings",
            ));
        }
        let [a, b, c, d] = &self.m;
        let [p, q, r, s] = &rhs.m;
        Self::new(
            [
                [a * p + b * r, a * q + b * s],
                [c * p + d * r, c * q + d * s],
            ],
            self.e,
        )
    }

    pub fn inverse(&self) -> Self {
        let inv = self.det.checked_inv().expect("nonzero determinant");
        let [a, b, c, d] = &self.m;
        Self::new([[d * &inv, -(b * &inv)], [-(c * &inv), a * &inv]], self.e)
            .expect("inverse of an invertible matrix")
    }

    fn sign(&self, x: &TowerElem) -> i8 {
        x.sign(self.e).expect("entries have a real image")
    }
}

impl fmt::Display for Mat2R {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]] @{}", self.e)
    }
}

/// A point of `R ∪ {∞}`.
#[derive(Debug, Clone)]
pub enum BoundaryPt {
    Finite(AlgebraicReal),
    Infinity,
}

impl BoundaryPt {
    pub fn from_int(n: i64) -> Self {
        BoundaryPt::Finite(AlgebraicReal::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        BoundaryPt::Finite(AlgebraicReal::from_rational(r))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPt::Infinity)
    }

    pub fn finite(&self) -> Option<&AlgebraicReal> {
        match self {
            BoundaryPt::Finite(x) => Some(x),
            BoundaryPt::Infinity => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.finite().and_then(AlgebraicReal::as_rational)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BoundaryPt::Finite(x) => x.to_f64(),
            BoundaryPt::Infinity => f64::INFINITY,
        }
    }
}

/// `∞` is placed above every real number.
impl Ord for BoundaryPt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BoundaryPt::Infinity, BoundaryPt::Infinity) => Ordering::Equal,
            (BoundaryPt::Infinity, _) => Ordering::Greater,
            (_, BoundaryPt::Infinity) => Ordering::Less,
            (BoundaryPt::Finite(x), BoundaryPt::Finite(y)) => x.compare(y),
        }
    }
}

impl PartialOrd for BoundaryPt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for BoundaryPt {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BoundaryPt {}

impl fmt::Display for BoundaryPt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPt::Finite(x) => write!(f, "{x}"),
            BoundaryPt::Infinity => f.write_str("inf"),
        }
    }
}

/// `p ↦ (a11 p + a12)/(a21 p + a22)` on `R ∪ {∞}`.
pub fn act_boundary(g: &Mat2R, p: &BoundaryPt) -> BoundaryPt {
    let e = g.e;
    let [a, b, c, d] = &g.m;
    let p = match p {
        BoundaryPt::Infinity => {
            return if c.is_zero() {
                BoundaryPt::Infinity
            } else {
                finite(a / c, e)
            };
        }
        BoundaryPt::Finite(p) => p
            .with_embedding(e)
            .expect("boundary point and matrix use different embeddings"),
    };
    if !c.is_zero() && p.cmp_tower(&-(d / c)) == Ok(Ordering::Equal) {
        return BoundaryPt::Infinity;
    }
    if let Some(r) = p.as_tower() {
        return finite((a * r + b) / (c * r + d), e);
    }
    let [c0, c1, _] = p.coefficients() else {
        unreachable!("non-linear values are quadratic")
    };
    let two = TowerElem::from_int(2);
    let n2 = d * d - c1 * &(d * c) + c0 * &(c * c);
    let n1 = -(&two * &(d * b)) + c1 * &(d * a + b * c) - &two * &(c0 * &(a * c));
    let n0 = b * b - c1 * &(b * a) + c0 * &(a * a);
    // M(p) − M(p′) = det (p − p′) / ((γp + δ)(γp′ + δ))
    let other = p.conjugate_root().expect("quadratic root");
    let s = denominator_sign(g, &p) * denominator_sign(g, &other);
    let up = if p.branch() == Some(Branch::Upper) {
        1
    } else {
        -1
    };
    let branch = if g.det_sign() * up * s > 0 {
        Branch::Upper
    } else {
        Branch::Lower
    };
    BoundaryPt::Finite(
        AlgebraicReal::quadratic(&n2, &n1, &n0, branch, e).expect("image of a real root is real"),
    )
}

/// Sign of `a21 p + a22`.
fn denominator_sign(g: &Mat2R, p: &AlgebraicReal) -> i8 {
    let [_, _, c, d] = &g.m;
    let sc = g.sign(c);
    if sc == 0 {
        return g.sign(d);
    }
    let pole = -(d / c);
    let o = p.cmp_tower(&pole).expect("entries have a real image");
    sc * match o {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

fn finite(t: TowerElem, e: Embedding) -> BoundaryPt {
    BoundaryPt::Finite(AlgebraicReal::from_tower(t, e).expect("entries have a real image"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JordanClass {
    Hyperbolic,
    Elliptic,
    ParabolicUnipotent,
    ParabolicNegative,
    PlusIdentity,
    MinusIdentity,
}

/// Conjugacy type of a determinant-one matrix.
pub fn classify_jordan(g: &Mat2R) -> Result<JordanClass> {
    if !g.det.is_one() {
        return Err(Error::NotUnimodular);
    }
    let [a, b, c, d] = &g.m;
    if b.is_zero() && c.is_zero() && a == d {
        if a.is_one() {
            return Ok(JordanClass::PlusIdentity);
        }
        if (-a).is_one() {
            return Ok(JordanClass::MinusIdentity);
        }
    }
    let tr = g.trace();
    let disc = tr.square() - TowerElem::from_int(4);
    Ok(match g.sign(&disc) {
        1 => JordanClass::Hyperbolic,
        -1 => JordanClass::Elliptic,
        _ if g.sign(&tr) > 0 => JordanClass::ParabolicUnipotent,
        _ => JordanClass::ParabolicNegative,
    })
}

/// `(repelling, attracting)`: the attracting fixed point carries the
/// eigenvalue of larger absolute value. When both eigenvalues have the same
/// absolute value (trace zero, negative determinant) the positive eigenvalue
/// is taken as attracting.
pub fn fixed_points(g: &Mat2R) -> Result<(BoundaryPt, BoundaryPt)> {
    let e = g.e;
    let [a, b, c, d] = &g.m;
    let tr = g.trace();
    let disc = tr.square() - &TowerElem::from_int(4) * &g.det;
    if g.sign(&disc) <= 0 {
        return Err(Error::NotHyperbolicLike);
    }
    if c.is_zero() {
        // eigenvalue a at ∞, eigenvalue d at b/(d − a)
        let fin = finite(b / &(d - a), e);
        let infinity_wins = match g.sign(&(a.square() - d.square())) {
            0 => g.sign(a) > 0,
            s => s > 0,
        };
        return Ok(if infinity_wins {
            (fin, BoundaryPt::Infinity)
        } else {
            (BoundaryPt::Infinity, fin)
        });
    }
    // z± = (a − d ± √disc) / (2c) has eigenvalue (tr ± √disc)/2; z₊ is the
    // upper root of c z² + (d − a) z − b exactly when c > 0
    let plus = if g.sign(c) > 0 {
        Branch::Upper
    } else {
        Branch::Lower
    };
    let attracting = if g.sign(&tr) >= 0 { plus } else { plus.flip() };
    let root = |br| {
        AlgebraicReal::quadratic(c, &(d - a), &-b, br, e)
            .map(BoundaryPt::Finite)
            .map_err(|_| Error::NotHyperbolicLike)
    };
    Ok((root(attracting.flip())?, root(attracting)?))
}

/// A geodesic of the hyperbolic plane, oriented from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGeodesic {
    start: BoundaryPt,
    end: BoundaryPt,
}

impl OrientedGeodesic {
    pub fn new(start: BoundaryPt, end: BoundaryPt) -> Result<Self> {
        if start == end {
            return Err(Error::InvalidParameter("geodesic endpoints coincide"));
        }
        Ok(OrientedGeodesic { start, end })
    }

    pub fn from_rationals(start: Rational, end: Rational) -> Result<Self> {
        Self::new(
            BoundaryPt::from_rational(start),
            BoundaryPt::from_rational(end),
        )
    }

    pub fn start(&self) -> &BoundaryPt {
        &self.start
    }

    pub fn end(&self) -> &BoundaryPt {
        &self.end
    }

    pub fn reversed(&self) -> Self {
        OrientedGeodesic {
            start: self.end.clone(),
            end: self.start.clone(),
        }
    }

    /// Same endpoint set, either orientation.
    pub fn same_line(&self, other: &Self) -> bool {
        (self.start == other.start && self.end == other.end)
            || (self.start == other.end && self.end == other.start)
    }

    /// Image under `g`, orientation carried along.
    pub fn translate(&self, g: &Mat2R) -> Self {
        OrientedGeodesic {
            start: act_boundary(g, &self.start),
            end: act_boundary(g, &self.end),
        }
    }
}

impl fmt::Display for OrientedGeodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.start, self.end)
    }
}

/// The invariant geodesic of `g`, oriented from the repelling to the
/// attracting fixed point.
pub fn axis(g: &Mat2R) -> Result<OrientedGeodesic> {
    let (rep, att) = fixed_points(g)?;
    Ok(OrientedGeodesic {
        start: rep,
        end: att,
    })
}
