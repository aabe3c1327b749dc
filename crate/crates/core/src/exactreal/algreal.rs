use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::approx::{bisect, ExactValue};
use super::{Dyadic, DyadicInterval, Embedding, Rational, TowerElem};
use crate::{Error, Result};

/// Which root of a quadratic with two distinct real roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Lower,
    Upper,
}

impl Branch {
    pub fn flip(self) -> Self {
        match self {
            Branch::Lower => Branch::Upper,
            Branch::Upper => Branch::Lower,
        }
    }
}

#[derive(Debug, Clone)]
enum Root {
    /// `z = r`.
    Linear(TowerElem),
    /// `z = vertex ± √disc / 2` for the monic `z² + p z + q`,
    /// `vertex = −p/2`, `disc = p² − 4q > 0`.
    Quadratic {
        vertex: TowerElem,
        disc: TowerElem,
        branch: Branch,
    },
}

/// A real root of a monic polynomial of degree one or two with coefficients
/// in `E = F(√a)`, evaluated under a fixed embedding, together with a dyadic
/// isolating interval.
///
/// Values with rational coefficients are independent of the embedding and may
/// be compared with values carrying any embedding.
#[derive(Debug, Clone)]
pub struct AlgebraicReal {
    /// Monic, lowest degree first.
    coeffs: Vec<TowerElem>,
    root: Root,
    embedding: Embedding,
    interval: DyadicInterval,
}

impl AlgebraicReal {
    pub fn from_rational(r: Rational) -> Self {
        Self::from_tower(TowerElem::from_rational(r), Embedding::SIGMA1)
            .expect("rationals embed everywhere")
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The element `t ∈ E` itself, seen through `e`.
    pub fn from_tower(t: TowerElem, e: Embedding) -> Result<Self> {
        let t = t.at_embedding(e);
        t.sign(e)?;
        let interval = linear_interval(&t, e)?;
        Ok(AlgebraicReal {
            coeffs: vec![-&t, TowerElem::one()],
            root: Root::Linear(t),
            embedding: e,
            interval,
        })
    }

    /// Root of `c1 z + c0`.
    pub fn linear(c1: &TowerElem, c0: &TowerElem, e: Embedding) -> Result<Self> {
        let c1 = c1.at_embedding(e);
        if c1.sign(e)? == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::from_tower(-(c0.at_embedding(e).checked_div(&c1)?), e)
    }

    /// The `branch` root of `c2 z² + c1 z + c0`. Falls back to the linear
    /// root when `c2` vanishes and to the double root when the discriminant
    /// does; a negative discriminant is an error.
    pub fn quadratic(
        c2: &TowerElem,
        c1: &TowerElem,
        c0: &TowerElem,
        branch: Branch,
        e: Embedding,
    ) -> Result<Self> {
        let c2 = c2.at_embedding(e);
        if c2.sign(e)? == 0 {
            return Self::linear(c1, c0, e);
        }
        let p = c1.at_embedding(e).checked_div(&c2)?;
        let q = c0.at_embedding(e).checked_div(&c2)?;
        let half = TowerElem::from_rational(Rational::new(BigInt::one(), BigInt::from(2)));
        let vertex = -(&p * &half);
        let disc = &p * &p - &q * &TowerElem::from_int(4);
        match disc.sign(e)? {
            -1 => Err(Error::NoRealRoot),
            0 => Self::from_tower(vertex, e),
            _ => {
                // Perfect square in F: the root is already an element of F.
                if let Some(mut s) = disc.in_base().then(|| disc.u().sqrt_in_field()).flatten() {
                    if (s.sign(e) > 0) != (branch == Branch::Upper) {
                        s = -s;
                    }
                    return Self::from_tower(&vertex + &(&TowerElem::from_quad(s) * &half), e);
                }
                let root = Root::Quadratic {
                    vertex,
                    disc,
                    branch,
                };
                let interval = quadratic_interval(&root, e)?;
                Ok(AlgebraicReal {
                    coeffs: vec![q, p, TowerElem::one()],
                    root,
                    embedding: e,
                    interval,
                })
            }
        }
    }

    pub fn embedding(&self) -> Embedding {
        self.embedding
    }

    /// Monic defining polynomial, lowest degree first.
    pub fn coefficients(&self) -> &[TowerElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn branch(&self) -> Option<Branch> {
        match &self.root {
            Root::Linear(_) => None,
            Root::Quadratic { branch, .. } => Some(*branch),
        }
    }

    pub fn interval(&self) -> &DyadicInterval {
        &self.interval
    }

    /// The root itself when it lies in `E`.
    pub fn as_tower(&self) -> Option<&TowerElem> {
        match &self.root {
            Root::Linear(t) => Some(t),
            Root::Quadratic { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.as_tower().and_then(|t| t.as_rational())
    }

    pub fn has_rational_data(&self) -> bool {
        self.coeffs.iter().all(TowerElem::is_rational)
    }

    /// The other root of the defining quadratic.
    pub fn conjugate_root(&self) -> Option<Self> {
        match &self.root {
            Root::Linear(_) => None,
            Root::Quadratic {
                vertex,
                disc,
                branch,
            } => {
                let root = Root::Quadratic {
                    vertex: vertex.clone(),
                    disc: disc.clone(),
                    branch: branch.flip(),
                };
                let interval = quadratic_interval(&root, self.embedding).ok()?;
                Some(AlgebraicReal {
                    coeffs: self.coeffs.clone(),
                    root,
                    embedding: self.embedding,
                    interval,
                })
            }
        }
    }

    /// Re-tags a value with rational coefficients with another embedding.
    pub fn with_embedding(&self, e: Embedding) -> Option<Self> {
        if e == self.embedding {
            return Some(self.clone());
        }
        self.has_rational_data().then(|| {
            let mut c = self.clone();
            c.embedding = e;
            c
        })
    }

    /// Exact comparison of the root against `t ∈ E` under the root's
    /// embedding.
    pub fn cmp_tower(&self, t: &TowerElem) -> Result<Ordering> {
        let e = self.embedding;
        let t = t.at_embedding(e);
        cmp_root_with(&self.root, &t, e)
    }

    pub(crate) fn cmp_rational_exact(&self, t: &Rational) -> Result<Ordering> {
        self.cmp_tower(&TowerElem::from_rational(t.clone()))
    }

    /// Evaluates the defining polynomial at `t` (exact).
    pub fn eval_poly(&self, t: &TowerElem) -> TowerElem {
        let mut acc = TowerElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// Narrowed isolating interval of width at most `2^-bits`.
    pub fn approx(&self, bits: u32) -> DyadicInterval {
        super::embed_approx(self, self.embedding, bits.max(1)).expect("valid by construction")
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            if let Some(v) = num_traits::ToPrimitive::to_f64(q) {
                return v;
            }
        }
        self.approx(60).midpoint_f64()
    }

    fn refined(&self, iv: DyadicInterval) -> DyadicInterval {
        bisect(self, self.embedding, iv).expect("valid by construction")
    }

    /// Total order on algebraic reals sharing an embedding (or carrying
    /// rational data). Intervals are refined until they separate; equality
    /// is decided once, by a shared-root test on the defining polynomials.
    pub fn compare(&self, other: &Self) -> Ordering {
        let (x, y) = reconcile(self, other);
        if x.coeffs == y.coeffs && x.branch() == y.branch() {
            return Ordering::Equal;
        }
        let (mut ix, mut iy) = (x.interval.clone(), y.interval.clone());
        let mut shared_checked = false;
        loop {
            if ix.hi < iy.lo {
                return Ordering::Less;
            }
            if iy.hi < ix.lo {
                return Ordering::Greater;
            }
            if !shared_checked {
                if x.shares_root_with(&y) {
                    return Ordering::Equal;
                }
                shared_checked = true;
            }
            if ix.is_point() && iy.is_point() {
                // overlapping points are equal, which the shared-root test
                // has already excluded
                unreachable!("distinct algebraic reals with identical point intervals");
            }
            if !ix.is_point() && (iy.is_point() || ix.width() >= iy.width()) {
                ix = x.refined(ix);
            } else {
                iy = y.refined(iy);
            }
        }
    }

    /// True iff the two values coincide: the gcd of the defining polynomials
    /// is computed over `E` and its roots are matched against both values.
    fn shares_root_with(&self, other: &Self) -> bool {
        let g = poly_gcd(self.coeffs.clone(), other.coeffs.clone());
        match g.len() {
            0 | 1 => false,
            2 => {
                let r = -&g[0];
                self.cmp_tower(&r) == Ok(Ordering::Equal)
                    && other.cmp_tower(&r) == Ok(Ordering::Equal)
            }
            _ => self.branch() == other.branch(),
        }
    }
}

fn reconcile<'a>(
    x: &'a AlgebraicReal,
    y: &'a AlgebraicReal,
) -> (
    alloc::borrow::Cow<'a, AlgebraicReal>,
    alloc::borrow::Cow<'a, AlgebraicReal>,
) {
    use alloc::borrow::Cow;
    if x.embedding == y.embedding {
        return (Cow::Borrowed(x), Cow::Borrowed(y));
    }
    if let Some(y2) = y.with_embedding(x.embedding) {
        return (Cow::Borrowed(x), Cow::Owned(y2));
    }
    if let Some(x2) = x.with_embedding(y.embedding) {
        return (Cow::Owned(x2), Cow::Borrowed(y));
    }
    panic!("comparing algebraic reals under different embeddings");
}

fn cmp_root_with(root: &Root, t: &TowerElem, e: Embedding) -> Result<Ordering> {
    match root {
        Root::Linear(r) => Ok((r - t).sign(e)?.cmp(&0)),
        Root::Quadratic {
            vertex,
            disc,
            branch,
        } => {
            // root − t = A ± √disc / 2 with A = vertex − t
            let a = vertex - t;
            let sa = a.sign(e)?;
            let quarter = TowerElem::from_rational(Rational::new(BigInt::one(), BigInt::from(4)));
            let h2 = disc * &quarter;
            let a2 = a.square();
            Ok(match branch {
                Branch::Upper => {
                    if sa >= 0 {
                        Ordering::Greater
                    } else {
                        (&h2 - &a2).sign(e)?.cmp(&0)
                    }
                }
                Branch::Lower => {
                    if sa <= 0 {
                        Ordering::Less
                    } else {
                        (&a2 - &h2).sign(e)?.cmp(&0)
                    }
                }
            })
        }
    }
}

fn power_of_two_at_least(bound: BigInt) -> BigInt {
    let mut b = BigInt::one();
    while b < bound {
        b <<= 1;
    }
    b
}

struct RootProbe<'a> {
    root: &'a Root,
}

impl ExactValue for RootProbe<'_> {
    fn cmp_rational(&self, t: &Rational, e: Embedding) -> Result<Ordering> {
        cmp_root_with(self.root, &TowerElem::from_rational(t.clone()), e)
    }

    fn enclosure(&self, _e: Embedding) -> Result<DyadicInterval> {
        unreachable!("probes are only bisected")
    }
}

fn linear_interval(r: &TowerElem, e: Embedding) -> Result<DyadicInterval> {
    if let Some(q) = r.as_rational() {
        if let Some(d) = Dyadic::from_rational(q) {
            return Ok(DyadicInterval::point(d));
        }
    }
    let b = power_of_two_at_least(r.magnitude_bound());
    let mut iv = DyadicInterval::new(Dyadic::from_int(-b.clone()), Dyadic::from_int(b));
    let root = Root::Linear(r.clone());
    let probe = RootProbe { root: &root };
    while !iv.is_point() && iv.width() > Rational::one() {
        iv = bisect(&probe, e, iv)?;
    }
    Ok(iv)
}

/// Bisects `[-B, B]` until the interval excludes the vertex, so that it
/// contains exactly one root of the quadratic.
fn quadratic_interval(root: &Root, e: Embedding) -> Result<DyadicInterval> {
    let Root::Quadratic { vertex, disc, .. } = root else {
        unreachable!()
    };
    let bound = vertex.magnitude_bound() + disc.magnitude_bound().sqrt() + BigInt::one();
    let b = power_of_two_at_least(bound);
    let mut iv = DyadicInterval::new(Dyadic::from_int(-b.clone()), Dyadic::from_int(b));
    let probe = RootProbe { root };
    loop {
        if iv.is_point() {
            return Ok(iv);
        }
        let lo = TowerElem::from_rational(iv.lo.to_rational());
        let hi = TowerElem::from_rational(iv.hi.to_rational());
        let above_lo = (vertex - &lo).sign(e)? >= 0;
        let below_hi = (&hi - vertex).sign(e)? >= 0;
        if !(above_lo && below_hi) {
            return Ok(iv);
        }
        iv = bisect(&probe, e, iv)?;
    }
}

fn strip(mut p: Vec<TowerElem>) -> Vec<TowerElem> {
    while p.last().is_some_and(TowerElem::is_zero) {
        p.pop();
    }
    p
}

fn make_monic(p: Vec<TowerElem>) -> Vec<TowerElem> {
    let p = strip(p);
    let Some(lead) = p.last() else { return p };
    let inv = lead.checked_inv().expect("nonzero leading coefficient");
    p.iter().map(|c| c * &inv).collect()
}

/// Remainder of `a` modulo the monic `b`.
fn poly_rem(mut a: Vec<TowerElem>, b: &[TowerElem]) -> Vec<TowerElem> {
    let db = b.len() - 1;
    while a.len() > db && !a.is_empty() {
        let lead = a.last().cloned().expect("nonempty");
        let shift = a.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = &a[shift + i] - &(&lead * c);
        }
        a.pop();
        a = strip(a);
    }
    a
}

fn poly_gcd(a: Vec<TowerElem>, b: Vec<TowerElem>) -> Vec<TowerElem> {
    let mut a = make_monic(a);
    let mut b = make_monic(b);
    while !b.is_empty() {
        let r = make_monic(poly_rem(a, &b));
        a = b;
        b = r;
    }
    a
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        match &self.root {
            Root::Linear(t) => write!(f, "{t} @{} ≈ {}", self.embedding, self.to_f64()),
            Root::Quadratic { branch, .. } => write!(
                f,
                "root[{}](z^2 + ({})z + ({})) @{} ≈ {}",
                match branch {
                    Branch::Lower => "lower",
                    Branch::Upper => "upper",
                },
                self.coeffs[1],
                self.coeffs[0],
                self.embedding,
                self.to_f64()
            ),
        }
    }
}
