//! Linking of boundary endpoint pairs, product flats in `(H²)^r`, the
//! triangular configuration and the density search for compact flats.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;

use num_traits::{Signed, ToPrimitive};

use crate::exactreal::{AlgebraicReal, Embedding, Rational};
use crate::moebius::{act_boundary, axis, BoundaryPt, Mat2R, OrientedGeodesic};
use crate::quaternion::{is_polar_regular, tau, GroupSpec, QuatElem};
use crate::{Error, Result};

/// Orientation of three distinct points of `R ∪ {∞}`: `+1` when they are
/// visited in the given cyclic order by increasing reals wrapping through
/// `∞`.
pub fn cyclic_order(p: &BoundaryPt, q: &BoundaryPt, s: &BoundaryPt) -> Result<i8> {
    let pq = p.cmp(q);
    let ps = p.cmp(s);
    let qs = q.cmp(s);
    if pq == Ordering::Equal || ps == Ordering::Equal || qs == Ordering::Equal {
        return Err(Error::DegenerateTriple);
    }
    let inversions = [pq, ps, qs]
        .iter()
        .filter(|&&o| o == Ordering::Greater)
        .count();
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

fn check_distinct(g1: &OrientedGeodesic, g2: &OrientedGeodesic) -> Result<()> {
    for p in [g1.start(), g1.end()] {
        for q in [g2.start(), g2.end()] {
            if p == q {
                return Err(Error::SharedEndpoint);
            }
        }
    }
    Ok(())
}

/// Whether the endpoint pairs separate each other, i.e. the geodesics meet
/// in a single interior point.
pub fn geodesics_link(g1: &OrientedGeodesic, g2: &OrientedGeodesic) -> Result<bool> {
    check_distinct(g1, g2)?;
    let a = cyclic_order(g1.start(), g2.start(), g1.end())?;
    let b = cyclic_order(g1.start(), g2.end(), g1.end())?;
    Ok(a != b)
}

/// Intersection sign of two oriented geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingSign {
    Negative,
    Disjoint,
    Positive,
}

impl CrossingSign {
    pub fn from_i8(s: i8) -> Self {
        match s.signum() {
            1 => CrossingSign::Positive,
            -1 => CrossingSign::Negative,
            _ => CrossingSign::Disjoint,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            CrossingSign::Negative => -1,
            CrossingSign::Disjoint => 0,
            CrossingSign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == CrossingSign::Disjoint
    }
}

impl Mul for CrossingSign {
    type Output = CrossingSign;
    fn mul(self, rhs: CrossingSign) -> CrossingSign {
        CrossingSign::from_i8(self.value() * rhs.value())
    }
}

impl fmt::Display for CrossingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// `+1` when `(γ1.start, γ2.start, γ1.end, γ2.end)` is positively cyclically
/// ordered, `−1` for the reverse, `0` when the geodesics do not meet.
pub fn crossing_sign(g1: &OrientedGeodesic, g2: &OrientedGeodesic) -> Result<CrossingSign> {
    if !geodesics_link(g1, g2)? {
        return Ok(CrossingSign::Disjoint);
    }
    Ok(CrossingSign::from_i8(cyclic_order(
        g1.start(),
        g2.start(),
        g1.end(),
    )?))
}

/// A product of one oriented geodesic per factor of `(H²)^r`; coordinate
/// `k` lives in the factor of the `k`-th split embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    coords: Vec<OrientedGeodesic>,
    provenance: Option<QuatElem>,
}

impl Flat {
    pub fn new(coords: Vec<OrientedGeodesic>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("a flat needs at least one factor"));
        }
        Ok(Flat {
            coords,
            provenance: None,
        })
    }

    /// `r` copies of the same geodesic.
    pub fn diagonal(g: OrientedGeodesic, r: usize) -> Result<Self> {
        Self::new(alloc::vec![g; r])
    }

    pub fn with_provenance(mut self, x: QuatElem) -> Self {
        self.provenance = Some(x);
        self
    }

    pub fn r(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[OrientedGeodesic] {
        &self.coords
    }

    /// A stabilizing element, when the flat was built from one.
    pub fn provenance(&self) -> Option<&QuatElem> {
        self.provenance.as_ref()
    }

    pub fn reversed(&self) -> Self {
        Flat {
            coords: self.coords.iter().map(OrientedGeodesic::reversed).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Same endpoint pair in every coordinate, orientation ignored.
    pub fn same_support(&self, other: &Self) -> bool {
        self.r() == other.r()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a.same_line(b))
    }

    /// Image under one matrix per factor.
    pub fn translate_by(&self, mats: &[Mat2R]) -> Result<Self> {
        if mats.len() != self.r() {
            return Err(Error::DimensionMismatch);
        }
        Ok(Flat {
            coords: self
                .coords
                .iter()
                .zip(mats)
                .map(|(c, m)| c.translate(m))
                .collect(),
            provenance: None,
        })
    }

    /// `x·F` through the matrices `τ_e(x)` at the split embeddings; the
    /// provenance is conjugated along.
    pub fn translate(&self, x: &QuatElem) -> Result<Self> {
        let mats = quat_matrices(x)?;
        let mut out = self.translate_by(&mats)?;
        if let Some(p) = &self.provenance {
            out.provenance = Some(p.conjugate_by(x)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coords.iter().enumerate() {
            if n > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `τ_e(x)` at every split embedding, in order.
pub fn quat_matrices(x: &QuatElem) -> Result<Vec<Mat2R>> {
    let alg = x.algebra();
    alg.split_embeddings()
        .iter()
        .map(|&e| tau(alg, e, x))
        .collect()
}

/// Zero when some coordinate pair is unlinked, otherwise the product of the
/// coordinate crossing signs.
pub fn flats_intersect(a: &Flat, b: &Flat) -> Result<CrossingSign> {
    if a.r() != b.r() {
        return Err(Error::DimensionMismatch);
    }
    let mut sign = CrossingSign::Positive;
    for (g1, g2) in a.coords.iter().zip(&b.coords) {
        sign = sign * crossing_sign(g1, g2)?;
    }
    Ok(sign)
}

/// Flats `A_1..A_n`, `B_1..B_n` in `(H²)^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSpec {
    n: usize,
    r: usize,
    a: Vec<Flat>,
    b: Vec<Flat>,
}

impl ConfigSpec {
    pub fn new(a: Vec<Flat>, b: Vec<Flat>) -> Result<Self> {
        let n = a.len();
        if n == 0 || b.len() != n {
            return Err(Error::InvalidParameter(
                "configurations need n >= 1 flats on each side",
            ));
        }
        let r = a[0].r();
        if a.iter().chain(&b).any(|f| f.r() != r) {
            return Err(Error::DimensionMismatch);
        }
        Ok(ConfigSpec { n, r, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn a(&self) -> &[Flat] {
        &self.a
    }

    pub fn b(&self) -> &[Flat] {
        &self.b
    }

    /// `flats_intersect(A_i, B_j) ≠ 0` for every pair.
    pub fn pattern(&self) -> Result<Vec<Vec<bool>>> {
        self.a
            .iter()
            .map(|ai| {
                self.b
                    .iter()
                    .map(|bj| flats_intersect(ai, bj).map(|s| !s.is_zero()))
                    .collect()
            })
            .collect()
    }

    /// `A_i` meets `B_j` exactly when `i ≤ j`.
    pub fn has_triangular_pattern(&self) -> Result<bool> {
        let p = self.pattern()?;
        Ok((0..self.n).all(|i| (0..self.n).all(|j| p[i][j] == (i <= j))))
    }
}

/// `A_i = L_i^r`, `B_j = M_j^r` with `L_i = (−i → i)` and
/// `M_j = (j/(n+1) → j + 1/2)`.
pub fn build_configuration(n: usize, r: usize) -> Result<ConfigSpec> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidParameter("n and r must be at least 1"));
    }
    let ni = n as i64;
    let rat = |p: i64, q: i64| Rational::new(p.into(), q.into());
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 1..=ni {
        let l = OrientedGeodesic::from_rationals(rat(-i, 1), rat(i, 1))?;
        a.push(Flat::diagonal(l, r)?);
        let m = OrientedGeodesic::from_rationals(rat(i, ni + 1), rat(2 * i + 1, 2))?;
        b.push(Flat::diagonal(m, r)?);
    }
    let c = ConfigSpec::new(a, b)?;
    debug_assert!(c.has_triangular_pattern().unwrap_or(false));
    Ok(c)
}

/// Endpoints of every flat of the configuration in factor `k`.
fn factor_endpoints(c: &ConfigSpec, k: usize) -> Vec<&BoundaryPt> {
    c.a.iter()
        .chain(&c.b)
        .flat_map(|f| [f.coords[k].start(), f.coords[k].end()])
        .collect()
}

/// Half the smallest distance between two finite endpoints lying in the same
/// factor. Moving each endpoint by less than this keeps every linking
/// relation. Requires rational endpoints.
pub fn perturbation_radius(c: &ConfigSpec) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for k in 0..c.r {
        let mut pts: Vec<Rational> = Vec::new();
        for p in factor_endpoints(c, k) {
            match p {
                BoundaryPt::Infinity => {}
                BoundaryPt::Finite(x) => pts.push(x.as_rational().cloned().ok_or(
                    Error::InvalidParameter("perturbation radius needs rational endpoints"),
                )?),
            }
        }
        pts.sort();
        for w in pts.windows(2) {
            let gap = &w[1] - &w[0];
            if best.as_ref().is_none_or(|b| gap < *b) {
                best = Some(gap);
            }
        }
    }
    let best = best.ok_or(Error::InvalidParameter(
        "configuration has fewer than two finite endpoints",
    ))?;
    Ok(best / Rational::from_integer(2.into()))
}

/// The product of the axes of `τ_e(x)` over the split embeddings.
pub fn flat_of_quat(x: &QuatElem) -> Result<Flat> {
    if !is_polar_regular(x)? || x.algebra().r() == 0 {
        return Err(Error::NotPolarRegular);
    }
    let coords = quat_matrices(x)?
        .iter()
        .map(axis)
        .collect::<Result<Vec<_>>>()?;
    Ok(Flat::new(coords)?.with_provenance(x.clone()))
}

/// Certified `|p − t| < tol`; `∞` only matches `∞`.
pub fn boundary_close(p: &BoundaryPt, t: &BoundaryPt, tol: &Rational) -> bool {
    match (p, t) {
        (BoundaryPt::Infinity, BoundaryPt::Infinity) => true,
        (BoundaryPt::Finite(p), BoundaryPt::Finite(t)) => finite_close(p, t, tol),
        _ => false,
    }
}

fn finite_close(p: &AlgebraicReal, t: &AlgebraicReal, tol: &Rational) -> bool {
    let within = |x: &AlgebraicReal, c: &Rational| {
        let lo = x.cmp_tower(&crate::TowerElem::from_rational(c - tol));
        let hi = x.cmp_tower(&crate::TowerElem::from_rational(c + tol));
        lo == Ok(Ordering::Greater) && hi == Ok(Ordering::Less)
    };
    if let Some(c) = t.as_rational() {
        return within(p, c);
    }
    if let Some(c) = p.as_rational() {
        return within(t, c);
    }
    // both irrational: enclose each to a quarter of the tolerance
    let mut bits = 2u32;
    while Rational::new(4.into(), num_bigint::BigInt::from(1) << bits) > *tol {
        bits += 1;
    }
    let ip = p.approx(bits);
    let it = t.approx(bits);
    let d1 = (ip.hi.to_rational() - it.lo.to_rational()).abs();
    let d2 = (it.hi.to_rational() - ip.lo.to_rational()).abs();
    d1.max(d2) < *tol
}

/// Endpoint pairs agree within `tol` in every coordinate, orientation
/// ignored.
pub fn flats_close(f: &Flat, target: &Flat, tol: &Rational) -> bool {
    f.r() == target.r()
        && f.coords.iter().zip(&target.coords).all(|(g, t)| {
            (boundary_close(g.start(), t.start(), tol) && boundary_close(g.end(), t.end(), tol))
                || (boundary_close(g.start(), t.end(), tol)
                    && boundary_close(g.end(), t.start(), tol))
        })
}

/// Polar regular elements of the congruence window whose flats lie within
/// `tol` of `target`, in enumeration order, together with their flats.
pub fn density_matches(
    target: &Flat,
    g: &GroupSpec,
    tol: &Rational,
    limit: usize,
) -> Result<Vec<(QuatElem, Flat)>> {
    if !tol.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    if target.r() != g.algebra().r() {
        return Err(Error::DimensionMismatch);
    }
    let mut out = Vec::new();
    for x in crate::quaternion::congruence_units(g) {
        if out.len() >= limit {
            break;
        }
        if !is_polar_regular(&x)? {
            continue;
        }
        if !coarse_close(&x, target, tol) {
            continue;
        }
        let f = flat_of_quat(&x)?;
        if flats_close(&f, target, tol) {
            out.push((x, f));
        }
    }
    Ok(out)
}

/// The first polar regular element of the congruence window whose flat is
/// within `tol` of `target`.
pub fn density_search(target: &Flat, g: &GroupSpec, tol: &Rational) -> Result<QuatElem> {
    density_matches(target, g, tol, 1)?
        .into_iter()
        .next()
        .map(|(x, _)| x)
        .ok_or(Error::NotFound)
}

/// Floating prefilter: rejects candidates whose fixed points are clearly far
/// from the target. Never rejects a true match.
fn coarse_close(x: &QuatElem, target: &Flat, tol: &Rational) -> bool {
    let slack = rational_to_f64(tol) + 1e-6;
    let alg = x.algebra();
    for (k, &e) in alg.split_embeddings().iter().enumerate() {
        let Some((p, q)) = approx_fixed_points(x, e) else {
            return true;
        };
        let t = &target.coords[k];
        let (s, u) = (t.start().to_f64(), t.end().to_f64());
        let near = |a: f64, b: f64| {
            if a.is_infinite() || b.is_infinite() {
                a.is_infinite() == b.is_infinite() || a.abs() > 1e6 || b.abs() > 1e6
            } else {
                (a - b).abs() <= slack + 1e-9 * a.abs().max(b.abs())
            }
        };
        if !((near(p, s) && near(q, u)) || (near(p, u) && near(q, s))) {
            return false;
        }
    }
    true
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::MAX)
}

/// Floating entries `[a11, a12, a21, a22]` of `τ_e(x)`.
pub(crate) fn approx_tau(x: &QuatElem, e: Embedding) -> [f64; 4] {
    let alg = x.algebra();
    let root_d = e_sign(e) * libm::sqrt(alg.field().d() as f64);
    let ev = |q: &crate::QuadElem| rational_to_f64(q.x()) + rational_to_f64(q.y()) * root_d;
    let sa = libm::sqrt(ev(alg.a()));
    let [x0, x1, x2, x3] = x.coords();
    let (x0, x1, x2, x3) = (ev(x0), ev(x1), ev(x2), ev(x3));
    let b = ev(alg.b());
    [x0 + x1 * sa, x2 + x3 * sa, b * (x2 - x3 * sa), x0 - x1 * sa]
}

/// Floating fixed points of `τ_e(x)`; `None` when too close to call.
pub(crate) fn approx_fixed_points(x: &QuatElem, e: Embedding) -> Option<(f64, f64)> {
    let [a11, a12, a21, a22] = approx_tau(x, e);
    let tr = a11 + a22;
    let det = a11 * a22 - a12 * a21;
    let disc = tr * tr - 4.0 * det;
    if disc.is_nan() || disc <= 1e-9 {
        return None;
    }
    if a21.abs() < 1e-9 {
        if a21 != 0.0 {
            return None;
        }
        return Some((f64::INFINITY, a12 / (a22 - a11)));
    }
    let sd = libm::sqrt(disc);
    Some((
        (a11 - a22 + sd) / (2.0 * a21),
        (a11 - a22 - sd) / (2.0 * a21),
    ))
}

fn e_sign(e: Embedding) -> f64 {
    if e == Embedding::SIGMA1 {
        1.0
    } else {
        -1.0
    }
}

impl OrientedGeodesic {
    /// Whether `g` maps the endpoint pair to itself.
    pub fn is_fixed_setwise_by(&self, g: &Mat2R) -> bool {
        let s = act_boundary(g, self.start());
        let e = act_boundary(g, self.end());
        (&s == self.start() && &e == self.end()) || (&s == self.end() && &e == self.start())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::{QuadElem, QuadField};
    use crate::quaternion::AlgebraDesc;

    fn pt(n: i64) -> BoundaryPt {
        BoundaryPt::from_int(n)
    }

    fn geo(s: BoundaryPt, e: BoundaryPt) -> OrientedGeodesic {
        OrientedGeodesic::new(s, e).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cyclic_order_examples() {
        let inf = BoundaryPt::Infinity;
        assert_eq!(cyclic_order(&pt(0), &pt(1), &inf), Ok(1));
        assert_eq!(cyclic_order(&pt(0), &inf, &pt(1)), Ok(-1));
        assert_eq!(cyclic_order(&pt(-1), &pt(0), &pt(1)), Ok(1));
        assert_eq!(cyclic_order(&pt(1), &pt(-1), &pt(0)), Ok(1));
        assert_eq!(
            cyclic_order(&pt(0), &pt(0), &pt(1)),
            Err(Error::DegenerateTriple)
        );
    }

    #[test]
    fn linking_examples() {
        let inf = BoundaryPt::Infinity;
        let vert = geo(pt(0), inf.clone());
        assert!(geodesics_link(&vert, &geo(pt(-1), pt(1))).unwrap());
        assert!(!geodesics_link(&geo(pt(1), pt(2)), &geo(pt(3), pt(4))).unwrap());
        assert_eq!(
            geodesics_link(&vert, &geo(pt(0), pt(1))),
            Err(Error::SharedEndpoint)
        );
        assert_eq!(
            crossing_sign(&vert, &geo(pt(1), pt(-1))),
            Ok(CrossingSign::Positive)
        );
        assert_eq!(
            crossing_sign(&vert, &geo(pt(-1), pt(1))),
            Ok(CrossingSign::Negative)
        );
        assert_eq!(
            crossing_sign(&geo(pt(1), pt(2)), &geo(pt(3), pt(4))),
            Ok(CrossingSign::Disjoint)
        );
    }

    #[test]
    fn product_signs() {
        let inf = BoundaryPt::Infinity;
        let a = Flat::diagonal(geo(pt(0), inf), 2).unwrap();
        let b = Flat::diagonal(geo(pt(-1), pt(1)), 2).unwrap();
        assert_eq!(flats_intersect(&a, &b), Ok(CrossingSign::Positive));
        let c = Flat::new(alloc::vec![geo(pt(-1), pt(1)), geo(pt(2), pt(3))]).unwrap();
        assert_eq!(flats_intersect(&a, &c), Ok(CrossingSign::Disjoint));
        let d = Flat::diagonal(geo(pt(-1), pt(1)), 3).unwrap();
        assert_eq!(flats_intersect(&a, &d), Err(Error::DimensionMismatch));
    }

    #[test]
    fn configuration_and_radius() {
        let c = build_configuration(1, 2).unwrap();
        assert!(c.has_triangular_pattern().unwrap());
        assert_eq!(perturbation_radius(&c).unwrap(), rat(1, 4));
        for n in 1..=5 {
            assert!(build_configuration(n, 1)
                .unwrap()
                .has_triangular_pattern()
                .unwrap());
        }
        let c4 = build_configuration(4, 1).unwrap();
        assert_eq!(perturbation_radius(&c4).unwrap(), rat(1, 10));
    }

    #[test]
    fn flats_of_units() {
        let f = QuadField::new(2).unwrap();
        let alg = AlgebraDesc::from_ints(f, 1, 1).unwrap();
        let x = QuatElem::new(
            &alg,
            [
                QuadElem::from_int(f, 3),
                QuadElem::new(f, rat(0, 1), rat(2, 1)),
                QuadElem::zero(f),
                QuadElem::zero(f),
            ],
        )
        .unwrap();
        let fl = flat_of_quat(&x).unwrap();
        let inf = BoundaryPt::Infinity;
        assert_eq!(fl.coords()[0], geo(pt(0), inf.clone()));
        assert_eq!(fl.coords()[1], geo(inf, pt(0)));
        for (c, m) in fl.coords().iter().zip(quat_matrices(&x).unwrap()) {
            assert!(c.is_fixed_setwise_by(&m));
        }
        assert_eq!(
            flat_of_quat(&QuatElem::one(&alg)).unwrap_err(),
            Error::NotPolarRegular
        );

        let alg3 = AlgebraDesc::from_ints(QuadField::rationals(), 3, -1).unwrap();
        let fi = flat_of_quat(&QuatElem::i(&alg3)).unwrap();
        assert_eq!(fi.coords()[0], geo(pt(0), BoundaryPt::Infinity));
    }

    #[test]
    fn density_on_the_diagonal_flat() {
        let f = QuadField::new(2).unwrap();
        let alg = AlgebraDesc::from_ints(f, 1, 1).unwrap();
        let target = Flat::diagonal(geo(pt(0), BoundaryPt::Infinity), 2).unwrap();
        let g = GroupSpec::new(&alg, 1, 3).unwrap();
        let x = density_search(&target, &g, &rat(1, 100)).unwrap();
        assert!(flat_of_quat(&x).unwrap().same_support(&target));
        let tiny = GroupSpec::new(&alg, 1, 1).unwrap();
        let generic =
            Flat::diagonal(geo(pt(-7), BoundaryPt::from_rational(rat(13, 3))), 2).unwrap();
        assert_eq!(
            density_search(&generic, &tiny, &rat(1, 100)),
            Err(Error::NotFound)
        );
    }
}
