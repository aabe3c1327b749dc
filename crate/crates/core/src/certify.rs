//! Window-bounded orbit intersection counts and the triangular certificate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactreal::Rational;
use crate::flats::{
    approx_fixed_points, approx_tau, flat_of_quat, flats_intersect, perturbation_radius,
    quat_matrices, ConfigSpec, CrossingSign, Flat,
};
use crate::moebius::{BoundaryPt, OrientedGeodesic};
use crate::quaternion::{
    congruence_units, enumerate_norm_one, is_polar_regular, AlgebraDesc, GroupSpec, QuatElem,
};
use crate::{Error, Result};

/// A group element whose translate of `A` meets the fixed flat `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateRecord {
    pub gamma: QuatElem,
    pub flat: Flat,
    pub sign: CrossingSign,
}

/// Outcome of scanning one pair of flats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitScan {
    /// Pairwise inequivalent meeting translates, in enumeration order.
    pub records: Vec<TranslateRecord>,
    /// Translates sharing an endpoint with `B` in some factor; their
    /// intersection is not transversal and they are not counted.
    pub degenerate: usize,
    /// Meeting translates dropped as equivalent to a retained one.
    pub duplicates: usize,
}

/// Elements of `units` mapping `b` to itself, setwise in every factor.
pub fn stabilizer_in(b: &Flat, units: &[QuatElem]) -> Result<Vec<QuatElem>> {
    let mut out = Vec::new();
    for d in units {
        let mats = quat_matrices(d)?;
        if b.coords()
            .iter()
            .zip(&mats)
            .all(|(c, m)| c.is_fixed_setwise_by(m))
        {
            out.push(d.clone());
        }
    }
    Ok(out)
}

/// `γ1 A` and `γ2 A` are identified when some `δ` stabilizing `B` maps one
/// onto the other (as sets).
pub fn translates_equivalent(t1: &Flat, t2: &Flat, stab_b: &[QuatElem]) -> Result<bool> {
    if t1.same_support(t2) {
        return Ok(true);
    }
    for d in stab_b {
        let moved = t1.translate_by(&quat_matrices(d)?)?;
        if moved.same_support(t2) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Scans `units` for translates `γA` meeting `B`, deduplicated modulo the
/// stabilizer of `B` inside the same window.
pub fn orbit_scan_with(
    a: &Flat,
    b: &Flat,
    units: &[QuatElem],
    stab_b: &[QuatElem],
) -> Result<OrbitScan> {
    if a.r() != b.r() {
        return Err(Error::DimensionMismatch);
    }
    let mut scan = OrbitScan {
        records: Vec::new(),
        degenerate: 0,
        duplicates: 0,
    };
    for gamma in units {
        let t = a.translate_by(&quat_matrices(gamma)?)?;
        let sign = match flats_intersect(&t, b) {
            Ok(s) => s,
            Err(Error::SharedEndpoint) => {
                scan.degenerate += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if sign.is_zero() {
            continue;
        }
        let mut dup = false;
        for r in &scan.records {
            if translates_equivalent(&r.flat, &t, stab_b)? {
                dup = true;
                break;
            }
        }
        if dup {
            scan.duplicates += 1;
            continue;
        }
        scan.records.push(TranslateRecord {
            gamma: gamma.clone(),
            flat: t,
            sign,
        });
    }
    Ok(scan)
}

/// Meeting translates `γA ∩ B ≠ ∅` for `γ` in the congruence window.
pub fn orbit_translates(a: &Flat, b: &Flat, g: &GroupSpec) -> Result<Vec<TranslateRecord>> {
    let units = congruence_units(g);
    let stab = stabilizer_in(b, &units)?;
    Ok(orbit_scan_with(a, b, &units, &stab)?.records)
}

/// Sum of signs, and whether all signs agree.
pub fn signed_count(records: &[TranslateRecord]) -> (i64, bool) {
    let count = records.iter().map(|r| i64::from(r.sign.value())).sum();
    let consistent = records.windows(2).all(|w| w[0].sign == w[1].sign);
    (count, consistent)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub n: usize,
    pub entries: Vec<Vec<i64>>,
    pub witnesses: Vec<Vec<Vec<TranslateRecord>>>,
    pub sign_consistent: Vec<Vec<bool>>,
    pub degenerate: Vec<Vec<usize>>,
}

impl IntersectionMatrix {
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.entries[i][j] == 0))
    }

    pub fn has_nonzero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.entries[i][i] != 0)
    }

    pub fn all_consistent(&self) -> bool {
        self.sign_consistent.iter().flatten().all(|&c| c)
    }
}

/// `entries[i][j] = signed_count(orbit_translates(A_i, B_j))`.
pub fn intersection_matrix(c: &ConfigSpec, g: &GroupSpec) -> Result<IntersectionMatrix> {
    let units = congruence_units(g);
    let n = c.n();
    let mut m = IntersectionMatrix {
        n,
        entries: alloc::vec![alloc::vec![0; n]; n],
        witnesses: alloc::vec![alloc::vec![Vec::new(); n]; n],
        sign_consistent: alloc::vec![alloc::vec![true; n]; n],
        degenerate: alloc::vec![alloc::vec![0; n]; n],
    };
    for (j, bj) in c.b().iter().enumerate() {
        let stab = stabilizer_in(bj, &units)?;
        for (i, ai) in c.a().iter().enumerate() {
            let scan = orbit_scan_with(ai, bj, &units, &stab)?;
            let (count, ok) = signed_count(&scan.records);
            m.entries[i][j] = count;
            m.sign_consistent[i][j] = ok;
            m.degenerate[i][j] = scan.degenerate;
            m.witnesses[i][j] = scan.records;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    RankAtLeastN(usize),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub matrix: IntersectionMatrix,
    pub params: GroupSpec,
    pub caveats: Vec<String>,
}

/// Runs the intersection matrix over the window of `g` and certifies rank
/// `n` when it is upper triangular with nonzero, sign-consistent entries.
pub fn certify(c: &ConfigSpec, g: &GroupSpec) -> Result<Certificate> {
    let matrix = intersection_matrix(c, g)?;
    let mut caveats = alloc::vec![format!(
        "window-bounded enumeration (height {}, level {}): finitely many meeting double cosets exist but no effective bound is known; counts cover this window only",
        g.height(),
        g.level()
    )];
    let n = matrix.n;
    if c.a().iter().chain(c.b()).any(|f| f.provenance().is_none()) {
        caveats
            .push("some flats carry no stabilizing element; compactness is not witnessed".into());
    }
    for i in 0..n {
        for j in 0..n {
            if !matrix.sign_consistent[i][j] {
                caveats.push(format!(
                    "entry ({i},{j}) mixes intersection signs: increase congruence level m"
                ));
            }
            if i > j && matrix.entries[i][j] != 0 {
                caveats.push(format!("entry ({i},{j}) below the diagonal is nonzero"));
            }
            if matrix.degenerate[i][j] > 0 {
                caveats.push(format!(
                    "entry ({i},{j}): {} translates share an endpoint with B and were not counted",
                    matrix.degenerate[i][j]
                ));
            }
        }
        if matrix.entries[i][i] == 0 {
            caveats.push(format!(
                "diagonal entry ({i},{i}) vanishes in the window: increase height H"
            ));
        }
    }
    let ok =
        matrix.is_upper_triangular() && matrix.has_nonzero_diagonal() && matrix.all_consistent();
    Ok(Certificate {
        verdict: if ok {
            Verdict::RankAtLeastN(n)
        } else {
            Verdict::Inconclusive
        },
        matrix,
        params: g.clone(),
        caveats,
    })
}

/// How the flats of an anchored configuration were obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorReport {
    pub radius: Rational,
    /// Stabilizers of `A_i`.
    pub alpha: Vec<QuatElem>,
    /// Conjugators `x_j` with `B_j = x_j · flat(x₀)`.
    pub conjugators: Vec<QuatElem>,
    /// Stabilizers `β_j = x_j x₀ x_j⁻¹` of `B_j`.
    pub beta: Vec<QuatElem>,
    /// Floating endpoint distance of each `A_i`, then each `B_j`, to its
    /// canonical counterpart.
    pub deviation: Vec<f64>,
}

impl AnchorReport {
    /// Whether every flat landed within the perturbation radius of the
    /// canonical one.
    pub fn within_radius(&self) -> bool {
        let r = rational_f64(&self.radius);
        self.deviation.iter().all(|&d| d < r)
    }
}

/// Replaces the canonical flats of `target` by flats with stabilizers in
/// the norm-one units of height `height`: `A_i` by the flat of a polar
/// regular unit, `B_j` by a unit translate of the flat of `x₀ = i`.
///
/// For each flat in turn the candidates are ranked by endpoint distance to
/// the canonical flat and the first one keeping the pattern with the flats
/// already chosen is taken; the pattern is checked exactly. Orientations
/// are copied from the target.
pub fn anchor_configuration(
    target: &ConfigSpec,
    alg: &AlgebraDesc,
    height: u32,
) -> Result<(ConfigSpec, AnchorReport)> {
    if alg.r() != target.r() {
        return Err(Error::DimensionMismatch);
    }
    if !alg.is_normalized() {
        return Err(Error::NegativeRadicand);
    }
    let delta = perturbation_radius(target)?;
    let search = GroupSpec::new(alg, 1, height)?;
    let units = enumerate_norm_one(&search);
    let embeddings = alg.split_embeddings();

    // floating images of the base points, per unit and factor
    let x0 = QuatElem::i(alg);
    let base = flat_of_quat(&x0)?;
    let mut polar: Vec<(usize, Vec<(f64, f64)>)> = Vec::new();
    let mut moved: Vec<Vec<(f64, f64)>> = Vec::with_capacity(units.len());
    for (u, x) in units.iter().enumerate() {
        let fixed: Option<Vec<(f64, f64)>> = embeddings
            .iter()
            .map(|&e| approx_fixed_points(x, e))
            .collect();
        if let Some(fp) = fixed {
            polar.push((u, fp));
        }
        moved.push(
            embeddings
                .iter()
                .zip(base.coords())
                .map(|(&e, c)| {
                    let m = approx_tau(x, e);
                    (mobius_f64(&m, c.start()), mobius_f64(&m, c.end()))
                })
                .collect(),
        );
    }

    let mut a: Vec<Flat> = Vec::new();
    let mut alpha = Vec::new();
    let mut deviation = Vec::new();
    for ti in target.a() {
        let mut ranked: Vec<(f64, usize)> = polar
            .iter()
            .map(|(u, fp)| (flat_distance(fp, ti), *u))
            .collect();
        ranked.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
        let mut found = None;
        for (d, u) in ranked {
            let x = &units[u];
            if !is_polar_regular(x)? {
                continue;
            }
            let f = orient_like(&flat_of_quat(x)?, ti);
            if a.iter().all(|g| !shares_endpoint(g, &f)) {
                found = Some((d, x.clone(), f));
                break;
            }
        }
        let (d, x, f) = found.ok_or(Error::NotFound)?;
        a.push(f);
        alpha.push(x);
        deviation.push(d);
    }

    let mut b: Vec<Flat> = Vec::new();
    let mut conj = Vec::new();
    let mut beta = Vec::new();
    for (j, tj) in target.b().iter().enumerate() {
        let mut ranked: Vec<(f64, usize)> = moved
            .iter()
            .enumerate()
            .map(|(u, pts)| (flat_distance(pts, tj), u))
            .collect();
        ranked.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
        let a_pts: Vec<Vec<(f64, f64)>> = a
            .iter()
            .map(|ai| {
                ai.coords()
                    .iter()
                    .map(|g| (point_f64(g.start()), point_f64(g.end())))
                    .collect()
            })
            .collect();
        let mut found = None;
        'cand: for (d, u) in ranked {
            let plausible = a_pts.iter().enumerate().all(|(i, ai)| {
                ai.iter()
                    .zip(&moved[u])
                    .map(|(&g, &h)| link_f64(g, h))
                    .try_fold(true, |acc, l| l.map(|l| acc && l))
                    .is_none_or(|l| l == (i <= j))
            });
            if !plausible {
                continue;
            }
            let x = &units[u];
            let f = orient_like(&base.translate(x)?, tj);
            if b.iter().any(|g| shares_endpoint(g, &f)) {
                continue;
            }
            for (i, ai) in a.iter().enumerate() {
                match flats_intersect(ai, &f) {
                    Ok(s) if s.is_zero() != (i <= j) => {}
                    _ => continue 'cand,
                }
            }
            found = Some((d, x.clone(), f));
            break;
        }
        let (d, x, f) = found.ok_or(Error::NotFound)?;
        beta.push(f.provenance().cloned().expect("translated provenance"));
        b.push(f);
        conj.push(x);
        deviation.push(d);
    }
    let c = ConfigSpec::new(a, b)?;
    debug_assert!(c.has_triangular_pattern().unwrap_or(false));
    Ok((
        c,
        AnchorReport {
            radius: delta,
            alpha,
            conjugators: conj,
            beta,
            deviation,
        },
    ))
}

fn shares_endpoint(f: &Flat, g: &Flat) -> bool {
    f.coords().iter().zip(g.coords()).any(|(p, q)| {
        let (ps, pe, qs, qe) = (p.start(), p.end(), q.start(), q.end());
        ps == qs || ps == qe || pe == qs || pe == qe
    })
}

fn rational_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::MAX)
}

fn mobius_f64(m: &[f64; 4], p: &BoundaryPt) -> f64 {
    let [a, b, c, d] = *m;
    let v = match p {
        BoundaryPt::Infinity => a / c,
        BoundaryPt::Finite(x) => {
            let x = x.to_f64();
            (a * x + b) / (c * x + d)
        }
    };
    if v.is_nan() || v.abs() > 1e12 {
        f64::INFINITY
    } else {
        v
    }
}

/// Largest endpoint distance over the factors, orientation ignored;
/// infinite when an endpoint sits at `∞` on one side only.
fn flat_distance(pts: &[(f64, f64)], target: &Flat) -> f64 {
    pts.iter()
        .zip(target.coords())
        .map(|(&(p, q), t)| {
            let (s, e) = (point_f64(t.start()), point_f64(t.end()));
            let fwd = gap(p, s).max(gap(q, e));
            let bwd = gap(p, e).max(gap(q, s));
            fwd.min(bwd)
        })
        .fold(0.0, f64::max)
}

/// Floating linking test; `None` when endpoints are too close to call.
fn link_f64(g: (f64, f64), h: (f64, f64)) -> Option<bool> {
    let pts = [g.0, g.1, h.0, h.1];
    for i in 0..4 {
        for j in 0..i {
            if gap(pts[i], pts[j]) < 1e-9 {
                return None;
            }
        }
    }
    let (lo, hi) = if g.0 < g.1 { (g.0, g.1) } else { (g.1, g.0) };
    let inside = |p: f64| lo < p && p < hi;
    Some(inside(h.0) != inside(h.1))
}

fn point_f64(p: &BoundaryPt) -> f64 {
    match p {
        BoundaryPt::Infinity => f64::INFINITY,
        BoundaryPt::Finite(x) => x.to_f64(),
    }
}

fn gap(p: f64, q: f64) -> f64 {
    match (p.is_infinite(), q.is_infinite()) {
        (true, true) => 0.0,
        (false, false) => (p - q).abs(),
        _ => f64::INFINITY,
    }
}

/// Per factor, flips `f` so that each geodesic runs the same way as the
/// nearby geodesic of `like`.
fn orient_like(f: &Flat, like: &Flat) -> Flat {
    let coords: Vec<OrientedGeodesic> = f
        .coords()
        .iter()
        .zip(like.coords())
        .map(|(c, t)| {
            let (s, e) = (point_f64(c.start()), point_f64(c.end()));
            let (ts, te) = (point_f64(t.start()), point_f64(t.end()));
            let fwd = gap(s, ts).max(gap(e, te));
            let bwd = gap(s, te).max(gap(e, ts));
            if bwd < fwd {
                c.reversed()
            } else {
                c.clone()
            }
        })
        .collect();
    let out = Flat::new(coords).expect("nonempty");
    match f.provenance() {
        Some(p) => out.with_provenance(p.clone()),
        None => out,
    }
}
