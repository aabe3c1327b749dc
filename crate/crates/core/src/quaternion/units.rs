use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{AlgebraDesc, QuatElem};
use crate::exactreal::{QuadElem, QuadField};
use crate::{Error, Result};

/// The order `O_F ⊕ O_F i ⊕ O_F j ⊕ O_F k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpec {
    algebra: AlgebraDesc,
}

impl OrderSpec {
    pub fn new(algebra: &AlgebraDesc) -> Result<Self> {
        if !algebra.is_integral() {
            return Err(Error::NonIntegralAlgebra);
        }
        Ok(OrderSpec {
            algebra: algebra.clone(),
        })
    }

    pub fn algebra(&self) -> &AlgebraDesc {
        &self.algebra
    }

    pub fn contains(&self, x: &QuatElem) -> bool {
        x.algebra() == &self.algebra && x.is_integral()
    }
}

/// Norm-one units of an order, restricted to a congruence level and a
/// finite coordinate window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    order: OrderSpec,
    level: u32,
    height: u32,
}

impl GroupSpec {
    pub fn new(algebra: &AlgebraDesc, level: u32, height: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter(
                "congruence level must be at least 1",
            ));
        }
        if height == 0 {
            return Err(Error::InvalidParameter("height must be at least 1"));
        }
        Ok(GroupSpec {
            order: OrderSpec::new(algebra)?,
            level,
            height,
        })
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn algebra(&self) -> &AlgebraDesc {
        &self.order.algebra
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn with_level(&self, level: u32) -> Result<Self> {
        Self::new(self.algebra(), level, self.height)
    }

    pub fn with_height(&self, height: u32) -> Result<Self> {
        Self::new(self.algebra(), self.level, height)
    }
}

type Oc = (i128, i128);

/// Multiplication in `O_F` on integer coordinates for the basis `{1, ω}`.
#[derive(Clone, Copy)]
struct Ring {
    half: bool,
    /// `ω² = d` or `ω² = ω + k` with `k = (d − 1)/4`.
    k: i128,
}

impl Ring {
    fn new(f: QuadField) -> Self {
        let d = f.d() as i128;
        if f.half_integral_basis() {
            Ring {
                half: true,
                k: (d - 1) / 4,
            }
        } else {
            Ring { half: false, k: d }
        }
    }

    fn mul(self, x: Oc, y: Oc) -> Oc {
        let qq = x.1 * y.1;
        let cross = x.0 * y.1 + x.1 * y.0;
        if self.half {
            (x.0 * y.0 + self.k * qq, cross + qq)
        } else {
            (x.0 * y.0 + self.k * qq, cross)
        }
    }
}

fn coords_of(x: &QuadElem) -> Oc {
    let (p, q) = x.integral_coords().expect("integral by construction");
    (
        p.to_i128().expect("small coordinate"),
        q.to_i128().expect("small coordinate"),
    )
}

/// All `x` in the order with `N(x) = 1` whose coordinates have `O_F` integer
/// coordinates in `[-H, H]`, sorted lexicographically by those integers
/// (`x0` first, constant part before the `ω` part).
pub fn enumerate_norm_one(g: &GroupSpec) -> Vec<QuatElem> {
    let alg = g.algebra();
    let f = alg.field();
    norm_one_coords(g)
        .into_iter()
        .map(|c| {
            let c =
                c.map(|(p, q)| QuadElem::from_integral_coords(f, BigInt::from(p), BigInt::from(q)));
            QuatElem::new(alg, c).expect("same field")
        })
        .collect()
}

/// [`enumerate_norm_one`] on integer coordinates: each coordinate is `(p, q)`
/// for `p + qω`.
pub fn norm_one_coords(g: &GroupSpec) -> Vec<[(i128, i128); 4]> {
    let alg = g.algebra();
    let f = alg.field();
    let ring = Ring::new(f);
    let h = g.height as i128;
    let qrange = if f.is_rational() { 0..=0 } else { -h..=h };
    let window: Vec<Oc> = (-h..=h)
        .flat_map(|p| qrange.clone().map(move |q| (p, q)))
        .collect();
    let a = coords_of(alg.a());
    let b = coords_of(alg.b());
    let ab = coords_of(alg.ab());
    let sq: Vec<Oc> = window.iter().map(|&v| ring.mul(v, v)).collect();
    let mut roots: BTreeMap<Oc, Vec<usize>> = BTreeMap::new();
    for (n, s) in sq.iter().enumerate() {
        roots.entry(*s).or_default().push(n);
    }
    let ta: Vec<Oc> = sq.iter().map(|&s| ring.mul(a, s)).collect();
    let tb: Vec<Oc> = sq.iter().map(|&s| ring.mul(b, s)).collect();
    let tab: Vec<Oc> = sq.iter().map(|&s| ring.mul(ab, s)).collect();
    let mut out = Vec::new();
    for (i1, v1) in ta.iter().enumerate() {
        let t1 = (1 + v1.0, v1.1);
        for (i2, v2) in tb.iter().enumerate() {
            let t2 = (t1.0 + v2.0, t1.1 + v2.1);
            for (i3, v3) in tab.iter().enumerate() {
                let t = (t2.0 - v3.0, t2.1 - v3.1);
                if let Some(x0s) = roots.get(&t) {
                    for &i0 in x0s {
                        out.push([window[i0], window[i1], window[i2], window[i3]]);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The enumerated units that are `≡ 1 (mod m)`, in enumeration order.
pub fn congruence_units(g: &GroupSpec) -> Vec<QuatElem> {
    let m = g.level as i128;
    let alg = g.algebra();
    let f = alg.field();
    norm_one_coords(g)
        .into_iter()
        .filter(|c| {
            c.iter()
                .enumerate()
                .all(|(n, &(p, q))| (p - i128::from(n == 0)) % m == 0 && q % m == 0)
        })
        .map(|c| {
            let c =
                c.map(|(p, q)| QuadElem::from_integral_coords(f, BigInt::from(p), BigInt::from(q)));
            QuatElem::new(alg, c).expect("same field")
        })
        .collect()
}

/// Whether `x ≡ 1` modulo `m O_F`, coordinate by coordinate. Only order
/// membership is checked; `x` need not have norm one.
pub fn in_congruence_subgroup(x: &QuatElem, g: &GroupSpec) -> Result<bool> {
    if x.algebra() != g.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if !x.is_integral() {
        return Err(Error::NotInOrder);
    }
    let m = BigInt::from(g.level);
    let d = x - &QuatElem::one(g.algebra());
    Ok(d.coords().iter().all(|c| {
        let (p, q) = c.integral_coords().expect("integral");
        (p % &m).is_zero() && (q % &m).is_zero()
    }))
}

/// Two distinct real eigenvalues at every split embedding, i.e.
/// `σ(x0² − N(x)) > 0`.
pub fn is_polar_regular(x: &QuatElem) -> Result<bool> {
    let n = x.reduced_norm();
    if n.is_zero() {
        return Err(Error::NotInvertible);
    }
    let disc = x.coords()[0].square() - n;
    Ok(x.algebra()
        .split_embeddings()
        .iter()
        .all(|&e| disc.sign(e) > 0))
}
