use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{AlgebraDesc, QuatElem};
use crate::exactreal::{QuadElem, QuadField};
use crate::{Error, Result};

/// An algebra isomorphism between two presentations of the same quaternion
/// algebra, stored as the images of the source basis `1, i, j, k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transport {
    source: AlgebraDesc,
    target: AlgebraDesc,
    images: [QuatElem; 4],
}

impl Transport {
    pub fn identity(alg: &AlgebraDesc) -> Self {
        Transport {
            source: alg.clone(),
            target: alg.clone(),
            images: basis(alg),
        }
    }

    pub fn source(&self) -> &AlgebraDesc {
        &self.source
    }

    pub fn target(&self) -> &AlgebraDesc {
        &self.target
    }

    /// Images of `1, i, j, k` in the target algebra.
    pub fn images(&self) -> &[QuatElem; 4] {
        &self.images
    }

    pub fn apply(&self, x: &QuatElem) -> Result<QuatElem> {
        if x.algebra() != &self.source {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = QuatElem::zero(&self.target);
        for (c, img) in x.coords().iter().zip(&self.images) {
            if !c.is_zero() {
                acc = &acc + &img.scale(c);
            }
        }
        Ok(acc)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Transport) -> Result<Transport> {
        if next.source != self.target {
            return Err(Error::AlgebraMismatch);
        }
        let images = [
            next.apply(&self.images[0])?,
            next.apply(&self.images[1])?,
            next.apply(&self.images[2])?,
            next.apply(&self.images[3])?,
        ];
        Ok(Transport {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }
}

fn basis(alg: &AlgebraDesc) -> [QuatElem; 4] {
    [
        QuatElem::one(alg),
        QuatElem::i(alg),
        QuatElem::j(alg),
        QuatElem::k(alg),
    ]
}

/// `(a, b)_F ≅ (c²a, c²b)_F`. In the target, `c⁻¹i′` squares to `a` and
/// `c⁻¹j′` to `b`, so `x0 + x1 i + x2 j + x3 k` is sent to
/// `x0 + (x1/c) i′ + (x2/c) j′ + (x3/c²) k′`.
pub fn scaling_equiv(alg: &AlgebraDesc, c: &QuadElem) -> Result<(AlgebraDesc, Transport)> {
    let f = alg.field();
    let c = super::lift(f, c)?;
    if c.is_zero() {
        return Err(Error::InvalidParameter("scaling factor must be nonzero"));
    }
    let c2 = c.square();
    let target = AlgebraDesc::new(f, &c2 * alg.a(), &c2 * alg.b())?;
    let ci = c.checked_inv()?;
    let c2i = c2.checked_inv()?;
    let images = [
        QuatElem::one(&target),
        QuatElem::i(&target).scale(&ci),
        QuatElem::j(&target).scale(&ci),
        QuatElem::k(&target).scale(&c2i),
    ];
    let t = Transport {
        source: alg.clone(),
        target: target.clone(),
        images,
    };
    Ok((target, t))
}

/// `(a, b)_F ≅ (b, a)_F` via `i ↦ j′`, `j ↦ i′`, `k ↦ −k′`.
pub fn swap_equiv(alg: &AlgebraDesc) -> (AlgebraDesc, Transport) {
    let target = AlgebraDesc::new(alg.field(), alg.b().clone(), alg.a().clone())
        .expect("parameters already validated");
    let images = [
        QuatElem::one(&target),
        QuatElem::j(&target),
        QuatElem::i(&target),
        -QuatElem::k(&target),
    ];
    let t = Transport {
        source: alg.clone(),
        target: target.clone(),
        images,
    };
    (target, t)
}

/// Finds a presentation with `σ(a) > 0` at every split embedding.
///
/// Tries the identity, then the swap, then pure quaternions `y` whose
/// coordinates have `O_F` integer coordinates bounded by `search_bound`,
/// taking `a′ = y²` and an anticommuting partner `z` for `b′ = z²`.
pub fn normalize_positive_a(
    alg: &AlgebraDesc,
    search_bound: u32,
) -> Result<(AlgebraDesc, Transport)> {
    if alg.is_normalized() {
        return Ok((alg.clone(), Transport::identity(alg)));
    }
    let (swapped, t) = swap_equiv(alg);
    if swapped.is_normalized() {
        return Ok((swapped, t));
    }
    let f = alg.field();
    let window = field_window(f, search_bound as i64);
    let mut candidates: Vec<(i64, [usize; 3])> = Vec::new();
    let n = window.len();
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                let w = window[i1].0 + window[i2].0 + window[i3].0;
                if w > 0 {
                    candidates.push((w, [i1, i2, i3]));
                }
            }
        }
    }
    candidates.sort();
    for (_, idx) in candidates {
        let y = QuatElem::new(
            alg,
            [
                QuadElem::zero(f),
                window[idx[0]].1.clone(),
                window[idx[1]].1.clone(),
                window[idx[2]].1.clone(),
            ],
        )?;
        if let Some(found) = try_pure(alg, &y)? {
            return Ok(found);
        }
    }
    Err(Error::NotNormalizable)
}

fn try_pure(alg: &AlgebraDesc, y: &QuatElem) -> Result<Option<(AlgebraDesc, Transport)>> {
    let f = alg.field();
    let a2 = -y.reduced_norm();
    if a2.is_zero() || !alg.split_embeddings().iter().all(|&e| a2.sign(e) > 0) {
        return Ok(None);
    }
    let [_, y1, y2, _] = y.coords();
    let z = if y1.is_zero() && y2.is_zero() {
        QuatElem::i(alg)
    } else {
        QuatElem::new(
            alg,
            [
                QuadElem::zero(f),
                alg.b() * y2,
                -(alg.a() * y1),
                QuadElem::zero(f),
            ],
        )?
    };
    let b2 = -z.reduced_norm();
    if b2.is_zero() {
        return Ok(None);
    }
    let target = AlgebraDesc::new(f, a2, b2)?;
    // orthogonal basis of the source; coordinates are recovered with the
    // norm form
    let yz = y * &z;
    let e = [QuatElem::one(alg), y.clone(), z, yz];
    let inv_norms: Vec<QuadElem> = e
        .iter()
        .map(|en| en.reduced_norm().checked_inv())
        .collect::<Result<_>>()?;
    let new_basis = basis(&target);
    let images = basis(alg).map(|x| {
        let mut acc = QuatElem::zero(&target);
        for n in 0..4 {
            let c = &x.norm_form(&e[n]) * &inv_norms[n];
            acc = &acc + &new_basis[n].scale(&c);
        }
        acc
    });
    Ok(Some((
        target.clone(),
        Transport {
            source: alg.clone(),
            target,
            images,
        },
    )))
}

/// Elements of `O_F` with integer coordinates in `[-h, h]`, paired with the
/// sum of the absolute coordinates.
fn field_window(f: QuadField, h: i64) -> Vec<(i64, QuadElem)> {
    let qs: Vec<i64> = if f.is_rational() {
        alloc::vec![0]
    } else {
        (-h..=h).collect()
    };
    let mut out = Vec::new();
    for p in -h..=h {
        for &q in &qs {
            out.push((
                p.abs() + q.abs(),
                QuadElem::from_integral_coords(f, BigInt::from(p), BigInt::from(q)),
            ));
        }
    }
    out
}
