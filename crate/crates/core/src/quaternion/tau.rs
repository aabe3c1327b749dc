use super::{AlgebraDesc, QuatElem};
use crate::exactreal::{Embedding, TowerElem};
use crate::moebius::Mat2R;
use crate::{Error, Result};

/// Entries of the real matrix attached to `x` at the split embedding `e`:
///
/// ```text
/// x0 + x1 i + x2 j + x3 k  ↦  [ x0 + x1√a      x2 + x3√a ]
///                             [ b(x2 − x3√a)   x0 − x1√a ]
/// ```
///
/// Requires `σ(a) > 0`; normalize the algebra first when that fails.
pub fn tau_entries(alg: &AlgebraDesc, e: Embedding, x: &QuatElem) -> Result<[[TowerElem; 2]; 2]> {
    if x.algebra() != alg {
        return Err(Error::AlgebraMismatch);
    }
    alg.field().check_embedding(e)?;
    if !alg.is_split_at(e) {
        return Err(Error::NotSplit);
    }
    if alg.a().sign(e) <= 0 {
        return Err(Error::NegativeRadicand);
    }
    let s = TowerElem::sqrt_of(alg.a().clone())?.at_embedding(e);
    let [x0, x1, x2, x3] = x.coords().clone().map(TowerElem::from_quad);
    let b = TowerElem::from_quad(alg.b().clone());
    let x1s = &x1 * &s;
    let x3s = &x3 * &s;
    Ok([[&x0 + &x1s, &x2 + &x3s], [&b * &(&x2 - &x3s), &x0 - &x1s]])
}

/// The invertible matrix `τ_e(x)`; `NotInvertible` when `N(x) = 0`.
pub fn tau(alg: &AlgebraDesc, e: Embedding, x: &QuatElem) -> Result<Mat2R> {
    Mat2R::new(tau_entries(alg, e, x)?, e)
}
