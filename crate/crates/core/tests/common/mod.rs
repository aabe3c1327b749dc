#![allow(dead_code)]

use flatcert_core::exactreal::{Embedding, QuadElem, QuadField, Rational, TowerElem};
use flatcert_core::quaternion::{AlgebraDesc, QuatElem};
use num_traits::ToPrimitive;
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn sqrt2() -> QuadField {
    QuadField::new(2).unwrap()
}

pub fn small_rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| *r != rat(0, 1))
}

pub fn quad(f: QuadField) -> impl Strategy<Value = QuadElem> {
    (small_rat(), small_rat())
        .prop_map(move |(x, y)| QuadElem::new(f, x, if f.is_rational() { rat(0, 1) } else { y }))
}

pub fn int_quad(f: QuadField, h: i64) -> impl Strategy<Value = QuadElem> {
    (-h..=h, -h..=h).prop_map(move |(p, q)| {
        QuadElem::new(
            f,
            rat(p, 1),
            if f.is_rational() {
                rat(0, 1)
            } else {
                rat(q, 1)
            },
        )
    })
}

pub fn embedding() -> impl Strategy<Value = Embedding> {
    prop_oneof![Just(Embedding::SIGMA1), Just(Embedding::SIGMA2)]
}

pub fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap()
}

/// Plain floating value of `σ_e(x)`.
pub fn quad_f64(x: &QuadElem, e: Embedding) -> f64 {
    let s = if e == Embedding::SIGMA1 { 1.0 } else { -1.0 };
    f64_of(x.x()) + s * f64_of(x.y()) * (x.field().d() as f64).sqrt()
}

/// Floating value of `σ̃_e(u + v√a)` with `√a ↦` the positive root.
pub fn tower_f64(t: &TowerElem, e: Embedding) -> f64 {
    quad_f64(t.u(), e) + quad_f64(t.v(), e) * quad_f64(t.radicand(), e).sqrt()
}

/// A handful of algebras over `Q` and `Q(√2)` with `a > 0` at every split
/// place.
pub fn algebras() -> Vec<AlgebraDesc> {
    let q = QuadField::rationals();
    let f = sqrt2();
    vec![
        AlgebraDesc::from_ints(q, 1, 1).unwrap(),
        AlgebraDesc::from_ints(q, 2, -3).unwrap(),
        AlgebraDesc::from_ints(q, 3, 5).unwrap(),
        AlgebraDesc::from_ints(f, 1, 1).unwrap(),
        AlgebraDesc::from_ints(f, 3, -1).unwrap(),
        AlgebraDesc::new(
            f,
            QuadElem::new(f, rat(2, 1), rat(1, 1)),
            QuadElem::from_int(f, -1),
        )
        .unwrap(),
    ]
}

pub fn quat(alg: AlgebraDesc) -> impl Strategy<Value = QuatElem> {
    let f = alg.field();
    [quad(f), quad(f), quad(f), quad(f)].prop_map(move |c| QuatElem::new(&alg, c).unwrap())
}

pub fn algebra_and_pair() -> impl Strategy<Value = (QuatElem, QuatElem)> {
    (0..algebras().len()).prop_flat_map(|n| {
        let alg = algebras()[n].clone();
        (quat(alg.clone()), quat(alg))
    })
}
