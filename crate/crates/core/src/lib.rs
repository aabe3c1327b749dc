//! Exact arithmetic for compact flat cycles in quotients of products of
//! hyperbolic planes by arithmetic lattices built from quaternion algebras
//! over real quadratic fields.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact: field
//! elements are rationals and quadratic irrationals, boundary points of the
//! hyperbolic plane are algebraic reals with isolating intervals, and every
//! sign or comparison is decided without floating point.
//!
//! Layout, bottom-up:
//!
//! * [`exactreal`]: `Q ⊂ Q(√d) ⊂ Q(√d)(√a)`, signs under real embeddings,
//!   dyadic intervals and algebraic boundary reals.
//! * [`quaternion`]: quaternion algebras `(a,b)_F`, reduced norm, the matrix
//!   representations at split places, norm-one units and congruence levels.
//! * [`moebius`]: the action of 2×2 matrices on the boundary circle, Jordan
//!   type and axes of hyperbolic elements.
//! * [`flats`]: linking and crossing signs of geodesics, product flats, the
//!   staircase configuration and the density search.
//! * [`certify`]: orbit enumeration and triangular intersection certificates.

#![no_std]

extern crate alloc;

pub mod certify;
pub mod error;
pub mod exactreal;
pub mod flats;
pub mod moebius;
pub mod quaternion;

pub use error::{Error, Result};
pub use exactreal::{
    AlgebraicReal, Dyadic, DyadicInterval, Embedding, QuadElem, QuadField, Rational, TowerElem,
};
