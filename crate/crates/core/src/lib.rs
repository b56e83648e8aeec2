//! Exact invariants of Bott towers.
//!
//! A height-`n` Bott tower is encoded by a lower-triangular unipotent integer
//! matrix ([`tower::BottMatrix`]). From it this crate computes the groupoid of
//! toric equivalences, the integral cohomology ring and characteristic
//! classes, fan data (support functions, ample cones, Demazure roots),
//! stage-3 diffeomorphism invariants, symplectic compatibility counts, the
//! admissible extremal polynomial with its c-projective transform, and the
//! square-fiber almost-Kähler extremal system.
//!
//! Everything is exact: integers are `BigInt` or `i64`, rationals are
//! `BigRational`. The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod admissible;
pub mod almostkahler;
pub mod cohomology;
pub mod fan;
pub mod linalg;
pub mod poly;
pub mod poly2;
pub mod rational;
pub mod symplectic;
pub mod topology3;
pub mod tower;

pub use rational::Q;
pub use tower::BottMatrix;
