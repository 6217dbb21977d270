//! Exact computations in Coxeter groups: reflection factorizations and their
//! Hurwitz orbits, reduction and extension of factorizations, parabolic
//! closures, and (parabolic) quasi-Coxeter elements in finite and affine
//! groups.

pub mod affine;
pub mod checks;
pub mod classify;
pub mod codec;
pub mod coxeter;
pub mod dyer;
pub mod error;
pub mod hurwitz;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
