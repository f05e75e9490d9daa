//! Exact computations over the derived preprojective algebra of an acyclic
//! quiver: the dg path algebra, twisted complexes over it, graded Hom
//! complexes, two-sided ideal complexes and the braid group action they
//! generate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod braid;
pub mod complex;
pub mod hom;
pub mod ideal;
pub mod iso;
pub mod linalg;
pub mod quiver;
pub mod scalar;
pub mod silting;
pub mod tensor;
pub mod twist;

pub use algebra::{AlgebraElement, Gamma, Letter, Path};
pub use quiver::{Arrow, ArrowId, Quiver, QuiverError, Vertex};
pub use scalar::{Field, Scalar, DEFAULT_PRIME};
