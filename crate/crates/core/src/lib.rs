//! Combinatorics of parametrized tropical stable maps to fans.
//!
//! The crate is `no_std` (it needs `alloc`) and does all arithmetic over the
//! rationals. It is organised bottom-up:
//!
//! - [`exactgeom`]: rational vectors and matrices, an exact simplex solver,
//!   rational polyhedral cones and fans.
//! - [`curves`]: pre-stable marked tropical curves (metric multigraphs with
//!   vertex genera and marked legs).
//! - [`maps`]: tropical stable maps, their validation, combinatorial and
//!   recession types, type automorphisms and vertex stars.
//! - [`moduli`]: the moduli cone of a combinatorial type, superabundance,
//!   edge contractions, faces and one-parameter limits.
//! - [`wellspaced`]: genus one analysis: the cycle and its affine span,
//!   hyperplane flats, the well-spacedness predicate, the hat construction,
//!   the degenerating hexagon family, and the realizability verdict rules.
//! - [`gallery`]: the builtin example maps.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod curves;
pub mod diag;
pub mod exactgeom;
pub mod gallery;
pub mod maps;
pub mod moduli;
pub mod wellspaced;

pub use diag::{Code, Diagnostic, Severity};
pub use exactgeom::{Cone, Fan, IntVec, Rat, RatMatrix, RatVec};
