//! Exact-arithmetic machinery for distance-regular graphs and their
//! Terwilliger (subconstituent) algebras.
//!
//! The crate is `no_std` and only needs `alloc`. It is organised bottom-up:
//!
//! * [`exactla`]: dense rational matrices, characteristic polynomials,
//!   rational spectra, subspaces, invariant closures.
//! * [`params`]: classical parameters `(D, b, alpha, beta)`, intersection
//!   arrays, derived counts and the hypothesis filter for negative type.
//! * [`graph`]: explicit graphs, distance-regularity verification, the
//!   Bose-Mesner algebra, Krein parameters and Q-polynomial orderings.
//! * [`local`]: structure anchored at a base vertex: dual idempotents,
//!   the lowering/flat/raising matrices, the `D^i_j` partition, kites and
//!   parallelograms, and the identity suite.
//! * [`tmodules`]: decomposition of the standard module into irreducible
//!   T-modules, with endpoint, diameter, local eigenvalue and isomorphism
//!   classes.
//! * [`endpoint1`]: closed-form models of the two irreducible endpoint-1
//!   modules of a negative-type graph.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod endpoint1;
pub mod error;
pub mod exactla;
pub mod graph;
pub mod local;
pub mod params;
pub mod tmodules;

pub use error::{Error, Result};
pub use exactla::{Poly, Rat, RatMatrix, Subspace};
