//! Exact rational linear algebra.
//!
//! Everything here is dense and exact. Rank, nullspace and solving go through
//! a fraction-free integer elimination ([`elim`]); characteristic polynomials
//! are computed from an upper Hessenberg form; eigenvalues are only ever found
//! as rational roots, and a spectrum that is not rational is reported as
//! [`Error::IrrationalSpectrum`](crate::Error::IrrationalSpectrum).

mod elim;
mod matrix;
mod poly;
mod rat;
mod spectrum;
mod subspace;

pub use elim::{determinant, inverse, nullspace, rank, rref, solve};
pub use matrix::RatMatrix;
pub use poly::Poly;
pub use rat::{fmt_rat, is_integer, parse_rat, rat, ratio, to_integer, Rat};
pub use spectrum::{charpoly, integer_spectrum, Eigenspace};
pub use subspace::{inner, invariant_closure, orthogonal_complement, Subspace};
