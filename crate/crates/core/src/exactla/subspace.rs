use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::elim::{eliminate, integer_row, inverse, make_primitive, nullspace};
use super::matrix::RatMatrix;
use super::rat::Rat;
use crate::{Error, Result};

/// Standard inner product of rational vectors.
pub fn inner(u: &[Rat], v: &[Rat]) -> Rat {
    u.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
}

/// Fully reduced integer echelon rows, kept alongside a subspace basis so
/// membership tests are a single reduction pass.
#[derive(Clone, Debug, Default)]
struct Reducer {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Reducer {
    fn reduce(&self, v: &[Rat]) -> Vec<BigInt> {
        let mut w = integer_row(v);
        for (p, row) in &self.rows {
            eliminate(&mut w, row, *p);
        }
        w
    }

    /// Inserts the reduced vector `w`; returns false when it is zero.
    fn insert(&mut self, mut w: Vec<BigInt>) -> bool {
        if !make_primitive(&mut w) {
            return false;
        }
        let p = w.iter().position(|x| !x.is_zero()).expect("nonzero row");
        for (_, row) in &mut self.rows {
            eliminate(row, &w, p);
        }
        self.rows.push((p, w));
        true
    }
}

/// Subspace of `Q^ambient`, held as a linearly independent basis in the
/// order the vectors were added.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    reducer: Reducer,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), reducer: Reducer::default() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, (0..ambient).map(|i| unit(ambient, i)).collect::<Vec<_>>())
    }

    /// Span of the given vectors; dependent vectors are dropped.
    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.push(v);
        }
        s
    }

    /// Like [`from_vectors`](Self::from_vectors), for callers that know the
    /// vectors are independent. Panics if they are not.
    pub fn from_independent(ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        let n = vectors.len();
        let s = Self::from_vectors(ambient, vectors);
        assert_eq!(s.dim(), n, "vectors are linearly dependent");
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Rat>> {
        self.basis
    }

    /// Adds `v` to the basis if it is not already in the span.
    pub fn push(&mut self, v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let w = self.reducer.reduce(&v);
        if self.reducer.insert(w) {
            self.basis.push(v);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        v.len() == self.ambient && self.reducer.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.ambient, &self.basis)
    }

    /// The `dim x ambient` matrix `P = (B^T B)^{-1} B^T`; `P v` gives the
    /// coordinates of any `v` in the span.
    pub fn coordinate_map(&self) -> RatMatrix {
        let b = self.matrix();
        let bt = b.transpose();
        let g = &bt * &b;
        let ginv = inverse(&g).expect("square").expect("basis Gram matrix is invertible");
        &ginv * &bt
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.coordinate_map().mul_vec(v).expect("lengths match"))
    }

    /// Matrix of `op` restricted to this subspace, in the basis. The caller
    /// guarantees invariance; see [`is_invariant`](Self::is_invariant).
    pub fn restrict(&self, op: &RatMatrix) -> RatMatrix {
        let image = op * &self.matrix();
        &self.coordinate_map() * &image
    }

    pub fn is_invariant(&self, op: &RatMatrix) -> bool {
        self.basis.iter().all(|v| self.contains(&op.mul_vec(v).expect("lengths match")))
    }

    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.basis.iter().all(|u| other.basis.iter().all(|v| inner(u, v).is_zero()))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.same_span(other)
    }
}

impl Eq for Subspace {}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = alloc::vec![Rat::zero(); n];
    v[i] = num_traits::One::one();
    v
}

/// Smallest subspace containing `seed` and mapped into itself by every
/// operator. The basis lists the seed basis first, then images in the order
/// they were discovered.
pub fn invariant_closure(seed: &Subspace, ops: &[RatMatrix]) -> Result<Subspace> {
    let n = seed.ambient();
    for op in ops {
        if op.rows() != n || op.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: op.rows().max(op.cols()) });
        }
    }
    let mut out = seed.clone();
    let mut next = 0;
    while next < out.dim() {
        let v = out.basis[next].clone();
        for op in ops {
            out.push(op.mul_vec(&v)?);
        }
        next += 1;
    }
    Ok(out)
}

/// `{v in within : <v, u> = 0 for all u in u}`.
pub fn orthogonal_complement(u: &Subspace, within: &Subspace) -> Result<Subspace> {
    if u.ambient() != within.ambient() {
        return Err(Error::DimensionMismatch { expected: within.ambient(), found: u.ambient() });
    }
    if !within.contains_subspace(u) {
        return Err(Error::NotContained);
    }
    if u.is_zero() {
        return Ok(within.clone());
    }
    let b = within.matrix();
    let ut = RatMatrix::from_rows(u.basis().to_vec())?;
    let coeffs = nullspace(&(&ut * &b));
    Ok(Subspace::from_independent(
        within.ambient(),
        coeffs.into_iter().map(|c| b.mul_vec(&c).expect("lengths match")).collect(),
    ))
}
