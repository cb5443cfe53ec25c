use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::elim::nullspace;
use super::matrix::RatMatrix;
use super::poly::Poly;
use super::rat::Rat;
use super::subspace::Subspace;
use crate::{Error, Result};

/// `det(xI - m)`, via reduction to upper Hessenberg form by similarity.
pub fn charpoly(m: &RatMatrix) -> Result<Poly> {
    let n = m.ensure_square()?;
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
            continue;
        };
        if p != j + 1 {
            for c in 0..n {
                let t = h[(p, c)].clone();
                h[(p, c)] = h[(j + 1, c)].clone();
                h[(j + 1, c)] = t;
            }
            for r in 0..n {
                let t = h[(r, p)].clone();
                h[(r, p)] = h[(r, j + 1)].clone();
                h[(r, j + 1)] = t;
            }
        }
        let pivot = h[(j + 1, j)].clone();
        for i in j + 2..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let f = &h[(i, j)] / &pivot;
            for c in 0..n {
                let d = &f * &h[(j + 1, c)];
                if !d.is_zero() {
                    h[(i, c)] -= d;
                }
            }
            for r in 0..n {
                let d = &f * &h[(r, i)];
                if !d.is_zero() {
                    h[(r, j + 1)] += d;
                }
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} (h_{m,m-1} ... h_{m-i+1,m-i}) p_{m-i-1}
    let x = Poly::new(alloc::vec![Rat::zero(), Rat::one()]);
    let mut ps: Vec<Poly> = alloc::vec![Poly::constant(Rat::one())];
    for mm in 0..n {
        let mut next = x.sub(&Poly::constant(h[(mm, mm)].clone())).mul(&ps[mm]);
        let mut sub = Rat::one();
        for i in 1..=mm {
            sub *= &h[(mm - i + 1, mm - i)];
            if sub.is_zero() {
                break;
            }
            let coeff = &sub * &h[(mm - i, mm)];
            if !coeff.is_zero() {
                next = next.sub(&ps[mm - i].scale(&coeff));
            }
        }
        ps.push(next);
    }
    Ok(ps.pop().expect("nonempty"))
}

/// One eigenvalue with its eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub value: Rat,
    pub space: Subspace,
}

/// Rational eigenvalues and eigenspaces of `m`, largest eigenvalue first.
///
/// Fails with [`Error::IrrationalSpectrum`] when the rational roots of the
/// characteristic polynomial do not account for every eigenvalue, and with
/// [`Error::NotDiagonalizable`] when some eigenspace is too small.
pub fn integer_spectrum(m: &RatMatrix) -> Result<Vec<Eigenspace>> {
    let n = m.ensure_square()?;
    let cp = charpoly(m)?;
    let roots = cp.rational_roots()?;
    let found: usize = roots.iter().map(|r| cp.root_multiplicity(r)).sum();
    if found != n {
        return Err(Error::IrrationalSpectrum { found, degree: n });
    }
    let mut out = Vec::with_capacity(roots.len());
    for r in roots.into_iter().rev() {
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[(i, i)] -= &r;
        }
        let basis = nullspace(&shifted);
        if basis.len() != cp.root_multiplicity(&r) {
            return Err(Error::NotDiagonalizable);
        }
        out.push(Eigenspace { value: r, space: Subspace::from_independent(n, basis) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(charpoly(&RatMatrix::identity(2)).unwrap(), Poly::from_roots(&[rat(1), rat(1)]));
        assert_eq!(charpoly(&RatMatrix::zeros(1, 1)).unwrap(), Poly::from_roots(&[rat(0)]));
        let m = RatMatrix::from_i64_rows(&[&[0, 2], &[1, 1]]);
        let sp = integer_spectrum(&m).unwrap();
        assert_eq!(sp.iter().map(|e| e.value.clone()).collect::<Vec<_>>(), alloc::vec![rat(2), rat(-1)]);
    }

    #[test]
    fn irrational_and_defective() {
        let m = RatMatrix::from_i64_rows(&[&[0, 2], &[1, 0]]);
        assert_eq!(integer_spectrum(&m), Err(Error::IrrationalSpectrum { found: 0, degree: 2 }));
        let j = RatMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(integer_spectrum(&j), Err(Error::NotDiagonalizable));
    }

    #[test]
    fn identity_spectrum() {
        let sp = integer_spectrum(&RatMatrix::identity(5)).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].space.dim(), 5);
    }

    #[test]
    fn needs_row_swaps() {
        // Zero subdiagonal entries force the pivot search.
        let m = RatMatrix::from_i64_rows(&[&[1, 2, 0, 3], &[0, 0, 1, 0], &[5, 0, 0, 1], &[0, 4, 0, 2]]);
        let cp = charpoly(&m).unwrap();
        assert!(cp.eval_matrix(&m).unwrap().is_zero());
        assert_eq!(cp.coeffs()[0], crate::exactla::determinant(&m).unwrap());
    }

    proptest! {
        #[test]
        fn cayley_hamilton(entries in proptest::collection::vec((-9i64..10, 1i64..4), 16)) {
            let m = RatMatrix::from_fn(4, 4, |i, j| {
                let (n, d) = entries[4 * i + j];
                ratio(n, d)
            });
            let cp = charpoly(&m).unwrap();
            prop_assert_eq!(cp.degree(), Some(4));
            prop_assert!(cp.eval_matrix(&m).unwrap().is_zero());
            prop_assert_eq!(-cp.coeffs()[3].clone(), m.trace());
        }

        #[test]
        fn symmetric_eigenspaces_orthogonal(diag in proptest::collection::vec(-4i64..5, 4), seed in 0u64..1000) {
            // Q diag(d) Q^T with Q an integer orthogonal-up-to-scale matrix.
            let q = RatMatrix::from_i64_rows(&[&[1, 1, 1, 1], &[1, -1, 1, -1], &[1, 1, -1, -1], &[1, -1, -1, 1]]);
            let d: Vec<Rat> = diag.iter().map(|&x| rat(x + (seed % 3) as i64)).collect();
            let m = &(&q * &RatMatrix::diagonal(&d)) * &q.transpose();
            let sp = integer_spectrum(&m).unwrap();
            prop_assert_eq!(sp.iter().map(|e| e.space.dim()).sum::<usize>(), 4);
            for a in 0..sp.len() {
                for b in a + 1..sp.len() {
                    for u in sp[a].space.basis() {
                        for v in sp[b].space.basis() {
                            prop_assert!(crate::exactla::inner(u, v).is_zero());
                        }
                    }
                }
            }
        }
    }
}
