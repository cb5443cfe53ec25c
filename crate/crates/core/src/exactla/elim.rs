//! Fraction-free elimination.
//!
//! Rows are scaled to primitive integer vectors and combined with integer row
//! operations only; after each operation the row content is divided out. The
//! result is a reduced echelon form whose pivots are arbitrary nonzero
//! integers, which is all rank, nullspace and solving need.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rat::Rat;
use crate::{Error, Result};

pub(crate) fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Divides out the gcd of the entries. Returns false for the zero row.
pub(crate) fn make_primitive(row: &mut [BigInt]) -> bool {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return true;
            }
        }
    }
    if g.is_zero() {
        return false;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
    true
}

/// `target <- p * target - e * source`, where `p` and `e` are the entries of
/// `source` and `target` at `col`, after removing their common factor.
pub(crate) fn eliminate(target: &mut [BigInt], source: &[BigInt], col: usize) {
    let e = target[col].clone();
    if e.is_zero() {
        return;
    }
    let p = source[col].clone();
    let g = p.gcd(&e);
    let (p, e) = (&p / &g, &e / &g);
    for (t, s) in target.iter_mut().zip(source) {
        let scaled = &*t * &p;
        *t = if s.is_zero() { scaled } else { scaled - &e * s };
    }
    make_primitive(target);
}

pub(crate) struct IntRref {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

pub(crate) fn int_rref(m: &RatMatrix) -> IntRref {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i))).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols() {
        if r == rows.len() {
            break;
        }
        // Smallest nonzero pivot keeps the growth down.
        let Some(best) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        else {
            continue;
        };
        rows.swap(r, best);
        make_primitive(&mut rows[r]);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            eliminate(other, pivot_row, col);
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    IntRref { rows, pivots }
}

/// Reduced row echelon form with unit pivots, trimmed to the nonzero rows,
/// together with the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let IntRref { rows, pivots } = int_rref(m);
    let out = RatMatrix::from_fn(rows.len(), m.cols(), |i, j| {
        Rat::new(rows[i][j].clone(), rows[i][pivots[i]].clone())
    });
    (out, pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    int_rref(m).pivots.len()
}

/// Basis of `{v : m v = 0}`, one vector per free column (that coordinate set
/// to 1, the other free coordinates to 0).
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let IntRref { rows, pivots } = int_rref(m);
    let mut is_pivot = alloc::vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = alloc::vec![Rat::zero(); m.cols()];
            v[f] = Rat::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[pc] = -Rat::new(row[f].clone(), row[pc].clone());
                }
            }
            v
        })
        .collect()
}

/// One solution of `m x = rhs` (free coordinates zero), if any exists.
pub fn solve(m: &RatMatrix, rhs: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if rhs.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: rhs.len() });
    }
    let n = m.cols();
    let aug = RatMatrix::from_fn(m.rows(), n + 1, |i, j| if j < n { m[(i, j)].clone() } else { rhs[i].clone() });
    let IntRref { rows, pivots } = int_rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = alloc::vec![Rat::zero(); n];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = Rat::new(row[n].clone(), row[pc].clone());
    }
    Ok(Some(x))
}

pub fn inverse(m: &RatMatrix) -> Result<Option<RatMatrix>> {
    let n = m.ensure_square()?;
    let aug = RatMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let IntRref { rows, pivots } = int_rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    Ok(Some(RatMatrix::from_fn(n, n, |i, j| Rat::new(rows[i][n + j].clone(), rows[i][i].clone()))))
}

/// Bareiss determinant of the integer-scaled matrix, rescaled afterwards.
pub fn determinant(m: &RatMatrix) -> Result<Rat> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Ok(Rat::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rat::zero());
            };
            a.swap(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(Rat::new(sign * &a[n - 1][n - 1], scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    #[test]
    fn rank_and_nullspace() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = RatMatrix::from_i64_rows(&[&[2, 0], &[0, 4]]);
        assert_eq!(solve(&m, &[rat(1), rat(1)]).unwrap().unwrap(), alloc::vec![ratio(1, 2), ratio(1, 4)]);
        let s = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(solve(&s, &[rat(1), rat(2)]).unwrap().is_none());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = RatMatrix::from_i64_rows(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 5]]);
        let inv = inverse(&m).unwrap().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(3));
        assert_eq!(determinant(&m).unwrap(), rat(-13));
        let half = m.scale(&ratio(1, 2));
        assert_eq!(determinant(&half).unwrap(), ratio(-13, 8));
        assert!(inverse(&RatMatrix::zeros(2, 2)).unwrap().is_none());
    }
}
