use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::distance::VerifiedDrg;
use crate::exactla::rat;
use crate::params::spectrum_from_array;
use crate::{Error, Rat, RatMatrix, Result};

#[derive(Clone, Debug)]
pub struct BoseMesnerData {
    /// `theta_0 > theta_1 > ... > theta_D`, with `theta_0 = k`.
    pub eigenvalues: Vec<Rat>,
    /// `E_i` belongs to `theta_i`.
    pub idempotents: Vec<RatMatrix>,
    pub multiplicities: Vec<Rat>,
    /// `krein[h][i][j] = q^h_{ij}`.
    pub krein: Vec<Vec<Vec<Rat>>>,
    /// Each ordering lists idempotent indices `0, s_1, ..., s_D`.
    pub qpoly_orderings: Vec<Vec<usize>>,
}

impl BoseMesnerData {
    pub fn krein_nonnegative(&self) -> bool {
        self.krein.iter().flatten().flatten().all(|q| !q.is_negative())
    }
}

/// Primitive idempotents, Krein parameters and Q-polynomial orderings.
///
/// The idempotents are `prod_{j != i} (A - theta_j I) / (theta_i - theta_j)`
/// over the eigenvalues of the intersection matrix. Each Krein parameter is
/// read off as `q^h_ij = n <E_i ∘ E_j, E_h> / m_h`, and the full expansion
/// `E_i ∘ E_j = n^{-1} sum_h q^h_ij E_h` is then checked exactly.
pub fn bose_mesner(drg: &VerifiedDrg) -> Result<BoseMesnerData> {
    let a = &drg.distances.distance_matrices[1];
    let n = a.rows();
    let nn = rat(n as i64);
    let eigenvalues = spectrum_from_array(&drg.array)?;
    let d = drg.array.d;
    if eigenvalues.len() != d + 1 {
        return Err(Error::Inconsistent(format!("expected {} distinct eigenvalues, found {}", d + 1, eigenvalues.len())));
    }
    let mut idempotents = Vec::with_capacity(d + 1);
    for (i, ti) in eigenvalues.iter().enumerate() {
        let mut e = RatMatrix::identity(n);
        for (j, tj) in eigenvalues.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut shifted = a.clone();
            for v in 0..n {
                shifted[(v, v)] -= tj;
            }
            e = e.try_mul(&shifted)?.scale(&(Rat::one() / (ti - tj)));
        }
        idempotents.push(e);
    }
    let multiplicities: Vec<Rat> = idempotents.iter().map(RatMatrix::trace).collect();
    let mut krein = alloc::vec![alloc::vec![alloc::vec![Rat::zero(); d + 1]; d + 1]; d + 1];
    for i in 0..=d {
        for j in i..=d {
            let prod = idempotents[i].hadamard(&idempotents[j])?;
            let mut expansion = RatMatrix::zeros(n, n);
            for h in 0..=d {
                let q = &nn * prod.frobenius(&idempotents[h])? / &multiplicities[h];
                if !q.is_zero() {
                    expansion = &expansion + &idempotents[h].scale(&(&q / &nn));
                }
                krein[h][i][j] = q.clone();
                krein[h][j][i] = q;
            }
            if let Some((r, c)) = prod.first_difference(&expansion) {
                return Err(Error::Inconsistent(format!("E_{i} ∘ E_{j} expansion fails at ({r}, {c})")));
            }
        }
    }
    let qpoly_orderings = qpoly_orderings(&krein);
    Ok(BoseMesnerData { eigenvalues, idempotents, multiplicities, krein, qpoly_orderings })
}

/// `q^h_ij` (in the relabelled order) vanishes when one of `h, i, j` exceeds
/// the sum of the other two and is nonzero when it equals that sum.
pub fn is_qpoly_ordering(krein: &[Vec<Vec<Rat>>], order: &[usize]) -> bool {
    let d = krein.len() - 1;
    if order.len() != d + 1 || order.first() != Some(&0) {
        return false;
    }
    for h in 0..=d {
        for i in 0..=d {
            for j in 0..=d {
                let q = &krein[order[h]][order[i]][order[j]];
                let (big, rest) = [(h, i + j), (i, h + j), (j, h + i)]
                    .into_iter()
                    .fold((false, false), |(gt, eq), (x, s)| (gt || x > s, eq || x == s));
                if big && !q.is_zero() {
                    return false;
                }
                if !big && rest && q.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn qpoly_orderings(krein: &[Vec<Vec<Rat>>]) -> Vec<Vec<usize>> {
    let d = krein.len() - 1;
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..=d).collect();
    permute(&mut order, 1, &mut |o| {
        if is_qpoly_ordering(krein, o) {
            out.push(o.to_vec());
        }
    });
    out.sort();
    out
}

fn permute(v: &mut [usize], start: usize, f: &mut dyn FnMut(&[usize])) {
    if start >= v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute(v, start + 1, f);
        v.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, verify_drg};

    fn data(g: &crate::graph::Graph) -> (VerifiedDrg, BoseMesnerData) {
        let v = verify_drg(g).unwrap();
        let bm = bose_mesner(&v).unwrap();
        (v, bm)
    }

    #[test]
    fn cube() {
        let (v, bm) = data(&fixtures::hypercube(3));
        assert_eq!(bm.eigenvalues, [3, 1, -1, -3].map(rat).to_vec());
        assert_eq!(bm.multiplicities, [1, 3, 3, 1].map(rat).to_vec());
        assert!(bm.krein_nonnegative());
        assert!(bm.qpoly_orderings.contains(&alloc::vec![0, 1, 2, 3]));
        let n = 8;
        assert_eq!(bm.idempotents[0], RatMatrix::from_fn(n, n, |_, _| Rat::new(1.into(), 8.into())));
        let sum = bm.idempotents.iter().fold(RatMatrix::zeros(n, n), |s, e| &s + e);
        assert_eq!(sum, RatMatrix::identity(n));
        let a = &v.distances.distance_matrices[1];
        for (e, t) in bm.idempotents.iter().zip(&bm.eigenvalues) {
            assert_eq!(a * e, e.scale(t));
        }
    }

    #[test]
    fn johnson_is_q_polynomial() {
        let (_, bm) = data(&fixtures::johnson(6, 3));
        assert!(bm.krein_nonnegative());
        assert!(!bm.qpoly_orderings.is_empty());
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let (_, bm) = data(&fixtures::cycle(6));
        for (i, ei) in bm.idempotents.iter().enumerate() {
            for (j, ej) in bm.idempotents.iter().enumerate() {
                let p = ei * ej;
                if i == j {
                    assert_eq!(&p, ei);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn pentagon_spectrum_is_irrational() {
        let v = verify_drg(&fixtures::cycle(5)).unwrap();
        assert!(matches!(bose_mesner(&v), Err(Error::IrrationalSpectrum { .. })));
    }
}
