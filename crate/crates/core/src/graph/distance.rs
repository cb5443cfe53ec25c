use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::Graph;
use crate::exactla::rat;
use crate::params::IntersectionArray;
use crate::{Error, Rat, RatMatrix, Result};

/// All-pairs distances and the distance matrices `A_0..A_D`.
#[derive(Clone, Debug)]
pub struct DistanceData {
    pub dist: Vec<Vec<usize>>,
    pub diameter: usize,
    pub distance_matrices: Vec<RatMatrix>,
}

impl DistanceData {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        let mut dist = Vec::with_capacity(n);
        for x in 0..n {
            let row: Option<Vec<usize>> = g.bfs(x).into_iter().collect();
            dist.push(row.ok_or(Error::Disconnected)?);
        }
        let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
        let distance_matrices = (0..=diameter)
            .map(|i| {
                let mut m = RatMatrix::zeros(n, n);
                for x in 0..n {
                    for y in 0..n {
                        if dist[x][y] == i {
                            m[(x, y)] = Rat::one();
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Self { dist, diameter, distance_matrices })
    }

    /// `Gamma_i(x)`, in increasing vertex order.
    pub fn shell(&self, x: usize, i: usize) -> Vec<usize> {
        (0..self.dist.len()).filter(|&y| self.dist[x][y] == i).collect()
    }
}

/// `p[h][i][j] = |Gamma_i(x) ∩ Gamma_j(y)|` for any `x, y` at distance `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTable {
    pub p: Vec<Vec<Vec<usize>>>,
}

impl PTable {
    pub fn get(&self, h: usize, i: usize, j: usize) -> usize {
        self.p[h][i][j]
    }

    pub fn diameter(&self) -> usize {
        self.p.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct VerifiedDrg {
    pub distances: DistanceData,
    pub array: IntersectionArray,
    pub p: PTable,
}

/// Checks that every `|Gamma_i(x) ∩ Gamma_j(y)|` depends only on `∂(x, y)`.
pub fn verify_drg(g: &Graph) -> Result<VerifiedDrg> {
    let dd = DistanceData::new(g)?;
    let n = g.n();
    let d = dd.diameter;
    let mut table: Vec<Vec<Vec<Option<(usize, (usize, usize))>>>> = vec![vec![vec![None; d + 1]; d + 1]; d + 1];
    let mut counts = vec![vec![0usize; d + 1]; d + 1];
    for x in 0..n {
        for y in 0..n {
            let h = dd.dist[x][y];
            for row in counts.iter_mut() {
                row.fill(0);
            }
            for u in 0..n {
                counts[dd.dist[x][u]][dd.dist[y][u]] += 1;
            }
            for i in 0..=d {
                for j in 0..=d {
                    let c = counts[i][j];
                    match table[h][i][j] {
                        None => table[h][i][j] = Some((c, (x, y))),
                        Some((c0, (x0, y0))) if c0 != c => {
                            return Err(Error::NotDrg(format!(
                                "p^{h}_{{{i}{j}}}: pair ({}, {}) gives {c0} but pair ({}, {}) gives {c}",
                                g.label(x0),
                                g.label(y0),
                                g.label(x),
                                g.label(y)
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    let p: Vec<Vec<Vec<usize>>> = table
        .into_iter()
        .map(|a| a.into_iter().map(|b| b.into_iter().map(|e| e.map_or(0, |(c, _)| c)).collect()).collect())
        .collect();
    let p = PTable { p };
    if d == 0 {
        return Err(Error::NotDrg("single vertex has no intersection array".into()));
    }
    let b_seq: Vec<Rat> = (0..d).map(|i| rat(p.get(i, 1, i + 1) as i64)).collect();
    let c_seq: Vec<Rat> = (1..=d).map(|i| rat(p.get(i, 1, i - 1) as i64)).collect();
    let array = IntersectionArray::from_sequences(&b_seq, &c_seq)?;
    Ok(VerifiedDrg { distances: dd, array, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn ints(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn cube_array() {
        let v = verify_drg(&fixtures::hypercube(3)).unwrap();
        assert_eq!(v.array.c_seq(), &ints(&[1, 2, 3])[..]);
        assert_eq!(v.array.b_seq(), &ints(&[3, 2, 1])[..]);
    }

    #[test]
    fn johnson_array() {
        let v = verify_drg(&fixtures::johnson(6, 3)).unwrap();
        assert_eq!(v.array.d, 3);
        assert_eq!(v.array.k, rat(9));
        assert_eq!(v.array.c_seq(), &ints(&[1, 4, 9])[..]);
    }

    #[test]
    fn path_is_not_drg() {
        assert!(matches!(verify_drg(&fixtures::path(4)), Err(Error::NotDrg(_))));
    }

    #[test]
    fn distance_matrices_partition_j() {
        let v = verify_drg(&fixtures::cycle(6)).unwrap();
        let dm = &v.distances.distance_matrices;
        assert_eq!(dm[0], RatMatrix::identity(6));
        let mut sum = RatMatrix::zeros(6, 6);
        for m in dm {
            sum = &sum + m;
        }
        assert!((0..6).all(|i| (0..6).all(|j| sum[(i, j)] == Rat::one())));
    }
}
