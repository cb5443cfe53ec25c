//! Structure anchored at a base vertex `x`: dual idempotents, the
//! lowering/flat/raising matrices, the local graph, the partition around an
//! edge `xz`, kites and parallelograms, and the identity suite.

mod identities;
mod kites;
mod partition;

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactla::{integer_spectrum, rat};
use crate::graph::{BoseMesnerData, Graph, VerifiedDrg};
use crate::{Error, Rat, RatMatrix, Result};

pub use identities::{
    check_all, check_identity, gate, Gate, GateMode, IdentityReport, GATED_IDS, HYPOTHESIS_FREE_IDS, IDENTITY_IDS,
};
pub use kites::{find_kites_parallelograms, Configuration, ConfigurationKind};
pub use partition::{build_partition, LocalPartition};

/// Everything attached to the base vertex `x`.
#[derive(Clone, Debug)]
pub struct BaseContext<'g> {
    pub graph: &'g Graph,
    pub drg: &'g VerifiedDrg,
    pub x: usize,
    pub dual_idempotents: Vec<RatMatrix>,
    pub lowering: RatMatrix,
    pub flat: RatMatrix,
    pub raising: RatMatrix,
    /// `A*` for the selected Q-polynomial ordering, if any.
    pub dual_adjacency: Option<RatMatrix>,
    pub ordering: Option<Vec<usize>>,
}

impl<'g> BaseContext<'g> {
    pub fn new(g: &'g Graph, drg: &'g VerifiedDrg, x: usize, qpoly: Option<(&BoseMesnerData, &[usize])>) -> Result<Self> {
        let n = g.n();
        if x >= n {
            return Err(Error::VertexOutOfRange(x));
        }
        let d = drg.array.d;
        let dist = &drg.distances.dist[x];
        let dual_idempotents: Vec<RatMatrix> = (0..=d)
            .map(|i| {
                let mut e = RatMatrix::zeros(n, n);
                for y in 0..n {
                    if dist[y] == i {
                        e[(y, y)] = Rat::one();
                    }
                }
                e
            })
            .collect();
        let mut lowering = RatMatrix::zeros(n, n);
        let mut flat = RatMatrix::zeros(n, n);
        let mut raising = RatMatrix::zeros(n, n);
        for u in 0..n {
            for &v in g.neighbors(u) {
                // (u, v) entry of A: row grade dist[u], column grade dist[v].
                let target = if dist[u] + 1 == dist[v] {
                    &mut lowering
                } else if dist[u] == dist[v] {
                    &mut flat
                } else {
                    &mut raising
                };
                target[(u, v)] = Rat::one();
            }
        }
        let (dual_adjacency, ordering) = match qpoly {
            Some((bm, order)) => {
                if !crate::graph::is_qpoly_ordering(&bm.krein, order) {
                    return Err(Error::InvalidOrdering(alloc::format!("{order:?}")));
                }
                let e1 = &bm.idempotents[order[1]];
                let nn = rat(n as i64);
                let diag: Vec<Rat> = (0..n).map(|y| &nn * &e1[(x, y)]).collect();
                (Some(RatMatrix::diagonal(&diag)), Some(order.to_vec()))
            }
            None => (None, None),
        };
        Ok(Self { graph: g, drg, x, dual_idempotents, lowering, flat, raising, dual_adjacency, ordering })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn diameter(&self) -> usize {
        self.drg.array.d
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.drg.distances.dist[u][v]
    }

    /// `∂(x, y)`.
    pub fn grade(&self, y: usize) -> usize {
        self.drg.distances.dist[self.x][y]
    }

    pub fn shell(&self, i: usize) -> Vec<usize> {
        self.drg.distances.shell(self.x, i)
    }

    pub fn adjacency(&self) -> &RatMatrix {
        &self.drg.distances.distance_matrices[1]
    }

    /// `A_i`, or zero when `i` is outside `0..=D`.
    pub fn distance_matrix(&self, i: isize) -> RatMatrix {
        if i < 0 || i as usize > self.diameter() {
            RatMatrix::zeros(self.n(), self.n())
        } else {
            self.drg.distances.distance_matrices[i as usize].clone()
        }
    }

    /// `E*_i`, or zero when `i` is outside `0..=D`.
    pub fn e_star(&self, i: isize) -> RatMatrix {
        if i < 0 || i as usize > self.diameter() {
            RatMatrix::zeros(self.n(), self.n())
        } else {
            self.dual_idempotents[i as usize].clone()
        }
    }

    /// `E*_h m E*_j`, computed by masking rows and columns.
    pub fn project(&self, h: isize, m: &RatMatrix, j: isize) -> RatMatrix {
        let in_grade = |y: usize, g: isize| g >= 0 && self.grade(y) as isize == g;
        RatMatrix::from_fn(self.n(), self.n(), |y, z| {
            if in_grade(y, h) && in_grade(z, j) {
                m[(y, z)].clone()
            } else {
                Rat::zero()
            }
        })
    }

    /// Generators used for closures: `A` and every `E*_i`.
    pub fn generators(&self) -> Vec<RatMatrix> {
        let mut ops = Vec::with_capacity(self.dual_idempotents.len() + 1);
        ops.push(self.adjacency().clone());
        ops.extend(self.dual_idempotents.iter().cloned());
        ops
    }
}

/// The subgraph induced on `Gamma(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGraph {
    pub vertices: Vec<usize>,
    /// Distinct eigenvalues, descending, with multiplicities.
    pub eigenvalues: Vec<(Rat, usize)>,
    /// Present when the local graph is a disjoint union of cliques of size
    /// `a_1 + 1`.
    pub clique_partition: Option<Vec<Vec<usize>>>,
}

pub fn local_graph(g: &Graph, x: usize) -> Result<LocalGraph> {
    if x >= g.n() {
        return Err(Error::VertexOutOfRange(x));
    }
    let vertices = g.neighbors(x).to_vec();
    let m = g.induced_adjacency(&vertices);
    let eigenvalues = if vertices.is_empty() {
        Vec::new()
    } else {
        integer_spectrum(&m)?.into_iter().map(|e| (e.value, e.space.dim())).collect()
    };
    Ok(LocalGraph { clique_partition: clique_partition(g, &vertices), vertices, eigenvalues })
}

fn clique_partition(g: &Graph, vertices: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut seen = alloc::vec![false; vertices.len()];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for start in 0..vertices.len() {
        if seen[start] {
            continue;
        }
        let mut comp = alloc::vec![start];
        seen[start] = true;
        let mut next = 0;
        while next < comp.len() {
            let u = vertices[comp[next]];
            for (j, &v) in vertices.iter().enumerate() {
                if !seen[j] && g.adjacent(u, v) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            next += 1;
        }
        let mut part: Vec<usize> = comp.into_iter().map(|j| vertices[j]).collect();
        part.sort_unstable();
        parts.push(part);
    }
    let size = parts.first().map_or(0, Vec::len);
    let complete = parts.iter().all(|p| {
        p.len() == size && p.iter().enumerate().all(|(i, &u)| p[i + 1..].iter().all(|&v| g.adjacent(u, v)))
    });
    complete.then_some(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, verify_drg};

    #[test]
    fn cube_context() {
        let g = fixtures::hypercube(3);
        let v = verify_drg(&g).unwrap();
        let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
        assert!(ctx.flat.is_zero());
        assert_eq!(&(&ctx.lowering + &ctx.flat) + &ctx.raising, *ctx.adjacency());
        assert_eq!(ctx.lowering.transpose(), ctx.raising);
        let ones = alloc::vec![Rat::one(); 8];
        let shell1 = ctx.dual_idempotents[1].mul_vec(&ones).unwrap();
        assert_eq!(shell1.iter().filter(|x| x.is_one()).count(), 3);
    }

    #[test]
    fn johnson_has_flat_part() {
        let g = fixtures::johnson(6, 3);
        let v = verify_drg(&g).unwrap();
        let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
        assert!(!ctx.flat.is_zero());
    }

    #[test]
    fn local_graphs() {
        let cube = local_graph(&fixtures::hypercube(3), 0).unwrap();
        assert_eq!(cube.eigenvalues, alloc::vec![(rat(0), 3)]);
        assert_eq!(cube.clique_partition.as_ref().map(Vec::len), Some(3));
        let wind = local_graph(&fixtures::two_k4_windmill(), 0).unwrap();
        assert_eq!(wind.eigenvalues, alloc::vec![(rat(2), 2), (rat(-1), 4)]);
        assert_eq!(wind.clique_partition.unwrap().len(), 2);
        let j = local_graph(&fixtures::johnson(6, 3), 0).unwrap();
        assert!(j.clique_partition.is_none());
        assert_eq!(j.eigenvalues, alloc::vec![(rat(4), 1), (rat(1), 4), (rat(-2), 4)]);
    }

    #[test]
    fn dual_adjacency_for_cube() {
        let g = fixtures::hypercube(3);
        let v = verify_drg(&g).unwrap();
        let bm = crate::graph::bose_mesner(&v).unwrap();
        let ctx = BaseContext::new(&g, &v, 0, Some((&bm, &[0, 1, 2, 3]))).unwrap();
        let astar = ctx.dual_adjacency.clone().unwrap();
        // Dual eigenvalues of the 3-cube are 3, 1, -1, -3 by grade.
        for y in 0..8 {
            assert_eq!(astar[(y, y)], rat(3 - 2 * ctx.grade(y) as i64));
        }
        assert!(BaseContext::new(&g, &v, 0, Some((&bm, &[0, 2, 1, 3]))).is_err());
    }
}
