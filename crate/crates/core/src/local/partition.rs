use alloc::vec;
use alloc::vec::Vec;

use super::BaseContext;
use crate::{Error, Result};

/// The sets `D^i_j = Gamma_i(x) ∩ Gamma_j(z)` for a neighbour `z` of `x`,
/// and the split of each `D^i_i` by `|Gamma_{i-1}(y) ∩ D^1_1|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPartition {
    pub z: usize,
    /// `sets[i][j] = D^i_j`.
    pub sets: Vec<Vec<Vec<usize>>>,
    /// `split[i] = (D^i_i(0), D^i_i(1))`; index 0 is empty.
    pub split: Vec<(Vec<usize>, Vec<usize>)>,
    /// Vertices `y ∈ D^i_i` with two or more vertices of `D^1_1` at distance
    /// `i - 1`. They belong to neither half of the split.
    pub pom_violations: Vec<usize>,
}

impl LocalPartition {
    /// `D^i_j`, empty when either index is out of range.
    pub fn set(&self, i: isize, j: isize) -> &[usize] {
        let d = self.sets.len() as isize - 1;
        if i < 0 || j < 0 || i > d || j > d {
            return &[];
        }
        &self.sets[i as usize][j as usize]
    }

    /// `D^i_i(j)` for `j ∈ {0, 1}`, empty when `i` is out of range.
    pub fn half(&self, i: isize, j: usize) -> &[usize] {
        let d = self.sets.len() as isize - 1;
        if i < 1 || i > d {
            return &[];
        }
        let (zero, one) = &self.split[i as usize];
        if j == 0 {
            zero
        } else {
            one
        }
    }
}

pub fn build_partition(ctx: &BaseContext<'_>, z: usize) -> Result<LocalPartition> {
    let n = ctx.n();
    if z >= n {
        return Err(Error::VertexOutOfRange(z));
    }
    if !ctx.graph.adjacent(ctx.x, z) {
        return Err(Error::NotAdjacent(ctx.x, z));
    }
    let d = ctx.diameter();
    let mut sets = vec![vec![Vec::new(); d + 1]; d + 1];
    for y in 0..n {
        sets[ctx.grade(y)][ctx.dist(z, y)].push(y);
    }
    let d11 = sets.get(1).map(|r| r[1].clone()).unwrap_or_default();
    let mut split = vec![(Vec::new(), Vec::new()); d + 1];
    let mut pom_violations = Vec::new();
    for i in 1..=d {
        for &y in &sets[i][i] {
            let hits = d11.iter().filter(|&&u| ctx.dist(u, y) == i - 1).count();
            match hits {
                0 => split[i].0.push(y),
                1 => split[i].1.push(y),
                _ => pom_violations.push(y),
            }
        }
    }
    Ok(LocalPartition { z, sets, split, pom_violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, verify_drg};
    use crate::local::BaseContext;

    #[test]
    fn sizes_match_p1() {
        for g in [fixtures::hypercube(3), fixtures::johnson(6, 3)] {
            let v = verify_drg(&g).unwrap();
            let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
            let z = g.neighbors(0)[0];
            let p = build_partition(&ctx, z).unwrap();
            assert_eq!(p.set(0, 1), &[0]);
            for i in 0..=v.array.d {
                for j in 0..=v.array.d {
                    assert_eq!(crate::exactla::rat(p.sets[i][j].len() as i64), v.array.p1[i][j]);
                }
            }
        }
    }

    #[test]
    fn d11_sizes() {
        let cube = fixtures::hypercube(3);
        let v = verify_drg(&cube).unwrap();
        let ctx = BaseContext::new(&cube, &v, 0, None).unwrap();
        assert!(build_partition(&ctx, 1).unwrap().set(1, 1).is_empty());
        assert_eq!(build_partition(&ctx, 3), Err(Error::NotAdjacent(0, 3)));
        let j = fixtures::johnson(6, 3);
        let v = verify_drg(&j).unwrap();
        let ctx = BaseContext::new(&j, &v, 0, None).unwrap();
        let p = build_partition(&ctx, j.neighbors(0)[0]).unwrap();
        assert_eq!(p.set(1, 1).len(), 4);
        assert_eq!(p.half(1, 1).len(), 4);
        assert!(p.half(1, 0).is_empty());
    }
}
