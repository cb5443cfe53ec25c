use alloc::vec::Vec;

use crate::graph::{DistanceData, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigurationKind {
    Kite,
    Parallelogram,
}

/// A kite or parallelogram `uvwz` of the given length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub kind: ConfigurationKind,
    pub length: usize,
    pub vertices: [usize; 4],
}

/// Every kite and parallelogram of length `2..=max_len`.
///
/// Kite: `u, v, w` mutually adjacent, `∂(u,z) = i`, `∂(v,z) = ∂(w,z) = i-1`.
/// Parallelogram: `∂(u,v) = ∂(w,z) = 1`, `∂(u,z) = i`,
/// `∂(v,z) = ∂(u,w) = ∂(v,w) = i-1`.
/// Tuples that differ only by swapping `v` and `w` in a kite are listed once.
pub fn find_kites_parallelograms(g: &Graph, dd: &DistanceData, max_len: usize) -> Vec<Configuration> {
    let n = g.n();
    let dist = &dd.dist;
    let mut out = Vec::new();
    for u in 0..n {
        for &v in g.neighbors(u) {
            for &w in g.neighbors(u) {
                if w <= v || !g.adjacent(v, w) {
                    continue;
                }
                for z in 0..n {
                    let i = dist[u][z];
                    if (2..=max_len).contains(&i) && dist[v][z] == i - 1 && dist[w][z] == i - 1 {
                        out.push(Configuration { kind: ConfigurationKind::Kite, length: i, vertices: [u, v, w, z] });
                    }
                }
            }
        }
    }
    for u in 0..n {
        for &v in g.neighbors(u) {
            for w in 0..n {
                let i = dist[u][w] + 1;
                if !(2..=max_len).contains(&i) || dist[v][w] != i - 1 {
                    continue;
                }
                for &z in g.neighbors(w) {
                    if dist[u][z] == i && dist[v][z] == i - 1 {
                        out.push(Configuration {
                            kind: ConfigurationKind::Parallelogram,
                            length: i,
                            vertices: [u, v, w, z],
                        });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn search(g: &Graph) -> Vec<Configuration> {
        let dd = DistanceData::new(g).unwrap();
        find_kites_parallelograms(g, &dd, dd.diameter)
    }

    #[test]
    fn cube_has_no_kites() {
        assert!(search(&fixtures::hypercube(3)).iter().all(|c| c.kind != ConfigurationKind::Kite));
    }

    #[test]
    fn diamond_has_a_two_kite() {
        let found = search(&fixtures::diamond());
        assert!(found.contains(&Configuration { kind: ConfigurationKind::Kite, length: 2, vertices: [0, 1, 2, 3] }));
        // K_4 has diameter 1, so nothing of length 2 fits.
        assert!(search(&fixtures::complete(4)).is_empty());
    }

    #[test]
    fn pendant_fixture_has_no_two_kite() {
        let found = search(&fixtures::triangle_with_pendant_path());
        assert!(!found.iter().any(|c| c.kind == ConfigurationKind::Kite && c.length == 2));
    }

    #[test]
    fn hexagon_has_no_parallelograms() {
        assert!(search(&fixtures::cycle(6)).is_empty());
    }
}
