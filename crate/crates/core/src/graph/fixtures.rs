//! Small graphs with known parameters, used as oracles.

use alloc::vec::Vec;

use super::Graph;

/// Hypercube `H(d, 2)`: binary words of length `d`, adjacent when they
/// differ in one bit.
pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..d).map(move |bit| (u, u ^ (1 << bit)))).filter(|&(u, v)| u < v).collect();
    Graph::from_edges(n, &edges).expect("hypercube is a valid graph")
}

/// `k`-subsets of `0..n` as bitmasks, in increasing numeric order.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Johnson graph `J(n, k)`: `k`-subsets adjacent when they share `k - 1`
/// elements.
pub fn johnson(n: usize, k: usize) -> Graph {
    let vs = subsets(n, k);
    let mut edges = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if (vs[i] & vs[j]).count_ones() as usize + 1 == k {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(vs.len(), &edges).expect("Johnson graph is a valid graph")
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle is a valid graph")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path is a valid graph")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::from_edges(n, &edges).expect("complete graph is a valid graph")
}

/// `K_4` minus the edge `03`.
pub fn diamond() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).expect("valid")
}

/// Triangle `012` with the path `2-3-4` hanging off it.
pub fn triangle_with_pendant_path() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).expect("valid")
}

/// Two copies of `K_4` sharing vertex `0`; the neighbourhood of `0` is two
/// disjoint triangles.
pub fn two_k4_windmill() -> Graph {
    let mut edges = Vec::new();
    for block in [[0, 1, 2, 3], [0, 4, 5, 6]] {
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((block[i], block[j]));
            }
        }
    }
    Graph::from_edges(7, &edges).expect("valid")
}
