//! Explicit graphs, distance-regularity verification and the Bose-Mesner
//! algebra.

mod bose_mesner;
mod distance;
pub mod fixtures;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::{Error, Rat, RatMatrix, Result};

pub use bose_mesner::{bose_mesner, is_qpoly_ordering, BoseMesnerData};
pub use distance::{verify_drg, DistanceData, PTable, VerifiedDrg};

/// Finite simple connected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph from labelled edges. Vertices are numbered in order of
    /// first appearance.
    pub fn from_edge_list<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self> {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut id = |s: &str| {
            *index.entry(s.to_string()).or_insert_with(|| {
                labels.push(s.to_string());
                labels.len() - 1
            })
        };
        let edges: Vec<(usize, usize)> = pairs.iter().map(|(u, v)| (id(u.as_ref()), id(v.as_ref()))).collect();
        Self::build(labels, &edges)
    }

    /// Builds a graph on `0..n` from index pairs; labels are the indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
        }
        Self::build((0..n).map(|i| i.to_string()).collect(), edges)
    }

    fn build(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(labels[u].clone(), labels[v].clone()));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Self { adj, labels };
        if g.bfs(0).iter().any(Option::is_none) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Distances from `src`; `None` for unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn adjacency_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.n(), self.n());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                m[(u, v)] = Rat::one();
            }
        }
        m
    }

    /// Subgraph induced on `vertices` (in the given order), as an adjacency
    /// matrix.
    pub fn induced_adjacency(&self, vertices: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(vertices.len(), vertices.len(), |i, j| {
            if self.adjacent(vertices[i], vertices[j]) {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_errors() {
        assert_eq!(Graph::from_edge_list(&[("a", "a")]), Err(Error::SelfLoop("a".into())));
        assert_eq!(
            Graph::from_edge_list(&[("a", "b"), ("b", "a")]),
            Err(Error::DuplicateEdge("b".into(), "a".into()))
        );
        assert_eq!(Graph::from_edge_list(&[("a", "b"), ("c", "d")]), Err(Error::Disconnected));
        assert_eq!(Graph::from_edge_list::<&str>(&[]), Err(Error::EmptyGraph));
        assert_eq!(Graph::from_edges(2, &[(0, 2)]), Err(Error::VertexOutOfRange(2)));
    }

    #[test]
    fn four_cycle() {
        let g = Graph::from_edge_list(&[("p", "q"), ("q", "r"), ("r", "s"), ("s", "p")]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.vertex_by_label("r"), Some(2));
        assert_eq!(g.bfs(0), vec![Some(0), Some(1), Some(2), Some(1)]);
    }
}
