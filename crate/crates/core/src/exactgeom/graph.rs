//! Vertex-edge graph by the common-face test.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::Polytope;
use crate::par::Exec;

/// Symmetric adjacency lists over vertex indices, each list sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl EdgeGraph {
    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// BFS distances from `s`; `usize::MAX` for unreachable vertices.
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n_vertices()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices() == 0 || self.bfs(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(u, ns)| ns.iter().all(|&v| v != u && self.is_edge(v, u)))
    }

    /// `true` iff every step of `walk` is an edge.
    pub fn is_walk(&self, walk: &[usize]) -> bool {
        walk.windows(2).all(|w| self.is_edge(w[0], w[1]))
    }

    /// Graph diameter (max over pairs of BFS distance).
    pub fn diameter(&self) -> usize {
        (0..self.n_vertices())
            .map(|s| self.bfs(s).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

/// `u ~ v` iff the rows tight at both cut out a face with no third vertex.
pub fn build_edge_graph(p: &Polytope) -> EdgeGraph {
    build_edge_graph_with(p, Exec::default())
}

pub fn build_edge_graph_with(p: &Polytope, exec: Exec) -> EdgeGraph {
    let nv = p.n_vertices();
    let adjacency = exec.map_range(nv, |u| {
        let mut ns = Vec::new();
        for v in 0..nv {
            if v == u {
                continue;
            }
            let mut common: FixedBitSet = p.tight_rows(u).clone();
            common.intersect_with(p.tight_rows(v));
            let third = (0..nv).any(|w| w != u && w != v && common.is_subset(p.tight_rows(w)));
            if !third {
                ns.push(v);
            }
        }
        ns
    });
    EdgeGraph { adjacency }
}
