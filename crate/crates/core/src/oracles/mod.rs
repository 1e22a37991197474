//! Brute-force ground truth: optima, oriented graphs and monotone distances,
//! monotone-diameter estimates, and the exhaustive lexicographic-order check.

mod diameter;
mod lexorder;

use std::collections::VecDeque;

pub use diameter::{
    monotone_diameter_estimate, monotone_diameter_estimate_with, sampled_objectives, DiameterEstimate, DiameterMode,
    EXACT_MAX_N, EXACT_MAX_VERTICES,
};
pub use lexorder::{verify_lex_order, verify_lex_order_with, LexCounterexample, LexReport};

use crate::error::{Error, Result};
use crate::exactgeom::{EdgeGraph, Polytope};
use crate::pivot::Objective;
use crate::rational::{Point, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Unique(usize),
    /// Every index attaining the maximal tuple, ascending.
    Tie(Vec<usize>),
}

impl Optimum {
    pub fn unique(&self) -> Option<usize> {
        match self {
            Optimum::Unique(v) => Some(*v),
            Optimum::Tie(_) => None,
        }
    }
}

/// Argmax of the value tuple over a plain scan.
pub fn brute_force_optimum(vertices: &[Point], o: &Objective) -> Optimum {
    assert!(!vertices.is_empty());
    let vals: Vec<Vec<Rational>> = vertices.iter().map(|v| o.value(v)).collect();
    let best = vals.iter().max().unwrap();
    let all: Vec<usize> = (0..vals.len()).filter(|&i| &vals[i] == best).collect();
    if all.len() == 1 {
        Optimum::Unique(all[0])
    } else {
        Optimum::Tie(all)
    }
}

/// Graph edges directed toward the larger value.
#[derive(Clone, Debug)]
pub struct OrientationDigraph {
    pub out: Vec<Vec<usize>>,
    pub sink: usize,
    pub source: usize,
}

impl OrientationDigraph {
    /// Orients `g` by per-vertex values. Fails when an edge is not strictly
    /// oriented or the sink or source is not unique.
    pub fn new(g: &EdgeGraph, values: &[Vec<Rational>]) -> Result<Self> {
        let nv = g.n_vertices();
        let mut out = vec![Vec::new(); nv];
        let mut indeg = vec![0usize; nv];
        for (u, v) in g.edges() {
            let (a, b) = match values[u].cmp(&values[v]) {
                std::cmp::Ordering::Less => (u, v),
                std::cmp::Ordering::Greater => (v, u),
                std::cmp::Ordering::Equal => {
                    return Err(Error::Degenerate(format!("objective is constant on edge {u}-{v}")));
                }
            };
            out[a].push(b);
            indeg[b] += 1;
        }
        let sinks: Vec<usize> = (0..nv).filter(|&v| out[v].is_empty()).collect();
        let sources: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        if sinks.len() != 1 || sources.len() != 1 {
            return Err(Error::Validation(format!(
                "{} sinks and {} sources in an oriented polytope graph",
                sinks.len(),
                sources.len()
            )));
        }
        Ok(OrientationDigraph {
            out,
            sink: sinks[0],
            source: sources[0],
        })
    }

    pub fn from_objective(p: &Polytope, g: &EdgeGraph, o: &Objective) -> Result<Self> {
        Self::new(g, &o.values_on(p))
    }

    /// Kahn's algorithm visits every vertex.
    pub fn is_acyclic(&self) -> bool {
        let nv = self.out.len();
        let mut indeg = vec![0usize; nv];
        for outs in &self.out {
            for &v in outs {
                indeg[v] += 1;
            }
        }
        let mut q: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = q.pop_front() {
            seen += 1;
            for &v in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    q.push_back(v);
                }
            }
        }
        seen == nv
    }

    /// Directed distance from every vertex to the sink.
    pub fn distances_to_sink(&self) -> Result<Vec<usize>> {
        let nv = self.out.len();
        let mut inc = vec![Vec::new(); nv];
        for (u, outs) in self.out.iter().enumerate() {
            for &v in outs {
                inc[v].push(u);
            }
        }
        let mut dist = vec![usize::MAX; nv];
        dist[self.sink] = 0;
        let mut q = VecDeque::from([self.sink]);
        while let Some(v) = q.pop_front() {
            for &u in &inc[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(Error::Validation("sink unreachable in an oriented polytope graph".into()));
        }
        Ok(dist)
    }
}

/// Length of the shortest `o`-monotone path from `from` to the `o`-maximum.
pub fn shortest_monotone_distance(p: &Polytope, g: &EdgeGraph, o: &Objective, from: usize) -> Result<usize> {
    Ok(OrientationDigraph::from_objective(p, g, o)?.distances_to_sink()?[from])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::build_edge_graph;
    use crate::exactgeom::fixtures::*;
    use crate::rational::point;

    #[test]
    fn optima() {
        let sq = square();
        let o = Objective::generic(&sq, point(&[1, 1]));
        assert_eq!(
            brute_force_optimum(sq.vertices(), &o),
            Optimum::Unique(sq.vertex_index(&point(&[1, 1])).unwrap())
        );
        let p = pentagon();
        let i = |c: &[i64]| p.vertex_index(&point(c)).unwrap();
        let o = Objective::from_ints(&[1, 1]);
        assert_eq!(brute_force_optimum(p.vertices(), &o), Optimum::Tie(vec![i(&[1, 2]), i(&[2, 1])]));
        let o = o.with_perturbation(point(&[0, 1]));
        assert_eq!(brute_force_optimum(p.vertices(), &o), Optimum::Unique(i(&[1, 2])));
        let x = cross3();
        let o = Objective::from_ints(&[1, 2, 3]);
        assert_eq!(x.vertex(brute_force_optimum(x.vertices(), &o).unique().unwrap()), &point(&[0, 0, 1]));
    }

    #[test]
    fn distances() {
        let p = pentagon();
        let g = build_edge_graph(&p);
        let o = Objective::from_ints(&[1, 0]).with_perturbation(point(&[0, 1]));
        let dg = OrientationDigraph::from_objective(&p, &g, &o).unwrap();
        assert!(dg.is_acyclic());
        assert_eq!(dg.distances_to_sink().unwrap()[dg.sink], 0);
        assert_eq!(shortest_monotone_distance(&p, &g, &o, p.vertex_index(&point(&[0, 0])).unwrap()).unwrap(), 2);
        let c = cube3();
        let gc = build_edge_graph(&c);
        let o = Objective::generic(&c, point(&[1, 1, 1]));
        assert_eq!(shortest_monotone_distance(&c, &gc, &o, 0).unwrap(), 3);
        assert!(OrientationDigraph::from_objective(&c, &gc, &Objective::from_ints(&[1, 0, 0])).is_err());
    }
}
