//! Paths with per-step metadata, and vertex subsets that paths are confined to.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::Objective;
use crate::exactgeom::{EdgeGraph, FaceSpec, Polytope};
use crate::rational::Rational;

/// Context shared by the steps of one leg.
#[derive(Clone, Debug)]
pub struct Leg {
    pub rule: &'static str,
    /// Auxiliary direction governing the leg, when there is one.
    pub aux: Option<Arc<Objective>>,
    pub face: Arc<FaceSpec>,
    pub steps: usize,
    pub declared_bound: usize,
}

#[derive(Clone, Debug)]
pub struct Step {
    pub rule: &'static str,
    pub aux: Option<Arc<Objective>>,
    pub face: Arc<FaceSpec>,
    pub leg: usize,
}

#[derive(Clone, Debug)]
pub struct PathTrace {
    pub vertex_indices: Vec<usize>,
    pub steps: Vec<Step>,
    pub legs: Vec<Leg>,
    pub declared_bound: usize,
}

impl PathTrace {
    pub fn new(start: usize) -> Self {
        PathTrace {
            vertex_indices: vec![start],
            steps: Vec::new(),
            legs: Vec::new(),
            declared_bound: 0,
        }
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertex_indices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertex_indices.last().unwrap()
    }

    pub(crate) fn push_leg(&mut self, leg: Leg, walk: &[usize]) {
        debug_assert_eq!(walk.first(), Some(&self.end()));
        let idx = self.legs.len();
        for _ in 1..walk.len() {
            self.steps.push(Step {
                rule: leg.rule,
                aux: leg.aux.clone(),
                face: leg.face.clone(),
                leg: idx,
            });
        }
        self.vertex_indices.extend_from_slice(&walk[1..]);
        self.declared_bound += leg.declared_bound;
        self.legs.push(leg);
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn append(&mut self, other: PathTrace) {
        assert_eq!(other.start(), self.end(), "traces do not connect");
        let offset = self.legs.len();
        self.vertex_indices.extend_from_slice(&other.vertex_indices[1..]);
        self.steps.extend(other.steps.into_iter().map(|mut s| {
            s.leg += offset;
            s
        }));
        self.legs.extend(other.legs);
        self.declared_bound += other.declared_bound;
    }

    pub fn is_walk(&self, g: &EdgeGraph) -> bool {
        g.is_walk(&self.vertex_indices)
    }

    /// Strictly increasing in the given per-vertex values.
    pub fn is_strictly_increasing(&self, values: &[Vec<Rational>]) -> bool {
        self.vertex_indices.windows(2).all(|w| values[w[0]] < values[w[1]])
    }

    /// Per-leg step counts.
    pub fn leg_lengths(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.steps).collect()
    }

    /// The vertices of one leg, endpoints included.
    pub fn leg_walk(&self, leg: usize) -> &[usize] {
        let before: usize = self.legs[..leg].iter().map(|l| l.steps).sum();
        &self.vertex_indices[before..=before + self.legs[leg].steps]
    }
}

/// A vertex subset of a polytope (usually a face); paths inside it use the
/// induced subgraph.
#[derive(Clone, Debug)]
pub struct Domain {
    members: Vec<usize>,
    mask: FixedBitSet,
}

impl Domain {
    pub fn full(p: &Polytope) -> Self {
        Domain::from_members(p, (0..p.n_vertices()).collect())
    }

    pub fn from_members(p: &Polytope, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = FixedBitSet::with_capacity(p.n_vertices());
        for &m in &members {
            mask.insert(m);
        }
        Domain { members, mask }
    }

    pub fn of_face(p: &Polytope, f: &FaceSpec) -> Self {
        Domain::from_members(p, f.vertex_indices(p))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask.contains(v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn spec(&self, p: &Polytope) -> FaceSpec {
        FaceSpec::spanned_by(p, &self.members)
    }
}
