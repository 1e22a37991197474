//! Exact monotone-path pivot rules on lattice polytopes.
//!
//! Every polytope is held as a paired H- and V-representation over exact
//! rationals, every path is a walk in the explicitly computed vertex-edge
//! graph, and every path-length bound is checked against brute-force
//! oracles.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactgeom`]: representations, vertex/facet enumeration, faces, edge
//!   graphs, level profiles and matrix metrics.
//! * [`pivot`]: perturbed objectives, signed permutations and the `x_σ`
//!   weighting, coherent (shadow) paths and greatest-improvement paths.
//! * [`pathalgos`]: the path constructions with their length bounds.
//! * [`oracles`]: brute-force optima, monotone distances, monotone diameter
//!   estimates and the exhaustive lexicographic-order check.
//! * [`polygen`]: seeded instance generators.
//! * [`lab`]: corpus manifests, run configs and the batch verifier behind the
//!   `monopath` binary.

pub mod error;
pub mod exactgeom;
pub mod lab;
pub mod oracles;
pub mod par;
pub mod pathalgos;
pub mod pivot;
pub mod polygen;
pub mod rational;

pub use error::{Error, Result};
pub use exactgeom::{EdgeGraph, FaceSpec, HRep, HalfSpace, Polytope, VRep};
pub use par::Exec;
pub use pivot::{Objective, PathTrace, SignedPermutation};
pub use rational::{Point, Rational};
