//! Exact rational geometry of polytopes: paired representations, vertex and
//! facet enumeration, faces, edge graphs and level/matrix metrics.

mod graph;
mod hull;
pub mod io;
pub mod linalg;
mod metrics;
mod vertices;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, dot_int, is_integer_point, sub, to_rational_vec, Point, Rational};

pub use graph::{build_edge_graph, build_edge_graph_with, EdgeGraph};
pub use hull::{facet_enumeration, facet_enumeration_with};
pub use metrics::{level_profile, matrix_metrics, LevelProfile, MatrixMetrics};
pub use vertices::{enumerate_vertices, enumerate_vertices_with};

/// `normal · x <= rhs` with a primitive integer normal. In the `equalities`
/// list of an [`HRep`] the same type means `normal · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub rhs: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<i64>, rhs: Rational) -> Self {
        HalfSpace { normal, rhs }
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot_int(&self.normal, x)
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == self.rhs
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.rhs
    }

    pub fn reversed(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.iter().map(|a| -a).collect(),
            rhs: -self.rhs.clone(),
        }
    }

    pub fn normal_rational(&self) -> Point {
        to_rational_vec(&self.normal)
    }
}

/// Inequality description. `rows` are the facet inequalities; `equalities`
/// spell out the affine hull of a lower-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub ambient_dim: usize,
    pub rows: Vec<HalfSpace>,
    pub equalities: Vec<HalfSpace>,
}

impl HRep {
    pub fn new(ambient_dim: usize, rows: Vec<HalfSpace>) -> Self {
        HRep {
            ambient_dim,
            rows,
            equalities: Vec::new(),
        }
    }

    /// Every constraint as a `<=` row; each equality contributes itself and its
    /// reversal.
    pub fn inequality_view(&self) -> Vec<HalfSpace> {
        let mut out = self.rows.clone();
        for e in &self.equalities {
            out.push(e.clone());
            out.push(e.reversed());
        }
        out
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.contains(x)) && self.equalities.iter().all(|e| e.is_tight(x))
    }

    /// Largest absolute entry over the facet rows.
    pub fn norm_inf(&self) -> i64 {
        self.rows
            .iter()
            .flat_map(|r| r.normal.iter())
            .map(|a| a.abs())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Point>,
    /// Smallest `k` with every vertex in `[0, k]^n`, when every vertex is integral
    /// and nonnegative.
    pub lattice_box_k: Option<u64>,
}

impl VRep {
    pub fn new(mut vertices: Vec<Point>) -> Self {
        vertices.sort();
        vertices.dedup();
        let lattice_box_k = lattice_box(&vertices);
        VRep {
            vertices,
            lattice_box_k,
        }
    }
}

fn lattice_box(vertices: &[Point]) -> Option<u64> {
    let mut k = 0u64;
    for v in vertices {
        for x in v {
            if !x.is_integer() || x.is_negative() {
                return None;
            }
            k = k.max(x.numer().to_u64()?);
        }
    }
    Some(k)
}

/// A subset of facet rows forced to equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceSpec {
    pub equality_rows: BTreeSet<usize>,
}

impl FaceSpec {
    pub fn new<I: IntoIterator<Item = usize>>(rows: I) -> Self {
        FaceSpec {
            equality_rows: rows.into_iter().collect(),
        }
    }

    /// Indices of the vertices of `p` tight on every listed row.
    pub fn vertex_indices(&self, p: &Polytope) -> Vec<usize> {
        (0..p.n_vertices())
            .filter(|&v| self.equality_rows.iter().all(|&r| p.incidence[v].contains(r)))
            .collect()
    }

    /// The rows tight on every vertex of `members`: the smallest face spec
    /// describing the face spanned by them.
    pub fn spanned_by(p: &Polytope, members: &[usize]) -> FaceSpec {
        let mut rows = FixedBitSet::with_capacity(p.hrep.rows.len());
        rows.insert_range(..);
        for &v in members {
            rows.intersect_with(&p.incidence[v]);
        }
        FaceSpec::new(rows.ones())
    }
}

/// A polytope with cross-validated H- and V-representations. Rows, equalities
/// and vertices are kept in sorted order, so equal polytopes compare equal.
#[derive(Clone, Debug)]
pub struct Polytope {
    hrep: HRep,
    vrep: VRep,
    dim: usize,
    /// Per vertex, the set of facet rows tight at it.
    incidence: Vec<FixedBitSet>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.hrep == other.hrep && self.vrep == other.vrep
    }
}

impl Polytope {
    /// Convex hull of a point set (facet enumeration).
    pub fn from_points(points: &[Point]) -> Result<Self> {
        facet_enumeration(points)
    }

    /// Vertices of `{x : Ax <= b}`, then the canonical irredundant description of
    /// their hull.
    pub fn from_hrep(hrep: &HRep) -> Result<Self> {
        let vrep = enumerate_vertices(hrep)?;
        if vrep.vertices.is_empty() {
            return Err(Error::Invalid("empty feasible set".into()));
        }
        let p = facet_enumeration(&vrep.vertices)?;
        if p.vrep.vertices != vrep.vertices {
            return Err(Error::Validation(
                "hull of the enumerated vertices has a different vertex set".into(),
            ));
        }
        Ok(p)
    }

    /// Pairs a hand-built description with its vertex list. Rows are
    /// canonicalised and both sides are cross-validated, including a full
    /// vertex enumeration of the rows when that is affordable.
    pub fn from_parts(hrep: HRep, vertices: Vec<Point>) -> Result<Self> {
        let hrep = canonical_hrep(hrep)?;
        let p = Polytope::assemble(hrep, vertices)?;
        p.validate()?;
        let rows = p.hrep.inequality_view().len();
        if binomial(rows, p.ambient_dim()) <= 2_000_000 {
            let enumerated = enumerate_vertices(&p.hrep)?;
            if enumerated.vertices != p.vrep.vertices {
                return Err(Error::Validation(format!(
                    "rows describe {} vertices, list has {}",
                    enumerated.vertices.len(),
                    p.vrep.vertices.len()
                )));
            }
        }
        Ok(p)
    }

    pub(crate) fn assemble(mut hrep: HRep, vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Invalid("polytope without vertices".into()));
        }
        let n = hrep.ambient_dim;
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::Invalid("vertex dimension differs from ambient dimension".into()));
        }
        hrep.rows.sort();
        hrep.equalities.sort();
        let vrep = VRep::new(vertices);
        let diffs: Vec<Point> = vrep.vertices.iter().map(|v| sub(v, &vrep.vertices[0])).collect();
        let dim = linalg::rank(&diffs, n);
        let incidence = vrep
            .vertices
            .iter()
            .map(|v| {
                let mut bits = FixedBitSet::with_capacity(hrep.rows.len());
                for (i, r) in hrep.rows.iter().enumerate() {
                    if r.is_tight(v) {
                        bits.insert(i);
                    }
                }
                bits
            })
            .collect();
        Ok(Polytope {
            hrep,
            vrep,
            dim,
            incidence,
        })
    }

    /// Structural cross-validation of the two representations.
    pub fn validate(&self) -> Result<()> {
        let n = self.ambient_dim();
        let fail = |m: String| Err(Error::Validation(m));
        for (i, r) in self.hrep.rows.iter().chain(&self.hrep.equalities).enumerate() {
            if r.normal.len() != n || r.normal.iter().all(|&a| a == 0) {
                return fail(format!("row {i} has a malformed normal"));
            }
            let mut prim = r.normal.clone();
            crate::rational::make_primitive_i64(&mut prim);
            if prim != r.normal {
                return fail(format!("row {i} normal is not primitive"));
            }
        }
        let uniq: BTreeSet<&HalfSpace> = self.hrep.rows.iter().collect();
        if uniq.len() != self.hrep.rows.len() {
            return fail("duplicate rows".into());
        }
        if self.hrep.equalities.len() + self.dim != n {
            return fail(format!(
                "{} equalities for a {}-dimensional polytope in R^{n}",
                self.hrep.equalities.len(),
                self.dim
            ));
        }
        let eq_normals: Vec<Point> = self.hrep.equalities.iter().map(HalfSpace::normal_rational).collect();
        for (vi, v) in self.vrep.vertices.iter().enumerate() {
            if !self.hrep.contains(v) {
                return fail(format!("vertex {vi} violates the inequality description"));
            }
            let mut tight = eq_normals.clone();
            tight.extend(self.incidence[vi].ones().map(|r| self.hrep.rows[r].normal_rational()));
            if linalg::rank(&tight, n) != n {
                return fail(format!("vertex {vi} is not a vertex of the inequality description"));
            }
        }
        for (ri, _) in self.hrep.rows.iter().enumerate() {
            let tight: Vec<usize> = self.row_tight_vertices(ri);
            if tight.is_empty() || tight.len() == self.n_vertices() {
                return fail(format!("row {ri} does not define a proper face"));
            }
            let base = &self.vrep.vertices[tight[0]];
            let diffs: Vec<Point> = tight.iter().map(|&v| sub(&self.vrep.vertices[v], base)).collect();
            if linalg::rank(&diffs, n) + 1 != self.dim {
                return fail(format!("row {ri} is redundant (does not define a facet)"));
            }
        }
        Ok(())
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vrep.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vrep.vertices[i]
    }

    pub fn n_vertices(&self) -> usize {
        self.vrep.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.hrep.ambient_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn lattice_k(&self) -> Option<u64> {
        self.vrep.lattice_box_k
    }

    pub fn vertex_index(&self, x: &[Rational]) -> Option<usize> {
        self.vrep.vertices.binary_search_by(|v| v.as_slice().cmp(x)).ok()
    }

    pub fn tight_rows(&self, v: usize) -> &FixedBitSet {
        &self.incidence[v]
    }

    pub fn row_tight_vertices(&self, row: usize) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&v| self.incidence[v].contains(row)).collect()
    }

    /// Every coordinate lies in `{0, 1/2, 1}`.
    pub fn is_half_integral(&self) -> bool {
        let two = Rational::from_integer(BigInt::from(2));
        self.vrep.vertices.iter().flatten().all(|x| {
            let y = x * &two;
            y.is_integer() && !y.is_negative() && y <= two
        })
    }

    pub fn is_lattice(&self) -> bool {
        self.vrep.vertices.iter().all(|v| is_integer_point(v))
    }

    /// `2K + 1`, where `K` bounds the absolute coordinates after scaling every
    /// vertex onto the integer lattice. This is the smallest base for which the
    /// `x_σ` weighting orders the vertices lexicographically; for a
    /// `(0,k)`-lattice polytope it is `2k + 1`.
    pub fn genericity_alpha(&self) -> i64 {
        let l = Rational::from_integer(common_denominator(self.vrep.vertices.iter()));
        let kmax = self
            .vrep
            .vertices
            .iter()
            .flatten()
            .map(|x| (x * &l).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let k = kmax.numer().to_i64().unwrap_or(i64::MAX / 4).max(1);
        2 * k + 1
    }

    /// The face obtained by forcing `f`'s rows to equality: its vertices are the
    /// tight vertices of `self`, and its rows are `self`'s rows with the forced
    /// rows added to the equalities.
    pub fn face_of(&self, f: &FaceSpec) -> Result<Polytope> {
        if let Some(&bad) = f.equality_rows.iter().find(|&&r| r >= self.hrep.rows.len()) {
            return Err(Error::Invalid(format!("row index {bad} out of range")));
        }
        let members = f.vertex_indices(self);
        if members.is_empty() {
            return Err(Error::EmptyFace(f.equality_rows.iter().copied().collect()));
        }
        let mut hrep = self.hrep.clone();
        for &r in &f.equality_rows {
            hrep.equalities.push(self.hrep.rows[r].clone());
        }
        let verts = members.iter().map(|&v| self.vrep.vertices[v].clone()).collect();
        let mut face = Polytope::assemble(hrep, verts)?;
        // keep row order aligned with the parent so FaceSpec indices carry over
        face.hrep.rows = self.hrep.rows.clone();
        face.incidence = members.iter().map(|&v| self.incidence[v].clone()).collect();
        Ok(face)
    }
}

fn canonical_hrep(hrep: HRep) -> Result<HRep> {
    let n = hrep.ambient_dim;
    let canon = |r: HalfSpace| -> Result<HalfSpace> {
        if r.normal.len() != n {
            return Err(Error::Invalid("row length differs from ambient dimension".into()));
        }
        let g = r.normal.iter().fold(0i64, |g, &a| num_integer::Integer::gcd(&g, &a));
        if g == 0 {
            return Err(Error::Invalid("zero normal".into()));
        }
        Ok(HalfSpace {
            normal: r.normal.iter().map(|a| a / g).collect(),
            rhs: r.rhs / Rational::from_integer(BigInt::from(g)),
        })
    };
    let mut rows: Vec<HalfSpace> = hrep.rows.into_iter().map(canon).collect::<Result<_>>()?;
    rows.sort();
    rows.dedup();
    let mut equalities: Vec<HalfSpace> = hrep.equalities.into_iter().map(canon).collect::<Result<_>>()?;
    equalities.sort();
    Ok(HRep {
        ambient_dim: n,
        rows,
        equalities,
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::rational::point;

    pub fn square() -> Polytope {
        Polytope::from_points(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), point(&[1, 1])]).unwrap()
    }

    pub fn pentagon() -> Polytope {
        Polytope::from_points(&[
            point(&[0, 0]),
            point(&[2, 0]),
            point(&[0, 2]),
            point(&[2, 1]),
            point(&[1, 2]),
        ])
        .unwrap()
    }

    pub fn cube3() -> Polytope {
        let mut pts = Vec::new();
        for m in 0..8i64 {
            pts.push(point(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]));
        }
        Polytope::from_points(&pts).unwrap()
    }

    pub fn cross3() -> Polytope {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [-1i64, 1] {
                let mut c = [0i64; 3];
                c[i] = s;
                pts.push(point(&c));
            }
        }
        Polytope::from_points(&pts).unwrap()
    }

    pub fn triangle() -> Polytope {
        Polytope::from_points(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1])]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::rational::{int, point};

    #[test]
    fn face_of_pentagon_top_edge() {
        let p = pentagon();
        let top = p.hrep.rows.iter().position(|r| r.normal == vec![0, 1]).unwrap();
        let face = p.face_of(&FaceSpec::new([top])).unwrap();
        assert_eq!(face.vertices(), &[point(&[0, 2]), point(&[1, 2])]);
        assert_eq!(face.dim(), 1);
    }

    #[test]
    fn face_of_cube_identity_and_edge() {
        let c = cube3();
        let same = c.face_of(&FaceSpec::default()).unwrap();
        assert_eq!(same.vertices(), c.vertices());
        assert_eq!(same.dim(), 3);
        let xr = c.hrep.rows.iter().position(|r| r.normal == vec![1, 0, 0]).unwrap();
        let yr = c.hrep.rows.iter().position(|r| r.normal == vec![0, 1, 0]).unwrap();
        let edge = c.face_of(&FaceSpec::new([xr, yr])).unwrap();
        assert_eq!(edge.vertices(), &[point(&[1, 1, 0]), point(&[1, 1, 1])]);
        assert_eq!(edge.dim(), 1);
    }

    #[test]
    fn empty_face_is_an_error() {
        let c = cube3();
        let lo = c.hrep.rows.iter().position(|r| r.normal == vec![-1, 0, 0]).unwrap();
        let hi = c.hrep.rows.iter().position(|r| r.normal == vec![1, 0, 0]).unwrap();
        assert!(matches!(c.face_of(&FaceSpec::new([lo, hi])), Err(Error::EmptyFace(_))));
    }

    #[test]
    fn from_parts_rejects_missing_facet() {
        let sq = square();
        let mut h = sq.hrep().clone();
        h.rows.pop();
        assert!(Polytope::from_parts(h, sq.vertices().to_vec()).is_err());
        let ok = Polytope::from_parts(sq.hrep().clone(), sq.vertices().to_vec()).unwrap();
        assert_eq!(ok, sq);
    }

    #[test]
    fn alpha_and_box() {
        assert_eq!(square().genericity_alpha(), 3);
        assert_eq!(pentagon().genericity_alpha(), 5);
        assert_eq!(pentagon().lattice_k(), Some(2));
        assert_eq!(cross3().lattice_k(), None);
        let half = Polytope::from_points(&[
            vec![int(0), int(0)],
            vec![crate::rational::ratio(1, 2), int(0)],
            vec![int(0), int(1)],
        ])
        .unwrap();
        assert!(half.is_half_integral());
        assert_eq!(half.genericity_alpha(), 5);
    }
}
