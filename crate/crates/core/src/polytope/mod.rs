//! Exact convex polytopes in small dimension.
//!
//! The vertex representation [`VRep`] is the primary carrier; [`HRep`] shows
//! up for cut inputs and vertex enumeration. Facet and vertex enumeration are
//! brute force over subsets, which is fine for the dimensions used here
//! (at most 4) and keeps every step exact.

mod hull;
mod ops;
mod triangulate;

pub use hull::AffineHull;
pub use ops::{cut, support_and_criticals, vertices_from_hrep, volume, MAX_HREP_DIM};
pub use triangulate::{placing_triangulation, triangulate, triangulate_in_order};

use crate::exact::Rational;
use crate::linalg;
use num::bigint::BigInt;
use num::Zero;
use std::fmt;

pub type Point = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("constraint system is unbounded")]
    Unbounded,
    #[error("vertex enumeration supports dimension <= {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("polytope spans an affine subspace of dimension {affine_dim} in R^{dim}")]
    Degenerate { affine_dim: usize, dim: usize },
    #[error("polytope is empty")]
    Empty,
    #[error("projection direction is zero")]
    ZeroDirection,
    #[error("constraint normal is zero")]
    ZeroNormal,
    #[error("simplex vertices are not affinely independent")]
    NotAffinelyIndependent,
}

/// Closed halfspace `<x, normal> >= bound` with an integer normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub bound: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<BigInt>, bound: Rational) -> Result<Self, PolytopeError> {
        if normal.iter().all(Zero::is_zero) {
            return Err(PolytopeError::ZeroNormal);
        }
        Ok(Halfspace { normal, bound })
    }

    pub fn from_ints(normal: &[i64], bound: Rational) -> Result<Self, PolytopeError> {
        Self::new(normal.iter().map(|&c| BigInt::from(c)).collect(), bound)
    }

    pub fn normal_rational(&self) -> Vec<Rational> {
        linalg::to_rationals(&self.normal)
    }

    /// `<x, normal> - bound`
    pub fn slack(&self, x: &[Rational]) -> Rational {
        linalg::dot(&self.normal_rational(), x) - &self.bound
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.slack(x) >= Rational::zero()
    }

    /// The opposite closed halfspace `<x, -normal> >= -bound`.
    pub fn complement(&self) -> Halfspace {
        Halfspace { normal: self.normal.iter().map(|c| -c).collect(), bound: -&self.bound }
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n: Vec<String> = self.normal.iter().map(ToString::to_string).collect();
        write!(f, "<x, ({})> >= {}", n.join(", "), self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub constraints: Vec<Halfspace>,
}

impl HRep {
    pub fn new(dim: usize, constraints: Vec<Halfspace>) -> Result<Self, PolytopeError> {
        for c in &constraints {
            if c.normal.len() != dim {
                return Err(PolytopeError::DimensionMismatch { expected: dim, got: c.normal.len() });
            }
        }
        Ok(HRep { dim, constraints })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|h| h.contains(x))
    }

    /// True iff the recession cone `{x : <x, v_i> >= 0}` is trivial. An
    /// infeasible system may still report `false`.
    pub fn is_bounded(&self) -> bool {
        ops::recession_is_trivial(self)
    }
}

/// Irredundant vertex representation of a convex polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    dim: usize,
    vertices: Vec<Point>,
    affine_dim: Option<usize>,
}

impl VRep {
    pub fn empty(dim: usize) -> Self {
        VRep { dim, vertices: Vec::new(), affine_dim: None }
    }

    /// Convex hull of `points`. Duplicates and non-extreme points are
    /// dropped; surviving vertices keep their first-occurrence order.
    pub fn from_points(dim: usize, points: Vec<Point>) -> Result<Self, PolytopeError> {
        for p in &points {
            if p.len() != dim {
                return Err(PolytopeError::DimensionMismatch { expected: dim, got: p.len() });
            }
        }
        let mut unique: Vec<Point> = Vec::new();
        for p in points {
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        if unique.is_empty() {
            return Ok(Self::empty(dim));
        }
        let hull = AffineHull::of(&unique);
        let keep = hull::extreme_points(&hull.project_all(&unique));
        let vertices = unique
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(_, p)| p)
            .collect();
        Ok(VRep { dim, vertices, affine_dim: Some(hull.dim()) })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_int_points(dim: usize, points: &[&[i64]]) -> Result<Self, PolytopeError> {
        Self::from_points(
            dim,
            points.iter().map(|p| p.iter().map(|&c| crate::exact::int(c)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull, `None` when empty.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    /// Vertices sorted lexicographically; two polytopes are equal as sets
    /// iff their canonical vertex lists are equal.
    pub fn canonical_vertices(&self) -> Vec<Point> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn same_set(&self, other: &VRep) -> bool {
        self.dim == other.dim && self.canonical_vertices() == other.canonical_vertices()
    }

    /// Facet inequalities (for a full-dimensional polytope) or facet
    /// inequalities of the relative interior together with the equations of
    /// the affine hull, each written as two opposite inequalities.
    pub fn to_hrep(&self) -> HRep {
        if self.is_empty() {
            // 0 >= 1 with a nonzero normal: x_0 >= 1 and -x_0 >= 0
            let mut e = vec![BigInt::zero(); self.dim];
            if self.dim > 0 {
                e[0] = BigInt::from(1);
            }
            let a = Halfspace { normal: e.clone(), bound: crate::exact::int(1) };
            let b = Halfspace { normal: e.iter().map(|c| -c).collect(), bound: crate::exact::int(0) };
            return HRep { dim: self.dim, constraints: vec![a, b] };
        }
        let hull = AffineHull::of(&self.vertices);
        let mut constraints = hull.equations();
        for f in hull::facets(&hull.project_all(&self.vertices)) {
            constraints.push(hull.lift_halfspace(&f));
        }
        HRep { dim: self.dim, constraints }
    }

    /// Facets of a full-dimensional polytope.
    pub fn facets(&self) -> Result<Vec<Halfspace>, PolytopeError> {
        self.require_full_dim()?;
        Ok(hull::facets(&self.vertices))
    }

    /// Pairs of vertex indices spanning an edge (full-dimensional input).
    pub fn edges(&self) -> Result<Vec<(usize, usize)>, PolytopeError> {
        let facets = self.facets()?;
        Ok(hull::edges(&self.vertices, &facets))
    }

    pub(crate) fn require_full_dim(&self) -> Result<(), PolytopeError> {
        match self.affine_dim {
            None => Err(PolytopeError::Empty),
            Some(d) if d < self.dim => Err(PolytopeError::Degenerate { affine_dim: d, dim: self.dim }),
            _ => Ok(()),
        }
    }

    /// Image of every vertex under `x -> A x`.
    pub fn map_vertices(&self, f: impl Fn(&Point) -> Point, dim: usize) -> Result<VRep, PolytopeError> {
        VRep::from_points(dim, self.vertices.iter().map(f).collect())
    }
}

/// Nondegenerate simplex: `dim + 1` affinely independent points in `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self, PolytopeError> {
        let d = vertices.len().saturating_sub(1);
        if let Some(p) = vertices.iter().find(|p| p.len() != d) {
            return Err(PolytopeError::DimensionMismatch { expected: d, got: p.len() });
        }
        let s = Simplex { vertices };
        if s.signed_det().is_zero() {
            return Err(PolytopeError::NotAffinelyIndependent);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    fn signed_det(&self) -> Rational {
        if self.vertices.is_empty() {
            return Rational::zero();
        }
        let base = &self.vertices[0];
        let rows: Vec<Vec<Rational>> =
            self.vertices[1..].iter().map(|v| linalg::sub(v, base)).collect();
        if rows.is_empty() {
            // a point in R^0
            return num::One::one();
        }
        linalg::det(&rows)
    }

    /// `|det(v_i - v_0)| / dim!`
    pub fn volume(&self) -> Rational {
        let fact: u64 = (1..=self.dim() as u64).product();
        num::Signed::abs(&self.signed_det()) / Rational::from_integer(BigInt::from(fact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn redundant_points_are_dropped() {
        let p = VRep::from_int_points(2, &[&[0, 0], &[2, 0], &[1, 0], &[0, 2], &[1, 1], &[0, 0], &[1, 1]])
            .unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert!(p.is_full_dimensional());
        let seg = VRep::from_int_points(2, &[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert_eq!(seg.vertices().len(), 2);
        assert_eq!(seg.affine_dim(), Some(1));
        let pt = VRep::from_int_points(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(pt.affine_dim(), Some(0));
    }

    #[test]
    fn square_facets_and_edges() {
        let sq = VRep::from_int_points(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(sq.facets().unwrap().len(), 4);
        let mut e = sq.edges().unwrap();
        e.sort();
        assert_eq!(e, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        // diagonal of the square is not an edge, octahedron has 12 edges
        let oct = VRep::from_int_points(
            3,
            &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        )
        .unwrap();
        assert_eq!(oct.facets().unwrap().len(), 8);
        assert_eq!(oct.edges().unwrap().len(), 12);
    }

    #[test]
    fn hrep_of_lower_dimensional_polytope() {
        let seg = VRep::from_int_points(2, &[&[0, 0], &[1, 1]]).unwrap();
        let h = seg.to_hrep();
        assert!(h.contains(&[rat(1, 2), rat(1, 2)]));
        assert!(!h.contains(&[rat(1, 2), rat(1, 3)]));
        assert!(!h.contains(&[int(2), int(2)]));
    }

    #[test]
    fn simplex_validation() {
        assert!(Simplex::new(vec![vec![int(0), int(0)], vec![int(1), int(1)], vec![int(2), int(2)]]).is_err());
        let s = Simplex::new(vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        assert_eq!(s.volume(), rat(1, 2));
    }
}
