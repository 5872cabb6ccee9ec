use super::{triangulate, HRep, Halfspace, Point, PolytopeError, Simplex, VRep};
use crate::exact::{int, Interval, Rational};
use crate::linalg;
use itertools::Itertools;
use num::Zero;

/// Largest dimension accepted by [`vertices_from_hrep`].
pub const MAX_HREP_DIM: usize = 4;

/// Solves every `dim`-subset of constraints as equalities and keeps the
/// feasible solutions. Output is sorted and duplicate-free.
fn enumerate_vertices(h: &HRep) -> Vec<Point> {
    let normals: Vec<Vec<Rational>> = h.constraints.iter().map(Halfspace::normal_rational).collect();
    let mut out: Vec<Point> = Vec::new();
    for combo in (0..h.constraints.len()).combinations(h.dim) {
        let m: Vec<Vec<Rational>> = combo.iter().map(|&i| normals[i].clone()).collect();
        let rhs: Vec<Rational> = combo.iter().map(|&i| h.constraints[i].bound.clone()).collect();
        if let Some(x) = linalg::solve(&m, &rhs) {
            if h.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

pub(crate) fn recession_is_trivial(h: &HRep) -> bool {
    let normals: Vec<Vec<Rational>> = h.constraints.iter().map(Halfspace::normal_rational).collect();
    if linalg::rank(&normals) < h.dim {
        return false;
    }
    // a nontrivial pointed cone has an extreme ray cut out by dim-1 tight
    // constraints of rank dim-1
    for combo in (0..normals.len()).combinations(h.dim - 1) {
        let rows: Vec<Vec<Rational>> = combo.iter().map(|&i| normals[i].clone()).collect();
        let ns = linalg::nullspace(&rows, h.dim);
        if ns.len() != 1 {
            continue;
        }
        let r = &ns[0];
        let vals: Vec<Rational> = normals.iter().map(|n| linalg::dot(n, r)).collect();
        if vals.iter().all(|v| v >= &Rational::zero()) || vals.iter().all(|v| v <= &Rational::zero()) {
            return false;
        }
    }
    true
}

/// Exact vertex enumeration of a bounded H-polytope in dimension at most
/// [`MAX_HREP_DIM`]. An infeasible system yields the empty polytope.
pub fn vertices_from_hrep(h: &HRep) -> Result<VRep, PolytopeError> {
    if h.dim > MAX_HREP_DIM {
        return Err(PolytopeError::DimensionTooLarge { dim: h.dim, max: MAX_HREP_DIM });
    }
    let normals: Vec<Vec<Rational>> = h.constraints.iter().map(Halfspace::normal_rational).collect();
    if linalg::rank(&normals) < h.dim {
        // Nonempty means a line in the set. Pin the lineality space to zero
        // to decide emptiness.
        let mut pinned = h.clone();
        for k in linalg::nullspace(&normals, h.dim) {
            let (normal, bound) = super::hull::normalize(&k, &Rational::zero());
            let eq = Halfspace { normal, bound };
            pinned.constraints.push(eq.complement());
            pinned.constraints.push(eq);
        }
        return if enumerate_vertices(&pinned).is_empty() {
            Ok(VRep::empty(h.dim))
        } else {
            Err(PolytopeError::Unbounded)
        };
    }
    let verts = enumerate_vertices(h);
    if verts.is_empty() {
        return Ok(VRep::empty(h.dim));
    }
    if !recession_is_trivial(h) {
        return Err(PolytopeError::Unbounded);
    }
    VRep::from_points(h.dim, verts)
}

/// Exact volume: sum of simplex volumes over the lexicographic placing
/// triangulation, zero for lower-dimensional or empty input.
pub fn volume(p: &VRep) -> Rational {
    if !p.is_full_dimensional() {
        return Rational::zero();
    }
    triangulate(p)
        .expect("full-dimensional polytope triangulates")
        .iter()
        .map(Simplex::volume)
        .sum()
}

/// `P ∩ {<x, v_i> >= b_i for all i}`, vertices sorted lexicographically.
pub fn cut(p: &VRep, halfspaces: &[Halfspace]) -> Result<VRep, PolytopeError> {
    for h in halfspaces {
        if h.normal.len() != p.dim() {
            return Err(PolytopeError::DimensionMismatch { expected: p.dim(), got: h.normal.len() });
        }
    }
    if p.is_empty() {
        return Ok(VRep::empty(p.dim()));
    }
    let mut h = p.to_hrep();
    h.constraints.extend(halfspaces.iter().cloned());
    VRep::from_points(p.dim(), enumerate_vertices(&h))
}

/// Image interval of `x -> <w, x>` over `P`, plus the sorted distinct
/// images of the vertices (the candidate wall positions).
pub fn support_and_criticals(p: &VRep, w: &[i64]) -> Result<(Interval, Vec<Rational>), PolytopeError> {
    if w.len() != p.dim() {
        return Err(PolytopeError::DimensionMismatch { expected: p.dim(), got: w.len() });
    }
    if w.iter().all(|&c| c == 0) {
        return Err(PolytopeError::ZeroDirection);
    }
    if p.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let wr: Vec<Rational> = w.iter().map(|&c| int(c)).collect();
    let mut images: Vec<Rational> = p.vertices().iter().map(|v| linalg::dot(&wr, v)).collect();
    images.sort();
    images.dedup();
    let interval = Interval::closed(images[0].clone(), images[images.len() - 1].clone());
    Ok((interval, images))
}
