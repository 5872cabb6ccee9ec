use super::{Point, PolytopeError, Simplex, VRep};
use crate::exact::Rational;
use crate::linalg;
use itertools::Itertools;
use std::collections::HashMap;

struct BoundaryFacet {
    verts: Vec<usize>,
    normal: Vec<Rational>,
    offset: Rational,
}

impl BoundaryFacet {
    /// Hyperplane through `verts`, oriented so that `interior` lies strictly
    /// on the `<n, x> < offset` side.
    fn new(points: &[Point], mut verts: Vec<usize>, interior: &[Rational]) -> Self {
        verts.sort_unstable();
        let d = interior.len();
        let base = &points[verts[0]];
        let rows: Vec<Vec<Rational>> =
            verts[1..].iter().map(|&i| linalg::sub(&points[i], base)).collect();
        let mut normal = linalg::nullspace(&rows, d).swap_remove(0);
        let mut offset = linalg::dot(&normal, base);
        if linalg::dot(&normal, interior) > offset {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        BoundaryFacet { verts, normal, offset }
    }

    fn sees(&self, p: &[Rational]) -> bool {
        linalg::dot(&self.normal, p) > self.offset
    }
}

/// Placing (beneath-beyond) triangulation of a full-dimensional point set in
/// `R^d`, inserting points in the given order.
///
/// The first affinely independent `d + 1` points of `order` form the seed
/// simplex; every later point is coned over the boundary facets it sees.
/// Points inside the current hull are skipped. Returns simplices as sorted
/// index lists into `points`.
pub fn placing_triangulation(points: &[Point], order: &[usize]) -> Result<Vec<Vec<usize>>, PolytopeError> {
    let d = points.first().map_or(0, Vec::len);
    let mut seed: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &i in order {
        if seed.len() == d + 1 {
            break;
        }
        if seed.is_empty() {
            seed.push(i);
            continue;
        }
        let mut candidate = rows.clone();
        candidate.push(linalg::sub(&points[i], &points[seed[0]]));
        if linalg::rank(&candidate) == candidate.len() {
            rows = candidate;
            seed.push(i);
        }
    }
    if seed.len() < d + 1 {
        return Err(PolytopeError::Degenerate { affine_dim: seed.len().saturating_sub(1), dim: d });
    }
    let n_seed = Rational::from_integer((d as i64 + 1).into());
    let interior: Vec<Rational> = (0..d)
        .map(|k| seed.iter().map(|&i| points[i][k].clone()).sum::<Rational>() / &n_seed)
        .collect();

    let mut simplices = vec![{
        let mut s = seed.clone();
        s.sort_unstable();
        s
    }];
    let mut boundary: Vec<BoundaryFacet> = seed
        .iter()
        .map(|&skip| {
            let verts = seed.iter().copied().filter(|&i| i != skip).collect();
            BoundaryFacet::new(points, verts, &interior)
        })
        .collect();

    for &p in order.iter().filter(|i| !seed.contains(i)) {
        let (visible, hidden): (Vec<_>, Vec<_>) =
            boundary.into_iter().partition(|f| f.sees(&points[p]));
        boundary = hidden;
        if visible.is_empty() {
            continue;
        }
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in &visible {
            for ridge in f.verts.iter().copied().combinations(d - 1) {
                *ridge_count.entry(ridge).or_default() += 1;
            }
            let mut s = f.verts.clone();
            s.push(p);
            s.sort_unstable();
            simplices.push(s);
        }
        // ridges seen once lie on the horizon
        let mut horizon: Vec<Vec<usize>> =
            ridge_count.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut ridge in horizon {
            ridge.push(p);
            boundary.push(BoundaryFacet::new(points, ridge, &interior));
        }
    }
    Ok(simplices)
}

/// Placing triangulation with lexicographic insertion order.
pub fn triangulate(p: &VRep) -> Result<Vec<Simplex>, PolytopeError> {
    let mut order: Vec<usize> = (0..p.vertices().len()).collect();
    order.sort_by(|&a, &b| p.vertices()[a].cmp(&p.vertices()[b]));
    triangulate_in_order(p, &order)
}

/// Placing triangulation inserting the vertices in `order` (a permutation
/// of the vertex indices).
pub fn triangulate_in_order(p: &VRep, order: &[usize]) -> Result<Vec<Simplex>, PolytopeError> {
    p.require_full_dim()?;
    let cells = placing_triangulation(p.vertices(), order)?;
    cells
        .into_iter()
        .map(|c| Simplex::new(c.into_iter().map(|i| p.vertices()[i].clone()).collect()))
        .collect()
}
