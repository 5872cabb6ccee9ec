use super::{Halfspace, Point};
use crate::exact::Rational;
use crate::linalg;
use itertools::Itertools;
use num::bigint::BigInt;
use num::Zero;

/// Affine hull of a nonempty point set, with a coordinate projection that is
/// injective on it.
#[derive(Debug, Clone)]
pub struct AffineHull {
    base: Point,
    pivots: Vec<usize>,
    equations: Vec<Vec<Rational>>,
}

impl AffineHull {
    pub fn of(points: &[Point]) -> Self {
        let base = points[0].clone();
        let n = base.len();
        let mut diffs: Vec<Vec<Rational>> =
            points[1..].iter().map(|p| linalg::sub(p, &base)).collect();
        let pivots = linalg::rref(&mut diffs);
        let equations = linalg::nullspace(&diffs, n);
        AffineHull { base, pivots, equations }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `p` on the pivot axes.
    pub fn project(&self, p: &[Rational]) -> Point {
        self.pivots.iter().map(|&i| p[i].clone()).collect()
    }

    pub fn project_all(&self, points: &[Point]) -> Vec<Point> {
        points.iter().map(|p| self.project(p)).collect()
    }

    /// Each hull equation `<x, k> = <base, k>` as a pair of inequalities.
    pub fn equations(&self) -> Vec<Halfspace> {
        let mut out = Vec::new();
        for k in &self.equations {
            let (normal, bound) = normalize(k, &linalg::dot(k, &self.base));
            let h = Halfspace { normal, bound };
            out.push(h.complement());
            out.push(h);
        }
        out
    }

    /// Lifts a halfspace on the pivot coordinates back to the ambient space.
    pub fn lift_halfspace(&self, h: &Halfspace) -> Halfspace {
        let mut normal = vec![BigInt::zero(); self.base.len()];
        for (c, &i) in h.normal.iter().zip(&self.pivots) {
            normal[i] = c.clone();
        }
        Halfspace { normal, bound: h.bound.clone() }
    }
}

/// Rescales `<x, v> >= b` so that `v` becomes a primitive integer vector.
pub(crate) fn normalize(v: &[Rational], b: &Rational) -> (Vec<BigInt>, Rational) {
    let ints = linalg::primitive_integer(v);
    let j = v.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    let factor = Rational::from_integer(ints[j].clone()) / &v[j];
    (ints, b * factor)
}

/// Facets of a full-dimensional point set in `R^d` (`d >= 1`), by testing
/// the hyperplane through every affinely independent `d`-subset.
pub(crate) fn facets(points: &[Point]) -> Vec<Halfspace> {
    let d = points.first().map_or(0, Vec::len);
    if d == 0 {
        return Vec::new();
    }
    let mut out: Vec<Halfspace> = Vec::new();
    for combo in (0..points.len()).combinations(d) {
        let base = &points[combo[0]];
        let rows: Vec<Vec<Rational>> =
            combo[1..].iter().map(|&i| linalg::sub(&points[i], base)).collect();
        let ns = linalg::nullspace(&rows, d);
        if ns.len() != 1 {
            continue;
        }
        let normal = &ns[0];
        let b = linalg::dot(normal, base);
        let (mut pos, mut neg) = (false, false);
        for p in points {
            let s = linalg::dot(normal, p) - &b;
            pos |= s > Rational::zero();
            neg |= s < Rational::zero();
        }
        let (normal, b) = match (pos, neg) {
            (true, true) => continue,
            (_, false) => (normal.clone(), b),
            (false, true) => (normal.iter().map(|x| -x).collect(), -b),
        };
        let (normal, bound) = normalize(&normal, &b);
        let h = Halfspace { normal, bound };
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

fn active_rank(facets: &[Halfspace], on: impl Fn(&Halfspace) -> bool) -> usize {
    let rows: Vec<Vec<Rational>> =
        facets.iter().filter(|h| on(h)).map(Halfspace::normal_rational).collect();
    linalg::rank(&rows)
}

/// For a full-dimensional point set in its own `R^r`, flags the points that
/// are vertices of the convex hull.
pub(crate) fn extreme_points(points: &[Point]) -> Vec<bool> {
    let r = points.first().map_or(0, Vec::len);
    if r == 0 {
        return points.iter().map(|_| true).collect();
    }
    let fs = facets(points);
    points
        .iter()
        .map(|p| active_rank(&fs, |h| h.slack(p).is_zero()) == r)
        .collect()
}

pub(crate) fn edges(vertices: &[Point], facets: &[Halfspace]) -> Vec<(usize, usize)> {
    let d = vertices.first().map_or(0, Vec::len);
    (0..vertices.len())
        .tuple_combinations()
        .filter(|&(i, j)| {
            active_rank(facets, |h| h.slack(&vertices[i]).is_zero() && h.slack(&vertices[j]).is_zero())
                == d - 1
        })
        .collect()
}
