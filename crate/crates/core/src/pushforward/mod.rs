//! Duistermaat–Heckman densities of toric models.
//!
//! A toric model is a momentum polytope together with an integer projection
//! onto the Lie coalgebra of a subtorus. The Liouville push-forward is taken
//! to be Lebesgue measure on the polytope, with no `(2π)^n` factors. For a
//! rank-one projection the density is assembled exactly from simplex
//! push-forwards; for any rank a seeded Monte-Carlo estimate is available as
//! an independent check.

mod fixed;
mod mc;
mod simplex;

pub use fixed::{components_at, fixed_components, gls_jump, FixedComponent};
pub use mc::{dh_mc_oracle, MCEstimate, MC_MIN_SAMPLES, MC_SHARDS};
pub use simplex::simplex_pushforward;

use crate::exact::{PiecewisePoly, Rational};
use crate::linalg;
use crate::polytope::{triangulate_in_order, PolytopeError, VRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PushforwardError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("projection row {row} has {got} entries, polytope dimension is {dim}")]
    ProjectionShape { row: usize, got: usize, dim: usize },
    #[error("projection rows are linearly dependent")]
    DependentRows,
    #[error("projection has rank {0}; exact densities need rank 1, use the Monte-Carlo oracle")]
    RankNotOne(usize),
    #[error("projection is constant on the simplex")]
    ZeroProjection,
    #[error("direction is orthogonal to the edge {from:?} -> {to:?}; positive-dimensional fixed sets are not supported")]
    NonGeneric { from: Vec<String>, to: Vec<String> },
    #[error("fixed component at level {found} mixed with level {expected}")]
    MixedLevels { expected: Rational, found: Rational },
    #[error("isotropy weights must be nonzero")]
    ZeroWeight,
    #[error("Monte-Carlo oracle needs at least {min} samples, got {got}")]
    TooFewSamples { got: u64, min: u64 },
    #[error("sample point has {got} coordinates, projection rank is {k}")]
    SamplePointDim { got: usize, k: usize },
}

/// A momentum polytope in `R^n` with a `k x n` integer projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricModel {
    polytope: VRep,
    projection: Vec<Vec<i64>>,
}

impl ToricModel {
    pub fn new(polytope: VRep, projection: Vec<Vec<i64>>) -> Result<Self, PushforwardError> {
        let dim = polytope.dim();
        for (row, r) in projection.iter().enumerate() {
            if r.len() != dim {
                return Err(PushforwardError::ProjectionShape { row, got: r.len(), dim });
            }
        }
        let rows: Vec<Vec<Rational>> =
            projection.iter().map(|r| r.iter().map(|&c| crate::exact::int(c)).collect()).collect();
        if projection.is_empty() || linalg::rank(&rows) < projection.len() {
            return Err(PushforwardError::DependentRows);
        }
        Ok(ToricModel { polytope, projection })
    }

    /// Rank-one model along `w`.
    pub fn along(polytope: VRep, w: &[i64]) -> Result<Self, PushforwardError> {
        Self::new(polytope, vec![w.to_vec()])
    }

    pub fn polytope(&self) -> &VRep {
        &self.polytope
    }

    pub fn projection(&self) -> &[Vec<i64>] {
        &self.projection
    }

    /// Polytope dimension `n`.
    pub fn n(&self) -> usize {
        self.polytope.dim()
    }

    /// Projection rank `k`.
    pub fn k(&self) -> usize {
        self.projection.len()
    }

    /// The single direction of a rank-one model.
    pub fn direction(&self) -> Result<&[i64], PushforwardError> {
        match self.projection.as_slice() {
            [w] => Ok(w),
            rows => Err(PushforwardError::RankNotOne(rows.len())),
        }
    }
}

/// Exact Duistermaat–Heckman function of a rank-one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DHFunction {
    pub density: PiecewisePoly,
    /// Breakpoints of the canonical density: every place where the
    /// polynomial changes.
    pub walls: Vec<Rational>,
    pub n: usize,
    pub k: usize,
}

impl DHFunction {
    /// Wraps a density, taking every breakpoint of its canonical form as a
    /// wall.
    pub fn from_density(density: PiecewisePoly, n: usize, k: usize) -> Self {
        let density = density.canonicalize();
        let walls = density.breakpoints().to_vec();
        DHFunction { density, walls, n, k }
    }

    /// Walls strictly inside the support.
    pub fn interior_walls(&self) -> &[Rational] {
        match self.walls.len() {
            0..=2 => &[],
            l => &self.walls[1..l - 1],
        }
    }
}

/// Sums simplex push-forwards over the lexicographic placing triangulation.
pub fn dh_compute(model: &ToricModel) -> Result<DHFunction, PushforwardError> {
    let mut order: Vec<usize> = (0..model.polytope.vertices().len()).collect();
    order.sort_by(|&a, &b| model.polytope.vertices()[a].cmp(&model.polytope.vertices()[b]));
    dh_compute_in_order(model, &order)
}

/// Same as [`dh_compute`], triangulating with the given vertex insertion
/// order. The result does not depend on the order.
pub fn dh_compute_in_order(model: &ToricModel, order: &[usize]) -> Result<DHFunction, PushforwardError> {
    let w = model.direction()?;
    if w.iter().all(|&c| c == 0) {
        return Err(PolytopeError::ZeroDirection.into());
    }
    let n = model.n();
    if !model.polytope.is_full_dimensional() {
        return Ok(DHFunction::from_density(PiecewisePoly::zero(), n, 1));
    }
    let mut density = PiecewisePoly::zero();
    for s in triangulate_in_order(&model.polytope, order)? {
        density = density.add(&simplex_pushforward(&s, w)?);
    }
    Ok(DHFunction::from_density(density, n, 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeVerdict {
    Pass,
    Fail { piece: usize, degree: usize, bound: usize },
}

/// Every chamber polynomial must have degree at most `n - k`.
pub fn degree_check(f: &DHFunction) -> DegreeVerdict {
    let bound = f.n.saturating_sub(f.k);
    for (piece, p) in f.density.pieces().iter().enumerate() {
        if let crate::exact::Degree::Finite(degree) = p.degree() {
            if degree > bound {
                return DegreeVerdict::Fail { piece, degree, bound };
            }
        }
    }
    DegreeVerdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Interval, UniPoly};
    use crate::polytope::{volume, Point};

    fn cube(d: usize) -> VRep {
        let pts = (0..1u32 << d)
            .map(|m| (0..d).map(|k| int(((m >> k) & 1) as i64)).collect())
            .collect();
        VRep::from_points(d, pts).unwrap()
    }

    #[test]
    fn square_gives_triangle_density() {
        let f = dh_compute(&ToricModel::along(cube(2), &[1, 1]).unwrap()).unwrap();
        let expected = PiecewisePoly::new(
            vec![int(0), int(1), int(2)],
            vec![UniPoly::x(), UniPoly::from_ints(&[2, -1])],
        )
        .unwrap();
        assert_eq!(f.density, expected);
        assert_eq!(f.walls, vec![int(0), int(1), int(2)]);
        assert_eq!(f.interior_walls(), &[int(1)]);
        assert_eq!(degree_check(&f), DegreeVerdict::Pass);
    }

    #[test]
    fn cube_gives_quadratic_spline() {
        let f = dh_compute(&ToricModel::along(cube(3), &[1, 1, 1]).unwrap()).unwrap();
        // Irwin-Hall density for three uniforms, frozen from the convolution
        // t^2/2, (-2t^2 + 6t - 3)/2, (3 - t)^2/2
        let expected = PiecewisePoly::new(
            vec![int(0), int(1), int(2), int(3)],
            vec![
                UniPoly::new(vec![int(0), int(0), rat(1, 2)]),
                UniPoly::new(vec![rat(-3, 2), int(3), int(-1)]),
                UniPoly::new(vec![rat(9, 2), int(-3), rat(1, 2)]),
            ],
        )
        .unwrap();
        assert_eq!(f.density, expected);
        assert_eq!(f.density.total_mass(), int(1));
        assert_eq!(degree_check(&f), DegreeVerdict::Pass);
    }

    #[test]
    fn product_with_first_coordinate_is_constant() {
        // [0,1] x triangle, projected to the first coordinate
        let pts: Vec<Point> = [[0, 0], [1, 0], [0, 1]]
            .iter()
            .flat_map(|q| (0..2).map(move |x| vec![int(x), int(q[0]), int(q[1])]))
            .collect();
        let p = VRep::from_points(3, pts).unwrap();
        let f = dh_compute(&ToricModel::along(p, &[1, 0, 0]).unwrap()).unwrap();
        assert_eq!(f.density, PiecewisePoly::single(int(0), int(1), UniPoly::constant(rat(1, 2))));
    }

    #[test]
    fn mass_matches_volume_for_a_cut_polytope() {
        let p = crate::polytope::cut(
            &cube(3),
            &[crate::polytope::Halfspace::from_ints(&[-1, -1, -2], rat(-5, 2)).unwrap()],
        )
        .unwrap();
        let f = dh_compute(&ToricModel::along(p.clone(), &[1, 2, 5]).unwrap()).unwrap();
        assert_eq!(f.density.integrate(&Interval::real_line()), volume(&p));
    }

    #[test]
    fn degree_check_rejects_cubic_piece() {
        let f = DHFunction::from_density(
            PiecewisePoly::single(int(0), int(1), UniPoly::from_ints(&[0, 0, 0, 1])),
            3,
            1,
        );
        assert_eq!(degree_check(&f), DegreeVerdict::Fail { piece: 0, degree: 3, bound: 2 });
    }

    #[test]
    fn rank_two_is_refused() {
        let m = ToricModel::new(cube(2), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(dh_compute(&m), Err(PushforwardError::RankNotOne(2)));
        assert!(ToricModel::new(cube(2), vec![vec![1, 1], vec![2, 2]]).is_err());
    }
}
