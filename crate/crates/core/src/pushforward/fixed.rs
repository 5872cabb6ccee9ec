use super::{PushforwardError, ToricModel};
use crate::exact::{int, Rational, UniPoly};
use crate::linalg;
use crate::polytope::{placing_triangulation, AffineHull, Point};
use num::{One, Signed, Zero};

/// Fixed component of the circle generated by the projection direction:
/// its momentum level, the isotropy weights on its normal bundle and the
/// volume of its reduced space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub level: Rational,
    pub weights: Vec<Rational>,
    pub reduced_volume: Rational,
}

impl FixedComponent {
    pub fn new(level: Rational, weights: Vec<Rational>, reduced_volume: Rational) -> Result<Self, PushforwardError> {
        if weights.iter().any(Zero::is_zero) {
            return Err(PushforwardError::ZeroWeight);
        }
        Ok(FixedComponent { level, weights, reduced_volume })
    }

    /// Half the real codimension.
    pub fn d(&self) -> usize {
        self.weights.len()
    }

    /// `reduced_volume * t^{d-1} / ((d-1)! * prod weights)`
    pub fn jump_term(&self) -> UniPoly {
        let d = self.d();
        if d == 0 {
            return UniPoly::zero();
        }
        let prod: Rational = self.weights.iter().product();
        let fact: Rational = (1..d as i64).map(int).product();
        UniPoly::monomial(&self.reduced_volume / (prod * fact), d - 1)
    }
}

fn show(p: &Point) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

/// Fixed points of the circle `w` on the toric model, one per polytope
/// vertex.
///
/// At a vertex `v` with primitive edge generators `e_1..e_n` the weights are
/// `<w, e_i>` and the reduced volume is the lattice multiplicity
/// `|det(e_1..e_n)|` (1 at a smooth vertex). A vertex with more than `n`
/// edges has its tangent cone split into simplicial cones along existing
/// edges; each cone is reported as its own component at the same level.
///
/// The direction must pair nontrivially with every edge.
pub fn fixed_components(model: &ToricModel) -> Result<Vec<FixedComponent>, PushforwardError> {
    let w: Vec<Rational> = model.direction()?.iter().map(|&c| int(c)).collect();
    let p = model.polytope();
    let n = p.dim();
    let verts = p.vertices();
    let facets = p.facets()?;
    let edges = p.edges()?;
    for &(i, j) in &edges {
        if linalg::dot(&w, &linalg::sub(&verts[j], &verts[i])).is_zero() {
            return Err(PushforwardError::NonGeneric { from: show(&verts[i]), to: show(&verts[j]) });
        }
    }
    let mut out = Vec::new();
    for (vi, v) in verts.iter().enumerate() {
        let level = linalg::dot(&w, v);
        let rays: Vec<Vec<Rational>> = edges
            .iter()
            .filter_map(|&(i, j)| match (i == vi, j == vi) {
                (true, _) => Some(j),
                (_, true) => Some(i),
                _ => None,
            })
            .map(|other| linalg::to_rationals(&linalg::primitive_integer(&linalg::sub(&verts[other], v))))
            .collect();
        let cones: Vec<Vec<usize>> = if rays.len() == n {
            vec![(0..n).collect()]
        } else {
            // slice the tangent cone by a hyperplane positive on every ray
            let inward: Vec<Rational> = facets
                .iter()
                .filter(|h| h.slack(v).is_zero())
                .fold(vec![Rational::zero(); n], |acc, h| {
                    acc.iter().zip(h.normal_rational()).map(|(a, b)| a + b).collect()
                });
            let section: Vec<Point> = rays
                .iter()
                .map(|r| {
                    let s = Rational::one() / linalg::dot(&inward, r);
                    r.iter().map(|x| x * &s).collect()
                })
                .collect();
            let hull = AffineHull::of(&section);
            let projected = hull.project_all(&section);
            let mut order: Vec<usize> = (0..projected.len()).collect();
            order.sort_by(|&a, &b| projected[a].cmp(&projected[b]));
            placing_triangulation(&projected, &order)?
        };
        for cone in cones {
            let m: Vec<Vec<Rational>> = cone.iter().map(|&i| rays[i].clone()).collect();
            let mut weights: Vec<Rational> = m.iter().map(|r| linalg::dot(&w, r)).collect();
            weights.sort();
            out.push(FixedComponent::new(level.clone(), weights, linalg::det(&m).abs())?);
        }
    }
    Ok(out)
}

/// Leading jump `g_+(a + s) - g_-(a + s)` across the level `a`, as a
/// polynomial in the offset `s`:
/// `sum reduced_volume * s^{d-1} / ((d-1)! * prod weights)`.
pub fn gls_jump(components: &[FixedComponent], a: &Rational) -> Result<UniPoly, PushforwardError> {
    let mut total = UniPoly::zero();
    for c in components {
        if &c.level != a {
            return Err(PushforwardError::MixedLevels { expected: a.clone(), found: c.level.clone() });
        }
        total = &total + &c.jump_term();
    }
    Ok(total)
}

/// The components sitting at level `a`.
pub fn components_at<'a>(components: &'a [FixedComponent], a: &Rational) -> impl Iterator<Item = &'a FixedComponent> {
    let a = a.clone();
    components.iter().filter(move |c| c.level == a)
}
