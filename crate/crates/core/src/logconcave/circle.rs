//! Densities on the circle `R/Z` and the Hamiltonian decision chain.
//!
//! Points are represented in `[0, 1)` through the covering map
//! `t -> exp(2 pi i t)`. Log-concavity is checked in one canonical chart per
//! point: the chart centred on the point itself, which for the seam `0 = 1`
//! means continuing the last piece across `1` by translation.

use super::{check_nonnegative, check_piece, check_wall, LogConcaveError, Witness};
use crate::exact::{int, PiecewisePoly, Rational, UniPoly};
use crate::pushforward::{gls_jump, FixedComponent};
use num::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircleError {
    #[error("circle density must live on [0, 1], found support [{lo}, {hi}]")]
    OutsidePeriod { lo: Rational, hi: Rational },
    #[error("circle density is negative at {0}")]
    Negative(Rational),
    #[error("critical level {0} is not in [0, 1)")]
    LevelOutOfRange(Rational),
    #[error("component at level {found} filed under critical level {level}")]
    ComponentLevel { level: Rational, found: Rational },
}

/// A nonnegative piecewise-polynomial density on `R/Z` with period 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleDensity {
    density: PiecewisePoly,
}

impl CircleDensity {
    pub fn new(density: PiecewisePoly) -> Result<Self, CircleError> {
        let density = density.canonicalize();
        if let Some((lo, hi)) = density.support() {
            if lo < Rational::zero() || hi > Rational::one() {
                return Err(CircleError::OutsidePeriod { lo, hi });
            }
        }
        check_nonnegative(&density).map_err(|e| match e {
            LogConcaveError::Negative(t) => CircleError::Negative(t),
            _ => unreachable!("nonnegativity check only reports negativity"),
        })?;
        Ok(CircleDensity { density })
    }

    pub fn constant(c: Rational) -> Result<Self, CircleError> {
        Self::new(PiecewisePoly::single(int(0), int(1), UniPoly::constant(c)))
    }

    pub fn density(&self) -> &PiecewisePoly {
        &self.density
    }

    pub fn period(&self) -> Rational {
        Rational::one()
    }

    fn wrap(t: &Rational) -> Rational {
        t - t.floor()
    }

    /// Polynomial in force just right of `a`, in the chart around `a`.
    fn right_piece(&self, a: &Rational) -> UniPoly {
        self.density.piece_right_of(&Self::wrap(a))
    }

    /// Polynomial in force just left of `a`, in the chart around `a`. At the
    /// seam the last piece is translated back by one period.
    fn left_piece(&self, a: &Rational) -> UniPoly {
        let a = Self::wrap(a);
        if a.is_zero() {
            self.density.piece_left_of(&int(1)).compose_affine(&int(1), &int(1))
        } else {
            self.density.piece_left_of(&a)
        }
    }

    /// Values just right of 0 and just left of 1, which must agree for the
    /// periodic extension to be continuous at the seam.
    pub fn seam_values(&self) -> (Rational, Rational) {
        (self.right_piece(&int(0)).eval(&int(0)), self.density.piece_left_of(&int(1)).eval(&int(1)))
    }

    /// `right(a + s) - left(a + s)` across the circle point `a`.
    pub fn jump_at(&self, a: &Rational) -> UniPoly {
        let a = Self::wrap(a);
        &self.right_piece(&a).shift(&a) - &self.left_piece(&a).shift(&a)
    }

    /// `t -> f(t - r)` on the circle.
    pub fn rotate(&self, r: &Rational) -> Self {
        let r = Self::wrap(r);
        let mut segs: Vec<(Rational, Rational, UniPoly)> = Vec::new();
        for (a, b, p) in self.density.intervals() {
            let (lo, hi) = (a + &r, b + &r);
            let moved = p.compose_affine(&int(1), &-&r);
            let one = int(1);
            if hi <= one {
                segs.push((lo, hi, moved));
            } else if lo >= one {
                segs.push((lo - &one, hi - &one, p.compose_affine(&int(1), &(&one - &r))));
            } else {
                segs.push((lo, one.clone(), moved));
                segs.push((int(0), hi - &one, p.compose_affine(&int(1), &(&one - &r))));
            }
        }
        segs.retain(|(lo, hi, _)| lo < hi);
        segs.sort_by(|x, y| x.0.cmp(&y.0));
        let mut breaks = vec![int(0)];
        let mut pieces = Vec::new();
        for (lo, hi, p) in segs {
            if &lo > breaks.last().unwrap() {
                pieces.push(UniPoly::zero());
                breaks.push(lo);
            }
            pieces.push(p);
            breaks.push(hi);
        }
        if breaks.last().unwrap() < &int(1) {
            pieces.push(UniPoly::zero());
            breaks.push(int(1));
        }
        let density = if pieces.is_empty() { PiecewisePoly::zero() } else { PiecewisePoly::new(breaks, pieces).unwrap() };
        CircleDensity { density: density.canonicalize() }
    }

    fn covers_circle(&self) -> bool {
        self.density.support() == Some((int(0), int(1))) && self.density.pieces().iter().all(|p| !p.is_zero())
    }

    fn is_constant(&self) -> bool {
        self.density.pieces().len() == 1
            && self.density.support() == Some((int(0), int(1)))
            && self.density.pieces()[0].is_constant()
            && !self.density.pieces()[0].is_zero()
    }

    /// First chart-wise log-concavity failure going round the circle from the
    /// seam, with the seam itself checked first.
    pub fn log_concavity_failure(&self) -> Option<Witness> {
        let pieces: Vec<_> = self.density.intervals().collect();
        if self.covers_circle() {
            if let Err(w) = check_wall(&int(0), &self.left_piece(&int(0)), &self.right_piece(&int(0))) {
                return Some(w);
            }
        }
        for (i, (a, b, g)) in pieces.iter().enumerate() {
            if let Err(w) = check_piece(a, b, g) {
                return Some(w);
            }
            if let Some((_, _, next)) = pieces.get(i + 1) {
                if let Err(w) = check_wall(b, g, next) {
                    return Some(w);
                }
            }
        }
        None
    }

    /// Open-question flag: every piece passes `(g')^2 - g g'' >= 0`. Walls are
    /// not considered.
    fn pieces_log_concave(&self) -> bool {
        self.density.intervals().all(|(a, b, g)| check_piece(a, b, g).is_ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircleClass {
    Constant,
    ProperSupport,
    /// Positive everywhere and not constant; `failure` is the first
    /// log-concavity failure found, which periodicity forces to exist.
    FullSupportNonConstant { failure: Option<Witness> },
}

impl CircleClass {
    pub fn name(&self) -> &'static str {
        match self {
            CircleClass::Constant => "Constant",
            CircleClass::ProperSupport => "ProperSupport",
            CircleClass::FullSupportNonConstant { .. } => "FullSupportNonConstant",
        }
    }
}

pub fn circle_classify(f: &CircleDensity) -> CircleClass {
    if f.is_constant() {
        CircleClass::Constant
    } else if !f.covers_circle() {
        CircleClass::ProperSupport
    } else {
        CircleClass::FullSupportNonConstant { failure: f.log_concavity_failure() }
    }
}

/// Fixed-point data at one critical level of a circle-valued momentum map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalLevelData {
    level: Rational,
    components: Vec<FixedComponent>,
}

impl CriticalLevelData {
    /// Component levels are compared modulo 1.
    pub fn new(level: Rational, components: Vec<FixedComponent>) -> Result<Self, CircleError> {
        if level < Rational::zero() || level >= Rational::one() {
            return Err(CircleError::LevelOutOfRange(level));
        }
        let mut normalized = Vec::with_capacity(components.len());
        for c in components {
            let l = CircleDensity::wrap(&c.level);
            if l != level {
                return Err(CircleError::ComponentLevel { level, found: c.level });
            }
            normalized.push(FixedComponent { level: l, ..c });
        }
        Ok(CriticalLevelData { level, components: normalized })
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    /// Predicted leading jump across the level.
    pub fn predicted_jump(&self) -> UniPoly {
        gls_jump(&self.components, &self.level).expect("levels validated on construction")
    }

    fn strict_drop(&self) -> bool {
        !self.components.is_empty()
            && self.components.iter().all(|c| {
                c.d() == 2 && c.weights[0].is_negative() != c.weights[1].is_negative()
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HamiltonianReason {
    /// The circle-valued map misses an arc, so it lifts to a real-valued one.
    ProperSupport,
    /// Every wall drops the derivative strictly and each chamber is
    /// log-concave, which periodicity cannot accommodate.
    StrictWallDrops,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamiltonianDecision {
    Hamiltonian(HamiltonianReason),
    NonHamiltonianCandidate,
    Inconsistent { level: Rational, report: String },
}

impl HamiltonianDecision {
    pub fn name(&self) -> &'static str {
        match self {
            HamiltonianDecision::Hamiltonian(_) => "Hamiltonian",
            HamiltonianDecision::NonHamiltonianCandidate => "NonHamiltonianCandidate",
            HamiltonianDecision::Inconsistent { .. } => "Inconsistent",
        }
    }
}

fn consistency(f: &CircleDensity, c: &CriticalLevelData) -> Result<(), String> {
    let measured = f.jump_at(&c.level);
    if measured.is_zero() {
        return Err(format!("declared critical level {} but the density is smooth there", c.level));
    }
    let predicted = c.predicted_jump();
    if measured.lowest_term() != predicted.lowest_term() {
        return Err(format!(
            "jump across {} is {} but the fixed-point data predicts {}",
            c.level, measured, predicted
        ));
    }
    Ok(())
}

/// Runs the decision chain: consistency of the declared critical levels,
/// then proper support, then the constant case, then strict wall drops.
pub fn hamiltonian_decision(f: &CircleDensity, criticals: &[CriticalLevelData]) -> HamiltonianDecision {
    for c in criticals {
        if let Err(report) = consistency(f, c) {
            return HamiltonianDecision::Inconsistent { level: c.level.clone(), report };
        }
    }
    match circle_classify(f) {
        CircleClass::ProperSupport => HamiltonianDecision::Hamiltonian(HamiltonianReason::ProperSupport),
        CircleClass::Constant => HamiltonianDecision::NonHamiltonianCandidate,
        CircleClass::FullSupportNonConstant { .. } => {
            if !criticals.is_empty() && criticals.iter().all(CriticalLevelData::strict_drop) && f.pieces_log_concave() {
                HamiltonianDecision::Hamiltonian(HamiltonianReason::StrictWallDrops)
            } else {
                HamiltonianDecision::NonHamiltonianCandidate
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::logconcave::FailureReason;

    fn triangle_wave() -> CircleDensity {
        CircleDensity::new(
            PiecewisePoly::new(
                vec![int(0), rat(1, 2), int(1)],
                vec![UniPoly::from_ints(&[1, 1]), UniPoly::from_ints(&[2, -1])],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn tent() -> CircleDensity {
        CircleDensity::new(
            PiecewisePoly::new(
                vec![int(0), rat(1, 4), rat(1, 2)],
                vec![UniPoly::new(vec![int(0), rat(1, 2)]), UniPoly::new(vec![rat(1, 4), rat(-1, 2)])],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(circle_classify(&CircleDensity::constant(int(3)).unwrap()), CircleClass::Constant);
        let half = CircleDensity::new(PiecewisePoly::single(int(0), rat(1, 2), UniPoly::from_ints(&[1]))).unwrap();
        assert_eq!(circle_classify(&half), CircleClass::ProperSupport);
        let w = triangle_wave();
        assert_eq!(w.seam_values(), (int(1), int(1)));
        assert_eq!(
            circle_classify(&w),
            CircleClass::FullSupportNonConstant {
                failure: Some(Witness { location: int(0), reason: FailureReason::WallFailure })
            }
        );
    }

    #[test]
    fn interior_zero_piece_is_proper_support() {
        let f = CircleDensity::new(
            PiecewisePoly::new(
                vec![int(0), rat(1, 3), rat(2, 3), int(1)],
                vec![UniPoly::from_ints(&[1]), UniPoly::zero(), UniPoly::from_ints(&[1])],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(circle_classify(&f), CircleClass::ProperSupport);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            CircleDensity::new(PiecewisePoly::single(int(0), int(2), UniPoly::from_ints(&[1]))),
            Err(CircleError::OutsidePeriod { .. })
        ));
        assert!(matches!(CircleDensity::constant(int(-1)), Err(CircleError::Negative(_))));
        let c = FixedComponent::new(rat(5, 4), vec![int(-1), int(1)], int(1)).unwrap();
        assert!(CriticalLevelData::new(rat(1, 4), vec![c.clone()]).is_ok());
        assert!(CriticalLevelData::new(rat(1, 2), vec![c]).is_err());
        assert!(CriticalLevelData::new(int(1), vec![]).is_err());
    }

    #[test]
    fn rotation_preserves_class() {
        for f in [triangle_wave(), tent(), CircleDensity::constant(int(3)).unwrap()] {
            for r in [rat(1, 3), rat(1, 2), rat(3, 4), rat(-7, 5)] {
                let g = f.rotate(&r);
                assert_eq!(circle_classify(&g).name(), circle_classify(&f).name());
                assert_eq!(g.rotate(&-&r), f);
            }
        }
    }

    #[test]
    fn decision_examples() {
        let half = CircleDensity::new(PiecewisePoly::single(int(0), rat(1, 2), UniPoly::from_ints(&[1]))).unwrap();
        assert_eq!(hamiltonian_decision(&half, &[]), HamiltonianDecision::Hamiltonian(HamiltonianReason::ProperSupport));
        let flat = CircleDensity::constant(int(3)).unwrap();
        assert_eq!(hamiltonian_decision(&flat, &[]), HamiltonianDecision::NonHamiltonianCandidate);

        let c = CriticalLevelData::new(rat(1, 4), vec![FixedComponent::new(rat(1, 4), vec![int(-1), int(1)], int(1)).unwrap()])
            .unwrap();
        let f = tent();
        assert_eq!(f.jump_at(&rat(1, 4)), UniPoly::new(vec![int(0), int(-1)]));
        assert_eq!(c.predicted_jump(), f.jump_at(&rat(1, 4)));
        let (left, right) = f.density().one_sided_derivatives(&rat(1, 4), 1);
        assert_eq!(&right - &left, int(-1));
        assert_eq!(hamiltonian_decision(&f, &[c]), HamiltonianDecision::Hamiltonian(HamiltonianReason::ProperSupport));
    }

    #[test]
    fn smooth_declared_level_is_inconsistent() {
        let flat = CircleDensity::constant(int(3)).unwrap();
        let c = CriticalLevelData::new(rat(1, 4), vec![FixedComponent::new(rat(1, 4), vec![int(-1), int(1)], int(1)).unwrap()])
            .unwrap();
        match hamiltonian_decision(&flat, &[c]) {
            HamiltonianDecision::Inconsistent { level, report } => {
                assert_eq!(level, rat(1, 4));
                assert!(report.contains("1/4"));
            }
            other => panic!("expected Inconsistent, got {other:?}"),
        }
        // wrong predicted sign
        let c = CriticalLevelData::new(rat(1, 4), vec![FixedComponent::new(rat(1, 4), vec![int(1), int(1)], int(1)).unwrap()])
            .unwrap();
        assert!(matches!(hamiltonian_decision(&tent(), &[c]), HamiltonianDecision::Inconsistent { .. }));
    }

    #[test]
    fn seam_jump_uses_translated_last_piece() {
        let w = triangle_wave();
        // right piece 1 + t, left piece 2 - (t + 1) = 1 - t
        assert_eq!(w.jump_at(&int(0)), UniPoly::new(vec![int(0), int(2)]));
        assert_eq!(w.jump_at(&int(1)), w.jump_at(&int(0)));
    }
}
