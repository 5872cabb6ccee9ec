//! Exact log-concavity certificates for piecewise-polynomial densities.
//!
//! A positive density `g` is log-concave on a piece iff
//! `(g')^2 - g g'' >= 0` there. Across a breakpoint it must be continuous
//! and its derivative may only drop (`g_+' <= g_-'`). The support must be a
//! single interval on whose interior `g` stays positive.

mod circle;

pub use circle::{
    circle_classify, hamiltonian_decision, CircleClass, CircleDensity, CircleError, CriticalLevelData,
    HamiltonianDecision, HamiltonianReason,
};

use crate::exact::{count_roots, int, sign_on_interval, Interval, PiecewisePoly, Rational, SignVerdict, UniPoly};
use crate::pushforward::DHFunction;
use num::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    LogConcave,
    StrictlyLogConcave,
    NotLogConcave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    PieceFailure,
    WallFailure,
    SupportGap,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub location: Rational,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogConcavityVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
}

impl LogConcavityVerdict {
    fn holds(strict: bool) -> Self {
        let status = if strict { Status::StrictlyLogConcave } else { Status::LogConcave };
        LogConcavityVerdict { status, witness: None }
    }

    fn fails(location: Rational, reason: FailureReason) -> Self {
        LogConcavityVerdict { status: Status::NotLogConcave, witness: Some(Witness { location, reason }) }
    }

    /// True for both `LogConcave` and `StrictlyLogConcave`.
    pub fn is_log_concave(&self) -> bool {
        self.status != Status::NotLogConcave
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogConcaveError {
    #[error("density is negative at {0}")]
    Negative(Rational),
    #[error("density is identically zero")]
    ZeroDensity,
    #[error("{0} is not a wall of the density")]
    NotAWall(Rational),
}

/// `(g')^2 - g g''`, nonnegative exactly where `log g` is concave.
pub fn log_concavity_discriminant(g: &UniPoly) -> UniPoly {
    let d1 = g.derivative();
    let d2 = d1.derivative();
    &(&d1 * &d1) - &(g * &d2)
}

/// A rational point of `(a, b)` where `p` has the requested sign, assuming
/// one exists. Scans dyadic points, which hit every open sign region.
pub(crate) fn point_with_sign(p: &UniPoly, a: &Rational, b: &Rational, positive: bool) -> Rational {
    let mut denom = 2i64;
    loop {
        for j in (1..denom).step_by(2) {
            let t = a + (b - a) * crate::exact::rat(j, denom);
            let v = p.eval(&t);
            if (positive && v.is_positive()) || (!positive && v.is_negative()) {
                return t;
            }
        }
        denom *= 2;
    }
}

/// A rational point within `(b - a) / 2^16` of a root of `p` in `(a, b)`.
fn near_root(p: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let (mut lo, mut hi) = (a.clone(), b.clone());
    for _ in 0..16 {
        let mid = (&lo + &hi) / int(2);
        if p.eval(&mid).is_zero() {
            return mid;
        }
        if count_roots(p, &Interval::open(lo.clone(), mid.clone())) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / int(2)
}

/// Checks that no piece takes a negative value.
pub(crate) fn check_nonnegative(f: &PiecewisePoly) -> Result<(), LogConcaveError> {
    for (a, b, p) in f.intervals() {
        match sign_on_interval(p, &Interval::open(a.clone(), b.clone())) {
            SignVerdict::Mixed { negative, .. } => return Err(LogConcaveError::Negative(negative)),
            SignVerdict::NonPositive => return Err(LogConcaveError::Negative(point_with_sign(p, a, b, false))),
            _ => {}
        }
    }
    Ok(())
}

/// Positivity on the open piece, then the discriminant sign. Returns the
/// failure, or whether the discriminant is identically zero.
pub(crate) fn check_piece(a: &Rational, b: &Rational, g: &UniPoly) -> Result<bool, Witness> {
    if g.is_zero() {
        return Err(Witness { location: a.clone(), reason: FailureReason::SupportGap });
    }
    let open = Interval::open(a.clone(), b.clone());
    if count_roots(g, &open) > 0 {
        return Err(Witness { location: near_root(g, a, b), reason: FailureReason::SupportGap });
    }
    let disc = log_concavity_discriminant(g);
    match sign_on_interval(&disc, &open) {
        SignVerdict::NonNegative => Ok(false),
        SignVerdict::Zero => Ok(true),
        SignVerdict::Mixed { negative, .. } => Err(Witness { location: negative, reason: FailureReason::PieceFailure }),
        SignVerdict::NonPositive => Err(Witness {
            location: point_with_sign(&disc, a, b, false),
            reason: FailureReason::PieceFailure,
        }),
    }
}

/// Continuity with a positive value and a derivative drop at `b`, given the
/// polynomials on either side.
pub(crate) fn check_wall(b: &Rational, left: &UniPoly, right: &UniPoly) -> Result<(), Witness> {
    let (l0, r0) = (left.eval(b), right.eval(b));
    if !l0.is_positive() || !r0.is_positive() {
        return Err(Witness { location: b.clone(), reason: FailureReason::SupportGap });
    }
    if l0 != r0 {
        return Err(Witness { location: b.clone(), reason: FailureReason::WallFailure });
    }
    if right.derivative().eval(b) > left.derivative().eval(b) {
        return Err(Witness { location: b.clone(), reason: FailureReason::WallFailure });
    }
    Ok(())
}

/// Log-concavity verdict for a piecewise-polynomial density on the line.
///
/// Scans left to right and reports the first failure. The verdict is
/// `StrictlyLogConcave` when every piece has a discriminant that is not
/// identically zero.
pub fn logconcave_density(f: &PiecewisePoly) -> Result<LogConcavityVerdict, LogConcaveError> {
    let f = f.canonicalize();
    if f.is_zero() {
        return Err(LogConcaveError::ZeroDensity);
    }
    check_nonnegative(&f)?;
    let mut strict = true;
    let pieces: Vec<_> = f.intervals().collect();
    for (i, (a, b, g)) in pieces.iter().enumerate() {
        match check_piece(a, b, g) {
            Ok(flat) => strict &= !flat,
            Err(w) => return Ok(LogConcavityVerdict::fails(w.location, w.reason)),
        }
        if let Some((_, _, next)) = pieces.get(i + 1) {
            if let Err(w) = check_wall(b, g, next) {
                return Ok(LogConcavityVerdict::fails(w.location, w.reason));
            }
        }
    }
    Ok(LogConcavityVerdict::holds(strict))
}

pub fn logconcave_on_line(f: &DHFunction) -> Result<LogConcavityVerdict, LogConcaveError> {
    logconcave_density(&f.density)
}

/// `g_+'(a) <= g_-'(a)` at a wall `a` of `f`.
pub fn graham_wall_check(f: &DHFunction, a: &Rational) -> Result<bool, LogConcaveError> {
    if !f.walls.contains(a) {
        return Err(LogConcaveError::NotAWall(a.clone()));
    }
    let (left, right) = f.density.one_sided_derivatives(a, 1);
    Ok(right <= left)
}

/// Midpoint Prékopa–Leindler check on intervals: with `M = (A + B) / 2`,
/// tests `P(M)^2 >= P(A) P(B)` exactly, i.e. the measure inequality at
/// `t = 1/2` after squaring.
pub fn midpoint_mass_inequality(f: &PiecewisePoly, a: (&Rational, &Rational), b: (&Rational, &Rational)) -> bool {
    let two = int(2);
    let mid = Interval::closed((a.0 + b.0) / &two, (a.1 + b.1) / &two);
    let pa = f.integrate(&Interval::closed(a.0.clone(), a.1.clone()));
    let pb = f.integrate(&Interval::closed(b.0.clone(), b.1.clone()));
    let pm = f.integrate(&mid);
    &pm * &pm >= pa * pb
}
