use super::interval::{Bound, Interval};
use super::poly::{Degree, UniPoly};
use super::rational::Rational;
use num::{One, Zero};

/// A compactly supported piecewise polynomial on rational breakpoints.
///
/// `pieces[i]` is the polynomial on the open interval
/// `(breakpoints[i], breakpoints[i+1])`; the function is zero outside
/// `[breakpoints[0], breakpoints[last]]`. The zero function has no
/// breakpoints at all.
///
/// Point evaluation is right-continuous: at a breakpoint the value of the
/// piece to the right is returned (zero at the last breakpoint).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiecewisePoly {
    breakpoints: Vec<Rational>,
    pieces: Vec<UniPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PiecewiseError {
    #[error("expected {expected} pieces for {breakpoints} breakpoints, got {got}")]
    PieceCount { breakpoints: usize, expected: usize, got: usize },
    #[error("breakpoints not strictly increasing at index {0}")]
    NotIncreasing(usize),
}

impl PiecewisePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<UniPoly>) -> Result<Self, PiecewiseError> {
        let expected = breakpoints.len().saturating_sub(1);
        if pieces.len() != expected || breakpoints.len() == 1 {
            return Err(PiecewiseError::PieceCount {
                breakpoints: breakpoints.len(),
                expected,
                got: pieces.len(),
            });
        }
        if let Some(i) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
            return Err(PiecewiseError::NotIncreasing(i + 1));
        }
        Ok(PiecewisePoly { breakpoints, pieces })
    }

    /// A single polynomial on `[a, b]`, zero elsewhere. Panics unless `a < b`.
    pub fn single(a: Rational, b: Rational, p: UniPoly) -> Self {
        Self::new(vec![a, b], vec![p]).expect("single piece needs a < b")
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[UniPoly] {
        &self.pieces
    }

    /// `(lo, hi, polynomial)` for every piece, left to right.
    pub fn intervals(&self) -> impl Iterator<Item = (&Rational, &Rational, &UniPoly)> {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| (&w[0], &w[1], p))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(UniPoly::is_zero)
    }

    /// Closed hull of the breakpoints, or `None` for the zero function.
    pub fn support(&self) -> Option<(Rational, Rational)> {
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(a), Some(b)) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }

    pub fn max_degree(&self) -> Degree {
        self.pieces.iter().map(UniPoly::degree).max().unwrap_or(Degree::NegInfinity)
    }

    /// Index of the piece whose half-open interval `[b_i, b_{i+1})` holds `t`.
    fn right_index(&self, t: &Rational) -> Option<usize> {
        let n = self.breakpoints.len();
        if n < 2 || t < &self.breakpoints[0] || t >= &self.breakpoints[n - 1] {
            return None;
        }
        // last breakpoint <= t
        let idx = self.breakpoints.partition_point(|b| b <= t);
        Some(idx - 1)
    }

    /// Index of the piece whose half-open interval `(b_i, b_{i+1}]` holds `t`.
    fn left_index(&self, t: &Rational) -> Option<usize> {
        let n = self.breakpoints.len();
        if n < 2 || t <= &self.breakpoints[0] || t > &self.breakpoints[n - 1] {
            return None;
        }
        let idx = self.breakpoints.partition_point(|b| b < t);
        Some(idx - 1)
    }

    /// The polynomial governing the function immediately right of `t`
    /// (zero polynomial outside the support).
    pub fn piece_right_of(&self, t: &Rational) -> UniPoly {
        self.right_index(t).map(|i| self.pieces[i].clone()).unwrap_or_default()
    }

    /// The polynomial governing the function immediately left of `t`.
    pub fn piece_left_of(&self, t: &Rational) -> UniPoly {
        self.left_index(t).map(|i| self.pieces[i].clone()).unwrap_or_default()
    }

    /// Right-continuous evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        match self.right_index(t) {
            Some(i) => self.pieces[i].eval(t),
            None => Rational::zero(),
        }
    }

    /// Piecewise derivative on the same breakpoints, canonicalized. Jumps at
    /// breakpoints contribute nothing.
    pub fn derivative(&self) -> Self {
        PiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(UniPoly::derivative).collect(),
        }
        .canonicalize()
    }

    /// `(left, right)` one-sided derivatives of the given order at `b`.
    ///
    /// The zero extension is used outside the support, so both values are
    /// zero when `b` lies outside the closed support.
    pub fn one_sided_derivatives(&self, b: &Rational, order: usize) -> (Rational, Rational) {
        let left = self.piece_left_of(b).nth_derivative(order).eval(b);
        let right = self.piece_right_of(b).nth_derivative(order).eval(b);
        (left, right)
    }

    /// `q(s) = right(b + s) - left(b + s)` where `left` is the polynomial on
    /// the piece ending at `b`, continued across it.
    pub fn jump_at(&self, b: &Rational) -> UniPoly {
        &self.piece_right_of(b).shift(b) - &self.piece_left_of(b).shift(b)
    }

    /// Exact definite integral over `interval`. Endpoint openness is
    /// irrelevant for the integral; unbounded intervals are fine because the
    /// function is compactly supported.
    pub fn integrate(&self, interval: &Interval) -> Rational {
        let mut total = Rational::zero();
        for (a, b, p) in self.intervals() {
            let lo = match interval.lo().value() {
                Some(v) if v > a => v,
                _ => a,
            };
            let hi = match interval.hi().value() {
                Some(v) if v < b => v,
                _ => b,
            };
            if lo < hi {
                total += p.integrate(lo, hi);
            }
        }
        total
    }

    pub fn total_mass(&self) -> Rational {
        self.integrate(&Interval::real_line())
    }

    /// Merges adjacent pieces carrying the same polynomial and trims zero
    /// pieces at either end of the support.
    pub fn canonicalize(&self) -> Self {
        let mut bps: Vec<Rational> = Vec::new();
        let mut pieces: Vec<UniPoly> = Vec::new();
        for (a, b, p) in self.intervals() {
            match pieces.last() {
                Some(last) if last == p => {
                    *bps.last_mut().unwrap() = b.clone();
                }
                _ => {
                    if bps.is_empty() {
                        bps.push(a.clone());
                    }
                    pieces.push(p.clone());
                    bps.push(b.clone());
                }
            }
        }
        while pieces.first().is_some_and(UniPoly::is_zero) {
            pieces.remove(0);
            bps.remove(0);
        }
        while pieces.last().is_some_and(UniPoly::is_zero) {
            pieces.pop();
            bps.pop();
        }
        if pieces.is_empty() {
            return Self::zero();
        }
        PiecewisePoly { breakpoints: bps, pieces }
    }

    fn merged_breakpoints(&self, other: &Self) -> Vec<Rational> {
        let mut all: Vec<Rational> =
            self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        all.sort();
        all.dedup();
        all
    }

    /// Pointwise sum, canonicalized.
    pub fn add(&self, other: &Self) -> Self {
        let bps = self.merged_breakpoints(other);
        if bps.len() < 2 {
            return Self::zero();
        }
        let pieces = bps
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / Rational::from_integer(2.into());
                &self.piece_right_of(&mid) + &other.piece_right_of(&mid)
            })
            .collect();
        PiecewisePoly { breakpoints: bps, pieces }.canonicalize()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
        }
        .canonicalize()
    }

    /// Piecewise product `self * other` (same support convention).
    pub fn mul(&self, other: &Self) -> Self {
        let bps = self.merged_breakpoints(other);
        if bps.len() < 2 {
            return Self::zero();
        }
        let pieces = bps
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / Rational::from_integer(2.into());
                &self.piece_right_of(&mid) * &other.piece_right_of(&mid)
            })
            .collect();
        PiecewisePoly { breakpoints: bps, pieces }.canonicalize()
    }

    /// Restriction to `[lo, hi]` (zero elsewhere), canonicalized.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Self {
        let mut bps: Vec<Rational> = self
            .breakpoints
            .iter()
            .filter(|b| *b > lo && *b < hi)
            .cloned()
            .collect();
        bps.insert(0, lo.clone());
        bps.push(hi.clone());
        if lo >= hi {
            return Self::zero();
        }
        let two = Rational::from_integer(2.into());
        let pieces = bps
            .windows(2)
            .map(|w| self.piece_right_of(&((&w[0] + &w[1]) / &two)))
            .collect();
        PiecewisePoly { breakpoints: bps, pieces }.canonicalize()
    }

    /// `t -> f(alpha * t + beta)` for `alpha > 0`.
    pub fn compose_affine(&self, alpha: &Rational, beta: &Rational) -> Self {
        assert!(alpha > &Rational::zero(), "affine reparametrization needs alpha > 0");
        let inv = Rational::one() / alpha;
        PiecewisePoly {
            breakpoints: self.breakpoints.iter().map(|b| (b - beta) * &inv).collect(),
            pieces: self.pieces.iter().map(|p| p.compose_affine(alpha, beta)).collect(),
        }
    }

    /// Interval `[breakpoints[i], breakpoints[i+1]]` of piece `i` as an
    /// [`Interval`].
    pub fn piece_interval(&self, i: usize) -> Interval {
        Interval::new(
            Bound::Closed(self.breakpoints[i].clone()),
            Bound::Closed(self.breakpoints[i + 1].clone()),
        )
        .expect("breakpoints are increasing")
    }
}
