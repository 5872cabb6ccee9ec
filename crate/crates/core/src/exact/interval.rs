use super::rational::Rational;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Closed(Rational),
    Open(Rational),
    Unbounded,
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Closed(v) | Bound::Open(v) => Some(v),
            Bound::Unbounded => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }
}

/// A real interval with rational (or infinite) endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid interval: {0}")]
pub struct IntervalError(String);

impl Interval {
    /// Requires `lo <= hi`; a degenerate interval must be closed at both ends.
    pub fn new(lo: Bound, hi: Bound) -> Result<Self, IntervalError> {
        if let (Some(a), Some(b)) = (lo.value(), hi.value()) {
            if a > b {
                return Err(IntervalError(format!("{a} > {b}")));
            }
            if a == b && !(lo.is_closed() && hi.is_closed()) {
                return Err(IntervalError(format!("degenerate interval at {a} must be closed")));
            }
        }
        Ok(Interval { lo, hi })
    }

    /// `[a, b]`. Panics if `a > b`.
    pub fn closed(a: Rational, b: Rational) -> Self {
        Self::new(Bound::Closed(a), Bound::Closed(b)).expect("closed interval with lo > hi")
    }

    /// `(a, b)`. Panics unless `a < b`.
    pub fn open(a: Rational, b: Rational) -> Self {
        Self::new(Bound::Open(a), Bound::Open(b)).expect("open interval needs lo < hi")
    }

    pub fn point(a: Rational) -> Self {
        Self::closed(a.clone(), a)
    }

    pub fn real_line() -> Self {
        Interval { lo: Bound::Unbounded, hi: Bound::Unbounded }
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.value().is_some() && self.hi.value().is_some()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = match &self.lo {
            Bound::Closed(a) => t >= a,
            Bound::Open(a) => t > a,
            Bound::Unbounded => true,
        };
        let below = match &self.hi {
            Bound::Closed(b) => t <= b,
            Bound::Open(b) => t < b,
            Bound::Unbounded => true,
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Bound::Closed(a) => write!(f, "[{a}")?,
            Bound::Open(a) => write!(f, "({a}")?,
            Bound::Unbounded => write!(f, "(-inf")?,
        }
        match &self.hi {
            Bound::Closed(b) => write!(f, ", {b}]"),
            Bound::Open(b) => write!(f, ", {b})"),
            Bound::Unbounded => write!(f, ", +inf)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn degenerate_intervals_must_be_closed() {
        assert!(Interval::new(Bound::Open(int(1)), Bound::Closed(int(1))).is_err());
        assert!(Interval::new(Bound::Closed(int(2)), Bound::Closed(int(1))).is_err());
        let p = Interval::point(int(1));
        assert!(p.contains(&int(1)));
        assert!(!Interval::open(int(0), int(1)).contains(&int(1)));
        assert!(Interval::real_line().contains(&int(-100)));
    }
}
