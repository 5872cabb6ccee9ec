use super::interval::Interval;
use super::poly::UniPoly;
use super::rational::{int, Rational};
use num::{Signed, Zero};
use std::cmp::Ordering;

/// Sturm sequence of the square-free part of a polynomial.
///
/// Each remainder is rescaled by a positive constant (`1 / |lc|`), which
/// keeps coefficient growth in check without touching any sign.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<UniPoly>,
}

impl SturmSequence {
    /// Panics on the zero polynomial, which has no Sturm sequence.
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let p0 = p.squarefree_part();
        let mut chain = vec![p0.clone()];
        let mut prev = p0.clone();
        let mut cur = p0.derivative().sign_preserving_normalize();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let r = (-&prev.div_rem(&cur).1).sign_preserving_normalize();
            prev = cur;
            cur = r;
        }
        SturmSequence { chain }
    }

    /// Sign changes in the sequence at `t`, zeros skipped.
    pub fn variations(&self, t: &Rational) -> usize {
        let mut last: Option<bool> = None;
        let mut count = 0;
        for q in &self.chain {
            let v = q.eval(t);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }

    /// Distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.count_half_open(a, b);
        if self.chain[0].eval(b).is_zero() {
            n - 1
        } else {
            n
        }
    }
}

/// Distinct real roots of `p` inside `interval`. Panics on the zero
/// polynomial.
pub fn count_roots(p: &UniPoly, interval: &Interval) -> usize {
    let (a, b) = bounded_endpoints(p, interval);
    if a == b {
        return usize::from(interval.contains(&a) && p.eval(&a).is_zero());
    }
    let seq = SturmSequence::new(p);
    let mut n = seq.count_open(&a, &b);
    for end in [&a, &b] {
        if interval.contains(end) && p.eval(end).is_zero() {
            n += 1;
        }
    }
    n
}

/// Exact sign certificate of a polynomial over an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignVerdict {
    /// `p >= 0` on the interval and not identically zero there.
    NonNegative,
    /// `p <= 0` on the interval and not identically zero there.
    NonPositive,
    /// `p` vanishes on the whole interval.
    Zero,
    /// `p` takes both signs; the two points lie in the interval and satisfy
    /// `p(positive) > 0`, `p(negative) < 0`.
    Mixed { positive: Rational, negative: Rational },
}

impl SignVerdict {
    pub fn is_non_negative(&self) -> bool {
        matches!(self, SignVerdict::NonNegative | SignVerdict::Zero)
    }

    pub fn is_non_positive(&self) -> bool {
        matches!(self, SignVerdict::NonPositive | SignVerdict::Zero)
    }
}

/// Replaces infinite ends by a Cauchy root bound; beyond it `p` has no roots
/// and keeps the sign it has at the bound.
fn bounded_endpoints(p: &UniPoly, interval: &Interval) -> (Rational, Rational) {
    let cauchy = || -> Rational {
        let lc = p.leading_coeff().map(|c| c.abs()).unwrap_or_else(|| int(1));
        let m = p
            .coeffs()
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + int(1)
    };
    let a = match interval.lo().value() {
        Some(v) => v.clone(),
        None => -cauchy(),
    };
    let b = match interval.hi().value() {
        Some(v) => v.clone(),
        None => cauchy(),
    };
    (a, b)
}

struct SampleCollector<'a> {
    p: &'a UniPoly,
    seq: SturmSequence,
    samples: Vec<(Rational, Ordering)>,
}

impl SampleCollector<'_> {
    fn sign(&self, t: &Rational) -> Ordering {
        self.p.eval(t).cmp(&Rational::zero())
    }

    /// Samples every sign region of `p` on the open segment `(a, b)`.
    /// `a_in` / `b_in` say whether the endpoints are already samples inside
    /// the interval under test.
    fn collect(&mut self, a: &Rational, b: &Rational, a_in: bool, b_in: bool) {
        let roots = self.seq.count_open(a, b);
        let mid = (a + b) / int(2);
        if roots == 0 {
            let s = self.sign(&mid);
            self.samples.push((mid, s));
            return;
        }
        // one root with nonzero samples on both sides: both sign regions are
        // already witnessed by the endpoints
        if roots == 1
            && a_in
            && b_in
            && self.sign(a) != Ordering::Equal
            && self.sign(b) != Ordering::Equal
        {
            return;
        }
        let s = self.sign(&mid);
        self.samples.push((mid.clone(), s));
        self.collect(a, &mid, a_in, true);
        self.collect(&mid, b, true, b_in);
    }
}

/// Certifies the sign of `p` on `interval` with exact Sturm root counting.
///
/// The interval is first split until every open segment holds at most one
/// root; each root-free region then gets a rational sample. A `Mixed`
/// verdict carries one sample of each sign.
pub fn sign_on_interval(p: &UniPoly, interval: &Interval) -> SignVerdict {
    if p.is_zero() {
        return SignVerdict::Zero;
    }
    let (a, b) = bounded_endpoints(p, interval);
    let mut c = SampleCollector { p, seq: SturmSequence::new(p), samples: Vec::new() };
    if interval.lo().is_closed() {
        let s = c.sign(&a);
        c.samples.push((a.clone(), s));
    }
    if interval.hi().is_closed() && a != b {
        let s = c.sign(&b);
        c.samples.push((b.clone(), s));
    }
    if a != b {
        c.collect(&a, &b, interval.lo().is_closed(), interval.hi().is_closed());
    }
    let positive = c.samples.iter().find(|(_, s)| *s == Ordering::Greater).map(|(t, _)| t.clone());
    let negative = c.samples.iter().find(|(_, s)| *s == Ordering::Less).map(|(t, _)| t.clone());
    match (positive, negative) {
        (Some(positive), Some(negative)) => SignVerdict::Mixed { positive, negative },
        (Some(_), None) => SignVerdict::NonNegative,
        (None, Some(_)) => SignVerdict::NonPositive,
        (None, None) => SignVerdict::Zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::exact::Bound;
    use proptest::prelude::*;

    #[test]
    fn sign_examples() {
        let unit = Interval::closed(int(0), int(1));
        assert_eq!(sign_on_interval(&UniPoly::from_ints(&[-1]), &unit), SignVerdict::NonPositive);
        let sym = Interval::closed(int(-1), int(1));
        assert_eq!(
            sign_on_interval(&UniPoly::from_ints(&[2, 0, -2]), &sym),
            SignVerdict::NonNegative
        );
        match sign_on_interval(&UniPoly::x(), &sym) {
            SignVerdict::Mixed { positive, negative } => {
                assert!(positive > int(0) && positive <= int(1));
                assert!(negative < int(0) && negative >= int(-1));
            }
            v => panic!("expected Mixed, got {v:?}"),
        }
        assert_eq!(sign_on_interval(&UniPoly::zero(), &sym), SignVerdict::Zero);
    }

    #[test]
    fn open_ends_and_point_intervals() {
        // t - 1 on [0, 1): never positive inside
        let p = UniPoly::from_ints(&[-1, 1]);
        let i = Interval::new(Bound::Closed(int(0)), Bound::Open(int(1))).unwrap();
        assert_eq!(sign_on_interval(&p, &i), SignVerdict::NonPositive);
        assert_eq!(sign_on_interval(&p, &Interval::point(int(1))), SignVerdict::Zero);
        assert_eq!(sign_on_interval(&p, &Interval::point(int(2))), SignVerdict::NonNegative);
        // (t - 1/3)^2 (t - 1/2) on (0, 1): a double root then a sign change
        let q = &(&UniPoly::new(vec![rat(-1, 3), int(1)]) * &UniPoly::new(vec![rat(-1, 3), int(1)]))
            * &UniPoly::new(vec![rat(-1, 2), int(1)]);
        assert!(matches!(
            sign_on_interval(&q, &Interval::open(int(0), int(1))),
            SignVerdict::Mixed { .. }
        ));
        assert_eq!(
            sign_on_interval(&q, &Interval::open(int(0), rat(1, 2))),
            SignVerdict::NonPositive
        );
    }

    #[test]
    fn unbounded_interval() {
        let p = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sign_on_interval(&p, &Interval::real_line()), SignVerdict::NonNegative);
        let q = UniPoly::from_ints(&[-1, 0, 1]);
        assert!(matches!(sign_on_interval(&q, &Interval::real_line()), SignVerdict::Mixed { .. }));
    }

    #[test]
    fn root_counts() {
        // (t^2 - 2)(t - 1)^2
        let p = &UniPoly::from_ints(&[-2, 0, 1]) * &UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(count_roots(&p, &Interval::closed(int(-2), int(2))), 3);
        assert_eq!(count_roots(&p, &Interval::closed(int(1), int(2))), 2);
        assert_eq!(count_roots(&p, &Interval::open(int(1), int(2))), 1);
        assert_eq!(count_roots(&p, &Interval::point(int(1))), 1);
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec((-6i64..=6, 1i64..=4), 1..=5)
            .prop_map(|cs| UniPoly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        // dense sampling oracle: no sample may contradict the verdict
        #[test]
        fn verdict_agrees_with_dense_sampling(p in small_poly(), lo in -4i64..=4, len in 1i64..=4) {
            let a = int(lo);
            let b = int(lo + len);
            let verdict = sign_on_interval(&p, &Interval::closed(a.clone(), b.clone()));
            let mut seen_pos = false;
            let mut seen_neg = false;
            for i in 0..=1000i64 {
                let t = &a + (&b - &a) * rat(i, 1000);
                let v = p.eval(&t);
                seen_pos |= v > Rational::zero();
                seen_neg |= v < Rational::zero();
            }
            match &verdict {
                SignVerdict::NonNegative => prop_assert!(!seen_neg),
                SignVerdict::NonPositive => prop_assert!(!seen_pos),
                SignVerdict::Zero => prop_assert!(!seen_pos && !seen_neg),
                SignVerdict::Mixed { positive, negative } => {
                    prop_assert!(p.eval(positive) > Rational::zero());
                    prop_assert!(p.eval(negative) < Rational::zero());
                    prop_assert!(*positive >= a && *positive <= b);
                    prop_assert!(*negative >= a && *negative <= b);
                }
            }
            if seen_pos && seen_neg {
                let is_mixed = matches!(verdict, SignVerdict::Mixed { .. });
                prop_assert!(is_mixed);
            }
        }
    }
}
