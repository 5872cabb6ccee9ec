//! Constant-coefficient exterior algebra of the symplectic space `R^{2n}`.
//!
//! Generators are ordered `x1, y1, x2, y2, ...`; a basis monomial is a
//! bitmask with bit `2i` for `x_{i+1}` and bit `2i + 1` for `y_{i+1}`, read
//! in increasing order. The symplectic form is `omega = sum_i x_i ^ y_i`.

use crate::exact::{int, Rational};
use num::{One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_HALF_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("half-dimension must be between 1 and {MAX_HALF_DIM}, got {0}")]
    BadHalfDim(usize),
    #[error("unknown generator {0:?}; expected x1, y1, ...")]
    UnknownGenerator(String),
    #[error("generator {0} repeated in a monomial")]
    RepeatedGenerator(String),
    #[error("forms live in different algebras (n = {0} vs n = {1})")]
    HalfDimMismatch(usize, usize),
    #[error("form has mixed degrees {0:?}")]
    MixedDegree(Vec<usize>),
    #[error("no primitive forms above the middle degree: degree {degree} > n = {n}")]
    DegreeAboveMiddle { degree: usize, n: usize },
    #[error("the Hodge star is only provided in real dimension 4, got n = {0}")]
    NotDim4(usize),
    #[error("expected a 2-form, got degree {0}")]
    NotTwoForm(usize),
    #[error("form is not primitive: omega ^ form = {0}")]
    NotPrimitive(String),
    #[error("form is not of type (1,1): J moves it to {0}")]
    NotTypeOneOne(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sl2Op {
    L,
    Lambda,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExteriorForm {
    n: usize,
    terms: BTreeMap<u32, Rational>,
}

/// Sign of `e_a ^ e_b` relative to the sorted monomial `a | b`.
fn wedge_sign(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let g = rest.trailing_zeros();
        swaps += (a >> (g + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

pub fn generator_name(g: u32) -> String {
    format!("{}{}", if g % 2 == 0 { 'x' } else { 'y' }, g / 2 + 1)
}

fn parse_generator(name: &str, n: usize) -> Result<u32, FormError> {
    let bad = || FormError::UnknownGenerator(name.to_string());
    let (kind, idx) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let i: usize = idx.parse().map_err(|_| bad())?;
    if i == 0 || i > n {
        return Err(bad());
    }
    let base = 2 * (i as u32 - 1);
    match kind {
        "x" => Ok(base),
        "y" => Ok(base + 1),
        _ => Err(bad()),
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl ExteriorForm {
    pub fn zero(n: usize) -> Result<Self, FormError> {
        if n == 0 || n > MAX_HALF_DIM {
            return Err(FormError::BadHalfDim(n));
        }
        Ok(ExteriorForm { n, terms: BTreeMap::new() })
    }

    pub fn one(n: usize) -> Result<Self, FormError> {
        Self::monomial(n, 0, int(1))
    }

    /// `coeff * e_mask`, with `mask` already in sorted order.
    pub fn monomial(n: usize, mask: u32, coeff: Rational) -> Result<Self, FormError> {
        let mut f = Self::zero(n)?;
        if mask >> (2 * n) != 0 {
            return Err(FormError::UnknownGenerator(generator_name(31 - mask.leading_zeros())));
        }
        f.add_term(mask, coeff);
        Ok(f)
    }

    /// `coeff * g_1 ^ g_2 ^ ...` for generator names in any order; the sign
    /// of the sorting permutation is absorbed into the coefficient.
    pub fn from_names(n: usize, names: &[&str], coeff: Rational) -> Result<Self, FormError> {
        let mut mask = 0u32;
        let mut negative = false;
        for name in names {
            let g = parse_generator(name, n)?;
            if mask & (1 << g) != 0 {
                return Err(FormError::RepeatedGenerator(name.to_string()));
            }
            negative ^= wedge_sign(mask, 1 << g);
            mask |= 1 << g;
        }
        Self::monomial(n, mask, if negative { -coeff } else { coeff })
    }

    /// `omega = sum_i x_i ^ y_i`.
    pub fn omega(n: usize) -> Result<Self, FormError> {
        let mut f = Self::zero(n)?;
        for i in 0..n {
            f.add_term(0b11 << (2 * i), int(1));
        }
        Ok(f)
    }

    /// The volume form `omega^n / n! = x1 ^ y1 ^ ... ^ xn ^ yn`.
    pub fn volume(n: usize) -> Result<Self, FormError> {
        Self::monomial(n, Self::top_mask(n), int(1))
    }

    fn top_mask(n: usize) -> u32 {
        if 2 * n == 32 { u32::MAX } else { (1u32 << (2 * n)) - 1 }
    }

    fn add_term(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    /// Generator names of a basis monomial, in canonical order.
    pub fn names(mask: u32) -> Vec<String> {
        (0..32).filter(|g| mask & (1 << g) != 0).map(generator_name).collect()
    }

    pub fn coeff(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.count_ones() as usize).collect();
        d.sort();
        d.dedup();
        d
    }

    /// `Some(k)` for a nonzero form of pure degree `k`, `None` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, FormError> {
        match self.degrees().as_slice() {
            [] => Ok(None),
            [k] => Ok(Some(*k)),
            ds => Err(FormError::MixedDegree(ds.to_vec())),
        }
    }

    /// Degree-`k` part.
    pub fn part(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.count_ones() as usize == k).map(|(&m, c)| (m, c.clone())).collect();
        ExteriorForm { n: self.n, terms }
    }

    fn same_algebra(&self, other: &Self) -> Result<(), FormError> {
        if self.n == other.n { Ok(()) } else { Err(FormError::HalfDimMismatch(self.n, other.n)) }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FormError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return ExteriorForm { n: self.n, terms: BTreeMap::new() };
        }
        ExteriorForm { n: self.n, terms: self.terms.iter().map(|(&m, c)| (m, c * s)).collect() }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        self.same_algebra(other)?;
        let mut out = ExteriorForm { n: self.n, terms: BTreeMap::new() };
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                out.add_term(a | b, if wedge_sign(a, b) { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn power(&self, r: usize) -> Self {
        let mut acc = Self::one(self.n).expect("n already validated");
        for _ in 0..r {
            acc = acc.wedge(self).expect("same algebra");
        }
        acc
    }

    /// Interior product with the dual basis vector of generator `g`.
    fn contract(&self, g: u32) -> Self {
        let mut out = ExteriorForm { n: self.n, terms: BTreeMap::new() };
        for (&m, c) in &self.terms {
            if m & (1 << g) == 0 {
                continue;
            }
            let before = (m & ((1u32 << g) - 1)).count_ones();
            out.add_term(m & !(1 << g), if before % 2 == 1 { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Top-degree coefficient against the volume form.
    pub fn top_coeff(&self) -> Rational {
        self.coeff(Self::top_mask(self.n))
    }

    /// Applies the algebra automorphism `x_j -> y_j`, `y_j -> -x_j`.
    pub fn rotate_j(&self) -> Self {
        let mut out = ExteriorForm { n: self.n, terms: BTreeMap::new() };
        for (&m, c) in &self.terms {
            let mut image = Self::one(self.n).unwrap().scale(c);
            for g in (0..2 * self.n as u32).filter(|g| m & (1 << g) != 0) {
                let (target, coeff) = if g % 2 == 0 { (g + 1, int(1)) } else { (g - 1, int(-1)) };
                image = image.wedge(&Self::monomial(self.n, 1 << target, coeff).unwrap()).unwrap();
            }
            out = out.add(&image).unwrap();
        }
        out
    }

    /// Uniformly random integer coefficients in `[-bound, bound]` on every
    /// degree-`k` monomial.
    pub fn random_homogeneous<R: Rng>(n: usize, k: usize, bound: i64, rng: &mut R) -> Result<Self, FormError> {
        let mut f = Self::zero(n)?;
        for mask in 0..=Self::top_mask(n) {
            if mask.count_ones() as usize == k {
                f.add_term(mask, int(rng.gen_range(-bound..=bound)));
            }
        }
        Ok(f)
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let names = Self::names(m);
            if names.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}) {}", names.join("^"))?;
            }
        }
        Ok(())
    }
}

pub fn sl2_apply(op: Sl2Op, alpha: &ExteriorForm) -> Result<ExteriorForm, FormError> {
    let n = alpha.n;
    match op {
        Sl2Op::L => ExteriorForm::omega(n)?.wedge(alpha),
        Sl2Op::Lambda => {
            let mut out = ExteriorForm::zero(n)?;
            for i in 0..n as u32 {
                out = out.add(&alpha.contract(2 * i).contract(2 * i + 1))?;
            }
            Ok(out)
        }
        Sl2Op::H => match alpha.homogeneous_degree()? {
            None => Ok(alpha.clone()),
            Some(k) => Ok(alpha.scale(&(int(n as i64) - int(k as i64)))),
        },
    }
}

/// `[A, B](alpha) = A(B(alpha)) - B(A(alpha))`, with `H` applied per degree.
pub fn sl2_bracket(a: Sl2Op, b: Sl2Op, alpha: &ExteriorForm) -> Result<ExteriorForm, FormError> {
    let apply = |op: Sl2Op, f: &ExteriorForm| -> Result<ExteriorForm, FormError> {
        if op != Sl2Op::H {
            return sl2_apply(op, f);
        }
        let mut out = ExteriorForm::zero(f.n)?;
        for k in f.degrees() {
            out = out.add(&sl2_apply(Sl2Op::H, &f.part(k))?)?;
        }
        Ok(out)
    };
    apply(a, &apply(b, alpha)?)?.sub(&apply(b, &apply(a, alpha)?)?)
}

pub fn is_primitive(alpha: &ExteriorForm) -> Result<bool, FormError> {
    let Some(k) = alpha.homogeneous_degree()? else { return Ok(true) };
    if k > alpha.n {
        return Err(FormError::DegreeAboveMiddle { degree: k, n: alpha.n });
    }
    Ok(ExteriorForm::omega(alpha.n)?.power(alpha.n - k + 1).wedge(alpha)?.is_zero())
}

/// `alpha = sum_r L^r / r! beta_{k - 2r}` with every `beta` primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub n: usize,
    pub degree: usize,
    /// Nonzero components keyed by `r`.
    pub components: BTreeMap<usize, ExteriorForm>,
}

impl PrimitiveDecomposition {
    pub fn reconstruct(&self) -> ExteriorForm {
        let omega = ExteriorForm::omega(self.n).unwrap();
        let mut out = ExteriorForm::zero(self.n).unwrap();
        let mut fact = Rational::one();
        let mut last = 0;
        for (&r, beta) in &self.components {
            for i in last + 1..=r {
                fact *= int(i as i64);
            }
            last = r;
            let term = omega.power(r).wedge(beta).unwrap().scale(&(Rational::one() / &fact));
            out = out.add(&term).unwrap();
        }
        out
    }
}

pub fn primitive_decomposition(alpha: &ExteriorForm) -> Result<PrimitiveDecomposition, FormError> {
    let n = alpha.n;
    let Some(k) = alpha.homogeneous_degree()? else {
        return Ok(PrimitiveDecomposition { n, degree: 0, components: BTreeMap::new() });
    };
    let omega = ExteriorForm::omega(n)?;
    let r_min = k.saturating_sub(n);
    let mut rest = alpha.clone();
    let mut components = BTreeMap::new();
    for r in (r_min..=k / 2).rev() {
        let j = k - 2 * r;
        // Lambda^r L^r / r! beta_j = prod_{i=1..r} (n - j - i + 1) beta_j, and
        // Lambda^r kills every lower-r term.
        let mut lowered = rest.clone();
        for _ in 0..r {
            lowered = sl2_apply(Sl2Op::Lambda, &lowered)?;
        }
        let factor: i64 = (1..=r).map(|i| (n + 1 - j - i) as i64).product();
        let beta = lowered.scale(&(Rational::one() / int(factor)));
        if beta.is_zero() {
            continue;
        }
        let r_fact: i64 = (1..=r as i64).product();
        rest = rest.sub(&omega.power(r).wedge(&beta)?.scale(&(Rational::one() / int(r_fact))))?;
        components.insert(r, beta);
    }
    assert!(rest.is_zero(), "primitive decomposition left a remainder: {rest}");
    Ok(PrimitiveDecomposition { n, degree: k, components })
}

/// Dimension of the primitive `k`-forms, by rank of `omega^{n-k+1} ^ -`.
pub fn primitive_dimension(n: usize, k: usize) -> Result<usize, FormError> {
    if k > n {
        return Err(FormError::DegreeAboveMiddle { degree: k, n });
    }
    let pw = ExteriorForm::omega(n)?.power(n - k + 1);
    let domain: Vec<u32> = (0..=ExteriorForm::top_mask(n)).filter(|m| m.count_ones() as usize == k).collect();
    let target: Vec<u32> =
        (0..=ExteriorForm::top_mask(n)).filter(|m| m.count_ones() as usize == 2 * n + 2 - k).collect();
    let columns: Vec<ExteriorForm> = domain
        .iter()
        .map(|&m| pw.wedge(&ExteriorForm::monomial(n, m, int(1)).unwrap()).unwrap())
        .collect();
    let matrix: Vec<Vec<Rational>> = target.iter().map(|&t| columns.iter().map(|c| c.coeff(t)).collect()).collect();
    let rank = if matrix.is_empty() { 0 } else { crate::linalg::rank(&matrix) };
    Ok(domain.len() - rank)
}

/// `C(2n, k) - C(2n, k - 2)`.
pub fn expected_primitive_dimension(n: usize, k: usize) -> u64 {
    binomial(2 * n, k) - if k >= 2 { binomial(2 * n, k - 2) } else { 0 }
}

/// Hodge star on `R^4` with the standard metric and orientation
/// `omega^2 / 2 = x1 ^ y1 ^ x2 ^ y2`.
pub fn hodge_star_dim4(alpha: &ExteriorForm) -> Result<ExteriorForm, FormError> {
    if alpha.n != 2 {
        return Err(FormError::NotDim4(alpha.n));
    }
    let mut out = ExteriorForm::zero(2)?;
    for (&m, c) in &alpha.terms {
        let comp = !m & 0b1111;
        out.add_term(comp, if wedge_sign(m, comp) { -c.clone() } else { c.clone() });
    }
    Ok(out)
}

fn require_primitive_11(gamma: &ExteriorForm) -> Result<(), FormError> {
    if gamma.n != 2 {
        return Err(FormError::NotDim4(gamma.n));
    }
    match gamma.homogeneous_degree()? {
        None => return Ok(()),
        Some(2) => {}
        Some(k) => return Err(FormError::NotTwoForm(k)),
    }
    let w = ExteriorForm::omega(2)?.wedge(gamma)?;
    if !w.is_zero() {
        return Err(FormError::NotPrimitive(w.to_string()));
    }
    let j = gamma.rotate_j();
    if &j != gamma {
        return Err(FormError::NotTypeOneOne(j.to_string()));
    }
    Ok(())
}

/// `*gamma = -gamma` for a primitive (1,1)-form on `R^4`.
pub fn weil_verify(gamma: &ExteriorForm) -> Result<bool, FormError> {
    require_primitive_11(gamma)?;
    Ok(hodge_star_dim4(gamma)? == gamma.scale(&int(-1)))
}

/// With `c = gamma + s omega`, tests `(c^2)(omega^2) <= 2 (c omega)^2` on
/// top-degree coefficients.
pub fn key_inequality_check(gamma: &ExteriorForm, s: &Rational) -> Result<bool, FormError> {
    require_primitive_11(gamma)?;
    let omega = ExteriorForm::omega(2)?;
    let c = gamma.add(&omega.scale(s))?;
    let c2 = c.wedge(&c)?.top_coeff();
    let w2 = omega.wedge(&omega)?.top_coeff();
    let cw = c.wedge(&omega)?.top_coeff();
    Ok(c2 * w2 <= int(2) * &cw * &cw)
}

/// Basis of the real primitive (1,1)-forms on `R^4`:
/// `x1x2 + y1y2`, `x1y2 + x2y1`, `x1y1 - x2y2`.
pub fn primitive_11_basis() -> [ExteriorForm; 3] {
    let f = |a: &str, b: &str, c: &str, d: &str, sign: i64| {
        ExteriorForm::from_names(2, &[a, b], int(1))
            .unwrap()
            .add(&ExteriorForm::from_names(2, &[c, d], int(sign)).unwrap())
            .unwrap()
    };
    [f("x1", "x2", "y1", "y2", 1), f("x1", "y2", "x2", "y1", 1), f("x1", "y1", "x2", "y2", -1)]
}

/// Random rational combination of [`primitive_11_basis`] with numerators in
/// `[-bound, bound]` and denominators in `[1, bound]`.
pub fn random_primitive_11<R: Rng>(bound: i64, rng: &mut R) -> ExteriorForm {
    let mut out = ExteriorForm::zero(2).unwrap();
    for b in primitive_11_basis() {
        let c = Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into());
        out = out.add(&b.scale(&c)).unwrap();
    }
    out
}

/// `gamma ^ gamma` against the volume form; never positive on primitive
/// (1,1)-forms.
pub fn hodge_riemann_pairing(gamma: &ExteriorForm) -> Result<Rational, FormError> {
    require_primitive_11(gamma)?;
    Ok(gamma.wedge(gamma)?.top_coeff())
}

/// `true` when the pairing is negative, or zero exactly for `gamma = 0`.
pub fn hodge_riemann_holds(gamma: &ExteriorForm) -> Result<bool, FormError> {
    let p = hodge_riemann_pairing(gamma)?;
    Ok(if gamma.is_zero() { p.is_zero() } else { p.is_negative() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn form(n: usize, terms: &[(&[&str], i64)]) -> ExteriorForm {
        let mut f = ExteriorForm::zero(n).unwrap();
        for (names, c) in terms {
            f = f.add(&ExteriorForm::from_names(n, names, int(*c)).unwrap()).unwrap();
        }
        f
    }

    #[test]
    fn operator_examples() {
        for n in 1..=4 {
            let one = ExteriorForm::one(n).unwrap();
            assert_eq!(sl2_apply(Sl2Op::L, &one).unwrap(), ExteriorForm::omega(n).unwrap());
        }
        let omega = ExteriorForm::omega(2).unwrap();
        assert_eq!(sl2_apply(Sl2Op::Lambda, &omega).unwrap(), ExteriorForm::one(2).unwrap().scale(&int(2)));
        let dx1 = form(2, &[(&["x1"], 1)]);
        assert_eq!(sl2_apply(Sl2Op::H, &dx1).unwrap(), dx1);
        let mixed = dx1.add(&omega).unwrap();
        assert_eq!(sl2_apply(Sl2Op::H, &mixed), Err(FormError::MixedDegree(vec![1, 2])));
    }

    #[test]
    fn names_reorder_with_sign() {
        assert_eq!(form(2, &[(&["y1", "x1"], 1)]), form(2, &[(&["x1", "y1"], -1)]));
        assert!(ExteriorForm::from_names(2, &["x3"], int(1)).is_err());
        assert!(ExteriorForm::from_names(2, &["x1", "x1"], int(1)).is_err());
        assert_eq!(ExteriorForm::omega(2).unwrap().power(2), ExteriorForm::volume(2).unwrap().scale(&int(2)));
    }

    #[test]
    fn primitivity_examples() {
        assert_eq!(is_primitive(&form(2, &[(&["x1", "x2"], 1), (&["y1", "y2"], 1)])), Ok(true));
        assert_eq!(is_primitive(&ExteriorForm::omega(2).unwrap()), Ok(false));
        assert_eq!(is_primitive(&ExteriorForm::one(2).unwrap()), Ok(true));
        assert!(matches!(
            is_primitive(&form(2, &[(&["x1", "y1", "x2"], 1)])),
            Err(FormError::DegreeAboveMiddle { degree: 3, n: 2 })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let omega = ExteriorForm::omega(2).unwrap();
        let d = primitive_decomposition(&omega).unwrap();
        assert_eq!(d.components, BTreeMap::from([(1, ExteriorForm::one(2).unwrap())]));

        let alpha = form(2, &[(&["x1", "y1"], 3), (&["x1", "x2"], 1), (&["y2", "x2"], 5)]);
        let d = primitive_decomposition(&alpha).unwrap();
        let half_lambda = sl2_apply(Sl2Op::Lambda, &alpha).unwrap().scale(&rat(1, 2));
        assert_eq!(d.components[&1], half_lambda);
        assert_eq!(d.components[&0], alpha.sub(&omega.scale(&half_lambda.coeff(0))).unwrap());
        assert_eq!(d.reconstruct(), alpha);

        let gamma = primitive_11_basis()[0].clone();
        assert_eq!(primitive_decomposition(&gamma).unwrap().components, BTreeMap::from([(0, gamma)]));
    }

    #[test]
    fn above_middle_decomposes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 0..=6 {
            let alpha = ExteriorForm::random_homogeneous(3, k, 4, &mut rng).unwrap();
            let d = primitive_decomposition(&alpha).unwrap();
            assert_eq!(d.reconstruct(), alpha);
            assert!(d.components.keys().all(|&r| r >= k.saturating_sub(3)));
        }
    }

    #[test]
    fn star_examples() {
        let vol = ExteriorForm::volume(2).unwrap();
        let omega = ExteriorForm::omega(2).unwrap();
        assert_eq!(hodge_star_dim4(&ExteriorForm::one(2).unwrap()).unwrap(), vol);
        assert_eq!(vol, omega.power(2).scale(&rat(1, 2)));
        assert_eq!(hodge_star_dim4(&omega).unwrap(), omega);
        assert_eq!(hodge_star_dim4(&vol).unwrap(), ExteriorForm::one(2).unwrap());
        assert_eq!(hodge_star_dim4(&ExteriorForm::omega(3).unwrap()), Err(FormError::NotDim4(3)));
    }

    #[test]
    fn weil_examples() {
        let gamma = primitive_11_basis()[0].clone();
        assert_eq!(weil_verify(&gamma), Ok(true));
        assert_eq!(gamma.wedge(&gamma).unwrap().top_coeff(), int(-2));
        assert!(matches!(weil_verify(&ExteriorForm::omega(2).unwrap()), Err(FormError::NotPrimitive(_))));
        assert_eq!(weil_verify(&ExteriorForm::zero(2).unwrap()), Ok(true));
        // primitive but of type (2,0) + (0,2)
        let g20 = form(2, &[(&["x1", "x2"], 1), (&["y1", "y2"], -1)]);
        assert!(matches!(weil_verify(&g20), Err(FormError::NotTypeOneOne(_))));
    }

    #[test]
    fn key_inequality_examples() {
        let gamma = primitive_11_basis()[0].clone();
        assert_eq!(key_inequality_check(&gamma, &int(3)), Ok(true));
        for s in [int(0), int(1), rat(-5, 2)] {
            assert_eq!(key_inequality_check(&ExteriorForm::zero(2).unwrap(), &s), Ok(true));
        }
    }

    #[test]
    fn primitive_dimensions() {
        for n in 1..=3 {
            for k in 0..=n {
                assert_eq!(primitive_dimension(n, k).unwrap() as u64, expected_primitive_dimension(n, k));
            }
        }
    }
}
