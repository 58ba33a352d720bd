//! The free multivariate skew polynomial ring `F_q[x; sigma, delta]`.
//!
//! Monomials are words over `x_1, ..., x_n`, products of monomials are
//! concatenation, and scalars move left past a variable by the commutation
//! rule `x_i a = sum_j sigma_{i,j}(a) x_j + delta_i(a)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::matfq::{MatFq, VecFq};
use crate::morphism::{DiagonalSpec, MatrixMorphism, VecDerivation};

/// A ring `F_q[x; sigma, delta]` with `delta` a `sigma`-derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingCtx {
    field: Arc<FieldCtx>,
    n: usize,
    sigma: Arc<MatrixMorphism>,
    delta: Arc<VecDerivation>,
}

impl RingCtx {
    pub fn new(sigma: Arc<MatrixMorphism>, delta: Arc<VecDerivation>) -> Result<Self> {
        if delta.sigma() != &sigma {
            return Err(Error::RingMismatch);
        }
        if !delta.tau().is_identity() {
            return Err(Error::RingMismatch);
        }
        Ok(RingCtx { field: sigma.field().clone(), n: sigma.n(), sigma, delta })
    }

    /// `F_q[x; sigma, 0]`.
    pub fn with_zero_derivation(sigma: Arc<MatrixMorphism>) -> Result<Self> {
        let id = Arc::new(MatrixMorphism::identity(sigma.field().clone(), sigma.n()));
        let delta = Arc::new(VecDerivation::zero(sigma.clone(), id)?);
        Self::new(sigma, delta)
    }

    /// The conventional free algebra `F_q<x_1, ..., x_n>` (`sigma = Id`, `delta = 0`).
    pub fn conventional(field: Arc<FieldCtx>, n: usize) -> Self {
        Self::with_zero_derivation(Arc::new(MatrixMorphism::identity(field, n)))
            .expect("identity ring is valid")
    }

    /// `F_q[x; diag(Frob^{j_1}, ..., Frob^{j_n}), 0]`.
    pub fn diagonal(field: Arc<FieldCtx>, spec: &DiagonalSpec) -> Result<Self> {
        Self::with_zero_derivation(Arc::new(MatrixMorphism::diagonal(field, spec)?))
    }

    /// Ring from `sigma(c)` and the `sigma`-derivation value `delta(c)`.
    pub fn from_primitive_images(field: Arc<FieldCtx>, s: MatFq, d0: VecFq) -> Result<Self> {
        let sigma = Arc::new(MatrixMorphism::from_primitive_image(field.clone(), s)?);
        let id = Arc::new(MatrixMorphism::identity(field, sigma.n()));
        let delta = Arc::new(VecDerivation::from_primitive_image(sigma.clone(), id, d0)?);
        Self::new(sigma, delta)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &Arc<MatrixMorphism> {
        &self.sigma
    }

    pub fn delta(&self) -> &Arc<VecDerivation> {
        &self.delta
    }

    /// `sigma(c) a c^{-1} + delta(c) c^{-1}`.
    pub fn conjugate_point(&self, a: &VecFq, c: FieldElement) -> Result<VecFq> {
        self.check_point(a)?;
        let f = &*self.field;
        let c_inv = f.inv(c).map_err(|_| Error::ZeroConjugator)?;
        self.sigma
            .apply(c)
            .mul_vec(a, f)?
            .add(self.delta.apply(c), f)
            .map(|v| v.scale(c_inv, f))
    }

    fn check_point(&self, a: &VecFq) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: a.len() });
        }
        a.check_field(&self.field)
    }

    /// Every point of `F_q^n`, in lexicographic order of encodings.
    pub fn points(&self) -> impl Iterator<Item = VecFq> + '_ {
        let q = self.field.q() as u64;
        let total = q.pow(self.n as u32);
        (0..total).map(move |idx| self.point_at(idx))
    }

    /// The `idx`-th point in the order of [`RingCtx::points`].
    pub fn point_at(&self, mut idx: u64) -> VecFq {
        let q = self.field.q() as u64;
        let mut v = vec![FieldElement::ZERO; self.n];
        for slot in v.iter_mut().rev() {
            *slot = FieldElement::raw((idx % q) as u32);
            idx /= q;
        }
        VecFq::new(v)
    }
}

/// A word in the free monoid on `x_1, ..., x_n`, stored with 0-based indices.
///
/// Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The single variable `x_{i+1}` (0-based `i`).
    pub fn var(i: usize) -> Self {
        Monomial(vec![i as u16])
    }

    /// From 0-based indices.
    pub fn new(word: Vec<u16>) -> Self {
        Monomial(word)
    }

    /// From 1-based indices, as written `x_1 x_2 x_1 = [1, 2, 1]`.
    pub fn from_one_based(word: &[usize], n: usize) -> Result<Self> {
        word.iter()
            .map(|&i| {
                if i == 0 || i > n {
                    Err(Error::VariableOutOfRange { index: i, n })
                } else {
                    Ok((i - 1) as u16)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut w = Vec::with_capacity(self.0.len() + other.0.len());
        w.extend_from_slice(&self.0);
        w.extend_from_slice(&other.0);
        Monomial(w)
    }

    /// Splits off the rightmost letter.
    pub fn split_last(&self) -> Option<(Monomial, usize)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Monomial(rest.to_vec()), last as usize))
    }

    /// Splits off the leftmost letter.
    pub fn split_first(&self) -> Option<(usize, Monomial)> {
        let (&first, rest) = self.0.split_first()?;
        Some((first as usize, Monomial(rest.to_vec())))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &i in &self.0 {
            write!(f, "x{}", i + 1)?;
        }
        Ok(())
    }
}

/// Degree of a skew polynomial; the zero polynomial has degree `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::Infinite,
        }
    }
}

type Terms = BTreeMap<Monomial, FieldElement>;

fn accumulate(terms: &mut Terms, m: Monomial, c: FieldElement, f: &FieldCtx) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = f.add(*e.get(), c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// A skew polynomial `sum F_m m(x)` with left coefficients; no zero terms.
#[derive(Clone)]
pub struct SkewPoly {
    ring: Arc<RingCtx>,
    terms: Terms,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for SkewPoly {}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{:?}", c.value(), m)?;
        }
        Ok(())
    }
}

fn same_ring(a: &Arc<RingCtx>, b: &Arc<RingCtx>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Memo for pushing scalars left through prefixes of one monomial.
type PushMemo = HashMap<(usize, FieldElement), Arc<Terms>>;

impl SkewPoly {
    pub fn zero(ring: &Arc<RingCtx>) -> Self {
        SkewPoly { ring: ring.clone(), terms: Terms::new() }
    }

    pub fn constant(ring: &Arc<RingCtx>, c: FieldElement) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Arc<RingCtx>) -> Self {
        Self::constant(ring, FieldElement::ONE)
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(ring: &Arc<RingCtx>, i: usize) -> Self {
        Self::term(ring, Monomial::var(i), FieldElement::ONE)
    }

    pub fn term(ring: &Arc<RingCtx>, m: Monomial, c: FieldElement) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SkewPoly { ring: ring.clone(), terms }
    }

    /// Builds a polynomial, checking variable indices and coefficients; repeated
    /// monomials are summed.
    pub fn from_terms(
        ring: &Arc<RingCtx>,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let f = &*ring.field;
        let mut out = Terms::new();
        for (m, c) in terms {
            if let Some(&i) = m.0.iter().find(|&&i| i as usize >= ring.n) {
                return Err(Error::VariableOutOfRange { index: i as usize + 1, n: ring.n });
            }
            if !f.contains(c) {
                return Err(Error::ElementOutOfRange { value: c.value() as u64, q: f.q() });
            }
            accumulate(&mut out, m, c, f);
        }
        Ok(SkewPoly { ring: ring.clone(), terms: out })
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        self.terms.keys().map(Monomial::degree).max().map_or(Degree::Infinite, Degree::Finite)
    }

    /// Same terms, reinterpreted in another ring over the same field and `n`.
    pub fn in_ring(&self, ring: &Arc<RingCtx>) -> Result<SkewPoly> {
        if ring.field != self.ring.field {
            return Err(Error::FieldMismatch);
        }
        if ring.n != self.ring.n {
            return Err(Error::DimensionMismatch { expected: ring.n, got: self.ring.n });
        }
        Ok(SkewPoly { ring: ring.clone(), terms: self.terms.clone() })
    }

    fn check_ring(&self, other: &SkewPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_ring(other)?;
        let f = &*self.ring.field;
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            accumulate(&mut terms, m.clone(), c, f);
        }
        Ok(SkewPoly { ring: self.ring.clone(), terms })
    }

    pub fn neg(&self) -> SkewPoly {
        let f = &*self.ring.field;
        SkewPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(&other.neg())
    }

    /// `a * F`.
    pub fn scalar_mul_left(&self, a: FieldElement) -> SkewPoly {
        let f = &*self.ring.field;
        if a.is_zero() {
            return Self::zero(&self.ring);
        }
        SkewPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    /// Right multiplication by a monomial (concatenation on every term).
    pub fn mul_monomial_right(&self, m: &Monomial) -> SkewPoly {
        SkewPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, &c)| (w.concat(m), c)).collect(),
        }
    }

    /// `m * g` expanded as a polynomial: `g` is pushed leftwards through `m`
    /// one letter at a time, starting from the right.
    fn push_scalar(&self, word: &[u16], g: FieldElement, memo: &mut PushMemo) -> Arc<Terms> {
        let ring = &*self.ring;
        let f = &*ring.field;
        if g.is_zero() {
            return Arc::new(Terms::new());
        }
        let Some((&last, prefix)) = word.split_last() else {
            return Arc::new(Terms::from([(Monomial::one(), g)]));
        };
        if let Some(hit) = memo.get(&(word.len(), g)) {
            return hit.clone();
        }
        let i = last as usize;
        let s = ring.sigma.apply(g);
        let mut out = Terms::new();
        for j in 0..ring.n {
            let coef = s[(i, j)];
            if coef.is_zero() {
                continue;
            }
            let tail = Monomial::var(j);
            for (w, &c) in self.push_scalar(prefix, coef, memo).iter() {
                accumulate(&mut out, w.concat(&tail), c, f);
            }
        }
        let d = ring.delta.apply(g)[i];
        if !d.is_zero() {
            for (w, &c) in self.push_scalar(prefix, d, memo).iter() {
                accumulate(&mut out, w.clone(), c, f);
            }
        }
        let out = Arc::new(out);
        memo.insert((word.len(), g), out.clone());
        out
    }

    /// Ring product.
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_ring(other)?;
        let f = &*self.ring.field;
        let mut terms = Terms::new();
        for (m, &fm) in &self.terms {
            let mut memo = PushMemo::new();
            for (m2, &g) in &other.terms {
                let pushed = self.push_scalar(&m.0, g, &mut memo);
                for (w, &c) in pushed.iter() {
                    accumulate(&mut terms, w.concat(m2), f.mul(fm, c), f);
                }
            }
        }
        Ok(SkewPoly { ring: self.ring.clone(), terms })
    }

    /// `F * a` for a scalar `a` on the right.
    pub fn mul_scalar_right(&self, a: FieldElement) -> SkewPoly {
        let f = &*self.ring.field;
        let mut terms = Terms::new();
        let mut memo = PushMemo::new();
        for (m, &fm) in &self.terms {
            memo.clear();
            for (w, &c) in self.push_scalar(&m.0, a, &mut memo).iter() {
                accumulate(&mut terms, w.clone(), f.mul(fm, c), f);
            }
        }
        SkewPoly { ring: self.ring.clone(), terms }
    }

    /// Right division by `x_1 - a_1, ..., x_n - a_n`: returns `(G, b)` with
    /// `F = sum_i G_i (x_i - a_i) + b`.
    ///
    /// Peels the rightmost letter of the leading term each step,
    /// `m' x_j = m' (x_j - a_j) + m' a_j`, until only a constant remains.
    pub fn divide_linear(&self, a: &VecFq) -> Result<(Vec<SkewPoly>, FieldElement)> {
        self.ring.check_point(a)?;
        let f = &*self.ring.field;
        let mut quotients = vec![Terms::new(); self.ring.n];
        let mut rem = self.terms.clone();
        let mut memo_for: HashMap<Monomial, PushMemo> = HashMap::new();
        while let Some((m, c)) = rem.pop_last() {
            let Some((prefix, j)) = m.split_last() else {
                // Only the constant term is left.
                return Ok((
                    quotients
                        .into_iter()
                        .map(|terms| SkewPoly { ring: self.ring.clone(), terms })
                        .collect(),
                    c,
                ));
            };
            accumulate(&mut quotients[j], prefix.clone(), c, f);
            let memo = memo_for.entry(prefix.clone()).or_default();
            for (w, &d) in self.push_scalar(&prefix.0, a[j], memo).iter() {
                accumulate(&mut rem, w.clone(), f.mul(c, d), f);
            }
        }
        let quotients =
            quotients.into_iter().map(|terms| SkewPoly { ring: self.ring.clone(), terms }).collect();
        Ok((quotients, FieldElement::ZERO))
    }

    /// Remainder of right division by `x - a`.
    ///
    /// Computed term by term with the recursion
    /// `N_{x_i m}(a) = (sigma(N_m(a)) a + delta(N_m(a)))_i`, `N_1(a) = 1`;
    /// agrees with the constant returned by [`SkewPoly::divide_linear`].
    pub fn evaluate(&self, a: &VecFq) -> Result<FieldElement> {
        self.ring.check_point(a)?;
        Ok(self.evaluate_unchecked(a))
    }

    pub(crate) fn evaluate_unchecked(&self, a: &VecFq) -> FieldElement {
        let ring = &*self.ring;
        let f = &*ring.field;
        let mut acc = FieldElement::ZERO;
        for (m, &c) in &self.terms {
            let mut val = FieldElement::ONE;
            for &i in m.0.iter().rev() {
                let i = i as usize;
                if val.is_zero() {
                    break;
                }
                let row = ring.sigma.apply(val).row(i);
                let lin = row.iter().zip(a.iter()).fold(FieldElement::ZERO, |s, (&x, &y)| f.add(s, f.mul(x, y)));
                val = f.add(lin, ring.delta.apply(val)[i]);
            }
            acc = f.add(acc, f.mul(c, val));
        }
        acc
    }

    /// `(F G)(a)` through the product rule: `0` when `G(a) = 0`, otherwise
    /// `F(b) G(a)` with `b` the conjugate of `a` by `G(a)`.
    pub fn product_rule_eval(&self, g: &SkewPoly, a: &VecFq) -> Result<FieldElement> {
        self.check_ring(g)?;
        let c = g.evaluate(a)?;
        if c.is_zero() {
            return Ok(FieldElement::ZERO);
        }
        let b = self.ring.conjugate_point(a, c)?;
        Ok(self.ring.field.mul(self.evaluate(&b)?, c))
    }

    /// Random polynomial with up to `max_terms` terms of degree `<= max_degree`.
    pub fn random<R: Rng + ?Sized>(
        ring: &Arc<RingCtx>,
        max_degree: usize,
        max_terms: usize,
        rng: &mut R,
    ) -> SkewPoly {
        let f = &*ring.field;
        let count = rng.random_range(1..=max_terms.max(1));
        let mut terms = Terms::new();
        for _ in 0..count {
            let deg = rng.random_range(0..=max_degree);
            let word = (0..deg).map(|_| rng.random_range(0..ring.n) as u16).collect();
            accumulate(&mut terms, Monomial(word), f.random_nonzero(rng), f);
        }
        SkewPoly { ring: ring.clone(), terms }
    }
}

/// All monomials of degree `<= max_degree` in `n` variables, deglex order.
pub fn monomials_up_to(n: usize, max_degree: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..max_degree {
        let mut next = Vec::with_capacity(layer.len() * n);
        for m in &layer {
            for i in 0..n {
                next.push(m.concat(&Monomial::var(i)));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
