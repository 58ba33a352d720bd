//! Ring morphisms `sigma: F_q -> F_q^{n x n}` and `(sigma, tau)`-derivations
//! `delta: F_q -> F_q^n`, stored as full value tables and validated
//! exhaustively on construction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::matfq::{MatFq, VecFq};
use crate::par::{self, Strategy};

/// Frobenius exponents `(j_1, ..., j_n)` of a diagonal morphism
/// `a -> diag(a^{p^{j_1}}, ..., a^{p^{j_n}})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalSpec {
    exps: Vec<u32>,
}

impl DiagonalSpec {
    pub fn new(f: &FieldCtx, exps: Vec<u32>) -> Result<Self> {
        if let Some(&exp) = exps.iter().find(|&&e| e >= f.m()) {
            return Err(Error::ExponentOutOfRange { exp, m: f.m() });
        }
        Ok(DiagonalSpec { exps })
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn sorted(&self) -> DiagonalSpec {
        let mut exps = self.exps.clone();
        exps.sort_unstable();
        DiagonalSpec { exps }
    }
}

/// A validated ring morphism `F_q -> F_q^{n x n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixMorphism {
    field: Arc<FieldCtx>,
    n: usize,
    table: Vec<MatFq>,
}

impl MatrixMorphism {
    /// Rebuilds `sigma` from `S = sigma(c)` via `sigma(c^j) = S^j`.
    pub fn from_primitive_image(field: Arc<FieldCtx>, s: MatFq) -> Result<Self> {
        Self::from_primitive_image_with(field, s, Strategy::default())
    }

    pub fn from_primitive_image_with(
        field: Arc<FieldCtx>,
        s: MatFq,
        strategy: Strategy,
    ) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::DimensionMismatch { expected: s.rows(), got: s.cols() });
        }
        s.check_field(&field)?;
        let n = s.rows();
        let f = &*field;
        if s.pow(f.q() as u64 - 1, f)? != MatFq::identity(n) {
            return Err(Error::NotMultiplicativeOrder);
        }
        let mut table = vec![MatFq::zeros(n, n); f.q() as usize];
        let mut cur = MatFq::identity(n);
        for k in 0..f.q() as i64 - 1 {
            table[f.exp(k).value() as usize] = cur.clone();
            cur = cur.mul(&s, f)?;
        }
        let sigma = MatrixMorphism { field, n, table };
        sigma.validate(strategy)?;
        Ok(sigma)
    }

    /// Builds a morphism from an arbitrary value table indexed by encoding.
    pub fn from_table(field: Arc<FieldCtx>, table: Vec<MatFq>) -> Result<Self> {
        if table.len() != field.q() as usize {
            return Err(Error::DimensionMismatch { expected: field.q() as usize, got: table.len() });
        }
        let n = table[0].rows();
        for m in &table {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.cols() });
            }
            m.check_field(&field)?;
        }
        let sigma = MatrixMorphism { field, n, table };
        sigma.validate(Strategy::default())?;
        Ok(sigma)
    }

    /// `a -> diag(a^{p^{j_1}}, ..., a^{p^{j_n}})`.
    pub fn diagonal(field: Arc<FieldCtx>, spec: &DiagonalSpec) -> Result<Self> {
        if let Some(&exp) = spec.exps.iter().find(|&&e| e >= field.m()) {
            return Err(Error::ExponentOutOfRange { exp, m: field.m() });
        }
        let table = field
            .elements()
            .map(|a| {
                let d: Vec<FieldElement> = spec.exps.iter().map(|&j| field.frobenius(a, j)).collect();
                MatFq::diag(&d)
            })
            .collect();
        let sigma = MatrixMorphism { n: spec.n(), field, table };
        sigma.validate(Strategy::default())?;
        Ok(sigma)
    }

    /// The scalar embedding `a -> a I`.
    pub fn identity(field: Arc<FieldCtx>, n: usize) -> Self {
        Self::diagonal(field, &DiagonalSpec { exps: vec![0; n] }).expect("identity is a morphism")
    }

    /// `a -> A sigma(a) A^{-1}`.
    pub fn conjugate(&self, a: &MatFq) -> Result<Self> {
        let f = &*self.field;
        let a_inv = a.inv(f)?;
        let table = self
            .table
            .iter()
            .map(|m| a.mul(m, f)?.mul(&a_inv, f))
            .collect::<Result<Vec<_>>>()?;
        let sigma = MatrixMorphism { field: self.field.clone(), n: self.n, table };
        sigma.validate(Strategy::default())?;
        Ok(sigma)
    }

    fn validate(&self, strategy: Strategy) -> Result<()> {
        let f = &*self.field;
        let q = f.q() as usize;
        if !self.table[0].is_zero() {
            return Err(Error::AdditivityViolation { a: 0, b: 0 });
        }
        if self.table[1] != MatFq::identity(self.n) {
            return Err(Error::MultiplicativityViolation { a: 1, b: 1 });
        }
        let add = par::find_first(0..q, strategy, |a| {
            let (ea, ma) = (FieldElement::raw(a as u32), &self.table[a]);
            (0..q).find_map(|b| {
                let eb = FieldElement::raw(b as u32);
                let lhs = &self.table[f.add(ea, eb).value() as usize];
                (*lhs != ma.add(&self.table[b], f).ok()?)
                    .then_some(Error::AdditivityViolation { a: a as u32, b: b as u32 })
            })
        });
        if let Some(e) = add {
            return Err(e);
        }
        let mul = par::find_first(0..q, strategy, |a| {
            let (ea, ma) = (FieldElement::raw(a as u32), &self.table[a]);
            (0..q).find_map(|b| {
                let eb = FieldElement::raw(b as u32);
                let lhs = &self.table[f.mul(ea, eb).value() as usize];
                (*lhs != ma.mul(&self.table[b], f).ok()?)
                    .then_some(Error::MultiplicativityViolation { a: a as u32, b: b as u32 })
            })
        });
        match mul {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, a: FieldElement) -> &MatFq {
        &self.table[a.value() as usize]
    }

    /// `sigma(c)` for the field's primitive element.
    pub fn primitive_image(&self) -> &MatFq {
        self.apply(self.field.primitive())
    }

    pub fn table(&self) -> &[MatFq] {
        &self.table
    }

    pub fn is_identity(&self) -> bool {
        self.field.elements().all(|a| *self.apply(a) == MatFq::identity(self.n).scale(a, &self.field))
    }

    /// Whether `sigma(c)` and `tau(c)` commute, which over `F_q` is equivalent
    /// to `sigma(a) tau(b) = tau(b) sigma(a)` for all `a, b`.
    pub fn commutes_with(&self, other: &MatrixMorphism) -> Result<bool> {
        self.compatible(other)?;
        let f = &*self.field;
        let (s, t) = (self.primitive_image(), other.primitive_image());
        Ok(s.mul(t, f)? == t.mul(s, f)?)
    }

    fn compatible(&self, other: &MatrixMorphism) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    /// Finds `(A, spec)` with `sigma(a) = A diag(a^{p^{j_i}}) A^{-1}` for all
    /// `a`, exponents sorted ascending.
    pub fn diagonalize(&self) -> Result<(MatFq, DiagonalSpec)> {
        let f = &*self.field;
        let (a0, d) = self.primitive_image().eigen_diagonalize(f)?;
        let mut tagged = Vec::with_capacity(self.n);
        for (col, &lambda) in d.iter().enumerate() {
            let exp = frobenius_exponent_of(f, lambda)
                .ok_or(Error::NotFrobeniusEigenvalue { eigenvalue: lambda.value() })?;
            tagged.push((exp, col));
        }
        tagged.sort();
        let cols: Vec<VecFq> = tagged.iter().map(|&(_, c)| a0.col(c)).collect();
        let a = MatFq::from_columns(&cols)?;
        let spec = DiagonalSpec { exps: tagged.iter().map(|t| t.0).collect() };

        let a_inv = a.inv(f)?;
        for x in f.elements() {
            let d: Vec<FieldElement> = spec.exps.iter().map(|&j| f.frobenius(x, j)).collect();
            if a.mul(&MatFq::diag(&d), f)?.mul(&a_inv, f)? != *self.apply(x) {
                return Err(Error::VerificationFailed { element: x.value(), what: "diagonalization" });
            }
        }
        Ok((a, spec))
    }
}

/// The `j` in `[0, m)` with `lambda = c^{p^j}`, if any.
pub fn frobenius_exponent_of(f: &FieldCtx, lambda: FieldElement) -> Option<u32> {
    let l = f.dlog(lambda).ok()? as u64;
    (0..f.m()).find(|&j| f.frobenius_log_multiplier(j) == l)
}

/// A validated `(sigma, tau)`-derivation:
/// `delta(ab) = sigma(a) delta(b) + tau(b) delta(a)`.
///
/// With `tau` the identity this is a `sigma`-derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecDerivation {
    sigma: Arc<MatrixMorphism>,
    tau: Arc<MatrixMorphism>,
    table: Vec<VecFq>,
}

impl VecDerivation {
    /// Extends `d0 = delta(c)` to all of `F_q` by
    /// `delta(c^{j+1}) = sigma(c) delta(c^j) + tau(c)^j d0`.
    pub fn from_primitive_image(
        sigma: Arc<MatrixMorphism>,
        tau: Arc<MatrixMorphism>,
        d0: VecFq,
    ) -> Result<Self> {
        Self::from_primitive_image_with(sigma, tau, d0, Strategy::default())
    }

    pub fn from_primitive_image_with(
        sigma: Arc<MatrixMorphism>,
        tau: Arc<MatrixMorphism>,
        d0: VecFq,
        strategy: Strategy,
    ) -> Result<Self> {
        sigma.compatible(&tau)?;
        if d0.len() != sigma.n {
            return Err(Error::DimensionMismatch { expected: sigma.n, got: d0.len() });
        }
        d0.check_field(&sigma.field)?;
        if !sigma.commutes_with(&tau)? {
            return Err(Error::NonCommutingPair);
        }
        let f = sigma.field.clone();
        let (s, t) = (sigma.primitive_image(), tau.primitive_image());
        let mut table = vec![VecFq::zeros(sigma.n); f.q() as usize];
        let mut cur = d0.clone();
        let mut t_pow_d0 = d0;
        for k in 1..f.q() as i64 {
            table[f.exp(k).value() as usize] = cur.clone();
            t_pow_d0 = t.mul_vec(&t_pow_d0, &f)?;
            cur = s.mul_vec(&cur, &f)?.add(&t_pow_d0, &f)?;
        }
        let delta = VecDerivation { sigma, tau, table };
        delta.validate(strategy)?;
        Ok(delta)
    }

    /// Builds a derivation from an arbitrary value table indexed by encoding.
    pub fn from_table(
        sigma: Arc<MatrixMorphism>,
        tau: Arc<MatrixMorphism>,
        table: Vec<VecFq>,
    ) -> Result<Self> {
        sigma.compatible(&tau)?;
        let q = sigma.field.q() as usize;
        if table.len() != q {
            return Err(Error::DimensionMismatch { expected: q, got: table.len() });
        }
        for v in &table {
            if v.len() != sigma.n {
                return Err(Error::DimensionMismatch { expected: sigma.n, got: v.len() });
            }
            v.check_field(&sigma.field)?;
        }
        let delta = VecDerivation { sigma, tau, table };
        delta.validate(Strategy::default())?;
        Ok(delta)
    }

    pub fn zero(sigma: Arc<MatrixMorphism>, tau: Arc<MatrixMorphism>) -> Result<Self> {
        let n = sigma.n;
        Self::from_primitive_image(sigma, tau, VecFq::zeros(n))
    }

    /// The inner `sigma`-derivation `a -> lambda a - sigma(a) lambda`.
    pub fn inner_sigma(sigma: Arc<MatrixMorphism>, lambda: &VecFq) -> Result<Self> {
        if lambda.len() != sigma.n {
            return Err(Error::DimensionMismatch { expected: sigma.n, got: lambda.len() });
        }
        let f = sigma.field.clone();
        let tau = Arc::new(MatrixMorphism::identity(f.clone(), sigma.n));
        let table = f
            .elements()
            .map(|a| lambda.scale(a, &f).sub(&sigma.apply(a).mul_vec(lambda, &f)?, &f))
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(sigma, tau, table)
    }

    /// The inner `(sigma, tau)`-derivation `a -> (tau(a) - sigma(a)) lambda`.
    pub fn inner(
        sigma: Arc<MatrixMorphism>,
        tau: Arc<MatrixMorphism>,
        lambda: &VecFq,
    ) -> Result<Self> {
        sigma.compatible(&tau)?;
        if lambda.len() != sigma.n {
            return Err(Error::DimensionMismatch { expected: sigma.n, got: lambda.len() });
        }
        let f = sigma.field.clone();
        let table = f
            .elements()
            .map(|a| tau.apply(a).sub(sigma.apply(a), &f)?.mul_vec(lambda, &f))
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(sigma, tau, table)
    }

    /// `a -> M delta(a)`, a `(M sigma M^{-1}, M tau M^{-1})`-derivation.
    pub fn transform(&self, m: &MatFq) -> Result<Self> {
        let f = self.sigma.field.clone();
        let sigma = Arc::new(self.sigma.conjugate(m)?);
        let tau = if self.tau.is_identity() {
            self.tau.clone()
        } else {
            Arc::new(self.tau.conjugate(m)?)
        };
        let table = self.table.iter().map(|v| m.mul_vec(v, &f)).collect::<Result<Vec<_>>>()?;
        Self::from_table(sigma, tau, table)
    }

    // Leibniz is checked before additivity: a non-derivation d0 extended
    // multiplicatively always breaks Leibniz at some pair, while additivity
    // failures are incidental.
    fn validate(&self, strategy: Strategy) -> Result<()> {
        let f = &*self.sigma.field;
        let q = f.q() as usize;
        if !self.table[0].is_zero() {
            return Err(Error::AdditivityViolation { a: 0, b: 0 });
        }
        let leibniz = par::find_first(0..q, strategy, |a| {
            let ea = FieldElement::raw(a as u32);
            let sa = self.sigma.apply(ea);
            (0..q).find_map(|b| {
                let eb = FieldElement::raw(b as u32);
                let lhs = &self.table[f.mul(ea, eb).value() as usize];
                let rhs = sa
                    .mul_vec(&self.table[b], f)
                    .ok()?
                    .add(&self.tau.apply(eb).mul_vec(&self.table[a], f).ok()?, f)
                    .ok()?;
                (*lhs != rhs).then_some(Error::LeibnizViolation { a: a as u32, b: b as u32 })
            })
        });
        if let Some(e) = leibniz {
            return Err(e);
        }
        let add = par::find_first(0..q, strategy, |a| {
            let ea = FieldElement::raw(a as u32);
            (0..q).find_map(|b| {
                let eb = FieldElement::raw(b as u32);
                let lhs = &self.table[f.add(ea, eb).value() as usize];
                (*lhs != self.table[a].add(&self.table[b], f).ok()?)
                    .then_some(Error::AdditivityViolation { a: a as u32, b: b as u32 })
            })
        });
        match add {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    pub fn sigma(&self) -> &Arc<MatrixMorphism> {
        &self.sigma
    }

    pub fn tau(&self) -> &Arc<MatrixMorphism> {
        &self.tau
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.sigma.field
    }

    pub fn n(&self) -> usize {
        self.sigma.n
    }

    pub fn apply(&self, a: FieldElement) -> &VecFq {
        &self.table[a.value() as usize]
    }

    pub fn primitive_image(&self) -> &VecFq {
        self.apply(self.sigma.field.primitive())
    }

    pub fn table(&self) -> &[VecFq] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(VecFq::is_zero)
    }

    /// `lambda = (tau(c) - sigma(c))^{q-2} delta(c)`, checked to satisfy
    /// `delta(a) = (tau(a) - sigma(a)) lambda` on every `a`.
    pub fn inner_vector(&self) -> Result<VecFq> {
        let f = &*self.sigma.field;
        let diff = self.tau.primitive_image().sub(self.sigma.primitive_image(), f)?;
        let lambda = diff.pow(f.q() as u64 - 2, f)?.mul_vec(self.primitive_image(), f)?;
        for a in f.elements() {
            let expect = self.tau.apply(a).sub(self.sigma.apply(a), f)?.mul_vec(&lambda, f)?;
            if expect != *self.apply(a) {
                return Err(Error::VerificationFailed { element: a.value(), what: "inner vector" });
            }
        }
        Ok(lambda)
    }
}
