//! Linear (`x -> A x`), translation (`x -> x + lambda`) and affine changes of
//! variables between skew polynomial rings.
//!
//! Every transform carries its source and target rings and checks on
//! construction that the pair of rings is related the way the map needs:
//!
//! * linear `phi_A: F[x; sigma, d_sigma] -> F[x; tau, d_tau]` requires
//!   `sigma(a) = A tau(a) A^{-1}` and `d_sigma(a) = A d_tau(a)`;
//! * translation `phi_lambda: F[x; sigma, d] -> F[x; sigma, d']` requires
//!   `d(a) - d'(a) = lambda a - sigma(a) lambda`.
//!
//! An affine transform is `phi_lambda . phi_A` (linear leg first). Being a
//! left-linear ring morphism, it sends `x` to `A x + A lambda`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freering::{Degree, Monomial, RingCtx, SkewPoly};
use crate::gf::FieldElement;
use crate::matfq::{MatFq, VecFq};
use crate::morphism::{MatrixMorphism, VecDerivation};

fn same_ring(a: &Arc<RingCtx>, b: &Arc<RingCtx>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Applies a left-linear ring morphism given the images of the generators:
/// `T(x_i m) = T(x_i) T(m)`, memoised on suffixes.
fn apply_with_generators(
    src: &Arc<RingCtx>,
    tgt: &Arc<RingCtx>,
    gens: &[SkewPoly],
    poly: &SkewPoly,
) -> Result<SkewPoly> {
    if !same_ring(poly.ring(), src) {
        return Err(Error::RingMismatch);
    }
    let mut memo: HashMap<Monomial, SkewPoly> = HashMap::new();
    let mut out = SkewPoly::zero(tgt);
    for (m, c) in poly.terms() {
        let img = image_of_monomial(m, tgt, gens, &mut memo)?;
        out = out.add(&img.scalar_mul_left(c))?;
    }
    Ok(out)
}

fn image_of_monomial(
    m: &Monomial,
    tgt: &Arc<RingCtx>,
    gens: &[SkewPoly],
    memo: &mut HashMap<Monomial, SkewPoly>,
) -> Result<SkewPoly> {
    if let Some(hit) = memo.get(m) {
        return Ok(hit.clone());
    }
    let img = match m.split_first() {
        None => SkewPoly::one(tgt),
        Some((i, rest)) => gens[i].mul(&image_of_monomial(&rest, tgt, gens, memo)?)?,
    };
    memo.insert(m.clone(), img.clone());
    Ok(img)
}

/// `phi_A: F[x; sigma, d_sigma] -> F[x; tau, d_tau]`, `x -> A x`.
#[derive(Clone, Debug)]
pub struct LinearTransform {
    a: MatFq,
    a_inv: MatFq,
    src: Arc<RingCtx>,
    tgt: Arc<RingCtx>,
    gens: Vec<SkewPoly>,
}

impl LinearTransform {
    /// Checks `sigma(a) = A tau(a) A^{-1}` and `d_sigma(a) = A d_tau(a)` for all `a`.
    pub fn new(a: MatFq, src: Arc<RingCtx>, tgt: Arc<RingCtx>) -> Result<Self> {
        let f = src.field().clone();
        if *tgt.field() != f {
            return Err(Error::FieldMismatch);
        }
        if a.rows() != src.n() || tgt.n() != src.n() {
            return Err(Error::DimensionMismatch { expected: src.n(), got: a.rows() });
        }
        let a_inv = a.inv(&f).map_err(|e| match e {
            Error::Singular => Error::SingularLinearPart,
            e => e,
        })?;
        for x in f.elements() {
            let conj = a.mul(tgt.sigma().apply(x), &f)?.mul(&a_inv, &f)?;
            if conj != *src.sigma().apply(x) {
                return Err(Error::IncompatibleMorphisms { element: x.value() });
            }
        }
        for x in f.elements() {
            if a.mul_vec(tgt.delta().apply(x), &f)? != *src.delta().apply(x) {
                return Err(Error::IncompatibleDerivations { element: x.value() });
            }
        }
        let gens = (0..src.n())
            .map(|i| {
                SkewPoly::from_terms(&tgt, (0..src.n()).map(|j| (Monomial::var(j), a[(i, j)])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearTransform { a, a_inv, src, tgt, gens })
    }

    /// `phi_A` out of `src`, with the target ring
    /// `F[x; A^{-1} sigma A, A^{-1} d_sigma]` built to fit.
    pub fn induced(src: Arc<RingCtx>, a: MatFq) -> Result<Self> {
        let f = src.field().clone();
        let a_inv = a.inv(&f).map_err(|_| Error::SingularLinearPart)?;
        let sigma = Arc::new(src.sigma().conjugate(&a_inv)?);
        let id = Arc::new(MatrixMorphism::identity(f.clone(), src.n()));
        let table = src
            .delta()
            .table()
            .iter()
            .map(|v| a_inv.mul_vec(v, &f))
            .collect::<Result<Vec<_>>>()?;
        let delta = Arc::new(VecDerivation::from_table(sigma.clone(), id, table)?);
        let tgt = Arc::new(RingCtx::new(sigma, delta)?);
        Self::new(a, src, tgt)
    }

    pub fn matrix(&self) -> &MatFq {
        &self.a
    }

    pub fn src(&self) -> &Arc<RingCtx> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<RingCtx> {
        &self.tgt
    }

    /// `F(x) -> F(A x)`.
    pub fn apply(&self, poly: &SkewPoly) -> Result<SkewPoly> {
        apply_with_generators(&self.src, &self.tgt, &self.gens, poly)
    }

    /// `phi_B . phi_A = phi_{AB}` where `self = phi_A`, `next = phi_B`.
    pub fn then(&self, next: &LinearTransform) -> Result<LinearTransform> {
        if !same_ring(&self.tgt, &next.src) {
            return Err(Error::ChainMismatch);
        }
        let f = self.src.field();
        LinearTransform::new(self.a.mul(&next.a, f)?, self.src.clone(), next.tgt.clone())
    }

    /// `phi_{A^{-1}}`, from `tgt` back to `src`.
    pub fn inverse(&self) -> Result<LinearTransform> {
        LinearTransform::new(self.a_inv.clone(), self.tgt.clone(), self.src.clone())
    }

    /// `E^src_{A a}(F) = E^tgt_a(phi_A(F))`.
    pub fn eval_shift_check(&self, poly: &SkewPoly, a: &VecFq) -> Result<bool> {
        let f = self.src.field();
        let lhs = self.apply(poly)?.evaluate(a)?;
        let rhs = poly.evaluate(&self.a.mul_vec(a, f)?)?;
        Ok(lhs == rhs)
    }
}

/// `phi_lambda: F[x; sigma, d] -> F[x; sigma, d']`, `x -> x + lambda`.
#[derive(Clone, Debug)]
pub struct TranslationTransform {
    lam: VecFq,
    src: Arc<RingCtx>,
    tgt: Arc<RingCtx>,
    gens: Vec<SkewPoly>,
}

impl TranslationTransform {
    /// Checks that both rings share `sigma` and
    /// `d(a) - d'(a) = lambda a - sigma(a) lambda` for all `a`.
    pub fn new(lam: VecFq, src: Arc<RingCtx>, tgt: Arc<RingCtx>) -> Result<Self> {
        let f = src.field().clone();
        if *tgt.field() != f {
            return Err(Error::FieldMismatch);
        }
        if lam.len() != src.n() || tgt.n() != src.n() {
            return Err(Error::DimensionMismatch { expected: src.n(), got: lam.len() });
        }
        lam.check_field(&f)?;
        if let Some(x) = f.elements().find(|&x| src.sigma().apply(x) != tgt.sigma().apply(x)) {
            return Err(Error::IncompatibleMorphisms { element: x.value() });
        }
        for x in f.elements() {
            let lhs = src.delta().apply(x).sub(tgt.delta().apply(x), &f)?;
            let rhs = lam.scale(x, &f).sub(&src.sigma().apply(x).mul_vec(&lam, &f)?, &f)?;
            if lhs != rhs {
                return Err(Error::IncompatibleDerivations { element: x.value() });
            }
        }
        let gens = (0..src.n())
            .map(|i| SkewPoly::var(&tgt, i).add(&SkewPoly::constant(&tgt, lam[i])))
            .collect::<Result<Vec<_>>>()?;
        Ok(TranslationTransform { lam, src, tgt, gens })
    }

    /// `phi_lambda` out of `src`, with target `F[x; sigma, d - (lambda a - sigma(a) lambda)]`.
    pub fn induced(src: Arc<RingCtx>, lam: VecFq) -> Result<Self> {
        let f = src.field().clone();
        if lam.len() != src.n() {
            return Err(Error::DimensionMismatch { expected: src.n(), got: lam.len() });
        }
        let inner = VecDerivation::inner_sigma(src.sigma().clone(), &lam)?;
        let table = f
            .elements()
            .map(|x| src.delta().apply(x).sub(inner.apply(x), &f))
            .collect::<Result<Vec<_>>>()?;
        let id = Arc::new(MatrixMorphism::identity(f.clone(), src.n()));
        let delta = Arc::new(VecDerivation::from_table(src.sigma().clone(), id, table)?);
        let tgt = Arc::new(RingCtx::new(src.sigma().clone(), delta)?);
        Self::new(lam, src, tgt)
    }

    pub fn vector(&self) -> &VecFq {
        &self.lam
    }

    pub fn src(&self) -> &Arc<RingCtx> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<RingCtx> {
        &self.tgt
    }

    /// `F(x) -> F(x + lambda)`.
    pub fn apply(&self, poly: &SkewPoly) -> Result<SkewPoly> {
        apply_with_generators(&self.src, &self.tgt, &self.gens, poly)
    }

    /// `phi_{lambda'} . phi_lambda = phi_{lambda + lambda'}`.
    pub fn then(&self, next: &TranslationTransform) -> Result<TranslationTransform> {
        if !same_ring(&self.tgt, &next.src) {
            return Err(Error::ChainMismatch);
        }
        let lam = self.lam.add(&next.lam, self.src.field())?;
        TranslationTransform::new(lam, self.src.clone(), next.tgt.clone())
    }

    /// `phi_{-lambda}`.
    pub fn inverse(&self) -> Result<TranslationTransform> {
        TranslationTransform::new(self.lam.neg(self.src.field()), self.tgt.clone(), self.src.clone())
    }

    /// `E^tgt_a(phi_lambda(F)) = E^src_{a + lambda}(F)`.
    pub fn eval_shift_check(&self, poly: &SkewPoly, a: &VecFq) -> Result<bool> {
        let lhs = self.apply(poly)?.evaluate(a)?;
        let rhs = poly.evaluate(&a.add(&self.lam, self.src.field())?)?;
        Ok(lhs == rhs)
    }
}

/// The reordered form of an affine transform: translate in the source ring
/// first, then apply the linear map.
#[derive(Clone, Debug)]
pub struct TranslateThenLinear {
    pub translation: TranslationTransform,
    pub linear: LinearTransform,
}

impl TranslateThenLinear {
    pub fn apply(&self, poly: &SkewPoly) -> Result<SkewPoly> {
        self.linear.apply(&self.translation.apply(poly)?)
    }
}

/// `T_{A, lambda} = phi_lambda . phi_A`: `src -> mid -> tgt`.
#[derive(Clone, Debug)]
pub struct AffineTransform {
    linear: LinearTransform,
    translation: TranslationTransform,
}

impl AffineTransform {
    /// Chains a linear leg and a translation leg.
    pub fn from_legs(linear: LinearTransform, translation: TranslationTransform) -> Result<Self> {
        if !same_ring(&linear.tgt, &translation.src) {
            return Err(Error::ChainMismatch);
        }
        Ok(AffineTransform { linear, translation })
    }

    /// Validates `(A, lambda)` between explicit `src` and `tgt`; the middle ring
    /// `F[x; A^{-1} sigma A, A^{-1} d]` is derived from `src`.
    pub fn new(a: MatFq, lam: VecFq, src: Arc<RingCtx>, tgt: Arc<RingCtx>) -> Result<Self> {
        let linear = LinearTransform::induced(src, a)?;
        let translation = TranslationTransform::new(lam, linear.tgt.clone(), tgt)?;
        Self::from_legs(linear, translation)
    }

    /// `T_{A, lambda}` out of `src` with the target ring built to fit.
    pub fn induced(src: Arc<RingCtx>, a: MatFq, lam: VecFq) -> Result<Self> {
        let linear = LinearTransform::induced(src, a)?;
        let translation = TranslationTransform::induced(linear.tgt.clone(), lam)?;
        Self::from_legs(linear, translation)
    }

    pub fn identity(ring: Arc<RingCtx>) -> Self {
        let n = ring.n();
        Self::induced(ring, MatFq::identity(n), VecFq::zeros(n)).expect("identity transform")
    }

    pub fn matrix(&self) -> &MatFq {
        &self.linear.a
    }

    pub fn vector(&self) -> &VecFq {
        &self.translation.lam
    }

    pub fn linear(&self) -> &LinearTransform {
        &self.linear
    }

    pub fn translation(&self) -> &TranslationTransform {
        &self.translation
    }

    pub fn src(&self) -> &Arc<RingCtx> {
        &self.linear.src
    }

    pub fn mid(&self) -> &Arc<RingCtx> {
        &self.linear.tgt
    }

    pub fn tgt(&self) -> &Arc<RingCtx> {
        &self.translation.tgt
    }

    /// `A lambda`, the constant part of every generator image.
    pub fn offset(&self) -> VecFq {
        self.linear.a.mul_vec(&self.translation.lam, self.src().field()).expect("dimensions agree")
    }

    /// `T(x_i) = sum_j a_{ij} x_j + (A lambda)_i`, as polynomials in `tgt`.
    pub fn generator_images(&self) -> Vec<SkewPoly> {
        let off = self.offset();
        (0..self.src().n())
            .map(|i| {
                let mut terms: Vec<(Monomial, FieldElement)> =
                    (0..self.src().n()).map(|j| (Monomial::var(j), self.linear.a[(i, j)])).collect();
                terms.push((Monomial::one(), off[i]));
                SkewPoly::from_terms(self.tgt(), terms).expect("valid terms")
            })
            .collect()
    }

    pub fn apply(&self, poly: &SkewPoly) -> Result<SkewPoly> {
        self.translation.apply(&self.linear.apply(poly)?)
    }

    /// Reorders `phi_lambda . phi_A` into `phi_A . phi_{A lambda}`.
    pub fn swap_order(&self) -> Result<TranslateThenLinear> {
        let translation = TranslationTransform::induced(self.src().clone(), self.offset())?;
        let linear =
            LinearTransform::new(self.linear.a.clone(), translation.tgt.clone(), self.tgt().clone())?;
        Ok(TranslateThenLinear { translation, linear })
    }

    /// `next . self`, normalised back to linear-then-translate form.
    ///
    /// The inner pair `phi_B . phi_lambda` is pushed past each other into
    /// `phi_{B^{-1} lambda} . phi_B`, then the two linear legs and the two
    /// translation legs are merged.
    pub fn then(&self, next: &AffineTransform) -> Result<AffineTransform> {
        if !same_ring(self.tgt(), next.src()) {
            return Err(Error::ChainMismatch);
        }
        let f = self.src().field().clone();
        let b = next.matrix();
        // phi_B out of self.mid, then the translation that closes the square.
        let b_first = LinearTransform::induced(self.mid().clone(), b.clone())?;
        let shifted = b.inv(&f)?.mul_vec(self.vector(), &f)?;
        let bridge = TranslationTransform::new(shifted, b_first.tgt.clone(), next.mid().clone())?;
        let linear = self.linear.then(&b_first)?;
        let translation = bridge.then(&next.translation)?;
        AffineTransform::from_legs(linear, translation)
    }

    /// `T^{-1} = T_{A^{-1}, -A lambda}`, from `tgt` back to `src`.
    pub fn inverse(&self) -> Result<AffineTransform> {
        let f = self.src().field();
        let a_inv = self.linear.a_inv.clone();
        let lam = self.offset().neg(f);
        AffineTransform::new(a_inv, lam, self.tgt().clone(), self.src().clone())
    }

    /// `E^tgt_a(T(F)) = E^src_{A(a + lambda)}(F)`.
    pub fn eval_shift_check(&self, poly: &SkewPoly, a: &VecFq) -> Result<bool> {
        let f = self.src().field();
        let lhs = self.apply(poly)?.evaluate(a)?;
        let shifted = self.linear.a.mul_vec(&a.add(self.vector(), f)?, f)?;
        Ok(lhs == poly.evaluate(&shifted)?)
    }

    /// Recovers `T` from proposed images `T(x_1), ..., T(x_n)` in `tgt`.
    ///
    /// Each image must have degree at most one; its linear coefficients form
    /// `A` and its constants form `A lambda`.
    pub fn reconstruct(images: &[SkewPoly], src: Arc<RingCtx>, tgt: Arc<RingCtx>) -> Result<Self> {
        let n = src.n();
        if images.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: images.len() });
        }
        let f = src.field().clone();
        let mut a = MatFq::zeros(n, n);
        let mut off = VecFq::zeros(n).into_inner();
        for (i, img) in images.iter().enumerate() {
            if !same_ring(img.ring(), &tgt) {
                return Err(Error::RingMismatch);
            }
            if let Degree::Finite(d) = img.degree() {
                if d > 1 {
                    return Err(Error::NotAffine { index: i + 1, degree: d });
                }
            }
            for j in 0..n {
                a.set(i, j, img.coeff(&Monomial::var(j)));
            }
            off[i] = img.coeff(&Monomial::one());
        }
        let a_inv = a.inv(&f).map_err(|_| Error::SingularLinearPart)?;
        let lam = a_inv.mul_vec(&VecFq::new(off), &f)?;
        AffineTransform::new(a, lam, src, tgt)
    }
}
