//! Reduction of `F_q[x; sigma, delta]` to a diagonal ring `F_q[x; sigma_1, ..., sigma_n]`
//! with zero derivation, and comparison of rings by their Frobenius exponents.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freering::{RingCtx, SkewPoly};
use crate::gf::FieldElement;
use crate::matfq::{MatFq, VecFq};
use crate::morphism::DiagonalSpec;
use crate::par::{self, Strategy};
use crate::transform::{AffineTransform, LinearTransform, TranslationTransform};

/// Largest number of points `is_vanishing` will enumerate by default.
pub const DEFAULT_VANISHING_CAP: u64 = 1 << 20;

/// `T_{A, lambda}` taking a ring onto its diagonal representative.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub a: MatFq,
    pub lam: VecFq,
    pub spec: DiagonalSpec,
    pub witness: AffineTransform,
}

pub fn canonical_form(ring: &Arc<RingCtx>) -> Result<CanonicalForm> {
    let (a, spec) = ring.sigma().diagonalize()?;
    let linear = LinearTransform::induced(ring.clone(), a.clone())?;
    let lam = linear.tgt().delta().inner_vector()?;
    let translation = TranslationTransform::induced(linear.tgt().clone(), lam.clone())?;
    let witness = AffineTransform::from_legs(linear, translation)?;

    let target = RingCtx::diagonal(ring.field().clone(), &spec)?;
    if **witness.tgt() != target {
        return Err(Error::VerificationFailed { element: 0, what: "canonical target" });
    }
    Ok(CanonicalForm { a, lam, spec, witness })
}

/// The sorted Frobenius exponents of a ring.
pub fn isomorphism_class(ring: &Arc<RingCtx>) -> Result<Vec<u32>> {
    Ok(ring.sigma().diagonalize()?.1.exps().to_vec())
}

#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub isomorphic: bool,
    pub classes: (Vec<u32>, Vec<u32>),
    pub witness: Option<AffineTransform>,
}

/// Compares two rings over the same field; when they are isomorphic the
/// witness is `cf(r2)^{-1} . P . cf(r1)`.
pub fn isomorphic(r1: &Arc<RingCtx>, r2: &Arc<RingCtx>) -> Result<Isomorphism> {
    if r1.field() != r2.field() {
        return Err(Error::FieldMismatch);
    }
    if r1.n() != r2.n() {
        return Err(Error::DimensionMismatch { expected: r1.n(), got: r2.n() });
    }
    let cf1 = canonical_form(r1)?;
    let cf2 = canonical_form(r2)?;
    let classes = (cf1.spec.exps().to_vec(), cf2.spec.exps().to_vec());
    if classes.0 != classes.1 {
        return Ok(Isomorphism { isomorphic: false, classes, witness: None });
    }
    let perm = permutation_transform(cf1.witness.tgt(), cf2.witness.tgt(), &identity_perm(r1.n()))?;
    let witness = cf1.witness.then(&perm)?.then(&cf2.witness.inverse()?)?;
    Ok(Isomorphism { isomorphic: true, classes, witness: Some(witness) })
}

fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// The transform `x_i -> x_{s(i)}` between diagonal rings with
/// `exps_src[i] = exps_tgt[s(i)]`.
pub fn permutation_transform(
    src: &Arc<RingCtx>,
    tgt: &Arc<RingCtx>,
    s: &[usize],
) -> Result<AffineTransform> {
    let n = src.n();
    if s.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: s.len() });
    }
    let mut p = MatFq::zeros(n, n);
    for (i, &si) in s.iter().enumerate() {
        p.set(i, si, FieldElement::ONE);
    }
    AffineTransform::new(p, VecFq::zeros(n), src.clone(), tgt.clone())
}

/// Whether `poly` evaluates to zero at every point of `F_q^n`.
pub fn is_vanishing(poly: &SkewPoly) -> Result<bool> {
    is_vanishing_with(poly, DEFAULT_VANISHING_CAP, Strategy::default())
}

pub fn is_vanishing_with(poly: &SkewPoly, cap: u64, strategy: Strategy) -> Result<bool> {
    let ring = poly.ring();
    let size = (ring.field().q() as u64)
        .checked_pow(ring.n() as u32)
        .unwrap_or(u64::MAX);
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    if poly.is_zero() {
        return Ok(true);
    }
    Ok(par::all(0..size as usize, strategy, |idx| {
        poly.evaluate_unchecked(&ring.point_at(idx as u64)).is_zero()
    }))
}

/// Vanishing samples stay vanishing under `t`, and vanishing images pull back
/// to vanishing polynomials under `t^{-1}`.
pub fn ideal_preservation_check(t: &AffineTransform, samples: &[SkewPoly]) -> Result<bool> {
    let inv = t.inverse()?;
    for poly in samples {
        let image = t.apply(poly)?;
        let (v, vi) = (is_vanishing(poly)?, is_vanishing(&image)?);
        if v && !vi {
            return Ok(false);
        }
        if vi && !is_vanishing(&inv.apply(&image)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
