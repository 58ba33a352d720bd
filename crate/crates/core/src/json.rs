//! JSON schemas for fields, matrices, morphisms, rings, polynomials and
//! transforms, with conversions to and from the library types.
//!
//! Elements are written as their integer encodings, matrices as row-major
//! arrays, monomials as 1-based variable lists (`[]` is the constant 1).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::CanonicalForm;
use crate::error::Error;
use crate::freering::{Monomial, RingCtx, SkewPoly};
use crate::gf::{FieldCtx, FieldElement, DEFAULT_FIELD_CAP};
use crate::matfq::{MatFq, VecFq};
use crate::morphism::{DiagonalSpec, MatrixMorphism, VecDerivation};
use crate::transform::AffineTransform;

/// A JSON document that is well formed but does not describe an object,
/// or one that describes an object the library rejects.
#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> Self {
        SpecError::Malformed(e.to_string())
    }
}

pub type SpecResult<T> = std::result::Result<T, SpecError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
}

impl FieldSpec {
    pub fn build(&self) -> SpecResult<Arc<FieldCtx>> {
        let f = match &self.modulus {
            Some(modulus) => FieldCtx::from_modulus(self.p, modulus, self.c, DEFAULT_FIELD_CAP)?,
            None => {
                let f = FieldCtx::new(self.p, self.m)?;
                match self.c {
                    Some(c) => FieldCtx::from_modulus(self.p, f.modulus(), Some(c), DEFAULT_FIELD_CAP)?,
                    None => f,
                }
            }
        };
        if f.m() != self.m {
            return Err(SpecError::Malformed(format!(
                "modulus has degree {} but m = {}",
                f.m(),
                self.m
            )));
        }
        Ok(Arc::new(f))
    }

    pub fn of(f: &FieldCtx) -> Self {
        FieldSpec {
            p: f.p(),
            m: f.m(),
            modulus: Some(f.modulus().to_vec()),
            c: Some(f.primitive().value()),
        }
    }
}

/// `{"field", "n", "S"}` or `{"field", "n", "exps"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub field: FieldSpec,
    pub n: usize,
    #[serde(default, rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exps: Option<Vec<u32>>,
}

impl MorphismSpec {
    pub fn build(&self) -> SpecResult<Arc<MatrixMorphism>> {
        let f = self.field.build()?;
        self.build_in(f)
    }

    fn build_in(&self, f: Arc<FieldCtx>) -> SpecResult<Arc<MatrixMorphism>> {
        match (&self.s, &self.exps) {
            (Some(s), None) => {
                let s = matrix(&f, s, self.n)?;
                Ok(Arc::new(MatrixMorphism::from_primitive_image(f, s)?))
            }
            (None, Some(exps)) => {
                check_len(exps.len(), self.n)?;
                let spec = DiagonalSpec::new(&f, exps.clone())?;
                Ok(Arc::new(MatrixMorphism::diagonal(f, &spec)?))
            }
            _ => Err(SpecError::Malformed("exactly one of \"S\" and \"exps\" is required".into())),
        }
    }

    pub fn of(sigma: &MatrixMorphism) -> Self {
        MorphismSpec {
            field: FieldSpec::of(sigma.field()),
            n: sigma.n(),
            s: Some(sigma.primitive_image().values()),
            exps: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauSpec {
    Id(IdTag),
    Morphism(MorphismSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdTag {
    #[serde(rename = "id")]
    Id,
}

/// `{"sigma": <morphism>, "d0": <vector>, "tau": <morphism> | "id"}`; `tau`
/// defaults to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub sigma: MorphismSpec,
    pub d0: Vec<u32>,
    #[serde(default = "default_tau")]
    pub tau: TauSpec,
}

fn default_tau() -> TauSpec {
    TauSpec::Id(IdTag::Id)
}

impl DerivationSpec {
    pub fn build(&self) -> SpecResult<VecDerivation> {
        let sigma = self.sigma.build()?;
        let f = sigma.field().clone();
        let tau = match &self.tau {
            TauSpec::Id(_) => Arc::new(MatrixMorphism::identity(f.clone(), sigma.n())),
            TauSpec::Morphism(spec) => {
                if spec.field.build()? != f {
                    return Err(Error::FieldMismatch.into());
                }
                spec.build_in(f.clone())?
            }
        };
        let d0 = vector(&f, &self.d0, sigma.n())?;
        Ok(VecDerivation::from_primitive_image(sigma, tau, d0)?)
    }
}

/// A morphism spec plus an optional `"d0"`, the image of the primitive
/// element under the derivation (zero when absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub n: usize,
    #[serde(default, rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exps: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0: Option<Vec<u32>>,
}

impl RingSpec {
    pub fn build(&self) -> SpecResult<Arc<RingCtx>> {
        let morphism = MorphismSpec {
            field: self.field.clone(),
            n: self.n,
            s: self.s.clone(),
            exps: self.exps.clone(),
        };
        let sigma = morphism.build()?;
        let ring = match &self.d0 {
            None => RingCtx::with_zero_derivation(sigma)?,
            Some(d0) => {
                let f = sigma.field().clone();
                let id = Arc::new(MatrixMorphism::identity(f.clone(), self.n));
                let d0 = vector(&f, d0, self.n)?;
                let delta = VecDerivation::from_primitive_image(sigma.clone(), id, d0)?;
                RingCtx::new(sigma, Arc::new(delta))?
            }
        };
        Ok(Arc::new(ring))
    }

    pub fn of(ring: &RingCtx) -> Self {
        RingSpec {
            field: FieldSpec::of(ring.field()),
            n: ring.n(),
            s: Some(ring.sigma().primitive_image().values()),
            exps: None,
            d0: Some(ring.delta().primitive_image().values()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub mono: Vec<usize>,
    pub coeff: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolySpec {
    pub terms: Vec<TermSpec>,
}

impl PolySpec {
    /// Repeated monomials are summed.
    pub fn build(&self, ring: &Arc<RingCtx>) -> SpecResult<SkewPoly> {
        let f = ring.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((Monomial::from_one_based(&t.mono, ring.n())?, f.elem(t.coeff)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(SkewPoly::from_terms(ring, terms)?)
    }

    /// Terms in descending degree-lexicographic order.
    pub fn of(poly: &SkewPoly) -> Self {
        let mut terms: Vec<TermSpec> = poly
            .terms()
            .map(|(m, c)| TermSpec { mono: m.one_based(), coeff: c.value() })
            .collect();
        terms.reverse();
        PolySpec { terms }
    }
}

/// `{"A", "lambda", "src", "tgt"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
    pub lambda: Vec<u32>,
    pub src: RingSpec,
    pub tgt: RingSpec,
}

impl TransformSpec {
    pub fn of(t: &AffineTransform) -> Self {
        TransformSpec {
            a: t.matrix().values(),
            lambda: t.vector().values(),
            src: RingSpec::of(t.src()),
            tgt: RingSpec::of(t.tgt()),
        }
    }

    pub fn build(&self) -> SpecResult<AffineTransform> {
        let src = self.src.build()?;
        let tgt = self.tgt.build()?;
        if src.field() != tgt.field() {
            return Err(Error::FieldMismatch.into());
        }
        let f = src.field();
        let a = matrix(f, &self.a, src.n())?;
        let lam = vector(f, &self.lambda, src.n())?;
        Ok(AffineTransform::new(a, lam, src, tgt)?)
    }
}

/// `{"A", "lambda", "exps"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
    pub lambda: Vec<u32>,
    pub exps: Vec<u32>,
}

impl CanonicalSpec {
    pub fn of(cf: &CanonicalForm) -> Self {
        CanonicalSpec { a: cf.a.values(), lambda: cf.lam.values(), exps: cf.spec.exps().to_vec() }
    }
}

fn check_len(got: usize, n: usize) -> SpecResult<()> {
    if got != n {
        return Err(Error::DimensionMismatch { expected: n, got }.into());
    }
    Ok(())
}

/// An `n x n` matrix of encodings.
pub fn matrix(f: &FieldCtx, rows: &[Vec<u32>], n: usize) -> SpecResult<MatFq> {
    check_len(rows.len(), n)?;
    for r in rows {
        check_len(r.len(), n)?;
    }
    Ok(MatFq::from_values(f, rows)?)
}

/// A length-`n` vector of encodings.
pub fn vector(f: &FieldCtx, values: &[u32], n: usize) -> SpecResult<VecFq> {
    check_len(values.len(), n)?;
    Ok(VecFq::from_values(f, values)?)
}

pub fn element(f: &FieldCtx, v: u32) -> SpecResult<FieldElement> {
    Ok(f.elem(v)?)
}
