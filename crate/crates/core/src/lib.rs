//! Free multivariate skew polynomial rings `F_q[x_1, ..., x_n; sigma, delta]`
//! over finite fields.
//!
//! Scalars commute past variables by `x a = sigma(a) x + delta(a)`, where
//! `sigma: F_q -> F_q^{n x n}` is a ring morphism and `delta` a
//! `sigma`-derivation. The crate provides exact arithmetic in these rings,
//! evaluation at points of `F_q^n`, affine changes of variables between
//! rings, and reduction of any ring to a diagonal representative with zero
//! derivation.
//!
//! ```
//! use std::sync::Arc;
//! use skewring::{FieldCtx, RingCtx, SkewPoly, DiagonalSpec};
//!
//! let f = Arc::new(FieldCtx::new(2, 2).unwrap());
//! let ring = Arc::new(RingCtx::diagonal(f.clone(), &DiagonalSpec::new(&f, vec![1]).unwrap()).unwrap());
//! let c = f.primitive();
//! let x = SkewPoly::var(&ring, 0);
//! // x c = c^2 x
//! let lhs = x.mul(&SkewPoly::constant(&ring, c)).unwrap();
//! assert_eq!(lhs, x.scalar_mul_left(f.mul(c, c)));
//! ```

pub mod classify;
pub mod error;
pub mod freering;
pub mod gf;
pub mod json;
pub mod matfq;
pub mod morphism;
pub mod par;
pub mod transform;

pub use classify::{canonical_form, is_vanishing, isomorphic, isomorphism_class, CanonicalForm};
pub use error::{Error, Result};
pub use freering::{Degree, Monomial, RingCtx, SkewPoly};
pub use gf::{FieldCtx, FieldElement};
pub use matfq::{MatFq, VecFq};
pub use morphism::{DiagonalSpec, MatrixMorphism, VecDerivation};
pub use par::Strategy;
pub use transform::{AffineTransform, LinearTransform, TranslationTransform};
