#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use skewring::{
    AffineTransform, DiagonalSpec, FieldCtx, MatFq, MatrixMorphism, RingCtx, SkewPoly, VecDerivation, VecFq,
};

pub fn field(p: u32, m: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, m).unwrap())
}

pub fn diag_ring(f: &Arc<FieldCtx>, exps: &[u32]) -> Arc<RingCtx> {
    let spec = DiagonalSpec::new(f, exps.to_vec()).unwrap();
    Arc::new(RingCtx::diagonal(f.clone(), &spec).unwrap())
}

/// `sigma = A diag(exps) A^{-1}`, `delta(a) = A (lambda a - diag(exps)(a) lambda)`.
pub fn planted_ring(f: &Arc<FieldCtx>, exps: &[u32], a: &MatFq, lam: &VecFq) -> Arc<RingCtx> {
    let spec = DiagonalSpec::new(f, exps.to_vec()).unwrap();
    let tau = Arc::new(MatrixMorphism::diagonal(f.clone(), &spec).unwrap());
    let inner = VecDerivation::inner_sigma(tau, lam).unwrap();
    let delta = Arc::new(inner.transform(a).unwrap());
    Arc::new(RingCtx::new(delta.sigma().clone(), delta).unwrap())
}

pub fn random_exps<R: Rng + ?Sized>(f: &FieldCtx, n: usize, rng: &mut R) -> Vec<u32> {
    (0..n).map(|_| rng.random_range(0..f.m())).collect()
}

pub fn random_planted<R: Rng + ?Sized>(f: &Arc<FieldCtx>, n: usize, rng: &mut R) -> (Arc<RingCtx>, Vec<u32>) {
    let exps = random_exps(f, n, rng);
    let a = MatFq::random_invertible(f, n, rng);
    let lam = VecFq::random(f, n, rng);
    let mut sorted = exps.clone();
    sorted.sort();
    (planted_ring(f, &exps, &a, &lam), sorted)
}

/// F_4, n = 2, sigma = diag(Frob, Id), delta inner with lambda = (c, 1).
pub fn skew_f4() -> Arc<RingCtx> {
    let f = field(2, 2);
    let lam = VecFq::from_values(&f, &[2, 1]).unwrap();
    planted_ring(&f, &[1, 0], &MatFq::identity(2), &lam)
}

pub fn random_affine<R: Rng + ?Sized>(src: &Arc<RingCtx>, rng: &mut R) -> AffineTransform {
    let f = src.field();
    let a = MatFq::random_invertible(f, src.n(), rng);
    let lam = VecFq::random(f, src.n(), rng);
    AffineTransform::induced(src.clone(), a, lam).unwrap()
}

pub fn random_point<R: Rng + ?Sized>(ring: &RingCtx, rng: &mut R) -> VecFq {
    VecFq::random(ring.field(), ring.n(), rng)
}

/// Every property an affine transform must have, checked on `samples`:
/// multiplicativity on consecutive pairs, degree preservation, evaluation
/// shifting at `points`, the inverse round trip, and the reordered form.
pub fn check_affine(t: &AffineTransform, samples: &[SkewPoly], points: &[VecFq]) -> Result<(), String> {
    let inv = t.inverse().map_err(|e| e.to_string())?;
    let swapped = t.swap_order().map_err(|e| e.to_string())?;
    for (k, p) in samples.iter().enumerate() {
        let tp = t.apply(p).map_err(|e| e.to_string())?;
        if tp.degree() != p.degree() {
            return Err(format!("degree changed for sample {k}"));
        }
        let q = &samples[(k + 1) % samples.len()];
        let lhs = t.apply(&p.mul(q).unwrap()).unwrap();
        let rhs = tp.mul(&t.apply(q).unwrap()).unwrap();
        if lhs != rhs {
            return Err(format!("not multiplicative on samples {k}, {}", (k + 1) % samples.len()));
        }
        if inv.apply(&tp).unwrap() != *p {
            return Err(format!("inverse does not undo sample {k}"));
        }
        if swapped.apply(p).unwrap() != tp {
            return Err(format!("reordered form differs on sample {k}"));
        }
        for a in points {
            if !t.eval_shift_check(p, a).unwrap() {
                return Err(format!("evaluation shift fails for sample {k} at {:?}", a.values()));
            }
        }
    }
    Ok(())
}
