use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewring::classify::is_vanishing_with;
use skewring::par::{self, Strategy};
use skewring::{
    canonical_form, DiagonalSpec, FieldCtx, MatFq, MatrixMorphism, Monomial, RingCtx, SkewPoly, VecDerivation, VecFq,
};

const SEED: u64 = 745;
const STRATEGIES: [(&str, Strategy); 2] = [("seq", Strategy::Sequential), ("par", Strategy::Parallel)];

fn planted(f: &Arc<FieldCtx>, n: usize, rng: &mut ChaCha8Rng) -> Arc<RingCtx> {
    let exps = (0..n).map(|_| rng.random_range(0..f.m())).collect();
    let tau = Arc::new(MatrixMorphism::diagonal(f.clone(), &DiagonalSpec::new(f, exps).unwrap()).unwrap());
    let a = MatFq::random_invertible(f, n, rng);
    let lam = VecFq::random(f, n, rng);
    let delta = Arc::new(VecDerivation::inner_sigma(tau, &lam).unwrap().transform(&a).unwrap());
    Arc::new(RingCtx::new(delta.sigma().clone(), delta).unwrap())
}

fn morphism_validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("morphism_validation");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (p, m) in [(2u32, 6u32), (3, 4), (2, 8)] {
        let f = Arc::new(FieldCtx::new(p, m).unwrap());
        let n = 3;
        let ring = planted(&f, n, &mut rng);
        let s = ring.sigma().primitive_image().clone();
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, f.q()), &s, |b, s| {
                b.iter(|| MatrixMorphism::from_primitive_image_with(f.clone(), black_box(s.clone()), strategy).unwrap())
            });
        }
    }
    group.finish();
}

fn vanishing_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_vanishing");
    group.sample_size(10);
    for (p, m, n) in [(2u32, 2u32, 4usize), (2, 3, 4), (3, 2, 4)] {
        let f = Arc::new(FieldCtx::new(p, m).unwrap());
        let ring = Arc::new(RingCtx::conventional(f.clone(), n));
        // G (x_1^q - x_1) lies in the left ideal of vanishing polynomials,
        // so the scan visits every point
        let x1 = SkewPoly::var(&ring, 0);
        let field_eq = SkewPoly::term(&ring, Monomial::new(vec![0; f.q() as usize]), f.one()).sub(&x1).unwrap();
        let g = SkewPoly::var(&ring, n - 1).mul(&x1).unwrap().add(&SkewPoly::one(&ring)).unwrap();
        let poly = g.mul(&field_eq).unwrap();
        let size = (f.q() as u64).pow(n as u32);
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, size), &poly, |b, poly| {
                b.iter(|| is_vanishing_with(black_box(poly), u64::MAX, strategy).unwrap())
            });
        }
    }
    group.finish();
}

fn canonical_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form_batch");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (p, m) in [(2u32, 3u32), (3, 2)] {
        let f = Arc::new(FieldCtx::new(p, m).unwrap());
        let rings: Vec<Arc<RingCtx>> = (0..64).map(|_| planted(&f, 3, &mut rng)).collect();
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, f.q()), &rings, |b, rings| {
                b.iter(|| par::map(0..rings.len(), strategy, |i| canonical_form(&rings[i]).unwrap().spec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, morphism_validation, vanishing_scan, canonical_batch);
criterion_main!(benches);
