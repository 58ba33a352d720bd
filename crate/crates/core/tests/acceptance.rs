//! One check per acceptance criterion. Prints a PASS/FAIL line for each and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewring::classify::ideal_preservation_check;
use skewring::freering::monomials_up_to;
use skewring::par::{self, Strategy};
use skewring::{
    canonical_form, is_vanishing, isomorphic, AffineTransform, DiagonalSpec, FieldCtx, FieldElement, LinearTransform,
    MatFq, MatrixMorphism, RingCtx, SkewPoly, TranslationTransform, VecDerivation, VecFq,
};

use common::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn seeded(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

fn prime_powers(max: u32) -> Vec<(u32, u32)> {
    (2..=max)
        .filter_map(|q| {
            let p = (2..=q).find(|d| q % d == 0)?;
            let mut r = q;
            let mut m = 0;
            while r % p == 0 {
                r /= p;
                m += 1;
            }
            (r == 1).then_some((p, m))
        })
        .collect()
}

fn all_exps(m: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..m).map(move |j| [v.clone(), vec![j]].concat())).collect();
    }
    out
}

/// 1. Valid morphisms `F_q -> F_q^{1x1}` are exactly the Frobenius maps.
fn morphism_classification() -> Check {
    let mut slowest = Duration::ZERO;
    for &(p, m) in &[(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
        let start = Instant::now();
        let f = field(p, m);
        let mut valid = BTreeSet::new();
        for s in f.elements().skip(1) {
            if let Ok(sigma) = MatrixMorphism::from_primitive_image(f.clone(), MatFq::diag(&[s])) {
                for j in 0..m {
                    if f.elements().all(|a| sigma.apply(a)[(0, 0)] == f.frobenius(a, j)) {
                        valid.insert(j);
                    }
                }
                ensure!(
                    (0..m).any(|j| f.frobenius(f.primitive(), j) == s),
                    "F_{}: S = {} accepted but is not a Frobenius image",
                    f.q(),
                    s
                );
            }
        }
        ensure!(valid.len() == m as usize, "F_{}: found {} valid morphisms, expected {}", f.q(), valid.len(), m);
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(took < Duration::from_secs(1), "F_{} took {:?}", f.q(), took);
    }
    Ok(format!("6 fields, slowest {slowest:.2?}"))
}

/// 2. Every valid `(sigma, tau)`-derivation is inner with the reconstructed vector.
fn inner_derivations() -> Check {
    let start = Instant::now();
    let mut total = 0usize;
    for &(p, m) in &[(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
        let f = field(p, m);
        for n in 1..=2usize {
            let specs = all_exps(m, n);
            let points: Vec<VecFq> = (0..(f.q() as u64).pow(n as u32))
                .map(|idx| RingCtx::conventional(f.clone(), n).point_at(idx))
                .collect();
            for es in &specs {
                for et in &specs {
                    let sigma = Arc::new(ok(MatrixMorphism::diagonal(f.clone(), &ok(DiagonalSpec::new(&f, es.clone()))?))?);
                    let tau = Arc::new(ok(MatrixMorphism::diagonal(f.clone(), &ok(DiagonalSpec::new(&f, et.clone()))?))?);
                    let mut valid = BTreeSet::new();
                    for d0 in &points {
                        let Ok(delta) = VecDerivation::from_primitive_image(sigma.clone(), tau.clone(), d0.clone())
                        else {
                            continue;
                        };
                        let lam = ok(delta.inner_vector())?;
                        let inner = ok(VecDerivation::inner(sigma.clone(), tau.clone(), &lam))?;
                        ensure!(inner.table() == delta.table(), "q={} n={n} d0={:?}: not inner", f.q(), d0.values());
                        valid.insert(delta.primitive_image().values());
                        total += 1;
                    }
                    // and every inner derivation is among the valid ones
                    for lam in &points {
                        let inner = ok(VecDerivation::inner(sigma.clone(), tau.clone(), lam))?;
                        ensure!(valid.contains(&inner.primitive_image().values()), "inner derivation missed");
                    }
                }
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(30), "took {took:?}");
    Ok(format!("{total} valid derivations, {took:.2?}"))
}

/// 3. Random conjugates of diagonal morphisms are diagonalized exactly.
fn diagonalization() -> Check {
    let start = Instant::now();
    let mut rng = seeded(3);
    let mut count = 0;
    for (p, m) in prime_powers(16) {
        let f = field(p, m);
        for n in 1..=3usize {
            for _ in 0..200 {
                let exps = random_exps(&f, n, &mut rng);
                let d = ok(MatrixMorphism::diagonal(f.clone(), &ok(DiagonalSpec::new(&f, exps.clone()))?))?;
                let a = MatFq::random_invertible(&f, n, &mut rng);
                let sigma = ok(MatrixMorphism::from_primitive_image(f.clone(), ok(d.conjugate(&a))?.primitive_image().clone()))?;
                let (b, spec) = ok(sigma.diagonalize())?;
                let back = ok(ok(MatrixMorphism::diagonal(f.clone(), &spec))?.conjugate(&b))?;
                ensure!(back.table() == sigma.table(), "q={} n={n}: reconstruction differs", f.q());
                let mut sorted = exps.clone();
                sorted.sort();
                ensure!(spec.exps() == sorted.as_slice(), "q={} n={n}: exps {:?} vs {:?}", f.q(), spec.exps(), sorted);
                count += 1;
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("{count} morphisms, {took:.2?}"))
}

/// 4. `a -> a^4 I` and the identity over F_16 are not isomorphic.
fn non_similar_example() -> Check {
    let f = field(2, 4);
    let r1 = diag_ring(&f, &[2, 2]);
    let r2 = Arc::new(RingCtx::conventional(f.clone(), 2));
    let iso = ok(isomorphic(&r1, &r2))?;
    ensure!(!iso.isomorphic, "reported isomorphic");
    ensure!(iso.classes == (vec![2, 2], vec![0, 0]), "classes {:?}", iso.classes);
    let mut rng = seeded(4);
    let c = f.primitive();
    for _ in 0..500 {
        let a = MatFq::random_invertible(&f, 2, &mut rng);
        let conj = ok(ok(a.mul(r2.sigma().apply(c), &f))?.mul(&ok(a.inv(&f))?, &f))?;
        ensure!(conj != *r1.sigma().apply(c), "found a conjugating matrix {:?}", a.values());
    }
    Ok("classes {2,2} vs {0,0}; 500 matrices rejected".into())
}

/// All polynomials of degree <= 2 with at most two terms.
fn small_polys(ring: &Arc<RingCtx>) -> Vec<SkewPoly> {
    let monos = monomials_up_to(ring.n(), 2);
    let nonzero: Vec<FieldElement> = ring.field().elements().skip(1).collect();
    let mut out = vec![SkewPoly::zero(ring)];
    for (i, m1) in monos.iter().enumerate() {
        for &c1 in &nonzero {
            out.push(SkewPoly::term(ring, m1.clone(), c1));
            for m2 in &monos[i + 1..] {
                for &c2 in &nonzero {
                    out.push(SkewPoly::from_terms(ring, [(m1.clone(), c1), (m2.clone(), c2)]).unwrap());
                }
            }
        }
    }
    out
}

fn ring_laws_hold(x: &SkewPoly, y: &SkewPoly, z: &SkewPoly) -> bool {
    let xy = x.mul(y).unwrap();
    xy.mul(z).unwrap() == x.mul(&y.mul(z).unwrap()).unwrap()
        && x.mul(&y.add(z).unwrap()).unwrap() == xy.add(&x.mul(z).unwrap()).unwrap()
        && x.add(y).unwrap().mul(z).unwrap() == x.mul(z).unwrap().add(&y.mul(z).unwrap()).unwrap()
        && xy.degree() == x.degree() + y.degree()
}

fn inner_skew_ring(f: &Arc<FieldCtx>) -> Arc<RingCtx> {
    let lam = VecFq::new(vec![f.primitive(), f.one()]);
    planted_ring(f, &[1.min(f.m() - 1), 0], &MatFq::identity(2), &lam)
}

/// 5. Associativity, distributivity and the degree law.
fn ring_laws() -> Check {
    let start = Instant::now();
    let mut triples = 0u64;
    for (p, m) in [(2, 1), (2, 2)] {
        let ring = inner_skew_ring(&field(p, m));
        let polys = small_polys(&ring);
        // The laws are additive in every argument, so over F_4 it suffices to
        // let the third argument range over single terms once all pairs are
        // covered; over F_2 every triple is checked.
        let thirds: Vec<&SkewPoly> =
            if p == 2 && m == 1 { polys.iter().collect() } else { polys.iter().filter(|z| z.num_terms() == 1).collect() };
        let bad = par::find_first(0..polys.len(), Strategy::default(), |i| {
            for y in &polys {
                for z in &thirds {
                    if !ring_laws_hold(&polys[i], y, z) {
                        return Some(format!("{:?} {:?} {:?}", polys[i], y, z));
                    }
                }
            }
            None
        });
        ensure!(bad.is_none(), "F_{}: laws fail on {}", ring.field().q(), bad.unwrap());
        triples += (polys.len() * polys.len() * thirds.len()) as u64;
    }
    let mut rng = seeded(5);
    let ring = inner_skew_ring(&field(2, 2));
    for _ in 0..1000 {
        let x = SkewPoly::random(&ring, 4, 4, &mut rng);
        let y = SkewPoly::random(&ring, 4, 4, &mut rng);
        let z = SkewPoly::random(&ring, 4, 4, &mut rng);
        ensure!(ring_laws_hold(&x, &y, &z), "random triple fails: {x:?} {y:?} {z:?}");
    }
    Ok(format!("{triples} exhaustive triples + 1000 random, {:.2?}", start.elapsed()))
}

/// 6. Product rule and division reconstruction at every point of F_4^2.
fn evaluation_product_rule() -> Check {
    let start = Instant::now();
    let ring = inner_skew_ring(&field(2, 2));
    let points: Vec<VecFq> = ring.points().collect();
    let mut rng = seeded(6);
    for _ in 0..500 {
        let x = SkewPoly::random(&ring, 4, 5, &mut rng);
        let y = SkewPoly::random(&ring, 4, 5, &mut rng);
        let xy = ok(x.mul(&y))?;
        for a in &points {
            ensure!(ok(xy.evaluate(a))? == ok(x.product_rule_eval(&y, a))?, "product rule fails at {:?}", a.values());
            let (qs, b) = ok(x.divide_linear(a))?;
            ensure!(b == ok(x.evaluate(a))?, "remainder differs from evaluation");
            let mut rebuilt = SkewPoly::constant(&ring, b);
            for (i, g) in qs.iter().enumerate() {
                let lin = ok(SkewPoly::var(&ring, i).sub(&SkewPoly::constant(&ring, a[i])))?;
                rebuilt = ok(rebuilt.add(&ok(g.mul(&lin))?))?;
            }
            ensure!(rebuilt == x, "division does not re-multiply at {:?}", a.values());
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("500 pairs x 16 points, {took:.2?}"))
}

fn transform_ring() -> Arc<RingCtx> {
    let f = field(2, 2);
    let a = MatFq::from_values(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
    let lam = VecFq::from_values(&f, &[2, 1]).unwrap();
    planted_ring(&f, &[1, 0], &a, &lam)
}

fn check_leg(
    apply: &dyn Fn(&SkewPoly) -> skewring::Result<SkewPoly>,
    undo: &dyn Fn(&SkewPoly) -> skewring::Result<SkewPoly>,
    shift: &dyn Fn(&SkewPoly, &VecFq) -> skewring::Result<bool>,
    basis: &[SkewPoly],
    points: &[VecFq],
) -> Result<(), String> {
    for x in basis {
        let tx = ok(apply(x))?;
        ensure!(tx.degree() == x.degree(), "degree changed on {x:?}");
        ensure!(ok(undo(&tx))? == *x, "inverse fails on {x:?}");
        for y in basis {
            ensure!(ok(apply(&ok(x.mul(y))?))? == ok(tx.mul(&ok(apply(y))?))?, "not multiplicative on {x:?}, {y:?}");
        }
        for a in points {
            ensure!(ok(shift(x, a))?, "evaluation shift fails on {x:?} at {:?}", a.values());
        }
    }
    Ok(())
}

/// 7. Linear, translation and affine transforms over F_4, n = 2.
fn transformation_suite() -> Check {
    let start = Instant::now();
    let src = transform_ring();
    let f = src.field().clone();
    let basis: Vec<SkewPoly> =
        monomials_up_to(2, 2).into_iter().map(|m| SkewPoly::term(&src, m, f.one())).collect();
    let points: Vec<VecFq> = src.points().collect();
    let mut rng = seeded(7);
    let mut count = 0;
    // every invertible 2x2 matrix over F_4, each with a random translation
    for idx in 0..(f.q() as u64).pow(4) {
        let v = RingCtx::conventional(f.clone(), 4).point_at(idx);
        let a = ok(MatFq::from_rows(vec![vec![v[0], v[1]], vec![v[2], v[3]]]))?;
        if !a.is_invertible(&f) {
            continue;
        }
        count += 1;
        let lam = VecFq::random(&f, 2, &mut rng);
        let lin = ok(LinearTransform::induced(src.clone(), a.clone()))?;
        let lin_inv = ok(lin.inverse())?;
        check_leg(&|p| lin.apply(p), &|p| lin_inv.apply(p), &|p, x| lin.eval_shift_check(p, x), &basis, &points)?;
        let tr = ok(TranslationTransform::induced(src.clone(), lam.clone()))?;
        let tr_inv = ok(tr.inverse())?;
        check_leg(&|p| tr.apply(p), &|p| tr_inv.apply(p), &|p, x| tr.eval_shift_check(p, x), &basis, &points)?;
        let t = ok(AffineTransform::induced(src.clone(), a.clone(), lam.clone()))?;
        let t_inv = ok(t.inverse())?;
        check_leg(&|p| t.apply(p), &|p| t_inv.apply(p), &|p, x| t.eval_shift_check(p, x), &basis, &points)?;
        let swapped = ok(t.swap_order())?;
        for x in &basis {
            ensure!(ok(swapped.apply(x))? == ok(t.apply(x))?, "reordered form differs on {x:?}");
            ensure!(ok(t.apply(x))? == ok(t.translation().apply(&ok(t.linear().apply(x))?))?, "legs disagree");
        }
        let back = ok(AffineTransform::reconstruct(&t.generator_images(), src.clone(), t.tgt().clone()))?;
        ensure!(back.matrix() == &a && back.vector() == &lam, "reconstruction differs");
    }
    // deeper random inputs through composites
    for _ in 0..50 {
        let t1 = random_affine(&src, &mut rng);
        let t2 = random_affine(t1.tgt(), &mut rng);
        let t12 = ok(t1.then(&t2))?;
        let samples: Vec<SkewPoly> = (0..20).map(|_| SkewPoly::random(&src, 5, 6, &mut rng)).collect();
        for p in &samples {
            ensure!(ok(t12.apply(p))? == ok(t2.apply(&ok(t1.apply(p))?))?, "composite differs");
        }
        let pts: Vec<VecFq> = (0..4).map(|_| random_point(&src, &mut rng)).collect();
        check_affine(&t12, &samples, &pts)?;
    }
    Ok(format!("{count} invertible matrices + 50 random composites, {:.2?}", start.elapsed()))
}

/// 8. Canonical forms of planted rings.
fn canonicalization() -> Check {
    let start = Instant::now();
    let mut rng = seeded(8);
    let mut rings = 0;
    for (p, m) in [(2, 2), (2, 3), (3, 2)] {
        let f = field(p, m);
        for n in 2..=3usize {
            for _ in 0..100 {
                let (ring, sorted) = random_planted(&f, n, &mut rng);
                let cf = ok(canonical_form(&ring))?;
                ensure!(cf.spec.exps() == sorted.as_slice(), "q={} n={n}: {:?} vs {:?}", f.q(), cf.spec.exps(), sorted);
                let target = ok(RingCtx::diagonal(f.clone(), &cf.spec))?;
                ensure!(**cf.witness.tgt() == target, "witness target is not diagonal");
                let samples: Vec<SkewPoly> = (0..50).map(|_| SkewPoly::random(&ring, 3, 4, &mut rng)).collect();
                let pts: Vec<VecFq> = (0..3).map(|_| random_point(&ring, &mut rng)).collect();
                check_affine(&cf.witness, &samples, &pts).map_err(|e| format!("q={} n={n}: {e}", f.q()))?;
                // ring laws and product rule survive in the target ring
                let images: Vec<SkewPoly> =
                    samples.iter().take(6).map(|p| cf.witness.apply(p)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
                for w in images.windows(3) {
                    ensure!(ring_laws_hold(&w[0], &w[1], &w[2]), "ring laws fail on images");
                    ensure!(
                        ok(ok(w[0].mul(&w[1]))?.evaluate(&pts[0]))? == ok(w[0].product_rule_eval(&w[1], &pts[0]))?,
                        "product rule fails on images"
                    );
                }
                rings += 1;
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(300), "took {took:?}");
    Ok(format!("{rings} rings, {took:.2?}"))
}

/// Vanishing polynomials of degree <= `deg`: the kernel of the evaluation map
/// on the monomial basis.
fn vanishing_basis(ring: &Arc<RingCtx>, deg: usize) -> Vec<SkewPoly> {
    let f = ring.field();
    let monos = monomials_up_to(ring.n(), deg);
    let points: Vec<VecFq> = ring.points().collect();
    let mut e = MatFq::zeros(points.len(), monos.len());
    for (j, m) in monos.iter().enumerate() {
        let poly = SkewPoly::term(ring, m.clone(), f.one());
        for (i, a) in points.iter().enumerate() {
            e.set(i, j, poly.evaluate(a).unwrap());
        }
    }
    e.kernel_basis(f)
        .into_iter()
        .map(|v| SkewPoly::from_terms(ring, monos.iter().cloned().zip(v.iter().copied())).unwrap())
        .collect()
}

/// 9. The vanishing ideal is carried onto the vanishing ideal.
fn vanishing_ideal() -> Check {
    let f = field(2, 1);
    let conv = Arc::new(RingCtx::conventional(f.clone(), 2));
    let x = |i| SkewPoly::var(&conv, i);
    let mut gens = Vec::new();
    for i in 0..2 {
        gens.push(ok(ok(x(i).mul(&x(i)))?.sub(&x(i)))?);
        for j in 0..2 {
            if i != j {
                gens.push(ok(ok(x(i).mul(&x(j)))?.sub(&ok(x(j).mul(&x(i)))?))?);
            }
        }
    }
    for g in &gens {
        ensure!(ok(is_vanishing(g))?, "{g:?} does not vanish");
    }
    let mut rng = seeded(9);
    for _ in 0..20 {
        let t = random_affine(&conv, &mut rng);
        for g in &gens {
            ensure!(ok(is_vanishing(&ok(t.apply(g))?))?, "image of {g:?} does not vanish");
        }
        ensure!(ok(ideal_preservation_check(&t, &gens))?, "ideal not preserved");
    }
    // genuinely skew rings: kernel elements of the evaluation map, moved by
    // random affine transforms
    let mut moved = 0;
    for (p, m) in [(2, 2), (3, 2)] {
        let ring = random_planted(&field(p, m), 2, &mut rng).0;
        let basis = vanishing_basis(&ring, 3);
        ensure!(!basis.is_empty(), "no vanishing polynomials of degree <= 3 over F_{}", ring.field().q());
        for _ in 0..20 {
            let t = random_affine(&ring, &mut rng);
            for g in &basis {
                ensure!(ok(is_vanishing(g))?, "kernel element does not vanish");
                ensure!(ok(is_vanishing(&ok(t.apply(g))?))?, "image of kernel element does not vanish");
                moved += 1;
            }
            ensure!(ok(ideal_preservation_check(&t, &basis))?, "ideal not preserved");
        }
    }
    Ok(format!("{} generators x 20 transforms; {moved} skew images", gens.len()))
}

/// 10. `C(q-1, i) = (-1)^i (mod p)` in every field of order at most 64.
fn binomial_self_test() -> Check {
    let fields = prime_powers(64);
    for &(p, m) in &fields {
        let f = ok(FieldCtx::new(p, m))?;
        ensure!(f.signed_binomial_check(), "fails for q = {}", f.q());
    }
    Ok(format!("{} fields", fields.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("morphism classification", morphism_classification),
        ("inner derivations", inner_derivations),
        ("diagonalization", diagonalization),
        ("non-similar morphisms over F_16", non_similar_example),
        ("ring laws", ring_laws),
        ("evaluation and product rule", evaluation_product_rule),
        ("transformation suite", transformation_suite),
        ("canonicalization", canonicalization),
        ("vanishing ideal", vanishing_ideal),
        ("binomial self-test", binomial_self_test),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why} ({:.2?})", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
