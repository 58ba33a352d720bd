use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use skewring::json::{
    vector, CanonicalSpec, DerivationSpec, MorphismSpec, PolySpec, RingSpec, SpecError, SpecResult, TransformSpec,
};
use skewring::{canonical_form, is_vanishing, isomorphic, AffineTransform, RingCtx, SkewPoly, VecFq};

use crate::Command;

fn parse<T: DeserializeOwned>(text: &str) -> SpecResult<T> {
    Ok(serde_json::from_str(text)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("schema types serialize")
}

pub fn run(command: Command, text: &str, seed: u64) -> SpecResult<Value> {
    match command {
        Command::VerifyMorphism => {
            let sigma = parse::<MorphismSpec>(text)?.build()?;
            Ok(json!({ "valid": true, "n": sigma.n(), "S": sigma.primitive_image().values() }))
        }
        Command::VerifyDerivation => {
            let delta = parse::<DerivationSpec>(text)?.build()?;
            let lam = delta.inner_vector()?;
            Ok(json!({ "valid": true, "d0": delta.primitive_image().values(), "lambda": lam.values() }))
        }
        Command::Diagonalize => {
            let sigma = parse::<MorphismSpec>(text)?.build()?;
            let (a, spec) = sigma.diagonalize()?;
            Ok(json!({ "A": a.values(), "exps": spec.exps() }))
        }
        Command::InnerVector => {
            let delta = parse::<DerivationSpec>(text)?.build()?;
            Ok(json!({ "lambda": delta.inner_vector()?.values() }))
        }
        Command::Canonicalize => {
            let ring = parse::<RingSpec>(text)?.build()?;
            Ok(to_value(&CanonicalSpec::of(&canonical_form(&ring)?)))
        }
        Command::Classify => classify(parse(text)?),
        Command::Evaluate => {
            let input: EvaluateInput = parse(text)?;
            let ring = input.ring.build()?;
            let poly = input.poly.build(&ring)?;
            let point = vector(ring.field(), &input.point, ring.n())?;
            Ok(json!({ "value": poly.evaluate(&point)?.value() }))
        }
        Command::Multiply => {
            let input: MultiplyInput = parse(text)?;
            let ring = input.ring.build()?;
            let product = input.left.build(&ring)?.mul(&input.right.build(&ring)?)?;
            Ok(json!({ "product": to_value(&PolySpec::of(&product)) }))
        }
        Command::Transform => transform(parse(text)?, seed),
        Command::Vanishing => {
            let input: VanishingInput = parse(text)?;
            let ring = input.ring.build()?;
            Ok(json!({ "vanishing": is_vanishing(&input.poly.build(&ring)?)? }))
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassifyInput {
    rings: Vec<RingSpec>,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateInput {
    ring: RingSpec,
    poly: PolySpec,
    point: Vec<u32>,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiplyInput {
    ring: RingSpec,
    left: PolySpec,
    right: PolySpec,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct VanishingInput {
    ring: RingSpec,
    poly: PolySpec,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformInput {
    src: RingSpec,
    #[serde(rename = "A")]
    a: Vec<Vec<u32>>,
    lambda: Vec<u32>,
    #[serde(default)]
    tgt: Option<RingSpec>,
    #[serde(default)]
    poly: Option<PolySpec>,
    /// Number of random polynomials on which to check the evaluation shift.
    #[serde(default)]
    check: usize,
}

fn classify(input: ClassifyInput) -> SpecResult<Value> {
    let [r1, r2] = <[RingSpec; 2]>::try_from(input.rings)
        .map_err(|v| SpecError::Malformed(format!("\"rings\" must hold exactly two rings, got {}", v.len())))?;
    let (r1, r2) = (r1.build()?, r2.build()?);
    let iso = isomorphic(&r1, &r2)?;
    let mut out = json!({
        "isomorphic": iso.isomorphic,
        "classes": [iso.classes.0, iso.classes.1],
    });
    if let Some(w) = &iso.witness {
        out["witness"] = to_value(&TransformSpec::of(w));
    }
    Ok(out)
}

fn transform(input: TransformInput, seed: u64) -> SpecResult<Value> {
    let src = input.src.build()?;
    let f = src.field().clone();
    let a = skewring::json::matrix(&f, &input.a, src.n())?;
    let lam = vector(&f, &input.lambda, src.n())?;
    let t = match &input.tgt {
        Some(spec) => AffineTransform::new(a, lam, src.clone(), spec.build()?)?,
        None => AffineTransform::induced(src.clone(), a, lam)?,
    };
    let mut out = json!({ "transform": to_value(&TransformSpec::of(&t)) });
    if let Some(poly) = &input.poly {
        out["image"] = to_value(&PolySpec::of(&t.apply(&poly.build(&src)?)?));
    }
    if input.check > 0 {
        out["checked"] = json!(check_samples(&t, &src, input.check, seed)?);
    }
    Ok(out)
}

/// Evaluation-shift checks on `count` random polynomials at random points.
fn check_samples(t: &AffineTransform, src: &Arc<RingCtx>, count: usize, seed: u64) -> SpecResult<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let poly = SkewPoly::random(src, 4, 5, &mut rng);
        let point = VecFq::random(src.field(), src.n(), &mut rng);
        if !t.eval_shift_check(&poly, &point)? {
            return Err(skewring::Error::VerificationFailed { element: 0, what: "evaluation shift" }.into());
        }
    }
    Ok(count)
}
