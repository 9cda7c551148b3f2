//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes plain strings and numbers from the page and returns a
//! JSON string. The `*_json` functions are the same operations with Rust
//! error types, usable (and tested) natively.

use num_rational::BigRational;
use serde_json::json;
use superjack::cmsop::extract_eigenvalue;
use superjack::coeffs::{parse_rational, KValue};
use superjack::gauge::conjugation_check;
use superjack::superjack::{eigenvalue, super_jack};
use superjack::Partition;
use wasm_bindgen::prelude::*;

/// Keeps exact computations interactive in a browser tab.
pub const MAX_WEIGHT: u32 = 7;
pub const MAX_VARIABLES: usize = 4;

fn parse_input(lambda: &str, n: usize, m: usize) -> Result<Partition, String> {
    let lambda: Partition = lambda
        .trim()
        .parse()
        .map_err(|e| format!("partition: {e}"))?;
    if lambda.weight() > MAX_WEIGHT {
        return Err(format!("weight is limited to {MAX_WEIGHT} in the demo"));
    }
    if n + m > MAX_VARIABLES {
        return Err(format!("n + m is limited to {MAX_VARIABLES} in the demo"));
    }
    if n + m == 0 && lambda.weight() > 0 {
        return Err("need n + m > 0".into());
    }
    Ok(lambda)
}

/// P_λ(x, y; k) as display text plus its term list, generic or at a rational k.
pub fn super_jack_json(lambda: &str, n: usize, m: usize, k: &str) -> Result<String, String> {
    let lambda = parse_input(lambda, n, m)?;
    let k: KValue = k.trim().parse().map_err(|e| format!("k: {e}"))?;
    let sj = super_jack(&lambda, n, m);
    let e = eigenvalue(&lambda, n, m);
    let (poly, e_text) = match &k {
        KValue::Generic => (sj.poly, e.to_string()),
        KValue::Rational(k0) => (
            sj.poly.specialize_k(k0).map_err(|e| e.to_string())?,
            e.specialize(k0).map_err(|e| e.to_string())?.to_string(),
        ),
    };
    Ok(json!({
        "lambda": lambda.to_string(),
        "in_hook": lambda.in_hook(n, m),
        "text": poly.to_string(),
        "terms": poly.len(),
        "eigenvalue": e_text,
    })
    .to_string())
}

/// Eigenvalue from the closed form and from applying the operator.
pub fn eigen_json(lambda: &str, n: usize, m: usize) -> Result<String, String> {
    let lambda = parse_input(lambda, n, m)?;
    let formula = eigenvalue(&lambda, n, m);
    let (extracted, agree) = match extract_eigenvalue(&lambda, n, m) {
        Ok(e) => (e.to_string(), e == formula),
        Err(err) => (format!("({err})"), false),
    };
    Ok(json!({
        "formula": formula.to_string(),
        "extracted": extracted,
        "agree": agree,
    })
    .to_string())
}

/// Conjugation residuals of δ·P_λ at sampled chamber points.
pub fn gauge_json(
    lambda: &str,
    n: usize,
    m: usize,
    k: &str,
    points: usize,
    seed: u64,
) -> Result<String, String> {
    let lambda = parse_input(lambda, n, m)?;
    let k0: BigRational = parse_rational(k).map_err(|e| format!("k: {e}"))?;
    if k0 <= BigRational::from_integer(0.into()) {
        return Err("k must be positive for the numeric check".into());
    }
    if !lambda.in_hook(n, m) {
        return Err(format!(
            "({lambda}) is outside the ({n},{m}) hook, so P vanishes"
        ));
    }
    let points = points.clamp(1, 50);
    let r = conjugation_check(&lambda, n, m, &k0, points, seed, 1e-8).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = superJack)]
pub fn super_jack_js(lambda: &str, n: usize, m: usize, k: &str) -> Result<String, JsError> {
    super_jack_json(lambda, n, m, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = eigen)]
pub fn eigen_js(lambda: &str, n: usize, m: usize) -> Result<String, JsError> {
    eigen_json(lambda, n, m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = gauge)]
pub fn gauge_js(
    lambda: &str,
    n: usize,
    m: usize,
    k: &str,
    points: usize,
    seed: u32,
) -> Result<String, JsError> {
    gauge_json(lambda, n, m, k, points, seed.into()).map_err(|e| JsError::new(&e))
}
