//! WebAssembly bindings for the demo page in `www/`.

pub mod geometry;

use idealcore::core_engine::{compute_core, CoreOptions, Method};
use idealcore::ideal::Ideal;
use idealcore::reduction::{analytic_spread, multiplicity};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use geometry::{exponents, newton_boundary, parse_monomial_ideal, standard_monomials, twice_coarea};

fn shape(i: &Ideal) -> idealcore::Result<Value> {
    let gens = exponents(i)?;
    let boundary = newton_boundary(&gens);
    Ok(json!({
        "generators": gens,
        "standard": standard_monomials(&gens),
        "newton": boundary,
        "twice_coarea": twice_coarea(&boundary),
    }))
}

pub fn staircase_json(text: &str, seed: u64) -> idealcore::Result<Value> {
    let i = parse_monomial_ideal(text)?;
    let mut v = shape(&i)?;
    let e = if i.is_m_primary()? { Some(multiplicity(&i, seed)?) } else { None };
    v["multiplicity"] = json!(e);
    Ok(v)
}

pub fn core_json(text: &str, seed: u64) -> idealcore::Result<Value> {
    let i = parse_monomial_ideal(text)?;
    let method = if i.is_m_primary()? { Method::Both } else { Method::Deterministic };
    let opts = CoreOptions {
        seed,
        ..CoreOptions::default()
    };
    let res = compute_core(&i, method, &opts)?;
    Ok(json!({
        "ideal": shape(&i)?,
        "core": shape(&res.core)?,
        "method": res.method.as_str(),
        "t_used": res.t_used,
        "exponent_used": res.exponent_used,
        "checks": res.checks,
    }))
}

pub fn spread_json(text: &str) -> idealcore::Result<Value> {
    let i = parse_monomial_ideal(text)?;
    Ok(json!({ "analytic_spread": analytic_spread(&i)?, "height": i.height()? }))
}

fn out(v: idealcore::Result<Value>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

/// Staircase, Newton polygon and multiplicity of a monomial ideal in `U`, `V`.
#[wasm_bindgen]
pub fn staircase(gens: &str, seed: u32) -> Result<String, JsError> {
    out(staircase_json(gens, seed as u64))
}

#[wasm_bindgen]
pub fn core(gens: &str, seed: u32) -> Result<String, JsError> {
    out(core_json(gens, seed as u64))
}

#[wasm_bindgen]
pub fn spread(gens: &str) -> Result<String, JsError> {
    out(spread_json(gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_report() {
        let v = staircase_json("U^2, U*V, V^3", 0).unwrap();
        assert_eq!(v["multiplicity"], 5);
        assert_eq!(v["twice_coarea"], 5);
    }

    #[test]
    fn core_report() {
        let v = core_json("U^3, U*V^3, V^4", 1).unwrap();
        assert_eq!(v["core"]["generators"].as_array().unwrap().len(), 6);
        assert_eq!(v["checks"]["pipelines_agree"], "pass");
    }

    #[test]
    fn spread_report() {
        assert_eq!(spread_json("U^2, U*V").unwrap()["analytic_spread"], 2);
        assert_eq!(spread_json("U*V").unwrap()["analytic_spread"], 1);
    }
}
