//! Browser bindings: pick a corpus set, look at its Segal-type verdicts,
//! its Hall algebra, and convolve functions on its 1-simplices.

use serde_json::json;
use twosegal::algebra::{convolve, hall_algebra, FnOnBasis, Rational};
use twosegal::corpus;
use twosegal::segal::{check_2segal, check_partial_category_criterion, check_segal, check_unitality};
use twosegal::SimplicialSet;
use wasm_bindgen::prelude::*;

fn set(name: &str) -> Result<SimplicialSet, String> {
    corpus::member(name).ok_or_else(|| format!("no corpus set named {name:?}"))
}

/// Corpus set names, as a JSON array.
pub fn names() -> String {
    let names: Vec<&str> = corpus::members().iter().map(|m| m.name).collect();
    json!(names).to_string()
}

pub fn explore_set(name: &str) -> Result<String, String> {
    let s = set(name)?;
    let err = |e: twosegal::segal::SegalError| e.to_string();
    let segal = check_segal(&s).map_err(err)?;
    let two = check_2segal(&s).map_err(err)?;
    let unital = check_unitality(&s).map_err(err)?;
    let criterion = if two.holds() {
        Some(check_partial_category_criterion(&s).map_err(err)?.to_json(&s))
    } else {
        None
    };
    Ok(json!({
        "name": name,
        "level_sizes": s.level_sizes(),
        "identities_hold": s.validate_identities().is_clean(),
        "segal": segal.to_json(&s),
        "two_segal": two.to_json(&s),
        "unital": unital.holds(),
        "t2": criterion,
    })
    .to_string())
}

pub fn hall_text(name: &str) -> Result<String, String> {
    let h = hall_algebra(&set(name)?).map_err(|e| e.to_string())?;
    let verdict = if h.verify_axioms().holds() {
        "associative and unital"
    } else {
        "axioms FAIL"
    };
    Ok(format!("{}{verdict}\n", h.render_table()))
}

/// Basis labels of `X_1`, as a JSON array.
pub fn basis_of(name: &str) -> Result<String, String> {
    Ok(json!(set(name)?.level(1)).to_string())
}

fn parse_values(text: &str, n: usize) -> Result<FnOnBasis, String> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Rational>().map_err(|_| format!("{t:?} is not a rational")))
        .collect::<Result<Vec<_>, _>>()?;
    match values.len() {
        1 => Ok(FnOnBasis(vec![values[0].clone(); n])),
        k if k == n => Ok(FnOnBasis(values)),
        k => Err(format!("expected 1 or {n} values, got {k}")),
    }
}

/// `psi1` and `psi2` are comma-separated rationals in basis order; a single
/// value means a constant function.
pub fn convolve_text(name: &str, psi1: &str, psi2: &str) -> Result<String, String> {
    let s = set(name)?;
    let n = s.level_size(1);
    let r = convolve(&s, &parse_values(psi1, n)?, &parse_values(psi2, n)?).map_err(|e| e.to_string())?;
    Ok(r.render(s.level(1)))
}

#[wasm_bindgen]
pub fn corpus_names() -> String {
    names()
}

#[wasm_bindgen]
pub fn explore(name: &str) -> Result<String, JsError> {
    explore_set(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hall_table(name: &str) -> Result<String, JsError> {
    hall_text(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn basis(name: &str) -> Result<String, JsError> {
    basis_of(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn convolution(name: &str, psi1: &str, psi2: &str) -> Result<String, JsError> {
    convolve_text(name, psi1, psi2).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_include_the_nerves() {
        let v: Vec<String> = serde_json::from_str(&names()).unwrap();
        assert!(v.contains(&"zmod2-nerve".to_string()));
    }

    #[test]
    fn explore_reports_verdicts() {
        let v: serde_json::Value = serde_json::from_str(&explore_set("truncated3-nerve").unwrap()).unwrap();
        assert_eq!(v["segal"]["holds"], false);
        assert_eq!(v["two_segal"]["holds"], true);
        assert_eq!(v["t2"]["injective"], true);
        let p: serde_json::Value = serde_json::from_str(&explore_set("zmod2-punctured").unwrap()).unwrap();
        assert_eq!(p["two_segal"]["holds"], false);
        assert!(p["t2"].is_null());
        assert!(explore_set("nope").is_err());
    }

    #[test]
    fn hall_of_z2() {
        assert_eq!(
            hall_text("zmod2-nerve").unwrap(),
            "· | e | g\ne | e | g\ng | g | e\nunit: e\nassociative and unital\n"
        );
        assert!(hall_text("zmod2-punctured").is_err());
    }

    #[test]
    fn exponential_convolution() {
        let out = convolve_text("exponential3", "1", "1").unwrap();
        let last: Vec<&str> = out.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
        assert_eq!(last, vec!["1", "2", "4", "8"]);
        assert!(convolve_text("exponential3", "1, 2", "1").is_err());
        assert!(convolve_text("exponential3", "x", "1").is_err());
    }
}
