//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function returning JSON, so
//! the logic is tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use kerov::characters::character_ratio;
use kerov::observables::{omega, rescaled_profile, sup_distance_to_omega, transition_measure};
use kerov::plancherel::sample;
use kerov::rational::{fmt_rational, to_f64};
use kerov::YoungDiagram;

/// Largest diagram the page will sample.
pub const MAX_SAMPLE_N: usize = 20_000;
/// Largest diagram accepted for exact characters and transition measures.
pub const MAX_EXACT_BOXES: usize = 400;

#[derive(Debug, Serialize)]
pub struct ProfileData {
    pub n: usize,
    pub seed: u32,
    pub rows: Vec<u32>,
    pub x: Vec<f64>,
    pub profile: Vec<f64>,
    pub omega: Vec<f64>,
    pub sup_distance: f64,
}

#[derive(Debug, Serialize)]
pub struct RatioData {
    pub lambda: String,
    pub rho: String,
    pub ratio: String,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct Atom {
    pub x: i64,
    pub mass: String,
    pub value: f64,
}

fn parse_diagram(s: &str, what: &str) -> Result<YoungDiagram, String> {
    s.parse().map_err(|e| format!("{what}: {e}"))
}

/// Samples `M_n` and tabulates the rescaled profile and `Ω` on `points`
/// equally spaced points of `[-2.5, 2.5]`.
pub fn profile_data(n: usize, seed: u32, points: usize) -> Result<ProfileData, String> {
    if n == 0 || n > MAX_SAMPLE_N {
        return Err(format!("n must lie in 1..={MAX_SAMPLE_N}"));
    }
    if !(2..=5000).contains(&points) {
        return Err("points must lie in 2..=5000".into());
    }
    let lambda = sample(n, seed as u64);
    let step = 5.0 / (points - 1) as f64;
    let x: Vec<f64> = (0..points).map(|i| -2.5 + step * i as f64).collect();
    Ok(ProfileData {
        n,
        seed,
        rows: lambda.rows().to_vec(),
        profile: x.iter().map(|&t| rescaled_profile(&lambda, t)).collect(),
        omega: x.iter().map(|&t| omega(t)).collect(),
        sup_distance: sup_distance_to_omega(&lambda, points),
        x,
    })
}

/// Exact `χ^λ_{ρ∪1^{n-|ρ|}} / dim λ`.
pub fn ratio_data(lambda: &str, rho: &str) -> Result<RatioData, String> {
    let l = parse_diagram(lambda, "λ")?;
    let r = parse_diagram(rho, "ρ")?;
    if l.size() > MAX_EXACT_BOXES {
        return Err(format!("λ may have at most {MAX_EXACT_BOXES} boxes"));
    }
    let v = character_ratio(&l, &r).map_err(|e| e.to_string())?;
    Ok(RatioData {
        lambda: l.to_tuple_string(),
        rho: r.to_tuple_string(),
        ratio: fmt_rational(&v),
        value: to_f64(&v),
    })
}

/// Atoms of the transition measure of `λ`.
pub fn transition_data(lambda: &str) -> Result<Vec<Atom>, String> {
    let l = parse_diagram(lambda, "λ")?;
    if l.size() > MAX_EXACT_BOXES {
        return Err(format!("λ may have at most {MAX_EXACT_BOXES} boxes"));
    }
    Ok(transition_measure(&l)
        .atoms()
        .iter()
        .map(|(x, m)| Atom {
            x: x.to_integer().try_into().expect("contents are small"),
            mass: fmt_rational(m),
            value: to_f64(m),
        })
        .collect())
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sample_profile(n: usize, seed: u32, points: usize) -> Result<String, JsValue> {
    to_js(profile_data(n, seed, points))
}

#[wasm_bindgen]
pub fn normalized_character(lambda: &str, rho: &str) -> Result<String, JsValue> {
    to_js(ratio_data(lambda, rho))
}

#[wasm_bindgen]
pub fn transition_atoms(lambda: &str) -> Result<String, JsValue> {
    to_js(transition_data(lambda))
}
