//! Browser bindings: a solution surface, the Green multiplier and regime
//! classification, all for `n = 1`.
//!
//! Each export wraps a plain Rust function so the logic also runs natively.

use epd_core::epd::{classify, InitialDatum, ProblemSpec, Regime, Solver, SolverOptions};
use epd_core::hankel::{green_multiplier, GreenBranch};
use epd_core::presets;
use epd_core::translation::MultiIndexGamma;
use wasm_bindgen::prelude::*;

/// Largest grid edge accepted from the page.
const MAX_EDGE: usize = 200;

fn datum(preset: &str, gamma: &MultiIndexGamma) -> Result<InitialDatum, String> {
    match preset {
        "jbessel" => presets::jbessel(gamma, &[1.0], None),
        "gaussian" => presets::gaussian(gamma, 1.0),
        "poly_x2" => presets::poly_x2(gamma),
        other => return Err(format!("unknown preset {other:?}")),
    }
    .map_err(|e| e.to_string())
}

fn spec(preset: &str, gamma: f64, k: f64) -> Result<ProblemSpec, String> {
    let gamma = MultiIndexGamma::new(vec![gamma]).map_err(|e| e.to_string())?;
    let datum = datum(preset, &gamma)?;
    ProblemSpec::new(gamma, k, datum).map_err(|e| e.to_string())
}

fn axis(max: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| max * i as f64 / (count - 1) as f64).collect()
}

/// `u(x, t)` on `[0, x_max] × [0, t_max]`, t-major (row `i` is `t_i`).
pub fn surface(
    preset: &str,
    gamma: f64,
    k: f64,
    x_max: f64,
    t_max: f64,
    count: usize,
    nodes: usize,
) -> Result<Vec<f64>, String> {
    if !(2..=MAX_EDGE).contains(&count) {
        return Err(format!("grid edge must lie in 2..={MAX_EDGE}, got {count}"));
    }
    if !(x_max > 0.0 && t_max > 0.0) {
        return Err("grid extents must be positive".into());
    }
    let spec = spec(preset, gamma, k)?;
    let solver = Solver::new(&spec, SolverOptions::with_nodes(nodes.max(8))).map_err(|e| e.to_string())?;
    let xs = axis(x_max, count);
    let mut out = Vec::with_capacity(count * count);
    for t in axis(t_max, count) {
        for x in &xs {
            out.push(solver.eval(&[*x], t).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

/// `G(ξ, t)` for `ξ` on `[0, xi_max]` with `A = B = 0`.
pub fn multiplier_curve(k: f64, t: f64, xi_max: f64, count: usize) -> Result<Vec<f64>, String> {
    if count < 2 {
        return Err("need at least two samples".into());
    }
    let branch = GreenBranch::for_k(k).map_err(|e| e.to_string())?;
    axis(xi_max, count).into_iter().map(|xi| green_multiplier(&branch, xi, t).map_err(|e| e.to_string())).collect()
}

/// Regime name, with the depth for descent.
pub fn regime_label(gamma: f64, k: f64) -> Result<String, String> {
    let spec = spec("poly_x2", gamma, k)?;
    Ok(match classify(&spec) {
        Regime::Descent { m } => format!("descent (m = {m})"),
        Regime::ExceptionalSeries { terms } => format!("exceptional-series ({terms} terms)"),
        other => other.name().to_string(),
    })
}

#[wasm_bindgen]
pub fn solve_grid(
    preset: &str,
    gamma: f64,
    k: f64,
    x_max: f64,
    t_max: f64,
    count: usize,
    nodes: usize,
) -> Result<Vec<f64>, JsError> {
    surface(preset, gamma, k, x_max, t_max, count, nodes).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn green_multiplier_curve(k: f64, t: f64, xi_max: f64, count: usize) -> Result<Vec<f64>, JsError> {
    multiplier_curve(k, t, xi_max, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_k(gamma: f64, k: f64) -> Result<String, JsError> {
    regime_label(gamma, k).map_err(|e| JsError::new(&e))
}
