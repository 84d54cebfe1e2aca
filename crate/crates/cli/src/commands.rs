//! The `solve`, `compare-routes` and `example` commands.

use anyhow::{bail, Context};
use epd_core::epd::{Regime, Solver};
use epd_core::hankel::{hankel_forward, GreenBranch, SpectralGrid, SpectralSolver};

use crate::config::{Scenario, ScenarioConfig};
use crate::grid::GridField;
use crate::verify::{closed_form, Check, Report};

const EXAMPLE_ONE: &str = include_str!("../configs/example1.toml");
const EXAMPLE_TWO: &str = include_str!("../configs/example2.toml");

/// Built-in scenario text for `example --id`.
pub fn example_config(id: u8) -> anyhow::Result<&'static str> {
    match id {
        1 => Ok(EXAMPLE_ONE),
        2 => Ok(EXAMPLE_TWO),
        _ => bail!("unknown example {id}; choose 1 or 2"),
    }
}

pub fn example_scenario(id: u8, env_quad_n: Option<usize>) -> anyhow::Result<Scenario> {
    let config = ScenarioConfig::parse(example_config(id)?)?;
    Ok(Scenario::resolve(config, env_quad_n)?)
}

/// Fills the configured grid with the solver chosen by classification.
pub fn run_solve(s: &Scenario) -> anyhow::Result<GridField> {
    let solver = Solver::new(&s.spec, s.options).context("building the solver")?;
    let regime = solver.regime();
    log::info!("regime {}, config {}", regime.name(), s.hash);
    let mut field = GridField::fill(s.x_axes(), s.t_axis(), |x, t| solver.eval(x, t))
        .with_context(|| format!("evaluating the {} solution", regime.name()))?;
    if let Some(bad) = field.values.iter().position(|v| !v.is_finite()) {
        let (x, t) = field.point(bad);
        bail!("solution is not finite at x = {x:?}, t = {t}");
    }
    field.set_meta("route", regime.name());
    if let Regime::Descent { m } = regime {
        field.set_meta("descent_depth", m.to_string());
    }
    if let Some(w) = &s.datum().window {
        field.set_meta("window", format!("exp(-(|x|/{})^{})", w.scale, w.power));
    }
    field.set_meta("config_hash", s.hash.clone());
    field.set_meta("config", s.config.canonical().trim_end());
    Ok(field)
}

/// Compares the spectral route against the quadrature route, and against the
/// closed form when there is one.
pub fn run_compare_routes(s: &Scenario) -> anyhow::Result<Report> {
    if s.spec.n() != 1 {
        bail!("compare-routes needs a one-dimensional problem, got n = {}", s.spec.n());
    }
    let solver = Solver::new(&s.spec, s.options).context("building the solver")?;
    let regime = solver.regime();
    if matches!(regime, Regime::ExceptionalMinusOne | Regime::ExceptionalSeries { .. }) {
        bail!("compare-routes does not cover exceptional k = {}; use verify instead", s.spec.k());
    }
    let num = &s.config.numerics;
    let grid = SpectralGrid::new(s.spec.gamma().entries()[0], num.spectral_radius, num.spectral_modes)?;
    let coeffs = hankel_forward(s.spec.datum().function(), &grid)?;
    if coeffs.truncated() {
        bail!(
            "the datum does not decay: |f(R)| = {:.3e} at R = {}. Add a window, e.g. \
             problem.datum.window = {{ scale = 8, power = 16 }}, or raise numerics.spectral_radius",
            coeffs.edge_value().abs(),
            grid.radius()
        );
    }
    let spectral = SpectralSolver::new(&s.spec, grid, GreenBranch::for_k(s.spec.k())?)?;
    let x_axes = s.x_axes();
    let t_axis = s.t_axis();
    let diff =
        GridField::fill(x_axes.clone(), t_axis.clone(), |x, t| Ok(spectral.eval(x[0], t)? - solver.eval(x, t)?))?;
    let tol = &s.config.verify;
    let mut checks = vec![Check::against(
        &format!("routes.spectral_vs_{}", regime.name()),
        max_abs(&diff.values),
        tol.route_tolerance,
    )];
    if let Some((exact, windowed)) = closed_form(s, s.spec.k()) {
        let field = GridField::fill(x_axes, t_axis, |x, t| Ok(spectral.eval(x[0], t)? - exact(x, t)?))?;
        let tolerance = if windowed { tol.window_tolerance } else { tol.route_tolerance };
        checks.push(Check::against("routes.spectral_vs_closed_form", max_abs(&field.values), tolerance));
    }
    Ok(Report { checks })
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) })
}
