//! Scenario files.
//!
//! A scenario is a TOML document. Dotted keys (`problem.k = 2.5`) and table
//! headers are interchangeable, and any real number may also be written as a
//! fraction string such as `"2/3"`.

use std::fmt;
use std::path::{Path, PathBuf};

use epd_core::epd::{InitialDatum, ProblemSpec, SolverOptions};
use epd_core::presets::{self, Window};
use epd_core::translation::MultiIndexGamma;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Environment variable overriding the default quadrature size.
pub const QUAD_ENV: &str = "EPD_QUAD_N";
pub const DEFAULT_QUAD_N: usize = 64;
const MIN_QUAD_N: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid scenario: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { path: path.into(), message: message.into() }
}

mod real {
    use serde::{de, Deserialize, Deserializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Float(f64),
        Text(String),
    }

    fn parse(raw: Raw) -> Result<f64, String> {
        match raw {
            Raw::Int(i) => Ok(i as f64),
            Raw::Float(f) => Ok(f),
            Raw::Text(s) => {
                let s = s.trim();
                let parsed = match s.split_once('/') {
                    Some((a, b)) => a.trim().parse::<f64>().and_then(|a| b.trim().parse::<f64>().map(|b| a / b)),
                    None => s.parse::<f64>(),
                };
                parsed.map_err(|_| format!("expected a number or a fraction like \"2/3\", got {s:?}"))
            }
        }
    }

    pub fn one<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        parse(Raw::deserialize(d)?).map_err(de::Error::custom)
    }

    pub fn opt<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<Raw>::deserialize(d)?.map(parse).transpose().map_err(de::Error::custom)
    }

    pub fn many<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<Raw>::deserialize(d)?.into_iter().map(parse).collect::<Result<_, _>>().map_err(de::Error::custom)
    }

    pub fn opt_many<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<f64>>, D::Error> {
        match Option::<Vec<Raw>>::deserialize(d)? {
            None => Ok(None),
            Some(v) => v.into_iter().map(parse).collect::<Result<_, _>>().map(Some).map_err(de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Jbessel,
    Gaussian,
    #[serde(rename = "poly_x2")]
    PolyX2,
    Const,
    CustomSeries,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Preset::Jbessel => "jbessel",
            Preset::Gaussian => "gaussian",
            Preset::PolyX2 => "poly_x2",
            Preset::Const => "const",
            Preset::CustomSeries => "custom-series",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    #[serde(deserialize_with = "real::one")]
    pub scale: f64,
    #[serde(default = "default_window_power", deserialize_with = "real::one")]
    pub power: f64,
}

fn default_window_power() -> f64 {
    2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    pub preset: Preset,
    /// Frequencies for `jbessel`, one per coordinate; defaults to all ones.
    #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "real::opt_many")]
    pub omega: Option<Vec<f64>>,
    /// Width for `gaussian`; defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "real::opt")]
    pub width: Option<f64>,
    /// Value for `const`.
    #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "real::opt")]
    pub value: Option<f64>,
    /// Coefficients of `Σ cⱼ|x|^{2j}` for `custom-series`.
    #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "real::opt_many")]
    pub coeffs: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    /// Optional; must equal the length of `gamma` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(deserialize_with = "real::many")]
    pub gamma: Vec<f64>,
    #[serde(deserialize_with = "real::one")]
    pub k: f64,
    pub datum: DatumConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    #[serde(deserialize_with = "real::one")]
    pub min: f64,
    #[serde(deserialize_with = "real::one")]
    pub max: f64,
    pub count: usize,
}

impl AxisConfig {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 }).collect()
    }

    fn validate(&self, path: &str) -> Result<(), ConfigError> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(invalid(path, "bounds must be finite"));
        }
        if self.max <= self.min {
            return Err(invalid(format!("{path}.max"), format!("range is empty: max {} ≤ min {}", self.max, self.min)));
        }
        if self.count < 2 {
            return Err(invalid(format!("{path}.count"), format!("needs at least 2 points, got {}", self.count)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// One axis per spatial coordinate.
    pub x: Vec<AxisConfig>,
    pub t: AxisConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsConfig {
    /// Radial and angular quadrature size; falls back to `EPD_QUAD_N`, then 64.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_depth: Option<usize>,
    #[serde(default = "default_modes")]
    pub spectral_modes: usize,
    #[serde(default = "default_radius", deserialize_with = "real::one")]
    pub spectral_radius: f64,
    #[serde(default = "default_fd_step", deserialize_with = "real::one")]
    pub fd_step: f64,
}

fn default_modes() -> usize {
    epd_core::hankel::DEFAULT_MODES
}

fn default_radius() -> f64 {
    epd_core::hankel::DEFAULT_RADIUS
}

fn default_fd_step() -> f64 {
    1e-2
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            quad_n: None,
            sphere_n: None,
            descent_depth: None,
            spectral_modes: default_modes(),
            spectral_radius: default_radius(),
            fd_step: default_fd_step(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: String,
}

fn default_format() -> String {
    "csv".into()
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { path: None, format: default_format() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Evaluates the closed form at this `k` instead of `problem.k`.
    #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "real::opt")]
    pub closed_form_k: Option<f64>,
    #[serde(default = "default_closed_form_tol", deserialize_with = "real::one")]
    pub closed_form_tolerance: f64,
    #[serde(default = "default_residual_tol", deserialize_with = "real::one")]
    pub residual_tolerance: f64,
    #[serde(default = "default_route_tol", deserialize_with = "real::one")]
    pub route_tolerance: f64,
    /// Tolerance of a windowed datum against its unwindowed closed form.
    #[serde(default = "default_window_tol", deserialize_with = "real::one")]
    pub window_tolerance: f64,
}

fn default_closed_form_tol() -> f64 {
    1e-6
}

fn default_residual_tol() -> f64 {
    1e-4
}

fn default_route_tol() -> f64 {
    1e-4
}

fn default_window_tol() -> f64 {
    1e-3
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            closed_form_k: None,
            closed_form_tolerance: default_closed_form_tol(),
            residual_tolerance: default_residual_tol(),
            route_tolerance: default_route_tol(),
            window_tolerance: default_window_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub problem: ProblemConfig,
    pub grid: GridConfig,
    #[serde(default)]
    pub numerics: NumericsConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::parse(&text)
    }

    /// Canonical TOML of this configuration.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }
}

/// Reads `EPD_QUAD_N`, if set.
pub fn quad_n_from_env() -> Result<Option<usize>, ConfigError> {
    match std::env::var(QUAD_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= MIN_QUAD_N => Ok(Some(n)),
            _ => Err(invalid(QUAD_ENV, format!("must be an integer ≥ {MIN_QUAD_N}, got {raw:?}"))),
        },
    }
}

/// A validated scenario with the solver inputs built.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub spec: ProblemSpec,
    pub options: SolverOptions,
    pub hash: String,
}

impl Scenario {
    /// Validates `config`, filling the quadrature size from `env_quad_n` or
    /// the default when the file leaves it out.
    pub fn resolve(mut config: ScenarioConfig, env_quad_n: Option<usize>) -> Result<Self, ConfigError> {
        let n = config.problem.gamma.len();
        if n == 0 {
            return Err(invalid("problem.gamma", "needs at least one entry"));
        }
        if let Some(declared) = config.problem.n {
            if declared != n {
                return Err(invalid("problem.n", format!("is {declared} but problem.gamma has {n} entries")));
            }
        }
        let gamma =
            MultiIndexGamma::new(config.problem.gamma.clone()).map_err(|e| invalid("problem.gamma", e.to_string()))?;
        if !config.problem.k.is_finite() {
            return Err(invalid("problem.k", "must be finite"));
        }
        if config.grid.x.len() != n {
            return Err(invalid("grid.x", format!("has {} axes, the problem has n = {n}", config.grid.x.len())));
        }
        for (i, axis) in config.grid.x.iter().enumerate() {
            axis.validate(&format!("grid.x[{i}]"))?;
        }
        config.grid.t.validate("grid.t")?;

        let numerics = &mut config.numerics;
        let quad_n = numerics.quad_n.or(env_quad_n).unwrap_or(DEFAULT_QUAD_N);
        if quad_n < MIN_QUAD_N {
            return Err(invalid("numerics.quad_n", format!("must be ≥ {MIN_QUAD_N}, got {quad_n}")));
        }
        numerics.quad_n = Some(quad_n);
        let mut options = SolverOptions::with_nodes(quad_n);
        if let Some(s) = numerics.sphere_n {
            if s == 0 {
                return Err(invalid("numerics.sphere_n", "must be positive"));
            }
            options.sphere_nodes = s;
        }
        options.descent_depth = numerics.descent_depth;
        if numerics.spectral_modes < 8 {
            return Err(invalid("numerics.spectral_modes", "must be ≥ 8"));
        }
        if !(numerics.spectral_radius > 0.0 && numerics.spectral_radius.is_finite()) {
            return Err(invalid("numerics.spectral_radius", "must be positive"));
        }
        if !(numerics.fd_step > 0.0 && numerics.fd_step < 1.0) {
            return Err(invalid("numerics.fd_step", "must lie in (0, 1)"));
        }
        if config.output.format != "csv" {
            return Err(invalid("output.format", format!("only \"csv\" is supported, got {:?}", config.output.format)));
        }

        let datum = build_datum(&config.problem.datum, &gamma)?;
        let spec = ProblemSpec::new(gamma, config.problem.k, datum).map_err(|e| invalid("problem", e.to_string()))?;
        let hash = hash_hex(config.canonical().as_bytes());
        Ok(Self { config, spec, options, hash })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::resolve(ScenarioConfig::load(path)?, quad_n_from_env()?)
    }

    pub fn datum(&self) -> &DatumConfig {
        &self.config.problem.datum
    }

    pub fn x_axes(&self) -> Vec<Vec<f64>> {
        self.config.grid.x.iter().map(AxisConfig::values).collect()
    }

    pub fn t_axis(&self) -> Vec<f64> {
        self.config.grid.t.values()
    }
}

fn hash_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::from("sha256:");
    for b in digest.iter() {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn build_datum(d: &DatumConfig, gamma: &MultiIndexGamma) -> Result<InitialDatum, ConfigError> {
    let n = gamma.dim();
    let wrap = |field: &str| {
        let path = format!("problem.datum.{field}");
        move |e: epd_core::Error| invalid(path.clone(), e.to_string())
    };
    if d.window.is_some() && d.preset != Preset::Jbessel {
        return Err(invalid(
            "problem.datum.window",
            format!("only the jbessel preset takes a window, not {}", d.preset),
        ));
    }
    match d.preset {
        Preset::Jbessel => {
            let omega = d.omega.clone().unwrap_or_else(|| vec![1.0; n]);
            let window = match &d.window {
                Some(w) => Some(Window::new(w.scale, w.power).map_err(wrap("window"))?),
                None => None,
            };
            presets::jbessel(gamma, &omega, window).map_err(wrap("omega"))
        }
        Preset::Gaussian => presets::gaussian(gamma, d.width.unwrap_or(1.0)).map_err(wrap("width")),
        Preset::PolyX2 => presets::poly_x2(gamma).map_err(wrap("preset")),
        Preset::Const => {
            let value = d.value.ok_or_else(|| invalid("problem.datum.value", "required by the const preset"))?;
            presets::constant(gamma, value).map_err(wrap("value"))
        }
        Preset::CustomSeries => {
            let coeffs = d
                .coeffs
                .as_ref()
                .ok_or_else(|| invalid("problem.datum.coeffs", "required by the custom-series preset"))?;
            if coeffs.is_empty() {
                return Err(invalid("problem.datum.coeffs", "needs at least one coefficient"));
            }
            presets::radial_polynomial(gamma, coeffs).map_err(wrap("coeffs"))
        }
    }
}
