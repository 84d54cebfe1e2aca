//! Solutions of the singular Cauchy problem
//!
//! ```text
//! u_tt + (k/t) u_t = Δ_γ u,   u(x,0) = f(x),   u_t(x,0) = 0
//! ```
//!
//! for every real `k`. The parameter range splits into regimes:
//!
//! | regime      | condition                     | method                              |
//! |-------------|-------------------------------|-------------------------------------|
//! | Direct      | `k > n+|γ|−1`                 | weighted ball integral              |
//! | Boundary    | `k = n+|γ|−1`                 | weighted spherical mean             |
//! | Descent     | `k < n+|γ|−1`, not odd negative | recursion from `k+2m`             |
//! | Exceptional | `k = −1, −3, −5, …`           | finite series in powers of `Δ_γ f`  |
//!
//! For `k < 0` the problem is not uniquely solvable; the solvers return the
//! branch whose spectral multiplier has no `t^{(1−k)/2}J_{(1−k)/2}` term.

use std::sync::Arc;

use log::warn;

use crate::fd;
use crate::quadrature::{jacobi_rule, QuadratureRule, DEFAULT_NODES};
use crate::translation::{EvenFunction, MultiIndexGamma, SphericalMean, DEFAULT_SPHERE_NODES};
use crate::{Error, Result};

/// Tolerance for recognizing the boundary value and odd negative `k`.
pub const REGIME_TOLERANCE: f64 = 1e-12;

/// An initial datum with optional analytic powers of the Laplace–Bessel
/// operator.
#[derive(Debug, Clone)]
pub struct InitialDatum {
    f: EvenFunction,
    // Δ^h_γ f for h = 1, 2, …
    laplace_powers: Vec<EvenFunction>,
    polyharmonic_order: Option<usize>,
}

impl InitialDatum {
    pub fn new(f: EvenFunction) -> Self {
        Self { f, laplace_powers: Vec::new(), polyharmonic_order: None }
    }

    /// Supplies `Δ_γ f, Δ²_γ f, …` in order.
    pub fn with_laplace_powers(mut self, powers: Vec<EvenFunction>) -> Self {
        self.laplace_powers = powers;
        self
    }

    /// Declares `Δ^p_γ f = 0`.
    pub fn with_polyharmonic_order(mut self, p: usize) -> Self {
        self.polyharmonic_order = Some(p);
        self
    }

    pub fn function(&self) -> &EvenFunction {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn declared_smoothness(&self) -> u32 {
        self.f.smoothness_order()
    }

    pub fn polyharmonic_order(&self) -> Option<usize> {
        self.polyharmonic_order
    }

    /// Analytic `Δ^h_γ f` if supplied; `h = 0` is `f` itself. Powers at or
    /// beyond the declared polyharmonic order are zero.
    pub fn laplace_power(&self, h: usize) -> Option<EvenFunction> {
        if h == 0 {
            return Some(self.f.clone());
        }
        if let Some(p) = self.polyharmonic_order {
            if h >= p {
                return Some(EvenFunction::constant(self.dim(), 0.0));
            }
        }
        self.laplace_powers.get(h - 1).cloned()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.f.eval(x)
    }
}

/// One Cauchy problem: dimension, `γ`, `k` and the datum.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    gamma: MultiIndexGamma,
    k: f64,
    datum: InitialDatum,
}

impl ProblemSpec {
    pub fn new(gamma: MultiIndexGamma, k: f64, datum: InitialDatum) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::Domain(format!("k must be finite, got {k}")));
        }
        if datum.dim() != gamma.dim() {
            return Err(Error::Usage(format!(
                "datum has dimension {}, but γ has {} entries",
                datum.dim(),
                gamma.dim()
            )));
        }
        Ok(Self { gamma, k, datum })
    }

    pub fn n(&self) -> usize {
        self.gamma.dim()
    }

    pub fn gamma(&self) -> &MultiIndexGamma {
        &self.gamma
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn datum(&self) -> &InitialDatum {
        &self.datum
    }

    /// `n + |γ| − 1`, the boundary value of `k`.
    pub fn critical_k(&self) -> f64 {
        self.n() as f64 + self.gamma.abs() - 1.0
    }

    /// Same problem with another `k`.
    pub fn with_k(&self, k: f64) -> Result<Self> {
        Self::new(self.gamma.clone(), k, self.datum.clone())
    }
}

/// Which solution formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Direct,
    Boundary,
    /// Recursion from `k + 2m`.
    Descent {
        m: usize,
    },
    ExceptionalMinusOne,
    /// `k = 1 − 2p` with `p ≥ 2`; the series has `p − 1` correction terms.
    ExceptionalSeries {
        terms: usize,
    },
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Direct => "direct",
            Regime::Boundary => "boundary",
            Regime::Descent { .. } => "descent",
            Regime::ExceptionalMinusOne => "exceptional-minus-one",
            Regime::ExceptionalSeries { .. } => "exceptional-series",
        }
    }
}

fn odd_negative(k: f64) -> Option<usize> {
    if k >= 0.0 {
        return None;
    }
    // k = −(2p − 1)
    let p = ((1.0 - k) / 2.0).round();
    if p >= 1.0 && (k - (1.0 - 2.0 * p)).abs() <= REGIME_TOLERANCE {
        Some(p as usize)
    } else {
        None
    }
}

/// Minimum descent depth: smallest `m ≥ (n+|γ|−k−1)/2`.
fn minimum_depth(critical: f64, k: f64) -> usize {
    let m = 0.5 * (critical - k);
    let rounded = m.round();
    if (m - rounded).abs() <= REGIME_TOLERANCE {
        rounded as usize
    } else {
        m.ceil() as usize
    }
}

/// The regime of `spec`.
pub fn classify(spec: &ProblemSpec) -> Regime {
    classify_k(spec.critical_k(), spec.k)
}

fn classify_k(critical: f64, k: f64) -> Regime {
    if let Some(p) = odd_negative(k) {
        return if p == 1 { Regime::ExceptionalMinusOne } else { Regime::ExceptionalSeries { terms: p - 1 } };
    }
    if (k - critical).abs() <= REGIME_TOLERANCE {
        Regime::Boundary
    } else if k > critical {
        Regime::Direct
    } else {
        Regime::Descent { m: minimum_depth(critical, k) }
    }
}

/// Quadrature and finite-difference settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Nodes of the radial Jacobi rule.
    pub radial_nodes: usize,
    /// Nodes per coordinate of the generalized translation.
    pub angular_nodes: usize,
    /// Nodes per angle of the weighted sphere.
    pub sphere_nodes: usize,
    /// Forces the descent depth; must reach past the boundary.
    pub descent_depth: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            radial_nodes: DEFAULT_NODES,
            angular_nodes: DEFAULT_NODES,
            sphere_nodes: DEFAULT_SPHERE_NODES,
            descent_depth: None,
        }
    }
}

impl SolverOptions {
    /// All quadrature sizes set to `n`.
    pub fn with_nodes(n: usize) -> Self {
        Self { radial_nodes: n, angular_nodes: n, sphere_nodes: n.div_ceil(2).max(1), descent_depth: None }
    }
}

#[derive(Debug, Clone)]
struct BallIntegral {
    rule: Arc<QuadratureRule>,
    mass: f64,
    mean: SphericalMean,
}

impl BallIntegral {
    fn new(gamma: &MultiIndexGamma, k: f64, opts: &SolverOptions) -> Result<Self> {
        let n = gamma.dim() as f64;
        let alpha = 0.5 * (k - n - gamma.abs() - 1.0);
        let beta = n + gamma.abs() - 1.0;
        let rule = jacobi_rule(alpha, beta, opts.radial_nodes)?;
        let mass = rule.weight_fn().total_mass();
        let mean = SphericalMean::new(gamma, opts.angular_nodes, opts.sphere_nodes)?;
        Ok(Self { rule, mass, mean })
    }

    fn eval(&self, f: &EvenFunction, x: &[f64], t: f64) -> Result<f64> {
        let t = t.abs();
        if t == 0.0 {
            return Ok(f.eval(x));
        }
        let mut acc = 0.0;
        for (r, w) in self.rule.nodes().iter().zip(self.rule.weights()) {
            acc += w * self.mean.eval(f, x, t * r)?;
        }
        Ok(acc / self.mass)
    }
}

#[derive(Debug, Clone)]
enum Method {
    Direct(BallIntegral),
    Boundary(SphericalMean),
    Descent {
        inner: BallIntegral,
        // C(m,j) 2^{m−j} ((k+2m−1)/2)_{(m−j)} / ∏(k+2i−1), j = 0..m
        coefficients: Vec<f64>,
    },
    Exceptional {
        terms: usize,
    },
}

/// A solver bound to one problem, with its rules built once.
#[derive(Debug, Clone)]
pub struct Solver {
    spec: ProblemSpec,
    regime: Regime,
    method: Method,
}

impl Solver {
    pub fn new(spec: &ProblemSpec, opts: SolverOptions) -> Result<Self> {
        let regime = classify(spec);
        if let Some(m) = opts.descent_depth {
            if !matches!(regime, Regime::ExceptionalMinusOne | Regime::ExceptionalSeries { .. }) {
                return Self::descent(spec, m, &opts);
            }
        }
        let method = match regime {
            Regime::Direct => Method::Direct(BallIntegral::new(spec.gamma(), spec.k(), &opts)?),
            Regime::Boundary => {
                Method::Boundary(SphericalMean::new(spec.gamma(), opts.angular_nodes, opts.sphere_nodes)?)
            }
            Regime::Descent { m } => {
                // an inner k on the boundary would need the spherical mean instead
                let boundary = (spec.k() + 2.0 * m as f64 - spec.critical_k()).abs() <= REGIME_TOLERANCE;
                return Self::descent(spec, if boundary { m + 1 } else { m }, &opts);
            }
            Regime::ExceptionalMinusOne => Method::Exceptional { terms: 0 },
            Regime::ExceptionalSeries { terms } => Method::Exceptional { terms },
        };
        if let Method::Exceptional { terms } = method {
            check_polyharmonic(spec, terms + 1)?;
        }
        Ok(Self { spec: spec.clone(), regime, method })
    }

    fn descent(spec: &ProblemSpec, m: usize, opts: &SolverOptions) -> Result<Self> {
        let k = spec.k();
        let inner_k = k + 2.0 * m as f64;
        if m == 0 || inner_k <= spec.critical_k() + REGIME_TOLERANCE {
            return Err(Error::Usage(format!(
                "descent depth {m} from k = {k} does not reach past n+|γ|−1 = {}",
                spec.critical_k()
            )));
        }
        let needed = ((spec.critical_k() + 1.0 - k) / 2.0).floor().max(0.0) as u32 + 2;
        if spec.datum().declared_smoothness() < needed {
            return Err(Error::Precondition(format!(
                "descent at k = {k} needs a datum of class C^{needed}, declared C^{}",
                spec.datum().declared_smoothness()
            )));
        }
        let shift: f64 = (1..=m).map(|i| k + 2.0 * i as f64 - 1.0).product();
        let a = 0.5 * (inner_k - 1.0);
        let coefficients = (0..=m)
            .map(|j| {
                let falling: f64 = (0..m - j).map(|i| a - i as f64).product();
                binomial(m, j) * 2f64.powi((m - j) as i32) * falling / shift
            })
            .collect();
        let inner = BallIntegral::new(spec.gamma(), inner_k, opts)?;
        Ok(Self { spec: spec.clone(), regime: Regime::Descent { m }, method: Method::Descent { inner, coefficients } })
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    /// The regime actually used (for descent, the depth after any bump).
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `u(x, t)`; negative `t` is reflected.
    pub fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        if x.len() != self.spec.n() {
            return Err(Error::Usage(format!("point has dimension {}, expected {}", x.len(), self.spec.n())));
        }
        let t = t.abs();
        let f = self.spec.datum().function();
        match &self.method {
            Method::Direct(ball) => ball.eval(f, x, t),
            Method::Boundary(mean) => mean.eval(f, x, t),
            Method::Descent { inner, coefficients } => {
                if t == 0.0 {
                    return Ok(f.eval(x));
                }
                let h = (1e-2 * t).max(1e-3);
                let v = |s: f64| inner.eval(f, x, s).unwrap_or(f64::NAN);
                let mut acc = 0.0;
                for (j, c) in coefficients.iter().enumerate() {
                    let term = c * t.powi(2 * j as i32) * fd::inverse_t_derivative_power(&v, j, t, h);
                    acc += term;
                }
                if acc.is_finite() {
                    Ok(acc)
                } else {
                    // surface the underlying error
                    inner.eval(f, x, t)?;
                    Err(Error::Numerical(format!("descent produced a non-finite value at t = {t}")))
                }
            }
            Method::Exceptional { terms } => exceptional_series(&self.spec, *terms, x, t),
        }
    }
}

fn binomial(m: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

fn check_polyharmonic(spec: &ProblemSpec, order: usize) -> Result<()> {
    match spec.datum().polyharmonic_order() {
        Some(p) if p <= order => Ok(()),
        Some(p) => Err(Error::Precondition(format!(
            "k = {} needs a datum B-polyharmonic of order {order}, declared order {p}",
            spec.k()
        ))),
        None => Err(Error::Precondition(format!(
            "k = {} needs a datum B-polyharmonic of order {order}; none declared",
            spec.k()
        ))),
    }
}

fn exceptional_series(spec: &ProblemSpec, terms: usize, x: &[f64], t: f64) -> Result<f64> {
    let datum = spec.datum();
    let k = spec.k();
    let mut u = datum.eval(x);
    let mut denom = 1.0;
    let mut tpow = 1.0;
    for h in 1..=terms {
        denom *= (k + 2.0 * h as f64 - 1.0) * (2.0 * h as f64);
        tpow *= t * t;
        u += laplace_power_at(datum, spec.gamma(), h, x) * tpow / denom;
    }
    if u.is_finite() {
        Ok(u)
    } else {
        Err(Error::Numerical(format!("exceptional series is non-finite at t = {t}")))
    }
}

fn laplace_power_at(datum: &InitialDatum, gamma: &MultiIndexGamma, h: usize, x: &[f64]) -> f64 {
    if let Some(g) = datum.laplace_power(h) {
        return g.eval(x);
    }
    warn!("Δ^{h}_γ f not supplied; using iterated finite differences, accuracy degrades with each power");
    fd_laplace_power(datum.function(), gamma, h, x)
}

fn fd_laplace_power(f: &EvenFunction, gamma: &MultiIndexGamma, h: usize, x: &[f64]) -> f64 {
    if h == 0 {
        return f.eval(x);
    }
    let step = 1e-3 * (1.0 + x.iter().map(|v| v * v).sum::<f64>().sqrt());
    laplace_bessel_with(|y| fd_laplace_power(f, gamma, h - 1, y), gamma, x, step)
}

fn require(spec: &ProblemSpec, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Usage(format!("k = {} is in the {} regime, not {what}", spec.k(), classify(spec).name())))
    }
}

/// Weighted ball integral, valid for `k > n+|γ|−1`.
pub fn solve_direct(spec: &ProblemSpec, x: &[f64], t: f64) -> Result<f64> {
    require(spec, classify(spec) == Regime::Direct, "direct")?;
    Solver::new(spec, SolverOptions::default())?.eval(x, t)
}

/// Weighted spherical mean, valid for `k = n+|γ|−1`.
pub fn solve_boundary(spec: &ProblemSpec, x: &[f64], t: f64) -> Result<f64> {
    require(spec, classify(spec) == Regime::Boundary, "boundary")?;
    Solver::new(spec, SolverOptions::default())?.eval(x, t)
}

/// Descent from `k + 2m` with the minimum admissible `m`.
pub fn solve_descent(spec: &ProblemSpec, x: &[f64], t: f64) -> Result<f64> {
    require(spec, matches!(classify(spec), Regime::Descent { .. }), "descent")?;
    Solver::new(spec, SolverOptions::default())?.eval(x, t)
}

/// Descent from `k + 2m` with an explicit `m`; also accepted when `k` is in
/// the direct regime.
pub fn solve_descent_with_depth(spec: &ProblemSpec, m: usize, x: &[f64], t: f64) -> Result<f64> {
    let opts = SolverOptions { descent_depth: Some(m), ..SolverOptions::default() };
    require(
        spec,
        !matches!(classify(spec), Regime::ExceptionalMinusOne | Regime::ExceptionalSeries { .. }),
        "descent",
    )?;
    Solver::new(spec, opts)?.eval(x, t)
}

/// Finite series for `k = −1, −3, …`.
pub fn solve_exceptional(spec: &ProblemSpec, x: &[f64], t: f64) -> Result<f64> {
    require(
        spec,
        matches!(classify(spec), Regime::ExceptionalMinusOne | Regime::ExceptionalSeries { .. }),
        "exceptional",
    )?;
    Solver::new(spec, SolverOptions::default())?.eval(x, t)
}

/// Dispatches on the regime.
pub fn solve(spec: &ProblemSpec, x: &[f64], t: f64) -> Result<f64> {
    Solver::new(spec, SolverOptions::default())?.eval(x, t)
}

/// `Δ_γ f(x) = Σᵢ (∂ᵢ² f + (γᵢ/xᵢ) ∂ᵢ f)` by fourth-order central differences
/// of the even extension; at `xᵢ = 0` the term is `(1+γᵢ) ∂ᵢ² f`.
pub fn laplace_bessel_apply(f: &EvenFunction, gamma: &MultiIndexGamma, x: &[f64], h: f64) -> f64 {
    laplace_bessel_with(|y| f.eval(y), gamma, x, h)
}

pub(crate) fn laplace_bessel_with<F: Fn(&[f64]) -> f64>(f: F, gamma: &MultiIndexGamma, x: &[f64], h: f64) -> f64 {
    let mut y = x.to_vec();
    let mut total = 0.0;
    for (i, g) in gamma.entries().iter().enumerate() {
        let xi = x[i].abs();
        let mut along = |s: f64| {
            y[i] = s.abs();
            f(&y)
        };
        let (m2, m1, c, p1, p2) = (along(xi - 2.0 * h), along(xi - h), along(xi), along(xi + h), along(xi + 2.0 * h));
        y[i] = x[i];
        let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
        total += if xi == 0.0 { (1.0 + g) * d2 } else { d2 + g / xi * (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h) };
    }
    total
}

/// `|(B_k)_t u − (Δ_γ)_x u|` at `(x, t)` by central differences of step `h`.
pub fn pde_residual<U>(spec: &ProblemSpec, solution: U, x: &[f64], t: f64, h: f64) -> f64
where
    U: Fn(&[f64], f64) -> f64,
{
    let time = fd::bessel_operator(|s| solution(x, s), spec.k(), t, h);
    let space = laplace_bessel_with(|y| solution(y, t), spec.gamma(), x, h);
    (time - space).abs()
}
