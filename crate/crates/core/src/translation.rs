//! Generalized translation, weighted spherical means and the two-parameter
//! translation `^{k,γ}T`.
//!
//! One-dimensional translation of an even function:
//!
//! ```text
//! ^γT^y f(x) = C(γ) ∫₀^π f(√(x² + y² − 2xy cos α)) sin^{γ−1}α dα,
//! C(γ) = Γ((γ+1)/2) / (Γ(γ/2) Γ(1/2))
//! ```
//!
//! The multidimensional operator is the composition over coordinates. The
//! weighted spherical mean averages `^γT^{tθ} f(x)` over the part of the unit
//! sphere in the positive orthant with weight `θ^γ`.

use std::fmt;
use std::sync::Arc;

use crate::quadrature::{angular_rule, jacobi_rule, shifted_jacobi_rule, QuadratureRule, WeightFunction};
use crate::specfun::gamma_value;
use crate::{Error, Result};

/// Default number of nodes per sphere angle.
pub const DEFAULT_SPHERE_NODES: usize = 32;

/// Multi-index `γ = (γ₁,…,γₙ)` of positive reals.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiIndexGamma {
    entries: Vec<f64>,
    abs: f64,
}

impl MultiIndexGamma {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("multi-index γ must have at least one entry".into()));
        }
        if let Some((i, g)) = entries.iter().enumerate().find(|(_, g)| !(g.is_finite() && **g > 0.0)) {
            return Err(Error::Domain(format!("γ entries must be positive, entry {} is {g}", i + 1)));
        }
        let abs = entries.iter().sum();
        Ok(Self { entries, abs })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `|γ| = γ₁ + … + γₙ`.
    pub fn abs(&self) -> f64 {
        self.abs
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

type Evaluator = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A function on the closed positive orthant, extended evenly in every
/// coordinate.
#[derive(Clone)]
pub struct EvenFunction {
    dim: usize,
    smoothness_order: u32,
    evaluator: Arc<Evaluator>,
}

impl fmt::Debug for EvenFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvenFunction")
            .field("dim", &self.dim)
            .field("smoothness_order", &self.smoothness_order)
            .finish_non_exhaustive()
    }
}

impl EvenFunction {
    /// Wraps `evaluator`, which is only ever called with non-negative
    /// coordinates. `smoothness_order` is the declared `C^m` class.
    pub fn new<F>(dim: usize, smoothness_order: u32, evaluator: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self { dim, smoothness_order, evaluator: Arc::new(evaluator) }
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        Self::new(dim, u32::MAX, move |_| value)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn smoothness_order(&self) -> u32 {
        self.smoothness_order
    }

    /// Evaluates at `x`, reflecting negative coordinates.
    ///
    /// # Panics
    /// If `x.len()` differs from the dimension.
    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "point dimension does not match the function");
        if x.iter().all(|v| *v >= 0.0) {
            (self.evaluator)(x)
        } else {
            let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
            (self.evaluator)(&abs)
        }
    }

    pub(crate) fn eval_nonneg(&self, x: &[f64]) -> f64 {
        (self.evaluator)(x)
    }
}

fn check_dim(what: &str, got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::Usage(format!("{what} has dimension {got}, expected {want}")))
    }
}

fn finite(value: f64, context: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Numerical(format!("non-finite datum value during {context}")))
    }
}

/// The tensor-product generalized translation `^γT^y`, with its angular
/// rules resolved once.
#[derive(Debug, Clone)]
pub struct GeneralizedTranslation {
    gamma: MultiIndexGamma,
    rules: Vec<Arc<QuadratureRule>>,
    // 1 / Σ weights, i.e. C(γᵢ)
    norms: Vec<f64>,
}

impl GeneralizedTranslation {
    pub fn new(gamma: &MultiIndexGamma, nodes: usize) -> Result<Self> {
        let rules = gamma.entries().iter().map(|&g| angular_rule(g, nodes)).collect::<Result<Vec<_>>>()?;
        let norms = rules.iter().map(|r| 1.0 / r.weight_fn().total_mass()).collect();
        Ok(Self { gamma: gamma.clone(), rules, norms })
    }

    pub fn gamma(&self) -> &MultiIndexGamma {
        &self.gamma
    }

    /// `^γT^y f(x)`.
    pub fn apply(&self, f: &EvenFunction, x: &[f64], y: &[f64]) -> Result<f64> {
        let n = self.gamma.dim();
        check_dim("datum", f.dim(), n)?;
        check_dim("x", x.len(), n)?;
        check_dim("y", y.len(), n)?;
        let mut buf = vec![0.0; n];
        finite(self.nested(f, x, y, 0, &mut buf), "generalized translation")
    }

    pub(crate) fn apply_unchecked(&self, f: &EvenFunction, x: &[f64], y: &[f64], buf: &mut [f64]) -> f64 {
        self.nested(f, x, y, 0, buf)
    }

    fn nested(&self, f: &EvenFunction, x: &[f64], y: &[f64], i: usize, buf: &mut [f64]) -> f64 {
        if i == x.len() {
            return f.eval_nonneg(buf);
        }
        let (xi, yi) = (x[i].abs(), y[i].abs());
        if xi == 0.0 || yi == 0.0 {
            buf[i] = xi + yi;
            return self.nested(f, x, y, i + 1, buf);
        }
        // x² + y² − 2xy·c written as (x−y)² + 2xy(1−c) to keep small distances accurate
        let d2 = (xi - yi) * (xi - yi);
        let p = 2.0 * xi * yi;
        let rule = &self.rules[i];
        let cos = rule.cos_nodes().expect("angular rule stores cosines");
        let mut acc = 0.0;
        for (c, w) in cos.iter().zip(rule.weights()) {
            buf[i] = (d2 + p * (1.0 - c)).max(0.0).sqrt();
            acc += w * self.nested(f, x, y, i + 1, buf);
        }
        acc * self.norms[i]
    }
}

/// One-dimensional generalized translation `^γT^y f(x)` with an explicit
/// angular rule for the same `γ`.
pub fn translate_1d(f: &EvenFunction, gamma: f64, x: f64, y: f64, rule: &QuadratureRule) -> Result<f64> {
    match rule.weight_fn() {
        WeightFunction::Angular { gamma: g } if g == gamma => {}
        other => {
            return Err(Error::Usage(format!("translation with γ = {gamma} needs its angular rule, got {other:?}")))
        }
    }
    check_dim("datum", f.dim(), 1)?;
    let (x, y) = (x.abs(), y.abs());
    if x == 0.0 || y == 0.0 {
        return finite(f.eval_nonneg(&[x + y]), "generalized translation");
    }
    let d2 = (x - y) * (x - y);
    let p = 2.0 * x * y;
    let cos = rule.cos_nodes().expect("angular rule stores cosines");
    let sum: f64 =
        cos.iter().zip(rule.weights()).map(|(c, w)| w * f.eval_nonneg(&[(d2 + p * (1.0 - c)).max(0.0).sqrt()])).sum();
    finite(sum / rule.weight_fn().total_mass(), "generalized translation")
}

/// Multidimensional generalized translation `^γT^y f(x)`, with `nodes`
/// angular nodes per coordinate.
pub fn translate_nd(f: &EvenFunction, gamma: &MultiIndexGamma, x: &[f64], y: &[f64], nodes: usize) -> Result<f64> {
    GeneralizedTranslation::new(gamma, nodes)?.apply(f, x, y)
}

/// `|S₁⁺(n)|_γ = ∏Γ((γᵢ+1)/2) / (2^{n−1} Γ((n+|γ|)/2))`.
pub fn weighted_sphere_measure(gamma: &MultiIndexGamma) -> f64 {
    let n = gamma.dim() as f64;
    let num: f64 = gamma.entries().iter().map(|g| gamma_value(0.5 * (g + 1.0))).product();
    num / (2f64.powf(n - 1.0) * gamma_value(0.5 * (n + gamma.abs())))
}

/// A product rule on the positive-orthant unit sphere for the weight `θ^γ`,
/// normalized to total mass one.
///
/// Angles `φ₁…φ_{n−1} ∈ [0, π/2]` give `θ₁ = cos φ₁`,
/// `θ₂ = sin φ₁ cos φ₂`, …, `θₙ = sin φ₁ ⋯ sin φ_{n−1}`. With `u = sin²φⱼ`
/// each angle carries a classical Jacobi weight on `[0,1]`.
#[derive(Debug, Clone)]
pub struct WeightedSphere {
    dim: usize,
    directions: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedSphere {
    pub fn new(gamma: &MultiIndexGamma, nodes: usize) -> Result<Self> {
        let n = gamma.dim();
        let g = gamma.entries();
        let mut directions = vec![1.0];
        let mut weights = vec![1.0];
        // running product of sines of the angles fixed so far
        let mut sines = vec![1.0];
        for j in 0..n - 1 {
            let b = (n - j - 2) as f64 + g[j + 1..].iter().sum::<f64>();
            let rule = shifted_jacobi_rule(0.5 * (g[j] - 1.0), 0.5 * (b - 1.0), nodes)?;
            let width = j + 1;
            let mut next_dirs = Vec::with_capacity(weights.len() * rule.len() * (width + 1));
            let mut next_weights = Vec::with_capacity(weights.len() * rule.len());
            let mut next_sines = Vec::with_capacity(weights.len() * rule.len());
            for (p, (&w, &s)) in weights.iter().zip(&sines).enumerate() {
                let prefix = &directions[p * width..p * width + j];
                for (&u, &wu) in rule.nodes().iter().zip(rule.weights()) {
                    next_dirs.extend_from_slice(prefix);
                    next_dirs.push(s * (1.0 - u).sqrt());
                    next_dirs.push(s * u.sqrt());
                    next_weights.push(0.5 * w * wu);
                    next_sines.push(s * u.sqrt());
                }
            }
            directions = next_dirs;
            weights = next_weights;
            sines = next_sines;
        }
        let measure = weighted_sphere_measure(gamma);
        for w in weights.iter_mut() {
            *w /= measure;
        }
        Ok(Self { dim: n, directions, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sum of the normalized weights; one up to rounding.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Iterates `(θ, weight)` pairs.
    pub fn points(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.directions.chunks_exact(self.dim).zip(self.weights.iter().copied())
    }

    /// `M^γ_t[f](x)` using `translation` for the inner operator.
    pub fn mean(&self, translation: &GeneralizedTranslation, f: &EvenFunction, x: &[f64], t: f64) -> Result<f64> {
        check_dim("datum", f.dim(), self.dim)?;
        check_dim("x", x.len(), self.dim)?;
        check_dim("translation", translation.gamma().dim(), self.dim)?;
        let t = t.abs();
        if t == 0.0 {
            return finite(f.eval(x), "spherical mean");
        }
        let mut y = vec![0.0; self.dim];
        let mut buf = vec![0.0; self.dim];
        let mut acc = 0.0;
        for (theta, w) in self.points() {
            for (yi, th) in y.iter_mut().zip(theta) {
                *yi = t * th;
            }
            acc += w * translation.apply_unchecked(f, x, &y, &mut buf);
        }
        finite(acc, "spherical mean")
    }
}

/// Reusable evaluator of the weighted spherical mean.
#[derive(Debug, Clone)]
pub struct SphericalMean {
    translation: GeneralizedTranslation,
    sphere: WeightedSphere,
}

impl SphericalMean {
    pub fn new(gamma: &MultiIndexGamma, angular_nodes: usize, sphere_nodes: usize) -> Result<Self> {
        Ok(Self {
            translation: GeneralizedTranslation::new(gamma, angular_nodes)?,
            sphere: WeightedSphere::new(gamma, sphere_nodes)?,
        })
    }

    pub fn eval(&self, f: &EvenFunction, x: &[f64], t: f64) -> Result<f64> {
        self.sphere.mean(&self.translation, f, x, t)
    }
}

/// Weighted spherical mean `M^γ_t[f](x)`; `resolution` nodes are used per
/// sphere angle and per translation angle.
pub fn spherical_mean(f: &EvenFunction, gamma: &MultiIndexGamma, x: &[f64], t: f64, resolution: usize) -> Result<f64> {
    SphericalMean::new(gamma, resolution, resolution)?.eval(f, x, t)
}

/// The two-parameter translation
/// `^{k,γ}T^t f(x) = C(γ,k) ∫₀¹ (1−y²)^{(k−γ−2)/2} ^γT^{ty}f(x) y^γ dy`.
///
/// `rule` must be `jacobi_rule((k−γ−2)/2, γ, N)`; the inner translation uses
/// `N` angular nodes.
pub fn translate_kgamma(f: &EvenFunction, gamma: f64, k: f64, x: f64, t: f64, rule: &QuadratureRule) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!("translation needs γ > 0, got {gamma}")));
    }
    if !(k > gamma && k.is_finite()) {
        return Err(Error::Domain(format!("two-parameter translation needs k > γ, got k = {k}, γ = {gamma}")));
    }
    let alpha = 0.5 * (k - gamma - 2.0);
    match rule.weight_fn() {
        WeightFunction::Jacobi { alpha: a, beta: b } if a == alpha && b == gamma => {}
        other => return Err(Error::Usage(format!("expected the Jacobi rule ({alpha}, {gamma}), got {other:?}"))),
    }
    check_dim("datum", f.dim(), 1)?;
    let t = t.abs();
    if t == 0.0 {
        return finite(f.eval(&[x]), "two-parameter translation");
    }
    let translation = GeneralizedTranslation::new(&MultiIndexGamma::new(vec![gamma])?, rule.len())?;
    let x = [x.abs()];
    let mut buf = [0.0];
    let sum = rule.integrate(|y| translation.apply_unchecked(f, &x, &[t * y], &mut buf))?;
    Ok(sum / rule.weight_fn().total_mass())
}

/// Convenience: builds the matching rule with `nodes` points.
pub fn translate_kgamma_with(f: &EvenFunction, gamma: f64, k: f64, x: f64, t: f64, nodes: usize) -> Result<f64> {
    if !(k > gamma && k.is_finite()) {
        return Err(Error::Domain(format!("two-parameter translation needs k > γ, got k = {k}, γ = {gamma}")));
    }
    let rule = jacobi_rule(0.5 * (k - gamma - 2.0), gamma, nodes)?;
    translate_kgamma(f, gamma, k, x, t, &rule)
}
