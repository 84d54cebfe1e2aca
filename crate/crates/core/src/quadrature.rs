//! Gauss rules for the weights that appear in the solution formulas.
//!
//! * [`jacobi_rule`]: weight `(1-y²)^α y^β` on `[0,1]` (radial weight of the
//!   ball integral and of the two-parameter translation).
//! * [`angular_rule`]: weight `sin^{γ-1}α` on `[0,π]` (one-dimensional
//!   generalized translation).
//! * [`shifted_jacobi_rule`]: the classical weight `(1-u)^a u^b` on `[0,1]`,
//!   used for the angular coordinates of the weighted sphere.
//!
//! All rules are Gaussian: nodes are eigenvalues of the Jacobi matrix of the
//! weight (polished by Newton on the recurrence), weights are reciprocals of
//! the Christoffel sums. Built rules
//! are immutable and cached process-wide by the exact bit pattern of their
//! parameters.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::specfun::gamma_value;
use crate::{Error, Result};

/// Default number of nodes for every rule.
pub const DEFAULT_NODES: usize = 64;

// Extra nodes of the classical rule used to discretize (1+y)^α.
const DISCRETIZATION_PAD: usize = 48;
const NEWTON_STEPS: usize = 8;

/// The weight function a rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFunction {
    /// `(1-y²)^alpha y^beta` on `[0,1]`.
    Jacobi { alpha: f64, beta: f64 },
    /// `sin^{gamma-1}α` on `[0,π]`.
    Angular { gamma: f64 },
    /// `(1-u)^a u^b` on `[0,1]`.
    ShiftedJacobi { a: f64, b: f64 },
}

impl WeightFunction {
    /// Closed-form integral of the weight over its interval.
    pub fn total_mass(&self) -> f64 {
        match *self {
            WeightFunction::Jacobi { alpha, beta } => 0.5 * beta_fn(0.5 * (beta + 1.0), alpha + 1.0),
            WeightFunction::Angular { gamma } => beta_fn(0.5, 0.5 * gamma),
            WeightFunction::ShiftedJacobi { a, b } => beta_fn(a + 1.0, b + 1.0),
        }
    }

    /// The interval the rule lives on.
    pub fn interval(&self) -> (f64, f64) {
        match self {
            WeightFunction::Angular { .. } => (0.0, std::f64::consts::PI),
            _ => (0.0, 1.0),
        }
    }
}

/// Euler's Beta function.
pub fn beta_fn(a: f64, b: f64) -> f64 {
    gamma_value(a) * gamma_value(b) / gamma_value(a + b)
}

/// Nodes and positive weights of a Gaussian rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // cos of the angular nodes, kept separately to avoid cos(acos(s)) loss
    cos_nodes: Option<Vec<f64>>,
    weight_fn: WeightFunction,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `cos` of each node, for angular rules.
    pub fn cos_nodes(&self) -> Option<&[f64]> {
        self.cos_nodes.as_deref()
    }

    pub fn weight_fn(&self) -> WeightFunction {
        self.weight_fn
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `Σ wᵢ g(yᵢ)`; a non-finite `g(yᵢ)` is reported with its node index.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut integrand: F) -> Result<f64> {
        let mut acc = 0.0;
        for (index, (&y, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let value = integrand(y);
            if !value.is_finite() {
                return Err(Error::Evaluation { index, value });
            }
            acc += w * value;
        }
        Ok(acc)
    }
}

/// Free-function form of [`QuadratureRule::integrate`].
pub fn integrate<F: FnMut(f64) -> f64>(rule: &QuadratureRule, integrand: F) -> Result<f64> {
    rule.integrate(integrand)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum RuleKey {
    Jacobi(u64, u64, usize),
    Angular(u64, usize),
    Shifted(u64, u64, usize),
}

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached<F>(key: RuleKey, build: F) -> Result<Arc<QuadratureRule>>
where
    F: FnOnce() -> Result<QuadratureRule>,
{
    if let Some(rule) = cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    // built outside the lock; a racing duplicate build is harmless
    let rule = Arc::new(build()?);
    let mut map = cache().lock().expect("rule cache poisoned");
    Ok(Arc::clone(map.entry(key).or_insert(rule)))
}

fn check_exponent(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > -1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("weight exponent {name} = {value} must be > -1 for the weight to be integrable")))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("a quadrature rule needs at least one node".into()))
    } else {
        Ok(())
    }
}

/// Gauss rule for `∫₀¹ p(y) (1-y²)^α y^β dy`, exact for polynomials `p` of
/// degree `≤ 2N-1`.
///
/// The weight factors as `(1+y)^α · (1-y)^α y^β`. The classical part is
/// resolved by a shifted Gauss-Jacobi rule; the analytic factor `(1+y)^α`
/// is absorbed by a discretized Stieltjes procedure on that rule, which
/// yields the recurrence coefficients of the full weight to machine
/// precision. Both endpoint singularities are therefore built into the
/// weights.
pub fn jacobi_rule(alpha: f64, beta: f64, n: usize) -> Result<Arc<QuadratureRule>> {
    check_exponent("alpha", alpha)?;
    check_exponent("beta", beta)?;
    check_size(n)?;
    cached(RuleKey::Jacobi(alpha.to_bits(), beta.to_bits(), n), || {
        let weight_fn = WeightFunction::Jacobi { alpha, beta };
        if alpha == 0.0 {
            let base = shifted_jacobi_coefficients(0.0, beta, n);
            let (nodes, weights) = golub_welsch(&base.0, &base.1, weight_fn.total_mass());
            return Ok(QuadratureRule { nodes, weights, cos_nodes: None, weight_fn });
        }
        let k = 2 * n + DISCRETIZATION_PAD;
        let (diag, off) = shifted_jacobi_coefficients(alpha, beta, k);
        let (ys, ws) = golub_welsch(&diag, &off, beta_fn(alpha + 1.0, beta + 1.0));
        let ws: Vec<f64> = ys.iter().zip(&ws).map(|(&y, &w)| w * (1.0 + y).powf(alpha)).collect();
        let (diag, off) = stieltjes(&ys, &ws, n);
        let (nodes, weights) = golub_welsch(&diag, &off, weight_fn.total_mass());
        Ok(QuadratureRule { nodes, weights, cos_nodes: None, weight_fn })
    })
}

/// Gauss rule for `∫₀^π g(α) sin^{γ-1}α dα`.
///
/// With `s = cos α` this is the Gegenbauer weight `(1-s²)^{(γ-2)/2}` on
/// `[-1,1]`, so the rule is exact for `g` a polynomial in `cos α` of degree
/// `≤ 2N-1`. Nodes are returned in increasing `α`.
pub fn angular_rule(gamma: f64, n: usize) -> Result<Arc<QuadratureRule>> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::Domain(format!("angular weight needs γ > 0, got {gamma}")));
    }
    check_size(n)?;
    cached(RuleKey::Angular(gamma.to_bits(), n), || {
        let a = 0.5 * (gamma - 2.0);
        let (diag, off) = jacobi_coefficients(a, a, n);
        let weight_fn = WeightFunction::Angular { gamma };
        let (s, w) = golub_welsch(&diag, &off, weight_fn.total_mass());
        // increasing α means decreasing s
        let cos_nodes: Vec<f64> = s.iter().rev().map(|v| v.clamp(-1.0, 1.0)).collect();
        let weights: Vec<f64> = w.into_iter().rev().collect();
        let nodes = cos_nodes.iter().map(|c| c.acos()).collect();
        Ok(QuadratureRule { nodes, weights, cos_nodes: Some(cos_nodes), weight_fn })
    })
}

/// Classical Gauss-Jacobi rule for `∫₀¹ g(u) (1-u)^a u^b du`.
pub fn shifted_jacobi_rule(a: f64, b: f64, n: usize) -> Result<Arc<QuadratureRule>> {
    check_exponent("a", a)?;
    check_exponent("b", b)?;
    check_size(n)?;
    cached(RuleKey::Shifted(a.to_bits(), b.to_bits(), n), || {
        let weight_fn = WeightFunction::ShiftedJacobi { a, b };
        let (diag, off) = shifted_jacobi_coefficients(a, b, n);
        let (nodes, weights) = golub_welsch(&diag, &off, weight_fn.total_mass());
        Ok(QuadratureRule { nodes, weights, cos_nodes: None, weight_fn })
    })
}

/// Recurrence coefficients (diagonal, off-diagonal) of the monic Jacobi
/// polynomials for `(1-s)^a (1+s)^b` on `[-1,1]`.
fn jacobi_coefficients(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let fi = i as f64;
        let d = if i == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / ((2.0 * fi + ab) * (2.0 * fi + ab + 2.0)) };
        diag.push(d);
    }
    for i in 1..n {
        let fi = i as f64;
        let beta = if i == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * fi + ab;
            4.0 * fi * (fi + a) * (fi + b) * (fi + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off.push(beta.sqrt());
    }
    (diag, off)
}

/// Coefficients for `(1-u)^a u^b` on `[0,1]` (the map `s = 2u - 1`).
fn shifted_jacobi_coefficients(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (diag, off) = jacobi_coefficients(a, b, n);
    (diag.into_iter().map(|d| 0.5 * (1.0 + d)).collect(), off.into_iter().map(|o| 0.5 * o).collect())
}

/// Orthonormal Stieltjes procedure on the discrete measure `Σ wᵢ δ_{yᵢ}`.
fn stieltjes(ys: &[f64], ws: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mass: f64 = ws.iter().sum();
    let mut prev = vec![0.0; ys.len()];
    let mut cur = vec![1.0 / mass.sqrt(); ys.len()];
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    let mut b_prev = 0.0;
    for k in 0..n {
        let a: f64 = ys.iter().zip(ws).zip(&cur).map(|((y, w), q)| w * y * q * q).sum();
        diag.push(a);
        if k + 1 == n {
            break;
        }
        let mut next: Vec<f64> = ys.iter().zip(&cur).zip(&prev).map(|((y, q), p)| (y - a) * q - b_prev * p).collect();
        // one reorthogonalization pass against the two previous vectors
        for basis in [&cur, &prev] {
            let proj: f64 = ws.iter().zip(basis.iter()).zip(&next).map(|((w, q), r)| w * q * r).sum();
            for (r, q) in next.iter_mut().zip(basis.iter()) {
                *r -= proj * q;
            }
        }
        let b: f64 = ws.iter().zip(&next).map(|(w, r)| w * r * r).sum::<f64>().sqrt();
        for r in next.iter_mut() {
            *r /= b;
        }
        off.push(b);
        b_prev = b;
        prev = std::mem::replace(&mut cur, next);
    }
    (diag, off)
}

/// Nodes (increasing) and weights from a symmetric tridiagonal Jacobi matrix.
fn golub_welsch(diag: &[f64], off: &[f64], mass: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    // eigenvector weights are unreliable at some sizes; polish nodes by Newton and
    // take weights from the Christoffel sum instead
    let weights = nodes
        .iter_mut()
        .map(|x| {
            for _ in 0..NEWTON_STEPS {
                let (p, dp, _) = orthonormal_eval(diag, off, mass, *x);
                if dp == 0.0 {
                    break;
                }
                let step = p / dp;
                *x -= step;
                if step.abs() <= 1e-16 * x.abs().max(1e-300) {
                    break;
                }
            }
            1.0 / orthonormal_eval(diag, off, mass, *x).2
        })
        .collect();
    (nodes, weights)
}

/// Evaluates the degree-n orthonormal polynomial, its derivative and the sum of
/// squares of degrees 0..n-1 at `x`.
fn orthonormal_eval(diag: &[f64], off: &[f64], mass: f64, x: f64) -> (f64, f64, f64) {
    let n = diag.len();
    let mut p_prev = 0.0;
    let mut p = 1.0 / mass.sqrt();
    let mut d_prev = 0.0;
    let mut d = 0.0;
    let mut sum = 0.0;
    for k in 0..n {
        sum += p * p;
        let b_prev = if k == 0 { 0.0 } else { off[k - 1] };
        let b = if k + 1 < n { off[k] } else { 1.0 };
        let p_next = ((x - diag[k]) * p - b_prev * p_prev) / b;
        let d_next = (p + (x - diag[k]) * d - b_prev * d_prev) / b;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d, sum)
}
