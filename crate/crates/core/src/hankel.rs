//! One-dimensional Hankel transform route.
//!
//! The transform of order `ν = (γ−1)/2` and its inverse are
//!
//! ```text
//! f̂(ξ) = ∫₀^∞ f(x) j_ν(xξ) x^γ dx,
//! f(x) = 2^{−2ν}/Γ²(ν+1) ∫₀^∞ f̂(ξ) j_ν(xξ) ξ^γ dξ.
//! ```
//!
//! Both integrals are discretized on the zeros `z₁ < … < z_{M+1}` of `J_ν`
//! (quasi-discrete Hankel transform): with `S = z_{M+1}` and a truncation
//! radius `R`, samples sit at `xₙ = zₙR/S` and frequencies at `ξₘ = zₘ/R`.
//! The spectral solution multiplies `f̂` by a Green multiplier `Ĝ^k(ξ,t)`
//! and inverts.

use log::warn;

use crate::epd::{ProblemSpec, REGIME_TOLERANCE};
use crate::quadrature::jacobi_rule;
use crate::specfun::{bessel_y, gamma, gamma_value, hyp0f1, j_value, normalized_j};
use crate::translation::EvenFunction;
use crate::{Error, Result};

/// Default truncation radius.
pub const DEFAULT_RADIUS: f64 = 16.0;
/// Default number of modes.
pub const DEFAULT_MODES: usize = 256;
/// Edge value above which a datum counts as truncated.
pub const TRUNCATION_LIMIT: f64 = 1e-6;

const SCAN_STEP: f64 = 0.25;

/// The first `m` positive zeros of `J_ν`, each refined until
/// `|J_ν(z)| ≤ 1e-12`.
pub fn bessel_zeros(nu: f64, m: usize) -> Result<Vec<f64>> {
    if !(nu >= -0.5 && nu.is_finite()) {
        return Err(Error::Domain(format!("zeros are provided for ν ≥ −1/2, got {nu}")));
    }
    let mut zeros = Vec::with_capacity(m);
    let mut a = 1e-3;
    let mut fa = j_value(nu, a);
    while zeros.len() < m {
        let b = a + SCAN_STEP;
        let fb = j_value(nu, b);
        if fa.signum() != fb.signum() || fb == 0.0 {
            let z = refine_zero(nu, a, b, fa)
                .ok_or_else(|| Error::Numerical(format!("zero {} of J_{nu} did not converge", zeros.len() + 1)))?;
            zeros.push(z);
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

fn refine_zero(nu: f64, mut lo: f64, mut hi: f64, flo: f64) -> Option<f64> {
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        let fm = j_value(nu, mid);
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut z = 0.5 * (lo + hi);
    for _ in 0..50 {
        let j = j_value(nu, z);
        let dj = nu / z * j - j_value(nu + 1.0, z);
        let step = j / dj;
        z -= step;
        if step.abs() <= 4.0 * f64::EPSILON * z {
            break;
        }
    }
    (j_value(nu, z).abs() <= 1e-12).then_some(z)
}

/// Sample points, frequencies and weights of the discrete transform.
#[derive(Debug, Clone)]
pub struct SpectralGrid {
    gamma: f64,
    nu: f64,
    radius: f64,
    zeros: Vec<f64>,
    points: Vec<f64>,
    frequencies: Vec<f64>,
    forward_weights: Vec<f64>,
    inverse_weights: Vec<f64>,
    // j_ν(ξₘ xₙ), row-major in m
    kernel: Vec<f64>,
}

impl SpectralGrid {
    /// Grid for `Δ_γ` with `γ > 0`, truncation radius `radius` and `modes ≥ 8`
    /// modes.
    pub fn new(gamma: f64, radius: f64, modes: usize) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!("γ must be positive, got {gamma}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        if modes < 8 {
            return Err(Error::Domain(format!("need at least 8 modes, got {modes}")));
        }
        let nu = 0.5 * (gamma - 1.0);
        let zeros = bessel_zeros(nu, modes + 1)?;
        let s = zeros[modes];
        let w = s / radius;
        let zeros_m = &zeros[..modes];
        let jn1: Vec<f64> = zeros_m.iter().map(|&z| j_value(nu + 1.0, z)).collect();
        let points: Vec<f64> = zeros_m.iter().map(|z| z / w).collect();
        let frequencies: Vec<f64> = zeros_m.iter().map(|z| z / radius).collect();
        let forward_weights = points.iter().zip(&jn1).map(|(x, j)| 2.0 * x.powf(2.0 * nu) / (w * w * j * j)).collect();
        let c = 2f64.powf(-2.0 * nu) / gamma_value(nu + 1.0).powi(2);
        let inverse_weights = frequencies
            .iter()
            .zip(&jn1)
            .map(|(xi, j)| c * 2.0 * xi.powf(2.0 * nu) / (radius * radius * j * j))
            .collect();
        let mut kernel = Vec::with_capacity(modes * modes);
        for xi in &frequencies {
            for x in &points {
                kernel.push(normalized_j(nu, xi * x)?);
            }
        }
        Ok(Self { gamma, nu, radius, zeros, points, frequencies, forward_weights, inverse_weights, kernel })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Transform order `ν = (γ−1)/2`.
    pub fn order(&self) -> f64 {
        self.nu
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn modes(&self) -> usize {
        self.points.len()
    }

    /// Zeros `z₁…z_{M+1}` of `J_ν`.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Sample points `xₙ`.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Frequencies `ξₘ`.
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    fn key(&self) -> (u64, u64, usize) {
        (self.gamma.to_bits(), self.radius.to_bits(), self.modes())
    }

    /// Forward transform of samples taken at [`points`](Self::points).
    pub fn forward_samples(&self, samples: &[f64]) -> Vec<f64> {
        let m = self.modes();
        (0..m)
            .map(|i| {
                let row = &self.kernel[i * m..(i + 1) * m];
                row.iter().zip(&self.forward_weights).zip(samples).map(|((k, w), f)| k * w * f).sum()
            })
            .collect()
    }

    /// Inverse transform of frequency samples, evaluated at `x`.
    pub fn inverse_at(&self, values: &[f64], x: f64) -> f64 {
        let x = x.abs();
        self.frequencies
            .iter()
            .zip(&self.inverse_weights)
            .zip(values)
            .map(|((xi, w), v)| w * v * normalized_j(self.nu, xi * x).unwrap_or(f64::NAN))
            .sum()
    }
}

/// Spectral coefficients `f̂(ξₘ)` tied to the grid that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    values: Vec<f64>,
    edge_value: f64,
    grid: (u64, u64, usize),
}

impl SpectralCoefficients {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `|f(R)|`.
    pub fn edge_value(&self) -> f64 {
        self.edge_value
    }

    /// True if the datum had not decayed at the truncation radius.
    pub fn truncated(&self) -> bool {
        self.edge_value > TRUNCATION_LIMIT
    }
}

/// `f̂(ξₘ)` for every grid frequency. A datum that has not decayed at `R`
/// yields coefficients flagged as [`truncated`](SpectralCoefficients::truncated).
pub fn hankel_forward(f: &EvenFunction, grid: &SpectralGrid) -> Result<SpectralCoefficients> {
    if f.dim() != 1 {
        return Err(Error::Usage(format!("the spectral route is one-dimensional, datum has dimension {}", f.dim())));
    }
    let samples: Vec<f64> = grid.points().iter().map(|&x| f.eval(&[x])).collect();
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation { index: i, value: samples[i] });
    }
    let edge_value = f.eval(&[grid.radius()]).abs();
    if edge_value > TRUNCATION_LIMIT {
        warn!("datum is {edge_value:e} at the truncation radius {}; spectral values are truncated", grid.radius());
    }
    Ok(SpectralCoefficients { values: grid.forward_samples(&samples), edge_value, grid: grid.key() })
}

/// Inverse transform of `coeffs` at `x`.
pub fn hankel_inverse(coeffs: &SpectralCoefficients, grid: &SpectralGrid, x: f64) -> Result<f64> {
    if coeffs.grid != grid.key() {
        return Err(Error::Usage("coefficients come from a different spectral grid".into()));
    }
    Ok(grid.inverse_at(&coeffs.values, x))
}

/// Which solution of the transformed equation to use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    /// `k ≥ 0`: `j_{(k−1)/2}(ξt)`.
    Regular,
    /// `k < 0`, not odd: `j_{(k−1)/2}(ξt) + A t^{(1−k)/2} J_{(1−k)/2}(ξt)`.
    FreeA { a: f64 },
    /// `k = −1, −3, …`: `B t^μ J_μ(ξt) − π2^{(k−1)/2}/Γ(μ) (ξt)^μ Y_μ(ξt)`,
    /// `μ = (1−k)/2`.
    Exceptional { b: f64 },
}

/// A Green multiplier branch bound to `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenBranch {
    k: f64,
    branch: Branch,
}

fn is_odd_negative(k: f64) -> bool {
    k < 0.0 && {
        let p = ((1.0 - k) / 2.0).round();
        (k - (1.0 - 2.0 * p)).abs() <= REGIME_TOLERANCE
    }
}

impl GreenBranch {
    pub fn new(k: f64, branch: Branch) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::Domain(format!("k must be finite, got {k}")));
        }
        let ok = match branch {
            Branch::Regular => k >= 0.0,
            Branch::FreeA { .. } => k < 0.0 && !is_odd_negative(k),
            Branch::Exceptional { .. } => is_odd_negative(k),
        };
        if ok {
            Ok(Self { k, branch })
        } else {
            Err(Error::Domain(format!("branch {branch:?} does not apply to k = {k}")))
        }
    }

    /// The branch for `k` with `A = B = 0`.
    pub fn for_k(k: f64) -> Result<Self> {
        let branch = if k >= 0.0 {
            Branch::Regular
        } else if is_odd_negative(k) {
            Branch::Exceptional { b: 0.0 }
        } else {
            Branch::FreeA { a: 0.0 }
        };
        Self::new(k, branch)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }
}

// j_{(k−1)/2}(z) continued below order −1 through ₀F₁
fn regular_part(k: f64, z: f64) -> Result<f64> {
    let nu = 0.5 * (k - 1.0);
    if nu > -1.0 {
        normalized_j(nu, z)
    } else {
        hyp0f1(0.5 * (k + 1.0), -0.25 * z * z)
    }
}

/// `Ĝ^k(ξ,t)`.
pub fn green_multiplier(branch: &GreenBranch, xi: f64, t: f64) -> Result<f64> {
    let k = branch.k;
    let xi = xi.abs();
    if t < 0.0 {
        return Err(Error::Domain(format!("t must be non-negative, got {t}")));
    }
    let z = xi * t;
    match branch.branch {
        Branch::Regular => regular_part(k, z),
        Branch::FreeA { a } => {
            let mu = 0.5 * (1.0 - k);
            let extra = if a == 0.0 || z == 0.0 { 0.0 } else { a * t.powf(mu) * j_value(mu, z) };
            Ok(regular_part(k, z)? + extra)
        }
        Branch::Exceptional { b } => {
            if t == 0.0 {
                return Err(Error::Domain("the exceptional multiplier is evaluated only for t > 0".into()));
            }
            let mu = 0.5 * (1.0 - k);
            let free = if b == 0.0 || z == 0.0 { 0.0 } else { b * t.powf(mu) * j_value(mu, z) };
            // (z^μ Y_μ(z)) → −2^μ Γ(μ)/π, so the singular part tends to 1
            let singular = if z == 0.0 {
                1.0
            } else {
                -std::f64::consts::PI * 2f64.powf(0.5 * (k - 1.0)) / gamma(mu)? * z.powf(mu) * bessel_y(mu, z)?
            };
            Ok(free + singular)
        }
    }
}

/// Spectral solver for one-dimensional problems, with the datum transformed
/// once.
#[derive(Debug, Clone)]
pub struct SpectralSolver {
    grid: SpectralGrid,
    branch: GreenBranch,
    coeffs: SpectralCoefficients,
}

impl SpectralSolver {
    pub fn new(spec: &ProblemSpec, grid: SpectralGrid, branch: GreenBranch) -> Result<Self> {
        if spec.n() != 1 {
            return Err(Error::Usage(format!("the spectral route needs n = 1, got n = {}", spec.n())));
        }
        if (spec.gamma().entries()[0] - grid.gamma()).abs() > 0.0 {
            return Err(Error::Usage("spectral grid was built for a different γ".into()));
        }
        if branch.k() != spec.k() {
            return Err(Error::Usage(format!("branch is for k = {}, problem has k = {}", branch.k(), spec.k())));
        }
        let coeffs = hankel_forward(spec.datum().function(), &grid)?;
        Ok(Self { grid, branch, coeffs })
    }

    pub fn coefficients(&self) -> &SpectralCoefficients {
        &self.coeffs
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    /// `u(x,t)`.
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        let t = t.abs();
        let scaled = self
            .grid
            .frequencies()
            .iter()
            .zip(self.coeffs.values())
            .map(|(xi, c)| Ok(green_multiplier(&self.branch, *xi, t)? * c))
            .collect::<Result<Vec<f64>>>()?;
        let u = self.grid.inverse_at(&scaled, x);
        if u.is_finite() {
            Ok(u)
        } else {
            Err(Error::Numerical(format!("spectral solution is non-finite at x = {x}, t = {t}")))
        }
    }
}

/// `u(x,t)` by the spectral route with the `A = B = 0` branch.
pub fn spectral_solve(spec: &ProblemSpec, grid: &SpectralGrid, x: f64, t: f64) -> Result<f64> {
    SpectralSolver::new(spec, grid.clone(), GreenBranch::for_k(spec.k())?)?.eval(x, t)
}

/// Hankel transform of the truncated cone weight
/// `(t²−x²)₊^{(k−γ−2)/2} / Γ((k−γ)/2)` at frequency `ξ` (one dimension),
/// by Gauss–Jacobi quadrature of the defining integral.
pub fn cone_transform(gamma: f64, k: f64, t: f64, xi: f64, nodes: usize) -> Result<f64> {
    if !(k > gamma && k.is_finite()) {
        return Err(Error::Domain(format!("cone weight needs k > γ, got k = {k}, γ = {gamma}")));
    }
    let rule = jacobi_rule(0.5 * (k - gamma - 2.0), gamma, nodes)?;
    let nu = 0.5 * (gamma - 1.0);
    let integral = rule.integrate(|y| normalized_j(nu, t * xi * y).unwrap_or(f64::NAN))?;
    Ok(t.powf(k - 1.0) * integral / gamma_value(0.5 * (k - gamma)))
}

/// Closed form of [`cone_transform`]:
/// `t^{k−1} Γ((γ+1)/2) / (2 Γ((k+1)/2)) · j_{(k−1)/2}(tξ)`.
pub fn cone_transform_closed_form(gamma: f64, k: f64, t: f64, xi: f64) -> Result<f64> {
    let c = gamma_value(0.5 * (gamma + 1.0)) / (2.0 * gamma_value(0.5 * (k + 1.0)));
    Ok(t.powf(k - 1.0) * c * regular_part(k, t * xi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epd::InitialDatum;
    use crate::presets;
    use crate::translation::MultiIndexGamma;
    use std::f64::consts::PI;
    use std::sync::OnceLock;

    fn grid() -> &'static SpectralGrid {
        static GRID: OnceLock<SpectralGrid> = OnceLock::new();
        GRID.get_or_init(|| SpectralGrid::new(2.0 / 3.0, 12.0, 256).unwrap())
    }

    fn gauss() -> EvenFunction {
        EvenFunction::new(1, u32::MAX, |x| (-0.5 * x[0] * x[0]).exp())
    }

    #[test]
    fn zeros_examples() {
        let z = bessel_zeros(0.5, 3).unwrap();
        for (i, z) in z.iter().enumerate() {
            assert!((z - (i + 1) as f64 * PI).abs() < 1e-13);
        }
        // mpmath besseljzero(0, 1)
        assert!((bessel_zeros(0.0, 1).unwrap()[0] - 2.404_825_557_695_773).abs() < 1e-14);
        let z = bessel_zeros(-0.5, 2).unwrap();
        assert!((z[0] - PI / 2.0).abs() < 1e-13 && (z[1] - 1.5 * PI).abs() < 1e-13);
        assert!(bessel_zeros(-0.7, 2).is_err());
    }

    #[test]
    fn zeros_are_increasing_and_accurate() {
        let g = grid();
        assert!(g.zeros().windows(2).all(|w| w[0] < w[1]));
        for z in g.zeros() {
            assert!(j_value(g.order(), *z).abs() <= 1e-12);
        }
        assert!(SpectralGrid::new(1.0, 10.0, 4).is_err());
    }

    #[test]
    fn gaussian_is_self_reciprocal() {
        let g = grid();
        let nu = g.order();
        let c = 2f64.powf(nu) * gamma_value(nu + 1.0);
        let coeffs = hankel_forward(&gauss(), g).unwrap();
        assert!(!coeffs.truncated());
        for (xi, v) in g.frequencies().iter().zip(coeffs.values()) {
            if *xi <= 5.0 {
                let want = c * (-0.5 * xi * xi).exp();
                assert!(((v - want) / want).abs() <= 1e-8, "ξ={xi}: {v} vs {want}");
            }
        }
    }

    #[test]
    fn zero_datum_and_coefficients() {
        let g = grid();
        let coeffs = hankel_forward(&EvenFunction::constant(1, 0.0), g).unwrap();
        assert!(coeffs.values().iter().all(|v| *v == 0.0));
        assert_eq!(hankel_inverse(&coeffs, g, 1.3).unwrap(), 0.0);
    }

    #[test]
    fn round_trips() {
        let g = grid();
        let nu = g.order();
        let windowed =
            EvenFunction::new(1, u32::MAX, move |x| normalized_j(nu, x[0]).unwrap() * (-x[0] * x[0] / 8.0).exp());
        for (f, tol) in [(gauss(), 1e-7), (windowed, 1e-6)] {
            let coeffs = hankel_forward(&f, g).unwrap();
            for i in 0..=30 {
                let x = 0.2 * i as f64;
                let back = hankel_inverse(&coeffs, g, x).unwrap();
                let want = f.eval(&[x]);
                assert!((back - want).abs() <= tol * want.abs().max(1e-3), "x={x}: {back} vs {want}");
            }
        }
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let other = SpectralGrid::new(2.0 / 3.0, 10.0, 16).unwrap();
        let coeffs = hankel_forward(&gauss(), &other).unwrap();
        assert!(matches!(hankel_inverse(&coeffs, grid(), 1.0), Err(Error::Usage(_))));
    }

    #[test]
    fn truncation_is_flagged() {
        let coeffs =
            hankel_forward(&EvenFunction::constant(1, 1.0), &SpectralGrid::new(1.0, 10.0, 16).unwrap()).unwrap();
        assert!(coeffs.truncated());
    }

    #[test]
    fn symbol_identity() {
        let g = grid();
        let gm = MultiIndexGamma::new(vec![2.0 / 3.0]).unwrap();
        let datum = presets::gaussian(&gm, 1.0).unwrap();
        let f_hat = hankel_forward(datum.function(), g).unwrap();
        let lap_hat = hankel_forward(&datum.laplace_power(1).unwrap(), g).unwrap();
        let scale = f_hat.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for ((xi, a), b) in g.frequencies().iter().zip(f_hat.values()).zip(lap_hat.values()) {
            assert!((b + xi * xi * a).abs() <= 1e-6 * scale);
        }
    }

    #[test]
    fn multiplier_examples() {
        let reg = GreenBranch::for_k(2.5).unwrap();
        assert_eq!(green_multiplier(&reg, 3.0, 0.0).unwrap(), 1.0);
        for t in [0.3, 1.0, 4.0] {
            assert!((green_multiplier(&reg, 1.0, t).unwrap() - normalized_j(0.75, t).unwrap()).abs() < 1e-15);
            let free = GreenBranch::for_k(-0.5).unwrap();
            assert_eq!(free.branch(), Branch::FreeA { a: 0.0 });
            assert!((green_multiplier(&free, 1.3, t).unwrap() - normalized_j(-0.75, 1.3 * t).unwrap()).abs() < 1e-14);
        }
        let exc = GreenBranch::for_k(-3.0).unwrap();
        assert!(matches!(green_multiplier(&exc, 1.0, 0.0), Err(Error::Domain(_))));
        assert!((green_multiplier(&exc, 1.0, 1e-6).unwrap() - 1.0).abs() < 1e-9);
        assert!(GreenBranch::new(-1.0, Branch::Regular).is_err());
        assert!(GreenBranch::new(-2.0, Branch::Exceptional { b: 0.0 }).is_err());
        assert!(GreenBranch::new(-1.0, Branch::FreeA { a: 1.0 }).is_err());
    }

    #[test]
    fn multipliers_solve_the_transformed_equation() {
        let h = 1e-3;
        let branches = [
            GreenBranch::for_k(2.5).unwrap(),
            GreenBranch::for_k(0.0).unwrap(),
            GreenBranch::new(-0.5, Branch::FreeA { a: 0.7 }).unwrap(),
            GreenBranch::new(-2.4, Branch::FreeA { a: -1.2 }).unwrap(),
            GreenBranch::new(-1.0, Branch::Exceptional { b: 0.4 }).unwrap(),
            GreenBranch::for_k(-3.0).unwrap(),
        ];
        for br in &branches {
            for xi in [0.5, 1.0, 2.0] {
                for t in [0.1, 0.5, 1.0, 2.0] {
                    let g = |s: f64| green_multiplier(br, xi, s).unwrap();
                    let r = crate::fd::bessel_operator(g, br.k(), t, h) + xi * xi * g(t);
                    assert!(r.abs() <= 1e-6, "{br:?} ξ={xi} t={t}: {r}");
                }
            }
        }
    }

    #[test]
    fn spectral_solve_examples() {
        let gm = MultiIndexGamma::new(vec![2.0 / 3.0]).unwrap();
        let g = SpectralGrid::new(2.0 / 3.0, 16.0, 256).unwrap();
        let zero = ProblemSpec::new(gm.clone(), 2.5, InitialDatum::new(EvenFunction::constant(1, 0.0))).unwrap();
        assert_eq!(spectral_solve(&zero, &g, 1.0, 1.0).unwrap(), 0.0);
        // window exp(−(x/8)^16) leaves [0, 4] untouched to 1e-5
        let win = presets::Window::new(8.0, 16.0).unwrap();
        let spec = ProblemSpec::new(gm.clone(), 2.5, presets::jbessel(&gm, &[1.0], Some(win)).unwrap()).unwrap();
        let solver = SpectralSolver::new(&spec, g, GreenBranch::for_k(2.5).unwrap()).unwrap();
        for x in [0.0, 0.7, 1.4, 2.0] {
            for t in [0.0, 0.8, 2.0] {
                let got = solver.eval(x, t).unwrap();
                let want = presets::jbessel_solution(&gm, &[1.0], 2.5, &[x], t).unwrap();
                assert!((got - want).abs() <= 1e-3, "x={x} t={t}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn cone_transform_closed_form_is_pi_free() {
        let (gamma, k) = (2.0 / 3.0, 2.5);
        for (t, xi) in [(0.5, 0.3), (1.0, 1.0), (2.0, 3.5)] {
            let q = cone_transform(gamma, k, t, xi, 64).unwrap();
            let c = cone_transform_closed_form(gamma, k, t, xi).unwrap();
            assert!(((q - c) / c).abs() < 1e-12, "{q} {c}");
        }
    }
}
