//! Ready-made initial data and the closed-form solutions that go with them.

use crate::epd::InitialDatum;
use crate::specfun::{hyp0f1, normalized_j};
use crate::translation::{EvenFunction, MultiIndexGamma};
use crate::{Error, Result};

/// Number of analytic Laplace–Bessel powers attached to eigenfunction data.
const EIGEN_POWERS: usize = 6;

/// A radial cutoff `exp(−(|x|/scale)^power)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub scale: f64,
    pub power: f64,
}

impl Window {
    pub fn new(scale: f64, power: f64) -> Result<Self> {
        if !(scale > 0.0 && power > 0.0 && scale.is_finite() && power.is_finite()) {
            return Err(Error::Domain(format!("window needs positive scale and power, got {scale}, {power}")));
        }
        Ok(Self { scale, power })
    }

    pub fn eval(&self, r: f64) -> f64 {
        (-(r / self.scale).powf(self.power)).exp()
    }

    fn smoothness(&self) -> u32 {
        if self.power.fract() == 0.0 && (self.power as u64).is_multiple_of(2) {
            u32::MAX
        } else {
            self.power.floor() as u32
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn check_omega(gamma: &MultiIndexGamma, omega: &[f64]) -> Result<()> {
    if omega.len() != gamma.dim() {
        return Err(Error::Usage(format!("ω has {} entries, γ has {}", omega.len(), gamma.dim())));
    }
    if omega.iter().any(|w| !w.is_finite()) {
        return Err(Error::Domain("ω entries must be finite".into()));
    }
    Ok(())
}

/// `∏ j_{(γᵢ−1)/2}(ωᵢ xᵢ)`, optionally windowed.
///
/// Without a window the datum is an eigenfunction, `Δ_γ f = −|ω|² f`, and the
/// analytic powers are attached.
pub fn jbessel(gamma: &MultiIndexGamma, omega: &[f64], window: Option<Window>) -> Result<InitialDatum> {
    check_omega(gamma, omega)?;
    let orders: Vec<f64> = gamma.entries().iter().map(|g| 0.5 * (g - 1.0)).collect();
    let omega = omega.to_vec();
    let n = gamma.dim();
    let product = {
        let (orders, omega) = (orders.clone(), omega.clone());
        move |x: &[f64]| -> f64 {
            orders
                .iter()
                .zip(&omega)
                .zip(x)
                .map(|((nu, w), xi)| normalized_j(*nu, w * xi).unwrap_or(f64::NAN))
                .product()
        }
    };
    if let Some(win) = window {
        let f = EvenFunction::new(n, win.smoothness(), move |x| product(x) * win.eval(norm(x)));
        return Ok(InitialDatum::new(f));
    }
    let lambda: f64 = omega.iter().map(|w| w * w).sum();
    let product = std::sync::Arc::new(product);
    let powers = (1..=EIGEN_POWERS)
        .map(|h| {
            let p = product.clone();
            let scale = (-lambda).powi(h as i32);
            EvenFunction::new(n, u32::MAX, move |x| scale * p(x))
        })
        .collect();
    Ok(InitialDatum::new(EvenFunction::new(n, u32::MAX, move |x| product(x))).with_laplace_powers(powers))
}

/// Time factor of the eigenfunction solution:
/// `₀F₁(;(k+1)/2; −λt²/4)`, i.e. `j_{(k−1)/2}(√λ t)` where that is defined.
pub fn eigen_time_factor(lambda: f64, k: f64, t: f64) -> Result<f64> {
    let nu = 0.5 * (k - 1.0);
    if nu > -1.0 {
        normalized_j(nu, lambda.sqrt() * t)
    } else {
        hyp0f1(0.5 * (k + 1.0), -0.25 * lambda * t * t)
    }
}

/// Closed-form `u(x,t)` for the unwindowed [`jbessel`] datum.
pub fn jbessel_solution(gamma: &MultiIndexGamma, omega: &[f64], k: f64, x: &[f64], t: f64) -> Result<f64> {
    check_omega(gamma, omega)?;
    let mut f = 1.0;
    for ((g, w), xi) in gamma.entries().iter().zip(omega).zip(x) {
        f *= normalized_j(0.5 * (g - 1.0), w * xi)?;
    }
    let lambda: f64 = omega.iter().map(|w| w * w).sum();
    Ok(f * eigen_time_factor(lambda, k, t)?)
}

/// `exp(−|x|²/(2w²))` with its first Laplace–Bessel power.
pub fn gaussian(gamma: &MultiIndexGamma, width: f64) -> Result<InitialDatum> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::Domain(format!("Gaussian width must be positive, got {width}")));
    }
    let n = gamma.dim();
    let w2 = width * width;
    let d = n as f64 + gamma.abs();
    let f = EvenFunction::new(n, u32::MAX, move |x| (-0.5 * x.iter().map(|v| v * v).sum::<f64>() / w2).exp());
    let lap = EvenFunction::new(n, u32::MAX, move |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        (r2 / (w2 * w2) - d / w2) * (-0.5 * r2 / w2).exp()
    });
    Ok(InitialDatum::new(f).with_laplace_powers(vec![lap]))
}

/// Radial polynomial `Σ cⱼ |x|^{2j}` with all its Laplace–Bessel powers.
///
/// `Δ_γ |x|^{2j} = 2j(2j + n + |γ| − 2)|x|^{2j−2}`, so the datum is
/// B-polyharmonic of order `deg + 1`.
pub fn radial_polynomial(gamma: &MultiIndexGamma, coeffs: &[f64]) -> Result<InitialDatum> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain("polynomial coefficients must be finite".into()));
    }
    let n = gamma.dim();
    let d = n as f64 + gamma.abs();
    let mut layers = vec![coeffs.to_vec()];
    while layers.last().is_some_and(|c| c.len() > 1) {
        let c = layers.last().unwrap();
        let next: Vec<f64> = (1..c.len())
            .map(|j| {
                let j = j as f64;
                2.0 * j * (2.0 * j + d - 2.0) * c[j as usize]
            })
            .collect();
        layers.push(next);
    }
    let order = layers.len();
    let as_fn = |c: Vec<f64>| {
        EvenFunction::new(n, u32::MAX, move |x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            c.iter().rev().fold(0.0, |acc, cj| acc * r2 + cj)
        })
    };
    let mut fns = layers.into_iter().map(as_fn);
    let f = fns.next().unwrap_or_else(|| EvenFunction::constant(n, 0.0));
    Ok(InitialDatum::new(f).with_laplace_powers(fns.collect()).with_polyharmonic_order(order))
}

/// `|x|²`.
pub fn poly_x2(gamma: &MultiIndexGamma) -> Result<InitialDatum> {
    radial_polynomial(gamma, &[0.0, 1.0])
}

/// The constant `c`.
pub fn constant(gamma: &MultiIndexGamma, c: f64) -> Result<InitialDatum> {
    radial_polynomial(gamma, &[c])
}

/// `n = 1`, `γ = 2/3`, `k = 5/2`, datum `j_{−1/6}`; the solution is
/// `j_{−1/6}(x) j_{3/4}(t)`.
pub fn example_one() -> Result<(MultiIndexGamma, f64, InitialDatum)> {
    let gamma = MultiIndexGamma::new(vec![2.0 / 3.0])?;
    let datum = jbessel(&gamma, &[1.0], None)?;
    Ok((gamma, 2.5, datum))
}

/// `n = 1`, `γ = 3/2`, `k = 1/3`, datum `j_{1/4}`; the solution is
/// `₀F₁(;5/4;−x²/4) ₀F₁(;2/3;−t²/4)`.
pub fn example_two() -> Result<(MultiIndexGamma, f64, InitialDatum)> {
    let gamma = MultiIndexGamma::new(vec![1.5])?;
    let datum = jbessel(&gamma, &[1.0], None)?;
    Ok((gamma, 1.0 / 3.0, datum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epd::laplace_bessel_apply;

    fn g(entries: &[f64]) -> MultiIndexGamma {
        MultiIndexGamma::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn analytic_powers_match_finite_differences() {
        let gm = g(&[0.5, 1.5]);
        let data = [
            jbessel(&gm, &[1.0, 0.7], None).unwrap(),
            gaussian(&gm, 0.9).unwrap(),
            radial_polynomial(&gm, &[1.0, -2.0, 0.5]).unwrap(),
        ];
        for datum in &data {
            let lap = datum.laplace_power(1).unwrap();
            for x in [[0.0, 0.4], [0.8, 1.3], [1.9, 0.0]] {
                let fd = laplace_bessel_apply(datum.function(), &gm, &x, 1e-2);
                assert!((fd - lap.eval(&x)).abs() < 1e-6, "{x:?}: {fd} vs {}", lap.eval(&x));
            }
        }
    }

    #[test]
    fn polynomial_layers_terminate() {
        let gm = g(&[0.7]);
        let d = radial_polynomial(&gm, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(d.polyharmonic_order(), Some(3));
        // f = 1 + 2x² + 3x⁴: Δf = 6.8 + 44.4x², Δ²f = 150.96
        assert!((d.laplace_power(1).unwrap().eval(&[0.5]) - (6.8 + 44.4 * 0.25)).abs() < 1e-12);
        assert!((d.laplace_power(2).unwrap().eval(&[0.3]) - 150.96).abs() < 1e-12);
        assert_eq!(d.laplace_power(3).unwrap().eval(&[1.0]), 0.0);
        let x2 = poly_x2(&gm).unwrap();
        assert!((x2.laplace_power(1).unwrap().eval(&[5.0]) - 2.0 * 1.7).abs() < 1e-14);
    }

    #[test]
    fn window_and_eigen_factor() {
        let gm = g(&[2.0 / 3.0]);
        let w = Window::new(8.0, 2.0).unwrap();
        let d = jbessel(&gm, &[1.0], Some(w)).unwrap();
        assert!(d.laplace_power(1).is_none());
        assert!((d.eval(&[8.0]) - normalized_j(-1.0 / 6.0, 8.0).unwrap() * (-1.0f64).exp()).abs() < 1e-15);
        assert!(Window::new(0.0, 2.0).is_err());
        // below ν = −1 the factor continues through ₀F₁
        let a = eigen_time_factor(1.0, -1.5, 0.7).unwrap();
        assert!((a - hyp0f1(-0.25, -0.25 * 0.49).unwrap()).abs() < 1e-15);
        let b = eigen_time_factor(4.0, 2.5, 0.5).unwrap();
        assert!((b - normalized_j(0.75, 1.0).unwrap()).abs() < 1e-15);
    }
}
