use super::bessel::bessel_jy;
use super::gamma::gamma_value;
use crate::{Error, Result};

// beyond this |z| on the negative axis the alternating series loses digits
const SERIES_NEGATIVE_LIMIT: f64 = 16.0;

/// Confluent hypergeometric limit function `₀F₁(;b;z)`.
///
/// The defining series is summed for `z ≥ -16`. Further out on the negative
/// axis the identity `₀F₁(;b;-t²/4) = Γ(b) (t/2)^{1-b} J_{b-1}(t)` is used with
/// `J` taken from the continued-fraction route, which is independent of the
/// recurrence used by [`normalized_j`](super::normalized_j).
pub fn hyp0f1(b: f64, z: f64) -> Result<f64> {
    if !b.is_finite() || (b <= 0.0 && b == b.floor()) {
        return Err(Error::Domain(format!("₀F₁ parameter b = {b} is a pole")));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("₀F₁ of non-finite argument {z}")));
    }
    if z >= -SERIES_NEGATIVE_LIMIT {
        return Ok(series(b, z));
    }
    let t = 2.0 * (-z).sqrt();
    let (j, _) = bessel_jy(b - 1.0, t)?;
    Ok(gamma_value(b) * (0.5 * t).powf(1.0 - b) * j)
}

fn series(b: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    while m < 2000.0 {
        m += 1.0;
        term *= z / (m * (b + m - 1.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && m * m > z.abs() && m > -b {
            break;
        }
    }
    sum
}
