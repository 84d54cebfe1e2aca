//! Scalar special functions: gamma, Bessel functions of the first and second
//! kind, the normalized Bessel function `j_ν` and the confluent limit `₀F₁`.
//!
//! All functions are pure and take real arguments only.

mod bessel;
mod gamma;
mod hyp;

pub use bessel::{bessel_j, bessel_jy, bessel_y, normalized_j};
pub use gamma::{gamma, sin_pi};
pub use hyp::hyp0f1;

pub(crate) use bessel::j_value;
pub(crate) use gamma::gamma_value;

/// A Bessel order `ν`.
///
/// Only finite orders are representable; each operation checks its own lower
/// bound on `ν`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealOrder(f64);

impl RealOrder {
    pub fn new(value: f64) -> crate::Result<Self> {
        if value.is_finite() {
            Ok(Self(value))
        } else {
            Err(crate::Error::Domain(format!("Bessel order must be finite, got {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<RealOrder> for f64 {
    fn from(order: RealOrder) -> f64 {
        order.0
    }
}
