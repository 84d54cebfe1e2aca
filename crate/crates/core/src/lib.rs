//! Numerical solvers for the singular Cauchy problem of the general
//! Euler-Poisson-Darboux equation
//!
//! ```text
//! u_tt + (k/t) u_t = Δ_γ u,   u(x,0) = f(x),   u_t(x,0) = 0,
//! ```
//!
//! where `Δ_γ = Σ (∂²/∂x_i² + (γ_i/x_i) ∂/∂x_i)` acts on functions even in
//! every coordinate of the closed positive orthant.
//!
//! The crate provides every solution route that the theory offers and the
//! machinery they need:
//!
//! * [`specfun`]: gamma, Bessel `J_ν`/`Y_ν`, normalized Bessel `j_ν`, `₀F₁`.
//! * [`quadrature`]: Gauss rules for `(1-y²)^α y^β` on `[0,1]` and for the
//!   angular weight `sin^{γ-1}α` on `[0,π]`.
//! * [`translation`]: generalized translation, weighted spherical means and
//!   the two-parameter translation `^{k,γ}T`.
//! * [`epd`]: regime classification and the direct, boundary, descent and
//!   exceptional solvers, plus finite-difference verification helpers.
//! * [`hankel`]: a Bessel-zero discrete Hankel transform and the spectral
//!   solver for `n = 1`, used as an independent oracle.
//! * [`presets`]: the reference initial data (normalized Bessel products,
//!   Gaussians, radial even polynomials, constants).

pub mod epd;
pub mod error;
pub mod fd;
pub mod hankel;
pub mod presets;
pub mod quadrature;
pub mod specfun;
pub mod translation;

pub use error::{Error, Result};
