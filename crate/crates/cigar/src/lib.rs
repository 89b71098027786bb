//! Numerical analysis of the operator Δ − 1 on the surface ℝ × (0, ∞) with
//! conformal metric P(y)(dx² + dy²), P(y) = (e^{4y} + 10e^{2y} + 1)/(4(e^{2y} − 1)²).

pub mod asymptotic;
pub mod error;
pub mod green;
pub mod martin;
pub mod ode;
pub mod quad;
pub mod specfun;
pub mod sturm;
pub mod surface;

pub use error::{Error, Result};
