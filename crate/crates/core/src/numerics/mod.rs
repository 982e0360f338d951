//! Special functions, quadrature, Fourier inversion and scalar minimization.
//!
//! Everything here is a pure function of its inputs.

pub mod bessel;
pub mod fourier;
pub mod minimize;
pub mod normal;
pub mod quadrature;

pub use bessel::{bessel_k0, bessel_k1, bessel_k1_scaled, bessel_k1_with_flag, ln_bessel_k1};
pub use fourier::{fourier_cosine_density, fourier_density_complex, PeriodizedInversion};
pub use minimize::{minimize_scalar, minimize_scalar_with_grid};
pub use normal::{std_normal_cdf, std_normal_pdf, std_normal_sf};
pub use quadrature::{integrate, integrate_estimate, integrate_points, Estimate, QuadratureSpec};
