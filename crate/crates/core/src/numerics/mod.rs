//! Special functions and quadrature primitives.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod chebyshev;
mod faddeeva;
mod quadrature;

pub use bessel::{bessel_j, bessel_j_pair, bessel_k, bessel_k_pair};
pub use chebyshev::Chebyshev;
pub use faddeeva::{erf_complex, faddeeva_w, scaled_erf, ERF_DOMAIN};
pub use quadrature::{gauss_legendre, QuadratureRule};

/// Unnormalized cardinal sine `sin(x)/x`.
///
/// Below `|x| = 1e-4` a four-term Taylor series is used, so the value near
/// the origin carries no cancellation error.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        libm::sin(x) / x
    }
}
