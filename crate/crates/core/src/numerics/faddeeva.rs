//! Faddeeva function `w(z) = exp(-z²) erfc(-iz)` and the complex error
//! function built on it.
//!
//! `w` follows the Poppe–Wijers scheme: a Taylor series of the scaled
//! function near the origin, a Laplace continued fraction far from it, and a
//! truncated Taylor expansion around `z + ih` in between.

use num_complex::Complex64;

use crate::{Error, Result};

/// Half-width of the square on which [`erf_complex`] is defined.
pub const ERF_DOMAIN: f64 = 25.0;

const TWO_OVER_SQRT_PI: f64 = core::f64::consts::FRAC_2_SQRT_PI;

/// `w(x + iy)` for `x ≥ 0`, `y ≥ 0`, returned as `(re, im)`.
fn wofz_first_quadrant(xabs: f64, yabs: f64) -> (f64, f64) {
    let x = xabs / 6.3;
    let y = yabs / 4.4;
    let mut qrho = x * x + y * y;
    let xquad = xabs * xabs - yabs * yabs;
    let yquad = 2.0 * xabs * yabs;

    if qrho < 0.085264 {
        // power series of the scaled complementary function
        qrho = (1.0 - 0.85 * y) * libm::sqrt(qrho);
        let n = libm::round(6.0 + 72.0 * qrho) as i32;
        let mut j = 2 * n + 1;
        let mut xsum = 1.0 / j as f64;
        let mut ysum = 0.0;
        for i in (1..=n).rev() {
            j -= 2;
            let xaux = (xsum * xquad - ysum * yquad) / i as f64;
            ysum = (xsum * yquad + ysum * xquad) / i as f64;
            xsum = xaux + 1.0 / j as f64;
        }
        let u1 = -TWO_OVER_SQRT_PI * (xsum * yabs + ysum * xabs) + 1.0;
        let v1 = TWO_OVER_SQRT_PI * (xsum * xabs - ysum * yabs);
        let daux = libm::exp(-xquad);
        let u2 = daux * libm::cos(yquad);
        let v2 = -daux * libm::sin(yquad);
        (u1 * u2 - v1 * v2, u1 * v2 + v1 * u2)
    } else {
        let (h, kapn, nu);
        if qrho > 1.0 {
            h = 0.0;
            kapn = 0;
            qrho = libm::sqrt(qrho);
            nu = (3.0 + 1442.0 / (26.0 * qrho + 77.0)) as i32;
        } else {
            qrho = (1.0 - y) * libm::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            kapn = libm::round(7.0 + 34.0 * qrho) as i32;
            nu = libm::round(16.0 + 26.0 * qrho) as i32;
        }
        let h2 = 2.0 * h;
        let use_taylor = h > 0.0;
        let mut qlambda = if use_taylor { libm::pow(h2, kapn as f64) } else { 0.0 };

        let (mut rx, mut ry, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0);
        for n in (0..=nu).rev() {
            let np1 = (n + 1) as f64;
            let tx = yabs + h + np1 * rx;
            let ty = xabs - np1 * ry;
            let c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if use_taylor && n <= kapn {
                let tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        let (u, v) = if use_taylor {
            (TWO_OVER_SQRT_PI * sx, TWO_OVER_SQRT_PI * sy)
        } else {
            (TWO_OVER_SQRT_PI * rx, TWO_OVER_SQRT_PI * ry)
        };
        let u = if yabs == 0.0 { libm::exp(-xabs * xabs) } else { u };
        (u, v)
    }
}

/// Faddeeva function on the closed upper half plane.
///
/// Returns a domain error for `Im z < 0`, where `w` grows like `exp(-z²)`
/// and callers are expected to use the reflection formula themselves.
pub fn faddeeva_w(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.im < 0.0 {
        return Err(Error::Domain {
            function: "faddeeva_w",
            re: z.re,
            im: z.im,
        });
    }
    Ok(w_upper(z.re, z.im))
}

#[inline]
fn w_upper(re: f64, im: f64) -> Complex64 {
    // w(-conj z) = conj w(z)
    let (u, v) = wofz_first_quadrant(re.abs(), im);
    if re < 0.0 {
        Complex64::new(u, -v)
    } else {
        Complex64::new(u, v)
    }
}

fn erf_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term = -term * z2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * TWO_OVER_SQRT_PI
}

/// `erf` in the closed first quadrant.
fn erf_first_quadrant(x: f64, y: f64) -> Complex64 {
    let z = Complex64::new(x, y);
    if x * x + y * y < 1.0 {
        let s = erf_series(z);
        return if x == 0.0 { Complex64::new(0.0, s.im) } else { s };
    }
    // erf z = 1 - exp(-z²) w(iz), iz = -y + ix lies in the upper half plane
    let w = w_upper(-y, x);
    let arg = -2.0 * x * y;
    let mag = libm::exp(y * y - x * x);
    let e = Complex64::new(mag * libm::cos(arg), mag * libm::sin(arg));
    let r = Complex64::new(1.0, 0.0) - e * w;
    if x == 0.0 {
        Complex64::new(0.0, r.im)
    } else {
        r
    }
}

/// Error function of a complex argument on `|Re z|, |Im z| ≤ 25`.
///
/// Odd and conjugate symmetry are exact: every argument is folded into the
/// first quadrant before evaluation.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.abs() <= ERF_DOMAIN && z.im.abs() <= ERF_DOMAIN) {
        return Err(Error::Domain {
            function: "erf_complex",
            re: z.re,
            im: z.im,
        });
    }
    let e = erf_first_quadrant(z.re.abs(), z.im.abs());
    Ok(match (z.re < 0.0, z.im < 0.0) {
        (false, false) => e,
        (false, true) => e.conj(),
        (true, false) => -e.conj(),
        (true, true) => -e,
    })
}

/// `exp(-y²) · erf(a + iy)` for any real `a`, `y`.
///
/// The prefactor is folded into the evaluation, so the result stays finite
/// where `erf` alone would overflow.
pub fn scaled_erf(a: f64, y: f64) -> Complex64 {
    if a < 0.0 {
        return -scaled_erf(-a, -y);
    }
    if a * a + y * y < 1.0 {
        return erf_series(Complex64::new(a, y)) * libm::exp(-y * y);
    }
    // exp(-y²) - exp(-a² - 2iay) w(-y + ia)
    let w = w_upper(-y, a);
    let mag = libm::exp(-a * a);
    let arg = -2.0 * a * y;
    let e = Complex64::new(mag * libm::cos(arg), mag * libm::sin(arg));
    Complex64::new(libm::exp(-y * y), 0.0) - e * w
}
