use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Chebyshev interpolant of a smooth function on `[lo, hi]`, with its
/// derivative series.
#[derive(Debug, Clone, PartialEq)]
pub struct Chebyshev {
    lo: f64,
    hi: f64,
    coeffs: Vec<f64>,
    deriv: Vec<f64>,
}

impl Chebyshev {
    /// Interpolates `f` at `n` Chebyshev–Gauss nodes.
    pub fn fit<F>(lo: f64, hi: f64, n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        if n < 2 {
            return Err(Error::invalid("n", "Chebyshev fit needs at least two nodes"));
        }
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let nf = n as f64;
        let mut values = Vec::with_capacity(n);
        for k in 0..n {
            let t = libm::cos(PI * (k as f64 + 0.5) / nf);
            values.push(f(mid + half * t)?);
        }
        let coeffs: Vec<f64> = (0..n)
            .map(|j| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * libm::cos(PI * j as f64 * (k as f64 + 0.5) / nf))
                    .sum();
                2.0 * s / nf
            })
            .collect();

        let mut deriv = alloc::vec![0.0; n];
        if n >= 2 {
            deriv[n - 2] = 2.0 * (n - 1) as f64 * coeffs[n - 1];
            for j in (1..n - 1).rev() {
                let next = if j + 1 < n { deriv[j + 1] } else { 0.0 };
                deriv[j - 1] = next + 2.0 * j as f64 * coeffs[j];
            }
        }
        for d in &mut deriv {
            *d /= half;
        }
        Ok(Chebyshev { lo, hi, coeffs, deriv })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    fn clenshaw(&self, c: &[f64], x: f64) -> f64 {
        let t = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let t2 = 2.0 * t;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &cj in c[1..].iter().rev() {
            let b0 = t2 * b1 - b2 + cj;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + 0.5 * c[0]
    }

    /// Interpolant value; callers are responsible for staying inside the
    /// fitted interval.
    pub fn eval(&self, x: f64) -> f64 {
        self.clenshaw(&self.coeffs, x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.clenshaw(&self.deriv, x)
    }
}
