use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Nodes and weights of an interpolatory rule on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureRule {
    /// Abscissae, strictly increasing inside `(lo, hi)`.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `n`-point Gauss–Legendre rule on `[lo, hi]`, exact for polynomials of
/// degree `2n - 1`.
pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::invalid("n", "Gauss-Legendre needs at least two nodes"));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // i-th largest root of P_n
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = mid - half * z;
        nodes[n - 1 - i] = mid + half * z;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        interval: (lo, hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = gauss_legendre(2, -1.0, 1.0).unwrap();
        assert!((r.integrate(|x| x * x) - 2.0 / 3.0).abs() < 1e-15);
        let r = gauss_legendre(16, 0.0, 1.0).unwrap();
        let e = core::f64::consts::E - 1.0;
        assert!((r.integrate(libm::exp) - e).abs() / e < 1e-12);
        assert!(matches!(gauss_legendre(2, 1.0, 1.0), Err(Error::InvalidInterval { .. })));
        assert!(gauss_legendre(1, 0.0, 1.0).is_err());
    }

    #[test]
    fn nodes_sorted_inside() {
        for n in [2, 3, 8, 129, 1025] {
            let r = gauss_legendre(n, -3.0, 5.0).unwrap();
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]), "n = {n}");
            assert!(r.nodes[0] > -3.0 && r.nodes[n - 1] < 5.0);
            let total: f64 = r.weights.iter().sum();
            assert!((total - 8.0).abs() < 1e-12);
        }
    }
}
