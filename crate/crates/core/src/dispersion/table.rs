use super::modes::propagation_constant;
use super::{FiberSpec, ModeId};
use crate::constants::SPEED_OF_LIGHT;
use crate::numerics::Chebyshev;
use crate::{Error, Result};

/// Chebyshev nodes per table.
pub const TABLE_NODES: usize = 32;

/// Fast interpolated `k(ω)` and `k′(ω)` of one mode over a frequency window.
///
/// Each table costs [`TABLE_NODES`] full mode solves; afterwards evaluation
/// is a short Clenshaw sum. Intended for dense sampling inside narrow
/// windows around the carrier frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionTable {
    pub mode: ModeId,
    k: Chebyshev,
}

impl DispersionTable {
    pub fn new(fiber: &FiberSpec, mode: ModeId, lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        let k = Chebyshev::fit(lo, hi, TABLE_NODES, |w| propagation_constant(fiber, mode, w))?;
        Ok(DispersionTable { mode, k })
    }

    pub fn interval(&self) -> (f64, f64) {
        self.k.interval()
    }

    pub fn contains(&self, omega: f64) -> bool {
        self.k.contains(omega)
    }

    #[inline]
    pub fn k(&self, omega: f64) -> f64 {
        self.k.eval(omega)
    }

    #[inline]
    pub fn k_prime(&self, omega: f64) -> f64 {
        self.k.derivative(omega)
    }

    #[inline]
    pub fn n_eff(&self, omega: f64) -> f64 {
        self.k(omega) * SPEED_OF_LIGHT / omega
    }
}
