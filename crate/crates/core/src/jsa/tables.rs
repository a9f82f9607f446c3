use alloc::vec::Vec;

use crate::dispersion::{DispersionTable, FiberSpec, ModeId};
use crate::{Error, Result};

/// Dispersion tables for a set of `(mode, window)` requests. Overlapping
/// windows of one mode share a table, so a wave that appears in two roles
/// (pump 1 and signal in the same mode, say) sees bit-identical `k`.
#[derive(Debug, Clone)]
pub struct TableSet {
    tables: Vec<DispersionTable>,
}

impl TableSet {
    pub fn build(fiber: &FiberSpec, requests: &[(ModeId, f64, f64)]) -> Result<Self> {
        let mut windows: Vec<(ModeId, f64, f64)> = Vec::new();
        for &(mode, lo, hi) in requests {
            if !(lo > 0.0 && lo <= hi) {
                return Err(Error::InvalidInterval { lo, hi });
            }
            // Pad so edge nodes sit strictly inside and degenerate windows widen.
            let pad = 0.01 * (hi - lo) + 1e-7 * hi;
            windows.push((mode, lo - pad, hi + pad));
        }
        windows.sort_by(|a, b| {
            (a.0.l, a.0.m)
                .cmp(&(b.0.l, b.0.m))
                .then(a.1.total_cmp(&b.1))
        });
        let mut merged: Vec<(ModeId, f64, f64)> = Vec::new();
        for w in windows {
            match merged.last_mut() {
                Some(last) if last.0 == w.0 && w.1 <= last.2 => last.2 = last.2.max(w.2),
                _ => merged.push(w),
            }
        }
        let tables = merged
            .into_iter()
            .map(|(mode, lo, hi)| DispersionTable::new(fiber, mode, lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableSet { tables })
    }

    /// Table of `mode` whose window contains `omega`.
    pub fn get(&self, mode: ModeId, omega: f64) -> Result<&DispersionTable> {
        self.tables
            .iter()
            .find(|t| t.mode == mode && t.contains(omega))
            .ok_or_else(|| Error::invalid("omega", "outside every tabulated window"))
    }
}
