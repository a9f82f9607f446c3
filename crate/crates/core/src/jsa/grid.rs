use alloc::vec::Vec;

use crate::constants::SINC_GAUSSIAN_GAMMA;
use crate::source::{PumpScheme, SourceModel};
use crate::{Error, Result};

/// Default node count per axis.
pub const GRID_NODES: usize = 257;
/// Default half-span of each axis in effective marginal widths.
pub const GRID_SPAN_WIDTHS: f64 = 5.0;

/// Uniform rectangular frequency grid with odd node counts, so each
/// central frequency is itself a node.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrequencyGrid {
    /// Absolute signal frequencies, rad/s.
    pub signal_axis: Vec<f64>,
    pub idler_axis: Vec<f64>,
    /// `(ω_s⁰, ω_i⁰)`.
    pub center: (f64, f64),
    pub signal_step: f64,
    pub idler_step: f64,
}

fn check_axis(name: &'static str, center: f64, step: f64, n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid(name, "node count must be odd and at least 3"));
    }
    if !(center.is_finite() && center > 0.0 && step.is_finite() && step > 0.0) {
        return Err(Error::invalid(name, "center and step must be positive"));
    }
    Ok(())
}

fn axis(center: f64, step: f64, n: usize) -> Vec<f64> {
    let half = (n / 2) as f64;
    (0..n).map(|j| center + (j as f64 - half) * step).collect()
}

fn odd_at_least(x: f64) -> usize {
    let n = libm::ceil(x) as usize;
    let n = n.max(3);
    n + (1 - n % 2)
}

impl FrequencyGrid {
    pub fn new(
        signal_center: f64,
        signal_step: f64,
        signal_nodes: usize,
        idler_center: f64,
        idler_step: f64,
        idler_nodes: usize,
    ) -> Result<Self> {
        check_axis("signal axis", signal_center, signal_step, signal_nodes)?;
        check_axis("idler axis", idler_center, idler_step, idler_nodes)?;
        Ok(FrequencyGrid {
            signal_axis: axis(signal_center, signal_step, signal_nodes),
            idler_axis: axis(idler_center, idler_step, idler_nodes),
            center: (signal_center, idler_center),
            signal_step,
            idler_step,
        })
    }

    /// Grid spanning `±half_span` around each center with `n` nodes per axis.
    pub fn symmetric(center: (f64, f64), half_span: (f64, f64), n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::invalid("n", "node count must be odd and at least 3"));
        }
        let d = (n - 1) as f64;
        Self::new(center.0, 2.0 * half_span.0 / d, n, center.1, 2.0 * half_span.1 / d, n)
    }

    /// `n × n` grid spanning ±5 effective marginal widths per axis.
    pub fn default_for(model: &SourceModel, n: usize) -> Result<Self> {
        Self::spanning(model, n, GRID_SPAN_WIDTHS)
    }

    /// `n × n` grid spanning `±span_widths` effective marginal widths per
    /// axis. Wide spans keep the sinc tails that matter for pair rates.
    pub fn spanning(model: &SourceModel, n: usize, span_widths: f64) -> Result<Self> {
        if !(span_widths > 0.0 && span_widths.is_finite()) {
            return Err(Error::invalid("span_widths", "must be positive"));
        }
        let (ws, wi) = effective_widths(model)?;
        Self::symmetric(
            model.central_frequencies(),
            (span_widths * ws, span_widths * wi),
            n,
        )
    }

    /// Grid with one common step on both axes, as required by the fast
    /// path of [`super::jsa_pulsed_numeric`]. The narrower axis gets `n`
    /// nodes across ±5 widths; the wider axis gets as many nodes as the
    /// common step needs, at most `4(n − 1) + 1`, beyond which the step
    /// grows.
    pub fn common_spacing(model: &SourceModel, n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::invalid("n", "node count must be odd and at least 3"));
        }
        let (ws, wi) = effective_widths(model)?;
        let (narrow, wide) = if ws <= wi { (ws, wi) } else { (wi, ws) };
        let cap = 4 * (n - 1) + 1;
        let mut step = 2.0 * GRID_SPAN_WIDTHS * narrow / (n - 1) as f64;
        let mut n_wide = odd_at_least(2.0 * GRID_SPAN_WIDTHS * wide / step + 1.0);
        let mut n_narrow = n;
        if n_wide > cap {
            n_wide = cap;
            step = 2.0 * GRID_SPAN_WIDTHS * wide / (cap - 1) as f64;
            n_narrow = odd_at_least(2.0 * GRID_SPAN_WIDTHS * narrow / step + 1.0);
        }
        let (ns, ni) = if ws <= wi { (n_narrow, n_wide) } else { (n_wide, n_narrow) };
        let (cs, ci) = model.central_frequencies();
        Self::new(cs, step, ns, ci, step, ni)
    }

    /// Grid over ±`span_widths` marginal widths per axis with at least `n`
    /// nodes each and steps of at most a quarter of the
    /// [`conditional_widths`], so a strongly correlated ridge is resolved.
    /// Steps within a factor of two are merged into one common step. Neither
    /// axis exceeds `max_nodes`; past that the step grows.
    pub fn resolving(model: &SourceModel, n: usize, span_widths: f64, max_nodes: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) || max_nodes < n {
            return Err(Error::invalid("n", "node count must be odd, at least 3 and within the cap"));
        }
        if !(span_widths > 0.0 && span_widths.is_finite()) {
            return Err(Error::invalid("span_widths", "must be positive"));
        }
        let (ws, wi) = effective_widths(model)?;
        let (cs, ci) = conditional_widths(model)?;
        let step = |w: f64, c: f64| (2.0 * span_widths * w / (n - 1) as f64).min(0.25 * c);
        let (mut hs, mut hi) = (step(ws, cs), step(wi, ci));
        if hs.max(hi) <= 2.0 * hs.min(hi) {
            hs = hs.min(hi);
            hi = hs;
        }
        let nodes = |w: f64, h: &mut f64| {
            let wanted = 2.0 * span_widths * w / *h + 1.0;
            if wanted > max_nodes as f64 {
                *h = 2.0 * span_widths * w / (max_nodes - 1) as f64;
                max_nodes
            } else {
                odd_at_least(wanted)
            }
        };
        let (ns, ni) = (nodes(ws, &mut hs), nodes(wi, &mut hi));
        let (c_s, c_i) = model.central_frequencies();
        Self::new(c_s, hs, ns, c_i, hi, ni)
    }

    /// Same spans with `2n − 1` nodes per axis (half the step).
    pub fn refined(&self) -> Self {
        let (ns, ni) = (self.signal_len(), self.idler_len());
        Self::new(
            self.center.0,
            0.5 * self.signal_step,
            2 * ns - 1,
            self.center.1,
            0.5 * self.idler_step,
            2 * ni - 1,
        )
        .expect("refining a valid grid")
    }

    pub fn signal_len(&self) -> usize {
        self.signal_axis.len()
    }

    pub fn idler_len(&self) -> usize {
        self.idler_axis.len()
    }

    /// `ν_s = ω_s − ω_s⁰` at node `j`, computed without cancellation.
    pub fn signal_detuning(&self, j: usize) -> f64 {
        (j as f64 - (self.signal_len() / 2) as f64) * self.signal_step
    }

    pub fn idler_detuning(&self, k: usize) -> f64 {
        (k as f64 - (self.idler_len() / 2) as f64) * self.idler_step
    }

    /// `ν_s + ν_i` on anti-diagonal `t = j + k` of an equal-step grid.
    pub fn sum_detuning(&self, t: usize) -> f64 {
        let offset = (self.signal_len() / 2 + self.idler_len() / 2) as f64;
        (t as f64 - offset) * self.signal_step
    }

    pub fn cell_area(&self) -> f64 {
        self.signal_step * self.idler_step
    }

    /// Both axes share one step (to 1e-12 relative).
    pub fn has_common_step(&self) -> bool {
        (self.signal_step - self.idler_step).abs() <= 1e-12 * self.signal_step
    }

    /// Signal and idler axes exchanged.
    pub fn transposed(&self) -> Self {
        FrequencyGrid {
            signal_axis: self.idler_axis.clone(),
            idler_axis: self.signal_axis.clone(),
            center: (self.center.1, self.center.0),
            signal_step: self.idler_step,
            idler_step: self.signal_step,
        }
    }
}

/// Widths `w` of the signal and idler marginal intensities, modelled as
/// `exp(−2ν²/w²)` from a Gaussian stand-in for the joint intensity.
pub fn effective_widths(model: &SourceModel) -> Result<(f64, f64)> {
    let (a_ss, a_ii, a_si) = quadratic_form(model)?;
    let det = a_ss * a_ii - a_si * a_si;
    Ok((2.0 * libm::sqrt(a_ii / det), 2.0 * libm::sqrt(a_ss / det)))
}

/// Widths of the amplitude along each axis with the other detuning held
/// fixed, in the same convention as [`effective_widths`]. A rectangular grid
/// resolves the spectrum when its steps are small against these.
pub fn conditional_widths(model: &SourceModel) -> Result<(f64, f64)> {
    let (a_ss, a_ii, _) = quadratic_form(model)?;
    Ok((2.0 / libm::sqrt(a_ss), 2.0 / libm::sqrt(a_ii)))
}

/// Entries `(a_ss, a_ii, a_si)` of the matrix `A` in the Gaussian model
/// `exp(−½ νᵀ A ν)` of the amplitude.
fn quadratic_form(model: &SourceModel) -> Result<(f64, f64, f64)> {
    let tp = model.temporal_params();
    let (s1, s2) = model.sigmas();
    let gamma = SINC_GAUSSIAN_GAMMA;
    let (a, g, weight) = match model.config.scheme()? {
        PumpScheme::Pulsed => {
            let b = tp.b.unwrap_or(f64::INFINITY);
            let beta2 = (b * b).min(0.25 * gamma);
            (4.0 / (s1 * s1 + s2 * s2), [tp.ts, tp.ti], 4.0 * beta2)
        }
        PumpScheme::Mixed => (4.0 / (s1 * s1), [tp.tau1s, tp.t1i], gamma),
    };
    let a_ss = a + weight * g[0] * g[0];
    let a_ii = a + weight * g[1] * g[1];
    let a_si = a + weight * g[0] * g[1];
    let det = a_ss * a_ii - a_si * a_si;
    if !(det > 1e-12 * a_ss * a_ii) {
        return Err(Error::AmbiguousMarginal(
            "joint intensity is not confined in both directions",
        ));
    }
    Ok((a_ss, a_ii, a_si))
}
