use alloc::string::String;

use crate::dispersion::ModeId;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("wavelength {wavelength_um} µm outside the material model range [{min_um}, {max_um}] µm")]
    WavelengthOutOfRange {
        wavelength_um: f64,
        min_um: f64,
        max_um: f64,
    },

    #[error("{mode} is not guided at {wavelength_nm:.3} nm (V = {v:.4}, {mode} cutoff at V = {cutoff:.4})")]
    ModeNotGuided {
        mode: ModeId,
        wavelength_nm: f64,
        v: f64,
        cutoff: f64,
    },

    #[error("argument {re} + {im}i is outside the supported domain of {function}")]
    Domain {
        function: &'static str,
        re: f64,
        im: f64,
    },

    #[error("{function} is singular at x = {x}")]
    Singularity { function: &'static str, x: f64 },

    #[error("{what} did not converge: residual {residual:e} with {nodes} nodes")]
    NonConvergent {
        what: &'static str,
        residual: f64,
        nodes: usize,
    },

    #[error("unsupported pump configuration: {0}")]
    UnsupportedConfiguration(&'static str),

    #[error("no phasematching root for |δ| ≤ {limit:e} rad/s")]
    NoPhasematchingRoot { limit: f64 },

    #[error("joint spectrum is identically zero")]
    DegenerateSpectrum,

    #[error("ambiguous marginal: {0}")]
    AmbiguousMarginal(&'static str),
}

/// Coarse error classes, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input values.
    Config,
    /// A numerical procedure failed to reach its tolerance.
    Convergence,
    /// The request is valid but physically impossible or unsupported.
    Physics,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParameter { .. }
            | Error::InvalidInterval { .. }
            | Error::WavelengthOutOfRange { .. } => ErrorKind::Config,
            Error::NonConvergent { .. } => ErrorKind::Convergence,
            Error::ModeNotGuided { .. }
            | Error::Domain { .. }
            | Error::Singularity { .. }
            | Error::UnsupportedConfiguration(_)
            | Error::NoPhasematchingRoot { .. }
            | Error::DegenerateSpectrum
            | Error::AmbiguousMarginal(_) => ErrorKind::Physics,
        }
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
