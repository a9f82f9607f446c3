//! Modelling toolkit for photon-pair sources based on counter-propagating
//! spontaneous four-wave mixing in step-index fibers.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational:
//!
//! * [`numerics`]: special functions and quadrature.
//! * [`dispersion`]: fused-silica Sellmeier model, LP-mode solver, group
//!   slowness, mode profiles and overlap integrals.
//! * [`source`]: pump and experiment description plus derived scalar
//!   parameters (transit times, `B`, `Λ`, nonlinear coefficients).
//! * [`jsa`]: joint spectral amplitudes on frequency grids, both by direct
//!   evaluation of the exact expressions and in the linear-dispersion
//!   closed form.
//! * [`metrics`]: Schmidt purity, brightness, effective length,
//!   factorability thresholds, bandwidths and intermodal offsets.
//!
//! File formats and the command-line front end live in the `cpsfwm-cli`
//! crate.
#![no_std]
// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod constants;
pub mod dispersion;
mod error;
pub mod jsa;
pub mod metrics;
pub mod numerics;
pub mod source;

pub use error::{Error, ErrorKind, Result};
