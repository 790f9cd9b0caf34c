//! Simulation library for a radar whose target detection is assisted by a
//! reconfigurable intelligent surface (RIS).
//!
//! The RIS is a planar grid of sub-wavelength elements, each applying a
//! tunable phase shift to impinging waves, which supplies the radar with an
//! additional echo of the target. The library models the full chain:
//!
//! 1. [`geometry`] — 3-D scene construction (radar, target, RIS element
//!    grid), far-field checks and regime classification.
//! 2. [`antenna`] — uniform square radar arrays (pattern, beamwidth,
//!    beam-fill distance rule).
//! 3. [`channel`] — radar-equation link budget, per-element RIS cross
//!    sections and channel phase decompositions.
//! 4. [`ris`] — the phase program that aligns the indirect echo.
//! 5. [`snr`] — baseline/combined SNRs, indirect-echo power gains, optimal
//!    transmit power splits and closed-form design approximations.
//! 6. [`detection`] — GLRT statistics, false-alarm threshold inversion and
//!    closed-form detection probabilities.
//! 7. [`montecarlo`] — a seeded, schedule-independent trial harness that
//!    serves as the oracle for every closed form.
//! 8. [`experiments`] — scenario configuration files, the two experiment
//!    families (closely-spaced SNR-gain table, widely-spaced detection
//!    curves) and the closed-form-vs-Monte-Carlo validation battery.
//!
//! The `ris-radar` binary exposes the experiments on the command line.

pub mod antenna;
pub mod channel;
pub mod detection;
pub mod experiments;
pub mod geometry;
pub mod montecarlo;
pub mod ris;
pub mod snr;

use thiserror::Error;

/// Errors produced by scenario construction, numerical solvers and the CLI
/// front end.
#[derive(Debug, Error)]
pub enum Error {
    /// Scenario/configuration file problem (bad key, bad value, bad units).
    #[error("configuration error: {0}")]
    Config(String),
    /// Geometrically inconsistent scene (coincident points, zero normal, ...).
    #[error("invalid geometry: {0}")]
    Geometry(String),
    /// Numeric argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested operation is not defined in this regime/case/model
    /// combination (e.g. indeterminate spacing, unresolvable-delay gap,
    /// dual-observation gamma law).
    #[error("unsupported regime: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
