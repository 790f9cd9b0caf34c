//! RIS phase program.
//!
//! The surface cancels every geometry-determined phase on the indirect
//! path, so the per-element contributions add coherently up to the single
//! latent target phase. The latent offset rotates the whole sum and leaves
//! its magnitude, hence the detection performance, untouched.

use crate::channel::ChannelPhases;
use crate::geometry::SpacingRegime;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Per-element phase shifts applied by the surface, radians in `[0, 2*pi)`.
#[derive(Debug, Clone)]
pub struct RisPhaseProgram {
    pub phases: Vec<f64>,
    pub regime: SpacingRegime,
}

impl RisPhaseProgram {
    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// Uniform quantization to `bits` bits per element. Plumbing for
    /// hardware studies; the analysis elsewhere assumes ideal phases.
    pub fn quantized(&self, bits: u32) -> RisPhaseProgram {
        let levels = (1u64 << bits) as f64;
        let step = TAU / levels;
        RisPhaseProgram {
            phases: self
                .phases
                .iter()
                .map(|p| ((p / step).round() * step).rem_euclid(TAU))
                .collect(),
            regime: self.regime,
        }
    }
}

/// Chooses the phase program that cancels the known part of the target-side
/// phase and the RIS-radar phase on every element.
pub fn align_phases(phases: &ChannelPhases, regime: SpacingRegime) -> Result<RisPhaseProgram> {
    let known = match regime {
        SpacingRegime::Closely => &phases.known_target_closely,
        SpacingRegime::Widely => &phases.known_target_widely,
        SpacingRegime::Indeterminate => {
            return Err(Error::Unsupported(
                "no alignment rule is defined for an indeterminate spacing regime".into(),
            ))
        }
    };
    let program = known
        .iter()
        .zip(&phases.ris_radar)
        .map(|(k, r)| (-k - r).rem_euclid(TAU))
        .collect();
    Ok(RisPhaseProgram { phases: program, regime })
}

/// Coherent sum of the indirect echo over the surface,
/// `sum_l a_l * exp(i (psi_t_l + phi_l + psi_r_l))`, excluding the common
/// target factor which the caller applies.
pub fn coherent_sum(
    amplitudes: &[f64],
    target_phases: &[f64],
    program_phases: &[f64],
    ris_radar_phases: &[f64],
) -> Result<Complex64> {
    let n = amplitudes.len();
    if target_phases.len() != n || program_phases.len() != n || ris_radar_phases.len() != n {
        return Err(Error::Domain(format!(
            "coherent sum over mismatched lists: {n}, {}, {}, {} entries",
            target_phases.len(),
            program_phases.len(),
            ris_radar_phases.len()
        )));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for l in 0..n {
        sum += Complex64::from_polar(
            amplitudes[l],
            target_phases[l] + program_phases[l] + ris_radar_phases[l],
        );
    }
    Ok(sum)
}
