//! Signal-to-noise ratios, indirect-echo power gains and transmit power
//! splits.
//!
//! `baseline_snr` is the SNR of the bare radar-target-radar path. The RIS
//! contributes through the power gains K of the indirect echo relative to
//! the direct one; the case-wise SNRs and the optimal transmit power splits
//! follow in closed form, except for the widely-spaced case b split which
//! maximizes the worst-case detection probability numerically.

use crate::channel::LinkBudget;
use crate::geometry::{DetectionCase, Scene, SpacingRegime};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Target radar-cross-section fluctuation law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluctuationLaw {
    /// Deterministic RCS (Marcum).
    NonFluctuating,
    /// Exponentially distributed RCS (Swerling 1/2).
    Exponential,
    /// Gamma-distributed RCS with shape 2: mean m, variance m^2/2
    /// (Swerling 3/4).
    Gamma,
}

/// Fluctuation law plus the mean RCS seen from the radar and from the RIS,
/// with the uncertainty intervals used by worst-case power splitting.
#[derive(Debug, Clone)]
pub struct FluctuationModel {
    pub law: FluctuationLaw,
    /// Mean RCS on the direct path, m^2.
    pub mean_rcs: f64,
    /// Mean RCS on the indirect path, m^2.
    pub mean_rcs_ris: f64,
    /// Assumed interval for the direct-path mean.
    pub rcs_bounds: (f64, f64),
    /// Assumed interval for the indirect-path mean.
    pub rcs_ris_bounds: (f64, f64),
}

impl FluctuationModel {
    /// Model with point intervals (the means are taken as known).
    pub fn new(law: FluctuationLaw, mean_rcs: f64, mean_rcs_ris: f64) -> Result<Self> {
        Self::with_bounds(law, mean_rcs, mean_rcs_ris, (mean_rcs, mean_rcs), (mean_rcs_ris, mean_rcs_ris))
    }

    pub fn with_bounds(
        law: FluctuationLaw,
        mean_rcs: f64,
        mean_rcs_ris: f64,
        rcs_bounds: (f64, f64),
        rcs_ris_bounds: (f64, f64),
    ) -> Result<Self> {
        if !(mean_rcs > 0.0) || !(mean_rcs_ris > 0.0) {
            return Err(Error::Domain("mean RCS values must be positive".into()));
        }
        for (name, mean, (lo, hi)) in [
            ("direct", mean_rcs, rcs_bounds),
            ("indirect", mean_rcs_ris, rcs_ris_bounds),
        ] {
            if !(lo > 0.0) || lo > hi {
                return Err(Error::Domain(format!("{name} RCS bounds must satisfy 0 < lo <= hi")));
            }
            if mean < lo || mean > hi {
                return Err(Error::Domain(format!(
                    "{name} mean RCS {mean} outside its bounds [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { law, mean_rcs, mean_rcs_ris, rcs_bounds, rcs_ris_bounds })
    }
}

/// Power gains of the indirect echo over the direct one, receive and
/// transmit side.
#[derive(Debug, Clone, Copy)]
pub struct GainFactors {
    /// Target-RIS-radar path (relevant to case a).
    pub receive: f64,
    /// Radar-RIS-target path (relevant to cases b and c).
    pub transmit: f64,
}

/// SNR of a configuration: a single value for combined/superposed
/// observations, a pair for the two-observation widely-spaced cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SnrValues {
    Single(f64),
    Dual(f64, f64),
}

/// A computed SNR together with the configuration it belongs to.
#[derive(Debug, Clone, Copy)]
pub struct SnrReport {
    pub baseline: f64,
    pub case: DetectionCase,
    pub regime: SpacingRegime,
    pub epsilon: f64,
    pub values: SnrValues,
}

/// SNR of the direct path without the RIS: `alpha^2 * mean_rcs / noise`.
pub fn baseline_snr(direct_amplitude: f64, mean_rcs: f64, noise_power: f64) -> f64 {
    direct_amplitude * direct_amplitude * mean_rcs / noise_power
}

/// Gains from the amplitude sums, `(sum_l a_l / alpha)^2` per path.
pub fn gains(budget: &LinkBudget) -> Result<GainFactors> {
    let alpha = budget.direct_amplitude;
    if !(alpha > 0.0) {
        return Err(Error::Domain("direct amplitude must be positive to form gains".into()));
    }
    let receive = (budget.total_indirect_receive() / alpha).powi(2);
    let transmit = (budget.total_indirect_transmit() / alpha).powi(2);
    Ok(GainFactors { receive, transmit })
}

/// Gains from the distance/gain form,
/// `rho^2 / (4 pi d_t^2 G_rt) * (sum_l sqrt(G_l S_l) / d_l)^2`,
/// an independent route that must agree with [`gains`].
pub fn gains_from_geometry(scene: &Scene, budget: &LinkBudget) -> Result<GainFactors> {
    if !(budget.target_beam_gain > 0.0) {
        return Err(Error::Domain("target beam gain must be positive".into()));
    }
    let d = &scene.derived;
    let common = d.radar_target_distance.powi(2)
        / (4.0 * PI * d.ris_target_distance.powi(2) * budget.target_beam_gain);
    let mut sum_receive = 0.0;
    let mut sum_transmit = 0.0;
    for l in 0..scene.scenario.element_count() {
        let g = budget.ris_beam_gains[l];
        let dl = d.radar_element_distances[l];
        sum_receive += (g * budget.element_rcs_receive[l]).sqrt() / dl;
        sum_transmit += (g * budget.element_rcs_transmit[l]).sqrt() / dl;
    }
    Ok(GainFactors {
        receive: common * sum_receive * sum_receive,
        transmit: common * sum_transmit * sum_transmit,
    })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("power split must lie in [0, 1], got {epsilon}")));
    }
    Ok(())
}

/// Case-wise SNR in the closely-spaced regime. The phase-aligned echoes
/// carry the same target response, so each case reduces to one combined
/// observation.
pub fn snr_closely(
    case: DetectionCase,
    baseline: f64,
    gains: GainFactors,
    epsilon: f64,
) -> Result<SnrReport> {
    check_epsilon(epsilon)?;
    let value = match case {
        DetectionCase::A => baseline * (1.0 + gains.receive),
        DetectionCase::B => baseline * (epsilon + gains.transmit * (1.0 - epsilon)),
        DetectionCase::C => {
            let field = epsilon.sqrt() + (gains.transmit * (1.0 - epsilon)).sqrt();
            baseline * field * field
        }
    };
    Ok(SnrReport {
        baseline,
        case,
        regime: SpacingRegime::Closely,
        epsilon,
        values: SnrValues::Single(value),
    })
}

/// Optimal transmit power split in the closely-spaced regime. Case b keeps
/// everything on the stronger beam; case c weights the beams for coherent
/// recombination. Case a has no transmit split.
pub fn optimal_split_closely(case: DetectionCase, transmit_gain: f64) -> Result<f64> {
    if !(transmit_gain >= 0.0) {
        return Err(Error::Domain("gain must be non-negative".into()));
    }
    match case {
        DetectionCase::A => Err(Error::Unsupported(
            "case a transmits a single beam; there is no power split".into(),
        )),
        DetectionCase::B => Ok(if transmit_gain <= 1.0 { 1.0 } else { 0.0 }),
        DetectionCase::C => Ok(1.0 / (1.0 + transmit_gain)),
    }
}

/// Case-wise SNRs in the widely-spaced regime: the two echoes carry
/// independent target responses, so cases a and b yield one SNR per
/// observation while case c superposes two incoherent components.
pub fn snr_widely(
    case: DetectionCase,
    baseline: f64,
    gains: GainFactors,
    epsilon: f64,
    model: &FluctuationModel,
) -> Result<SnrReport> {
    check_epsilon(epsilon)?;
    if !(model.mean_rcs > 0.0) {
        return Err(Error::Domain("direct mean RCS must be positive".into()));
    }
    let rcs_ratio = model.mean_rcs_ris / model.mean_rcs;
    let values = match case {
        DetectionCase::A => SnrValues::Dual(baseline, baseline * gains.receive * rcs_ratio),
        DetectionCase::B => SnrValues::Dual(
            epsilon * baseline,
            (1.0 - epsilon) * baseline * gains.transmit * rcs_ratio,
        ),
        DetectionCase::C => SnrValues::Single(
            epsilon * baseline + (1.0 - epsilon) * baseline * gains.transmit * rcs_ratio,
        ),
    };
    Ok(SnrReport { baseline, case, regime: SpacingRegime::Widely, epsilon, values })
}

/// Grid step for the numerical worst-case split.
const SPLIT_GRID_STEP: f64 = 1e-3;

/// Optimal transmit power split in the widely-spaced regime.
///
/// The mean RCS values are only known to lie in intervals, so the split
/// maximizes the worst case. For case c the worst-case SNR is linear in the
/// split and the optimum is a pure beam selection driven by the interval
/// lower bounds. For case b (exponential fluctuation only) the worst-case
/// detection probability is maximized by a grid search with local
/// refinement; the worst case sits at the interval lower bounds because the
/// detection probability is nondecreasing in each per-observation SNR.
///
/// `snr_per_rcs` is the direct-path SNR per unit mean RCS,
/// `alpha^2 / noise_power`; `gamma` is the two-observation threshold.
pub fn optimal_split_widely(
    case: DetectionCase,
    transmit_gain: f64,
    model: &FluctuationModel,
    gamma: f64,
    snr_per_rcs: f64,
) -> Result<f64> {
    if !(transmit_gain >= 0.0) {
        return Err(Error::Domain("gain must be non-negative".into()));
    }
    match case {
        DetectionCase::A => Err(Error::Unsupported(
            "case a transmits a single beam; there is no power split".into(),
        )),
        DetectionCase::C => {
            let ratio = transmit_gain * model.rcs_ris_bounds.0 / model.rcs_bounds.0;
            Ok(if ratio <= 1.0 { 1.0 } else { 0.0 })
        }
        DetectionCase::B => {
            if model.law != FluctuationLaw::Exponential {
                return Err(Error::Unsupported(
                    "the widely-spaced case b split is only available for the exponential \
                     fluctuation law (no closed-form two-observation detection probability \
                     otherwise)"
                        .into(),
                ));
            }
            if !(gamma > 0.0) || !(snr_per_rcs > 0.0) {
                return Err(Error::Domain(
                    "threshold and SNR scale must be positive for the case b split".into(),
                ));
            }
            let objective = |eps: f64| {
                let snr1 = eps * snr_per_rcs * model.rcs_bounds.0;
                let snr2 = (1.0 - eps) * transmit_gain * snr_per_rcs * model.rcs_ris_bounds.0;
                crate::detection::pd_two_exponential(snr1, snr2, gamma)
            };
            let steps = (1.0 / SPLIT_GRID_STEP).round() as usize;
            let mut best_eps = 0.0;
            let mut best_val = objective(0.0);
            for i in 1..=steps {
                let eps = i as f64 * SPLIT_GRID_STEP;
                let val = objective(eps);
                if val > best_val {
                    best_val = val;
                    best_eps = eps;
                }
            }
            // Golden-section refinement inside the winning grid cell.
            let mut lo = (best_eps - SPLIT_GRID_STEP).max(0.0);
            let mut hi = (best_eps + SPLIT_GRID_STEP).min(1.0);
            let inv_phi = 0.618_033_988_749_894_9;
            let mut x1 = hi - inv_phi * (hi - lo);
            let mut x2 = lo + inv_phi * (hi - lo);
            let mut f1 = objective(x1);
            let mut f2 = objective(x2);
            for _ in 0..40 {
                if f1 < f2 {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_phi * (hi - lo);
                    f2 = objective(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_phi * (hi - lo);
                    f1 = objective(x1);
                }
            }
            let mid = 0.5 * (lo + hi);
            Ok(if objective(mid) >= best_val { mid } else { best_eps })
        }
    }
}

/// Effective area of the surface seen from the radar,
/// `count * (wavelength/2)^2 * cos(az) * cos(el)`.
pub fn ris_effective_area(element_count: usize, wavelength: f64, azimuth: f64, elevation: f64) -> f64 {
    element_count as f64 * (wavelength / 2.0).powi(2) * azimuth.cos() * elevation.cos()
}

/// Gain of the surface, seen as an aperture antenna, toward the target:
/// `count * pi * cos(az) * cos(el)`.
pub fn ris_gain_toward_target(element_count: usize, azimuth: f64, elevation: f64) -> f64 {
    element_count as f64 * PI * azimuth.cos() * elevation.cos()
}

/// Closed-form approximation of the indirect-echo gain:
/// `(rho^2 G_st / (d_t^2 G_rt)) * min(A_sr/A_rs, A_rs/A_sr)`.
///
/// The min term counts how much of the radar beam the surface intercepts;
/// it peaks when the 3-dB footprint matches the effective surface area.
pub fn approx_gain(
    radar_target_distance: f64,
    ris_target_distance: f64,
    target_beam_gain: f64,
    ris_effective_area: f64,
    footprint_area: f64,
    ris_gain: f64,
) -> Result<f64> {
    if !(ris_effective_area > 0.0) || !(footprint_area > 0.0) {
        return Err(Error::Domain("areas must be positive".into()));
    }
    if !(target_beam_gain > 0.0) || !(ris_target_distance > 0.0) {
        return Err(Error::Domain("gain and distances must be positive".into()));
    }
    let fill = (ris_effective_area / footprint_area).min(footprint_area / ris_effective_area);
    Ok(radar_target_distance.powi(2) * ris_gain / (ris_target_distance.powi(2) * target_beam_gain)
        * fill)
}

/// SNR of the indirect echo alone under the beam-fill approximation: the
/// radar equation with the receive (or transmit) gain replaced by the RIS
/// gain and the two-way path split into the radar-target and RIS-target
/// legs.
#[allow(clippy::too_many_arguments)]
pub fn indirect_radar_equation_snr(
    transmit_power: f64,
    target_beam_gain: f64,
    ris_gain: f64,
    wavelength: f64,
    radar_target_distance: f64,
    ris_target_distance: f64,
    mean_rcs: f64,
    noise_power: f64,
) -> f64 {
    transmit_power * target_beam_gain * ris_gain * wavelength.powi(2) * mean_rcs
        / ((4.0 * PI).powi(3)
            * radar_target_distance.powi(2)
            * ris_target_distance.powi(2)
            * noise_power)
}

/// Linear power ratio to decibels.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
