//! Experiment front end: scenario files, the two experiment families and
//! the closed-form-vs-Monte-Carlo validation battery, all emitting CSV
//! (comma separator, `.` decimal point, header row, LF line endings).
//!
//! Decibel values are reported with half-up rounding to two decimals; all
//! internal arithmetic stays linear.

pub mod config;

pub use config::{EpsilonPolicy, ScenarioConfig};

use crate::antenna::SquareArrayAntenna;
use crate::channel::{build_link_budget, phase_decomposition, LinkBudget};
use crate::detection::{
    pd_single, pd_two_exponential, threshold_from_pfa, DetectorConfig, DetectorKind,
};
use crate::geometry::{
    build_geometry, classify_delay_case, classify_spacing, validate_far_field, BeamConfig,
    DetectionCase, GeometryConfig, Scene, SpacingRegime, Vec3,
};
use crate::montecarlo::{estimate_rate, Hypothesis, SignalModel, TrialConfig};
use crate::ris::align_phases;
use crate::snr::{
    baseline_snr, gains, optimal_split_closely, optimal_split_widely, snr_closely, snr_widely,
    FluctuationLaw, FluctuationModel, GainFactors, SnrValues,
};
use crate::{Error, Result};
use num_complex::Complex64;

/// Outcome of the validation battery.
#[derive(Debug, Clone)]
pub struct ValidationSummary {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl ValidationSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

/// dB with half-up rounding to two decimals, as a fixed-point string.
fn format_db(linear: f64) -> String {
    let db = crate::snr::to_db(linear);
    format!("{:.2}", (db * 100.0).round() / 100.0)
}

fn csv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Scene builders
// ---------------------------------------------------------------------------

/// Closely-spaced scene for one RIS side: the surface faces +y at the
/// origin, the radar sits broadside at the beam-fill distance, the target
/// on the same axis `target_range` beyond the radar.
pub fn closely_scene(
    cfg: &ScenarioConfig,
    ris_side: f64,
    fill_distance: f64,
    bandwidth: f64,
) -> Result<Scene> {
    build_geometry(&GeometryConfig {
        radar_position: Vec3::new(0.0, fill_distance, 0.0),
        target_position: Vec3::new(0.0, fill_distance + cfg.closely.target_range, 0.0),
        ris_center: Vec3::new(0.0, 0.0, 0.0),
        ris_normal: Vec3::new(0.0, 1.0, 0.0),
        ris_in_plane_axes: None,
        ris_side,
        wavelength: cfg.wavelength(),
        bandwidth,
        radar_aperture_target: cfg.radar.aperture_target,
        radar_aperture_ris: cfg.radar.aperture_ris,
        target_size: cfg.target.size,
    })
}

/// Widely-spaced scene: radar and target on the illuminated side of the
/// RIS at configured distances and azimuths (off the RIS normal, in the
/// surface's azimuth plane).
pub fn widely_scene(cfg: &ScenarioConfig) -> Result<Scene> {
    let w = &cfg.widely;
    let place = |distance: f64, azimuth_deg: f64| {
        let az = azimuth_deg.to_radians();
        Vec3::new(distance * az.sin(), distance * az.cos(), 0.0)
    };
    build_geometry(&GeometryConfig {
        radar_position: place(w.radar_ris_distance, w.radar_azimuth_deg),
        target_position: place(w.target_ris_distance, w.target_azimuth_deg),
        ris_center: Vec3::new(0.0, 0.0, 0.0),
        ris_normal: Vec3::new(0.0, 1.0, 0.0),
        ris_in_plane_axes: None,
        ris_side: w.ris_side,
        wavelength: cfg.wavelength(),
        bandwidth: w.bandwidth,
        radar_aperture_target: cfg.radar.aperture_target,
        radar_aperture_ris: cfg.radar.aperture_ris,
        target_size: cfg.target.size,
    })
}

fn antennas(cfg: &ScenarioConfig) -> Result<(SquareArrayAntenna, SquareArrayAntenna)> {
    let lambda = cfg.wavelength();
    Ok((
        SquareArrayAntenna::new(cfg.radar.aperture_target, lambda)?,
        SquareArrayAntenna::new(cfg.radar.aperture_ris, lambda)?,
    ))
}

// ---------------------------------------------------------------------------
// Closely-spaced SNR-gain table
// ---------------------------------------------------------------------------

/// SNR gain over the RIS-free radar for each swept RIS side.
///
/// Columns: side, fill distance, gain for the three cases in dB, and the
/// far-field status. The case b and case c cells are filled only where the
/// respective delay condition holds at the configured bandwidths; a
/// far-field violation is reported in its column rather than aborting the
/// row.
pub fn run_closely_table(cfg: &ScenarioConfig) -> Result<String> {
    let (target_ant, ris_ant) = antennas(cfg)?;
    let mut rows = vec![vec![
        "ris_side_m".to_string(),
        "fill_distance_m".to_string(),
        "case_a_gain_db".to_string(),
        "case_b_gain_db".to_string(),
        "case_c_gain_db".to_string(),
        "far_field".to_string(),
    ]];
    for &side in &cfg.closely.ris_side_sweep {
        let fill = ris_ant.fill_distance(side);
        let scene = closely_scene(cfg, side, fill, cfg.closely.bandwidth_case_b)?;
        let regime = classify_spacing(&scene, cfg.detection.closeness_factor)?;
        if regime != SpacingRegime::Closely {
            return Err(Error::Config(format!(
                "closely-spaced sweep entry {side} m does not satisfy the closeness condition"
            )));
        }
        let budget = build_link_budget(
            &scene,
            &target_ant,
            &ris_ant,
            cfg.radar.transmit_power,
            cfg.radar.noise_power,
        )?;
        let k = gains(&budget)?;

        let (eps_b, eps_c) = match cfg.detection.epsilon {
            EpsilonPolicy::Optimal => (
                optimal_split_closely(DetectionCase::B, k.transmit)?,
                optimal_split_closely(DetectionCase::C, k.transmit)?,
            ),
            EpsilonPolicy::Fixed(e) => (e, e),
        };
        // Gains relative to the baseline: the case SNRs at unit baseline.
        let single = |report: crate::snr::SnrReport| match report.values {
            SnrValues::Single(v) => v,
            SnrValues::Dual(..) => unreachable!("closely-spaced SNRs are combined"),
        };
        let gain_a = single(snr_closely(DetectionCase::A, 1.0, k, 1.0)?);
        let gain_b = single(snr_closely(DetectionCase::B, 1.0, k, eps_b)?);
        let gain_c = single(snr_closely(DetectionCase::C, 1.0, k, eps_c)?);

        let case_b_holds = matches!(
            classify_delay_case(&scene, BeamConfig::SPLIT_TRANSMIT),
            Ok(DetectionCase::B)
        );
        let mut scene_c = scene.clone();
        scene_c.scenario.bandwidth = cfg.closely.bandwidth_case_c;
        let case_c_holds = matches!(
            classify_delay_case(&scene_c, BeamConfig::SPLIT_TRANSMIT),
            Ok(DetectionCase::C)
        );
        let far_field = if validate_far_field(&scene).all_pass() { "ok" } else { "violation" };

        rows.push(vec![
            format!("{side}"),
            format!("{fill:.3}"),
            format_db(gain_a),
            if case_b_holds { format_db(gain_b) } else { String::new() },
            if case_c_holds { format_db(gain_c) } else { String::new() },
            far_field.to_string(),
        ]);
    }
    Ok(csv(&rows))
}

// ---------------------------------------------------------------------------
// Widely-spaced detection curves
// ---------------------------------------------------------------------------

/// Detection probability against baseline SNR for the widely-spaced
/// scenario, all three cases plus the RIS-free radar, using the
/// closed-form exponential-law expressions with the configured power-split
/// policy.
pub fn run_widely_curves(cfg: &ScenarioConfig) -> Result<String> {
    if cfg.target.fluctuation != FluctuationLaw::Exponential {
        return Err(Error::Unsupported(
            "the detection curves require the exponential fluctuation law (closed forms for \
             every case)"
                .into(),
        ));
    }
    let (target_ant, ris_ant) = antennas(cfg)?;
    let scene = widely_scene(cfg)?;
    let regime = classify_spacing(&scene, cfg.detection.closeness_factor)?;
    if regime != SpacingRegime::Widely {
        return Err(Error::Config(format!(
            "widely-spaced scenario subtends {:.4} rad at the target, below the {:.4} rad \
             spacing condition",
            scene.derived.bistatic_angle,
            cfg.wavelength() / cfg.target.size
        )));
    }
    let budget = build_link_budget(
        &scene,
        &target_ant,
        &ris_ant,
        cfg.radar.transmit_power,
        cfg.radar.noise_power,
    )?;
    let k = gains(&budget)?;
    let model = cfg.fluctuation_model();

    let gamma_single = threshold_from_pfa(DetectorKind::SingleEnergy, cfg.detection.pfa)?;
    let gamma_dual = threshold_from_pfa(DetectorKind::DualEnergy, cfg.detection.pfa)?;

    let mut rows = vec![vec![
        "snr0_db".to_string(),
        "pd_no_ris".to_string(),
        "pd_case_a".to_string(),
        "pd_case_b".to_string(),
        "pd_case_c".to_string(),
    ]];
    let (lo, hi, step) = cfg.widely.snr_grid_db;
    let points = ((hi - lo) / step).round() as usize;
    for i in 0..=points {
        let snr0_db = lo + i as f64 * step;
        let snr0 = 10f64.powf(snr0_db / 10.0);

        let pd_no_ris = pd_single(FluctuationLaw::Exponential, snr0, gamma_single)?;

        let SnrValues::Dual(a1, a2) = snr_widely(DetectionCase::A, snr0, k, 1.0, &model)?.values
        else {
            unreachable!()
        };
        let pd_a = pd_two_exponential(a1, a2, gamma_dual);

        let eps_b = match cfg.detection.epsilon {
            EpsilonPolicy::Optimal => optimal_split_widely(
                DetectionCase::B,
                k.transmit,
                &model,
                gamma_dual,
                snr0 / model.mean_rcs,
            )?,
            EpsilonPolicy::Fixed(e) => e,
        };
        let SnrValues::Dual(b1, b2) = snr_widely(DetectionCase::B, snr0, k, eps_b, &model)?.values
        else {
            unreachable!()
        };
        let pd_b = pd_two_exponential(b1, b2, gamma_dual);

        let eps_c = match cfg.detection.epsilon {
            EpsilonPolicy::Optimal => {
                optimal_split_widely(DetectionCase::C, k.transmit, &model, gamma_single, 1.0)?
            }
            EpsilonPolicy::Fixed(e) => e,
        };
        let SnrValues::Single(c) = snr_widely(DetectionCase::C, snr0, k, eps_c, &model)?.values
        else {
            unreachable!()
        };
        let pd_c = pd_single(FluctuationLaw::Exponential, c, gamma_single)?;

        rows.push(vec![
            format!("{snr0_db:.2}"),
            format!("{pd_no_ris:.6}"),
            format!("{pd_a:.6}"),
            format!("{pd_b:.6}"),
            format!("{pd_c:.6}"),
        ]);
    }
    Ok(csv(&rows))
}

// ---------------------------------------------------------------------------
// Validation battery
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    expected: f64,
    rate: crate::montecarlo::EmpiricalRate,
    /// Negative controls pass when the Monte Carlo *rejects* the value.
    expect_rejection: bool,
}

impl Check {
    fn passed(&self) -> bool {
        let z = self.rate.z_score(self.expected).abs();
        if self.expect_rejection {
            z > 3.0
        } else {
            z <= 3.0
        }
    }
}

/// A single-path signal model with the given amplitudes, unit noise and
/// unit mean RCS: SNRs are the squared amplitudes.
fn synthetic_model(
    case: DetectionCase,
    regime: SpacingRegime,
    epsilon: f64,
    direct: f64,
    indirect: f64,
    law: FluctuationLaw,
) -> SignalModel {
    SignalModel::new(
        case,
        regime,
        epsilon,
        1.0,
        direct,
        Complex64::new(indirect, 0.0),
        Complex64::new(indirect, 0.0),
        FluctuationModel::new(law, 1.0, 1.0).unwrap(),
    )
    .expect("synthetic model parameters are valid")
}

/// Runs every closed-form-vs-Monte-Carlo pair and returns the CSV report
/// plus a summary; a pair fails when the estimate sits more than three
/// binomial standard errors from the closed form.
///
/// The battery ends with a negative control: the two-observation
/// exponential detection probability with its coefficients transposed,
/// which the Monte Carlo must reject.
pub fn run_validation(cfg: &ScenarioConfig) -> Result<(String, ValidationSummary)> {
    let trials = cfg.montecarlo.trials;
    let seed = cfg.montecarlo.seed;
    let mut checks: Vec<Check> = Vec::new();
    let mut stream = 0u64;
    let mut next_config = |hypothesis: Hypothesis| {
        stream += 1;
        TrialConfig { seed: seed.wrapping_add(stream), trials, hypothesis }
    };

    // False-alarm rates for both statistic families.
    for &pfa in &[1e-2, 1e-3] {
        let gamma = threshold_from_pfa(DetectorKind::SingleEnergy, pfa)?;
        let model = synthetic_model(
            DetectionCase::C,
            SpacingRegime::Widely,
            1.0,
            1.0,
            0.0,
            FluctuationLaw::Exponential,
        );
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, gamma, None)?;
        let rate = estimate_rate(&model, &detector, &next_config(Hypothesis::TargetAbsent))?;
        checks.push(Check {
            name: if pfa == 1e-2 { "pfa_single_1e-2" } else { "pfa_single_1e-3" },
            expected: pfa,
            rate,
            expect_rejection: false,
        });

        let gamma = threshold_from_pfa(DetectorKind::DualEnergy, pfa)?;
        let model = synthetic_model(
            DetectionCase::A,
            SpacingRegime::Widely,
            1.0,
            1.0,
            1.0,
            FluctuationLaw::Exponential,
        );
        let detector = DetectorConfig::new(DetectorKind::DualEnergy, gamma, None)?;
        let rate = estimate_rate(&model, &detector, &next_config(Hypothesis::TargetAbsent))?;
        checks.push(Check {
            name: if pfa == 1e-2 { "pfa_dual_1e-2" } else { "pfa_dual_1e-3" },
            expected: pfa,
            rate,
            expect_rejection: false,
        });
    }

    // Single-observation detection for the three fluctuation laws (SNR 9,
    // false-alarm rate 1e-3 keeps every value mid-range).
    let gamma_single = threshold_from_pfa(DetectorKind::SingleEnergy, 1e-3)?;
    for (name, law) in [
        ("pd_single_nonfluctuating", FluctuationLaw::NonFluctuating),
        ("pd_single_exponential", FluctuationLaw::Exponential),
        ("pd_single_gamma", FluctuationLaw::Gamma),
    ] {
        let model = synthetic_model(DetectionCase::C, SpacingRegime::Widely, 1.0, 3.0, 0.0, law);
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, gamma_single, None)?;
        let rate = estimate_rate(&model, &detector, &next_config(Hypothesis::TargetPresent))?;
        checks.push(Check {
            name,
            expected: pd_single(law, 9.0, gamma_single)?,
            rate,
            expect_rejection: false,
        });
    }

    // Two-observation exponential detection at distinct, equal and extreme
    // SNR pairs (the arbitration set for the coefficient ordering).
    let gamma_dual = threshold_from_pfa(DetectorKind::DualEnergy, 1e-4)?;
    for (name, snr1, snr2) in [
        ("pd_dual_exponential_10_3", 10.0f64, 3.0f64),
        ("pd_dual_exponential_5_5", 5.0, 5.0),
        ("pd_dual_exponential_20_0.5", 20.0, 0.5),
    ] {
        let model = synthetic_model(
            DetectionCase::A,
            SpacingRegime::Widely,
            1.0,
            snr1.sqrt(),
            snr2.sqrt(),
            FluctuationLaw::Exponential,
        );
        let detector = DetectorConfig::new(DetectorKind::DualEnergy, gamma_dual, None)?;
        let rate = estimate_rate(&model, &detector, &next_config(Hypothesis::TargetPresent))?;
        checks.push(Check {
            name,
            expected: pd_two_exponential(snr1, snr2, gamma_dual),
            rate,
            expect_rejection: false,
        });
    }

    // Widely-spaced case c: two incoherent components superposed in one
    // observation; exponential law, split 0.4 -> SNR 0.4*10 + 0.6*5 = 7.
    {
        let model = synthetic_model(
            DetectionCase::C,
            SpacingRegime::Widely,
            0.4,
            10f64.sqrt(),
            5f64.sqrt(),
            FluctuationLaw::Exponential,
        );
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, gamma_single, None)?;
        let rate = estimate_rate(&model, &detector, &next_config(Hypothesis::TargetPresent))?;
        checks.push(Check {
            name: "pd_widely_case_c_exponential",
            expected: pd_single(FluctuationLaw::Exponential, 7.0, gamma_single)?,
            rate,
            expect_rejection: false,
        });
    }

    // End-to-end closely-spaced chain: geometry, link budget, phase
    // alignment, matched combiner; the closed form takes the combined SNR.
    {
        let (target_ant, ris_ant) = antennas(cfg)?;
        let side = cfg.closely.ris_side_sweep[0];
        let fill = ris_ant.fill_distance(side);
        let scene = closely_scene(cfg, side, fill, cfg.closely.bandwidth_case_b)?;
        let budget = build_link_budget(
            &scene,
            &target_ant,
            &ris_ant,
            cfg.radar.transmit_power,
            cfg.radar.noise_power,
        )?;
        let phases = phase_decomposition(&scene);
        let program = align_phases(&phases, SpacingRegime::Closely)?;
        let alpha = budget.direct_amplitude;
        let indirect = budget.total_indirect_receive();
        // Noise chosen to put the combined SNR at 8 so the detection
        // probability is informative at any configured link budget.
        let mean_rcs = 1.0;
        let noise = mean_rcs * (alpha * alpha + indirect * indirect) / 8.0;
        let mut resized = budget.clone();
        resized.noise_power = noise;
        let model = SignalModel::from_links(
            &resized,
            &phases,
            &program,
            DetectionCase::A,
            1.0,
            FluctuationModel::new(FluctuationLaw::Exponential, mean_rcs, mean_rcs)?,
        )?;
        let detector = DetectorConfig::for_scenario(
            DetectionCase::A,
            SpacingRegime::Closely,
            alpha,
            indirect,
            budget.total_indirect_transmit(),
            1.0,
            gamma_single,
        )?;
        let rate = estimate_rate(&model, &detector, &next_config(Hypothesis::TargetPresent))?;
        let snr_combined = baseline_snr(alpha, mean_rcs, noise) * (1.0 + gains(&budget)?.receive);
        checks.push(Check {
            name: "pd_closely_case_a_full_chain",
            expected: pd_single(FluctuationLaw::Exponential, snr_combined, gamma_single)?,
            rate,
            expect_rejection: false,
        });
    }

    // Negative control: the transposed-coefficient variant of the
    // two-observation exponential form must be rejected.
    {
        let (snr1, snr2) = (10.0f64, 3.0f64);
        let transposed = ((1.0 + snr2) * (-gamma_dual / (1.0 + snr1)).exp()
            - (1.0 + snr1) * (-gamma_dual / (1.0 + snr2)).exp())
            / (snr1 - snr2);
        let model = synthetic_model(
            DetectionCase::A,
            SpacingRegime::Widely,
            1.0,
            snr1.sqrt(),
            snr2.sqrt(),
            FluctuationLaw::Exponential,
        );
        let detector = DetectorConfig::new(DetectorKind::DualEnergy, gamma_dual, None)?;
        let rate = estimate_rate(&model, &detector, &next_config(Hypothesis::TargetPresent))?;
        checks.push(Check {
            name: "reject_transposed_dual_exponential",
            expected: transposed,
            rate,
            expect_rejection: true,
        });
    }

    let mut rows = vec![vec![
        "check".to_string(),
        "trials".to_string(),
        "expected".to_string(),
        "estimate".to_string(),
        "stderr".to_string(),
        "z".to_string(),
        "pass".to_string(),
    ]];
    let mut failures = Vec::new();
    for check in &checks {
        let z = check.rate.z_score(check.expected);
        let pass = check.passed();
        if !pass {
            failures.push(format!("{} (z = {z:.2})", check.name));
        }
        rows.push(vec![
            check.name.to_string(),
            format!("{}", check.rate.trials),
            format!("{:.6}", check.expected),
            format!("{:.6}", check.rate.estimate),
            format!("{:.3e}", check.rate.stderr),
            format!("{z:.2}"),
            if pass { "yes" } else { "no" }.to_string(),
        ]);
    }
    let summary = ValidationSummary { checks: checks.len(), failures };
    Ok((csv(&rows), summary))
}

// ---------------------------------------------------------------------------
// Scenario report
// ---------------------------------------------------------------------------

/// Human-readable scenario summary: far-field checks, spacing regimes,
/// delay-case availability and indirect-echo gains for both experiment
/// geometries.
pub fn run_report(cfg: &ScenarioConfig) -> Result<String> {
    let (target_ant, ris_ant) = antennas(cfg)?;
    let mut out = String::new();
    out.push_str(&format!("wavelength_m: {:.6}\n", cfg.wavelength()));
    out.push_str(&format!(
        "target_antenna: {}x{} elements, peak gain {:.1} linear ({} dB), beamwidth {:.4} rad\n",
        target_ant.elements_per_side,
        target_ant.elements_per_side,
        target_ant.peak_gain,
        format_db(target_ant.peak_gain),
        target_ant.half_power_beamwidth(),
    ));

    out.push_str("closely-spaced sweep:\n");
    for &side in &cfg.closely.ris_side_sweep {
        let fill = ris_ant.fill_distance(side);
        let scene = closely_scene(cfg, side, fill, cfg.closely.bandwidth_case_b)?;
        let budget = build_link_budget(
            &scene,
            &target_ant,
            &ris_ant,
            cfg.radar.transmit_power,
            cfg.radar.noise_power,
        )?;
        let k = gains(&budget)?;
        let regime = describe_regime(classify_spacing(&scene, cfg.detection.closeness_factor)?);
        let far = if validate_far_field(&scene).all_pass() { "ok" } else { "violation" };
        let case_b = describe_case(classify_delay_case(&scene, BeamConfig::SPLIT_TRANSMIT));
        let mut scene_c = scene.clone();
        scene_c.scenario.bandwidth = cfg.closely.bandwidth_case_c;
        let case_c = describe_case(classify_delay_case(&scene_c, BeamConfig::SPLIT_TRANSMIT));
        out.push_str(&format!(
            "  side {side} m: fill {fill:.2} m, elements {}, regime {regime}, far_field {far}, \
             two-beam case at {:.0e} Hz: {case_b}, at {:.0e} Hz: {case_c}, case a gain {} dB\n",
            scene.scenario.element_count(),
            cfg.closely.bandwidth_case_b,
            cfg.closely.bandwidth_case_c,
            format_db(1.0 + k.receive),
        ));
    }

    out.push_str("widely-spaced scenario:\n");
    let scene = widely_scene(cfg)?;
    let budget = build_link_budget(
        &scene,
        &target_ant,
        &ris_ant,
        cfg.radar.transmit_power,
        cfg.radar.noise_power,
    )?;
    let k = gains(&budget)?;
    let regime = describe_regime(classify_spacing(&scene, cfg.detection.closeness_factor)?);
    let far = if validate_far_field(&scene).all_pass() { "ok" } else { "violation" };
    let case = describe_case(classify_delay_case(&scene, BeamConfig::SPLIT_TRANSMIT));
    let snr0 =
        baseline_snr(budget.direct_amplitude, cfg.target.mean_rcs, cfg.radar.noise_power);
    out.push_str(&format!(
        "  side {} m: elements {}, subtended angle {:.4} rad (spacing threshold {:.4}), \
         regime {regime}, far_field {far}, two-beam case: {case}, gains K_receive {:.3} \
         K_transmit {:.3}, baseline snr {} dB\n",
        cfg.widely.ris_side,
        scene.scenario.element_count(),
        scene.derived.bistatic_angle,
        cfg.wavelength() / cfg.target.size,
        k.receive,
        k.transmit,
        format_db(snr0),
    ));
    Ok(out)
}

fn describe_regime(regime: SpacingRegime) -> &'static str {
    match regime {
        SpacingRegime::Closely => "closely",
        SpacingRegime::Widely => "widely",
        SpacingRegime::Indeterminate => "indeterminate",
    }
}

fn describe_case(case: Result<DetectionCase>) -> String {
    match case {
        Ok(c) => format!("case {c}"),
        Err(_) => "unsupported".to_string(),
    }
}

/// Exact indirect-echo gains for one closely-spaced sweep entry; shared by
/// the table runner and the acceptance suite.
pub fn closely_gains(
    cfg: &ScenarioConfig,
    side: f64,
) -> Result<(f64, GainFactors, LinkBudget, Scene)> {
    let (target_ant, ris_ant) = antennas(cfg)?;
    let fill = ris_ant.fill_distance(side);
    let scene = closely_scene(cfg, side, fill, cfg.closely.bandwidth_case_b)?;
    let budget = build_link_budget(
        &scene,
        &target_ant,
        &ris_ant,
        cfg.radar.transmit_power,
        cfg.radar.noise_power,
    )?;
    let k = gains(&budget)?;
    Ok((fill, k, budget, scene))
}
