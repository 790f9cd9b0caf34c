//! Seeded Monte Carlo harness.
//!
//! Draws target responses and noise exactly per the received-signal models
//! and estimates empirical false-alarm/detection rates with binomial
//! confidence intervals. This is the oracle every closed form in the
//! library is checked against.
//!
//! Reproducibility: trials are split into fixed-size batches; batch `i`
//! draws from a counter-based generator seeded by `(seed, stream = i)`.
//! Counts merge by addition, so the estimate is bit-identical however the
//! batches are scheduled across threads.

use crate::detection::{glrt_statistic, DetectorConfig, Observation};
use crate::geometry::{DetectionCase, SpacingRegime};
use crate::snr::{FluctuationLaw, FluctuationModel};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Trials per RNG stream; fixed so results do not depend on scheduling.
const BATCH: u64 = 1 << 13;

/// Which hypothesis the trials simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    TargetPresent,
    TargetAbsent,
}

/// Seeded trial specification.
#[derive(Debug, Clone, Copy)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: u64,
    pub hypothesis: Hypothesis,
}

/// One draw of the latent target response(s): `sqrt(rcs) * exp(i * phase)`
/// for the direct path and for the RIS path.
///
/// In the closely-spaced regime the two are the same complex number (same
/// scattering lobe); in the widely-spaced regime they are independent.
#[derive(Debug, Clone, Copy)]
pub struct TargetDraw {
    pub direct: Complex64,
    pub indirect: Complex64,
}

impl TargetDraw {
    /// Samples a target response per the fluctuation law and regime.
    pub fn sample<R: Rng>(model: &FluctuationModel, regime: SpacingRegime, rng: &mut R) -> Self {
        let direct = Self::component(model.law, model.mean_rcs, rng);
        let indirect = match regime {
            SpacingRegime::Closely => direct,
            _ => Self::component(model.law, model.mean_rcs_ris, rng),
        };
        Self { direct, indirect }
    }

    fn component<R: Rng>(law: FluctuationLaw, mean: f64, rng: &mut R) -> Complex64 {
        let rcs = match law {
            FluctuationLaw::NonFluctuating => mean,
            FluctuationLaw::Exponential => Exp::new(1.0 / mean).unwrap().sample(rng),
            FluctuationLaw::Gamma => {
                // Shape 2: two exponentials of mean m/2 (mean m, variance m^2/2).
                let e = Exp::new(2.0 / mean).unwrap();
                e.sample(rng) + e.sample(rng)
            }
        };
        let phase = rng.gen::<f64>() * TAU;
        Complex64::from_polar(rcs.sqrt(), phase)
    }
}

/// Deterministic part of the received-signal model: everything except the
/// target draw and the noise.
///
/// The indirect-path channels enter through their coherent sums over the
/// surface (amplitudes times the known phases plus the phase program),
/// which is exact by linearity and keeps the per-trial cost independent of
/// the element count.
#[derive(Debug, Clone)]
pub struct SignalModel {
    pub case: DetectionCase,
    pub regime: SpacingRegime,
    /// Transmit power fraction on the target beam (cases b and c).
    pub epsilon: f64,
    pub noise_power: f64,
    /// Direct-path amplitude.
    pub direct_amplitude: f64,
    /// Coherent sum of the target-RIS-radar path (case a reception).
    pub indirect_receive: Complex64,
    /// Coherent sum of the radar-RIS-target path (cases b and c).
    pub indirect_transmit: Complex64,
    pub fluctuation: FluctuationModel,
}

impl SignalModel {
    pub fn new(
        case: DetectionCase,
        regime: SpacingRegime,
        epsilon: f64,
        noise_power: f64,
        direct_amplitude: f64,
        indirect_receive: Complex64,
        indirect_transmit: Complex64,
        fluctuation: FluctuationModel,
    ) -> Result<Self> {
        if regime == SpacingRegime::Indeterminate {
            return Err(Error::Unsupported(
                "cannot simulate an indeterminate spacing regime".into(),
            ));
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::Domain(format!("power split must lie in [0, 1], got {epsilon}")));
        }
        if !(noise_power > 0.0) {
            return Err(Error::Domain("noise power must be positive".into()));
        }
        Ok(Self {
            case,
            regime,
            epsilon,
            noise_power,
            direct_amplitude,
            indirect_receive,
            indirect_transmit,
            fluctuation,
        })
    }

    /// Assembles the model from a built scenario: link budget, phase
    /// decomposition and the applied phase program.
    pub fn from_links(
        budget: &crate::channel::LinkBudget,
        phases: &crate::channel::ChannelPhases,
        program: &crate::ris::RisPhaseProgram,
        case: DetectionCase,
        epsilon: f64,
        fluctuation: FluctuationModel,
    ) -> Result<Self> {
        let known = match program.regime {
            SpacingRegime::Closely => &phases.known_target_closely,
            SpacingRegime::Widely => &phases.known_target_widely,
            SpacingRegime::Indeterminate => {
                return Err(Error::Unsupported(
                    "cannot simulate an indeterminate spacing regime".into(),
                ))
            }
        };
        let indirect_receive = crate::ris::coherent_sum(
            &budget.indirect_receive_amplitudes,
            known,
            &program.phases,
            &phases.ris_radar,
        )?;
        let indirect_transmit = crate::ris::coherent_sum(
            &budget.indirect_transmit_amplitudes,
            known,
            &program.phases,
            &phases.ris_radar,
        )?;
        Self::new(
            case,
            program.regime,
            epsilon,
            budget.noise_power,
            budget.direct_amplitude,
            indirect_receive,
            indirect_transmit,
            fluctuation,
        )
    }
}

/// Draws one observation from the received-signal model: the target terms
/// (zeroed under `TargetAbsent`) plus circular complex Gaussian noise of
/// variance `noise_power` per observation.
pub fn simulate_observation<R: Rng>(
    model: &SignalModel,
    draw: Option<&TargetDraw>,
    rng: &mut R,
) -> Observation {
    let zero = Complex64::new(0.0, 0.0);
    let (direct, indirect) = match draw {
        Some(d) => (d.direct, d.indirect),
        None => (zero, zero),
    };
    let noise = Normal::new(0.0, (model.noise_power / 2.0).sqrt()).unwrap();
    let mut sample_noise =
        |rng: &mut R| Complex64::new(noise.sample(rng), noise.sample(rng));

    let (x1, x2) = match model.case {
        DetectionCase::A => {
            let x1 = direct * model.direct_amplitude + sample_noise(rng);
            let x2 = indirect * model.indirect_receive + sample_noise(rng);
            (x1, Some(x2))
        }
        DetectionCase::B => {
            let x1 = direct * (model.direct_amplitude * model.epsilon.sqrt()) + sample_noise(rng);
            let x2 = indirect * model.indirect_transmit * (1.0 - model.epsilon).sqrt()
                + sample_noise(rng);
            (x1, Some(x2))
        }
        DetectionCase::C => {
            let x1 = direct * (model.direct_amplitude * model.epsilon.sqrt())
                + indirect * model.indirect_transmit * (1.0 - model.epsilon).sqrt()
                + sample_noise(rng);
            (x1, None)
        }
    };
    Observation { x1, x2, noise_power: model.noise_power }
}

/// An empirical exceedance rate with its binomial standard error.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalRate {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl EmpiricalRate {
    fn from_counts(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        Self { estimate: p, stderr: (p * (1.0 - p) / trials as f64).sqrt(), trials }
    }

    /// Deviation of `reference` from the estimate in standard errors.
    pub fn z_score(&self, reference: f64) -> f64 {
        if self.stderr == 0.0 {
            if (self.estimate - reference).abs() == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.estimate - reference) / self.stderr
        }
    }
}

/// Runs `config.trials` independent trials of the detector on the signal
/// model and returns the empirical exceedance rate of the threshold.
pub fn estimate_rate(
    model: &SignalModel,
    detector: &DetectorConfig,
    config: &TrialConfig,
) -> Result<EmpiricalRate> {
    if config.trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    if detector.kind.observations() == 2 && model.case == DetectionCase::C {
        return Err(Error::Domain(
            "case c produces a single observation; use a single-observation detector".into(),
        ));
    }
    let batches = config.trials.div_ceil(BATCH);
    let hits: u64 = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(batch);
            let in_batch = BATCH.min(config.trials - batch * BATCH);
            let mut hits = 0u64;
            for _ in 0..in_batch {
                let draw = match config.hypothesis {
                    Hypothesis::TargetPresent => {
                        Some(TargetDraw::sample(&model.fluctuation, model.regime, &mut rng))
                    }
                    Hypothesis::TargetAbsent => None,
                };
                let obs = simulate_observation(model, draw.as_ref(), &mut rng);
                let statistic = glrt_statistic(&obs, detector).expect("detector matches model");
                if statistic > detector.gamma {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(EmpiricalRate::from_counts(hits, config.trials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{threshold_from_pfa, DetectorKind};
    use crate::snr::FluctuationLaw;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    fn exp_model() -> FluctuationModel {
        FluctuationModel::new(FluctuationLaw::Exponential, 1.0, 1.0).unwrap()
    }

    /// Case c with all power on the direct beam: a bare single-observation
    /// channel with SNR `alpha^2 / noise`.
    fn single_channel(alpha: f64, noise: f64, law: FluctuationLaw) -> SignalModel {
        SignalModel::new(
            DetectionCase::C,
            SpacingRegime::Widely,
            1.0,
            noise,
            alpha,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            FluctuationModel::new(law, 1.0, 1.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn same_seed_reproduces_bit_identical_estimates() {
        let model = single_channel(2.0, 0.5, FluctuationLaw::Exponential);
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, 2.0, None).unwrap();
        let config = TrialConfig { seed: 99, trials: 30_000, hypothesis: Hypothesis::TargetPresent };
        let a = estimate_rate(&model, &detector, &config).unwrap();
        let b = estimate_rate(&model, &detector, &config).unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.stderr, b.stderr);
        let shifted = TrialConfig { seed: 100, ..config };
        let c = estimate_rate(&model, &detector, &shifted).unwrap();
        assert_ne!(a.estimate, c.estimate);
    }

    #[test]
    fn noiseless_case_a_reproduces_the_aligned_signal() {
        // Nearly noiseless: the observation equals the target response
        // times the (real) amplitudes.
        let model = SignalModel::new(
            DetectionCase::A,
            SpacingRegime::Closely,
            1.0,
            1e-30,
            0.7,
            Complex64::new(1.9, 0.0),
            Complex64::new(1.9, 0.0),
            exp_model(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let draw = TargetDraw::sample(&model.fluctuation, model.regime, &mut rng);
        let obs = simulate_observation(&model, Some(&draw), &mut rng);
        assert!((obs.x1 - draw.direct * 0.7).norm() < 1e-12);
        assert!((obs.x2.unwrap() - draw.direct * 1.9).norm() < 1e-12);
        // Closely-spaced draws share the response exactly.
        assert_eq!(draw.direct, draw.indirect);
    }

    #[test]
    fn case_c_full_direct_split_has_no_indirect_term() {
        let model = SignalModel::new(
            DetectionCase::C,
            SpacingRegime::Widely,
            1.0,
            1e-30,
            0.5,
            Complex64::new(3.0, 1.0),
            Complex64::new(3.0, 1.0),
            exp_model(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let draw = TargetDraw::sample(&model.fluctuation, model.regime, &mut rng);
        let obs = simulate_observation(&model, Some(&draw), &mut rng);
        assert!((obs.x1 - draw.direct * 0.5).norm() < 1e-12);
        assert!(obs.x2.is_none());
    }

    #[test]
    fn absent_target_yields_unit_mean_normalized_energy() {
        let model = single_channel(1.0, 0.37, FluctuationLaw::Exponential);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let n = 200_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let obs = simulate_observation(&model, None, &mut rng);
            sum += obs.x1.norm_sqr() / obs.noise_power;
        }
        let mean = sum / n as f64;
        // |w|^2 / P_w is unit-mean exponential: stderr = 1/sqrt(n).
        assert!(
            (mean - 1.0).abs() < 3.0 / (n as f64).sqrt(),
            "normalized noise energy mean {mean}"
        );
    }

    #[test]
    fn zero_threshold_alarms_always() {
        let model = single_channel(1.0, 1.0, FluctuationLaw::Exponential);
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, 0.0, None).unwrap();
        let config =
            TrialConfig { seed: 1, trials: 10_000, hypothesis: Hypothesis::TargetAbsent };
        let rate = estimate_rate(&model, &detector, &config).unwrap();
        assert_eq!(rate.estimate, 1.0);
    }

    #[test]
    fn empirical_false_alarm_matches_closed_form() {
        let model = single_channel(1.0, 1.0, FluctuationLaw::Exponential);
        let pfa = 0.01;
        let gamma = threshold_from_pfa(DetectorKind::SingleEnergy, pfa).unwrap();
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, gamma, None).unwrap();
        let config =
            TrialConfig { seed: 7, trials: 1_000_000, hypothesis: Hypothesis::TargetAbsent };
        let rate = estimate_rate(&model, &detector, &config).unwrap();
        assert!(
            rate.z_score(pfa).abs() < 3.0,
            "false-alarm estimate {} vs {pfa} ({} se)",
            rate.estimate,
            rate.z_score(pfa)
        );
    }

    #[test]
    fn empirical_detection_matches_exponential_closed_form() {
        // SNR = alpha^2 * mean / noise = 9.
        let model = single_channel(3.0, 1.0, FluctuationLaw::Exponential);
        let gamma = threshold_from_pfa(DetectorKind::SingleEnergy, 1e-3).unwrap();
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, gamma, None).unwrap();
        let config =
            TrialConfig { seed: 21, trials: 400_000, hypothesis: Hypothesis::TargetPresent };
        let rate = estimate_rate(&model, &detector, &config).unwrap();
        let expected =
            crate::detection::pd_single(FluctuationLaw::Exponential, 9.0, gamma).unwrap();
        assert!(
            rate.z_score(expected).abs() < 3.0,
            "detection estimate {} vs {expected}",
            rate.estimate
        );
    }

    #[test]
    fn trials_zero_rejected_and_case_c_needs_single_detector() {
        let model = single_channel(1.0, 1.0, FluctuationLaw::Exponential);
        let detector = DetectorConfig::new(DetectorKind::SingleEnergy, 1.0, None).unwrap();
        let config = TrialConfig { seed: 1, trials: 0, hypothesis: Hypothesis::TargetAbsent };
        assert!(estimate_rate(&model, &detector, &config).is_err());
        let dual = DetectorConfig::new(DetectorKind::DualEnergy, 1.0, None).unwrap();
        let config = TrialConfig { seed: 1, trials: 10, hypothesis: Hypothesis::TargetAbsent };
        assert!(estimate_rate(&model, &dual, &config).is_err());
    }

    #[test]
    fn widely_draws_are_independent_across_paths() {
        let model = FluctuationModel::new(FluctuationLaw::Exponential, 1.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 100_000;
        let mut cross = Complex64::new(0.0, 0.0);
        for _ in 0..n {
            let draw = TargetDraw::sample(&model, SpacingRegime::Widely, &mut rng);
            cross += draw.direct * draw.indirect.conj();
        }
        // E[direct * conj(indirect)] = 0 for independent uniform phases.
        assert!(cross.norm() / n as f64 * (n as f64).sqrt() < 4.0);
    }

    #[test]
    fn gamma_law_moments() {
        let model = FluctuationModel::new(FluctuationLaw::Gamma, 2.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 400_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let draw = TargetDraw::sample(&model, SpacingRegime::Closely, &mut rng);
            let rcs = draw.direct.norm_sqr();
            sum += rcs;
            sum_sq += rcs * rcs;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        // Shape-2 law with mean 2: variance 2^2 / 2 = 2.
        assert!(rel_close(mean, 2.0, 0.02), "mean {mean}");
        assert!(rel_close(var, 2.0, 0.05), "variance {var}");
    }
}
