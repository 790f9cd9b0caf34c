//! Link budget and channel phases.
//!
//! Amplitudes come from the radar equation: the direct echo sees the
//! two-way radar-target path, the indirect echo the radar-RIS-target
//! three-hop path with the bistatic cross section of each RIS element. The
//! per-element RCS is the product of an effective aperture and a gain with
//! a cosine scan loss in azimuth and elevation on both the target and radar
//! sides; at broadside the whole surface acts as a flat plate of the same
//! size.
//!
//! Phases use the one-way propagation convention `-2*pi*d / wavelength`.
//! Only phase *differences* are observable after alignment, so each regime
//! splits the target-side phases into a geometry-determined part (known to
//! the system) and a single latent offset that the Monte Carlo module draws
//! and detectors never read:
//!
//! * closely spaced - radar and RIS are hit by the same plane wave from the
//!   target, so the offset is the direct-path phase itself;
//! * widely spaced - only the RIS sees one plane wave, so the offset is the
//!   phase at the first element and the known parts form a steering vector.

use crate::antenna::SquareArrayAntenna;
use crate::geometry::Scene;
use crate::{Error, Result};
use std::f64::consts::{PI, TAU};

/// Amplitudes and gains of the direct and indirect echoes.
#[derive(Debug, Clone)]
pub struct LinkBudget {
    /// Direct-echo amplitude.
    pub direct_amplitude: f64,
    /// Per-element indirect amplitudes on the target-RIS-radar path.
    pub indirect_receive_amplitudes: Vec<f64>,
    /// Per-element indirect amplitudes on the radar-RIS-target path.
    pub indirect_transmit_amplitudes: Vec<f64>,
    /// Per-element bistatic RCS, target side, m^2.
    pub element_rcs_receive: Vec<f64>,
    /// Per-element bistatic RCS, radar side, m^2.
    pub element_rcs_transmit: Vec<f64>,
    /// Gain of the radar beam toward the target, linear.
    pub target_beam_gain: f64,
    /// Gain of the radar beam toward each RIS element, linear.
    pub ris_beam_gains: Vec<f64>,
    /// Radar transmit power, W.
    pub transmit_power: f64,
    /// Noise power per observation, W.
    pub noise_power: f64,
}

impl LinkBudget {
    /// Sum of the per-element receive-path amplitudes.
    pub fn total_indirect_receive(&self) -> f64 {
        self.indirect_receive_amplitudes.iter().sum()
    }

    /// Sum of the per-element transmit-path amplitudes.
    pub fn total_indirect_transmit(&self) -> f64 {
        self.indirect_transmit_amplitudes.iter().sum()
    }
}

/// Geometry-determined channel phases, radians in `[0, 2*pi)`.
///
/// `known_target_closely[l] + latent` and `known_target_widely[l] + latent_s`
/// reconstruct the true target-side phases in the respective regimes; the
/// latent offsets live with the Monte Carlo draws, not here.
#[derive(Debug, Clone)]
pub struct ChannelPhases {
    /// RIS-radar phases, one way.
    pub ris_radar: Vec<f64>,
    /// Known part of the target-side phases in the closely-spaced regime
    /// (referenced to the radar-target path).
    pub known_target_closely: Vec<f64>,
    /// Known part of the target-side phases in the widely-spaced regime
    /// (steering-vector phases referenced to element 1, which is zero).
    pub known_target_widely: Vec<f64>,
}

/// Bistatic RCS of RIS element `index` for the target-side and radar-side
/// paths; equal under this model. Grazing or back incidence gives zero.
pub fn element_rcs(scene: &Scene, index: usize) -> (f64, f64) {
    let (t_az, t_el) = scene.derived.target_incidence;
    let (r_az, r_el) = scene.derived.radar_incidence[index];
    let lim = PI / 2.0;
    if t_az.abs() >= lim || t_el.abs() >= lim || r_az.abs() >= lim || r_el.abs() >= lim {
        return (0.0, 0.0);
    }
    let s = PI * (scene.scenario.wavelength / 2.0).powi(2)
        * t_az.cos()
        * t_el.cos()
        * r_az.cos()
        * r_el.cos();
    (s, s)
}

/// Direct-echo amplitude from the radar equation.
pub fn direct_amplitude(
    transmit_power: f64,
    target_beam_gain: f64,
    wavelength: f64,
    radar_target_distance: f64,
) -> Result<f64> {
    if !(radar_target_distance > 0.0) {
        return Err(Error::Domain("radar-target distance must be positive".into()));
    }
    Ok((transmit_power * target_beam_gain.powi(2) * wavelength.powi(2)
        / ((4.0 * PI).powi(3) * radar_target_distance.powi(4)))
    .sqrt())
}

/// Indirect-echo amplitude of one RIS element for a three-hop path.
#[allow(clippy::too_many_arguments)]
pub fn indirect_amplitude(
    transmit_power: f64,
    target_beam_gain: f64,
    element_beam_gain: f64,
    wavelength: f64,
    radar_target_distance: f64,
    ris_target_distance: f64,
    radar_element_distance: f64,
    element_rcs: f64,
) -> Result<f64> {
    if !(radar_target_distance > 0.0 && ris_target_distance > 0.0 && radar_element_distance > 0.0)
    {
        return Err(Error::Domain("all path distances must be positive".into()));
    }
    Ok((transmit_power * target_beam_gain * element_beam_gain * wavelength.powi(2) * element_rcs
        / ((4.0 * PI).powi(4)
            * radar_target_distance.powi(2)
            * ris_target_distance.powi(2)
            * radar_element_distance.powi(2)))
    .sqrt())
}

/// Assembles the full link budget for a scene.
///
/// Both radar beams point exactly at their objects (no pointing loss): the
/// target beam contributes its peak gain, the RIS beam is evaluated at each
/// element's direction in the antenna frame anchored at the RIS centre.
pub fn build_link_budget(
    scene: &Scene,
    target_antenna: &SquareArrayAntenna,
    ris_antenna: &SquareArrayAntenna,
    transmit_power: f64,
    noise_power: f64,
) -> Result<LinkBudget> {
    if !(transmit_power > 0.0) || !(noise_power > 0.0) {
        return Err(Error::Domain("transmit and noise power must be positive".into()));
    }
    let s = &scene.scenario;
    let d = &scene.derived;
    let count = s.element_count();

    let target_beam_gain = target_antenna.peak_gain;
    let alpha = direct_amplitude(
        transmit_power,
        target_beam_gain,
        s.wavelength,
        d.radar_target_distance,
    )?;

    // Antenna frame for the RIS-pointing beam: boresight at the RIS centre,
    // elevation axis from the world vertical, azimuth axis completing the
    // right-handed frame.
    let boresight = (s.ris_center - s.radar_position)
        .normalized()
        .ok_or_else(|| Error::Geometry("radar and RIS coincide".into()))?;
    let vertical = crate::geometry::Vec3::new(0.0, 0.0, 1.0);
    let elevation_axis = (vertical - boresight * vertical.dot(boresight))
        .normalized()
        .unwrap_or_else(|| {
            let fallback = crate::geometry::Vec3::new(1.0, 0.0, 0.0);
            (fallback - boresight * fallback.dot(boresight)).normalized().unwrap()
        });
    let azimuth_axis = elevation_axis.cross(boresight);

    let mut ris_beam_gains = Vec::with_capacity(count);
    let mut rcs_receive = Vec::with_capacity(count);
    let mut rcs_transmit = Vec::with_capacity(count);
    let mut amp_receive = Vec::with_capacity(count);
    let mut amp_transmit = Vec::with_capacity(count);
    for l in 0..count {
        let toward = s.element_positions[l] - s.radar_position;
        let along = toward.dot(boresight);
        if along <= 0.0 {
            return Err(Error::Geometry("RIS element behind the radar antenna".into()));
        }
        let az = toward.dot(azimuth_axis).atan2(along);
        let el = toward.dot(elevation_axis).atan2(along);
        let gain = ris_antenna.array_gain(az, el);
        let (s_receive, s_transmit) = element_rcs(scene, l);
        let a_receive = indirect_amplitude(
            transmit_power,
            target_beam_gain,
            gain,
            s.wavelength,
            d.radar_target_distance,
            d.ris_target_distance,
            d.radar_element_distances[l],
            s_receive,
        )?;
        let a_transmit = indirect_amplitude(
            transmit_power,
            target_beam_gain,
            gain,
            s.wavelength,
            d.radar_target_distance,
            d.ris_target_distance,
            d.radar_element_distances[l],
            s_transmit,
        )?;
        ris_beam_gains.push(gain);
        rcs_receive.push(s_receive);
        rcs_transmit.push(s_transmit);
        amp_receive.push(a_receive);
        amp_transmit.push(a_transmit);
    }

    Ok(LinkBudget {
        direct_amplitude: alpha,
        indirect_receive_amplitudes: amp_receive,
        indirect_transmit_amplitudes: amp_transmit,
        element_rcs_receive: rcs_receive,
        element_rcs_transmit: rcs_transmit,
        target_beam_gain,
        ris_beam_gains,
        transmit_power,
        noise_power,
    })
}

/// Computes the RIS-radar phases and the known parts of the target-side
/// phases for both regimes.
pub fn phase_decomposition(scene: &Scene) -> ChannelPhases {
    let d = &scene.derived;
    let lambda = scene.scenario.wavelength;
    let wrap = |x: f64| x.rem_euclid(TAU);
    let ris_radar = d
        .radar_element_distances
        .iter()
        .map(|&dl| wrap(-TAU * dl / lambda))
        .collect();
    let known_target_closely = d
        .target_element_distances
        .iter()
        .map(|&dl| wrap(-TAU * (dl - d.radar_target_distance) / lambda))
        .collect();
    let first = d.target_element_distances[0];
    let known_target_widely = d
        .target_element_distances
        .iter()
        .map(|&dl| wrap(-TAU * (dl - first) / lambda))
        .collect();
    ChannelPhases { ris_radar, known_target_closely, known_target_widely }
}
