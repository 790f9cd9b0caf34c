//! Scene construction and classification.
//!
//! Builds the 3-D scene (radar, target, planar RIS element grid), derives
//! every distance and incidence angle the link budget needs, and classifies
//! the scenario: far-field validity, closely- vs widely-spaced radar/RIS
//! (as seen from the target), and the delay-resolvability detection case.

use crate::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

// ---------------------------------------------------------------------------
// Vec3
// ---------------------------------------------------------------------------

/// A point or direction in 3-D space, metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction; `None` for (near-)zero input.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n < 1e-300 {
            None
        } else {
            Some(self * (1.0 / n))
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

// ---------------------------------------------------------------------------
// Scene types
// ---------------------------------------------------------------------------

/// Inputs for [`build_geometry`].
#[derive(Debug, Clone)]
pub struct GeometryConfig {
    pub radar_position: Vec3,
    pub target_position: Vec3,
    pub ris_center: Vec3,
    /// Normal of the RIS plane; must point into the half-space containing
    /// radar and target (the illuminated side).
    pub ris_normal: Vec3,
    /// Optional in-plane axes; derived from the normal when absent.
    pub ris_in_plane_axes: Option<(Vec3, Vec3)>,
    /// Side length of the square RIS, m.
    pub ris_side: f64,
    /// Carrier wavelength, m.
    pub wavelength: f64,
    /// Signal bandwidth, Hz.
    pub bandwidth: f64,
    /// Size of the radar antenna pointing at the target, m.
    pub radar_aperture_target: f64,
    /// Size of the radar antenna pointing at the RIS, m.
    pub radar_aperture_ris: f64,
    /// Size of the target, m.
    pub target_size: f64,
}

/// The static scene: positions, apertures and the RIS element grid.
#[derive(Debug, Clone)]
pub struct ScenarioGeometry {
    pub radar_position: Vec3,
    pub target_position: Vec3,
    pub ris_center: Vec3,
    pub ris_normal: Vec3,
    pub ris_in_plane_axes: (Vec3, Vec3),
    pub ris_side: f64,
    /// Inter-element spacing, half a wavelength.
    pub ris_element_spacing: f64,
    /// Element positions on the RIS plane, row-major, length `n * n`.
    pub element_positions: Vec<Vec3>,
    pub wavelength: f64,
    pub bandwidth: f64,
    pub radar_aperture_target: f64,
    pub radar_aperture_ris: f64,
    pub target_size: f64,
}

impl ScenarioGeometry {
    /// Number of RIS elements (a perfect square).
    pub fn element_count(&self) -> usize {
        self.element_positions.len()
    }
}

/// Distances and incidence angles derived from a [`ScenarioGeometry`].
///
/// Incidence angles follow the RIS-plane convention: azimuth is the angle
/// toward the first in-plane axis and elevation the angle toward the second,
/// both measured from the RIS normal so that broadside incidence is (0, 0).
#[derive(Debug, Clone)]
pub struct DerivedGeometry {
    /// Radar–target distance.
    pub radar_target_distance: f64,
    /// Radar–RIS-center distance.
    pub radar_ris_distance: f64,
    /// RIS-center–target distance.
    pub ris_target_distance: f64,
    /// Radar to each RIS element.
    pub radar_element_distances: Vec<f64>,
    /// Target to each RIS element.
    pub target_element_distances: Vec<f64>,
    /// Angle at the target between the radar and RIS-center directions, rad.
    pub bistatic_angle: f64,
    /// (azimuth, elevation) of the wave arriving from the target, common to
    /// all elements (the target is in the far field of the whole RIS).
    pub target_incidence: (f64, f64),
    /// Per-element (azimuth, elevation) of the wave arriving from the radar.
    pub radar_incidence: Vec<(f64, f64)>,
}

/// A built scene: static geometry plus everything derived from it.
#[derive(Debug, Clone)]
pub struct Scene {
    pub scenario: ScenarioGeometry,
    pub derived: DerivedGeometry,
}

/// How the target sees the radar/RIS pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingRegime {
    /// Radar and RIS inside the same scattering lobe of the target: the two
    /// echoes carry the same target response.
    Closely,
    /// Radar and RIS resolved by the target scattering: independent target
    /// responses on the two paths.
    Widely,
    /// Neither condition holds; no analysis is defined here.
    Indeterminate,
}

/// Beam architecture of the radar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeamConfig {
    pub transmit_beams: u8,
    pub receive_beams: u8,
}

impl BeamConfig {
    /// One transmit beam toward the target, two receive beams.
    pub const SPLIT_RECEIVE: Self = Self { transmit_beams: 1, receive_beams: 2 };
    /// Two transmit beams, one receive beam toward the target.
    pub const SPLIT_TRANSMIT: Self = Self { transmit_beams: 2, receive_beams: 1 };
}

/// The three analysed beam/delay configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionCase {
    /// One Tx beam, two Rx beams: both echoes observed separately.
    A,
    /// Two Tx beams, one Rx beam, direct/indirect delays resolvable.
    B,
    /// Two Tx beams, one Rx beam, delays not resolvable: echoes superpose.
    C,
}

impl std::fmt::Display for DetectionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DetectionCase::A => write!(f, "a"),
            DetectionCase::B => write!(f, "b"),
            DetectionCase::C => write!(f, "c"),
        }
    }
}

/// One far-field condition: the attained distance against the Fraunhofer
/// requirement `2 D^2 / wavelength`.
#[derive(Debug, Clone, Copy)]
pub struct FarFieldCondition {
    pub passed: bool,
    pub attained: f64,
    pub required: f64,
}

impl FarFieldCondition {
    fn check(attained: f64, required: f64) -> Self {
        Self { passed: attained >= required, attained, required }
    }

    /// Ratio attained/required; above 1 means the condition holds.
    pub fn margin(&self) -> f64 {
        if self.required == 0.0 {
            f64::INFINITY
        } else {
            self.attained / self.required
        }
    }
}

/// Report of the three plane-wave (far-field) conditions: radar–target,
/// target–RIS, radar–RIS elements.
#[derive(Debug, Clone, Copy)]
pub struct FarFieldReport {
    pub radar_target: FarFieldCondition,
    pub target_ris: FarFieldCondition,
    pub radar_ris: FarFieldCondition,
}

impl FarFieldReport {
    pub fn all_pass(&self) -> bool {
        self.radar_target.passed && self.target_ris.passed && self.radar_ris.passed
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Builds the scene from a configuration: places the `n x n` element grid
/// (with `n = round(side / (wavelength/2))`, elements at cell centres) and
/// derives all distances and incidence angles.
pub fn build_geometry(cfg: &GeometryConfig) -> Result<Scene> {
    for (name, v) in [
        ("radar position", cfg.radar_position),
        ("target position", cfg.target_position),
        ("RIS center", cfg.ris_center),
    ] {
        if !v.is_finite() {
            return Err(Error::Geometry(format!("{name} has non-finite components")));
        }
    }
    for (name, v) in [
        ("RIS side", cfg.ris_side),
        ("wavelength", cfg.wavelength),
        ("bandwidth", cfg.bandwidth),
        ("radar aperture (target)", cfg.radar_aperture_target),
        ("radar aperture (RIS)", cfg.radar_aperture_ris),
        ("target size", cfg.target_size),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Geometry(format!("{name} must be positive, got {v}")));
        }
    }

    let normal = cfg
        .ris_normal
        .normalized()
        .ok_or_else(|| Error::Geometry("RIS normal must be non-zero".into()))?;

    let axes = match cfg.ris_in_plane_axes {
        Some((a, b)) => {
            let a = a
                .normalized()
                .ok_or_else(|| Error::Geometry("first in-plane axis is zero".into()))?;
            let b = b
                .normalized()
                .ok_or_else(|| Error::Geometry("second in-plane axis is zero".into()))?;
            let tol = 1e-9;
            if a.dot(b).abs() > tol || a.dot(normal).abs() > tol || b.dot(normal).abs() > tol {
                return Err(Error::Geometry(
                    "RIS in-plane axes must be orthonormal and orthogonal to the normal".into(),
                ));
            }
            (a, b)
        }
        None => default_in_plane_axes(normal),
    };

    // Distinct bodies.
    let min_sep = 1e-9;
    if cfg.radar_position.distance(cfg.target_position) < min_sep
        || cfg.radar_position.distance(cfg.ris_center) < min_sep
        || cfg.target_position.distance(cfg.ris_center) < min_sep
    {
        return Err(Error::Geometry("radar, target and RIS must be at distinct positions".into()));
    }

    let spacing = cfg.wavelength / 2.0;
    let n = (cfg.ris_side / spacing).round().max(1.0) as usize;
    let half = (n as f64 - 1.0) / 2.0;
    let mut element_positions = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let u = (i as f64 - half) * spacing;
            let v = (j as f64 - half) * spacing;
            element_positions.push(cfg.ris_center + axes.0 * u + axes.1 * v);
        }
    }

    let scenario = ScenarioGeometry {
        radar_position: cfg.radar_position,
        target_position: cfg.target_position,
        ris_center: cfg.ris_center,
        ris_normal: normal,
        ris_in_plane_axes: axes,
        ris_side: cfg.ris_side,
        ris_element_spacing: spacing,
        element_positions,
        wavelength: cfg.wavelength,
        bandwidth: cfg.bandwidth,
        radar_aperture_target: cfg.radar_aperture_target,
        radar_aperture_ris: cfg.radar_aperture_ris,
        target_size: cfg.target_size,
    };
    let derived = derive(&scenario)?;
    Ok(Scene { scenario, derived })
}

fn default_in_plane_axes(normal: Vec3) -> (Vec3, Vec3) {
    // Any fixed deterministic completion of the normal to a right-handed frame.
    let seed = if normal.x.abs() < 0.9 { Vec3::new(1.0, 0.0, 0.0) } else { Vec3::new(0.0, 0.0, 1.0) };
    let a = (seed - normal * seed.dot(normal)).normalized().expect("seed not parallel to normal");
    let b = normal.cross(a);
    (a, b)
}

fn derive(s: &ScenarioGeometry) -> Result<DerivedGeometry> {
    let radar_target_distance = s.radar_position.distance(s.target_position);
    let radar_ris_distance = s.radar_position.distance(s.ris_center);
    let ris_target_distance = s.ris_center.distance(s.target_position);

    let radar_element_distances: Vec<f64> =
        s.element_positions.iter().map(|e| e.distance(s.radar_position)).collect();
    let target_element_distances: Vec<f64> =
        s.element_positions.iter().map(|e| e.distance(s.target_position)).collect();
    if radar_element_distances.iter().chain(&target_element_distances).any(|&d| d < 1e-9) {
        return Err(Error::Geometry("radar or target coincides with a RIS element".into()));
    }

    let to_radar = (s.radar_position - s.target_position)
        .normalized()
        .ok_or_else(|| Error::Geometry("radar and target coincide".into()))?;
    let to_ris = (s.ris_center - s.target_position)
        .normalized()
        .ok_or_else(|| Error::Geometry("RIS and target coincide".into()))?;
    let bistatic_angle = to_radar.dot(to_ris).clamp(-1.0, 1.0).acos();

    let target_incidence = incidence_angles(s, s.target_position - s.ris_center)?;
    let radar_incidence = s
        .element_positions
        .iter()
        .map(|&e| incidence_angles(s, s.radar_position - e))
        .collect::<Result<Vec<_>>>()?;

    Ok(DerivedGeometry {
        radar_target_distance,
        radar_ris_distance,
        ris_target_distance,
        radar_element_distances,
        target_element_distances,
        bistatic_angle,
        target_incidence,
        radar_incidence,
    })
}

/// (azimuth, elevation) of a source direction in the RIS frame; errors if
/// the source sits behind the RIS plane.
fn incidence_angles(s: &ScenarioGeometry, toward_source: Vec3) -> Result<(f64, f64)> {
    let dir = toward_source
        .normalized()
        .ok_or_else(|| Error::Geometry("source coincides with RIS element".into()))?;
    let along_normal = dir.dot(s.ris_normal);
    if along_normal <= 0.0 {
        return Err(Error::Geometry(
            "radar/target must lie on the illuminated side of the RIS".into(),
        ));
    }
    let az = dir.dot(s.ris_in_plane_axes.0).atan2(along_normal);
    let el = dir.dot(s.ris_in_plane_axes.1).atan2(along_normal);
    Ok((az, el))
}

/// Checks the three plane-wave conditions and reports the attained and
/// required distances for each.
pub fn validate_far_field(scene: &Scene) -> FarFieldReport {
    let s = &scene.scenario;
    let d = &scene.derived;
    let lambda = s.wavelength;
    let min_target_el =
        d.target_element_distances.iter().cloned().fold(f64::INFINITY, f64::min);
    let min_radar_el = d.radar_element_distances.iter().cloned().fold(f64::INFINITY, f64::min);

    let req_rt = 2.0 * s.radar_aperture_target.powi(2).max(s.target_size.powi(2)) / lambda;
    let req_tr = 2.0 * s.target_size.powi(2).max(s.ris_side.powi(2)) / lambda;
    let req_rr = 2.0 * s.radar_aperture_ris.powi(2) / lambda;

    FarFieldReport {
        radar_target: FarFieldCondition::check(d.radar_target_distance, req_rt),
        target_ris: FarFieldCondition::check(min_target_el, req_tr),
        radar_ris: FarFieldCondition::check(min_radar_el, req_rr),
    }
}

/// Classifies the spacing regime from the angle the radar–RIS pair subtends
/// at the target.
///
/// Widely requires the angle to reach `wavelength / target_size` (one target
/// scattering lobe); closely requires it to stay below `closeness_factor`
/// times that, the operational reading of "much smaller than".
pub fn classify_spacing(scene: &Scene, closeness_factor: f64) -> Result<SpacingRegime> {
    classify_spacing_from(
        scene.derived.bistatic_angle,
        scene.scenario.wavelength,
        scene.scenario.target_size,
        closeness_factor,
    )
}

/// Regime decision on raw quantities; see [`classify_spacing`].
pub fn classify_spacing_from(
    subtended_angle: f64,
    wavelength: f64,
    target_size: f64,
    closeness_factor: f64,
) -> Result<SpacingRegime> {
    if !(target_size > 0.0) {
        return Err(Error::Domain("target size must be positive".into()));
    }
    if !(0.0 < closeness_factor && closeness_factor <= 1.0) {
        return Err(Error::Domain(format!(
            "closeness factor must be in (0, 1], got {closeness_factor}"
        )));
    }
    let lobe = wavelength / target_size;
    Ok(if subtended_angle >= lobe {
        SpacingRegime::Widely
    } else if subtended_angle <= closeness_factor * lobe {
        SpacingRegime::Closely
    } else {
        SpacingRegime::Indeterminate
    })
}

/// Determines the detection case from the beam architecture and, for the
/// two-transmit-beam configuration, from delay resolvability.
///
/// The indirect echo trails the direct one by `(d_t + d_r - rho) / c`.
/// Case b needs that path difference to reach `c/W`; case c needs it under
/// `c/(4W)`, half the radar range-cell size. The gap between the two is not
/// analysed and is reported as unsupported.
pub fn classify_delay_case(scene: &Scene, beams: BeamConfig) -> Result<DetectionCase> {
    match (beams.transmit_beams, beams.receive_beams) {
        (1, 2) => Ok(DetectionCase::A),
        (2, 1) => {
            let d = &scene.derived;
            let path_difference =
                d.ris_target_distance + d.radar_ris_distance - d.radar_target_distance;
            let resolvable = SPEED_OF_LIGHT / scene.scenario.bandwidth;
            if path_difference >= resolvable {
                Ok(DetectionCase::B)
            } else if path_difference <= resolvable / 4.0 {
                Ok(DetectionCase::C)
            } else {
                Err(Error::Unsupported(format!(
                    "path difference {path_difference:.2} m lies between c/(4W) = {:.2} m and \
                     c/W = {:.2} m; delays neither resolvable nor unresolvable",
                    resolvable / 4.0,
                    resolvable
                )))
            }
        }
        (tx, rx) => Err(Error::Config(format!(
            "unsupported beam configuration: {tx} transmit / {rx} receive beams"
        ))),
    }
}
