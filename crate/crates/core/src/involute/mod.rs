//! Involute particle geometry.
//!
//! The plane involute of a base circle of radius `r0` is the path traced by
//! the end of a tangent segment of length `r0·θ` unwound from the circle:
//!
//! ```text
//! x = r0·[(ω + 2kπ)·sin ω + cos ω]
//! y = χ·r0·[sin ω − (ω + 2kπ)·cos ω]
//! ```
//!
//! with `χ = ±1` the chirality. Lifting that tangent segment out of the orbit
//! plane by a helix angle `μ` gives the helicoid family; sweeping `μ` over
//! `[−π/4, π/4]` gives the spherical-involute surface built in [`mesh`].

pub mod mesh;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::compton::stage1_decay;
use crate::error::{Error, Result};
use crate::kinematics::{doppler_factor, rsp_push_velocity};
use crate::particle::check_beta;

pub use mesh::{build_mesh, Mesh};

/// Handedness of an involute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    Right,
    Left,
}

impl Chirality {
    pub fn sign(self) -> f64 {
        match self {
            Chirality::Right => 1.0,
            Chirality::Left => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Chirality::Right => Chirality::Left,
            Chirality::Left => Chirality::Right,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Chirality::Right),
            -1 => Ok(Chirality::Left),
            _ => Err(Error::Validation(format!(
                "chirality must be +1 or -1, got {s}"
            ))),
        }
    }
}

impl Serialize for Chirality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.sign() as i8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvoluteSpec {
    pub r0: f64,
    pub omega_max: f64,
    pub k_max: u32,
    pub mu: f64,
    pub chirality: Chirality,
    pub beta: f64,
    pub phi_motion: f64,
    pub samples_per_turn: usize,
}

impl InvoluteSpec {
    /// One full turn, right-handed, at rest, in the orbit plane.
    pub fn new(r0: f64) -> Result<Self> {
        InvoluteSpec {
            r0,
            omega_max: TAU,
            k_max: 0,
            mu: 0.0,
            chirality: Chirality::Right,
            beta: 0.0,
            phi_motion: 0.0,
            samples_per_turn: 64,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.r0 > 0.0 && self.r0.is_finite()) {
            return Err(Error::domain(format!(
                "resonance radius must be positive, got {}",
                self.r0
            )));
        }
        if !(self.omega_max >= 0.0 && self.omega_max.is_finite()) {
            return Err(Error::domain("omega_max must be finite and non-negative"));
        }
        if !(self.mu.abs() <= FRAC_PI_4) {
            return Err(Error::domain(format!(
                "helix angle must satisfy |mu| <= pi/4, got {}",
                self.mu
            )));
        }
        check_beta(self.beta)?;
        if self.samples_per_turn == 0 {
            return Err(Error::domain("samples_per_turn must be positive"));
        }
        Ok(self)
    }

    /// Upper end of the unwrapped parameter range, `omega_max + 2π·k_max`.
    pub fn theta_max(&self) -> f64 {
        self.omega_max + TAU * self.k_max as f64
    }
}

/// A sample of a plane curve; `omega` is the unwrapped parameter `ω + 2kπ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub omega: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacePoint {
    pub omega: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// `n·λ0/(2π)`.
pub fn resonance_radius(lambda0: f64, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("resonance order must be at least 1"));
    }
    if !(lambda0 > 0.0) {
        return Err(Error::domain(format!(
            "wavelength must be positive, got {lambda0}"
        )));
    }
    Ok(n as f64 * lambda0 / TAU)
}

/// Involute point at local angle `omega` with unwound length `theta = ω + 2kπ`
/// scaled by `stretch` (1 for the undeformed curve).
fn involute_point(r0: f64, omega: f64, theta: f64, chirality: f64, stretch: f64) -> (f64, f64) {
    let (s, c) = omega.sin_cos();
    let arm = stretch * theta;
    (r0 * (arm * s + c), chirality * r0 * (s - arm * c))
}

/// Local angles sampled on `[0, omega_max]` at roughly `samples_per_turn` per turn.
fn local_angles(spec: &InvoluteSpec) -> Vec<f64> {
    let segments = ((spec.omega_max / TAU) * spec.samples_per_turn as f64)
        .ceil()
        .max(1.0) as usize;
    (0..=segments)
        .map(|i| spec.omega_max * i as f64 / segments as f64)
        .collect()
}

fn sample_plane<F>(spec: &InvoluteSpec, mut stretch: F) -> Result<Vec<CurvePoint>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let spec = spec.validated()?;
    let angles = local_angles(&spec);
    let chi = spec.chirality.sign();
    let mut out = Vec::with_capacity(angles.len() * (spec.k_max as usize + 1));
    for k in 0..=spec.k_max {
        let wind = TAU * k as f64;
        for &w in &angles {
            let theta = w + wind;
            let (x, y) = involute_point(spec.r0, w, theta, chi, stretch(w)?);
            out.push(CurvePoint { omega: theta, x, y });
        }
    }
    Ok(out)
}

/// Plane involute sampled over `ω ∈ [0, omega_max]` for each `k ∈ 0..=k_max`.
pub fn plane_involute(spec: &InvoluteSpec) -> Result<Vec<CurvePoint>> {
    sample_plane(spec, |_| Ok(1.0))
}

/// `(r0·ω1)·e^{i(ω1 + 2kπ)}`.
pub fn involute_vector(omega1: f64, k: i64, r0: f64) -> Complex64 {
    Complex64::from_polar(r0 * omega1, omega1 + TAU * k as f64)
}

/// Helix on the base cylinder: `(r0 cos ω1, r0 sin ω1, ±r0·ω1·tan μ)`.
pub fn helicoid(spec: &InvoluteSpec, sign: Chirality) -> Result<Vec<SpacePoint>> {
    let spec = spec.validated()?;
    let rise = sign.sign() * spec.mu.tan();
    Ok(local_angles(&spec)
        .into_iter()
        .map(|w| {
            let (s, c) = w.sin_cos();
            SpacePoint {
                omega: w,
                x: spec.r0 * c,
                y: spec.r0 * s,
                z: spec.r0 * w * rise,
            }
        })
        .collect())
}

/// Length `r0·ω1/cos μ` of the slanted unwound segment.
pub fn helicoid_modulus(r0: f64, omega1: f64, mu: f64) -> Result<f64> {
    if !(mu.abs() < FRAC_PI_2) {
        return Err(Error::domain(format!(
            "cos(mu) vanishes or changes sign at mu = {mu}"
        )));
    }
    Ok(r0 * omega1 / mu.cos())
}

/// `[r0·ω1·e^{i(ω1+2kπ)}/cos μ]·sqrt(1−β²)/(1+β·cos φ)`, with `r0 = λ0/2π`
/// taken from the spec.
pub fn spherical_involute_amplitude(
    spec: &InvoluteSpec,
    omega1: f64,
    k: i64,
    phi: f64,
) -> Result<Complex64> {
    let spec = spec.validated()?;
    let factor = doppler_factor(spec.beta, phi)?;
    Ok(involute_vector(omega1, k, spec.r0) / spec.mu.cos() * factor)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCreation {
    pub particle: InvoluteSpec,
    pub antiparticle: InvoluteSpec,
    pub lambda_i: f64,
    pub lambda0: f64,
    /// Whether `λi = λ0/2` (to 1e-9 relative).
    pub condition_met: bool,
    pub warning: Option<String>,
    /// Photon wavelength after the first push as stated by the halving argument (`λ0`).
    pub narrative_lambda_i1: f64,
    /// Photon wavelength after the first push from the Doppler decay formula.
    pub computed_lambda_i1: f64,
}

/// Mirror pair of involutes on the first resonance orbit.
pub fn pair_create(lambda_i: f64, lambda0: f64) -> Result<PairCreation> {
    if !(lambda_i > 0.0 && lambda0 > 0.0) {
        return Err(Error::domain("pair creation needs positive wavelengths"));
    }
    let particle = InvoluteSpec::new(resonance_radius(lambda0, 1)?)?;
    let antiparticle = InvoluteSpec {
        chirality: Chirality::Left,
        ..particle
    };
    let target = lambda0 / 2.0;
    let condition_met = ((lambda_i - target) / target).abs() <= 1e-9;
    let warning = (!condition_met).then(|| {
        format!("incident wavelength {lambda_i:e} m differs from the creation condition lambda0/2 = {target:e} m")
    });
    let computed_lambda_i1 = stage1_decay(lambda_i, rsp_push_velocity(lambda_i, lambda0)?)?;
    Ok(PairCreation {
        particle,
        antiparticle,
        lambda_i,
        lambda0,
        condition_met,
        warning,
        narrative_lambda_i1: lambda0,
        computed_lambda_i1,
    })
}

/// Length-weighted centroid of a polyline, or `None` when it has no length.
pub fn arc_centroid(points: &[[f64; 2]]) -> Option<[f64; 2]> {
    let mut total = 0.0;
    let mut acc = [0.0, 0.0];
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        total += len;
        acc[0] += len * (a[0] + b[0]) / 2.0;
        acc[1] += len * (a[1] + b[1]) / 2.0;
    }
    (total > 0.0).then(|| [acc[0] / total, acc[1] / total])
}

/// Distance from the origin to the length-weighted centroid of a polyline.
pub fn arc_centroid_offset(points: &[[f64; 2]]) -> Result<f64> {
    if points.len() < 8 {
        return Err(Error::domain(
            "at least 8 samples are needed for a centroid",
        ));
    }
    let c = arc_centroid(points).ok_or_else(|| Error::domain("polyline has zero length"))?;
    Ok(c[0].hypot(c[1]))
}

/// Offset between the orbit centre and the centroid of one full turn of the
/// plane involute, `θ ∈ [start, start + 2π]`.
pub fn eccentricity(spec: &InvoluteSpec, omega_window_start: f64) -> Result<f64> {
    let spec = spec.validated()?;
    if spec.samples_per_turn < 8 {
        return Err(Error::domain(format!(
            "{} samples per turn are too few for a centroid (need 8)",
            spec.samples_per_turn
        )));
    }
    let end = omega_window_start + TAU;
    if !(omega_window_start >= 0.0) || end > spec.theta_max() * (1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "window [{omega_window_start}, {end}] is outside the sampled range [0, {}]",
            spec.theta_max()
        )));
    }
    let chi = spec.chirality.sign();
    let n = spec.samples_per_turn;
    let pts: Vec<[f64; 2]> = (0..=n)
        .map(|i| {
            let theta = omega_window_start + TAU * i as f64 / n as f64;
            let (x, y) = involute_point(spec.r0, theta, theta, chi, 1.0);
            [x, y]
        })
        .collect();
    arc_centroid_offset(&pts)
}

/// Plane involute whose unwound length at each sample is scaled by the
/// Doppler factor of the emission direction.
///
/// The emission direction is the tangent of the base circle along which the
/// segment unwinds; `φ` is its angle to `phi_motion`.
pub fn doppler_deformed_involute(spec: &InvoluteSpec) -> Result<Vec<CurvePoint>> {
    let chi = spec.chirality.sign();
    let (beta, heading) = (spec.beta, spec.phi_motion);
    sample_plane(spec, |w| {
        let (s, c) = w.sin_cos();
        let emission = (-chi * c).atan2(s);
        doppler_factor(beta, emission - heading)
    })
}

/// Radii at which a polyline crosses the ray from the origin at angle `ray`,
/// in curve order. Crossings are located by linear interpolation.
pub fn ray_crossings(points: &[CurvePoint], ray: f64) -> Vec<f64> {
    let (ds, dc) = ray.sin_cos();
    let side = |p: &CurvePoint| p.y * dc - p.x * ds;
    let mut out = Vec::new();
    for w in points.windows(2) {
        let (sa, sb) = (side(&w[0]), side(&w[1]));
        if (sa <= 0.0 && sb > 0.0) || (sa >= 0.0 && sb < 0.0) {
            let t = sa / (sa - sb);
            let x = w[0].x + t * (w[1].x - w[0].x);
            let y = w[0].y + t * (w[1].y - w[0].y);
            if x * dc + y * ds > 0.0 {
                out.push(x.hypot(y));
            }
        }
    }
    out
}
