//! Doppler wavelength maps, the symmetric-push velocity law, wave momentum,
//! forward/backward energy pairs, and a Lorentz-force consistency residual.
//!
//! Angle convention: `phi = 0` puts the observer ahead of the moving source,
//! where the observed wavelength is shortened.

use nalgebra::Vector3;
use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::particle::check_beta;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DopplerObservation {
    pub lambda_emit: f64,
    pub beta: f64,
    pub phi: f64,
}

impl DopplerObservation {
    pub fn new(lambda_emit: f64, beta: f64, phi: f64) -> Result<Self> {
        if !(lambda_emit > 0.0) {
            return Err(Error::domain(format!(
                "emitted wavelength must be positive, got {lambda_emit}"
            )));
        }
        check_beta(beta)?;
        Ok(DopplerObservation {
            lambda_emit,
            beta,
            phi,
        })
    }

    pub fn observed(&self) -> Result<f64> {
        doppler_wavelength(self.lambda_emit, self.beta, self.phi)
    }
}

/// Observed wavelength `λ·sqrt(1−β²)/(1+β·cos φ)`.
pub fn doppler_wavelength(lambda_emit: f64, beta: f64, phi: f64) -> Result<f64> {
    if !(lambda_emit > 0.0) {
        return Err(Error::domain(format!(
            "emitted wavelength must be positive, got {lambda_emit}"
        )));
    }
    Ok(lambda_emit * doppler_factor(beta, phi)?)
}

/// The dimensionless factor `sqrt(1−β²)/(1+β·cos φ)`.
pub fn doppler_factor(beta: f64, phi: f64) -> Result<f64> {
    check_beta(beta)?;
    let denom = 1.0 + beta * phi.cos();
    if !(denom > 0.0) {
        return Err(Error::domain(format!(
            "1 + beta·cos(phi) = {denom} is not positive"
        )));
    }
    Ok((1.0 - beta * beta).sqrt() / denom)
}

/// Speed fraction imparted by a photon of wavelength `lambda_i` on a source of
/// rest wavelength `lambda0`: `λ0 / sqrt(4λi² + λ0²)`.
pub fn rsp_push_velocity(lambda_i: f64, lambda0: f64) -> Result<f64> {
    if !(lambda_i > 0.0 && lambda0 > 0.0) {
        return Err(Error::domain("push velocity needs positive wavelengths"));
    }
    if lambda_i.is_infinite() {
        return Ok(0.0);
    }
    // hypot avoids overflow/underflow of the squares at extreme ratios
    Ok(lambda0 / (2.0 * lambda_i).hypot(lambda0))
}

/// Relativistic momentum `m0·c·β/sqrt(1−β²)`.
pub fn wave_momentum(k: &Constants, m0: f64, beta: f64) -> Result<f64> {
    if !(m0 > 0.0) {
        return Err(Error::domain(format!(
            "rest mass must be positive, got {m0}"
        )));
    }
    check_beta(beta)?;
    Ok(m0 * k.c() * beta / (1.0 - beta * beta).sqrt())
}

/// De Broglie wavelength, or [`DeBroglie::Unbounded`] for a source at rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeBroglie {
    Finite(f64),
    Unbounded,
}

impl DeBroglie {
    pub fn value(self) -> Option<f64> {
        match self {
            DeBroglie::Finite(v) => Some(v),
            DeBroglie::Unbounded => None,
        }
    }
}

/// `λ0·sqrt(1−β²)/β`.
pub fn de_broglie_wavelength(lambda0: f64, beta: f64) -> Result<DeBroglie> {
    if !(lambda0 > 0.0) {
        return Err(Error::domain(format!(
            "rest wavelength must be positive, got {lambda0}"
        )));
    }
    check_beta(beta)?;
    if beta == 0.0 {
        return Ok(DeBroglie::Unbounded);
    }
    Ok(DeBroglie::Finite(
        lambda0 * (1.0 - beta * beta).sqrt() / beta.abs(),
    ))
}

/// Wave energies seen ahead (`E1`) and behind (`E2`) a moving source, their
/// half-difference and their mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct EnergyPair {
    pub E1: f64,
    pub E2: f64,
    pub dE: f64,
    pub Em: f64,
}

/// The half-difference equals `c·p` and the mean equals `m0·c²·γ`.
pub fn energy_pair(k: &Constants, lambda0: f64, beta: f64) -> Result<EnergyPair> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::domain(format!(
            "energy pair needs 0 <= beta < 1, got {beta}"
        )));
    }
    let hc = k.h() * k.c();
    let e1 = hc / doppler_wavelength(lambda0, beta, 0.0)?;
    let e2 = hc / doppler_wavelength(lambda0, beta, std::f64::consts::PI)?;
    Ok(EnergyPair {
        E1: e1,
        E2: e2,
        dE: (e1 - e2) / 2.0,
        Em: (e1 + e2) / 2.0,
    })
}

/// One sample of a charged-particle trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub time: f64,
    pub velocity: Vector3<f64>,
}

/// Residual `q(E + v×B) − d/dt[m0·γ·v]` at every interior sample, with the
/// momentum derivative taken by central differences.
///
/// The returned vector has two fewer entries than the trajectory.
pub fn lorentz_force_residual(
    k: &Constants,
    q: f64,
    e_field: Vector3<f64>,
    b_field: Vector3<f64>,
    trajectory: &[TrajectorySample],
    m0: f64,
) -> Result<Vec<Vector3<f64>>> {
    if trajectory.len() < 3 {
        return Err(Error::domain("trajectory needs at least 3 samples"));
    }
    if !(m0 > 0.0) {
        return Err(Error::domain(format!(
            "rest mass must be positive, got {m0}"
        )));
    }
    let dt = trajectory[1].time - trajectory[0].time;
    if !(dt > 0.0) {
        return Err(Error::domain("trajectory times must increase"));
    }
    for w in trajectory.windows(2) {
        let step = w[1].time - w[0].time;
        if ((step - dt) / dt).abs() > 1e-9 {
            return Err(Error::domain("trajectory must be uniformly sampled"));
        }
    }
    let c = k.c();
    let momentum = trajectory
        .iter()
        .map(|s| {
            let beta = s.velocity.norm() / c;
            if !(beta < 1.0) {
                return Err(Error::domain(format!(
                    "superluminal sample at t = {}",
                    s.time
                )));
            }
            Ok(s.velocity * (m0 / (1.0 - beta * beta).sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok((1..trajectory.len() - 1)
        .map(|i| {
            let v = trajectory[i].velocity;
            let force = (e_field + v.cross(&b_field)) * q;
            let dp_dt = (momentum[i + 1] - momentum[i - 1]) / (2.0 * dt);
            force - dp_dt
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ELECTRON_MASS, ELEMENTARY_CHARGE};
    use crate::particle::rest_wavelength;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    #[test]
    fn doppler_examples() {
        assert_eq!(doppler_wavelength(3.0, 0.0, 1.234).unwrap(), 3.0);
        assert_relative_eq!(
            doppler_wavelength(2.0, 0.6, FRAC_PI_2).unwrap(),
            2.0 * 0.8,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            doppler_wavelength(1.0, 0.5, 0.0).unwrap(),
            0.75f64.sqrt() / 1.5
        );
        assert_relative_eq!(
            doppler_wavelength(1.0, 0.5, 0.0).unwrap(),
            0.577350,
            epsilon = 1e-6
        );
        assert!(doppler_wavelength(1.0, 1.0, 0.0).is_err());
        assert!(doppler_wavelength(-1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn push_velocity_examples() {
        assert_eq!(rsp_push_velocity(f64::INFINITY, 1.0).unwrap(), 0.0);
        assert!(rsp_push_velocity(1e300, 1e-300).unwrap() < 1e-500_f64.max(1e-300));
        assert_relative_eq!(
            rsp_push_velocity(0.5, 1.0).unwrap(),
            FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
        // 2.42631e-12 / sqrt(4e-20 + 2.42631e-12²)
        assert_relative_eq!(
            rsp_push_velocity(1e-10, 2.42631e-12).unwrap(),
            0.01213066,
            max_relative = 1e-6
        );
    }

    #[test]
    fn momentum_and_de_broglie() {
        let k = Constants::default();
        assert_eq!(wave_momentum(&k, ELECTRON_MASS, 0.0).unwrap(), 0.0);
        let p = wave_momentum(&k, ELECTRON_MASS, 0.5).unwrap();
        assert_relative_eq!(
            p,
            ELECTRON_MASS * k.c() * 0.5 / 0.75f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(p, 1.5767e-22, max_relative = 1e-4);
        let lb = de_broglie_wavelength(2.42631e-12, 0.5)
            .unwrap()
            .value()
            .unwrap();
        assert_relative_eq!(lb, 4.2025e-12, max_relative = 1e-4);
        assert_eq!(
            de_broglie_wavelength(1.0, 0.0).unwrap(),
            DeBroglie::Unbounded
        );
        let near = de_broglie_wavelength(1.0, 1.0 - 1e-12)
            .unwrap()
            .value()
            .unwrap();
        assert!(near > 0.0 && near < 2e-6);
    }

    #[test]
    fn energy_pair_at_rest() {
        let k = Constants::default();
        let e = energy_pair(&k, 1e-12, 0.0).unwrap();
        assert_eq!(e.E1, e.E2);
        assert_eq!(e.dE, 0.0);
        assert_eq!(e.Em, k.h() * k.c() / 1e-12);
        assert!(energy_pair(&k, 1e-12, -0.1).is_err());
    }

    fn circular_orbit(
        k: &Constants,
        beta: f64,
        samples_per_turn: usize,
        turns: usize,
    ) -> (Vec<TrajectorySample>, f64) {
        let q = -ELEMENTARY_CHARGE;
        let b = 1.0;
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        let speed = beta * k.c();
        let omega = -q * b / (gamma * ELECTRON_MASS);
        let period = 2.0 * PI / omega;
        let dt = period / samples_per_turn as f64;
        let traj = (0..samples_per_turn * turns)
            .map(|i| {
                let t = i as f64 * dt;
                TrajectorySample {
                    time: t,
                    velocity: Vector3::new((omega * t).cos(), (omega * t).sin(), 0.0) * speed,
                }
            })
            .collect();
        (traj, speed)
    }

    fn max_relative_residual(k: &Constants, samples: usize) -> f64 {
        let (traj, speed) = circular_orbit(k, 0.5, samples, 1);
        let q = -ELEMENTARY_CHARGE;
        let res = lorentz_force_residual(
            k,
            q,
            Vector3::zeros(),
            Vector3::new(0.0, 0.0, 1.0),
            &traj,
            ELECTRON_MASS,
        )
        .unwrap();
        let scale = (q * speed).abs();
        res.iter().map(|r| r.norm() / scale).fold(0.0, f64::max)
    }

    #[test]
    fn cyclotron_orbit_residual() {
        let k = Constants::default();
        let gamma = 1.0 / 0.75f64.sqrt();
        let radius = gamma * ELECTRON_MASS * 0.5 * k.c() / ELEMENTARY_CHARGE;
        assert_relative_eq!(radius, 9.845e-4, max_relative = 1e-3);
        assert!(max_relative_residual(&k, 10_000) < 1e-5);
    }

    #[test]
    fn residual_is_second_order() {
        let k = Constants::default();
        let coarse = max_relative_residual(&k, 500);
        let fine = max_relative_residual(&k, 1000);
        let ratio = coarse / fine;
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn free_particle_residual_vanishes() {
        let k = Constants::default();
        let v = Vector3::new(1e7, -2e6, 3e5);
        let traj: Vec<_> = (0..10)
            .map(|i| TrajectorySample {
                time: i as f64 * 1e-9,
                velocity: v,
            })
            .collect();
        let res = lorentz_force_residual(&k, 1.0, Vector3::zeros(), Vector3::zeros(), &traj, 1.0)
            .unwrap();
        assert_eq!(res.len(), 8);
        assert!(res.iter().all(|r| r.norm() == 0.0));
    }

    #[test]
    fn superluminal_sample_rejected() {
        let k = Constants::default();
        let traj: Vec<_> = (0..3)
            .map(|i| TrajectorySample {
                time: i as f64,
                velocity: Vector3::new(k.c() * 1.01, 0.0, 0.0),
            })
            .collect();
        assert!(matches!(
            lorentz_force_residual(&k, 1.0, Vector3::zeros(), Vector3::zeros(), &traj, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(lorentz_force_residual(
            &k,
            1.0,
            Vector3::zeros(),
            Vector3::zeros(),
            &traj[..2],
            1.0
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn forward_backward_product(lambda in 1e-15f64..1e3, beta in -0.999f64..0.999) {
            let f = doppler_wavelength(lambda, beta, 0.0).unwrap();
            let b = doppler_wavelength(lambda, beta, PI).unwrap();
            prop_assert!((f * b / (lambda * lambda) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn push_velocity_monotone(li in 1e-14f64..1e-6, l0 in 1e-16f64..1e-8, s in 1.001f64..10.0) {
            let v = rsp_push_velocity(li, l0).unwrap();
            prop_assert!(v > 0.0 && v < 1.0);
            prop_assert!(rsp_push_velocity(li * s, l0).unwrap() < v);
            prop_assert!(rsp_push_velocity(li, l0 * s).unwrap() > v);
        }

        #[test]
        fn de_broglie_times_momentum_is_h(m_exp in -31.0f64..3.0, beta in 1e-6f64..0.999) {
            let k = Constants::default();
            let m0 = 10f64.powf(m_exp);
            let l0 = rest_wavelength(&k, m0).unwrap();
            let lb = de_broglie_wavelength(l0, beta).unwrap().value().unwrap();
            let p = wave_momentum(&k, m0, beta).unwrap();
            prop_assert!((lb * p / k.h() - 1.0).abs() < 1e-13);
        }

        #[test]
        fn energy_pair_identities(m_exp in -31.0f64..3.0, beta in 0.0f64..0.999) {
            let k = Constants::default();
            let m0 = 10f64.powf(m_exp);
            let l0 = rest_wavelength(&k, m0).unwrap();
            let e = energy_pair(&k, l0, beta).unwrap();
            prop_assert!(e.E1 >= e.E2 && e.E2 >= 0.0);
            let gamma = 1.0 / (1.0 - beta * beta).sqrt();
            let em = m0 * k.c() * k.c() * gamma;
            prop_assert!((e.Em / em - 1.0).abs() < 1e-13);
            let cp = k.c() * wave_momentum(&k, m0, beta).unwrap();
            if beta > 0.0 {
                prop_assert!((e.dE / cp - 1.0).abs() < 1e-13 * (1.0 + 1.0 / beta));
            }
        }
    }
}
