//! Mass and wavelength conversions, and the particle/photon value types.

use nalgebra::Vector3;
use serde::Serialize;

use crate::constants::{Constants, ELECTRON_MASS, PROTON_MASS};
use crate::error::{Error, Result};

/// Rest (Compton) wavelength `h/(c·m0)` of a mass.
pub fn rest_wavelength(k: &Constants, m0: f64) -> Result<f64> {
    if !(m0 > 0.0) || !m0.is_finite() {
        return Err(Error::domain(format!(
            "rest mass must be positive, got {m0}"
        )));
    }
    Ok(k.h() / (k.c() * m0))
}

/// Mass `h/(c·λ)` whose rest wavelength is `lambda`; inverse of [`rest_wavelength`].
pub fn mass_from_wavelength(k: &Constants, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain(format!(
            "wavelength must be positive, got {lambda}"
        )));
    }
    Ok(k.h() / (k.c() * lambda))
}

/// Named particle presets accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    Electron,
    Proton,
}

impl Species {
    pub fn mass(self) -> f64 {
        match self {
            Species::Electron => ELECTRON_MASS,
            Species::Proton => PROTON_MASS,
        }
    }
}

impl std::str::FromStr for Species {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "electron" | "e" => Ok(Species::Electron),
            "proton" | "p" => Ok(Species::Proton),
            other => Err(Error::Validation(format!("unknown particle `{other}`"))),
        }
    }
}

/// A massive wave source: rest mass, its rest wavelength and a speed fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Particle {
    pub m0: f64,
    pub lambda0: f64,
    pub beta: f64,
}

impl Particle {
    pub fn new(k: &Constants, m0: f64, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(Particle {
            m0,
            lambda0: rest_wavelength(k, m0)?,
            beta,
        })
    }

    pub fn at_rest(k: &Constants, m0: f64) -> Result<Self> {
        Self::new(k, m0, 0.0)
    }

    pub fn from_wavelength(k: &Constants, lambda0: f64, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(Particle {
            m0: mass_from_wavelength(k, lambda0)?,
            lambda0,
            beta,
        })
    }

    /// Lorentz factor `1/sqrt(1-β²)`.
    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.beta * self.beta).sqrt()
    }
}

/// A plane wave train with a wavelength and a propagation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Photon {
    pub lambda_i: f64,
    pub direction: Vector3<f64>,
}

impl Photon {
    pub fn new(lambda_i: f64, direction: Vector3<f64>) -> Result<Self> {
        if !(lambda_i > 0.0) || !lambda_i.is_finite() {
            return Err(Error::domain(format!(
                "photon wavelength must be positive, got {lambda_i}"
            )));
        }
        if ((direction.norm() - 1.0).abs()) > 1e-12 {
            return Err(Error::domain("photon direction must be a unit vector"));
        }
        Ok(Photon {
            lambda_i,
            direction,
        })
    }

    pub fn energy(&self, k: &Constants) -> f64 {
        k.h() * k.c() / self.lambda_i
    }

    pub fn momentum(&self, k: &Constants) -> f64 {
        k.h() / self.lambda_i
    }
}

/// Accepts `0 ≤ |β| < 1`.
pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "speed fraction must satisfy |beta| < 1, got {beta}"
        )))
    }
}
