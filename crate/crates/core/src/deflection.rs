//! Light-deflection angles: the classical `4Gm/(c²r)`, its form in terms of
//! the deflector's rest wavelength, and the two-term form that adds the
//! photon-wavelength contribution `λi/r`.

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeflectionCase {
    pub m_deflector: f64,
    pub lambda_mass: f64,
    pub r: f64,
    pub lambda_i: Option<f64>,
}

impl DeflectionCase {
    pub fn from_mass(
        k: &Constants,
        m_deflector: f64,
        r: f64,
        lambda_i: Option<f64>,
    ) -> Result<Self> {
        positive("deflector mass", m_deflector)?;
        positive("closest approach", r)?;
        if let Some(li) = lambda_i {
            non_negative("photon wavelength", li)?;
        }
        Ok(DeflectionCase {
            m_deflector,
            lambda_mass: k.h() / (m_deflector * k.c()),
            r,
            lambda_i,
        })
    }

    pub fn extended(&self, k: &Constants) -> Result<ExtendedDeflection> {
        extended_deflection(k, self.lambda_mass, self.lambda_i.unwrap_or(0.0), self.r)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive, got {v}")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be non-negative, got {v}"
        )))
    }
}

/// `4Gm/(c²r)` in radians.
pub fn gr_deflection(k: &Constants, m: f64, r: f64) -> Result<f64> {
    positive("mass", m)?;
    positive("radius", r)?;
    Ok(4.0 * k.g() * m / (k.c() * k.c() * r))
}

/// `4Gh/(c³·λ_mass·r)`.
pub fn wave_deflection(k: &Constants, lambda_mass: f64, r: f64) -> Result<f64> {
    positive("deflector wavelength", lambda_mass)?;
    positive("radius", r)?;
    let c = k.c();
    Ok(4.0 * k.g() * k.h() / (c * c * c * lambda_mass * r))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedDeflection {
    pub lambda_mass: f64,
    pub lambda_i: f64,
    pub r: f64,
    pub term1: f64,
    pub term2: f64,
    pub total: f64,
    /// `term2 / term1`.
    pub dominance_ratio: f64,
    /// Value of `λ_mass·λ_i` at which both terms are equal; independent of `r`.
    pub crossover_product: f64,
}

/// Both terms and their sum. `lambda_i = 0` reduces to [`wave_deflection`].
pub fn extended_deflection(
    k: &Constants,
    lambda_mass: f64,
    lambda_i: f64,
    r: f64,
) -> Result<ExtendedDeflection> {
    non_negative("photon wavelength", lambda_i)?;
    let term1 = wave_deflection(k, lambda_mass, r)?;
    let term2 = lambda_i / r;
    Ok(ExtendedDeflection {
        lambda_mass,
        lambda_i,
        r,
        term1,
        term2,
        total: term1 + term2,
        dominance_ratio: term2 / term1,
        crossover_product: crossover_product(k),
    })
}

/// `4Gh/c³`.
pub fn crossover_product(k: &Constants) -> f64 {
    let c = k.c();
    4.0 * k.g() * k.h() / (c * c * c)
}
