//! Wave-gravity force law and its calibration against Newton, the terminal
//! velocity of a wave source, the maximass, and the repulsive fifth-interaction
//! correction.
//!
//! All expressions are evaluated as plain SI numbers. Several of them are not
//! dimensionally homogeneous; the calibration `N = N_coeff/L` only reproduces
//! `G` under that reading.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::particle::{check_beta, rest_wavelength};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassPair {
    pub m_a: f64,
    pub m_b: f64,
    pub r: f64,
    pub lambda_a: f64,
    pub lambda_b: f64,
}

impl MassPair {
    pub fn new(k: &Constants, m_a: f64, m_b: f64, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::domain(format!(
                "separation must be positive, got {r}"
            )));
        }
        Ok(MassPair {
            m_a,
            m_b,
            r,
            lambda_a: rest_wavelength(k, m_a)?,
            lambda_b: rest_wavelength(k, m_b)?,
        })
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive, got {v}")))
    }
}

/// `t_g = λ/(4c)`.
pub fn characteristic_period(k: &Constants, lambda1: f64) -> Result<f64> {
    positive("wavelength", lambda1)?;
    Ok(lambda1 / (4.0 * k.c()))
}

/// Impulse `F·t_g` delivered from rest.
pub fn first_impulse(force: f64, t_g: f64) -> Result<f64> {
    if !(force >= 0.0 && t_g >= 0.0) {
        return Err(Error::domain("force and period must be non-negative"));
    }
    Ok(force * t_g)
}

/// Distance-free component `4hc/(λa·λb)`, with the speed taken as `c`.
pub fn base_force_component(k: &Constants, lambda_a: f64, lambda_b: f64) -> Result<f64> {
    positive("lambda_a", lambda_a)?;
    positive("lambda_b", lambda_b)?;
    Ok(4.0 * k.h() * k.c() / (lambda_a * lambda_b))
}

/// `N·L²·c/(r²·√5)`.
pub fn parallel_wavefront_speed(k: &Constants, n: f64, r: f64) -> Result<f64> {
    positive("N", n)?;
    positive("r", r)?;
    let l = k.terminal_length();
    Ok(n * l * l * k.c() / (r * r * 5f64.sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GravityReport {
    #[serde(flatten)]
    pub pair: MassPair,
    /// `λb/(4c)`, the period governing the impulse on body a.
    pub t_ga: f64,
    /// `λa/(4c)`.
    pub t_gb: f64,
    #[serde(rename = "N")]
    pub n: f64,
    pub base_component: f64,
    pub wavefront_speed: f64,
    pub force: f64,
    pub impulse_a: f64,
    pub impulse_b: f64,
    pub newton_force: f64,
    /// `force / newton_force`.
    pub ratio: f64,
    /// `ratio − 1`.
    pub deviation: f64,
}

/// `(4hL²c/√5)·N/(r²·λa·λb)` with `N = N_coeff/L`, next to Newton's `G·ma·mb/r²`.
pub fn wave_gravity_force(k: &Constants, pair: &MassPair) -> Result<GravityReport> {
    let l = k.terminal_length();
    let n = k.wavefront_number();
    let r = pair.r;
    let force =
        4.0 * k.h() * l * l * k.c() / 5f64.sqrt() * n / (r * r * pair.lambda_a * pair.lambda_b);
    let newton = k.g() * pair.m_a * pair.m_b / (r * r);
    let t_ga = characteristic_period(k, pair.lambda_b)?;
    let t_gb = characteristic_period(k, pair.lambda_a)?;
    let ratio = force / newton;
    Ok(GravityReport {
        pair: *pair,
        t_ga,
        t_gb,
        n,
        base_component: base_force_component(k, pair.lambda_a, pair.lambda_b)?,
        wavefront_speed: parallel_wavefront_speed(k, n, r)?,
        force,
        impulse_a: first_impulse(force, t_ga)?,
        impulse_b: first_impulse(force, t_gb)?,
        newton_force: newton,
        ratio,
        deviation: ratio - 1.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NDecomposition {
    pub n_coeff: f64,
    pub alpha_inv: f64,
    /// `alpha_inv² · 100⁵`.
    pub reconstruction: f64,
    /// `(n_coeff − reconstruction)/n_coeff`.
    pub relative_difference: f64,
    /// `sqrt(n_coeff / 100⁵)`.
    pub implied_alpha_inv: f64,
    pub note: String,
}

pub fn decompose_n(k: &Constants) -> NDecomposition {
    let scale = 100f64.powi(5);
    let reconstruction = k.alpha_inv() * k.alpha_inv() * scale;
    let rel = (k.n_coeff() - reconstruction) / k.n_coeff();
    let note = format!(
        "coefficient N_coeff = {:e} differs from {}^2*100^5 = {:e} by {:.3}% (relative {:.3e})",
        k.n_coeff(),
        k.alpha_inv(),
        reconstruction,
        rel * 100.0,
        rel
    );
    NDecomposition {
        n_coeff: k.n_coeff(),
        alpha_inv: k.alpha_inv(),
        reconstruction,
        relative_difference: rel,
        implied_alpha_inv: (k.n_coeff() / scale).sqrt(),
        note,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TerminalReport {
    pub lambda0: f64,
    /// `1 − β` in closed form `2L²/(λ0² + L²)`.
    pub beta_deficit: f64,
    /// `log10(1 − β)`, finite even where the deficit underflows.
    pub log10_beta_deficit: f64,
    pub v_terminal_description: String,
}

/// Terminal speed at which the forward wavelength `λ0·sqrt((1−β)/(1+β))`
/// reaches `L`.
pub fn terminal_report(k: &Constants, lambda0: f64) -> Result<TerminalReport> {
    let l = k.terminal_length();
    if !(lambda0.is_finite()) || lambda0 < l {
        return Err(Error::domain(format!(
            "rest wavelength {lambda0:e} m is below the terminal length {l:e} m (mass exceeds the maximass)"
        )));
    }
    // q = (L/λ0)² ≤ 1; deficit = 2q/(1+q)
    let ratio = l / lambda0;
    let q = ratio * ratio;
    let beta_deficit = if lambda0 == l {
        1.0
    } else {
        2.0 * q / (1.0 + q)
    };
    let log10_beta_deficit =
        2f64.log10() + 2.0 * ratio.log10() - q.ln_1p() / std::f64::consts::LN_10;
    let v_terminal_description = if beta_deficit == 1.0 {
        "v = 0: rest wavelength equals the terminal length; no motion is possible".to_string()
    } else {
        format!("v = (1 - 10^{log10_beta_deficit:.6}) c")
    };
    Ok(TerminalReport {
        lambda0,
        beta_deficit,
        log10_beta_deficit,
        v_terminal_description,
    })
}

/// Mass whose rest wavelength equals `L`: `h/(L·c)`.
pub fn maximass(k: &Constants) -> f64 {
    k.h() / (k.terminal_length() * k.c())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FifthInteraction {
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub r: f64,
    pub phi: f64,
    #[serde(rename = "N")]
    pub n: f64,
    /// `4hL²cN/√(5r)`.
    pub prefactor: f64,
    /// `1/(r·λa·λb)`.
    pub attraction_term: f64,
    /// `(1/λa·1/λb)·cos φ/(r·sqrt(1 − L²/(λa·λb)))`.
    pub repulsion_term: f64,
    pub sqrt_factor: f64,
    /// `prefactor · (attraction − repulsion)`.
    pub total: f64,
    pub attraction_force: f64,
    pub repulsion_force: f64,
}

/// Wave-gravity force with the repulsive correction. The prefactor carries
/// `√(5r)`, not `r`, so the attraction falls off as `r^{-3/2}`.
pub fn fifth_interaction_force(
    k: &Constants,
    lambda_a: f64,
    lambda_b: f64,
    r: f64,
    phi: f64,
) -> Result<FifthInteraction> {
    positive("lambda_a", lambda_a)?;
    positive("lambda_b", lambda_b)?;
    positive("r", r)?;
    let l = k.terminal_length();
    let prod = lambda_a * lambda_b;
    let q = l * l / prod;
    if !(q < 1.0) {
        return Err(Error::Singularity(format!(
            "lambda_a·lambda_b = {prod:e} does not exceed L² = {:e}",
            l * l
        )));
    }
    let n = k.wavefront_number();
    let prefactor = 4.0 * k.h() * l * l * k.c() * n / (5.0 * r).sqrt();
    let sqrt_factor = (1.0 - q).sqrt();
    let attraction_term = 1.0 / (r * lambda_a * lambda_b);
    // cos(π/2) rounds to 6e-17; the side-on view has no repulsive part
    let repulsion_term = if phi == FRAC_PI_2 {
        0.0
    } else {
        (1.0 / lambda_a * (1.0 / lambda_b)) * phi.cos() / (r * sqrt_factor)
    };
    Ok(FifthInteraction {
        lambda_a,
        lambda_b,
        r,
        phi,
        n,
        prefactor,
        attraction_term,
        repulsion_term,
        sqrt_factor,
        total: prefactor * (attraction_term - repulsion_term),
        attraction_force: prefactor * attraction_term,
        repulsion_force: prefactor * repulsion_term,
    })
}

/// `m·(1 − β·cos φ)/sqrt(1 − β²)`.
pub fn angular_wave_mass(m: f64, beta: f64, phi: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(m * (1.0 - beta * phi.cos()) / (1.0 - beta * beta).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ELECTRON_MASS, PROTON_MASS};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn period_and_impulse() {
        let k = Constants::default();
        assert_relative_eq!(
            characteristic_period(&k, 4.0 * k.c()).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        let lb = rest_wavelength(&k, 1.0).unwrap();
        // (h/c)/(4c) = 2.2102190e-42 / 1.1991698e9
        assert_relative_eq!(
            characteristic_period(&k, lb).unwrap(),
            1.843124e-51,
            max_relative = 1e-6
        );
        assert_eq!(first_impulse(0.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(
            first_impulse(6.674e-11, 1.843124e-51).unwrap(),
            1.230101e-61,
            max_relative = 1e-6
        );
        assert!(first_impulse(-1.0, 1.0).is_err());
    }

    #[test]
    fn base_component() {
        let k = Constants::default();
        assert_relative_eq!(
            base_force_component(&k, 1.0, 1.0).unwrap(),
            4.0 * k.h() * k.c()
        );
        let l1 = rest_wavelength(&k, 1.0).unwrap();
        assert_relative_eq!(
            base_force_component(&k, l1, l1).unwrap(),
            1.626545e59,
            max_relative = 1e-6
        );
        assert_eq!(
            base_force_component(&k, 2.0, 3.0).unwrap(),
            base_force_component(&k, 3.0, 2.0).unwrap()
        );
    }

    #[test]
    fn wavefront_speed() {
        let k = Constants::default();
        let l = k.terminal_length();
        let n = 5f64.sqrt() / (k.c() * l * l);
        assert_relative_eq!(
            parallel_wavefront_speed(&k, n, 1.0).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        // N·L² = N_coeff·L
        let v = parallel_wavefront_speed(&k, k.wavefront_number(), 1.0).unwrap();
        assert_relative_eq!(v, 1.229652e-61, max_relative = 1e-6);
        assert_relative_eq!(
            parallel_wavefront_speed(&k, k.wavefront_number(), 0.5).unwrap(),
            4.0 * v,
            max_relative = 1e-15
        );
    }

    #[test]
    fn cavendish_calibration() {
        let k = Constants::default();
        let rep = wave_gravity_force(&k, &MassPair::new(&k, 1.0, 1.0, 1.0).unwrap()).unwrap();
        assert!(rep.deviation.abs() < 2e-3);
        assert_relative_eq!(rep.force, 6.6716e-11, max_relative = 1e-4);
        let far = wave_gravity_force(&k, &MassPair::new(&k, 1.0, 1.0, 2.0).unwrap()).unwrap();
        assert_relative_eq!(far.force, rep.force / 4.0, max_relative = 1e-14);
        let heavy = wave_gravity_force(&k, &MassPair::new(&k, 2.0, 1.0, 1.0).unwrap()).unwrap();
        assert_relative_eq!(heavy.force, rep.force * 2.0, max_relative = 1e-14);
    }

    #[test]
    fn n_decomposition() {
        let d = decompose_n(&Constants::default());
        assert_relative_eq!(d.reconstruction, 1.8775576e14, max_relative = 1e-7);
        assert_relative_eq!(d.relative_difference, 1.0549e-4, max_relative = 1e-3);
        assert!((d.implied_alpha_inv - 137.031).abs() < 1e-3);
        assert!(d.note.contains("0.011%"));
    }

    #[test]
    fn terminal_cases() {
        let k = Constants::default();
        let l = k.terminal_length();
        let at_l = terminal_report(&k, l).unwrap();
        assert_eq!(at_l.beta_deficit, 1.0);
        assert!(at_l.log10_beta_deficit.abs() < 1e-15);

        let le = rest_wavelength(&k, ELECTRON_MASS).unwrap();
        let e = terminal_report(&k, le).unwrap();
        assert_relative_eq!(e.beta_deficit, 2.0 * (l / le).powi(2), max_relative = 1e-14);
        assert_relative_eq!(e.beta_deficit, 8.10e-144, max_relative = 1e-3);
        assert!((e.log10_beta_deficit - e.beta_deficit.log10()).abs() < 1e-12);

        let p = terminal_report(&k, rest_wavelength(&k, PROTON_MASS).unwrap()).unwrap();
        let ratio = p.beta_deficit / e.beta_deficit;
        assert_relative_eq!(
            ratio,
            (PROTON_MASS / ELECTRON_MASS).powi(2),
            max_relative = 1e-12
        );

        assert!(matches!(
            terminal_report(&k, l / 2.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn log_deficit_survives_underflow() {
        let k = Constants::default();
        let rep = terminal_report(&k, 1e200).unwrap();
        assert_eq!(rep.beta_deficit, 0.0);
        let expect = 2f64.log10() + 2.0 * (k.terminal_length().log10() - 200.0);
        assert!((rep.log10_beta_deficit - expect).abs() < 1e-10);
    }

    #[test]
    fn maximass_value() {
        let k = Constants::default();
        let m = maximass(&k);
        assert_relative_eq!(m, 4.525e41, max_relative = 1e-3);
        assert_relative_eq!(m * k.terminal_length() * k.c(), k.h(), max_relative = 1e-15);
    }

    #[test]
    fn fifth_interaction() {
        let k = Constants::default();
        let l1 = rest_wavelength(&k, 1.0).unwrap();
        let side = fifth_interaction_force(&k, l1, l1, 1.0, PI / 2.0).unwrap();
        assert_eq!(side.repulsion_term, 0.0);
        assert_eq!(side.total, side.prefactor * side.attraction_term);

        let head = fifth_interaction_force(&k, l1, l1, 1.0, 0.3).unwrap();
        assert_eq!(head.sqrt_factor, 1.0);
        let bracket = head.attraction_term - head.repulsion_term;
        assert_relative_eq!(
            bracket,
            (1.0 - 0.3f64.cos()) / (l1 * l1),
            max_relative = 1e-12
        );

        let l = k.terminal_length();
        let near = fifth_interaction_force(&k, 2.0 * l, 2.0 * l, 1.0, 0.0).unwrap();
        assert_relative_eq!(near.sqrt_factor, 0.75f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(
            near.repulsion_term / near.attraction_term,
            1.0 / 0.75f64.sqrt(),
            max_relative = 1e-12
        );

        assert!(matches!(
            fifth_interaction_force(&k, l, l, 1.0, 0.0),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn angular_mass() {
        assert_eq!(angular_wave_mass(3.0, 0.0, 1.0).unwrap(), 3.0);
        let gamma = 1.0 / 0.75f64.sqrt();
        assert_relative_eq!(
            angular_wave_mass(1.0, 0.5, PI / 2.0).unwrap(),
            gamma,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            angular_wave_mass(1.0, 0.5, 0.0).unwrap(),
            0.577350,
            epsilon = 1e-6
        );
        assert!(angular_wave_mass(1.0, 1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn newton_ratio_is_constant(a in -3.0f64..30.0, b in -3.0f64..30.0, r in -2.0f64..12.0) {
            let k = Constants::default();
            let unit = wave_gravity_force(&k, &MassPair::new(&k, 1.0, 1.0, 1.0).unwrap()).unwrap().ratio;
            let pair = MassPair::new(&k, 10f64.powf(a), 10f64.powf(b), 10f64.powf(r)).unwrap();
            let rep = wave_gravity_force(&k, &pair).unwrap();
            prop_assert!((rep.ratio / unit - 1.0).abs() < 1e-12);
            prop_assert!(rep.ratio > 0.998 && rep.ratio < 1.002);
        }

        #[test]
        fn deficit_decreasing(e1 in -83.0f64..100.0, step in 0.01f64..5.0) {
            let k = Constants::default();
            let l1 = 10f64.powf(e1).max(k.terminal_length());
            let a = terminal_report(&k, l1).unwrap();
            let b = terminal_report(&k, l1 * 10f64.powf(step)).unwrap();
            prop_assert!(b.log10_beta_deficit < a.log10_beta_deficit);
            prop_assert!(b.beta_deficit <= a.beta_deficit);
        }
    }
}
