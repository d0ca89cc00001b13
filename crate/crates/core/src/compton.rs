//! Two-push wave Compton pipeline.
//!
//! A photon of wavelength `λi` pushes a particle of rest wavelength `λ0` to a
//! speed `v1`, is redshifted chasing it, is diffracted through `α`, then pushes
//! the (transversely contracted) particle again to `v2` and is redshifted a
//! second time. Both Doppler stages use the chasing geometry `φ = π`.
//!
//! The run report compares the total shift against the standard Compton
//! formula `λ0·(1 − cos α)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{doppler_wavelength, rsp_push_velocity};
use crate::particle::check_beta;

/// Every intermediate of one pipeline run; field names are part of the JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComptonTrace {
    pub lambda_i: f64,
    pub lambda0: f64,
    pub alpha: f64,
    pub v1: f64,
    pub lambda_i1: f64,
    pub r: f64,
    pub lambda_e1: f64,
    pub v2: f64,
    pub lambda_i2: f64,
    pub dlambda_paper: f64,
    pub dlambda_total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComptonReport {
    #[serde(flatten)]
    pub trace: ComptonTrace,
    /// Standard shift `λ0·(1 − cos α)`.
    pub oracle_shift: f64,
    /// `(dlambda_paper − oracle)/oracle`.
    pub deviation_paper: f64,
    /// `(dlambda_total − oracle)/oracle`.
    pub deviation_total: f64,
    /// Wavelength of the component diffracted through `α` without decay.
    pub undecayed_lambda: f64,
}

/// First push speed, identical to [`rsp_push_velocity`].
pub fn stage1_velocity(lambda_i: f64, lambda0: f64) -> Result<f64> {
    rsp_push_velocity(lambda_i, lambda0)
}

/// Photon wavelength after chasing a source receding at `v1`:
/// `λi·sqrt(1−v1²)/(1−v1)`.
pub fn stage1_decay(lambda_i: f64, v1: f64) -> Result<f64> {
    check_beta(v1)?;
    doppler_wavelength(lambda_i, v1, PI)
}

/// Closest-approach radius `λi1/α`.
pub fn diffraction_radius(lambda_i1: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain(format!(
            "deflection angle must be positive, got {alpha}"
        )));
    }
    if !(lambda_i1 > 0.0) {
        return Err(Error::domain("wavelength must be positive"));
    }
    if alpha == PI / 2.0 {
        return Ok(2.0 * lambda_i1 / PI);
    }
    Ok(lambda_i1 / alpha)
}

/// The maximum-deviation expression evaluated literally as
/// `2λi²/(2·sqrt(4λi²+λ0²)) · 1/(1 − λ0·cos φ/sqrt(4λi²+λ0²))`.
///
/// The value carries the dimension of a length; it is reported as computed.
pub fn max_deflection(lambda_i: f64, lambda0: f64, phi: f64) -> Result<f64> {
    if !(lambda_i > 0.0 && lambda0 >= 0.0) {
        return Err(Error::domain("max deflection needs positive wavelengths"));
    }
    let root = (2.0 * lambda_i).hypot(lambda0);
    let denom = 1.0 - lambda0 * phi.cos() / root;
    if !(denom > 0.0) {
        return Err(Error::domain(format!(
            "denominator {denom} is not positive"
        )));
    }
    Ok(2.0 * lambda_i * lambda_i / (2.0 * root) / denom)
}

/// Transverse wavelength `λe·sqrt(1−v1²)`.
pub fn transverse_wavelength(lambda_e: f64, v1: f64) -> Result<f64> {
    check_beta(v1)?;
    Ok(lambda_e * (1.0 - v1 * v1).sqrt())
}

/// Second push speed `λe1/sqrt(4λi1² + λe1²)`.
pub fn stage2_velocity(lambda_i1: f64, lambda_e1: f64) -> Result<f64> {
    rsp_push_velocity(lambda_i1, lambda_e1)
}

/// `λi1·sqrt(1−v2²)/(1−v2)`.
pub fn stage2_decay(lambda_i1: f64, v2: f64) -> Result<f64> {
    stage1_decay(lambda_i1, v2)
}

/// Runs both pushes and fills the trace plus the oracle comparison.
pub fn run_pipeline(lambda_i: f64, lambda0: f64, alpha: f64) -> Result<ComptonReport> {
    if !(lambda_i > 0.0 && lambda0 > 0.0 && lambda_i.is_finite() && lambda0.is_finite()) {
        return Err(Error::domain("pipeline needs finite positive wavelengths"));
    }
    let v1 = stage1_velocity(lambda_i, lambda0)?;
    let lambda_i1 = stage1_decay(lambda_i, v1)?;
    let r = diffraction_radius(lambda_i1, alpha)?;
    let lambda_e1 = transverse_wavelength(lambda0, v1)?;
    let v2 = stage2_velocity(lambda_i1, lambda_e1)?;
    let lambda_i2 = stage2_decay(lambda_i1, v2)?;
    let trace = ComptonTrace {
        lambda_i,
        lambda0,
        alpha,
        v1,
        lambda_i1,
        r,
        lambda_e1,
        v2,
        lambda_i2,
        dlambda_paper: lambda_i2 - lambda_i1,
        dlambda_total: lambda_i2 - lambda_i,
    };
    let oracle = compton_shift(lambda0, alpha);
    Ok(ComptonReport {
        trace,
        oracle_shift: oracle,
        deviation_paper: (trace.dlambda_paper - oracle) / oracle,
        deviation_total: (trace.dlambda_total - oracle) / oracle,
        undecayed_lambda: lambda_i,
    })
}

/// Standard Compton shift `λ0·(1 − cos α)`.
pub fn compton_shift(lambda0: f64, alpha: f64) -> f64 {
    lambda0 * (1.0 - alpha.cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, SQRT_2};

    const L0: f64 = 2.42631e-12;

    #[test]
    fn stage_one() {
        // λ0 / sqrt(4λi² + λ0²) evaluated by hand
        assert_relative_eq!(
            stage1_velocity(1e-10, L0).unwrap(),
            0.0121306,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            stage1_velocity(L0 / 2.0, L0).unwrap(),
            FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
        assert_eq!(stage1_velocity(f64::INFINITY, L0).unwrap(), 0.0);
        assert_eq!(stage1_decay(1e-10, 0.0).unwrap(), 1e-10);
        let v1 = stage1_velocity(1e-10, L0).unwrap();
        assert_relative_eq!(
            stage1_decay(1e-10, v1).unwrap(),
            1.012205e-10,
            max_relative = 1e-6
        );
        // sqrt(1/2)/(1 − 1/sqrt 2) = 1 + sqrt 2
        assert_relative_eq!(
            stage1_decay(L0 / 2.0, FRAC_1_SQRT_2).unwrap(),
            L0 * (1.0 + SQRT_2) / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn radius() {
        assert_relative_eq!(
            diffraction_radius(1.01220e-10, FRAC_PI_2).unwrap(),
            6.4434e-11,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            diffraction_radius(L0, 2.0 * PI).unwrap(),
            L0 / (2.0 * PI),
            max_relative = 1e-15
        );
        assert_eq!(
            diffraction_radius(1.0, 0.5).unwrap(),
            2.0 * diffraction_radius(1.0, 1.0).unwrap()
        );
        assert!(diffraction_radius(1.0, 0.0).is_err());
        assert!(diffraction_radius(1.0, -1.0).is_err());
    }

    #[test]
    fn max_deflection_literal_form() {
        let li = 1e-10;
        let plain = 2.0 * li * li / (2.0 * (4.0 * li * li + L0 * L0).sqrt());
        assert_relative_eq!(
            max_deflection(li, L0, FRAC_PI_2).unwrap(),
            plain,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            max_deflection(li, 1e-30, 0.3).unwrap(),
            li / 2.0,
            max_relative = 1e-15
        );
        // plain = 4.999632e-11, 1/(1 − 0.01213066) = 1.0122796
        assert_relative_eq!(
            max_deflection(li, L0, 0.0).unwrap(),
            5.061026e-11,
            max_relative = 1e-6
        );
    }

    #[test]
    fn transverse_and_stage_two() {
        assert_eq!(transverse_wavelength(L0, 0.0).unwrap(), L0);
        let v1 = stage1_velocity(1e-10, L0).unwrap();
        assert_relative_eq!(
            transverse_wavelength(1.0, v1).unwrap(),
            0.9999264,
            max_relative = 1e-7
        );
        assert_relative_eq!(
            transverse_wavelength(1.0, FRAC_1_SQRT_2).unwrap(),
            FRAC_1_SQRT_2,
            max_relative = 1e-15
        );

        assert_relative_eq!(
            stage2_velocity(1.01220e-10, 2.42613e-12).unwrap(),
            0.0119835,
            max_relative = 1e-5
        );
        assert_eq!(stage2_velocity(f64::INFINITY, 1.0).unwrap(), 0.0);
        assert_eq!(stage2_decay(1.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(
            stage2_decay(1.01220e-10, 0.0119835).unwrap(),
            1.02440e-10,
            max_relative = 1e-5
        );
    }

    #[test]
    fn electron_x_ray_run() {
        let rep = run_pipeline(1e-10, 2.426310238683092e-12, FRAC_PI_2).unwrap();
        assert_relative_eq!(rep.trace.dlambda_total, 2.44085e-12, max_relative = 1e-5);
        assert_relative_eq!(rep.oracle_shift, 2.42631e-12, max_relative = 1e-5);
        assert!(rep.deviation_total.abs() < 0.01);
        assert_eq!(
            rep.trace.dlambda_paper,
            rep.trace.lambda_i2 - rep.trace.lambda_i1
        );
        assert_eq!(rep.undecayed_lambda, 1e-10);
    }

    #[test]
    fn heavy_scatterer_is_rigid() {
        let rep = run_pipeline(1e-10, 1e-40, FRAC_PI_2).unwrap();
        assert!(rep.trace.v1 < 1e-29 && rep.trace.v2 < 1e-29);
        assert!(rep.trace.dlambda_total < 1e-39);
    }

    #[test]
    fn soft_photon_limit() {
        let rep = run_pipeline(1e-6, L0, FRAC_PI_2).unwrap();
        let s1 = rep.trace.lambda_i1 - rep.trace.lambda_i;
        // each stage ≈ λ0/2 + O(λ0²/λi); subtraction of near-equal lengths costs ~1e-10
        assert_relative_eq!(s1, L0 / 2.0, max_relative = 1e-4);
        assert_relative_eq!(rep.trace.dlambda_total, L0, max_relative = 1e-4);
    }

    #[test]
    fn deterministic() {
        let a = run_pipeline(3.3e-11, L0, 1.1).unwrap();
        let b = run_pipeline(3.3e-11, L0, 1.1).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    proptest! {
        #[test]
        fn ordering_invariants(li_exp in -14.0f64..-6.0, l0_exp in -16.0f64..-10.0, alpha in 0.01f64..6.2) {
            let rep = run_pipeline(10f64.powf(li_exp), 10f64.powf(l0_exp), alpha).unwrap();
            let t = rep.trace;
            prop_assert!(t.v1 > 0.0 && t.v1 < 1.0 && t.v2 > 0.0 && t.v2 < 1.0);
            prop_assert!(t.lambda_i < t.lambda_i1 && t.lambda_i1 < t.lambda_i2);
        }

        #[test]
        fn shift_monotone_in_rest_wavelength(l0_exp in -14.0f64..-11.0, s in 1.01f64..3.0) {
            let li = 1e-10;
            let a = run_pipeline(li, 10f64.powf(l0_exp), FRAC_PI_2).unwrap().trace.dlambda_total;
            let b = run_pipeline(li, s * 10f64.powf(l0_exp), FRAC_PI_2).unwrap().trace.dlambda_total;
            prop_assert!(b > a);
        }
    }
}
