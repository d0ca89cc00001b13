//! Physical-constant registry.
//!
//! Defaults are the CODATA 2018 exact/recommended values for `h`, `c` and `G`,
//! plus the terminal length `L`, the effective-wavefront coefficient `N_coeff`
//! and the `alpha_inv` factor used by the wave-gravity calibration.
//!
//! A registry can only be altered by loading a constants file: flat UTF-8
//! text, one `name = value` per line, `#` starts a comment. Absent keys keep
//! their defaults; unknown keys and non-positive values are rejected.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Planck constant (J·s), CODATA 2018 exact.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum (m/s), exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Newtonian constant of gravitation (m³·kg⁻¹·s⁻²), CODATA 2018.
pub const GRAVITATION: f64 = 6.674_30e-11;
/// Terminal discrete length (m).
pub const TERMINAL_LENGTH: f64 = 4.884_356e-84;
/// Dimensionless effective-wavefront coefficient; `N = N_coeff / L`.
pub const N_COEFF: f64 = 1.877_755_7e14;
/// Inverse fine-structure factor appearing in the `N` decomposition.
pub const ALPHA_INV: f64 = 137.024;

/// Electron rest mass (kg), CODATA 2018.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Proton rest mass (kg), CODATA 2018.
pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;
/// Elementary charge (C), exact.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Name of the environment variable that points to a default constants file.
pub const CONSTANTS_ENV: &str = "WFT_LAB_CONSTANTS";

const KEYS: [&str; 6] = ["h", "c", "G", "L", "N_coeff", "alpha_inv"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    h: f64,
    c: f64,
    #[serde(rename = "G")]
    g: f64,
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "N_coeff")]
    n_coeff: f64,
    alpha_inv: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            h: PLANCK,
            c: SPEED_OF_LIGHT,
            g: GRAVITATION,
            l: TERMINAL_LENGTH,
            n_coeff: N_COEFF,
            alpha_inv: ALPHA_INV,
        }
    }
}

impl Constants {
    /// Action quantum `h` (J·s).
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Light speed `c` (m/s).
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Newtonian constant `G`.
    pub fn g(&self) -> f64 {
        self.g
    }

    /// Terminal length `L` (m).
    pub fn terminal_length(&self) -> f64 {
        self.l
    }

    pub fn n_coeff(&self) -> f64 {
        self.n_coeff
    }

    pub fn alpha_inv(&self) -> f64 {
        self.alpha_inv
    }

    /// Effective-wavefront number `N = N_coeff / L`, with `1/L` read as the
    /// count of terminal lengths per metre.
    pub fn wavefront_number(&self) -> f64 {
        self.n_coeff / self.l
    }

    /// Parses a constants file body. Keys not present keep their defaults.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut out = Constants::default();
        let mut seen = [false; KEYS.len()];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                message: format!("expected `name = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::Config {
                    line: line_no,
                    message: format!("unknown constant `{key}`"),
                })?;
            if seen[slot] {
                return Err(Error::Config {
                    line: line_no,
                    message: format!("constant `{key}` given twice"),
                });
            }
            seen[slot] = true;
            let parsed: f64 = value.parse().map_err(|_| Error::Config {
                line: line_no,
                message: format!("`{value}` is not a number"),
            })?;
            if !(parsed.is_finite() && parsed > 0.0) {
                return Err(Error::Config {
                    line: line_no,
                    message: format!("constant `{key}` must be finite and strictly positive"),
                });
            }
            match slot {
                0 => out.h = parsed,
                1 => out.c = parsed,
                2 => out.g = parsed,
                3 => out.l = parsed,
                4 => out.n_coeff = parsed,
                _ => out.alpha_inv = parsed,
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_config_str(&text)
    }

    /// Resolves the registry for a run: an explicit path wins, then the
    /// `WFT_LAB_CONSTANTS` environment variable, then the built-in defaults.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        if let Some(p) = path {
            return Self::load(p);
        }
        match std::env::var_os(CONSTANTS_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_positive() {
        let k = Constants::default();
        for v in [
            k.h(),
            k.c(),
            k.g(),
            k.terminal_length(),
            k.n_coeff(),
            k.alpha_inv(),
        ] {
            assert!(v > 0.0);
        }
        assert_eq!(k.terminal_length(), 4.884356e-84);
    }

    #[test]
    fn partial_file_keeps_defaults() {
        let k = Constants::from_config_str("# override only G\nG = 6.67e-11   # old value\n\n")
            .unwrap();
        assert_eq!(k.g(), 6.67e-11);
        assert_eq!(k.h(), PLANCK);
        assert_eq!(k.terminal_length(), TERMINAL_LENGTH);
    }

    #[test]
    fn repeated_loads_are_identical() {
        let text = "h = 6.626e-34\nc = 3e8\nL = 1e-80\nN_coeff = 2e14\nalpha_inv = 137\n";
        let a = Constants::from_config_str(text).unwrap();
        let b = Constants::from_config_str(text).unwrap();
        assert_eq!(a.h().to_bits(), b.h().to_bits());
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_lines() {
        let err = Constants::from_config_str("h = 1\nfoo = 2\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 2, .. }));
        assert!(Constants::from_config_str("c = -1").is_err());
        assert!(Constants::from_config_str("c = 0").is_err());
        assert!(Constants::from_config_str("c 3e8").is_err());
        assert!(Constants::from_config_str("c = abc").is_err());
        assert!(Constants::from_config_str("c = 1\nc = 2").is_err());
        assert!(Constants::from_config_str("L = inf").is_err());
    }

    #[test]
    fn wavefront_number_matches_ratio() {
        let k = Constants::default();
        assert_eq!(k.wavefront_number(), N_COEFF / TERMINAL_LENGTH);
    }
}
