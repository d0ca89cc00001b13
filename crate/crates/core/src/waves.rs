//! Stationary plane-wave description of a moving source along its axis of
//! motion, and finite-difference residuals of the Hamilton-Jacobi and
//! Klein-Gordon equations on the phase wave `cos(ωt − βKx)`.
//!
//! Grids use a spatial step `h` and a temporal step `h/c`, so both
//! directions are resolved equally in light-travel units.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::particle::check_beta;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct WaveField {
    pub lambda0: f64,
    pub beta: f64,
    pub omega0: f64,
    pub K0: f64,
    #[serde(skip)]
    c: f64,
}

impl WaveField {
    pub fn new(k: &Constants, lambda0: f64, beta: f64) -> Result<Self> {
        if !(lambda0 > 0.0 && lambda0.is_finite()) {
            return Err(Error::domain(format!(
                "rest wavelength must be positive, got {lambda0}"
            )));
        }
        check_beta(beta)?;
        let k0 = 2.0 * PI / lambda0;
        Ok(WaveField {
            lambda0,
            beta,
            omega0: k.c() * k0,
            K0: k0,
            c: k.c(),
        })
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.beta * self.beta).sqrt()
    }

    /// Boosted angular frequency `γ·ω0`.
    pub fn omega(&self) -> f64 {
        self.gamma() * self.omega0
    }

    /// Boosted wave number `γ·K0`.
    pub fn wave_number(&self) -> f64 {
        self.gamma() * self.K0
    }

    /// `k0 = ω0/c`.
    pub fn k0(&self) -> f64 {
        self.omega0 / self.c
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega0
    }

    /// Phase `S = ωt − βKx`.
    pub fn phase(&self, x: f64, t: f64) -> f64 {
        self.omega() * t - self.beta * self.wave_number() * x
    }

    /// Phase wave `cos(S)`; `negative` selects the `cos(−ωt − βKx)` branch.
    pub fn phase_wave(&self, x: f64, t: f64, negative: bool) -> f64 {
        let w = if negative {
            -self.omega()
        } else {
            self.omega()
        };
        (w * t - self.beta * self.wave_number() * x).cos()
    }
}

/// `cos(K0·x)·cos(ω0·t)`.
pub fn rest_field(field: &WaveField, x: f64, t: f64) -> f64 {
    (field.K0 * x).cos() * (field.omega0 * t).cos()
}

/// `cos(Kx − βωt)·cos(ωt − βKx)` with `ω = γω0`, `K = γK0`.
pub fn boosted_field(field: &WaveField, x: f64, t: f64) -> f64 {
    let (w, kk, b) = (field.omega(), field.wave_number(), field.beta);
    (kk * x - b * w * t).cos() * (w * t - b * kk * x).cos()
}

/// Speed of the group (first) factor, `βω/K = βc`.
pub fn group_speed(field: &WaveField) -> f64 {
    field.beta * field.omega() / field.wave_number()
}

/// Speed of the phase (second) factor, `ω/(βK) = c/β`; infinite at rest.
pub fn phase_speed(field: &WaveField) -> f64 {
    field.omega() / (field.beta * field.wave_number())
}

/// Rectangular evaluation window. Time samples are spaced `h/c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub h: f64,
}

impl Grid {
    /// A window of `wavelengths` rest wavelengths in space and as many rest
    /// periods in time, starting at the origin.
    pub fn covering(field: &WaveField, wavelengths: f64, h: f64) -> Self {
        Grid {
            x_min: 0.0,
            x_max: wavelengths * field.lambda0,
            t_min: 0.0,
            t_max: wavelengths * field.period(),
            h,
        }
    }

    pub fn with_step(&self, h: f64) -> Self {
        Grid { h, ..*self }
    }

    fn validate(&self, field: &WaveField) -> Result<(usize, usize)> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::domain(format!(
                "grid step must be positive, got {}",
                self.h
            )));
        }
        let span = self.x_max - self.x_min;
        // the window must hold at least three rest wavelengths (with a little slack
        // for round-off in callers that build it as 3·λ0)
        if !(span >= 3.0 * field.lambda0 * (1.0 - 1e-12)) || !(self.t_max > self.t_min) {
            return Err(Error::domain(
                "grid must span at least 3 wavelengths and a positive time range",
            ));
        }
        let nx = (span / self.h).floor() as usize + 1;
        let nt = ((self.t_max - self.t_min) * field.c / self.h).floor() as usize + 1;
        if nx < 3 || nt < 3 {
            return Err(Error::domain("grid has fewer than 3 points along an axis"));
        }
        if nx.saturating_mul(nt) > 50_000_000 {
            return Err(Error::Resource(format!(
                "grid of {nx}×{nt} points is too large"
            )));
        }
        Ok((nx, nt))
    }

    /// Interior points, i.e. points with a neighbour on each side.
    fn interior(&self, field: &WaveField) -> Result<impl Iterator<Item = (f64, f64)>> {
        let (nx, nt) = self.validate(field)?;
        let h = self.h;
        let dt = h / field.c;
        let (x0, t0) = (self.x_min, self.t_min);
        Ok((1..nt - 1)
            .flat_map(move |j| (1..nx - 1).map(move |i| (x0 + i as f64 * h, t0 + j as f64 * dt))))
    }
}

/// Max over the grid of `|(1/c²)(∂S/∂t)² − (∂S/∂x)² − k0²|`, derivatives by
/// central differences of `S = ωt − βKx`.
pub fn hamilton_jacobi_residual(field: &WaveField, grid: &Grid) -> Result<f64> {
    let h = grid.h;
    let dt = h / field.c;
    let c2 = field.c * field.c;
    let k0sq = field.k0() * field.k0();
    let mut worst = 0.0f64;
    for (x, t) in grid.interior(field)? {
        let st = (field.phase(x, t + dt) - field.phase(x, t - dt)) / (2.0 * dt);
        let sx = (field.phase(x + h, t) - field.phase(x - h, t)) / (2.0 * h);
        let r = st * st / c2 - sx * sx - k0sq;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// Hamilton-Jacobi residual from the exact derivatives `∂S/∂t = ω`, `∂S/∂x = −βK`.
pub fn hamilton_jacobi_analytic(field: &WaveField) -> f64 {
    let st = field.omega();
    let sx = -field.beta * field.wave_number();
    st * st / (field.c * field.c) - sx * sx - field.k0() * field.k0()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub h: f64,
    pub residual_h: f64,
    pub residual_half_h: f64,
    /// `log2(residual_h / residual_half_h)`.
    pub order: f64,
}

impl ConvergenceReport {
    fn from_pair(h: f64, coarse: f64, fine: f64) -> Self {
        ConvergenceReport {
            h,
            residual_h: coarse,
            residual_half_h: fine,
            order: (coarse / fine).log2(),
        }
    }
}

/// Max of `|−∂²ψ/∂x² + (1/c²)∂²ψ/∂t² + k0²ψ|` for the given branch of the
/// phase wave, by second-order central differences.
pub fn klein_gordon_max(field: &WaveField, grid: &Grid, negative: bool) -> Result<f64> {
    let h = grid.h;
    let dt = h / field.c;
    let c2 = field.c * field.c;
    let k0sq = field.k0() * field.k0();
    let psi = |x: f64, t: f64| field.phase_wave(x, t, negative);
    let mut worst = 0.0f64;
    for (x, t) in grid.interior(field)? {
        let centre = psi(x, t);
        let dxx = (psi(x + h, t) - 2.0 * centre + psi(x - h, t)) / (h * h);
        let dtt = (psi(x, t + dt) - 2.0 * centre + psi(x, t - dt)) / (dt * dt);
        let r = -dxx + dtt / c2 + k0sq * centre;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// Klein-Gordon residual at steps `h` and `h/2` with the empirical order.
pub fn klein_gordon_residual(field: &WaveField, grid: &Grid) -> Result<ConvergenceReport> {
    let coarse = klein_gordon_max(field, grid, false)?;
    let fine = klein_gordon_max(field, &grid.with_step(grid.h / 2.0), false)?;
    Ok(ConvergenceReport::from_pair(grid.h, coarse, fine))
}

/// Hamilton-Jacobi residual at steps `h` and `h/2` with the empirical order.
pub fn hamilton_jacobi_convergence(field: &WaveField, grid: &Grid) -> Result<ConvergenceReport> {
    let coarse = hamilton_jacobi_residual(field, grid)?;
    let fine = hamilton_jacobi_residual(field, &grid.with_step(grid.h / 2.0))?;
    Ok(ConvergenceReport::from_pair(grid.h, coarse, fine))
}

/// Klein-Gordon residual from exact second derivatives: `β²K² − ω²/c² + k0²`.
pub fn klein_gordon_analytic(field: &WaveField) -> f64 {
    let bk = field.beta * field.wave_number();
    let w = field.omega() / field.c;
    bk * bk - w * w + field.k0() * field.k0()
}
