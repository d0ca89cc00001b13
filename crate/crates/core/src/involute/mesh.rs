//! Triangulated spherical-involute surface and ASCII OBJ export.
//!
//! Vertex `(i, j)` sits at unwound angle `θ_i = (i+1)·2π/S` for
//! `i < S·turns` and helix angle `μ_j` evenly spaced on `[−π/4, π/4]`:
//!
//! ```text
//! p = base(θ) + r0·θ·tangent(θ) + (0, 0, χ·r0·θ·tan μ)
//! ```
//!
//! so the middle row is the plane involute and the outer rows lie on the two
//! mirrored helicoid families. Rows are stored one after another (`j` major).
//! Each cell between neighbouring rows and columns becomes two triangles
//! `(a, b, d)` and `(a, d, c)` with `a = (i, j)`, `b = (i+1, j)`,
//! `c = (i, j+1)`, `d = (i+1, j+1)`, giving `2·(S·turns − 1)·(M − 1)` faces.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};
use std::io::Write;

use nalgebra::{Point3, Vector3};

use super::InvoluteSpec;
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 10_000_000;

/// Faces smaller than this fraction of `r0²` count as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-18;

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Point3<f64>>,
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn triangle_area(&self, t: &[usize; 3]) -> f64 {
        let [a, b, c] = t.map(|i| self.vertices[i]);
        (b - a).cross(&(c - a)).norm() / 2.0
    }

    pub fn normal(&self, t: &[usize; 3]) -> Vector3<f64> {
        let [a, b, c] = t.map(|i| self.vertices[i]);
        (b - a).cross(&(c - a)).normalize()
    }

    /// Checks index ranges and rejects faces below `DEGENERATE_AREA · scale²`.
    pub fn validate(&self, scale: f64) -> Result<()> {
        let n = self.vertices.len();
        let floor = DEGENERATE_AREA * scale * scale;
        for (f, t) in self.triangles.iter().enumerate() {
            if t.iter().any(|&i| i >= n) {
                return Err(Error::domain(format!(
                    "face {f} references a missing vertex"
                )));
            }
            if !(self.triangle_area(t) > floor) {
                return Err(Error::domain(format!("face {f} is degenerate")));
            }
        }
        Ok(())
    }

    /// Writes `v x y z` lines (coordinates divided by `scale`) then `f i j k`
    /// lines with 1-based indices. `comments` are emitted first, each prefixed
    /// with `# `.
    pub fn write_obj<W: Write>(&self, out: &mut W, scale: f64, comments: &[String]) -> Result<()> {
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "# scale_m = {scale:e}")?;
        for v in &self.vertices {
            writeln!(out, "v {} {} {}", v.x / scale, v.y / scale, v.z / scale)?;
        }
        for t in &self.triangles {
            writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        Ok(())
    }
}

/// Helix angles of the `mu_steps` rows.
pub fn mu_rows(mu_steps: usize) -> Vec<f64> {
    let last = (mu_steps - 1) as f64;
    (0..mu_steps)
        .map(|j| {
            // the centre row is set to exactly zero to join the plane involute
            if 2 * j + 1 == mu_steps {
                0.0
            } else {
                -FRAC_PI_4 + FRAC_PI_2 * j as f64 / last
            }
        })
        .collect()
}

/// Builds the surface for `turns = k_max + 1` turns of `samples_per_turn`
/// columns each and `mu_steps` rows (odd, at least 3).
pub fn build_mesh(spec: &InvoluteSpec, mu_steps: usize) -> Result<Mesh> {
    let spec = spec.validated()?;
    if spec.samples_per_turn < 8 {
        return Err(Error::domain(format!(
            "samples_per_turn must be at least 8, got {}",
            spec.samples_per_turn
        )));
    }
    if mu_steps < 3 || mu_steps.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "mu_steps must be odd and at least 3, got {mu_steps}"
        )));
    }
    let columns = (spec.k_max as usize + 1)
        .checked_mul(spec.samples_per_turn)
        .ok_or_else(|| Error::Resource("mesh size overflows".into()))?;
    let count = columns.saturating_mul(mu_steps);
    if count > MAX_VERTICES {
        return Err(Error::Resource(format!(
            "{count} vertices exceed the limit of {MAX_VERTICES}"
        )));
    }

    let chi = spec.chirality.sign();
    let r0 = spec.r0;
    let step = TAU / spec.samples_per_turn as f64;
    let mut vertices = Vec::with_capacity(count);
    for mu in mu_rows(mu_steps) {
        let rise = chi * mu.tan();
        for i in 0..columns {
            let theta = (i + 1) as f64 * step;
            let (s, c) = theta.sin_cos();
            vertices.push(Point3::new(
                r0 * (theta * s + c),
                chi * r0 * (s - theta * c),
                r0 * theta * rise,
            ));
        }
    }

    let mut triangles = Vec::with_capacity(2 * (columns - 1) * (mu_steps - 1));
    for j in 0..mu_steps - 1 {
        for i in 0..columns - 1 {
            let a = j * columns + i;
            let b = a + 1;
            let c = a + columns;
            let d = c + 1;
            triangles.push([a, b, d]);
            triangles.push([a, d, c]);
        }
    }
    let mesh = Mesh {
        vertices,
        triangles,
    };
    mesh.validate(r0)?;
    Ok(mesh)
}
