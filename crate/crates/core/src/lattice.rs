//! Primitive integral vectors of the hypercubic space-time lattice.
//!
//! A perturbation of the lattice travels with a speed fixed by an integer
//! 4-vector `(t, x, y, z)` satisfying `t² − x² − y² − z² = 1`; the speed is
//! the spatial norm over `t`.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_T: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticeVector {
    t: i64,
    x: i64,
    y: i64,
    z: i64,
}

impl LatticeVector {
    /// Builds a vector, checking the invariant exactly in integer arithmetic.
    pub fn new(t: i64, x: i64, y: i64, z: i64) -> Result<Self> {
        if !(1..=MAX_T).contains(&t) {
            return Err(Error::domain(format!(
                "time component must lie in 1..={MAX_T}, got {t}"
            )));
        }
        if x.abs() > t || y.abs() > t || z.abs() > t {
            return Err(Error::domain(
                "spatial component exceeds the time component",
            ));
        }
        if t * t - x * x - y * y - z * z != 1 {
            return Err(Error::domain(format!(
                "({t},{x},{y},{z}) does not satisfy t²−x²−y²−z²=1"
            )));
        }
        Ok(LatticeVector { t, x, y, z })
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn spatial(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    /// `x² + y² + z²`, always `t² − 1`.
    pub fn spatial_norm_sq(&self) -> i64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn speed(&self) -> f64 {
        perturbation_speed(self)
    }

    pub fn bound_check(&self) -> Result<SchildBound> {
        schild_bound_check(self.spatial())
    }
}

/// All vectors with `1 ≤ t ≤ t_max`, ordered lexicographically by `(t, x, y, z)`.
pub fn enumerate_vectors(t_max: i64) -> Result<Vec<LatticeVector>> {
    if !(1..=MAX_T).contains(&t_max) {
        return Err(Error::domain(format!(
            "t_max must lie in 1..={MAX_T}, got {t_max}"
        )));
    }
    let mut out = Vec::new();
    for t in 1..=t_max {
        push_shell(t, &mut out);
    }
    Ok(out)
}

/// Vectors of a single time slice `t`, in canonical order.
pub fn shell(t: i64) -> Result<Vec<LatticeVector>> {
    if !(1..=MAX_T).contains(&t) {
        return Err(Error::domain(format!("t must lie in 1..={MAX_T}, got {t}")));
    }
    let mut out = Vec::new();
    push_shell(t, &mut out);
    Ok(out)
}

fn push_shell(t: i64, out: &mut Vec<LatticeVector>) {
    let n = t * t - 1;
    for x in -t..=t {
        let rx = n - x * x;
        if rx < 0 {
            continue;
        }
        for y in -t..=t {
            let rem = rx - y * y;
            if rem < 0 {
                continue;
            }
            if let Some(z) = exact_sqrt(rem) {
                if z == 0 {
                    out.push(LatticeVector { t, x, y, z: 0 });
                } else {
                    out.push(LatticeVector { t, x, y, z: -z });
                    out.push(LatticeVector { t, x, y, z });
                }
            }
        }
    }
}

fn exact_sqrt(n: i64) -> Option<i64> {
    let r = (n as f64).sqrt().round() as i64;
    // rounding of the float root is at most one off for n < 2^52
    (r.saturating_sub(1)..=r + 1).find(|c| *c >= 0 && c * c == n)
}

/// Perturbation speed as a fraction of `c`: `sqrt(x²+y²+z²)/t`.
pub fn perturbation_speed(v: &LatticeVector) -> f64 {
    (v.spatial_norm_sq() as f64).sqrt() / v.t as f64
}

/// Outcome of the double inequality `|s| ≤ x+y+z ≤ sqrt(3)·|s|` on the
/// spatial components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SchildBound {
    /// Both inequalities hold.
    pub holds: bool,
    /// The lower bound `sqrt(x²+y²+z²) < x+y+z` holds strictly.
    pub lower_strict: bool,
    /// The upper bound `x+y+z < sqrt(3(x²+y²+z²))` holds strictly.
    pub upper_strict: bool,
}

/// Checks the spatial-norm bounds on `|x|, |y|, |z|`.
///
/// Comparisons are done on squares in integer arithmetic, so equality cases
/// are detected exactly.
pub fn schild_bound_check(spatial: [i64; 3]) -> Result<SchildBound> {
    let [x, y, z] = spatial.map(i64::abs);
    if x == 0 && y == 0 && z == 0 {
        return Err(Error::domain(
            "spatial part is zero; the bound is undefined at rest",
        ));
    }
    let norm_sq = (x * x + y * y + z * z) as i128;
    let sum = (x + y + z) as i128;
    let sum_sq = sum * sum;
    let lower = norm_sq.cmp(&sum_sq);
    let upper = sum_sq.cmp(&(3 * norm_sq));
    use std::cmp::Ordering::*;
    Ok(SchildBound {
        holds: lower != Greater && upper != Greater,
        lower_strict: lower == Less,
        upper_strict: upper == Less,
    })
}
