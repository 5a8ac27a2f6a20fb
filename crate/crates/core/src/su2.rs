//! SU(2) group elements as unit quaternions, and class functions on SU(2).
//!
//! A quaternion q = w + xi + yj + zk with |q| = 1 corresponds to the SU(2)
//! matrix U = w·I + i(x·σ1 + y·σ2 + z·σ3), so that
//!
//!   U = [ w+iz   y+ix ]
//!       [ -y+ix  w-iz ]
//!
//! In particular tr(U) = 2w, and the diagonal matrix diag(e^{it}, e^{-it})
//! is the quaternion (cos t, 0, 0, sin t). An element with eigenvalue angle
//! t about a unit axis n is (cos t, sin t · n); conjugation by g rotates the
//! vector part by twice the angle of g.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance on the commutator norm when reading off a commuting
/// pair's angles.
pub const TOL_COMMUTE: f64 = 1e-8;

/// An SU(2) element stored as a unit quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2 {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A raw (uncanonicalized) pair of holonomy angles. The meridional angle is
/// `alpha`, the longitudinal angle `beta`; both are plain radians and carry
/// the usual ambiguities (2π shifts, simultaneous negation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnglePair {
    pub alpha: f64,
    pub beta: f64,
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const MINUS_IDENTITY: Su2 = Su2 {
        w: -1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Builds an element from raw components, renormalizing to unit length.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Su2 {
        Su2 { w, x, y, z }.normalized()
    }

    /// The element with eigenvalue angle `t` about the unit vector `axis`:
    /// (cos t, sin t · axis). Its trace is 2 cos t.
    pub fn from_axis_angle(axis: [f64; 3], t: f64) -> Result<Su2> {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n < 1e-12 {
            return Err(Error::ZeroAxis);
        }
        let (s, c) = t.sin_cos();
        Ok(Su2::new(
            c,
            s * axis[0] / n,
            s * axis[1] / n,
            s * axis[2] / n,
        ))
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(&self) -> Su2 {
        let n = self.norm();
        if n < 1e-30 {
            return Su2::IDENTITY;
        }
        Su2 {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    /// Group product, renormalized.
    pub fn mul(&self, rhs: &Su2) -> Su2 {
        Su2 {
            w: self.w * rhs.w - self.x * rhs.x - self.y * rhs.y - self.z * rhs.z,
            x: self.w * rhs.x + self.x * rhs.w + self.y * rhs.z - self.z * rhs.y,
            y: self.w * rhs.y - self.x * rhs.z + self.y * rhs.w + self.z * rhs.x,
            z: self.w * rhs.z + self.x * rhs.y - self.y * rhs.x + self.z * rhs.w,
        }
        .normalized()
    }

    /// Inverse (= quaternion conjugate on the unit sphere).
    pub fn inverse(&self) -> Su2 {
        Su2 {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Conjugation g · self · g^{-1}.
    pub fn conjugated_by(&self, g: &Su2) -> Su2 {
        g.mul(self).mul(&g.inverse())
    }

    /// tr(U) = 2w.
    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    /// Eigenvalue angle in [0, π]: U ~ diag(e^{it}, e^{-it}) with t = angle.
    pub fn angle(&self) -> f64 {
        self.w.clamp(-1.0, 1.0).acos()
    }

    /// Length of the vector part (= sin of the angle).
    pub fn vector_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Rotation axis, or `None` for central elements (±1).
    pub fn axis(&self) -> Option<[f64; 3]> {
        let n = self.vector_norm();
        if n < 1e-12 {
            return None;
        }
        Some([self.x / n, self.y / n, self.z / n])
    }

    pub fn is_central(&self, tol: f64) -> bool {
        self.vector_norm() <= tol
    }

    /// Euclidean distance between the two quaternions (4-vector norm of the
    /// difference). This is the norm used for commutators and residuals.
    pub fn dist(&self, rhs: &Su2) -> f64 {
        let dw = self.w - rhs.w;
        let dx = self.x - rhs.x;
        let dy = self.y - rhs.y;
        let dz = self.z - rhs.z;
        (dw * dw + dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// ‖uv − vu‖; zero iff the pair commutes (shares an axis or is central).
    pub fn commutator_norm(&self, rhs: &Su2) -> f64 {
        // Products are formed without renormalization so the norm is the
        // honest 4-vector difference.
        let uv = raw_mul(self, rhs);
        let vu = raw_mul(rhs, self);
        uv.dist(&vu)
    }

    pub fn components(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

fn raw_mul(a: &Su2, b: &Su2) -> Su2 {
    Su2 {
        w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    }
}

/// The quaternion whose conjugation action rotates unit vector `from` onto
/// unit vector `to` (half-angle construction).
pub fn rotation_between(from: [f64; 3], to: [f64; 3]) -> Su2 {
    let dot = from[0] * to[0] + from[1] * to[1] + from[2] * to[2];
    let cross = [
        from[1] * to[2] - from[2] * to[1],
        from[2] * to[0] - from[0] * to[2],
        from[0] * to[1] - from[1] * to[0],
    ];
    if dot < -1.0 + 1e-12 {
        // Antipodal: rotate by π about any axis perpendicular to `from`.
        let perp = if from[0].abs() < 0.9 {
            [0.0, from[2], -from[1]]
        } else {
            [from[2], 0.0, -from[0]]
        };
        let n = (perp[0] * perp[0] + perp[1] * perp[1] + perp[2] * perp[2]).sqrt();
        return Su2::new(0.0, perp[0] / n, perp[1] / n, perp[2] / n);
    }
    Su2::new(1.0 + dot, cross[0], cross[1], cross[2])
}

/// Reads off the angles (α, β) of a commuting pair: after one common
/// conjugation, `ha` ~ diag(e^{iα}, e^{-iα}) and `hb` ~ diag(e^{iβ}, e^{-iβ}).
/// The result is raw, defined up to 2π shifts and simultaneous negation.
///
/// When one element is central its partner's axis is used; when both are
/// central the axis is immaterial and both angles are 0 or π.
pub fn commuting_angles(ha: &Su2, hb: &Su2, tol: f64) -> Result<AnglePair> {
    let norm = ha.commutator_norm(hb);
    if norm > tol {
        return Err(Error::NonCommuting { norm, tol });
    }
    let central_tol = 1e-9;
    let axis = ha
        .axis()
        .filter(|_| !ha.is_central(central_tol))
        .or_else(|| hb.axis().filter(|_| !hb.is_central(central_tol)));
    match axis {
        None => Ok(AnglePair {
            alpha: ha.angle(),
            beta: hb.angle(),
        }),
        Some(n) => {
            // Signed angle of u about n: atan2(v·n, w). For ha this equals
            // angle() since its vector part is sin(α)·n with sin α ≥ 0.
            let signed = |u: &Su2| -> f64 {
                let proj = u.x * n[0] + u.y * n[1] + u.z * n[2];
                proj.atan2(u.w)
            };
            Ok(AnglePair {
                alpha: signed(ha),
                beta: signed(hb),
            })
        }
    }
}

/// A class function on SU(2), determined by a finite sine series
/// g(t) = Σ c_k sin(kt) together with the even antiderivative
/// f(t) = offset + Σ (c_k/k)(1 − cos kt), so f' = g. The value on a group
/// element depends only on its eigenvalue angle: φ(U) = f(angle(U)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFunction {
    /// Sine coefficients c_1..c_K of g.
    pub fourier_sine_coeffs: Vec<f64>,
    /// Additive constant of f (irrelevant to critical-point loci).
    pub constant_offset: f64,
}

impl ClassFunction {
    /// Builds the class function whose f satisfies f' = g for
    /// g(t) = Σ c_k sin(kt). Offset zero.
    pub fn from_sine_coeffs(coeffs: &[f64]) -> ClassFunction {
        ClassFunction {
            fourier_sine_coeffs: coeffs.to_vec(),
            constant_offset: 0.0,
        }
    }

    pub fn zero() -> ClassFunction {
        ClassFunction::from_sine_coeffs(&[])
    }

    /// g(t) = Σ c_k sin(kt); odd and 2π-periodic by construction.
    pub fn g(&self, t: f64) -> f64 {
        self.fourier_sine_coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * ((i + 1) as f64 * t).sin())
            .sum()
    }

    /// f(t) = offset + Σ (c_k/k)(1 − cos kt); even, 2π-periodic, f' = g.
    pub fn f(&self, t: f64) -> f64 {
        self.constant_offset
            + self
                .fourier_sine_coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let k = (i + 1) as f64;
                    c / k * (1.0 - (k * t).cos())
                })
                .sum::<f64>()
    }

    /// φ(U) = f(angle(U)); conjugation-invariant since it depends only on w.
    pub fn eval(&self, u: &Su2) -> f64 {
        self.f(u.angle())
    }

    /// Σ k |c_k|, a bound on |g'|.
    pub fn derivative_bound(&self) -> f64 {
        self.fourier_sine_coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i + 1) as f64 * c.abs())
            .sum()
    }

    /// Σ |c_k|, a bound on |g|.
    pub fn sup_norm_bound(&self) -> f64 {
        self.fourier_sine_coeffs.iter().map(|c| c.abs()).sum()
    }
}
