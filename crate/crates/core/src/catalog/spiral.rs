//! Spiral groups `S_a = {e^{t(1+ia)}}` and a numerical probe that the
//! regular linear groups act sharply transitively on `R^m \ {0}`.

use std::ops::Mul;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CatalogEntry, CatalogError};

/// The parameter `a` of the spiral group `S_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpiralParameter(f64);

impl SpiralParameter {
    pub fn new(a: f64) -> Result<Self, CatalogError> {
        if a.is_finite() {
            Ok(SpiralParameter(a))
        } else {
            Err(CatalogError::InvalidParameter(format!(
                "spiral parameter {a} is not finite"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn element(self, t: f64) -> Complex64 {
        spiral_element(self.0, t)
    }
}

/// `e^{t(1+ia)}`.
pub fn spiral_element(a: f64, t: f64) -> Complex64 {
    Complex64::from_polar(t.exp(), a * t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn inverse(&self) -> Self {
        let n2 = self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z;
        self.conj().scale(1.0 / n2)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        Quaternion::new(
            self.w - other.w,
            self.x - other.x,
            self.y - other.y,
            self.z - other.z,
        )
        .norm()
    }
}

impl From<Complex64> for Quaternion {
    fn from(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// How a regular group sits in `GL_m R`: every element is `x ↦ h·x·s`
/// with `h` in a compact part and `s = e^{t(1+ia)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeKind {
    /// `R^* = {±1}·R_>`.
    Real,
    /// `C^* = U(1)·R_>`.
    Complex,
    /// `H^* = Sp(1)·R_>`.
    Quaternion,
    /// `Sp(1)·S_a`.
    QuaternionSpiral,
}

impl ProbeKind {
    pub fn dimension(self) -> usize {
        match self {
            ProbeKind::Real => 1,
            ProbeKind::Complex => 2,
            ProbeKind::Quaternion | ProbeKind::QuaternionSpiral => 4,
        }
    }

    fn spiral(self, a: f64) -> f64 {
        match self {
            ProbeKind::QuaternionSpiral => a,
            _ => 0.0,
        }
    }

    fn in_compact_part(self, h: &Quaternion, tol: f64) -> bool {
        let unit = (h.norm() - 1.0).abs() <= tol;
        match self {
            ProbeKind::Real => unit && h.x.abs() <= tol && h.y.abs() <= tol && h.z.abs() <= tol,
            ProbeKind::Complex => unit && h.y.abs() <= tol && h.z.abs() <= tol,
            ProbeKind::Quaternion | ProbeKind::QuaternionSpiral => unit,
        }
    }
}

/// The unit part `h` for a candidate `t`, if `(h, t)` moves `1` to `v`
/// with `h` in the compact part of `kind`.
pub fn check_factorization(
    kind: ProbeKind,
    v: Quaternion,
    t: f64,
    a: f64,
    tol: f64,
) -> Option<Quaternion> {
    let s = Quaternion::from(spiral_element(kind.spiral(a), t));
    let h = v * s.inverse();
    (kind.in_compact_part(&h, tol) && (h * s).distance(&v) <= tol * v.norm().max(1.0)).then_some(h)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub entry: String,
    pub a: f64,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Largest `|g(1) − v|` over samples.
    pub max_residual: f64,
    /// Largest `||h| − 1|` over samples.
    pub max_unit_defect: f64,
    /// No perturbed `t` produced a second factorization.
    pub unique: bool,
    pub pass: bool,
}

const PERTURBATION: f64 = 1e-3;

/// Samples `v ≠ 0`, solves `g(1) = v` in the group of `entry` and checks
/// the solution exists and is unique.
pub fn sharply_transitive_probe(
    entry: &CatalogEntry,
    a: SpiralParameter,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<ProbeReport, CatalogError> {
    let kind = entry
        .probe
        .ok_or_else(|| CatalogError::NotProbeable(entry.id.clone()))?;
    if !(tol > 0.0 && tol < PERTURBATION / 10.0) {
        return Err(CatalogError::InvalidParameter(format!(
            "tolerance {tol} must be in (0, {})",
            PERTURBATION / 10.0
        )));
    }
    let a = kind.spiral(a.value());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport {
        entry: entry.id.clone(),
        a,
        samples,
        seed,
        tolerance: tol,
        max_residual: 0.0,
        max_unit_defect: 0.0,
        unique: true,
        pass: true,
    };
    for _ in 0..samples {
        let v = loop {
            let mut c = [0.0; 4];
            for x in c.iter_mut().take(kind.dimension()) {
                *x = rng.random_range(-1.0..1.0);
            }
            let scale = rng.random_range(-3.0f64..3.0).exp();
            let v = Quaternion::new(c[0], c[1], c[2], c[3]).scale(scale);
            if v.norm() > 1e-6 {
                break v;
            }
        };
        let t = v.norm().ln();
        let s = Quaternion::from(spiral_element(a, t));
        let h = v * s.inverse();
        report.max_unit_defect = report.max_unit_defect.max((h.norm() - 1.0).abs());
        report.max_residual = report
            .max_residual
            .max((h * s).distance(&v) / v.norm().max(1.0));
        if check_factorization(kind, v, t, a, tol).is_none() {
            report.pass = false;
        }
        for dt in [PERTURBATION, -PERTURBATION] {
            if check_factorization(kind, v, t + dt, a, tol).is_some() {
                report.unique = false;
            }
        }
    }
    report.pass &= report.unique && report.max_residual <= tol && report.max_unit_defect <= tol;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spiral_is_a_one_parameter_group() {
        for a in [-2.0, 0.0, 1.0, 3.5] {
            let (s, t) = (0.7, -1.3);
            let lhs = spiral_element(a, s) * spiral_element(a, t);
            assert!((lhs - spiral_element(a, s + t)).norm() < 1e-12);
        }
        assert!((spiral_element(0.0, 2.0).im).abs() < 1e-15);
    }

    #[test]
    fn quaternion_units() {
        let i = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        let j = Quaternion::new(0.0, 0.0, 1.0, 0.0);
        let k = Quaternion::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(i * j, k);
        assert_eq!(j * i, k.scale(-1.0));
        assert_eq!(i * i, Quaternion::ONE.scale(-1.0));
        let q = Quaternion::new(1.0, 2.0, -1.0, 0.5);
        assert!((q * q.inverse()).distance(&Quaternion::ONE) < 1e-12);
    }

    #[test]
    fn perturbed_time_is_not_a_factorization() {
        let v = Quaternion::new(0.3, -1.2, 0.4, 2.0);
        let t = v.norm().ln();
        assert!(check_factorization(ProbeKind::Quaternion, v, t, 0.0, 1e-9).is_some());
        assert!(check_factorization(ProbeKind::Quaternion, v, t + 1e-3, 0.0, 1e-9).is_none());
        assert!(check_factorization(ProbeKind::QuaternionSpiral, v, t, 3.5, 1e-9).is_some());
    }

    #[test]
    fn real_kind_rejects_non_real_units() {
        let v = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        assert!(check_factorization(ProbeKind::Real, v, 0.0, 0.0, 1e-9).is_none());
        assert!(check_factorization(ProbeKind::Complex, v, 0.0, 0.0, 1e-9).is_some());
    }
}
