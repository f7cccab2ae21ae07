//! Weierstrass cubic curves `zy² = 4x³ − g₂xz² − g₃z³`: discriminant
//! classification, the Eisenstein map `τ ↦ (g₂, g₃)` and the coordinate
//! conventions on the Jacobian of each curve type.
//!
//! ```text
//!   Δ = g₂³ − 27g₃²
//!   Δ ≠ 0              elliptic
//!   Δ = 0, (g₂,g₃) ≠ 0 nodal
//!   (g₂,g₃) = (0,0)    cuspidal
//! ```

use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

/// Default absolute tolerance for the zero tests in [`classify`].
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

/// Curve type of a Weierstrass cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Elliptic,
    Nodal,
    Cuspidal,
}

impl std::fmt::Display for CurveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CurveKind::Elliptic => "elliptic",
            CurveKind::Nodal => "nodal",
            CurveKind::Cuspidal => "cuspidal",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for CurveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elliptic" => Ok(CurveKind::Elliptic),
            "nodal" => Ok(CurveKind::Nodal),
            "cuspidal" | "cusp" => Ok(CurveKind::Cuspidal),
            other => Err(Error::InvalidParameter(format!("unknown curve type `{other}`"))),
        }
    }
}

/// A Weierstrass curve given either by raw coefficients or by a normalized tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSpec {
    /// Raw coefficients `(g₂, g₃)`.
    Raw { g2: C64, g3: C64 },
    /// The torus `ℂ/⟨1, τ⟩`.
    Elliptic { tau: C64 },
    /// The nodal cubic.
    Nodal,
    /// The cuspidal cubic.
    Cuspidal,
}

impl CurveSpec {
    /// Curve type, classifying raw coefficients with [`DEFAULT_ZERO_TOL`].
    pub fn kind(&self) -> CurveKind {
        match *self {
            CurveSpec::Raw { g2, g3 } => classify_with_tol(g2, g3, DEFAULT_ZERO_TOL),
            CurveSpec::Elliptic { .. } => CurveKind::Elliptic,
            CurveSpec::Nodal => CurveKind::Nodal,
            CurveSpec::Cuspidal => CurveKind::Cuspidal,
        }
    }
}

/// Discriminant `Δ = g₂³ − 27g₃²`.
pub fn discriminant(g2: C64, g3: C64) -> C64 {
    g2 * g2 * g2 - g3 * g3 * 27.0
}

/// Classifies `(g₂, g₃)` with the default absolute tolerance.
pub fn classify(g2: C64, g3: C64) -> CurveKind {
    classify_with_tol(g2, g3, DEFAULT_ZERO_TOL)
}

/// Classifies `(g₂, g₃)`; quantities below `tol` in absolute value count as zero.
pub fn classify_with_tol(g2: C64, g3: C64, tol: f64) -> CurveKind {
    if g2.norm() <= tol && g3.norm() <= tol {
        CurveKind::Cuspidal
    } else if discriminant(g2, g3).norm() <= tol {
        CurveKind::Nodal
    } else {
        CurveKind::Elliptic
    }
}

/// Lattice sums `g₂ = 60 Σ′ ω⁻⁴`, `g₃ = 140 Σ′ ω⁻⁶` over `ω = m′ + m″τ`
/// with `|m′|, |m″| ≤ cutoff`, `(m′, m″) ≠ (0, 0)`.
pub fn eisenstein(tau: C64, cutoff: usize) -> Result<(C64, C64)> {
    if tau.im <= 0.0 {
        return Err(Error::InvalidParameter(format!("Im(tau) must be positive, got {}", tau.im)));
    }
    if cutoff == 0 {
        return Err(Error::InvalidParameter("cutoff must be at least 1".into()));
    }
    let m = cutoff as i64;
    let mut s4 = C64::new(0.0, 0.0);
    let mut s6 = C64::new(0.0, 0.0);
    // Accumulate from the outside in so that small terms are added first.
    for a in (-m..=m).rev() {
        for b in (-m..=m).rev() {
            if a == 0 && b == 0 {
                continue;
            }
            let w = tau * b as f64 + a as f64;
            let w2 = (w * w).inv();
            let w4 = w2 * w2;
            s4 += w4;
            s6 += w4 * w2;
        }
    }
    Ok((s4 * 60.0, s6 * 140.0))
}

/// A point of the Jacobian in the coordinate natural for the curve type:
/// `x ∈ ℂ` modulo the lattice (elliptic), `λ ∈ ℂ*` (nodal), `λ ∈ ℂ` (cuspidal).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliCoord {
    kind: CurveKind,
    value: C64,
}

impl ModuliCoord {
    /// Validates the coordinate (nonzero for nodal curves).
    pub fn new(kind: CurveKind, value: C64) -> Result<Self> {
        if kind == CurveKind::Nodal && value.norm() == 0.0 {
            return Err(Error::InvalidParameter("nodal moduli coordinate must be nonzero".into()));
        }
        Ok(ModuliCoord { kind, value })
    }

    /// Curve type.
    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Coordinate value.
    pub fn value(&self) -> C64 {
        self.value
    }

    /// Group law on the Jacobian: addition for elliptic and cuspidal, multiplication for nodal.
    pub fn combine(&self, other: &ModuliCoord) -> Result<ModuliCoord> {
        if self.kind != other.kind {
            return Err(Error::InvalidParameter("moduli coordinates of different curve types".into()));
        }
        let value = match self.kind {
            CurveKind::Nodal => self.value * other.value,
            _ => self.value + other.value,
        };
        ModuliCoord::new(self.kind, value)
    }

    /// Relative position `other − self` (or `other / self` for nodal curves),
    /// the quantity on which the geometric r-matrices depend.
    pub fn relative(&self, other: &ModuliCoord) -> Result<C64> {
        if self.kind != other.kind {
            return Err(Error::InvalidParameter("moduli coordinates of different curve types".into()));
        }
        Ok(match self.kind {
            CurveKind::Nodal => other.value / self.value,
            _ => other.value - self.value,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(c(0.0, 0.0), c(0.0, 0.0)), CurveKind::Cuspidal);
        assert_eq!(classify(c(4.0, 0.0), c(0.0, 0.0)), CurveKind::Elliptic);
        assert_eq!(discriminant(c(4.0, 0.0), c(0.0, 0.0)), c(64.0, 0.0));
        assert_eq!(classify(c(3.0, 0.0), c(1.0, 0.0)), CurveKind::Nodal);
    }

    #[test]
    fn tolerance_override() {
        let g2 = c(3.0, 0.0);
        let g3 = c(1.0 + 1e-9, 0.0);
        assert_eq!(classify(g2, g3), CurveKind::Elliptic);
        assert_eq!(classify_with_tol(g2, g3, 1e-6), CurveKind::Nodal);
    }

    #[test]
    fn square_lattice_kills_g3() {
        let (g2, g3) = eisenstein(c(0.0, 1.0), 200).unwrap();
        assert!(g3.norm() < 1e-10);
        assert!(discriminant(g2, g3).norm() > 1.0);
    }

    #[test]
    fn g2_is_invariant_under_translation() {
        let tau = c(0.2, 1.3);
        let (a, _) = eisenstein(tau, 200).unwrap();
        let (b, _) = eisenstein(tau + 1.0, 200).unwrap();
        assert!((a - b).norm() / a.norm() < 1e-4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eisenstein(c(0.0, -1.0), 10).is_err());
        assert!(eisenstein(c(0.0, 1.0), 0).is_err());
        assert!(ModuliCoord::new(CurveKind::Nodal, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn moduli_group_law() {
        let a = ModuliCoord::new(CurveKind::Nodal, c(2.0, 0.0)).unwrap();
        let b = ModuliCoord::new(CurveKind::Nodal, c(3.0, 1.0)).unwrap();
        assert_eq!(a.combine(&b).unwrap().value(), c(6.0, 2.0));
        assert_eq!(a.relative(&b).unwrap(), c(1.5, 0.5));
        let p = ModuliCoord::new(CurveKind::Cuspidal, c(1.0, 0.0)).unwrap();
        let q = ModuliCoord::new(CurveKind::Cuspidal, c(0.5, 0.0)).unwrap();
        assert_eq!(p.relative(&q).unwrap(), c(-0.5, 0.0));
    }
}
