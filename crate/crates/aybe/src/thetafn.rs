//! Jacobi theta functions with rational characteristics and the elliptic
//! functions `sn`, `cn`, `dn` built from them.
//!
//! Conventions (with `q = exp(πiτ)`):
//!
//! ```text
//!   θ[a,b](z|τ) = Σₙ exp(πi(n+a)²τ + 2πi(n+a)(z+b))
//!   θ₁ = −θ[½,½]   θ₂ = θ[½,0]   θ₃ = θ[0,0]   θ₄ = θ[0,½]
//!   θ₃(z|τ) = 1 + 2 Σ_{n≥1} q^{n²} cos(2πnz)
//! ```
//!
//! The argument is scaled by `π` inside the trigonometric series, so the
//! derivative identity reads `θ₁′(0) = π θ₂(0) θ₃(0) θ₄(0)`.

use crate::{Error, Result, C64};
use std::f64::consts::PI;

/// Exact rational number `num/den` used for theta characteristics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl Frac {
    /// Builds `num/den`; `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Frac { num, den }
    }

    /// Zero.
    pub const ZERO: Frac = Frac { num: 0, den: 1 };
    /// One half.
    pub const HALF: Frac = Frac { num: 1, den: 2 };

    /// Floating-point value.
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Modular parameter and truncation tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParams {
    tau: C64,
    tol: f64,
}

impl ThetaParams {
    /// Validates `Im τ > 0` and `tol > 0`.
    pub fn new(tau: C64, tol: f64) -> Result<Self> {
        if tau.im <= 0.0 || !tau.im.is_finite() {
            return Err(Error::InvalidParameter(format!("Im(tau) must be positive, got {}", tau.im)));
        }
        if tol <= 0.0 || !tol.is_finite() {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        Ok(ThetaParams { tau, tol })
    }

    /// Default truncation tolerance `1e-17`.
    pub fn with_tau(tau: C64) -> Result<Self> {
        Self::new(tau, 1e-17)
    }

    /// Modular parameter `τ`.
    pub fn tau(&self) -> C64 {
        self.tau
    }

    /// Truncation tolerance.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Same tolerance, modular parameter `k·τ`.
    pub fn scaled(&self, k: f64) -> Self {
        ThetaParams { tau: self.tau * k, tol: self.tol }
    }

    /// Nome `q = exp(πiτ)`.
    pub fn nome(&self) -> C64 {
        (C64::new(0.0, PI) * self.tau).exp()
    }
}

/// Number of guard terms added beyond the analytic truncation bound.
const GUARD_TERMS: i64 = 5;

/// Window `n ∈ [−N, N]` such that every dropped term satisfies
/// `exp(−π Im(τ)(n+a)² + 2π|Im(z+b)||n+a|) < tol`.
fn window(a: f64, z_im: f64, p: &ThetaParams) -> i64 {
    let qa = PI * p.tau.im;
    let lin = 2.0 * PI * z_im.abs();
    let log_tol = -p.tol.ln();
    let u = (lin + (lin * lin + 4.0 * qa * log_tol).sqrt()) / (2.0 * qa);
    (u + a.abs()).ceil() as i64 + GUARD_TERMS
}

fn theta_series(a: Frac, b: Frac, z: C64, p: &ThetaParams, derivative: bool) -> C64 {
    let af = a.value();
    let zb = z + b.value();
    let n_max = window(af, zb.im, p);
    let i_pi = C64::new(0.0, PI);
    let mut sum = C64::new(0.0, 0.0);
    for n in -n_max..=n_max {
        let m = n as f64 + af;
        let term = (i_pi * m * m * p.tau + 2.0 * i_pi * m * zb).exp();
        sum += if derivative { term * (2.0 * i_pi * m) } else { term };
    }
    sum
}

/// Theta function with characteristics, `θ[a,b](z|τ)`.
pub fn theta_char(a: Frac, b: Frac, z: C64, p: &ThetaParams) -> C64 {
    theta_series(a, b, z, p, false)
}

/// Derivative `∂_z θ[a,b](z|τ)` by the term-wise differentiated series.
pub fn theta_char_prime(a: Frac, b: Frac, z: C64, p: &ThetaParams) -> C64 {
    theta_series(a, b, z, p, true)
}

fn jacobi_char(j: u8) -> Result<(Frac, Frac, f64)> {
    match j {
        1 => Ok((Frac::HALF, Frac::HALF, -1.0)),
        2 => Ok((Frac::HALF, Frac::ZERO, 1.0)),
        3 => Ok((Frac::ZERO, Frac::ZERO, 1.0)),
        4 => Ok((Frac::ZERO, Frac::HALF, 1.0)),
        other => Err(Error::InvalidParameter(format!("theta index must be 1..4, got {other}"))),
    }
}

/// Jacobi theta function `θ_j(z|τ)` for `j ∈ {1,2,3,4}`.
pub fn theta_j(j: u8, z: C64, p: &ThetaParams) -> Result<C64> {
    let (a, b, sign) = jacobi_char(j)?;
    Ok(theta_char(a, b, z, p) * sign)
}

/// Derivative `θ_j′(z|τ)`.
pub fn theta_j_prime(j: u8, z: C64, p: &ThetaParams) -> Result<C64> {
    let (a, b, sign) = jacobi_char(j)?;
    Ok(theta_char_prime(a, b, z, p) * sign)
}

/// `θ₁′(0|τ)` from the differentiated series.
pub fn theta1_prime_at_0(p: &ThetaParams) -> C64 {
    -theta_char_prime(Frac::HALF, Frac::HALF, C64::new(0.0, 0.0), p)
}

/// Unchecked evaluation for the fixed indices used internally.
pub(crate) fn th(j: u8, z: C64, p: &ThetaParams) -> C64 {
    theta_j(j, z, p).expect("theta index in 1..4")
}

fn quotient(num: C64, den: C64, what: &str) -> Result<C64> {
    if den.norm() < 1e-14 * (1.0 + num.norm()) {
        return Err(Error::Pole(format!("{what}: denominator vanishes")));
    }
    Ok(num / den)
}

/// `sn(z) = θ₃(0)θ₁(z) / (θ₂(0)θ₄(z))`.
pub fn sn(z: C64, p: &ThetaParams) -> Result<C64> {
    let zero = C64::new(0.0, 0.0);
    quotient(th(3, zero, p) * th(1, z, p), th(2, zero, p) * th(4, z, p), "sn")
}

/// `cn(z) = θ₄(0)θ₂(z) / (θ₂(0)θ₄(z))`.
pub fn cn(z: C64, p: &ThetaParams) -> Result<C64> {
    let zero = C64::new(0.0, 0.0);
    quotient(th(4, zero, p) * th(2, z, p), th(2, zero, p) * th(4, z, p), "cn")
}

/// `dn(z) = θ₄(0)θ₃(z) / (θ₃(0)θ₄(z))`.
pub fn dn(z: C64, p: &ThetaParams) -> Result<C64> {
    let zero = C64::new(0.0, 0.0);
    quotient(th(4, zero, p) * th(3, z, p), th(3, zero, p) * th(4, z, p), "dn")
}

/// Shift factor `p(z) = exp(−πi(2z + τ))` of the transformation table.
pub fn shift_p(z: C64, p: &ThetaParams) -> C64 {
    (C64::new(0.0, -PI) * (z * 2.0 + p.tau)).exp()
}

/// Shift factor `q(z) = exp(−πi(z + τ/4))` of the transformation table.
pub fn shift_q(z: C64, p: &ThetaParams) -> C64 {
    (C64::new(0.0, -PI) * (z + p.tau / 4.0)).exp()
}

/// Residuals of the determinantal (Watson) and Landen identities.
#[derive(Debug, Clone, PartialEq)]
pub struct WatsonReport {
    /// `(identity label, |lhs − rhs|)` for each identity.
    pub residuals: Vec<(&'static str, f64)>,
}

impl WatsonReport {
    /// Largest residual.
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

/// Evaluates the five Watson identities and two Landen identities at `(x, y)`.
///
/// ```text
///   θ₃(2x|2τ)θ₂(2y|2τ) − θ₃(2y|2τ)θ₂(2x|2τ) = θ₁(x+y)θ₁(x−y)
///   θ₁(2x|2τ)θ₄(2y|2τ) − θ₁(2y|2τ)θ₄(2x|2τ) = θ₂(x+y)θ₁(x−y)
///   θ₁(2x|2τ)θ₄(2y|2τ) + θ₁(2y|2τ)θ₄(2x|2τ) = θ₁(x+y)θ₂(x−y)
///   θ₄(2x|2τ)θ₄(2y|2τ) − θ₁(2y|2τ)θ₁(2x|2τ) = θ₃(x+y)θ₄(x−y)
///   θ₄(2x|2τ)θ₄(2y|2τ) + θ₁(2y|2τ)θ₁(2x|2τ) = θ₄(x+y)θ₃(x−y)
///   θ₄(0|2τ)θ₁(2x|2τ) = θ₁(x)θ₂(x)
///   θ₄(0|2τ)θ₄(2x|2τ) = θ₃(x)θ₄(x)
/// ```
pub fn watson_suite(x: C64, y: C64, p: &ThetaParams) -> WatsonReport {
    let p2 = p.scaled(2.0);
    let d = |j: u8, z: C64| th(j, z * 2.0, &p2);
    let s = |j: u8, z: C64| th(j, z, p);
    let zero = C64::new(0.0, 0.0);
    let residuals = vec![
        ("watson-1", (d(3, x) * d(2, y) - d(3, y) * d(2, x) - s(1, x + y) * s(1, x - y)).norm()),
        ("watson-2", (d(1, x) * d(4, y) - d(1, y) * d(4, x) - s(2, x + y) * s(1, x - y)).norm()),
        ("watson-3", (d(1, x) * d(4, y) + d(1, y) * d(4, x) - s(1, x + y) * s(2, x - y)).norm()),
        ("watson-4", (d(4, x) * d(4, y) - d(1, y) * d(1, x) - s(3, x + y) * s(4, x - y)).norm()),
        ("watson-5", (d(4, x) * d(4, y) + d(1, y) * d(1, x) - s(4, x + y) * s(3, x - y)).norm()),
        ("landen-1", (th(4, zero, &p2) * d(1, x) - s(1, x) * s(2, x)).norm()),
        ("landen-2", (th(4, zero, &p2) * d(4, x) - s(3, x) * s(4, x)).norm()),
    ];
    WatsonReport { residuals }
}

/// The transformation-table shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    Negate,
    One,
    Tau,
    OnePlusTau,
    Half,
    HalfTau,
}

impl Shift {
    /// All table columns.
    pub const ALL: [Shift; 6] = [Shift::Negate, Shift::One, Shift::Tau, Shift::OnePlusTau, Shift::Half, Shift::HalfTau];
}

/// Predicted value of `θ_j` at the shifted argument according to the table,
/// expressed through unshifted theta values.
pub fn shift_rule(j: u8, shift: Shift, z: C64, p: &ThetaParams) -> Result<C64> {
    let i = C64::new(0.0, 1.0);
    let pz = shift_p(z, p);
    let qz = shift_q(z, p);
    let t = |k: u8| th(k, z, p);
    let v = match (j, shift) {
        (1, Shift::Negate) => -t(1),
        (2, Shift::Negate) => t(2),
        (3, Shift::Negate) => t(3),
        (4, Shift::Negate) => t(4),
        (1, Shift::One) => -t(1),
        (2, Shift::One) => -t(2),
        (3, Shift::One) => t(3),
        (4, Shift::One) => t(4),
        (1, Shift::Tau) => -pz * t(1),
        (2, Shift::Tau) => pz * t(2),
        (3, Shift::Tau) => pz * t(3),
        (4, Shift::Tau) => -pz * t(4),
        (1, Shift::OnePlusTau) => pz * t(1),
        (2, Shift::OnePlusTau) => -pz * t(2),
        (3, Shift::OnePlusTau) => pz * t(3),
        (4, Shift::OnePlusTau) => -pz * t(4),
        (1, Shift::Half) => t(2),
        (2, Shift::Half) => -t(1),
        (3, Shift::Half) => t(4),
        (4, Shift::Half) => t(3),
        (1, Shift::HalfTau) => i * qz * t(4),
        (2, Shift::HalfTau) => qz * t(3),
        (3, Shift::HalfTau) => qz * t(2),
        (4, Shift::HalfTau) => i * qz * t(1),
        (other, _) => return Err(Error::InvalidParameter(format!("theta index must be 1..4, got {other}"))),
    };
    Ok(v)
}

/// Shifted argument for a table column.
pub fn shifted_arg(shift: Shift, z: C64, p: &ThetaParams) -> C64 {
    match shift {
        Shift::Negate => -z,
        Shift::One => z + 1.0,
        Shift::Tau => z + p.tau,
        Shift::OnePlusTau => z + 1.0 + p.tau,
        Shift::Half => z + 0.5,
        Shift::HalfTau => z + p.tau / 2.0,
    }
}
