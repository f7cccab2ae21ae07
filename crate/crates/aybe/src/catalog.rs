//! Closed-form r-matrices, used both as standalone solutions and as oracles
//! for the construction engines.
//!
//! Every entry is an [`RSolution`]: a named evaluator with an arity tag that
//! fixes how it is lifted to the four-parameter form `r(v₁, v₂; y₁, y₂)`:
//!
//! ```text
//!   Difference   r(v; y)        ↦ r(v₂ − v₁; y₂ − y₁)
//!   Spectral     r(v; y₁, y₂)   ↦ r(v₂ − v₁; y₁, y₂)
//!   Full         r(v₁, v₂; y₁, y₂)
//!   Classical    r(y)           ↦ r(y₂ − y₁)      (no v-dependence)
//!   Classical2   r(y₁, y₂)
//! ```
//!
//! Basis symbols: `𝟙 = e₁₁ + e₂₂`, `h = e₁₁ − e₂₂`, `σ = i(e₂₁ − e₁₂)`,
//! `γ = e₁₂ + e₂₁`, `Ω = ½h⊗h + e₁₂⊗e₂₁ + e₂₁⊗e₁₂`.

use crate::linalg::{c, gamma, h, identity, re, sigma, unit, CMat};
use crate::tensorcore::Tensor2;
use crate::thetafn::{cn, dn, sn, th, theta1_prime_at_0, ThetaParams};
use crate::{Error, Result, C64};
use std::fmt;
use std::sync::Arc;

/// How the evaluator's arguments relate to `(v₁, v₂; y₁, y₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    /// `r(v; y)`, arguments `[v, y]`.
    Difference,
    /// `r(v; y₁, y₂)`, arguments `[v, y₁, y₂]`.
    Spectral,
    /// `r(v₁, v₂; y₁, y₂)`, arguments `[v₁, v₂, y₁, y₂]`.
    Full,
    /// Classical `r(y)`, arguments `[y]`.
    Classical,
    /// Classical `r(y₁, y₂)`, arguments `[y₁, y₂]`.
    Classical2,
}

impl Arity {
    /// Number of evaluator arguments.
    pub fn arg_count(self) -> usize {
        match self {
            Arity::Difference => 2,
            Arity::Spectral => 3,
            Arity::Full => 4,
            Arity::Classical => 1,
            Arity::Classical2 => 2,
        }
    }

    /// True for solutions of the classical Yang–Baxter equation.
    pub fn is_classical(self) -> bool {
        matches!(self, Arity::Classical | Arity::Classical2)
    }
}

/// Evaluator signature shared by all solutions.
pub type Evaluator = Arc<dyn Fn(&[C64]) -> Result<Tensor2> + Send + Sync>;

/// A meromorphic tensor-valued family with declared poles.
#[derive(Clone)]
pub struct RSolution {
    name: String,
    arity: Arity,
    n: usize,
    poles: Vec<String>,
    center: C64,
    eval: Evaluator,
}

impl fmt::Debug for RSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RSolution")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("n", &self.n)
            .field("poles", &self.poles)
            .finish()
    }
}

impl RSolution {
    /// Wraps an evaluator.
    pub fn new(
        name: impl Into<String>,
        arity: Arity,
        n: usize,
        poles: Vec<String>,
        eval: impl Fn(&[C64]) -> Result<Tensor2> + Send + Sync + 'static,
    ) -> Self {
        RSolution { name: name.into(), arity, n, poles, center: C64::new(0.0, 0.0), eval: Arc::new(eval) }
    }

    /// Sets the point around which random parameters are drawn (1 for the
    /// multiplicative nodal families, 0 otherwise).
    pub fn with_center(mut self, center: C64) -> Self {
        self.center = center;
        self
    }

    /// Sampling center of the parameters.
    pub fn center(&self) -> C64 {
        self.center
    }

    /// Name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Arity tag.
    pub fn arity(&self) -> Arity {
        self.arity
    }

    /// Matrix size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Human-readable pole loci.
    pub fn poles(&self) -> &[String] {
        &self.poles
    }

    /// Evaluates with the native argument list.
    pub fn eval(&self, args: &[C64]) -> Result<Tensor2> {
        if args.len() != self.arity.arg_count() {
            return Err(Error::InvalidParameter(format!(
                "`{}` takes {} arguments, got {}",
                self.name,
                self.arity.arg_count(),
                args.len()
            )));
        }
        let t = (self.eval)(args)?;
        if !t.is_finite() {
            return Err(Error::Pole(format!("`{}` is not finite at {:?}", self.name, args)));
        }
        Ok(t)
    }

    /// Four-parameter value `r(v₁, v₂; y₁, y₂)` (quantum solutions only).
    pub fn eval4(&self, v1: C64, v2: C64, y1: C64, y2: C64) -> Result<Tensor2> {
        match self.arity {
            Arity::Difference => self.eval(&[v2 - v1, y2 - y1]),
            Arity::Spectral => self.eval(&[v2 - v1, y1, y2]),
            Arity::Full => self.eval(&[v1, v2, y1, y2]),
            _ => Err(Error::InvalidParameter(format!("`{}` is classical", self.name))),
        }
    }

    /// Three-parameter value `r(v; y₁, y₂)` for solutions depending on `v₂ − v₁`.
    pub fn eval_spectral(&self, v: C64, y1: C64, y2: C64) -> Result<Tensor2> {
        match self.arity {
            Arity::Difference => self.eval(&[v, y2 - y1]),
            Arity::Spectral => self.eval(&[v, y1, y2]),
            _ => Err(Error::InvalidParameter(format!("`{}` has no v-difference form", self.name))),
        }
    }

    /// Classical value `r(y₁, y₂)` (classical solutions only).
    pub fn eval_classical(&self, y1: C64, y2: C64) -> Result<Tensor2> {
        match self.arity {
            Arity::Classical => self.eval(&[y2 - y1]),
            Arity::Classical2 => self.eval(&[y1, y2]),
            _ => Err(Error::InvalidParameter(format!("`{}` is not classical", self.name))),
        }
    }

    /// The solution multiplied by a scalar.
    pub fn scaled(&self, s: C64, name: impl Into<String>) -> RSolution {
        let inner = self.clone();
        RSolution::new(name, self.arity, self.n, self.poles.clone(), move |a| Ok(inner.eval(a)? * s)).with_center(self.center)
    }
}

/// Parameters of the catalog entries that depend on a modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogParams {
    /// Modular parameter of the elliptic entries.
    pub tau: C64,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams { tau: c(0.0, 1.1) }
    }
}

/// Names accepted by [`get`].
pub const NAMES: &[&str] = &[
    "ell21",
    "ell21_summary",
    "trg21",
    "rat21",
    "rat21_summary",
    "trg20_semistable",
    "ell21_classical",
    "cherednik",
    "stolin",
    "stolin_difference_s",
    "yang",
    "rat21_degenerate",
    "nodal21",
    "nodal21_gauged",
    "nodal20",
];

/// Threshold below which a denominator counts as a pole.
const POLE_EPS: f64 = 1e-13;

fn nz(x: C64, what: &str) -> Result<C64> {
    if x.norm() < POLE_EPS || !x.is_finite() {
        Err(Error::Pole(format!("{what} vanishes")))
    } else {
        Ok(x)
    }
}

/// `sin z` from complex exponentials.
pub fn sin_c(z: C64) -> C64 {
    let i = c(0.0, 1.0);
    ((i * z).exp() - (-i * z).exp()) / (i * 2.0)
}

/// `cos z` from complex exponentials.
pub fn cos_c(z: C64) -> C64 {
    let i = c(0.0, 1.0);
    ((i * z).exp() + (-i * z).exp()) / 2.0
}

fn e(i: usize, j: usize) -> CMat {
    unit(2, i, j)
}

fn t(a: &CMat, b: &CMat) -> Tensor2 {
    Tensor2::simple(a, b)
}

/// `e₁₁⊗e₁₁ + e₂₂⊗e₂₂`.
fn diag_pair() -> Tensor2 {
    t(&e(1, 1), &e(1, 1)) + t(&e(2, 2), &e(2, 2))
}

/// `e₁₂⊗e₂₁ + e₂₁⊗e₁₂`.
fn cross_pair() -> Tensor2 {
    t(&e(1, 2), &e(2, 1)) + t(&e(2, 1), &e(1, 2))
}

/// The `sl₂` Casimir tensor `Ω`.
pub fn omega() -> Tensor2 {
    t(&h(), &h()) * re(0.5) + cross_pair()
}

fn one_one() -> Tensor2 {
    t(&identity(2), &identity(2))
}

/// Elliptic solution with the `½` prefactor and half arguments:
///
/// ```text
///   ½ θ₁′(0)/θ₁(y) · [θ₁(y+x/2)/θ₁(x/2) 𝟙⊗𝟙 + θ₂(y+x/2)/θ₂(x/2) h⊗h
///                      + θ₃(y+x/2)/θ₃(x/2) σ⊗σ + θ₄(y+x/2)/θ₄(x/2) γ⊗γ]
/// ```
pub fn ell21(x: C64, y: C64, p: &ThetaParams) -> Result<Tensor2> {
    Ok(ell_core(x / 2.0, y, p)? * re(0.5))
}

/// Elliptic solution without the `½` prefactor and with full argument `v`.
pub fn ell21_summary(v: C64, y: C64, p: &ThetaParams) -> Result<Tensor2> {
    ell_core(v, y, p)
}

fn ell_core(u: C64, y: C64, p: &ThetaParams) -> Result<Tensor2> {
    let pre = theta1_prime_at_0(p) / nz(th(1, y, p), "theta1(y)")?;
    let basis = [one_one(), t(&h(), &h()), t(&sigma(), &sigma()), t(&gamma(), &gamma())];
    let mut out = Tensor2::zeros(2);
    for (j, b) in (1u8..=4).zip(basis.iter()) {
        let den = nz(th(j, u, p), "theta_j(v)")?;
        out = out + b * (th(j, y + u, p) / den);
    }
    Ok(out * pre)
}

/// Classical elliptic solution `½(cn/sn h⊗h + 1/sn γ⊗γ + dn/sn σ⊗σ)`.
pub fn ell21_classical(y: C64, p: &ThetaParams) -> Result<Tensor2> {
    let s = nz(sn(y, p)?, "sn(y)")?;
    let out = t(&h(), &h()) * (cn(y, p)? / s) + t(&gamma(), &gamma()) * (re(1.0) / s) + t(&sigma(), &sigma()) * (dn(y, p)? / s);
    Ok(out * re(0.5))
}

/// Additive trigonometric solution from the nodal cubic:
///
/// ```text
///   sin(y+v)/(sin y sin v)(e₁₁⊗e₁₁ + e₂₂⊗e₂₂) + 1/sin v (e₁₁⊗e₂₂ + e₂₂⊗e₁₁)
///   + 1/sin y (e₁₂⊗e₂₁ + e₂₁⊗e₁₂) + sin(y+v) e₂₁⊗e₂₁
/// ```
pub fn trg21(v: C64, y: C64) -> Result<Tensor2> {
    let sv = nz(sin_c(v), "sin(v)")?;
    let sy = nz(sin_c(y), "sin(y)")?;
    let syv = sin_c(y + v);
    let offdiag = t(&e(1, 1), &e(2, 2)) + t(&e(2, 2), &e(1, 1));
    Ok(diag_pair() * (syv / (sy * sv)) + offdiag * (re(1.0) / sv) + cross_pair() * (re(1.0) / sy) + t(&e(2, 1), &e(2, 1)) * syv)
}

/// Cherednik's solution `½cot(y) h⊗h + 1/sin y (e₁₂⊗e₂₁ + e₂₁⊗e₁₂) + sin(y) e₂₁⊗e₂₁`.
pub fn cherednik(y: C64) -> Result<Tensor2> {
    let sy = nz(sin_c(y), "sin(y)")?;
    Ok(t(&h(), &h()) * (cos_c(y) / sy * 0.5) + cross_pair() * (re(1.0) / sy) + t(&e(2, 1), &e(2, 1)) * sy)
}

/// Rational solution from the cuspidal cubic:
///
/// ```text
///   1/(2λ) 𝟙⊗𝟙 + 1/(y₂−y₁)(e₁₁⊗e₁₁ + e₂₂⊗e₂₂ + e₁₂⊗e₂₁ + e₂₁⊗e₁₂)
///   + (λ−y₁)/2 e₂₁⊗h + (λ+y₂)/2 h⊗e₂₁ − λ(λ−y₁)(λ+y₂)/2 e₂₁⊗e₂₁
/// ```
pub fn rat21(l: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    let l = nz(l, "lambda")?;
    let dy = nz(y2 - y1, "y2 - y1")?;
    Ok(one_one() * (re(0.5) / l)
        + (diag_pair() + cross_pair()) * (re(1.0) / dy)
        + t(&e(2, 1), &h()) * ((l - y1) / 2.0)
        + t(&h(), &e(2, 1)) * ((l + y2) / 2.0)
        - t(&e(2, 1), &e(2, 1)) * (l * (l - y1) * (l + y2) / 2.0))
}

/// Summary normalization of the rational solution (equal to `2·rat21`):
///
/// ```text
///   1/v 𝟙⊗𝟙 + 2/(y₂−y₁)(…) + (v−y₁) e₂₁⊗h + (v+y₂) h⊗e₂₁ − v(v−y₁)(v+y₂) e₂₁⊗e₂₁
/// ```
pub fn rat21_summary(v: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    let v = nz(v, "v")?;
    let dy = nz(y2 - y1, "y2 - y1")?;
    Ok(one_one() * (re(1.0) / v)
        + (diag_pair() + cross_pair()) * (re(2.0) / dy)
        + t(&e(2, 1), &h()) * (v - y1)
        + t(&h(), &e(2, 1)) * (v + y2)
        - t(&e(2, 1), &e(2, 1)) * (v * (v - y1) * (v + y2)))
}

/// Stolin's classical solution
/// `1/(y₂−y₁) Ω + y₂/2 h⊗e₂₁ − y₁/2 e₂₁⊗h`.
pub fn stolin(y1: C64, y2: C64) -> Result<Tensor2> {
    let dy = nz(y2 - y1, "y2 - y1")?;
    Ok(omega() * (re(1.0) / dy) + t(&h(), &e(2, 1)) * (y2 / 2.0) - t(&e(2, 1), &h()) * (y1 / 2.0))
}

/// Difference form of Stolin's solution
/// `s(y) = Ω/y + y(e₂₁⊗h + h⊗e₂₁) − y³ e₂₁⊗e₂₁`.
pub fn stolin_difference_s(y: C64) -> Result<Tensor2> {
    let y = nz(y, "y")?;
    Ok(omega() * (re(1.0) / y) + (t(&e(2, 1), &h()) + t(&h(), &e(2, 1))) * y - t(&e(2, 1), &e(2, 1)) * (y * y * y))
}

/// Gauge matrix `g(y) = exp(−y² e₂₁)·diag(½, 2)` whose adjoint action carries
/// Stolin's solution to its difference form:
/// `(Ad g(y₁) ⊗ Ad g(y₂)) stolin(y₁, y₂) = s(y₂ − y₁)`.
pub fn stolin_gauge(y: C64) -> CMat {
    let mut g = CMat::zeros(2, 2);
    g[(0, 0)] = re(0.5);
    g[(1, 0)] = -y * y / 2.0;
    g[(1, 1)] = re(2.0);
    g
}

/// Yang's solution `Ω / y`.
pub fn yang(y: C64) -> Result<Tensor2> {
    let y = nz(y, "y")?;
    Ok(omega() * (re(1.0) / y))
}

/// Degenerate rational solution
/// `1/(2v) 𝟙⊗𝟙 + 1/y (e₁₁⊗e₁₁ + e₂₂⊗e₂₂ + e₁₂⊗e₂₁ + e₂₁⊗e₁₂)`.
pub fn rat21_degenerate(v: C64, y: C64) -> Result<Tensor2> {
    let v = nz(v, "v")?;
    let y = nz(y, "y")?;
    Ok(one_one() * (re(0.5) / v) + (diag_pair() + cross_pair()) * (re(1.0) / y))
}

/// Trigonometric solution from semistable rank-two degree-zero bundles:
///
/// ```text
///   sin(z+v)/(2 sin z sin v)(e₁₁⊗e₁₁ + e₂₂⊗e₂₂ + e₂₁⊗e₁₂ + e₁₂⊗e₂₁)
///   + 1/(2 sin² v)(e₁₂⊗h − h⊗e₁₂) − cos v / sin³ v e₁₂⊗e₁₂
/// ```
pub fn trg20_semistable(v: C64, z: C64) -> Result<Tensor2> {
    let sv = nz(sin_c(v), "sin(v)")?;
    let sz = nz(sin_c(z), "sin(z)")?;
    Ok((diag_pair() + cross_pair()) * (sin_c(z + v) / (sz * sv * 2.0))
        + (t(&e(1, 2), &h()) - t(&h(), &e(1, 2))) * (re(0.5) / (sv * sv))
        - t(&e(1, 2), &e(1, 2)) * (cos_c(v) / (sv * sv * sv)))
}

/// Multiplicative nodal solution before the `√y` gauge, `λ = λ₂/λ₁`:
///
/// ```text
///   (y₂−λ²y₁)/((y₂−y₁)(1−λ²)) (e₁₁⊗e₁₁ + e₂₂⊗e₂₂) + λ/(1−λ²)(e₁₁⊗e₂₂ + e₂₂⊗e₁₁)
///   + y₁/(y₂−y₁) e₂₁⊗e₁₂ + y₂/(y₂−y₁) e₁₂⊗e₂₁ + (y₂−λ²y₁)/λ e₂₁⊗e₂₁
/// ```
pub fn nodal21(l: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    let l = nz(l, "lambda")?;
    let dl = nz(re(1.0) - l * l, "1 - lambda^2")?;
    let dy = nz(y2 - y1, "y2 - y1")?;
    let a = y2 - l * l * y1;
    let offdiag = t(&e(1, 1), &e(2, 2)) + t(&e(2, 2), &e(1, 1));
    Ok(diag_pair() * (a / (dy * dl))
        + offdiag * (l / dl)
        + t(&e(2, 1), &e(1, 2)) * (y1 / dy)
        + t(&e(1, 2), &e(2, 1)) * (y2 / dy)
        + t(&e(2, 1), &e(2, 1)) * (a / l))
}

/// Multiplicative nodal solution after the `√y` gauge, `y = y₂/y₁`:
///
/// ```text
///   (y−λ²)/((y−1)(1−λ²)) (e₁₁⊗e₁₁ + e₂₂⊗e₂₂) + λ/(1−λ²)(e₁₁⊗e₂₂ + e₂₂⊗e₁₁)
///   + √y/(y−1)(e₁₂⊗e₂₁ + e₂₁⊗e₁₂) + (√y/λ − λ/√y) e₂₁⊗e₂₁
/// ```
pub fn nodal21_gauged(l: C64, y: C64) -> Result<Tensor2> {
    let l = nz(l, "lambda")?;
    let dl = nz(re(1.0) - l * l, "1 - lambda^2")?;
    let dy = nz(y - re(1.0), "y - 1")?;
    let sy = nz(y, "y")?.sqrt();
    let offdiag = t(&e(1, 1), &e(2, 2)) + t(&e(2, 2), &e(1, 1));
    Ok(diag_pair() * ((y - l * l) / (dy * dl)) + offdiag * (l / dl) + cross_pair() * (sy / dy) + t(&e(2, 1), &e(2, 1)) * (sy / l - l / sy))
}

/// Multiplicative semistable solution, `λ = λ₂/λ₁`, `y = y₂/y₁`:
///
/// ```text
///   (y−λ)/((y−1)(1−λ)) (e₁₁⊗e₁₁ + e₂₂⊗e₂₂ + e₂₁⊗e₁₂ + e₁₂⊗e₂₁)
///   + λ/(1−λ)² (e₁₂⊗h − h⊗e₁₂) − λ(1+λ)/(1−λ)³ e₁₂⊗e₁₂
/// ```
pub fn nodal20(l: C64, y: C64) -> Result<Tensor2> {
    let d = nz(re(1.0) - l, "1 - lambda")?;
    let dy = nz(y - re(1.0), "y - 1")?;
    Ok((diag_pair() + cross_pair()) * ((y - l) / (dy * d))
        + (t(&e(1, 2), &h()) - t(&h(), &e(1, 2))) * (l / (d * d))
        - t(&e(1, 2), &e(1, 2)) * (l * (re(1.0) + l) / (d * d * d)))
}

fn poles(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Looks up a solution with default parameters.
pub fn get(name: &str) -> Result<RSolution> {
    get_with(name, &CatalogParams::default())
}

/// Looks up a solution.
pub fn get_with(name: &str, params: &CatalogParams) -> Result<RSolution> {
    let p = ThetaParams::with_tau(params.tau)?;
    let sol = match name {
        "ell21" => RSolution::new(name, Arity::Difference, 2, poles(&["x in 2*lattice", "y in lattice"]), move |a| ell21(a[0], a[1], &p)),
        "ell21_summary" => {
            RSolution::new(name, Arity::Difference, 2, poles(&["v in lattice", "y in lattice"]), move |a| ell21_summary(a[0], a[1], &p))
        }
        "ell21_classical" => RSolution::new(name, Arity::Classical, 2, poles(&["sn(y) = 0"]), move |a| ell21_classical(a[0], &p)),
        "trg21" => RSolution::new(name, Arity::Difference, 2, poles(&["v in pi*Z", "y in pi*Z"]), |a| trg21(a[0], a[1])),
        "cherednik" => RSolution::new(name, Arity::Classical, 2, poles(&["y in pi*Z"]), |a| cherednik(a[0])),
        "rat21" => RSolution::new(name, Arity::Spectral, 2, poles(&["v = 0", "y1 = y2"]), |a| rat21(a[0], a[1], a[2])),
        "rat21_summary" => RSolution::new(name, Arity::Spectral, 2, poles(&["v = 0", "y1 = y2"]), |a| rat21_summary(a[0], a[1], a[2])),
        "stolin" => RSolution::new(name, Arity::Classical2, 2, poles(&["y1 = y2"]), |a| stolin(a[0], a[1])),
        "stolin_difference_s" => RSolution::new(name, Arity::Classical, 2, poles(&["y = 0"]), |a| stolin_difference_s(a[0])),
        "yang" => RSolution::new(name, Arity::Classical, 2, poles(&["y = 0"]), |a| yang(a[0])),
        "rat21_degenerate" => RSolution::new(name, Arity::Difference, 2, poles(&["v = 0", "y = 0"]), |a| rat21_degenerate(a[0], a[1])),
        "trg20_semistable" => {
            RSolution::new(name, Arity::Difference, 2, poles(&["v in pi*Z (order 3)", "z in pi*Z"]), |a| trg20_semistable(a[0], a[1]))
        }
        "nodal21" => RSolution::new(name, Arity::Full, 2, poles(&["v1, v2 = 0", "v2/v1 = +-1", "y1 = y2"]), |a| {
            nodal21(a[1] / nz(a[0], "v1")?, a[2], a[3])
        })
        .with_center(re(1.0)),
        "nodal21_gauged" => RSolution::new(name, Arity::Full, 2, poles(&["v1, v2 = 0", "v2/v1 = +-1", "y1, y2 = 0", "y1 = y2"]), |a| {
            nodal21_gauged(a[1] / nz(a[0], "v1")?, a[3] / nz(a[2], "y1")?)
        })
        .with_center(re(1.0)),
        "nodal20" => RSolution::new(name, Arity::Full, 2, poles(&["v1 = 0", "v1 = v2 (order 3)", "y1 = 0", "y1 = y2"]), |a| {
            nodal20(a[1] / nz(a[0], "v1")?, a[3] / nz(a[2], "y1")?)
        })
        .with_center(re(1.0)),
        other => return Err(Error::UnknownSolution(other.to_string())),
    };
    Ok(sol)
}

/// The classical partner `lim_{v→0} (pr⊗pr) r` stated for a quantum solution.
pub fn classical_of(name: &str) -> Result<RSolution> {
    classical_of_with(name, &CatalogParams::default())
}

/// [`classical_of`] with explicit parameters.
pub fn classical_of_with(name: &str, params: &CatalogParams) -> Result<RSolution> {
    let partner = match name {
        "ell21" => "ell21_classical",
        "trg21" => "cherednik",
        "rat21" => "stolin",
        "rat21_degenerate" => "yang",
        _ if NAMES.contains(&name) => return Err(Error::NoClassicalLimit(name.to_string())),
        other => return Err(Error::UnknownSolution(other.to_string())),
    };
    get_with(partner, params)
}
