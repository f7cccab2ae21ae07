//! Residual evaluators and limit extractors for the Yang–Baxter identities.
//!
//! Every residual check draws seeded random parameters, evaluates the
//! identity in `Mat_n^{⊗3}` and reports the largest residual. Residuals of
//! quadratic identities are measured relative to the size of the products
//! that enter them:
//!
//! ```text
//!   residual = max|LHS − RHS| / max(1, max|term|)
//! ```
//!
//! so that the tolerance describes lost digits and not the absolute size of
//! the tensors near a pole. Unitarity is normalized the same way by the size
//! of the two tensors; the Dunkl commutator is reported in absolute terms.
//!
//! Identities, for `R = r(v₁, v₂; y₁, y₂)` after lifting:
//!
//! ```text
//!   aybe       R(v₁,v₂;y₁,y₂)¹² R(v₁,v₃;y₂,y₃)²³
//!                = R(v₁,v₃;y₁,y₃)¹³ R(v₃,v₂;y₁,y₂)¹² + R(v₂,v₃;y₂,y₃)²³ R(v₁,v₂;y₁,y₃)¹³
//!   dual       R(v₂,v₃;y₂,y₃)²³ R(v₁,v₃;y₁,y₂)¹²
//!                = R(v₁,v₂;y₁,y₂)¹² R(v₂,v₃;y₁,y₃)¹³ + R(v₁,v₃;y₁,y₃)¹³ R(v₂,v₁;y₂,y₃)²³
//!   unitarity  R(v₁,v₂;y₁,y₂) + swap R(v₂,v₁;y₂,y₁) = 0
//!   cybe       [r¹²(y₁,y₂), r¹³(y₁,y₃)] + [r¹²(y₁,y₂), r²³(y₂,y₃)] + [r¹³(y₁,y₃), r²³(y₂,y₃)] = 0
//!   qybe       f¹²(y₁,y₂) f¹³(y₁,y₃) f²³(y₂,y₃) = f²³(y₂,y₃) f¹³(y₁,y₃) f¹²(y₁,y₂),  f = r(v₀; ·, ·)
//! ```

use crate::catalog::{cherednik, yang, Arity, RSolution};
use crate::linalg::{identity, kron, max_abs, unit, CMat};
use crate::tensorcore::{casimir, Leg, Tensor2, Tensor3};
use crate::{Error, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Sampling settings shared by the residual checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    /// Number of accepted samples.
    pub samples: usize,
    /// Pass threshold for the maximal residual.
    pub tol: f64,
    /// Seed of the ChaCha generator.
    pub seed: u64,
    /// Half-width of the sampling box in the real direction.
    pub re_half: f64,
    /// Half-width of the sampling box in the imaginary direction.
    pub im_half: f64,
    /// Minimal distance between points of one group (keeps away from the diagonal poles).
    pub min_sep: f64,
    /// Draws allowed per sample before giving up.
    pub max_retries: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 50, tol: 1e-9, seed: DEFAULT_SEED, re_half: 0.4, im_half: 0.2, min_sep: 0.08, max_retries: 200 }
    }
}

impl SampleConfig {
    /// Default box with the given sample count and tolerance.
    pub fn new(samples: usize, tol: f64) -> Self {
        SampleConfig { samples, tol, ..Default::default() }
    }

    /// Same settings with another seed.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Outcome of a sampled residual check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Identity that was checked.
    pub identity: String,
    /// Name of the solution.
    pub solution: String,
    /// Number of accepted samples.
    pub samples: usize,
    /// Largest residual over the samples.
    pub max_residual: f64,
    /// Parameters of the worst sample as `[re, im]` pairs.
    pub argmax: Vec<[f64; 2]>,
    /// Pass threshold.
    pub tolerance: f64,
    /// `max_residual < tolerance`.
    pub pass: bool,
    /// Seed of the sampler.
    pub seed: u64,
}

impl ResidualReport {
    fn from_samples(identity: &str, solution: &str, cfg: &SampleConfig, results: Vec<(f64, Vec<C64>)>) -> Self {
        let mut max_residual = 0.0;
        let mut argmax = Vec::new();
        for (r, pt) in &results {
            // NaN compares false; treat it as the worst possible residual.
            if r.is_nan() || *r > max_residual || argmax.is_empty() {
                max_residual = if r.is_nan() { f64::INFINITY } else { *r };
                argmax = pt.iter().map(|z| [z.re, z.im]).collect();
                if r.is_nan() {
                    break;
                }
            }
        }
        ResidualReport {
            identity: identity.to_string(),
            solution: solution.to_string(),
            samples: results.len(),
            max_residual,
            argmax,
            tolerance: cfg.tol,
            pass: max_residual < cfg.tol,
            seed: cfg.seed,
        }
    }
}

/// Seeded sampler of separated complex points in a box around a center.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    center: C64,
    cfg: SampleConfig,
}

impl Sampler {
    /// Sampler for the given configuration and box center.
    pub fn new(cfg: &SampleConfig, center: C64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(cfg.seed), center, cfg: *cfg }
    }

    fn point(&mut self) -> C64 {
        let a = self.rng.random_range(-self.cfg.re_half..=self.cfg.re_half);
        let b = self.rng.random_range(-self.cfg.im_half..=self.cfg.im_half);
        self.center + C64::new(a, b)
    }

    /// `k` points with pairwise distance at least `min_sep`.
    pub fn group(&mut self, k: usize) -> Result<Vec<C64>> {
        let mut out: Vec<C64> = Vec::with_capacity(k);
        let mut attempts = 0;
        while out.len() < k {
            attempts += 1;
            if attempts > 1000 * k.max(1) {
                return Err(Error::InvalidParameter("sampling box too small for the requested separation".into()));
            }
            let z = self.point();
            if out.iter().all(|w| (z - w).norm() >= self.cfg.min_sep) {
                out.push(z);
            }
        }
        Ok(out)
    }
}

fn resamplable(e: &Error) -> bool {
    matches!(e, Error::Pole(_) | Error::IllConditioned { .. })
}

/// Runs `f` on `cfg.samples` accepted draws of point groups of the given sizes.
fn run<F>(identity: &str, sol: &RSolution, cfg: &SampleConfig, groups: &[usize], f: F) -> Result<ResidualReport>
where
    F: Fn(&[Vec<C64>]) -> Result<f64>,
{
    let mut sampler = Sampler::new(cfg, sol.center());
    let mut results = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let mut tries = 0;
        loop {
            tries += 1;
            let pts = groups.iter().map(|&k| sampler.group(k)).collect::<Result<Vec<_>>>()?;
            match f(&pts) {
                Ok(r) => {
                    results.push((r, pts.concat()));
                    break;
                }
                Err(e) if resamplable(&e) && tries < cfg.max_retries => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(ResidualReport::from_samples(identity, sol.name(), cfg, results))
}

fn relative(diff: f64, scales: &[f64]) -> f64 {
    diff / scales.iter().fold(1.0_f64, |a, &b| a.max(b))
}

fn require_quantum(sol: &RSolution) -> Result<()> {
    if sol.arity().is_classical() {
        return Err(Error::InvalidParameter(format!("`{}` is a classical solution", sol.name())));
    }
    Ok(())
}

fn require_classical(sol: &RSolution) -> Result<()> {
    if !sol.arity().is_classical() {
        return Err(Error::InvalidParameter(format!("`{}` is not a classical solution", sol.name())));
    }
    Ok(())
}

/// Name of the AYBE form selected by the arity.
pub fn aybe_form(arity: Arity) -> &'static str {
    match arity {
        Arity::Difference => "aybe/difference",
        Arity::Spectral => "aybe/spectral",
        _ => "aybe/full",
    }
}

/// Residual of the associative Yang–Baxter equation.
pub fn aybe(sol: &RSolution, cfg: &SampleConfig) -> Result<ResidualReport> {
    require_quantum(sol)?;
    run(aybe_form(sol.arity()), sol, cfg, &[3, 3], |p| {
        let (v, y) = (&p[0], &p[1]);
        let lhs = aybe_terms(sol, v, y)?;
        Ok(lhs)
    })
}

fn aybe_terms(sol: &RSolution, v: &[C64], y: &[C64]) -> Result<f64> {
    let r = |a: usize, b: usize, c: usize, d: usize, leg: Leg| -> Result<Tensor3> {
        Ok(sol.eval4(v[a], v[b], y[c], y[d])?.embed_leg(leg))
    };
    let lhs = r(0, 1, 0, 1, Leg::L12)? * r(0, 2, 1, 2, Leg::L23)?;
    let t1 = r(0, 2, 0, 2, Leg::L13)? * r(2, 1, 0, 1, Leg::L12)?;
    let t2 = r(1, 2, 1, 2, Leg::L23)? * r(0, 1, 0, 2, Leg::L13)?;
    let diff = (&lhs - &(&t1 + &t2)).max_abs();
    Ok(relative(diff, &[lhs.max_abs(), t1.max_abs(), t2.max_abs()]))
}

/// Residual of the dual associative Yang–Baxter equation.
pub fn aybe_dual(sol: &RSolution, cfg: &SampleConfig) -> Result<ResidualReport> {
    require_quantum(sol)?;
    run("dual", sol, cfg, &[3, 3], |p| {
        let (v, y) = (&p[0], &p[1]);
        let r = |a: usize, b: usize, c: usize, d: usize, leg: Leg| -> Result<Tensor3> {
            Ok(sol.eval4(v[a], v[b], y[c], y[d])?.embed_leg(leg))
        };
        let lhs = r(1, 2, 1, 2, Leg::L23)? * r(0, 2, 0, 1, Leg::L12)?;
        let t1 = r(0, 1, 0, 1, Leg::L12)? * r(1, 2, 0, 2, Leg::L13)?;
        let t2 = r(0, 2, 0, 2, Leg::L13)? * r(1, 0, 1, 2, Leg::L23)?;
        let diff = (&lhs - &(&t1 + &t2)).max_abs();
        Ok(relative(diff, &[lhs.max_abs(), t1.max_abs(), t2.max_abs()]))
    })
}

/// Residual `max|r(v₁,v₂;y₁,y₂) + swap r(v₂,v₁;y₂,y₁)|`, relative to `max(1, max|r|)`.
pub fn unitarity(sol: &RSolution, cfg: &SampleConfig) -> Result<ResidualReport> {
    require_quantum(sol)?;
    run("unitarity", sol, cfg, &[2, 2], |p| {
        let (v, y) = (&p[0], &p[1]);
        let a = sol.eval4(v[0], v[1], y[0], y[1])?;
        let b = sol.eval4(v[1], v[0], y[1], y[0])?.swap();
        Ok(relative((&a + &b).max_abs(), &[a.max_abs(), b.max_abs()]))
    })
}

/// Residual of the classical Yang–Baxter equation in the two-parameter form.
pub fn cybe(sol: &RSolution, cfg: &SampleConfig) -> Result<ResidualReport> {
    require_classical(sol)?;
    run("cybe", sol, cfg, &[3], |p| {
        let y = &p[0];
        let r12 = sol.eval_classical(y[0], y[1])?.embed_leg(Leg::L12);
        let r13 = sol.eval_classical(y[0], y[2])?.embed_leg(Leg::L13);
        let r23 = sol.eval_classical(y[1], y[2])?.embed_leg(Leg::L23);
        let comm = |a: &Tensor3, b: &Tensor3| (a * b, b * a);
        let mut total = Tensor3::zeros(sol.n());
        let mut scale: f64 = 0.0;
        for (a, b) in [(&r12, &r13), (&r12, &r23), (&r13, &r23)] {
            let (ab, ba) = comm(a, b);
            scale = scale.max(ab.max_abs()).max(ba.max_abs());
            total = total + ab - ba;
        }
        Ok(relative(total.max_abs(), &[scale]))
    })
}

/// Residual of the quantum Yang–Baxter equation at fixed `v₀`.
pub fn qybe(sol: &RSolution, v0: C64, cfg: &SampleConfig) -> Result<ResidualReport> {
    if !matches!(sol.arity(), Arity::Difference | Arity::Spectral) {
        return Err(Error::InvalidParameter(format!("`{}` has no v-difference form", sol.name())));
    }
    run("qybe", sol, cfg, &[3], |p| {
        let y = &p[0];
        let a = sol.eval_spectral(v0, y[0], y[1])?.embed_leg(Leg::L12);
        let b = sol.eval_spectral(v0, y[0], y[2])?.embed_leg(Leg::L13);
        let c = sol.eval_spectral(v0, y[1], y[2])?.embed_leg(Leg::L23);
        let l = &(&a * &b) * &c;
        let r = &(&c * &b) * &a;
        Ok(relative((&l - &r).max_abs(), &[l.max_abs(), r.max_abs()]))
    })
}

/// Settings of the classical-limit extractor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitConfig {
    /// Largest step `v₀`; the sequence is `v_k = v₀ 2^{−k}`.
    pub v0: f64,
    /// Number of halvings.
    pub levels: usize,
    /// Richardson extrapolation order.
    pub order: usize,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig { v0: 0.1, levels: 8, order: 5 }
    }
}

/// Estimated `lim_{v→0} (pr⊗pr) r(v; y₁, y₂)` on a grid of `(y₁, y₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalLimit {
    /// Grid points.
    pub points: Vec<(C64, C64)>,
    /// Extrapolated values.
    pub values: Vec<Tensor2>,
    /// Difference between the two highest extrapolation levels, per point.
    pub error_estimates: Vec<f64>,
}

impl ClassicalLimit {
    /// Largest deviation from a classical solution on the grid.
    pub fn max_deviation(&self, classical: &RSolution) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for ((y1, y2), val) in self.points.iter().zip(&self.values) {
            worst = worst.max((val - &classical.eval_classical(*y1, *y2)?).max_abs());
        }
        Ok(worst)
    }
}

/// The sequence `(pr⊗pr) r(v_k; y₁, y₂)` for `v_k = v₀ 2^{−k}`, `k = 0..=levels`.
pub fn projected_sequence(sol: &RSolution, y1: C64, y2: C64, v0: f64, levels: usize) -> Result<Vec<(f64, Tensor2)>> {
    (0..=levels)
        .map(|k| {
            let v = v0 / 2f64.powi(k as i32);
            Ok((v, sol.eval_spectral(C64::new(v, 0.0), y1, y2)?.project_sl()))
        })
        .collect()
}

/// Richardson-extrapolated classical limit; fails with [`Error::Divergence`]
/// when the projected values do not settle as `v` shrinks.
pub fn classical_limit(sol: &RSolution, grid: &[(C64, C64)], cfg: &LimitConfig) -> Result<ClassicalLimit> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty grid".into()));
    }
    if cfg.levels < 3 || cfg.order == 0 || cfg.order > cfg.levels {
        return Err(Error::InvalidParameter("need levels ≥ 3 and 1 ≤ order ≤ levels".into()));
    }
    let mut out = ClassicalLimit { points: grid.to_vec(), values: Vec::new(), error_estimates: Vec::new() };
    for &(y1, y2) in grid {
        let seq: Vec<Tensor2> = projected_sequence(sol, y1, y2, cfg.v0, cfg.levels)?.into_iter().map(|(_, t)| t).collect();
        let d: Vec<f64> = seq.windows(2).map(|w| (&w[1] - &w[0]).max_abs()).collect();
        let l = d.len();
        if d[l - 1] > 1e-8 && d[l - 1] > 1.5 * d[l - 2] {
            return Err(Error::Divergence(format!(
                "`{}`: projected values at y = ({y1}, {y2}) grow as v → 0 (successive differences {:.3e}, {:.3e})",
                sol.name(),
                d[l - 2],
                d[l - 1]
            )));
        }
        // Neville table in the variable v with ratio 2.
        let mut table: Vec<Vec<Tensor2>> = seq.iter().map(|t| vec![t.clone()]).collect();
        for k in 1..table.len() {
            for j in 1..=cfg.order.min(k) {
                let f = 1.0 / (2f64.powi(j as i32) - 1.0);
                let next = &table[k][j - 1] + &((&table[k][j - 1] - &table[k - 1][j - 1]) * C64::new(f, 0.0));
                table[k].push(next);
            }
        }
        let last = table.len() - 1;
        let best = table[last][cfg.order].clone();
        let est = (&best - &table[last - 1][cfg.order]).max_abs();
        out.values.push(best);
        out.error_estimates.push(est);
    }
    Ok(out)
}

/// Laurent coefficients in `v` at fixed `(y₁, y₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentData {
    /// Sampling radius.
    pub radius: f64,
    /// Lowest order stored.
    pub min_order: i32,
    /// Coefficients of `v^{min_order}, v^{min_order+1}, …`.
    pub coeffs: Vec<Tensor2>,
}

/// Number of circle samples.
pub const CIRCLE_POINTS: usize = 64;

/// Lowest and highest Laurent orders extracted by [`laurent_v`].
pub const LAURENT_ORDERS: (i32, i32) = (-4, 2);

fn circle_coeffs(f: impl Fn(C64) -> Result<Tensor2>, n: usize, radius: f64) -> Result<(i32, Vec<Tensor2>)> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let values = (0..CIRCLE_POINTS)
        .map(|k| f(C64::from_polar(radius, 2.0 * PI * k as f64 / CIRCLE_POINTS as f64)))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = LAURENT_ORDERS;
    let coeffs = (lo..=hi)
        .map(|m| {
            let mut acc = Tensor2::zeros(n);
            for (k, val) in values.iter().enumerate() {
                let phase = C64::from_polar(1.0, -2.0 * PI * (k as f64) * (m as f64) / CIRCLE_POINTS as f64);
                acc = acc + val * phase;
            }
            acc * C64::new(radius.powi(-m) / CIRCLE_POINTS as f64, 0.0)
        })
        .collect();
    Ok((lo, coeffs))
}

impl LaurentData {
    /// Coefficient of `v^m`.
    pub fn coeff(&self, m: i32) -> Result<&Tensor2> {
        let idx = m - self.min_order;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            return Err(Error::InvalidParameter(format!("order {m} was not extracted")));
        }
        Ok(&self.coeffs[idx as usize])
    }

    /// Order of the pole: the largest `k` with `|r₋ₖ| > tol` (0 if none).
    pub fn pole_order(&self, tol: f64) -> usize {
        (1..=-self.min_order).rev().find(|&k| self.coeffs[(-k - self.min_order) as usize].max_abs() > tol).map_or(0, |k| k as usize)
    }

    /// Writes `r_m = α 𝟙⊗𝟙 + rest` and returns `(α, max|rest|)`.
    pub fn identity_component(&self, m: i32) -> Result<(C64, f64)> {
        let c = self.coeff(m)?;
        let n = c.n();
        let one = Tensor2::simple(&identity(n), &identity(n));
        Ok(proportionality(c, &one))
    }
}

/// Least-squares `α` with `t ≈ α·base` and the defect `max|t − α·base|`.
pub fn proportionality(t: &Tensor2, base: &Tensor2) -> (C64, f64) {
    let num: C64 = base.kron_matrix().iter().zip(t.kron_matrix().iter()).map(|(b, x)| b.conj() * x).sum();
    let den: f64 = base.kron_matrix().iter().map(|b| b.norm_sqr()).sum();
    let alpha = num / den;
    (alpha, (t - &(base * alpha)).max_abs())
}

/// Laurent coefficients of `v ↦ r(v; y₁, y₂)` at `v = 0` from a circle of the given radius.
pub fn laurent_v(sol: &RSolution, y1: C64, y2: C64, radius: f64) -> Result<LaurentData> {
    let (min_order, coeffs) = circle_coeffs(|v| sol.eval_spectral(v, y1, y2), sol.n(), radius)?;
    Ok(LaurentData { radius, min_order, coeffs })
}

/// Residue of a classical solution and its comparison with the Casimir element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirResidue {
    /// `α` in `r₋₁ ≈ αΩ`.
    pub alpha: C64,
    /// `max|r₋₁ − αΩ|`.
    pub defect: f64,
}

/// Residue of `y ↦ r(y₁, y₁ + y)` at `y = 0` compared with `Ω`.
pub fn casimir_residue(sol: &RSolution, y1: C64, radius: f64) -> Result<CasimirResidue> {
    require_classical(sol)?;
    let (lo, coeffs) = circle_coeffs(|y| sol.eval_classical(y1, y1 + y), sol.n(), radius)?;
    let res = &coeffs[(-1 - lo) as usize];
    let (alpha, defect) = proportionality(res, &casimir(sol.n())?);
    Ok(CasimirResidue { alpha, defect })
}

/// One row of a degeneration sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegenerationRow {
    pub t: f64,
    /// `max_y |(1/t) cherednik(y/t) − yang(y)|`.
    pub error: f64,
}

/// Degeneration of Cherednik's solution to Yang's solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerationReport {
    pub rows: Vec<DegenerationRow>,
    /// Whether the error decreases along the sequence.
    pub monotone: bool,
    /// Error at the last `t`.
    pub final_error: f64,
    pub tolerance: f64,
    /// `final_error < tolerance`.
    pub pass: bool,
}

/// Checks `(1/t)·cherednik(y/t) → yang(y)` along `ts` on the grid `ys`.
pub fn degeneration_trg_to_rat(ts: &[f64], ys: &[C64], tol: f64) -> Result<DegenerationReport> {
    if ts.is_empty() || ys.is_empty() {
        return Err(Error::InvalidParameter("empty t-sequence or y-grid".into()));
    }
    let mut rows = Vec::with_capacity(ts.len());
    for &t in ts {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
        }
        let mut err: f64 = 0.0;
        for &y in ys {
            let a = cherednik(y / t)? * C64::new(1.0 / t, 0.0);
            err = err.max((&a - &yang(y)?).max_abs());
        }
        rows.push(DegenerationRow { t, error: err });
    }
    let monotone = rows.windows(2).all(|w| w[1].error <= w[0].error);
    let final_error = rows.last().map(|r| r.error).unwrap_or(f64::INFINITY);
    Ok(DegenerationReport { rows, monotone, final_error, tolerance: tol, pass: final_error < tol })
}

/// Matrix-valued test function of `m` variables.
pub type TestFunction = Arc<dyn Fn(&[C64]) -> CMat + Send + Sync>;

fn random_matrix(rng: &mut ChaCha8Rng, size: usize) -> CMat {
    CMat::from_fn(size, size, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Constant test function with seeded random entries, of size `n^m`.
pub fn constant_test_function(n: usize, m: usize, seed: u64) -> TestFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c0 = random_matrix(&mut rng, n.pow(m as u32));
    Arc::new(move |_| c0.clone())
}

/// Test function `C₀ + Σ_i x_i C_i + Σ_i x_i² D_i + x₁x_m E` with seeded random matrices of size `n^m`.
pub fn polynomial_test_function(n: usize, m: usize, seed: u64) -> TestFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = n.pow(m as u32);
    let c0 = random_matrix(&mut rng, size);
    let lin: Vec<CMat> = (0..m).map(|_| random_matrix(&mut rng, size)).collect();
    let quad: Vec<CMat> = (0..m).map(|_| random_matrix(&mut rng, size)).collect();
    let mixed = random_matrix(&mut rng, size);
    Arc::new(move |x| {
        let mut out = c0.clone();
        for i in 0..x.len().min(lin.len()) {
            out += &lin[i] * x[i] + &quad[i] * (x[i] * x[i]);
        }
        if let (Some(a), Some(b)) = (x.first(), x.last()) {
            out += &mixed * (a * b);
        }
        out
    })
}

/// Places a two-leg tensor on sites `i` (first leg) and `j` (second leg) of
/// `Mat_n^{⊗m}`, identity elsewhere. Sites are 0-based.
pub fn embed_pair(t: &Tensor2, m: usize, i: usize, j: usize) -> Result<CMat> {
    if i == j || i >= m || j >= m {
        return Err(Error::InvalidParameter(format!("invalid site pair ({i}, {j}) for m = {m}")));
    }
    let n = t.n();
    let mut out = CMat::zeros(n.pow(m as u32), n.pow(m as u32));
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                for d in 1..=n {
                    let coef = t.coeff(a, b, c, d);
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    let mut acc = CMat::identity(1, 1);
                    for s in 0..m {
                        let f = if s == i {
                            unit(n, a, b)
                        } else if s == j {
                            unit(n, c, d)
                        } else {
                            identity(n)
                        };
                        acc = kron(&acc, &f);
                    }
                    out += acc * coef;
                }
            }
        }
    }
    Ok(out)
}

/// Settings of the Dunkl commutator check.
#[derive(Debug, Clone, PartialEq)]
pub struct DunklConfig {
    /// Number of sites `m`.
    pub m: usize,
    /// Level `κ` of the derivative part.
    pub kappa: f64,
    /// Finite-difference step (refined once by Richardson extrapolation).
    pub h: f64,
    /// Fixed spectral parameters `y₁, …, y_m`.
    pub ys: Vec<C64>,
}

impl DunklConfig {
    /// Three sites with the default step `h = 1e−4` and fixed `y = (0.1+0.05i, 0.5−0.1i, 0.9+0.2i)`.
    pub fn three_sites(kappa: f64) -> Self {
        DunklConfig { m: 3, kappa, h: 1e-4, ys: vec![C64::new(0.1, 0.05), C64::new(0.5, -0.1), C64::new(0.9, 0.2)] }
    }
}

type MatFn<'a> = dyn Fn(&[C64]) -> Result<CMat> + 'a;

/// `(θ_i F)(x) = κ ∂_i F(x) + Σ_{j≠i} r̃^{ij}(x_i − x_j; y_i, y_j) F(K^{ij} x)`.
fn dunkl_apply(sol: &RSolution, cfg: &DunklConfig, i: usize, f: &MatFn<'_>, x: &[C64]) -> Result<CMat> {
    let mut out = f(x)? * C64::new(0.0, 0.0);
    if cfg.kappa != 0.0 {
        let central = |h: f64| -> Result<CMat> {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[i] += h;
            xm[i] -= h;
            Ok((f(&xp)? - f(&xm)?) / C64::new(2.0 * h, 0.0))
        };
        let coarse = central(cfg.h)?;
        let fine = central(cfg.h / 2.0)?;
        out += (fine * C64::new(4.0, 0.0) - coarse) * C64::new(cfg.kappa / 3.0, 0.0);
    }
    for j in 0..cfg.m {
        if j == i {
            continue;
        }
        let r = sol.eval_spectral(x[i] - x[j], cfg.ys[i], cfg.ys[j])?;
        let mut xs = x.to_vec();
        xs.swap(i, j);
        out += embed_pair(&r, cfg.m, i, j)? * f(&xs)?;
    }
    Ok(out)
}

/// Largest `|([θ_i, θ_j] F)(x)|` over `i < j` and sampled `x`.
pub fn dunkl_commutator(sol: &RSolution, dcfg: &DunklConfig, testfn: &TestFunction, cfg: &SampleConfig) -> Result<ResidualReport> {
    if !matches!(sol.arity(), Arity::Difference | Arity::Spectral) {
        return Err(Error::InvalidParameter(format!("`{}` has no v-difference form", sol.name())));
    }
    if dcfg.m < 2 || dcfg.ys.len() != dcfg.m {
        return Err(Error::InvalidParameter("need m ≥ 2 sites and one y per site".into()));
    }
    for a in 0..dcfg.m {
        for b in a + 1..dcfg.m {
            if (dcfg.ys[a] - dcfg.ys[b]).norm() < 1e-13 {
                return Err(Error::Pole(format!("y_{} = y_{}", a + 1, b + 1)));
            }
        }
    }
    let size = sol.n().pow(dcfg.m as u32);
    if testfn(&vec![C64::new(0.0, 0.0); dcfg.m]).shape() != (size, size) {
        return Err(Error::InvalidParameter(format!("test function must be {size}×{size}")));
    }
    let identity_name = if dcfg.kappa == 0.0 { "dunkl/algebraic" } else { "dunkl" };
    let f = |x: &[C64]| -> Result<CMat> { Ok(testfn(x)) };
    run(identity_name, sol, cfg, &[dcfg.m], |p| {
        let x = &p[0];
        let mut worst: f64 = 0.0;
        for i in 0..dcfg.m {
            for j in i + 1..dcfg.m {
                let tj = |z: &[C64]| dunkl_apply(sol, dcfg, j, &f, z);
                let ti = |z: &[C64]| dunkl_apply(sol, dcfg, i, &f, z);
                let a = dunkl_apply(sol, dcfg, i, &tj, x)?;
                let b = dunkl_apply(sol, dcfg, j, &ti, x)?;
                worst = worst.max(max_abs(&(a - b)));
            }
        }
        Ok(worst)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get;
    use crate::linalg::c;

    fn cfg(samples: usize, tol: f64) -> SampleConfig {
        SampleConfig::new(samples, tol)
    }

    #[test]
    fn sampler_is_reproducible_and_separated() {
        let config = cfg(1, 1.0);
        let a = Sampler::new(&config, C64::new(0.0, 0.0)).group(4).unwrap();
        let b = Sampler::new(&config, C64::new(0.0, 0.0)).group(4).unwrap();
        assert_eq!(a, b);
        for i in 0..4 {
            for j in i + 1..4 {
                assert!((a[i] - a[j]).norm() >= config.min_sep);
            }
        }
    }

    #[test]
    fn zero_solution_has_zero_residual() {
        let zero = RSolution::new("zero", Arity::Difference, 2, vec![], |_| Ok(Tensor2::zeros(2)));
        let rep = aybe(&zero, &cfg(5, 1e-12)).unwrap();
        assert_eq!(rep.max_residual, 0.0);
        assert!(rep.pass);
    }

    #[test]
    fn rational_solution_passes_aybe_and_unitarity() {
        let r = get("rat21").unwrap();
        let rep = aybe(&r, &cfg(20, 1e-9)).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.identity, "aybe/spectral");
        assert!(unitarity(&r, &cfg(20, 1e-10)).unwrap().pass);
        assert!(aybe_dual(&r, &cfg(20, 1e-9)).unwrap().pass);
    }

    #[test]
    fn non_unitary_perturbation_fails_dual() {
        let base = get("rat21_degenerate").unwrap();
        let bumped = RSolution::new("bumped", Arity::Difference, 2, vec![], move |a| {
            let e11 = unit(2, 1, 1);
            Ok(base.eval(a)? + Tensor2::simple(&e11, &e11) * C64::new(0.3, 0.0))
        });
        assert!(!unitarity(&bumped, &cfg(5, 1e-8)).unwrap().pass);
        assert!(!aybe_dual(&bumped, &cfg(5, 1e-8)).unwrap().pass);
    }

    #[test]
    fn symmetric_constant_is_not_unitary() {
        let k = RSolution::new("sym", Arity::Difference, 2, vec![], |_| Ok(Tensor2::simple(&identity(2), &identity(2))));
        assert!(!unitarity(&k, &cfg(3, 1e-8)).unwrap().pass);
    }

    #[test]
    fn classical_checks_reject_wrong_arity() {
        assert!(aybe(&get("yang").unwrap(), &cfg(1, 1.0)).is_err());
        assert!(cybe(&get("rat21").unwrap(), &cfg(1, 1.0)).is_err());
        assert!(casimir_residue(&get("trg21").unwrap(), C64::new(0.0, 0.0), 0.1).is_err());
    }

    #[test]
    fn yang_residue_is_casimir() {
        let res = casimir_residue(&get("yang").unwrap(), C64::new(0.0, 0.0), 0.1).unwrap();
        assert!((res.alpha - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(res.defect < 1e-12);
    }

    #[test]
    fn laurent_of_degenerate_rational() {
        let r = get("rat21_degenerate").unwrap();
        let l = laurent_v(&r, c(0.0, 0.0), c(0.7, 0.1), 0.1).unwrap();
        let (alpha, defect) = l.identity_component(-1).unwrap();
        assert!((alpha - C64::new(0.5, 0.0)).norm() < 1e-12);
        assert!(defect < 1e-12);
        assert_eq!(l.pole_order(1e-8), 1);
        assert!(l.coeff(-7).is_err());
    }

    #[test]
    fn limit_of_degenerate_rational_is_yang() {
        let r = get("rat21_degenerate").unwrap();
        let grid = [(c(0.0, 0.0), c(0.6, 0.1)), (c(0.2, 0.0), c(-0.5, 0.3))];
        let lim = classical_limit(&r, &grid, &LimitConfig::default()).unwrap();
        assert!(lim.max_deviation(&get("yang").unwrap()).unwrap() < 1e-10);
        assert!(classical_limit(&r, &[], &LimitConfig::default()).is_err());
    }

    #[test]
    fn degeneration_at_t_one_is_finite() {
        let rep = degeneration_trg_to_rat(&[1.0], &[c(0.3, 0.0)], 1e-6).unwrap();
        assert!(rep.final_error.is_finite());
        assert!(degeneration_trg_to_rat(&[], &[c(0.3, 0.0)], 1e-6).is_err());
    }

    #[test]
    fn embed_pair_matches_leg_embedding() {
        let t = get("rat21").unwrap().eval(&[c(0.3, 0.1), c(0.2, 0.0), c(0.9, -0.2)]).unwrap();
        let e13 = embed_pair(&t, 3, 0, 2).unwrap();
        assert!(max_abs(&(e13 - t.embed_leg(Leg::L13).kron_matrix())) < 1e-15);
        assert!(embed_pair(&t, 3, 1, 1).is_err());
    }

    #[test]
    fn dunkl_commute_for_constant_function() {
        let sol = get("rat21").unwrap();
        let f = constant_test_function(2, 3, 7);
        let rep = dunkl_commutator(&sol, &DunklConfig::three_sites(0.0), &f, &cfg(3, 1e-9)).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}
