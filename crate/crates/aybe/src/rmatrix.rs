//! Construction engines for geometric r-matrices `r = ev̄_{y₂} ∘ res̄_{y₁}⁻¹`.
//!
//! Each engine describes the space `Π` of compatible homomorphisms by an
//! explicit basis, evaluates the residue functional `res̄` at `y₁` and the
//! evaluation functional `ev̄` at `y₂` on that basis, inverts the residue
//! matrix and converts the resulting linear map on `Mat_n` into a tensor via
//! `e_{ij} ↦ α e_{kl}  ⇝  α e_{ji} ⊗ e_{kl}`.
//!
//! * elliptic `(2, 1)`: theta-function basis `{F₁, F₂, G₁, G₂}` with entries in
//!   `θ₃(·|4τ)`, `θ₂(·|4τ)`;
//! * nodal and cuspidal `(n, d)`: block matrices of homogeneous polynomials in
//!   `(z₀, z₁)` of degrees `[[1, 0], [2, 1]]` for the splitting
//!   `𝒪^{n−d} ⊕ 𝒪(1)^d`, cut out by linear gluing constraints;
//! * nodal semistable `(2, 0)`: all blocks of degree 1.

use crate::bundles::{cusp_engine_form, gcd, nodal_engine_form};
use crate::catalog::{Arity, RSolution};
use crate::curves::CurveKind;
use crate::linalg::{condition_number, identity, inverse, kron, re, singular_values, solve_checked, CMat};
use crate::tensorcore::{LinMap, Tensor2};
use crate::thetafn::{th, theta_j_prime, ThetaParams};
use crate::{Error, Result, C64};
use std::f64::consts::PI;
use std::sync::Arc;

/// Default cap on the condition number of the residue system.
pub const DEFAULT_COND_CAP: f64 = 1e10;

/// Numerical settings shared by the engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    /// Residue systems with a larger condition number are rejected.
    pub cond_cap: f64,
    /// Relative singular-value threshold for the constraint kernel.
    pub kernel_tol: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { cond_cap: DEFAULT_COND_CAP, kernel_tol: 1e-10 }
    }
}

/// A basis of the space of compatible homomorphisms together with the
/// residue and evaluation functionals evaluated on it.
#[derive(Debug, Clone, PartialEq)]
pub struct HomSpace {
    /// Curve type.
    pub kind: CurveKind,
    /// Matrix size `n`.
    pub n: usize,
    /// `res̄_{y₁}` on the basis: column `k` is the row-major flattening of `res̄(basis_k)`.
    pub res: CMat,
    /// `ev̄_{y₂}` on the basis, flattened the same way.
    pub ev: CMat,
}

impl HomSpace {
    /// Dimension of the space.
    pub fn dim(&self) -> usize {
        self.res.ncols()
    }

    /// Condition number of the residue map restricted to the space.
    pub fn residue_condition(&self) -> f64 {
        condition_number(&self.res)
    }

    /// The linear map `ev̄ ∘ res̄⁻¹` on `Mat_n`.
    pub fn compose(&self, cfg: &EngineConfig) -> Result<LinMap> {
        let nn = self.n * self.n;
        if self.dim() != nn || self.res.nrows() != nn {
            return Err(Error::InvalidParameter(format!("space has dimension {} but n² = {nn}", self.dim())));
        }
        // ev · res⁻¹ = (res⁻ᵀ evᵀ)ᵀ
        let x = solve_checked(&self.res.transpose(), &self.ev.transpose(), cfg.cond_cap, "residue map")?;
        LinMap::from_matrix(self.n, x.transpose())
    }
}

/// Output of an engine: the tensor and the conditioning of its residue system.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineOutput {
    pub tensor: Tensor2,
    pub condition: f64,
}

fn check_distinct(a: C64, b: C64, what: &str) -> Result<()> {
    if (a - b).norm() < 1e-13 {
        return Err(Error::Pole(format!("coincident {what}")));
    }
    Ok(())
}

fn flat(m: &CMat) -> Vec<C64> {
    let (r, c) = m.shape();
    (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| m[(i, j)]).collect()
}

fn columns(n: usize, mats: &[CMat]) -> CMat {
    CMat::from_fn(n * n, mats.len(), |r, k| flat(&mats[k])[r])
}

// ---------------------------------------------------------------------------
// Elliptic (2, 1)
// ---------------------------------------------------------------------------

/// Basis `{F₁, F₂, G₁, G₂}` of compatible homomorphisms between the rank-two
/// degree-one bundles with moduli `x₁`, `x₂`, twisted by `𝒪(y₁)`.
///
/// ```text
///   x = x₂ − x₁,  q_x = exp(−πix),  φ(z) = exp(−2πi(z+τ)),
///   ψ(z) = −exp(−2πiz + 2πiy₁ − 2πiτ),  T_j = θ_j(·|4τ)
///   u(z) = 2(z − y₁ + (x+τ)/2),   w(z) = 2(z − y₁ + x/2)
///   F_k(z) = diag(T(u(z)), T(u(z+τ)) / (q_x ψ(z)))
///   G_k(z) = [[0, T(w(z))], [φ(z) T(w(z+τ)) / (q_x ψ(z)), 0]]
/// ```
/// with `T = T₃` for `k = 1` and `T = T₂` for `k = 2`. Each basis element
/// satisfies `B(z+1) = B(z)` and `B(z+τ) Φ_{x₁}(z) = q_x ψ(z) Φ_{x₁}(z) B(z)`.
#[derive(Debug, Clone, Copy)]
pub struct EllipticBasis {
    p: ThetaParams,
    p4: ThetaParams,
    x: C64,
    y1: C64,
}

impl EllipticBasis {
    /// Basis for moduli difference `x = x₂ − x₁` and twist point `y₁`.
    pub fn new(p: &ThetaParams, x: C64, y1: C64) -> Self {
        EllipticBasis { p: *p, p4: p.scaled(4.0), x, y1 }
    }

    fn tau(&self) -> C64 {
        self.p.tau()
    }

    fn qx(&self) -> C64 {
        (C64::new(0.0, -PI) * self.x).exp()
    }

    fn phi(&self, z: C64) -> C64 {
        (C64::new(0.0, -2.0 * PI) * (z + self.tau())).exp()
    }

    fn psi(&self, z: C64) -> C64 {
        -(C64::new(0.0, 2.0 * PI) * (self.y1 - z - self.tau())).exp()
    }

    fn big_t(&self, k: usize, z: C64) -> C64 {
        th(if k == 1 { 3 } else { 2 }, z, &self.p4)
    }

    fn u(&self, z: C64) -> C64 {
        (z - self.y1 + (self.x + self.tau()) / 2.0) * 2.0
    }

    fn w(&self, z: C64) -> C64 {
        (z - self.y1 + self.x / 2.0) * 2.0
    }

    /// Diagonal basis element `F_k(z)`, `k ∈ {1, 2}`.
    pub fn f(&self, k: usize, z: C64) -> CMat {
        let tau = self.tau();
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = self.big_t(k, self.u(z));
        m[(1, 1)] = self.big_t(k, self.u(z + tau)) / (self.qx() * self.psi(z));
        m
    }

    /// Off-diagonal basis element `G_k(z)`, `k ∈ {1, 2}`.
    pub fn g(&self, k: usize, z: C64) -> CMat {
        let tau = self.tau();
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = self.big_t(k, self.w(z));
        m[(1, 0)] = self.phi(z) * self.big_t(k, self.w(z + tau)) / (self.qx() * self.psi(z));
        m
    }

    /// All four basis elements at `z`, ordered `F₁, F₂, G₁, G₂`.
    pub fn all(&self, z: C64) -> [CMat; 4] {
        [self.f(1, z), self.f(2, z), self.g(1, z), self.g(2, z)]
    }

    /// Automorphy factor `Φ_{x₁}(z)` up to the scalar `q_{x₁}`, which cancels in
    /// the compatibility condition.
    pub fn cyclic(&self, z: C64) -> CMat {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = re(1.0);
        m[(1, 0)] = self.phi(z);
        m
    }

    /// Multiplier `q_x ψ(z)` in the compatibility condition.
    pub fn multiplier(&self, z: C64) -> C64 {
        self.qx() * self.psi(z)
    }
}

/// Residue normalization `θ₃′((1+τ)/2 | τ)`.
fn elliptic_res_const(p: &ThetaParams) -> C64 {
    theta_j_prime(3, (p.tau() + 1.0) / 2.0, p).expect("theta index 3")
}

/// The space `Π` for the elliptic engine with its residue/evaluation data:
/// `res̄(F) = F(y₁)/θ₃′((1+τ)/2)`, `ev̄(F) = F(y₂)/θ₃(y + (1+τ)/2)`.
pub fn elliptic_hom_space(p: &ThetaParams, x1: C64, x2: C64, y1: C64, y2: C64) -> HomSpace {
    let basis = EllipticBasis::new(p, x2 - x1, y1);
    let c_res = elliptic_res_const(p);
    let c_ev = th(3, y2 - y1 + (p.tau() + 1.0) / 2.0, p);
    let res: Vec<CMat> = basis.all(y1).into_iter().map(|m| m / c_res).collect();
    let ev: Vec<CMat> = basis.all(y2).into_iter().map(|m| m / c_ev).collect();
    HomSpace { kind: CurveKind::Elliptic, n: 2, res: columns(2, &res), ev: columns(2, &ev) }
}

/// Post-gauge `diag(exp(−πiy), exp(πiτ/2))` making the elliptic output depend
/// only on `(x₂ − x₁, y₂ − y₁)`.
pub fn elliptic_post_gauge(p: &ThetaParams, y: C64) -> CMat {
    let mut g = CMat::zeros(2, 2);
    g[(0, 0)] = (C64::new(0.0, -PI) * y).exp();
    g[(1, 1)] = (C64::new(0.0, PI / 2.0) * p.tau()).exp();
    g
}

/// Elliptic `(2, 1)` engine with diagnostics.
///
/// The residue matrix is block diagonal (diagonal entries from `F₁, F₂`,
/// off-diagonal entries from `G₁, G₂`), so the inversion splits into two
/// independent `2 × 2` systems, solved separately.
pub fn engine_elliptic_21_with(p: &ThetaParams, x1: C64, x2: C64, y1: C64, y2: C64, cfg: &EngineConfig) -> Result<EngineOutput> {
    check_distinct(y1, y2, "points y1 = y2")?;
    let space = elliptic_hom_space(p, x1, x2, y1, y2);
    // Flattened positions: 0 = (1,1), 1 = (1,2), 2 = (2,1), 3 = (2,2).
    let blocks: [([usize; 2], [usize; 2]); 2] = [([0, 3], [0, 1]), ([1, 2], [2, 3])];
    let mut l = CMat::zeros(4, 4);
    let mut condition: f64 = 0.0;
    for (entries, basis_idx) in blocks {
        let r = CMat::from_fn(2, 2, |i, j| space.res[(entries[i], basis_idx[j])]);
        let v = CMat::from_fn(2, 2, |i, j| space.ev[(entries[i], basis_idx[j])]);
        condition = condition.max(condition_number(&r));
        let x = solve_checked(&r.transpose(), &v.transpose(), cfg.cond_cap, "elliptic residue block")?.transpose();
        for i in 0..2 {
            for j in 0..2 {
                l[(entries[i], entries[j])] = x[(i, j)];
            }
        }
    }
    let raw = LinMap::from_matrix(2, l)?.to_tensor();
    let g1 = elliptic_post_gauge(p, y1);
    let g2 = elliptic_post_gauge(p, y2);
    let tensor = raw.sandwich(&g1, &g2, &inverse(&g1, "gauge")?, &inverse(&g2, "gauge")?);
    Ok(EngineOutput { tensor, condition })
}

/// Elliptic `(2, 1)` engine `r(x₁, x₂; y₁, y₂)`.
pub fn engine_elliptic_21(p: &ThetaParams, x1: C64, x2: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    Ok(engine_elliptic_21_with(p, x1, x2, y1, y2, &EngineConfig::default())?.tensor)
}

// ---------------------------------------------------------------------------
// Singular curves
// ---------------------------------------------------------------------------

/// Unknown coefficients of a block matrix of homogeneous polynomials: entry
/// `(i, j)` of degree `deg(i, j)` is `Σ_k c_{ijk} z₀^k z₁^{deg−k}`.
struct PolyMatrix {
    n: usize,
    deg: Vec<Vec<usize>>,
    idx: Vec<(usize, usize, usize)>,
}

impl PolyMatrix {
    fn new(deg: Vec<Vec<usize>>) -> Self {
        let n = deg.len();
        let mut idx = Vec::new();
        for (i, row) in deg.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                for k in 0..=d {
                    idx.push((i, j, k));
                }
            }
        }
        PolyMatrix { n, deg, idx }
    }

    fn unknowns(&self) -> usize {
        self.idx.len()
    }

    /// Linear map `coefficients ↦ vec(F̂)` where entry `(i,j)` of `F̂` collects
    /// `f(k, deg) · c_{ijk}`.
    fn functional(&self, f: impl Fn(usize, usize) -> C64) -> CMat {
        let n = self.n;
        let mut a = CMat::zeros(n * n, self.unknowns());
        for (col, &(i, j, k)) in self.idx.iter().enumerate() {
            a[(i * n + j, col)] = f(k, self.deg[i][j]);
        }
        a
    }

    /// `vec(F̂ M)` as a function of the coefficients, given `vec(F̂)`.
    fn right_mul(&self, a: &CMat, m: &CMat) -> CMat {
        self.map_columns(a, |f| f * m)
    }

    /// `vec(M F̂)` as a function of the coefficients, given `vec(F̂)`.
    fn left_mul(&self, m: &CMat, a: &CMat) -> CMat {
        self.map_columns(a, |f| m * f)
    }

    fn map_columns(&self, a: &CMat, op: impl Fn(&CMat) -> CMat) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n * n, a.ncols());
        for c in 0..a.ncols() {
            let f = CMat::from_fn(n, n, |i, j| a[(i * n + j, c)]);
            let g = op(&f);
            for i in 0..n {
                for j in 0..n {
                    out[(i * n + j, c)] = g[(i, j)];
                }
            }
        }
        out
    }

    /// Value at `(z₀ : z₁) = (1 : y)`.
    fn at(&self, y: C64) -> CMat {
        self.functional(|k, d| y.powu((d - k) as u32))
    }
}

fn stable_degrees(n1: usize, n2: usize) -> Vec<Vec<usize>> {
    let n = n1 + n2;
    (0..n)
        .map(|i| (0..n).map(|j| match (i < n1, j < n1) {
            (true, true) => 1,
            (true, false) => 0,
            (false, true) => 2,
            (false, false) => 1,
        }).collect())
        .collect()
}

/// Orthonormal basis of the kernel of `c` (as columns).
fn kernel(c: &CMat, expected: usize, tol: f64) -> Result<CMat> {
    let cols = c.ncols();
    let mut padded = CMat::zeros(cols.max(c.nrows()), cols);
    padded.view_mut((0, 0), (c.nrows(), cols)).copy_from(c);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::InvalidParameter("SVD failed".into()))?;
    let s = &svd.singular_values;
    let smax = singular_values(c).first().copied().unwrap_or(0.0);
    let null: Vec<usize> = (0..s.len()).filter(|&i| s[i] <= tol * smax.max(1.0)).collect();
    if null.len() != expected {
        return Err(Error::IllConditioned {
            cond: f64::INFINITY,
            context: format!("gluing constraints have a {}-dimensional solution space, expected {expected}", null.len()),
        });
    }
    Ok(CMat::from_fn(cols, expected, |r, k| vt[(null[k], r)].conj()))
}

fn singular_hom_space(kind: CurveKind, poly: &PolyMatrix, constraint: &CMat, res: CMat, ev: CMat, cfg: &EngineConfig) -> Result<HomSpace> {
    let n = poly.n;
    let k = kernel(constraint, n * n, cfg.kernel_tol)?;
    Ok(HomSpace { kind, n, res: res * &k, ev: ev * &k })
}

fn validate_nd(n: usize, d: usize) -> Result<(usize, usize)> {
    if d == 0 || d >= n {
        return Err(Error::InvalidParameter(format!("degree must satisfy 0 < d < n, got (n, d) = ({n}, {d})")));
    }
    if gcd(n, d) != 1 {
        return Err(Error::NotCoprime(n, d));
    }
    Ok((n - d, d))
}

/// Space `Π̃` for the nodal engine.
///
/// Unknown `F` has blocks of degrees `[[1, 0], [2, 1]]`; with
/// `F(0)` the `z₀^deg` coefficient times `(−1)^deg` and `F(∞)` the `z₁^deg`
/// coefficient, the gluing constraint is
/// `F(0)·Ñ(t₁) = y₁·Ñ(t₂)·F(∞)`.
/// `res̄(F) = F(1, y₁)/y₁` and `ev̄(F) = F(1, y₂)/(y₂ − y₁)`.
pub fn nodal_hom_space(n: usize, d: usize, t1: C64, t2: C64, y1: C64, y2: C64, cfg: &EngineConfig) -> Result<HomSpace> {
    let (n1, n2) = validate_nd(n, d)?;
    let m1 = nodal_engine_form(n1, n2, t1)?;
    let m2 = nodal_engine_form(n1, n2, t2)?;
    nodal_like_space(PolyMatrix::new(stable_degrees(n1, n2)), &m1, &(m2 * y1), y1, y2, cfg)
}

fn nodal_like_space(poly: PolyMatrix, m_src: &CMat, m_dst: &CMat, y1: C64, y2: C64, cfg: &EngineConfig) -> Result<HomSpace> {
    if y1.norm() < 1e-13 || y2.norm() < 1e-13 {
        return Err(Error::Pole("y1 and y2 must be nonzero on the nodal curve".into()));
    }
    check_distinct(y1, y2, "points y1 = y2")?;
    let f0 = poly.functional(|k, d| if k == d { re(if d % 2 == 0 { 1.0 } else { -1.0 }) } else { re(0.0) });
    let finf = poly.functional(|k, _| if k == 0 { re(1.0) } else { re(0.0) });
    let constraint = poly.right_mul(&f0, m_src) - poly.left_mul(m_dst, &finf);
    let res = poly.at(y1) / y1;
    let ev = poly.at(y2) / (y2 - y1);
    singular_hom_space(CurveKind::Nodal, &poly, &constraint, res, ev, cfg)
}

/// Space `Π̃` for the cuspidal engine.
///
/// With `F_a` the `z₁^deg` coefficient and `F_ε` the `z₀z₁^{deg−1}`
/// coefficient, the gluing constraint over `ℂ[ε]/ε²` reads
/// `F_ε + F_a·N₁ − (N₂ − y₁𝟙)·F_a = 0`, where `N_i` has all diagonal entries `λ_i`.
/// `res̄(F) = F(1, y₁)` and `ev̄(F) = F(1, y₂)/(y₂ − y₁)`.
pub fn cusp_hom_space(n: usize, d: usize, l1: C64, l2: C64, y1: C64, y2: C64, cfg: &EngineConfig) -> Result<HomSpace> {
    let (n1, n2) = validate_nd(n, d)?;
    check_distinct(y1, y2, "points y1 = y2")?;
    let m1 = cusp_engine_form(n1, n2, l1)?;
    let m2 = cusp_engine_form(n1, n2, l2)? - identity(n) * y1;
    let poly = PolyMatrix::new(stable_degrees(n1, n2));
    let fa = poly.functional(|k, _| if k == 0 { re(1.0) } else { re(0.0) });
    let fe = poly.functional(|k, _| if k == 1 { re(1.0) } else { re(0.0) });
    let constraint = fe + poly.right_mul(&fa, &m1) - poly.left_mul(&m2, &fa);
    let res = poly.at(y1);
    let ev = poly.at(y2) / (y2 - y1);
    singular_hom_space(CurveKind::Cuspidal, &poly, &constraint, res, ev, cfg)
}

fn finish(space: HomSpace, cfg: &EngineConfig) -> Result<EngineOutput> {
    let condition = space.residue_condition();
    let tensor = space.compose(cfg)?.to_tensor();
    Ok(EngineOutput { tensor, condition })
}

/// Nodal engine with diagnostics; `t₁`, `t₂` are the Jacobian coordinates of `Ñ(t)`.
pub fn engine_nodal_with(n: usize, d: usize, t1: C64, t2: C64, y1: C64, y2: C64, cfg: &EngineConfig) -> Result<EngineOutput> {
    if t1.norm() == 0.0 || t2.norm() == 0.0 {
        return Err(Error::InvalidParameter("nodal moduli parameters must be nonzero".into()));
    }
    finish(nodal_hom_space(n, d, t1, t2, y1, y2, cfg)?, cfg)
}

/// Nodal engine `r(t₁, t₂; y₁, y₂)` for stable bundles of rank `n`, degree `d`.
pub fn engine_nodal(n: usize, d: usize, t1: C64, t2: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    Ok(engine_nodal_with(n, d, t1, t2, y1, y2, &EngineConfig::default())?.tensor)
}

/// Cuspidal engine with diagnostics.
pub fn engine_cusp_with(n: usize, d: usize, l1: C64, l2: C64, y1: C64, y2: C64, cfg: &EngineConfig) -> Result<EngineOutput> {
    finish(cusp_hom_space(n, d, l1, l2, y1, y2, cfg)?, cfg)
}

/// Cuspidal engine `r(λ₁, λ₂; y₁, y₂)`; for `(2, 1)` it depends on `λ₂ − λ₁` only.
pub fn engine_cusp(n: usize, d: usize, l1: C64, l2: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    Ok(engine_cusp_with(n, d, l1, l2, y1, y2, &EngineConfig::default())?.tensor)
}

/// Semistable nodal `(2, 0)` engine with diagnostics.
///
/// Gluing data `m(0) = λJ₂(1)`, `m(∞) = 𝟙`; all blocks of degree 1; constraint
/// `F(0)·λ₁J = λ₂y₁·J·F(∞)`.
pub fn engine_semistable_nodal_20_with(l1: C64, l2: C64, y1: C64, y2: C64, cfg: &EngineConfig) -> Result<EngineOutput> {
    if l1.norm() == 0.0 || l2.norm() == 0.0 {
        return Err(Error::InvalidParameter("nodal moduli parameters must be nonzero".into()));
    }
    let mut j = identity(2);
    j[(0, 1)] = re(1.0);
    let poly = PolyMatrix::new(vec![vec![1, 1], vec![1, 1]]);
    let space = nodal_like_space(poly, &(&j * l1), &(&j * (l2 * y1)), y1, y2, cfg)?;
    finish(space, cfg)
}

/// Semistable nodal `(2, 0)` engine `r(λ₁, λ₂; y₁, y₂)`.
pub fn engine_semistable_nodal_20(l1: C64, l2: C64, y1: C64, y2: C64) -> Result<Tensor2> {
    Ok(engine_semistable_nodal_20_with(l1, l2, y1, y2, &EngineConfig::default())?.tensor)
}

/// Engine selector used by [`engine_solution`] and the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EngineSpec {
    Elliptic { tau: C64 },
    Nodal { n: usize, d: usize },
    Cusp { n: usize, d: usize },
    SemistableNodal,
}

/// Wraps an engine as a four-parameter solution `r(v₁, v₂; y₁, y₂)`, where
/// `v_i` are the moduli coordinates (`x_i`, `t_i` or `λ_i`).
pub fn engine_solution(spec: EngineSpec) -> Result<RSolution> {
    let sol = match spec {
        EngineSpec::Elliptic { tau } => {
            let p = ThetaParams::with_tau(tau)?;
            RSolution::new("engine:elliptic(2,1)", Arity::Full, 2, vec!["x1 = x2".into(), "y1 = y2".into()], move |a| {
                engine_elliptic_21(&p, a[0], a[1], a[2], a[3])
            })
        }
        EngineSpec::Nodal { n, d } => {
            validate_nd(n, d)?;
            RSolution::new(format!("engine:nodal({n},{d})"), Arity::Full, n, vec!["t2^n = t1^n".into(), "y1 = y2".into()], move |a| {
                engine_nodal(n, d, a[0], a[1], a[2], a[3])
            })
            .with_center(re(1.0))
        }
        EngineSpec::Cusp { n, d } => {
            validate_nd(n, d)?;
            RSolution::new(format!("engine:cusp({n},{d})"), Arity::Full, n, vec!["l1 = l2".into(), "y1 = y2".into()], move |a| {
                engine_cusp(n, d, a[0], a[1], a[2], a[3])
            })
        }
        EngineSpec::SemistableNodal => RSolution::new("engine:nodal(2,0)", Arity::Full, 2, vec!["l1 = l2".into(), "y1 = y2".into()], |a| {
            engine_semistable_nodal_20(a[0], a[1], a[2], a[3])
        })
        .with_center(re(1.0)),
    };
    Ok(sol)
}

/// Gauge function `φ(v, y)` with values in `GL_n`.
pub type GaugeFn = Arc<dyn Fn(C64, C64) -> CMat + Send + Sync>;

/// Gauge transformation
/// `r′(v₁,v₂;y₁,y₂) = (φ(v₁,y₁) ⊗ φ(v₂,y₂)) · r · (φ(v₂,y₁)⁻¹ ⊗ φ(v₁,y₂)⁻¹)`.
pub fn apply_gauge(sol: &RSolution, phi: GaugeFn) -> Result<RSolution> {
    if sol.arity().is_classical() {
        return Err(Error::InvalidParameter(format!("`{}` is classical", sol.name())));
    }
    let inner = sol.clone();
    let name = format!("gauge({})", sol.name());
    let center = sol.center();
    Ok(RSolution::new(name, Arity::Full, sol.n(), sol.poles().to_vec(), move |a| {
        let (v1, v2, y1, y2) = (a[0], a[1], a[2], a[3]);
        let r = inner.eval4(v1, v2, y1, y2)?;
        let left = kron(&phi(v1, y1), &phi(v2, y2));
        let right = kron(&inverse(&phi(v2, y1), "gauge")?, &inverse(&phi(v1, y2), "gauge")?);
        Tensor2::from_kron_matrix(inner.n(), left * r.kron_matrix() * right)
    })
    .with_center(center))
}
