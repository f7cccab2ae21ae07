//! Gluing data of vector bundles over the normalization of a Weierstrass
//! cubic.
//!
//! * Elliptic curves: the automorphy factor `Φ_{n,d}(z, x)` and the factor
//!   `ψ_y(z)` of the line bundle `𝒪(y)`.
//! * Nodal curves: pairs `(m(0), m(∞))` of invertible matrices with block
//!   sizes `(n₁, n₂)`; the pullback is `𝒪^{n₁} ⊕ 𝒪(1)^{n₂}`.
//! * Cuspidal curves: a matrix `m_ε` representing `𝟙 + ε·m_ε` over
//!   `ℂ[ε]/ε²`, whose lower-left `n₂ × n₁` block is never read.
//!
//! Canonical forms of simple objects are built by undoing the Euclidean
//! reduction `(n₁, n₂) → (n₁ − n₂, n₂)` or `(n₁, n₂ − n₁)` down to `(1, 1)`.

use crate::curves::CurveKind;
use crate::linalg::{identity, rank, re, CMat};
use crate::thetafn::{th, ThetaParams};
use crate::{Error, Result, C64};
use std::f64::consts::PI;

/// Relative singular-value threshold for dimension counts.
pub const RANK_TOL: f64 = 1e-10;

/// Greatest common divisor.
pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_coprime_positive(n1: usize, n2: usize) -> Result<()> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidParameter(format!("block sizes must be positive, got ({n1}, {n2})")));
    }
    if gcd(n1, n2) != 1 {
        return Err(Error::NotCoprime(n1, n2));
    }
    Ok(())
}

/// Gluing pair of a bundle on a nodal curve.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalTriple {
    pub n1: usize,
    pub n2: usize,
    pub m0: CMat,
    pub minf: CMat,
}

impl NodalTriple {
    /// Validates the block sizes and invertibility of both matrices.
    pub fn new(n1: usize, n2: usize, m0: CMat, minf: CMat) -> Result<Self> {
        let n = n1 + n2;
        if n1 == 0 || m0.shape() != (n, n) || minf.shape() != (n, n) {
            return Err(Error::InvalidParameter(format!("nodal triple needs two {n}x{n} matrices and n1 > 0")));
        }
        for (m, name) in [(&m0, "m(0)"), (&minf, "m(inf)")] {
            if rank(m, RANK_TOL) < n {
                return Err(Error::InvalidParameter(format!("{name} is not invertible")));
            }
        }
        Ok(NodalTriple { n1, n2, m0, minf })
    }

    /// Rank `n₁ + n₂`.
    pub fn rank(&self) -> usize {
        self.n1 + self.n2
    }
}

/// Dual-number gluing matrix `𝟙 + ε·m_ε` of a bundle on a cuspidal curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspTriple {
    pub n1: usize,
    pub n2: usize,
    /// Stored with the lower-left block set to zero; that block is ignored.
    pub meps: CMat,
}

impl CuspTriple {
    /// Validates block sizes and clears the ignored block.
    pub fn new(n1: usize, n2: usize, mut meps: CMat) -> Result<Self> {
        let n = n1 + n2;
        if n1 == 0 || meps.shape() != (n, n) {
            return Err(Error::InvalidParameter(format!("cusp triple needs a {n}x{n} matrix and n1 > 0")));
        }
        meps.view_mut((n1, 0), (n2, n1)).fill(re(0.0));
        Ok(CuspTriple { n1, n2, meps })
    }

    /// Rank `n₁ + n₂`.
    pub fn rank(&self) -> usize {
        self.n1 + self.n2
    }
}

/// Gluing datum on a singular cubic.
#[derive(Debug, Clone, PartialEq)]
pub enum Triple {
    Nodal(NodalTriple),
    Cusp(CuspTriple),
}

/// The Euclidean chain from `(n₁, n₂)` down to `(1, 1)`, reversed.
fn euclid_chain(n1: usize, n2: usize) -> Vec<(usize, usize)> {
    let mut seq = vec![(n1, n2)];
    while *seq.last().unwrap() != (1, 1) {
        let (a, b) = *seq.last().unwrap();
        seq.push(if a > b { (a - b, b) } else { (a, b - a) });
    }
    seq.reverse();
    seq
}

/// Canonical gluing matrix `M_{n₁,n₂}(λ)` for simple bundles on the nodal cubic,
/// returned with `m(∞) = 𝟙`.
///
/// ```text
///   M_{1,1}(λ) = [[0, 1], [λ, 0]]
///   (m₁,m₂) → (m₁+m₂, m₂):  [[X, Y, 0], [0, 0, 𝟙], [Z, W, 0]]
///   (m₁,m₂) → (m₁, m₁+m₂):  [[0, 𝟙, 0], [X, 0, Y], [Z, 0, W]]
/// ```
/// where `[[X, Y], [Z, W]]` is the previous matrix split as `(m₁ | m₂)`.
pub fn canonical_nodal(n1: usize, n2: usize, lambda: C64) -> Result<NodalTriple> {
    check_coprime_positive(n1, n2)?;
    if lambda.norm() == 0.0 {
        return Err(Error::InvalidParameter("nodal moduli parameter must be nonzero".into()));
    }
    let m0 = nodal_matrix(n1, n2, lambda);
    let n = n1 + n2;
    NodalTriple::new(n1, n2, m0, identity(n))
}

fn nodal_matrix(n1: usize, n2: usize, lambda: C64) -> CMat {
    let chain = euclid_chain(n1, n2);
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = re(1.0);
    m[(1, 0)] = lambda;
    for w in chain.windows(2) {
        let (m1, m2) = w[0];
        let (big1, _) = w[1];
        let x = m.view((0, 0), (m1, m1)).into_owned();
        let y = m.view((0, m1), (m1, m2)).into_owned();
        let z = m.view((m1, 0), (m2, m1)).into_owned();
        let wb = m.view((m1, m1), (m2, m2)).into_owned();
        let s = m1 + m2;
        let next = if big1 == s {
            let mut nm = CMat::zeros(s + m2, s + m2);
            nm.view_mut((0, 0), (m1, m1)).copy_from(&x);
            nm.view_mut((0, m1), (m1, m2)).copy_from(&y);
            nm.view_mut((m1, s), (m2, m2)).copy_from(&identity(m2));
            nm.view_mut((s, 0), (m2, m1)).copy_from(&z);
            nm.view_mut((s, m1), (m2, m2)).copy_from(&wb);
            nm
        } else {
            let mut nm = CMat::zeros(s + m1, s + m1);
            nm.view_mut((0, m1), (m1, m1)).copy_from(&identity(m1));
            nm.view_mut((m1, 0), (m1, m1)).copy_from(&x);
            nm.view_mut((m1, 2 * m1), (m1, m2)).copy_from(&y);
            nm.view_mut((2 * m1, 0), (m2, m1)).copy_from(&z);
            nm.view_mut((2 * m1, 2 * m1), (m2, m2)).copy_from(&wb);
            nm
        };
        m = next;
    }
    m
}

/// Canonical matrix `M_{n₁,n₂}(λ)` for simple bundles on the cuspidal cubic.
///
/// ```text
///   M_{1,1}(λ) = [[λ, 1], [×, 0]]
///   (m₁,m₂) → (m₁+m₂, m₂):  [[A₁₁, A₁₂, 0], [0, A₂₂, 𝟙], [×, ×, 0]]   blocks m₁ | m₂ | m₂
///   (m₁,m₂) → (m₁, m₁+m₂):  [[0, 𝟙, 0], [×, A₁₁, A₁₂], [×, 0, A₂₂]]   blocks m₁ | m₁ | m₂
/// ```
/// The trace of the result is `λ`.
pub fn canonical_cusp(n1: usize, n2: usize, lambda: C64) -> Result<CuspTriple> {
    check_coprime_positive(n1, n2)?;
    let chain = euclid_chain(n1, n2);
    let mut m = CMat::zeros(2, 2);
    m[(0, 0)] = lambda;
    m[(0, 1)] = re(1.0);
    for w in chain.windows(2) {
        let (m1, m2) = w[0];
        let (big1, big2) = w[1];
        let a11 = m.view((0, 0), (m1, m1)).into_owned();
        let a12 = m.view((0, m1), (m1, m2)).into_owned();
        let a22 = m.view((m1, m1), (m2, m2)).into_owned();
        let s = big1 + big2;
        let mut nm = CMat::zeros(s, s);
        if big1 == m1 + m2 {
            nm.view_mut((0, 0), (m1, m1)).copy_from(&a11);
            nm.view_mut((0, m1), (m1, m2)).copy_from(&a12);
            nm.view_mut((m1, m1), (m2, m2)).copy_from(&a22);
            nm.view_mut((m1, m1 + m2), (m2, m2)).copy_from(&identity(m2));
        } else {
            nm.view_mut((0, m1), (m1, m1)).copy_from(&identity(m1));
            nm.view_mut((m1, m1), (m1, m1)).copy_from(&a11);
            nm.view_mut((m1, 2 * m1), (m1, m2)).copy_from(&a12);
            nm.view_mut((2 * m1, 2 * m1), (m2, m2)).copy_from(&a22);
        }
        m = nm;
    }
    CuspTriple::new(n1, n2, m)
}

/// Forms compatible with the action of the Jacobian.
///
/// * nodal: `Ñ_{n₁,n₂}(t)`, the canonical matrix with every nonzero entry
///   replaced by `t`, so that `Ñ(βt) = β Ñ(t)`;
/// * cuspidal: `N_{n₁,n₂}(λ)`, the canonical matrix with every diagonal entry
///   set to `λ/n`, so that `β𝟙 + N(λ) = N(nβ + λ)`.
pub fn jacobian_form(kind: CurveKind, n1: usize, n2: usize, t: C64) -> Result<Triple> {
    match kind {
        CurveKind::Nodal => {
            if t.norm() == 0.0 {
                return Err(Error::InvalidParameter("nodal Jacobian parameter must be nonzero".into()));
            }
            check_coprime_positive(n1, n2)?;
            let pattern = nodal_matrix(n1, n2, re(1.0));
            let m0 = pattern.map(|z| if z.norm() != 0.0 { t } else { re(0.0) });
            Ok(Triple::Nodal(NodalTriple::new(n1, n2, m0, identity(n1 + n2))?))
        }
        CurveKind::Cuspidal => {
            let n = (n1 + n2) as f64;
            let mut m = canonical_cusp(n1, n2, re(0.0))?.meps;
            m.fill_diagonal(t / n);
            Ok(Triple::Cusp(CuspTriple::new(n1, n2, m)?))
        }
        CurveKind::Elliptic => Err(Error::InvalidParameter("Jacobian forms are defined for singular curves only".into())),
    }
}

/// Cuspidal form with every diagonal entry equal to `λ` (that is `N(nλ)`), the
/// parametrization used by the cuspidal construction engine.
pub fn cusp_engine_form(n1: usize, n2: usize, lambda: C64) -> Result<CMat> {
    let mut m = canonical_cusp(n1, n2, re(0.0))?.meps;
    m.fill_diagonal(lambda);
    Ok(m)
}

/// Nodal form `Ñ(t)` as a bare matrix.
pub fn nodal_engine_form(n1: usize, n2: usize, t: C64) -> Result<CMat> {
    match jacobian_form(CurveKind::Nodal, n1, n2, t)? {
        Triple::Nodal(tr) => Ok(tr.m0),
        Triple::Cusp(_) => unreachable!("nodal form requested"),
    }
}

/// Atiyah bundle of rank `m` on the nodal cubic: `(J_m(1), 𝟙_m)` with blocks `(m, 0)`.
pub fn atiyah_nodal(m: usize) -> Result<NodalTriple> {
    if m == 0 {
        return Err(Error::InvalidParameter("Atiyah bundle rank must be positive".into()));
    }
    let mut j = identity(m);
    for i in 0..m - 1 {
        j[(i, i + 1)] = re(1.0);
    }
    NodalTriple::new(m, 0, j, identity(m))
}

/// Columns of a linear system in the unknown blocks of a morphism.
struct Unknowns {
    count: usize,
}

impl Unknowns {
    /// Allocates a `rows × cols` block of unknowns and returns their column offset.
    fn block(&mut self, rows: usize, cols: usize) -> usize {
        let off = self.count;
        self.count += rows * cols;
        off
    }
}

/// Linear expression `X ↦ matrix` in the unknowns: `coeffs[k]` is the matrix
/// multiplying unknown `k`.
type LinExpr = Vec<CMat>;

fn placed(n: usize, total: usize, off: usize, r0: usize, c0: usize, rows: usize, cols: usize) -> LinExpr {
    let mut e = vec![CMat::zeros(n, n); total];
    for i in 0..rows {
        for j in 0..cols {
            e[off + i * cols + j][(r0 + i, c0 + j)] = re(1.0);
        }
    }
    e
}

fn add_expr(a: &mut LinExpr, b: &LinExpr) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Stacks the constraint `lhs(X) − rhs(X) = 0` as rows of a dense system.
fn equation_rows(lhs: &LinExpr, rhs: &LinExpr, mask: impl Fn(usize, usize) -> bool) -> Vec<Vec<C64>> {
    let (r, c) = lhs[0].shape();
    let mut rows = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if !mask(i, j) {
                continue;
            }
            rows.push(lhs.iter().zip(rhs).map(|(a, b)| a[(i, j)] - b[(i, j)]).collect());
        }
    }
    rows
}

fn nullity(rows: Vec<Vec<C64>>, unknowns: usize) -> usize {
    if rows.is_empty() {
        return unknowns;
    }
    let a = CMat::from_fn(rows.len(), unknowns, |i, j| rows[i][j]);
    unknowns - rank(&a, RANK_TOL)
}

/// Dimension of the endomorphism space of a triple.
///
/// Nodal: pairs `(S, T)` with `S = [[A, 0], [C, B]]` evaluated at the two
/// preimages of the node (`C` takes independent values `C(0)`, `C(∞)`), `T`
/// arbitrary, subject to `S(0)·m(0) = m(0)·T` and `S(∞)·m(∞) = m(∞)·T`.
///
/// Cuspidal: `S = [[S₁₁, ×], [S₂₁, S₂₂]]` subject to `S·M = M·S` with the
/// lower-left block of both sides ignored.
///
/// A triple is simple exactly when the dimension is 1.
pub fn endo_dimension(triple: &Triple) -> usize {
    match triple {
        Triple::Nodal(t) => {
            let (n1, n2, n) = (t.n1, t.n2, t.rank());
            let mut u = Unknowns { count: 0 };
            let a = u.block(n1, n1);
            let b = u.block(n2, n2);
            let c0 = u.block(n2, n1);
            let cinf = u.block(n2, n1);
            let f = u.block(n, n);
            let total = u.count;
            let mut s0 = placed(n, total, a, 0, 0, n1, n1);
            add_expr(&mut s0, &placed(n, total, b, n1, n1, n2, n2));
            let mut sinf = s0.clone();
            add_expr(&mut s0, &placed(n, total, c0, n1, 0, n2, n1));
            add_expr(&mut sinf, &placed(n, total, cinf, n1, 0, n2, n1));
            let tt = placed(n, total, f, 0, 0, n, n);
            let mut rows = Vec::new();
            for (s, m) in [(&s0, &t.m0), (&sinf, &t.minf)] {
                let lhs: LinExpr = s.iter().map(|x| x * m).collect();
                let rhs: LinExpr = tt.iter().map(|x| m * x).collect();
                rows.extend(equation_rows(&lhs, &rhs, |_, _| true));
            }
            nullity(rows, total)
        }
        Triple::Cusp(t) => {
            let (n1, n2, n) = (t.n1, t.n2, t.rank());
            let mut u = Unknowns { count: 0 };
            let s11 = u.block(n1, n1);
            let s21 = u.block(n2, n1);
            let s22 = u.block(n2, n2);
            let total = u.count;
            let mut s = placed(n, total, s11, 0, 0, n1, n1);
            add_expr(&mut s, &placed(n, total, s21, n1, 0, n2, n1));
            add_expr(&mut s, &placed(n, total, s22, n1, n1, n2, n2));
            let m = &t.meps;
            let lhs: LinExpr = s.iter().map(|x| x * m).collect();
            let rhs: LinExpr = s.iter().map(|x| m * x).collect();
            let rows = equation_rows(&lhs, &rhs, |i, j| !(i >= n1 && j < n1));
            nullity(rows, total)
        }
    }
}

/// Determinant coordinate of a triple: `det m(0) / det m(∞)` (nodal) or the
/// `ε`-coefficient `tr(m_ε)` of `det(𝟙 + ε m_ε)` (cuspidal).
pub fn det_triple(triple: &Triple) -> C64 {
    match triple {
        Triple::Nodal(t) => t.m0.determinant() / t.minf.determinant(),
        Triple::Cusp(t) => t.meps.trace(),
    }
}

/// Automorphy factor `Φ_{n,d}(z, x)` of the universal family of stable bundles
/// of rank `n` and degree `d` on `ℂ/⟨1, τ⟩`.
///
/// ```text
///   Φ_{n,d}(z, x) = q_{x/n} · (cyclic shift with corner entry φ_n(z)^d)
///   q_{x/n} = exp(−2πix/n),   φ_n(z) = exp(−πinτ − 2πiz)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutomorphyFactor {
    n: usize,
    d: usize,
    x: C64,
    tau: C64,
}

impl AutomorphyFactor {
    /// Rank.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Moduli coordinate `x`.
    pub fn x(&self) -> C64 {
        self.x
    }

    /// `φ_n(z) = exp(−πinτ − 2πiz)`.
    pub fn phi_n(&self, z: C64) -> C64 {
        (C64::new(0.0, -PI) * (self.tau * self.n as f64 + z * 2.0)).exp()
    }

    /// `q_{x/n} = exp(−2πix/n)`.
    pub fn q(&self) -> C64 {
        (C64::new(0.0, -2.0 * PI) * self.x / self.n as f64).exp()
    }

    /// Evaluates `Φ_{n,d}(z, x)`.
    pub fn eval(&self, z: C64) -> CMat {
        let n = self.n;
        let q = self.q();
        let mut m = CMat::zeros(n, n);
        for i in 0..n - 1 {
            m[(i, i + 1)] = q;
        }
        m[(n - 1, 0)] = q * self.phi_n(z).powu(self.d as u32);
        m
    }
}

/// Builds `Φ_{n,d}(·, x)` for coprime `(n, d)`.
pub fn automorphy(n: usize, d: usize, x: C64, p: &ThetaParams) -> Result<AutomorphyFactor> {
    if n == 0 || gcd(n, d) != 1 {
        return Err(Error::NotCoprime(n, d));
    }
    Ok(AutomorphyFactor { n, d, x, tau: p.tau() })
}

/// Factor of the line bundle `𝒪(y)`: `ψ_y(z) = −exp(−2πiz + 2πiy − 2πiτ)`.
pub fn line_bundle_factor(y: C64, z: C64, p: &ThetaParams) -> C64 {
    -(C64::new(0.0, 2.0 * PI) * (y - z - p.tau())).exp()
}

/// Section `θ_y(z) = θ₃(z + (1+τ)/2 − y | τ)` of `𝒪(y)`, whose only zero in a
/// fundamental domain is `z = y`.
pub fn line_bundle_section(y: C64, z: C64, p: &ThetaParams) -> C64 {
    th(3, z + (p.tau() + 1.0) / 2.0 - y, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs};

    fn rows(m: &CMat) -> Vec<Vec<C64>> {
        (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
    }

    #[test]
    fn nodal_rank_two() {
        let l = c(2.0, 0.5);
        let t = canonical_nodal(1, 1, l).unwrap();
        assert_eq!(rows(&t.m0), vec![vec![re(0.0), re(1.0)], vec![l, re(0.0)]]);
    }

    #[test]
    fn nodal_rank_three() {
        let l = c(3.0, 0.0);
        let m = canonical_nodal(1, 2, l).unwrap().m0;
        let z = re(0.0);
        let o = re(1.0);
        assert_eq!(rows(&m), vec![vec![z, o, z], vec![z, z, o], vec![l, z, z]]);
    }

    #[test]
    fn nodal_rank_five() {
        let l = c(7.0, 0.0);
        let m = canonical_nodal(3, 2, l).unwrap().m0;
        // rows e2, e4, e5, e3, λ e1
        let expected = [(0, 1, re(1.0)), (1, 3, re(1.0)), (2, 4, re(1.0)), (3, 2, re(1.0)), (4, 0, l)];
        let mut e = CMat::zeros(5, 5);
        for (i, j, v) in expected {
            e[(i, j)] = v;
        }
        assert_eq!(m, e);
    }

    #[test]
    fn rejects_non_coprime_and_zero() {
        assert_eq!(canonical_nodal(2, 2, re(1.0)).unwrap_err(), Error::NotCoprime(2, 2));
        assert!(canonical_nodal(1, 1, re(0.0)).is_err());
        assert!(canonical_cusp(4, 2, re(1.0)).is_err());
    }

    #[test]
    fn cusp_rank_two_and_trace() {
        let l = c(1.5, -0.5);
        let t = canonical_cusp(1, 1, l).unwrap();
        assert_eq!(rows(&t.meps), vec![vec![l, re(1.0)], vec![re(0.0), re(0.0)]]);
        for (n1, n2) in [(2, 1), (1, 2), (3, 2), (2, 5)] {
            assert!((canonical_cusp(n1, n2, l).unwrap().meps.trace() - l).norm() < 1e-15);
        }
        // det(𝟙 + ε M₁₁(λ)) = 1 + ελ: the ε-coefficient is the trace.
        assert_eq!(det_triple(&Triple::Cusp(t)), l);
    }

    #[test]
    fn jacobian_forms() {
        let t = c(0.3, 1.2);
        match jacobian_form(CurveKind::Nodal, 1, 1, t).unwrap() {
            Triple::Nodal(tr) => assert_eq!(rows(&tr.m0), vec![vec![re(0.0), t], vec![t, re(0.0)]]),
            _ => panic!(),
        }
        match jacobian_form(CurveKind::Cuspidal, 1, 1, t).unwrap() {
            Triple::Cusp(tr) => assert_eq!(rows(&tr.meps), vec![vec![t / 2.0, re(1.0)], vec![re(0.0), t / 2.0]]),
            _ => panic!(),
        }
        let beta = c(-0.7, 0.2);
        let a = nodal_engine_form(3, 2, beta * t).unwrap();
        let b = nodal_engine_form(3, 2, t).unwrap() * beta;
        assert!(max_abs(&(a - b)) < 1e-15);
        assert!(jacobian_form(CurveKind::Nodal, 1, 1, re(0.0)).is_err());
    }

    #[test]
    fn cusp_translation_rule() {
        // β𝟙 + N(λ) = N(nβ + λ)
        let (n1, n2) = (3, 2);
        let (beta, l) = (c(0.4, 0.1), c(-1.0, 2.0));
        let get = |x| match jacobian_form(CurveKind::Cuspidal, n1, n2, x).unwrap() {
            Triple::Cusp(t) => t.meps,
            _ => unreachable!(),
        };
        let lhs = identity(5) * beta + get(l);
        assert!(max_abs(&(lhs - get(beta * 5.0 + l))) < 1e-14);
    }

    #[test]
    fn simplicity_certificates() {
        assert_eq!(endo_dimension(&Triple::Nodal(canonical_nodal(1, 1, re(2.0)).unwrap())), 1);
        assert_eq!(endo_dimension(&Triple::Nodal(canonical_nodal(3, 2, c(0.8, -1.1)).unwrap())), 1);
        assert_eq!(endo_dimension(&Triple::Cusp(canonical_cusp(3, 2, c(0.8, -1.1)).unwrap())), 1);
        assert_eq!(endo_dimension(&Triple::Nodal(atiyah_nodal(2).unwrap())), 2);
    }

    #[test]
    fn decomposable_nodal_object() {
        // [[0, 𝟙₂], [J₂(1), 0]] with blocks (2, 2)
        let mut m = CMat::zeros(4, 4);
        m[(0, 2)] = re(1.0);
        m[(1, 3)] = re(1.0);
        m[(2, 0)] = re(1.0);
        m[(2, 1)] = re(1.0);
        m[(3, 1)] = re(1.0);
        let t = NodalTriple::new(2, 2, m, identity(4)).unwrap();
        assert!(endo_dimension(&Triple::Nodal(t)) > 1);
    }

    #[test]
    fn atiyah_basics() {
        let a1 = atiyah_nodal(1).unwrap();
        assert_eq!(a1.m0, identity(1));
        let a2 = atiyah_nodal(2).unwrap();
        assert_eq!(rows(&a2.m0), vec![vec![re(1.0), re(1.0)], vec![re(0.0), re(1.0)]]);
        assert_eq!(det_triple(&Triple::Nodal(atiyah_nodal(4).unwrap())), re(1.0));
        assert!(atiyah_nodal(0).is_err());
    }

    #[test]
    fn determinant_of_canonical_nodal() {
        let l = c(1.3, 0.4);
        for (n1, n2) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3), (4, 3)] {
            let d = det_triple(&Triple::Nodal(canonical_nodal(n1, n2, l).unwrap()));
            assert!((d - l).norm() < 1e-12 || (d + l).norm() < 1e-12);
        }
    }

    #[test]
    fn automorphy_rank_two() {
        let p = ThetaParams::with_tau(c(0.1, 1.2)).unwrap();
        let x = c(0.3, 0.05);
        let f = automorphy(2, 1, x, &p).unwrap();
        let z = c(0.2, -0.1);
        let q = (c(0.0, -PI) * x).exp();
        let phi = (c(0.0, -2.0 * PI) * (z + p.tau())).exp();
        let mut e = CMat::zeros(2, 2);
        e[(0, 1)] = q;
        e[(1, 0)] = q * phi;
        assert!(max_abs(&(f.eval(z) - e)) < 1e-14);
        let base = f.eval(z);
        assert!(max_abs(&(f.eval(z + 1.0) - &base)) < 1e-13 * max_abs(&base));
        assert!(automorphy(4, 2, x, &p).is_err());
    }

    #[test]
    fn automorphy_twist() {
        let p = ThetaParams::with_tau(c(0.1, 1.2)).unwrap();
        let (x, y, z) = (c(0.3, 0.05), c(-0.2, 0.1), c(0.4, 0.2));
        let f = automorphy(3, 2, x, &p).unwrap();
        let g = automorphy(3, 2, x + y * 3.0, &p).unwrap();
        let lhs = f.eval(z) * (c(0.0, -2.0 * PI) * y).exp();
        let rhs = g.eval(z);
        assert!(max_abs(&(lhs - &rhs)) < 1e-13 * max_abs(&rhs));
    }

    #[test]
    fn line_bundle_section_vanishes_at_y() {
        let p = ThetaParams::with_tau(c(0.1, 1.2)).unwrap();
        let y = c(0.27, 0.11);
        assert!(line_bundle_section(y, y, &p).norm() < 1e-14);
        let z = c(0.1, -0.3);
        let lhs = line_bundle_section(y, z + p.tau(), &p);
        let rhs = line_bundle_factor(y, z, &p) * line_bundle_section(y, z, &p);
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }
}
