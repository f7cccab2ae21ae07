//! Small dense complex linear-algebra helpers on top of `nalgebra`.

use crate::{Error, Result, C64};
use nalgebra::DMatrix;

/// Dense complex matrix.
pub type CMat = DMatrix<C64>;

/// Shorthand for a complex number.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Real complex number.
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Matrix unit `e_{ij}` of size `n` (indices are 1-based).
pub fn unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i - 1, j - 1)] = re(1.0);
    m
}

/// Identity matrix `𝟙` of size `n`.
pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// `h = e₁₁ − e₂₂`.
pub fn h() -> CMat {
    unit(2, 1, 1) - unit(2, 2, 2)
}

/// `σ = i(e₂₁ − e₁₂)`.
pub fn sigma() -> CMat {
    (unit(2, 2, 1) - unit(2, 1, 2)) * c(0.0, 1.0)
}

/// `γ = e₁₂ + e₂₁`.
pub fn gamma() -> CMat {
    unit(2, 1, 2) + unit(2, 2, 1)
}

/// Kronecker product `a ⊗ b` with row index `i_a·rows(b) + i_b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// 2-norm condition number `σ_max / σ_min` of a square matrix (`∞` if singular).
pub fn condition_number(m: &CMat) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Numerical rank with relative threshold `rel_tol · σ_max`.
pub fn rank(m: &CMat, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let s = singular_values(m);
    let hi = s.first().copied().unwrap_or(0.0);
    if hi == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * hi).count()
}

/// Solve `a·x = b` for square `a`, rejecting systems whose condition number exceeds `cond_cap`.
pub fn solve_checked(a: &CMat, b: &CMat, cond_cap: f64, context: &str) -> Result<CMat> {
    let cond = condition_number(a);
    if !cond.is_finite() || cond > cond_cap {
        return Err(Error::IllConditioned { cond, context: context.to_string() });
    }
    a.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| Error::IllConditioned { cond, context: context.to_string() })
}

/// Inverse of a square matrix, failing when it is numerically singular.
pub fn inverse(a: &CMat, context: &str) -> Result<CMat> {
    let n = a.nrows();
    solve_checked(a, &CMat::identity(n, n), 1e13, context)
}

/// Permutation matrix of the flip `x ⊗ y ↦ y ⊗ x` on `ℂⁿ ⊗ ℂⁿ`.
pub fn flip(n: usize) -> CMat {
    let mut p = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p[(i * n + j, j * n + i)] = re(1.0);
        }
    }
    p
}
