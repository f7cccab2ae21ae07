//! Complex tensors in `Mat_n ⊗ Mat_n` and `Mat_n^{⊗3}`.
//!
//! A [`Tensor2`] is stored as its Kronecker matrix of size `n² × n²`: the
//! coefficient of `e_{i₁j₁} ⊗ e_{i₂j₂}` sits at row `(i₁−1)n + i₂` and column
//! `(j₁−1)n + j₂` (1-based indices), and the matrix is serialized row-major.
//! With this layout the product of tensors is the ordinary matrix product,
//! `(a⊗b)(a′⊗b′) = aa′ ⊗ bb′`. A [`Tensor3`] uses the same convention with
//! three legs and an `n³ × n³` matrix.
//!
//! ```text
//!   embed_leg(a⊗b, 12) = a ⊗ b ⊗ 𝟙
//!   embed_leg(a⊗b, 13) = a ⊗ 𝟙 ⊗ b
//!   embed_leg(a⊗b, 23) = 𝟙 ⊗ a ⊗ b
//! ```

use crate::linalg::{flip, identity, kron, max_abs, re, CMat};
use crate::{Error, Result, C64};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

/// Layout tag written into serialized tensors.
pub const LAYOUT: &str = "kron-rowmajor";

/// Which pair of legs of `Mat_n^{⊗3}` a two-leg tensor is placed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leg {
    L12,
    L13,
    L23,
}

impl TryFrom<u8> for Leg {
    type Error = Error;
    fn try_from(tag: u8) -> Result<Self> {
        match tag {
            12 => Ok(Leg::L12),
            13 => Ok(Leg::L13),
            23 => Ok(Leg::L23),
            other => Err(Error::InvalidLeg(other)),
        }
    }
}

/// Element of `Mat_n(ℂ) ⊗ Mat_n(ℂ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor2 {
    n: usize,
    kron: CMat,
}

/// Element of `Mat_n(ℂ)^{⊗3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    n: usize,
    kron: CMat,
}

/// Linear endomorphism of `Mat_n(ℂ)`.
///
/// `matrix[(k·n + l, i·n + j)]` (0-based) is the coefficient of `e_{kl}` in the
/// image of `e_{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinMap {
    n: usize,
    matrix: CMat,
}

impl Tensor2 {
    /// Zero tensor.
    pub fn zeros(n: usize) -> Self {
        Tensor2 { n, kron: CMat::zeros(n * n, n * n) }
    }

    /// Wraps a Kronecker matrix of size `n² × n²`.
    pub fn from_kron_matrix(n: usize, kron: CMat) -> Result<Self> {
        if n == 0 || kron.nrows() != n * n || kron.ncols() != n * n {
            return Err(Error::InvalidParameter(format!(
                "Kronecker matrix of shape {}x{} does not match n = {n}",
                kron.nrows(),
                kron.ncols()
            )));
        }
        Ok(Tensor2 { n, kron })
    }

    /// Simple tensor `a ⊗ b`.
    pub fn simple(a: &CMat, b: &CMat) -> Self {
        assert_eq!(a.shape(), b.shape(), "factors must have equal size");
        Tensor2 { n: a.nrows(), kron: kron(a, b) }
    }

    /// Matrix size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Kronecker matrix view.
    pub fn kron_matrix(&self) -> &CMat {
        &self.kron
    }

    /// Coefficient of `e_{i₁j₁} ⊗ e_{i₂j₂}` (1-based indices).
    pub fn coeff(&self, i1: usize, j1: usize, i2: usize, j2: usize) -> C64 {
        let n = self.n;
        self.kron[((i1 - 1) * n + (i2 - 1), (j1 - 1) * n + (j2 - 1))]
    }

    /// Sets the coefficient of `e_{i₁j₁} ⊗ e_{i₂j₂}` (1-based indices).
    pub fn set_coeff(&mut self, i1: usize, j1: usize, i2: usize, j2: usize, value: C64) {
        let n = self.n;
        self.kron[((i1 - 1) * n + (i2 - 1), (j1 - 1) * n + (j2 - 1))] = value;
    }

    /// Exchanges the two legs: `a ⊗ b ↦ b ⊗ a`.
    pub fn swap(&self) -> Self {
        let p = flip(self.n);
        Tensor2 { n: self.n, kron: &p * &self.kron * &p }
    }

    /// Applies `pr(A) = A − tr(A)/n · 𝟙` on both legs.
    pub fn project_sl(&self) -> Self {
        let n = self.n;
        let pr = projector_matrix(n);
        // pr acts on the vectorized leg; lift to an action on coefficients.
        let mut out = Tensor2::zeros(n);
        for i1 in 0..n {
            for j1 in 0..n {
                for i2 in 0..n {
                    for j2 in 0..n {
                        let c = self.kron[(i1 * n + i2, j1 * n + j2)];
                        if c == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let a = pr.column(i1 * n + j1);
                        let b = pr.column(i2 * n + j2);
                        for p1 in 0..n {
                            for q1 in 0..n {
                                let ca = a[p1 * n + q1];
                                if ca == C64::new(0.0, 0.0) {
                                    continue;
                                }
                                for p2 in 0..n {
                                    for q2 in 0..n {
                                        let cb = b[p2 * n + q2];
                                        out.kron[(p1 * n + p2, q1 * n + q2)] += c * ca * cb;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Partial trace over the first leg: `a ⊗ b ↦ tr(a)·b`.
    pub fn trace_first(&self) -> CMat {
        let n = self.n;
        CMat::from_fn(n, n, |i2, j2| (0..n).map(|k| self.kron[(k * n + i2, k * n + j2)]).sum())
    }

    /// Partial trace over the second leg: `a ⊗ b ↦ tr(b)·a`.
    pub fn trace_second(&self) -> CMat {
        let n = self.n;
        CMat::from_fn(n, n, |i1, j1| (0..n).map(|k| self.kron[(i1 * n + k, j1 * n + k)]).sum())
    }

    /// Places the tensor on the given pair of legs of `Mat_n^{⊗3}`.
    pub fn embed_leg(&self, legs: Leg) -> Tensor3 {
        let n = self.n;
        let id = identity(n);
        let kron3 = match legs {
            Leg::L12 => kron(&self.kron, &id),
            Leg::L23 => kron(&id, &self.kron),
            Leg::L13 => {
                let p23 = kron(&id, &flip(n));
                &p23 * kron(&self.kron, &id) * &p23
            }
        };
        Tensor3 { n, kron: kron3 }
    }

    /// `(A ⊗ B) · self · (C ⊗ D)`.
    pub fn sandwich(&self, a: &CMat, b: &CMat, c: &CMat, d: &CMat) -> Self {
        Tensor2 { n: self.n, kron: kron(a, b) * &self.kron * kron(c, d) }
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.kron)
    }

    /// Whether every coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.kron.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Flattened row-major `[re, im]` data.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        row_major_pairs(&self.kron)
    }
}

/// Matrix of `pr` acting on `vec(A)` with `vec` index `i·n + j`.
fn projector_matrix(n: usize) -> CMat {
    let mut pr = CMat::identity(n * n, n * n);
    let scale = re(1.0 / n as f64);
    for i in 0..n {
        for k in 0..n {
            pr[(i * n + i, k * n + k)] -= scale;
        }
    }
    pr
}

fn row_major_pairs(m: &CMat) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            out.push([z.re, z.im]);
        }
    }
    out
}

fn matrix_from_pairs(dim: usize, data: &[[f64; 2]]) -> Result<CMat> {
    if data.len() != dim * dim {
        return Err(Error::Format(format!("expected {} entries, found {}", dim * dim, data.len())));
    }
    Ok(CMat::from_fn(dim, dim, |r, c| {
        let [a, b] = data[r * dim + c];
        C64::new(a, b)
    }))
}

/// Casimir element of `sl_n` for the trace form:
/// `Ω = Σ_{i,j} e_{ij} ⊗ e_{ji} − (1/n) 𝟙 ⊗ 𝟙`.
///
/// For `n = 2` this is `½ h⊗h + e₁₂⊗e₂₁ + e₂₁⊗e₁₂`.
pub fn casimir(n: usize) -> Result<Tensor2> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("casimir needs n >= 2, got {n}")));
    }
    let mut t = Tensor2::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            t.set_coeff(i, j, j, i, re(1.0));
        }
    }
    let id = identity(n);
    Ok(t - Tensor2::simple(&id, &id) * re(1.0 / n as f64))
}

impl Tensor3 {
    /// Zero tensor.
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, kron: CMat::zeros(n * n * n, n * n * n) }
    }

    /// Simple tensor `a ⊗ b ⊗ c`.
    pub fn simple(a: &CMat, b: &CMat, c: &CMat) -> Self {
        Tensor3 { n: a.nrows(), kron: kron(&kron(a, b), c) }
    }

    /// Matrix size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Kronecker matrix view (`n³ × n³`).
    pub fn kron_matrix(&self) -> &CMat {
        &self.kron
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.kron)
    }

    /// Flattened row-major `[re, im]` data.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        row_major_pairs(&self.kron)
    }
}

impl LinMap {
    /// Wraps a matrix acting on `vec(Mat_n)`.
    pub fn from_matrix(n: usize, matrix: CMat) -> Result<Self> {
        if matrix.nrows() != n * n || matrix.ncols() != n * n {
            return Err(Error::InvalidParameter("linear map has wrong shape".into()));
        }
        Ok(LinMap { n, matrix })
    }

    /// Identity map of `Mat_n`.
    pub fn identity(n: usize) -> Self {
        LinMap { n, matrix: CMat::identity(n * n, n * n) }
    }

    /// Matrix size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Underlying `n² × n²` matrix.
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Image of a matrix.
    pub fn apply(&self, a: &CMat) -> CMat {
        let n = self.n;
        let v = nalgebra::DVector::from_fn(n * n, |k, _| a[(k / n, k % n)]);
        let w = &self.matrix * v;
        CMat::from_fn(n, n, |i, j| w[i * n + j])
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        LinMap { n: self.n, matrix: &self.matrix * &other.matrix }
    }

    /// Tensor of the map: `e_{ij} ↦ α e_{kl}` corresponds to `α e_{ji} ⊗ e_{kl}`.
    pub fn to_tensor(&self) -> Tensor2 {
        let n = self.n;
        let mut t = Tensor2::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        t.kron[(j * n + k, i * n + l)] = self.matrix[(k * n + l, i * n + j)];
                    }
                }
            }
        }
        t
    }

    /// Inverse of [`LinMap::to_tensor`].
    pub fn from_tensor(t: &Tensor2) -> LinMap {
        let n = t.n;
        let mut m = CMat::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        m[(k * n + l, i * n + j)] = t.kron[(j * n + k, i * n + l)];
                    }
                }
            }
        }
        LinMap { n, matrix: m }
    }
}

/// Tensor corresponding to a linear map (see [`LinMap::to_tensor`]).
pub fn linmap_to_tensor(l: &LinMap) -> Tensor2 {
    l.to_tensor()
}

/// Linear map corresponding to a tensor (see [`LinMap::from_tensor`]).
pub fn tensor_to_linmap(t: &Tensor2) -> LinMap {
    LinMap::from_tensor(t)
}

macro_rules! impl_arith {
    ($t:ident) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                assert_eq!(self.n, rhs.n, "tensor sizes differ");
                $t { n: self.n, kron: self.kron + rhs.kron }
            }
        }
        impl<'a> Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                assert_eq!(self.n, rhs.n, "tensor sizes differ");
                $t { n: self.n, kron: &self.kron + &rhs.kron }
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                assert_eq!(self.n, rhs.n, "tensor sizes differ");
                $t { n: self.n, kron: self.kron - rhs.kron }
            }
        }
        impl<'a> Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                assert_eq!(self.n, rhs.n, "tensor sizes differ");
                $t { n: self.n, kron: &self.kron - &rhs.kron }
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $t { n: self.n, kron: -self.kron }
            }
        }
        impl Mul<C64> for $t {
            type Output = $t;
            fn mul(self, s: C64) -> $t {
                $t { n: self.n, kron: self.kron * s }
            }
        }
        impl Mul<C64> for &$t {
            type Output = $t;
            fn mul(self, s: C64) -> $t {
                $t { n: self.n, kron: &self.kron * s }
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                assert_eq!(self.n, rhs.n, "tensor sizes differ");
                $t { n: self.n, kron: self.kron * rhs.kron }
            }
        }
        impl<'a> Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                assert_eq!(self.n, rhs.n, "tensor sizes differ");
                $t { n: self.n, kron: &self.kron * &rhs.kron }
            }
        }
    };
}

impl_arith!(Tensor2);
impl_arith!(Tensor3);

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: usize,
    layout: String,
    data: Vec<[f64; 2]>,
}

impl Serialize for Tensor2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson { n: self.n, layout: LAYOUT.into(), data: self.to_pairs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TensorJson::deserialize(d)?;
        if raw.layout != LAYOUT {
            return Err(serde::de::Error::custom(format!("unsupported layout {}", raw.layout)));
        }
        let m = matrix_from_pairs(raw.n * raw.n, &raw.data).map_err(serde::de::Error::custom)?;
        Ok(Tensor2 { n: raw.n, kron: m })
    }
}

impl Serialize for Tensor3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson { n: self.n, layout: LAYOUT.into(), data: self.to_pairs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TensorJson::deserialize(d)?;
        if raw.layout != LAYOUT {
            return Err(serde::de::Error::custom(format!("unsupported layout {}", raw.layout)));
        }
        let dim = raw.n * raw.n * raw.n;
        let m = matrix_from_pairs(dim, &raw.data).map_err(serde::de::Error::custom)?;
        Ok(Tensor3 { n: raw.n, kron: m })
    }
}
