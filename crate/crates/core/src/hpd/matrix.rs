//! Dense complex matrices and the Hermitian wrapper used throughout the crate.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance (in units of the largest entry) for accepting data as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Square dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major data; `data.len()` must be `dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Input(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest deviation `|a_ij - conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `Q diag(values) Q*`.
    pub fn congruence_diag(q: &SquareMatrix, values: &[f64]) -> Self {
        let n = q.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &v) in values.iter().enumerate() {
                    acc += q[(i, k)] * q[(j, k)].conj() * v;
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
        }
        out
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;
    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Dense complex Hermitian matrix.
///
/// Construction validates the Hermitian property to within
/// [`HERMITIAN_TOL`] times the largest entry and then stores the exact
/// Hermitian part, so downstream spectral code sees an exactly self-adjoint array.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: SquareMatrix,
}

impl HermitianMatrix {
    pub fn new(m: SquareMatrix) -> Result<Self> {
        if m.dim == 0 {
            return Err(Error::Input("matrix dimension must be at least 1".into()));
        }
        if !m.is_finite() {
            return Err(Error::Input("matrix has non-finite entries".into()));
        }
        let defect = m.hermitian_defect();
        let scale = m.max_abs();
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::Input(format!(
                "matrix is not Hermitian (defect {defect:e} vs tolerance {:e})",
                HERMITIAN_TOL * scale
            )));
        }
        Ok(Self::hermitian_part(&m))
    }

    /// `(A + A*)/2` without any tolerance check.
    pub fn hermitian_part(m: &SquareMatrix) -> Self {
        let n = m.dim;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        Self { inner: out }
    }

    /// From row-major real and optional imaginary parts.
    pub fn from_parts(dim: usize, real: &[f64], imag: Option<&[f64]>) -> Result<Self> {
        if real.len() != dim * dim {
            return Err(Error::Input(format!(
                "real part has {} entries, expected {}",
                real.len(),
                dim * dim
            )));
        }
        if let Some(im) = imag {
            if im.len() != dim * dim {
                return Err(Error::Input(format!(
                    "imaginary part has {} entries, expected {}",
                    im.len(),
                    dim * dim
                )));
            }
        }
        let data = (0..dim * dim)
            .map(|k| Complex64::new(real[k], imag.map_or(0.0, |im| im[k])))
            .collect();
        Self::new(SquareMatrix::from_vec(dim, data)?)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Input("matrix is not square".into()));
        }
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_parts(dim, &flat, None)
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut m = SquareMatrix::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Self::new(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: SquareMatrix::identity(dim),
        }
    }

    /// `Q diag(values) Q*`; exact Hermitian by construction.
    pub fn from_spectrum(q: &SquareMatrix, values: &[f64]) -> Self {
        Self {
            inner: SquareMatrix::congruence_diag(q, values),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.inner
    }

    /// Real trace (sum of the diagonal).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.inner[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.max_abs()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            inner: self.inner.scale(s),
        }
    }

    /// `tI + X`.
    pub fn shifted(&self, t: f64) -> Self {
        let mut out = self.inner.clone();
        for i in 0..self.dim() {
            out[(i, i)] += t;
        }
        Self { inner: out }
    }

    /// `(X + Y)/2`.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        ensure_same_dim(self, other)?;
        Ok((self + other).scale(0.5))
    }

    /// `U X U*`.
    pub fn conjugate_by(&self, u: &SquareMatrix) -> Self {
        let prod = &(u * &self.inner) * &u.adjoint();
        Self::hermitian_part(&prod)
    }

    /// Real Frobenius inner product `Re tr(X* Y)`.
    pub fn inner_product(&self, other: &Self) -> f64 {
        self.inner
            .as_slice()
            .iter()
            .zip(other.inner.as_slice())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// Row-major real and imaginary parts.
    pub fn to_parts(&self) -> (Vec<f64>, Vec<f64>) {
        let data = self.inner.as_slice();
        (
            data.iter().map(|z| z.re).collect(),
            data.iter().map(|z| z.im).collect(),
        )
    }

    pub fn is_real(&self) -> bool {
        self.inner.as_slice().iter().all(|z| z.im == 0.0)
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

pub(crate) fn ensure_same_dim(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<()> {
    if x.dim() != y.dim() {
        Err(Error::DimensionMismatch(x.dim(), y.dim()))
    } else {
        Ok(())
    }
}
