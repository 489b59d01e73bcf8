//! Dense complex matrices and a Hermitian eigensolver.
//!
//! Everything downstream (Dirac matrices, Landau Hamiltonians, reduction
//! operators) is carried by [`ComplexMatrix`]. Sizes stay in the hundreds,
//! so the storage is a plain row-major `Vec<Complex64>`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum anti-Hermitian part accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Relative width of a degenerate eigenvalue cluster.
pub const DEGENERACY_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 60;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::rejected("matrix dimensions must be at least 1"));
        }
        if rows * cols != data.len() {
            return Err(Error::rejected(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be at least 1");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input; intended
    /// for small literal matrices.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            assert_eq!(row.as_ref().len(), n_cols, "ragged matrix literal");
            data.extend_from_slice(row.as_ref());
        }
        Self::new(n_rows, n_cols, data).expect("non-empty matrix literal")
    }

    /// Column matrix from a vector.
    pub fn column_vector(v: &[Complex64]) -> Self {
        Self::new(v.len(), 1, v.to_vec()).expect("non-empty vector")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column set");
            for (i, &z) in col.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::rejected(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::rejected(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `AB + BA`. Panics on shape mismatch.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// `AB - BA`. Panics on shape mismatch.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Max-abs distance from Hermiticity; 0 for an exactly Hermitian matrix.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Principal submatrix on the given index set, in the order given.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        let mut out = Self::zeros(n.max(1), n.max(1));
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    /// Block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut out = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        out
    }

    fn assert_same_shape(&self, other: &Self, op: &str) {
        assert!(
            self.shape() == other.shape(),
            "{op}: shape mismatch {:?} vs {:?}",
            self.shape(),
            other.shape()
        );
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.assert_same_shape(rhs, "add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.assert_same_shape(rhs, "sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.mat_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Complex64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale_real(rhs)
    }
}

pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mat_mul(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Max-abs elementwise difference.
pub fn residual_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::rejected(format!(
            "residual of {:?} against {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Elementwise comparison with an explicit tolerance.
pub fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    residual_norm(a, b).is_ok_and(|r| r <= tol)
}

pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Max-abs difference of two vectors of equal length.
pub fn vec_residual(u: &[Complex64], v: &[Complex64]) -> f64 {
    assert_eq!(u.len(), v.len(), "vector length mismatch");
    u.iter()
        .zip(v)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// `<v|O|v>` without normalisation.
pub fn expectation(op: &ComplexMatrix, v: &[Complex64]) -> Result<Complex64> {
    Ok(inner(v, &op.mat_vec(v)?))
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// Index ranges of (near-)degenerate eigenvalue clusters.
    pub fn clusters(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=self.eigenvalues.len() {
            let split = k == self.eigenvalues.len() || {
                let prev = self.eigenvalues[k - 1];
                let cur = self.eigenvalues[k];
                (cur - prev).abs() >= DEGENERACY_TOL * prev.abs().max(cur.abs()).max(1.0)
            };
            if split {
                out.push(start..k);
                start = k;
            }
        }
        out
    }

    /// `max |V†V - I|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let v = &self.eigenvectors;
        let gram = &v.adjoint() * v;
        residual_norm(&gram, &ComplexMatrix::identity(v.cols())).unwrap_or(f64::INFINITY)
    }

    /// `max |HV - VΛ|` for the matrix this decomposition came from.
    pub fn reconstruction_residual(&self, h: &ComplexMatrix) -> f64 {
        let v = &self.eigenvectors;
        let lambda = ComplexMatrix::diagonal(&self.eigenvalues);
        let lhs = h * v;
        let rhs = v * &lambda;
        residual_norm(&lhs, &rhs).unwrap_or(f64::INFINITY)
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Deterministic for a fixed input.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(Error::rejected(format!(
            "eigen-decomposition needs a square matrix, got {:?}",
            h.shape()
        )));
    }
    let asym = h.hermiticity_residual();
    if !(asym < HERMITIAN_TOL) {
        return Err(Error::rejected(format!(
            "matrix is not Hermitian (residual {asym:.3e})"
        )));
    }
    let n = h.rows;
    let mut a = (h + &h.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = n == 1;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let negligible = mag <= 1e-18 * scale
                    || (sweeps > 3
                        && app.abs() + 100.0 * mag == app.abs()
                        && aqq.abs() + 100.0 * mag == aqq.abs());
                if negligible {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p, q, apq, mag, app, aqq);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NumericFailure {
            iterations: sweeps,
            reason: "Jacobi sweeps did not converge".into(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// One Jacobi rotation `A <- J† A J`, `V <- V J` annihilating `a[p,q]`.
///
/// `J = D P` where `D` removes the phase of `a[p,q]` and `P` is the real
/// symmetric Jacobi rotation.
#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    apq: Complex64,
    mag: f64,
    app: f64,
    aqq: f64,
) {
    let n = a.rows;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = (apq / mag).conj();

    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = phase * (-s);
    let j_qq = phase * c;

    for r in 0..n {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp * j_pp + arq * j_qp;
        a[(r, q)] = arp * j_pq + arq * j_qq;
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * j_pp + vrq * j_qp;
        v[(r, q)] = vrp * j_pq + vrq * j_qq;
    }
    for col in 0..n {
        let apc = a[(p, col)];
        let aqc = a[(q, col)];
        a[(p, col)] = j_pp.conj() * apc + j_qp.conj() * aqc;
        a[(q, col)] = j_pq.conj() * apc + j_qq.conj() * aqc;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Smallest singular value. Hermitian input uses `min |λ|` directly, which
/// keeps full precision near zero; other input goes through `A†A`.
pub fn smallest_singular_value(a: &ComplexMatrix) -> Result<f64> {
    if a.is_square() && a.hermiticity_residual() < HERMITIAN_TOL {
        let eig = hermitian_eig(a)?;
        return Ok(eig
            .eigenvalues
            .iter()
            .map(|x| x.abs())
            .fold(f64::INFINITY, f64::min));
    }
    let gram = &a.adjoint() * a;
    let eig = hermitian_eig(&gram)?;
    Ok(eig.eigenvalues[0].max(0.0).sqrt())
}

/// Pauli matrices `[σx, σy, σz]`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let sx = ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]);
    let sy = ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]);
    let sz = ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]);
    [sx, sy, sz]
}
