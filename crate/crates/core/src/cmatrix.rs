//! Dense complex matrices with the handful of kernels the rest of the crate
//! needs: deterministic products, LU solves, the spectral norm, and a general
//! eigendecomposition.
//!
//! Everything is plain row-major `Vec<Complex64>` storage. Products and
//! reductions run in a fixed order so repeated runs produce bit-identical
//! results. The eigendecomposition is delegated to `faer` (sequential build);
//! its output is re-normalized and sorted here so downstream consumers see a
//! canonical decomposition.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Condition-number ceiling above which an eigenvector basis is treated as
/// numerically defective.
pub const EIG_COND_MAX: f64 = 1e12;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

/// Eigendecomposition `A V = V diag(eigenvalues)` with a condition estimate
/// for the eigenvector basis.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub v: CMatrix,
    pub cond_v: f64,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        CMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from a row-major buffer, validating length and finiteness.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                len: entries.len(),
                rows,
                cols,
            });
        }
        for (idx, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(CMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn real_diag(values: &[f64]) -> Self {
        let vals: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        CMatrix::diag(&vals)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |acc, e| acc.max(e.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= factor;
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e += o;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e -= o;
        }
        Ok(out)
    }

    /// `A + s I` for square `A`.
    pub fn shifted(&self, s: Complex64) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] += s;
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Matrix product with a fixed inner summation order.
    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self[(i, k)] * other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..self.cols {
                acc += self[(i, k)] * v[k];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Solves `A X = RHS` by LU with partial pivoting.
    ///
    /// Signals `SingularMatrix` when a pivot falls below working precision.
    pub fn solve(&self, rhs: &CMatrix) -> Result<CMatrix> {
        let lu = LuFactors::new(self)?;
        lu.solve(rhs)
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        self.solve(&CMatrix::identity(self.rows))
    }

    /// Largest singular value, computed as `sqrt(lambda_max(A* A))` with a
    /// cyclic Jacobi sweep on the Hermitian Gram matrix.
    pub fn spectral_norm(&self) -> f64 {
        let sv = self.singular_values();
        sv.first().copied().unwrap_or(0.0)
    }

    /// All singular values, sorted descending.
    pub fn singular_values(&self) -> Vec<f64> {
        // Gram matrix of the thinner side keeps the Jacobi problem small.
        let gram = if self.rows >= self.cols {
            self.adjoint().matmul(self).expect("shape")
        } else {
            self.matmul(&self.adjoint()).expect("shape")
        };
        let mut eig = jacobi_hermitian_eigenvalues(&gram);
        for v in &mut eig {
            *v = v.max(0.0).sqrt();
        }
        eig.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
        eig
    }

    /// Spectral condition number `sigma_max / sigma_min`.
    pub fn cond2(&self) -> f64 {
        let sv = self.singular_values();
        match (sv.first(), sv.last()) {
            (Some(&max), Some(&min)) if min > 0.0 => max / min,
            (Some(&max), _) if max == 0.0 => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.max_abs().max(1.0);
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol * scale {
                    return false;
                }
            }
        }
        true
    }

    /// Eigendecomposition with eigenpairs sorted by descending real part
    /// (then imaginary part), columns normalized and phase-fixed.
    ///
    /// Fails with `NonDiagonalizable` when the eigenvector condition number
    /// exceeds [`EIG_COND_MAX`].
    pub fn eig(&self) -> Result<EigDecomposition> {
        self.eig_with_cond_limit(EIG_COND_MAX)
    }

    pub fn eig_with_cond_limit(&self, cond_max: f64) -> Result<EigDecomposition> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let m = faer::Mat::<Complex64>::from_fn(n, n, |i, j| self[(i, j)]);
        let evd = m.eigen().map_err(|_| Error::NonDiagonalizable {
            cond: f64::INFINITY,
            limit: cond_max,
        })?;
        let u = evd.U();
        let s = evd.S();

        let mut pairs: Vec<(Complex64, Vec<Complex64>)> = (0..n)
            .map(|k| {
                let col: Vec<Complex64> = (0..n).map(|i| u[(i, k)]).collect();
                (s[k], col)
            })
            .collect();
        // Canonical order: descending real part, then descending imaginary.
        pairs.sort_by(|a, b| {
            (b.0.re, b.0.im)
                .partial_cmp(&(a.0.re, a.0.im))
                .expect("finite eigenvalues")
        });

        let mut v = CMatrix::zeros(n, n);
        let mut eigenvalues = Vec::with_capacity(n);
        for (k, (lambda, col)) in pairs.into_iter().enumerate() {
            let norm = col.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::NonDiagonalizable {
                    cond: f64::INFINITY,
                    limit: cond_max,
                });
            }
            // Phase fix: the largest-modulus entry becomes real positive.
            let mut best = 0usize;
            for i in 1..n {
                if col[i].norm() > col[best].norm() {
                    best = i;
                }
            }
            let phase = col[best] / col[best].norm();
            let rescale = phase.conj() / norm;
            for i in 0..n {
                v[(i, k)] = col[i] * rescale;
            }
            eigenvalues.push(lambda);
        }

        let cond_v = v.cond2();
        if !cond_v.is_finite() || cond_v > cond_max {
            return Err(Error::NonDiagonalizable {
                cond: cond_v,
                limit: cond_max,
            });
        }
        Ok(EigDecomposition {
            eigenvalues,
            v,
            cond_v,
        })
    }

    /// Householder QR; returns `(Q, R)` with `Q` unitary.
    pub fn qr(&self) -> (CMatrix, CMatrix) {
        let m = self.rows;
        let n = self.cols;
        let mut r = self.clone();
        let mut q = CMatrix::identity(m);
        for k in 0..n.min(m.saturating_sub(1)) {
            // Householder vector for column k.
            let mut norm_x = 0.0f64;
            for i in k..m {
                norm_x += r[(i, k)].norm_sqr();
            }
            let norm_x = norm_x.sqrt();
            if norm_x == 0.0 {
                continue;
            }
            let x0 = r[(k, k)];
            let phase = if x0.norm() > 0.0 {
                x0 / x0.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            let alpha = -phase * norm_x;
            let mut v: Vec<Complex64> = (k..m).map(|i| r[(i, k)]).collect();
            v[0] -= alpha;
            let vnorm_sqr = v.iter().map(|e| e.norm_sqr()).sum::<f64>();
            if vnorm_sqr == 0.0 {
                continue;
            }
            // Apply H = I - 2 v v* / (v* v) to R (left) and accumulate into Q.
            for j in k..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in k..m {
                    dot += v[i - k].conj() * r[(i, j)];
                }
                let f = dot * 2.0 / vnorm_sqr;
                for i in k..m {
                    let delta = v[i - k] * f;
                    r[(i, j)] -= delta;
                }
            }
            for j in 0..m {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in k..m {
                    dot += v[i - k].conj() * q[(j, i)].conj();
                }
                let f = dot * 2.0 / vnorm_sqr;
                for i in k..m {
                    let delta = (v[i - k] * f).conj();
                    q[(j, i)] -= delta;
                }
            }
        }
        (q, r)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Bilinear pairing `sum_i u_i w_i` (no conjugation); the finite-dimensional
/// stand-in for applying a dual functional.
pub fn bilinear(u: &[Complex64], w: &[Complex64]) -> Complex64 {
    assert_eq!(u.len(), w.len(), "pairing length mismatch");
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in u.iter().zip(w.iter()) {
        acc += a * b;
    }
    acc
}

/// LU factorization with partial pivoting, reusable across right-hand sides.
pub struct LuFactors {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn new(a: &CMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows,
                cols: a.cols,
            });
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let pivot_tol = f64::EPSILON * (n as f64) * a.max_abs();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let mag = lu[(i, k)].norm();
                if mag > best {
                    best = mag;
                    p = i;
                }
            }
            if best <= pivot_tol {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in (k + 1)..n {
                    let delta = factor * lu[(k, j)];
                    lu[(i, j)] -= delta;
                }
            }
        }
        Ok(LuFactors { lu, perm })
    }

    pub fn solve(&self, rhs: &CMatrix) -> Result<CMatrix> {
        let n = self.lu.rows;
        if rhs.rows != n {
            return Err(Error::ShapeMismatch {
                left_rows: n,
                left_cols: n,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut x = CMatrix::zeros(n, rhs.cols);
        for j in 0..rhs.cols {
            // Forward substitution on the permuted right-hand side.
            let mut y = vec![Complex64::new(0.0, 0.0); n];
            for i in 0..n {
                let mut acc = rhs[(self.perm[i], j)];
                for k in 0..i {
                    acc -= self.lu[(i, k)] * y[k];
                }
                y[i] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = y[i];
                for k in (i + 1)..n {
                    acc -= self.lu[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = acc / self.lu[(i, i)];
            }
        }
        Ok(x)
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Only the diagonal is returned; order unspecified.
fn jacobi_hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let n = h.rows();
    let mut a = h.clone();
    // Symmetrize defensively against rounding in the Gram product.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let scale = a.max_abs();
    if scale == 0.0 || n == 1 {
        return (0..n).map(|i| a[(i, i)].re).collect();
    }
    let tol = f64::EPSILON * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= tol * 1e-2 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let phase = apq / mag;
                let s = phase.conj() * (t * c);
                // Column update: A <- A J with J[[c, -s*],[s, c]] on (p, q).
                for r in 0..n {
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = arp * c + arq * s;
                    a[(r, q)] = -arp * s.conj() + arq * c;
                }
                // Row update: A <- J* A.
                for r in 0..n {
                    let apr = a[(p, r)];
                    let aqr = a[(q, r)];
                    a[(p, r)] = apr * c + aqr * s.conj();
                    a[(q, r)] = -apr * s + aqr * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    (0..n).map(|i| a[(i, i)].re).collect()
}

// --- JSON schema -----------------------------------------------------------
//
// { "rows": r, "cols": c, "entries": [ [ [re, im], ... ], ... ] }
// with entries listed row by row. Doubles round-trip losslessly.

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<[f64; 2]>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let e = self[(i, j)];
                        [e.re, e.im]
                    })
                    .collect()
            })
            .collect();
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.rows == 0 || raw.cols == 0 {
            return Err(D::Error::custom("field 'rows'/'cols' must be positive"));
        }
        if raw.entries.len() != raw.rows {
            return Err(D::Error::custom(format!(
                "field 'entries' has {} rows, expected {}",
                raw.entries.len(),
                raw.rows
            )));
        }
        let mut entries = Vec::with_capacity(raw.rows * raw.cols);
        for (i, row) in raw.entries.iter().enumerate() {
            if row.len() != raw.cols {
                return Err(D::Error::custom(format!(
                    "field 'entries' row {} has {} columns, expected {}",
                    i,
                    row.len(),
                    raw.cols
                )));
            }
            for (j, pair) in row.iter().enumerate() {
                if !pair[0].is_finite() || !pair[1].is_finite() {
                    return Err(D::Error::custom(format!(
                        "field 'entries' ({i},{j}) is not finite"
                    )));
                }
                entries.push(Complex64::new(pair[0], pair[1]));
            }
        }
        Ok(CMatrix {
            rows: raw.rows,
            cols: raw.cols,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{assert_close, rand_matrix, rand_unitary};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matmul_identity_passthrough() {
        let x = rand_matrix(2, 3, 3);
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.matmul(&x).unwrap(), x);
    }

    #[test]
    fn matmul_diagonal_product() {
        let a = CMatrix::real_diag(&[1.0, 2.0]);
        let b = CMatrix::real_diag(&[3.0, 4.0]);
        let p = a.matmul(&b).unwrap();
        assert_eq!(p, CMatrix::real_diag(&[3.0, 8.0]));
    }

    #[test]
    fn matmul_matches_triple_loop_oracle() {
        let a = rand_matrix(3, 3, 11);
        let b = rand_matrix(3, 3, 12);
        let p = a.matmul(&b).unwrap();
        // Independent naive reference.
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = c(0.0, 0.0);
                for k in 0..3 {
                    acc += a[(i, k)] * b[(k, j)];
                }
                assert!((p[(i, j)] - acc).norm() <= 1e-13 * acc.norm().max(1.0));
            }
        }
    }

    #[test]
    fn matmul_shape_mismatch() {
        let a = rand_matrix(2, 3, 1);
        let b = rand_matrix(2, 3, 2);
        assert!(matches!(a.matmul(&b), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = rand_matrix(4, 2, 5);
        let x = CMatrix::identity(4).solve(&b).unwrap();
        for (xe, be) in x.entries().iter().zip(b.entries().iter()) {
            assert!((xe - be).norm() <= 1e-14);
        }
    }

    #[test]
    fn solve_diagonal_inverse() {
        let a = CMatrix::real_diag(&[2.0, 4.0]);
        let x = a.solve(&CMatrix::identity(2)).unwrap();
        assert_close(x[(0, 0)].re, 0.5, 1e-15);
        assert_close(x[(1, 1)].re, 0.25, 1e-15);
    }

    #[test]
    fn solve_residual_small() {
        let a = rand_matrix(8, 8, 21);
        let a = a.add(&CMatrix::identity(8).scale(c(4.0, 0.0))).unwrap();
        let rhs = rand_matrix(8, 2, 22);
        let x = a.solve(&rhs).unwrap();
        let res = a.matmul(&x).unwrap().sub(&rhs).unwrap().spectral_norm();
        assert!(res <= 1e-12 * a.spectral_norm() * x.spectral_norm().max(1.0));
    }

    #[test]
    fn solve_singular_detected() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 0)] = c(1.0, 0.0);
        a[(0, 1)] = c(2.0, 0.0);
        a[(1, 0)] = c(2.0, 0.0);
        a[(1, 1)] = c(4.0, 0.0);
        assert!(matches!(
            a.solve(&CMatrix::identity(2)),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn spectral_norm_diagonal() {
        let a = CMatrix::real_diag(&[1.0, -3.0]);
        assert_close(a.spectral_norm(), 3.0, 1e-14);
    }

    #[test]
    fn spectral_norm_nilpotent_block() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = c(2.0, 0.0);
        assert_close(a.spectral_norm(), 2.0, 1e-14);
    }

    #[test]
    fn spectral_norm_matches_svd_oracle() {
        // Oracle: faer's dense SVD of the explicit matrix; the implementation
        // runs Jacobi on the Gram matrix, an independent path.
        let a = rand_matrix(10, 10, 33);
        let m = faer::Mat::<Complex64>::from_fn(10, 10, |i, j| a[(i, j)]);
        let svd = m.svd().unwrap();
        let oracle = svd.S()[0].re;
        assert_close(a.spectral_norm(), oracle, 1e-10 * oracle);
    }

    #[test]
    fn eig_diagonal() {
        let a = CMatrix::real_diag(&[1.0, 2.0]);
        let d = a.eig().unwrap();
        assert_close(d.eigenvalues[0].re, 2.0, 1e-12);
        assert_close(d.eigenvalues[1].re, 1.0, 1e-12);
        assert!(d.cond_v < 1.0 + 1e-10);
    }

    #[test]
    fn eig_jordan_block_rejected() {
        let mut a = CMatrix::identity(2);
        a[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(a.eig(), Err(Error::NonDiagonalizable { .. })));
    }

    #[test]
    fn eig_normal_matrix_has_unitary_basis() {
        let u = rand_unitary(6, 77);
        let d = CMatrix::real_diag(&[1.0, 2.0, 3.0, 4.5, 6.0, 7.5]);
        let a = u.matmul(&d).unwrap().matmul(&u.adjoint()).unwrap();
        let dec = a.eig().unwrap();
        let gram = dec.v.adjoint().matmul(&dec.v).unwrap();
        let dev = gram.sub(&CMatrix::identity(6)).unwrap().spectral_norm();
        assert!(dev <= 1e-10, "V deviates from unitary by {dev:.3e}");
    }

    #[test]
    fn eig_residual_invariant() {
        let a = rand_matrix(7, 7, 99);
        let dec = a.eig().unwrap();
        let lam = CMatrix::diag(&dec.eigenvalues);
        let res = a
            .matmul(&dec.v)
            .unwrap()
            .sub(&dec.v.matmul(&lam).unwrap())
            .unwrap()
            .spectral_norm();
        assert!(res <= 1e-10 * a.spectral_norm());
    }

    #[test]
    fn qr_produces_unitary_factor() {
        let g = rand_matrix(5, 5, 13);
        let (q, r) = g.qr();
        let dev = q
            .adjoint()
            .matmul(&q)
            .unwrap()
            .sub(&CMatrix::identity(5))
            .unwrap()
            .spectral_norm();
        assert!(dev <= 1e-13);
        let recon = q.matmul(&r).unwrap().sub(&g).unwrap().spectral_norm();
        assert!(recon <= 1e-13 * g.spectral_norm());
    }

    #[test]
    fn json_schema_round_trip() {
        let a = rand_matrix(3, 2, 4);
        let text = serde_json::to_string(&a).unwrap();
        let back: CMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn json_rejects_bad_row_count() {
        let text = r#"{"rows":2,"cols":1,"entries":[[[1.0,0.0]]]}"#;
        let err = serde_json::from_str::<CMatrix>(text).unwrap_err();
        assert!(err.to_string().contains("entries"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn spectral_norm_submultiplicative(seed_a in 0u64..5000, seed_b in 0u64..5000) {
            let a = rand_matrix(4, 4, seed_a);
            let b = rand_matrix(4, 4, seed_b);
            let lhs = a.matmul(&b).unwrap().spectral_norm();
            prop_assert!(lhs <= a.spectral_norm() * b.spectral_norm() + 1e-10);
        }

        #[test]
        fn solve_matmul_round_trip(seed in 0u64..5000) {
            // Shifted random matrices stay well conditioned.
            let a = rand_matrix(5, 5, seed)
                .add(&CMatrix::identity(5).scale(Complex64::new(6.0, 0.0)))
                .unwrap();
            let x = rand_matrix(5, 3, seed.wrapping_add(1));
            let back = a.solve(&a.matmul(&x).unwrap()).unwrap();
            let err = back.sub(&x).unwrap().spectral_norm();
            prop_assert!(err <= 1e-10 * x.spectral_norm().max(1.0));
        }

        #[test]
        fn json_round_trip_bit_exact(seed in 0u64..5000) {
            let a = rand_matrix(3, 3, seed);
            let text = serde_json::to_string(&a).unwrap();
            let back: CMatrix = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(a, back);
        }
    }
}
