//! Small dense linear algebra: exact matrices over [`Cx`], a cyclic Jacobi
//! eigenvalue solver for Hermitian matrices and a scaling-and-squaring
//! matrix exponential.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Cx;

pub type CMatrix = DMatrix<Complex64>;

/// Dense row-major matrix with exact entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cx>,
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)].to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Cx::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cx::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cx>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cx::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Cx> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Cx) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn apply(&self, v: &[Cx]) -> Vec<Cx> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Cx::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self[(i, j)].is_zero() {
                        acc += &(&self[(i, j)] * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn to_c64(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_c64())
    }

    /// Exact dyadic image of a float matrix.
    pub fn from_c64(m: &CMatrix) -> Result<Self> {
        let mut out = ExactMatrix::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] = Cx::from_c64(m[(i, j)])?;
            }
        }
        Ok(out)
    }

    /// Maximum absolute column sum (induced 1-norm), rounded.
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs_f64()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Cx;
    fn index(&self, (i, j): (usize, usize)) -> &Cx {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx {
        &mut self.data[i * self.cols + j]
    }
}

/// Induced 1-norm of a float matrix.
pub fn norm1(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order. The sweep order is fixed, so results are
/// bitwise reproducible.
pub fn jacobi_eigenvalues_symmetric(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut m = a.clone();
    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        let scale: f64 = (0..n).map(|i| m[(i, i)] * m[(i, i)]).sum::<f64>() + off;
        if off <= f64::EPSILON * f64::EPSILON * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues of the Hermitian part `(A + Aᴴ)/2` of a complex matrix.
///
/// Uses the real embedding `[[Re, −Im], [Im, Re]]`, whose spectrum is the
/// Hermitian spectrum with every eigenvalue doubled; every second value of
/// the sorted list is returned.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let n = a.nrows();
    let h = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            big[(i, j)] = z.re;
            big[(i + n, j + n)] = z.re;
            big[(i, j + n)] = -z.im;
            big[(i + n, j)] = z.im;
        }
    }
    let ev = jacobi_eigenvalues_symmetric(&big);
    ev.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

/// Max |A − Aᴴ| over entries.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    max_abs(&(a - a.adjoint()))
}

/// Matrix exponential by scaling and squaring with a truncated Taylor
/// series. Deterministic; intended for small, well-scaled matrices.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let norm = norm1(a);
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a * Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let mut term = CMatrix::identity(n, n);
    let mut sum = CMatrix::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
        if max_abs(&term) < 1e-18 * max_abs(&sum).max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Solves `P X = B` for Hermitian positive definite (or any invertible) `P`.
pub fn solve(p: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    p.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| Error::Dimension("singular matrix".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_on_known_spectrum() {
        let a = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        let ev = jacobi_eigenvalues_symmetric(&a);
        let s = 2f64.sqrt();
        let expect = [2.0 - s, 2.0, 2.0 + s];
        for (x, y) in ev.iter().zip(expect) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn hermitian_spectrum_of_pauli_y() {
        let a = CMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        );
        let ev = hermitian_eigenvalues(&a);
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expm_rotation() {
        let th = 0.7f64;
        let a = CMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.0, 0.0), Complex64::new(-th, 0.0), Complex64::new(th, 0.0), Complex64::new(0.0, 0.0)],
        );
        let e = expm(&a);
        assert!((e[(0, 0)].re - th.cos()).abs() < 1e-14);
        assert!((e[(1, 0)].re - th.sin()).abs() < 1e-14);
        assert!((e[(0, 1)].re + th.sin()).abs() < 1e-14);
    }

    #[test]
    fn exact_matrix_product() {
        let a = ExactMatrix::from_rows(vec![vec![Cx::from_int(1), Cx::from_int(2)], vec![Cx::zero(), Cx::i()]]);
        let b = a.mul(&ExactMatrix::identity(2));
        assert_eq!(a, b);
        let sq = a.mul(&a);
        assert_eq!(sq[(0, 1)], Cx::from_int(2) + Cx::from_int(2) * Cx::i());
        assert_eq!(sq[(1, 1)], Cx::from_int(-1));
    }
}
