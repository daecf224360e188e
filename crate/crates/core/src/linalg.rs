// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Small dense complex linear-algebra helpers shared by the other modules.

use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Default absolute tolerance, scaled by operand norms at each use site.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(rows, cols)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Builds a matrix from row-major real entries.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> ComplexMatrix {
    assert_eq!(entries.len(), rows * cols);
    ComplexMatrix::from_fn(rows, cols, |i, j| re(entries[i * cols + j]))
}

pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// Largest singular value. Empty matrices have norm zero.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if m.iter().all(|z| *z == C64::new(0.0, 0.0)) {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Hilbert-Schmidt inner product tr(A† B).
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// ‖M − M†‖ (spectral).
pub fn hermiticity_residual(m: &ComplexMatrix) -> f64 {
    spectral_norm(&(m - m.adjoint()))
}

/// Tolerance check: `residual ≤ tol · max(1, scale)`.
pub fn within(residual: f64, tol: f64, scale: f64) -> bool {
    residual <= tol * scale.max(1.0)
}

pub fn check_hermitian(m: &ComplexMatrix, what: &str, tol: f64) -> crate::Result<()> {
    if !m.is_square() {
        return Err(crate::Error::DimensionMismatch(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let residual = hermiticity_residual(m);
    if within(residual, tol, spectral_norm(m)) {
        Ok(())
    } else {
        Err(crate::Error::NotHermitian {
            what: what.to_string(),
            residual,
        })
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let sym = (m + m.adjoint()) * re(0.5);
    let mut vals: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Eigenvalues of a general square matrix via complex Schur form.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<C64> {
    nalgebra::linalg::Schur::new(m.clone())
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
        .unwrap_or_default()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_norm_of_diagonal() {
        let m = real_matrix(2, 2, &[3.0, 0.0, 0.0, -4.0]);
        assert!((spectral_norm(&m) - 4.0).abs() < 1e-14);
        assert_eq!(spectral_norm(&zeros(3, 3)), 0.0);
        assert_eq!(spectral_norm(&zeros(0, 3)), 0.0);
    }

    #[test]
    fn hermitian_check_rejects_asymmetric() {
        let m = real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(check_hermitian(&m, "H", DEFAULT_TOLERANCE).is_err());
        let h = real_matrix(2, 2, &[1.0, 2.0, 2.0, 0.0]);
        assert!(check_hermitian(&h, "H", DEFAULT_TOLERANCE).is_ok());
    }

    #[test]
    fn eigenvalues_of_rotation_generator() {
        let m = real_matrix(2, 2, &[-1.0, -2.0, 2.0, -1.0]);
        let mut ev = eigenvalues(&m);
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - c(-1.0, -2.0)).norm() < 1e-12);
        assert!((ev[1] - c(-1.0, 2.0)).norm() < 1e-12);
    }
}
