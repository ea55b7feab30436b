//! Symmetric-matrix helpers shared by the limit-law and CUSUM modules.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub(crate) const EIGEN_FLOOR: f64 = 1e-12;

/// Eigenvalues of a symmetric matrix, ascending.
pub(crate) fn sym_eigenvalues(mat: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = mat
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn sym_power(mat: &DMatrix<f64>, exponent: f64, name: &'static str) -> Result<DMatrix<f64>> {
    let eig = mat.clone().symmetric_eigen();
    let max = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let min = eig
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if exponent < 0.0 && min <= EIGEN_FLOOR * max.max(1.0) {
        return Err(Error::SingularMatrix {
            name,
            min_eigenvalue: min,
        });
    }
    let mut scaled = eig.eigenvectors.clone();
    for (j, lambda) in eig.eigenvalues.iter().enumerate() {
        let clipped = lambda.max(EIGEN_FLOOR);
        let factor = clipped.powf(exponent);
        scaled.column_mut(j).scale_mut(factor);
    }
    Ok(&scaled * eig.eigenvectors.transpose())
}

/// `mat^{-1/2}` via symmetric eigendecomposition; errors when singular.
pub(crate) fn sym_inv_sqrt(mat: &DMatrix<f64>, name: &'static str) -> Result<DMatrix<f64>> {
    sym_power(mat, -0.5, name)
}

/// Plain symmetric inverse with the same singularity guard.
pub(crate) fn sym_inv(mat: &DMatrix<f64>, name: &'static str) -> Result<DMatrix<f64>> {
    sym_power(mat, -1.0, name)
}
