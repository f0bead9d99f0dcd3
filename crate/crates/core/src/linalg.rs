//! Small dense complex linear algebra helpers on top of nalgebra.

use crate::error::{Error, Result};
use nalgebra::linalg::{Schur, SymmetricEigen};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;

const SCHUR_EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;

pub fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() == 0 || m.nrows() != m.ncols() {
        return Err(Error::BadShape {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// `‖MM* − M*M‖_F`.
pub fn commutator_residual(m: &CMatrix) -> f64 {
    let a = m.adjoint();
    (m * &a - &a * m).norm()
}

/// `(e^{iξ}M + e^{−iξ}M*)/2`.
pub fn rotated_real_part(m: &CMatrix, xi: f64) -> CMatrix {
    let phase = Complex64::from_polar(1.0, xi);
    let rotated = m * phase;
    let adj = rotated.adjoint();
    (rotated + adj) * Complex64::new(0.5, 0.0)
}

/// Symmetrize `h` and return its eigenvalues in decreasing order together
/// with the matching eigenvectors as columns.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = check_square(h)?;
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(sym, SCHUR_EPS, MAX_ITER).ok_or(Error::EigFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Eigenvalues only, in decreasing order.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    check_square(h)?;
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    if !sym.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::EigFailure);
    }
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> Result<f64> {
    let gram = m.adjoint() * m;
    let top = hermitian_eigenvalues(&gram)?[0];
    Ok(top.max(0.0).sqrt())
}

/// Square root of a positive semidefinite Hermitian matrix; negative
/// eigenvalues from rounding are clamped to zero. Returns the root and the
/// eigenvalues of the root.
pub fn psd_sqrt(h: &CMatrix) -> Result<(CMatrix, Vec<f64>)> {
    let (values, vectors) = hermitian_eigen(h)?;
    let roots: Vec<f64> = values.iter().map(|v| v.max(0.0).sqrt()).collect();
    let n = roots.len();
    let scaled = CMatrix::from_fn(n, n, |r, c| vectors[(r, c)] * roots[c]);
    Ok((scaled * vectors.adjoint(), roots))
}

/// Eigen-decomposition of a normal matrix through the complex Schur form.
///
/// For a normal input the triangular factor is diagonal up to rounding, so
/// its diagonal holds the eigenvalues and the Schur vectors are
/// eigenvectors.
pub fn normal_eigen(m: &CMatrix) -> Result<(Vec<Complex64>, CMatrix)> {
    check_square(m)?;
    let schur = Schur::try_new(m.clone(), SCHUR_EPS, MAX_ITER).ok_or(Error::EigFailure)?;
    let (q, t) = schur.unpack();
    let values: Vec<Complex64> = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::EigFailure);
    }
    Ok((values, q))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `‖U*U − I‖_F`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let n = u.nrows();
    (u.adjoint() * u - identity(n)).norm()
}

/// Block matrix `[[a, b], [c, d]]` of four equally sized square blocks.
pub fn block2(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((0, n), (n, n)).copy_from(b);
    out.view_mut((n, 0), (n, n)).copy_from(c);
    out.view_mut((n, n), (n, n)).copy_from(d);
    out
}

pub fn diag(values: &[Complex64]) -> CMatrix {
    let n = values.len();
    CMatrix::from_fn(n, n, |r, c| if r == c { values[r] } else { Complex64::new(0.0, 0.0) })
}

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let (q, r) = g.qr().unpack();
    let phases: Vec<Complex64> = (0..n)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    q * diag(&phases)
}
