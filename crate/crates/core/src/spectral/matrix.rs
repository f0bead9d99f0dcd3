use super::{Atom, Multiplicity, SpectralMeasureModel};
use crate::error::{Error, Result};
use crate::geometry::{Point, TolerancePolicy};
use crate::linalg::{check_square, commutator_residual, normal_eigen, CMatrix};

/// Spectral measure of a normal matrix: its eigenvalues, clustered within
/// `eps_eig`, with the cluster sizes as multiplicities.
pub fn from_normal_matrix(m: &CMatrix, tol: &TolerancePolicy) -> Result<SpectralMeasureModel> {
    let n = check_square(m)?;
    let fro = m.norm();
    let residual = commutator_residual(m);
    let threshold = tol.eps_eig * fro.powi(2).max(1.0);
    if residual.is_nan() || residual > threshold {
        return Err(Error::NotNormal {
            residual,
            threshold,
        });
    }
    let (values, vectors) = normal_eigen(m)?;
    let bound = 10.0 * tol.eps_eig * fro.max(f64::MIN_POSITIVE);
    for (j, &lambda) in values.iter().enumerate() {
        let v = vectors.column(j);
        let r = (m * v - v * lambda).norm();
        if r > bound {
            return Err(Error::EigFailure);
        }
    }
    let atoms = cluster(&values, tol.eps_eig)
        .into_iter()
        .map(|(z, count)| Atom::new(z, Multiplicity::Finite(count)))
        .collect::<Vec<_>>();
    debug_assert_eq!(
        atoms
            .iter()
            .map(|a| match a.mult {
                Multiplicity::Finite(c) => c as usize,
                Multiplicity::Infinite => 0,
            })
            .sum::<usize>(),
        n
    );
    SpectralMeasureModel::from_atoms(atoms, tol)
}

/// Greedy clustering: each value joins the first cluster whose mean lies
/// within `eps`.
fn cluster(values: &[Point], eps: f64) -> Vec<(Point, u64)> {
    let mut groups: Vec<(Point, u64)> = Vec::new();
    for &z in values {
        match groups.iter_mut().find(|(c, _)| (*c - z).norm() <= eps) {
            Some((c, count)) => {
                *c = (*c * *count as f64 + z) / (*count + 1) as f64;
                *count += 1;
            }
            None => groups.push((z, 1)),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::diag;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mults(model: &SpectralMeasureModel, z: Point) -> Option<Multiplicity> {
        model
            .atoms()
            .iter()
            .find(|a| (a.location - z).norm() < 1e-8)
            .map(|a| a.mult)
    }

    #[test]
    fn diagonal_clusters() {
        let tol = TolerancePolicy::default();
        let m = diag(&[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0)]);
        let model = from_normal_matrix(&m, &tol).unwrap();
        assert_eq!(model.atoms().len(), 2);
        assert_eq!(mults(&model, c(1.0, 0.0)), Some(Multiplicity::Finite(1)));
        assert_eq!(mults(&model, c(0.0, 1.0)), Some(Multiplicity::Finite(2)));
    }

    #[test]
    fn involution() {
        let tol = TolerancePolicy::default();
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let model = from_normal_matrix(&m, &tol).unwrap();
        assert_eq!(mults(&model, c(1.0, 0.0)), Some(Multiplicity::Finite(1)));
        assert_eq!(mults(&model, c(-1.0, 0.0)), Some(Multiplicity::Finite(1)));
    }

    #[test]
    fn rejects_non_normal() {
        let tol = TolerancePolicy::default();
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            from_normal_matrix(&m, &tol),
            Err(Error::NotNormal { .. })
        ));
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(
            from_normal_matrix(&rect, &tol),
            Err(Error::BadShape { .. })
        ));
    }
}
