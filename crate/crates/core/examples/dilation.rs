//! Unitary dilations of a contraction: the Halmos construction and one built
//! so that its Λ_k misses a chosen point.

use hrnr::dilation::{excluding_dilation_matrix, halmos};
use hrnr::geometry::{Point, TolerancePolicy};
use hrnr::linalg::CMatrix;
use hrnr::range::{member, Rank};

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let t = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Point::new(0.5, 0.0),
        Point::new(-0.5, 0.0),
        Point::new(0.0, 0.3),
    ]));
    let u = halmos(&t, 0.4, &tol)?;
    println!(
        "halmos: {}x{} residuals {:.1e} {:.1e}",
        u.matrix.nrows(),
        u.matrix.ncols(),
        u.unitarity_residual,
        u.compression_residual
    );

    let lambda = Point::new(0.0, -0.2);
    let v = excluding_dilation_matrix(&t, 1, lambda, &tol)?;
    let verdict = member(&v.model(&tol)?, Rank::Finite(1), lambda, &tol)?.verdict;
    println!("excluding {lambda} at alpha {:.4}: {verdict:?}", v.alpha);
    Ok(())
}
