//! Membership in Λ_k for a normal matrix, with the excluding half plane and
//! the matching direct-sum split when a point is outside.

use hrnr::geometry::{Point, TolerancePolicy};
use hrnr::linalg::CMatrix;
use hrnr::range::{decompose_excluding, member, Rank};
use hrnr::spectral::from_normal_matrix;

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let t = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        Point::new(-1.0, 0.0),
        Point::new(0.0, -1.0),
    ]));
    let spec = from_normal_matrix(&t, &tol)?;
    for z in [Point::new(0.0, 0.0), Point::new(0.3, 0.0), Point::new(0.0, -0.8)] {
        for k in [1, 2] {
            let m = member(&spec, Rank::Finite(k), z, &tol)?;
            println!("k={k} {z}: {:?}", m.verdict);
            if let Some((h, r)) = decompose_excluding(&spec, k, z, &tol)? {
                println!("    dim ran E(H) = {r} for H at angle {:.4}", h.normal_angle);
            }
        }
    }
    Ok(())
}
