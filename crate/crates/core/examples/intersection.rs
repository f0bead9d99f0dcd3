//! Intersect Λ_1 over sampled unitary dilations and compare with Λ_1 itself.

use hrnr::dilation::dilation_intersection;
use hrnr::geometry::{Point, TolerancePolicy};
use hrnr::linalg::CMatrix;
use hrnr::range::region;
use hrnr::spectral::from_normal_matrix;

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let t = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Point::new(0.5, 0.0),
        Point::new(-0.5, 0.0),
        Point::new(0.0, 0.3),
    ]));
    let inter = dilation_intersection(&t, 1, 10, 360, 1, &tol)?;
    let exact = region(&from_normal_matrix(&t, &tol)?, 1, 360, &tol)?;
    println!("vertices {}", inter.vertices().len());
    println!("hausdorff {:.3e}", inter.hausdorff(&exact.polygon));
    Ok(())
}
