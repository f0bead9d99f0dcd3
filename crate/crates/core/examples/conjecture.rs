//! Scan θ for the condition on the eigenvalues of Re(e^{iθ}T − λ).

use hrnr::dilation::conjecture_check;
use hrnr::geometry::{Point, TolerancePolicy};
use hrnr::linalg::CMatrix;

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let t = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Point::new(0.5, 0.25),
        Point::new(0.5, -0.25),
        Point::new(-0.5, 0.25),
        Point::new(-0.5, -0.25),
    ]));
    for lambda in [Point::new(0.0, 0.0), Point::new(0.6, 0.0)] {
        println!("{lambda}: {:?}", conjecture_check(&t, 2, lambda, 720, &tol)?);
    }
    Ok(())
}
