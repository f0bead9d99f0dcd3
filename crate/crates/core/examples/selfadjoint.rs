//! Λ_k of a self-adjoint operator is the interval between its k-th smallest
//! and k-th largest spectral values.

use hrnr::geometry::TolerancePolicy;
use hrnr::models::hermitian;
use hrnr::range::selfadjoint_interval;

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let spec = hermitian();
    for k in 1..=4 {
        match selfadjoint_interval(&spec, k, &tol)? {
            Some((a, b)) => println!("k={k}: [{a}, {b}]"),
            None => println!("k={k}: empty"),
        }
    }
    Ok(())
}
