//! Λ_∞ can be empty even when every Λ_k is not.

use hrnr::geometry::{Point, TolerancePolicy, Verdict};
use hrnr::models::infinity_empty;
use hrnr::range::{member, member_infinity, Rank};

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let spec = infinity_empty();
    let grid: Vec<Point> = (0..21)
        .flat_map(|i| (0..21).map(move |j| Point::new(-1.0 + 0.1 * i as f64, -1.0 + 0.1 * j as f64)))
        .collect();
    let count = |f: &dyn Fn(Point) -> hrnr::Result<Verdict>| -> hrnr::Result<usize> {
        let mut n = 0;
        for &z in &grid {
            n += usize::from(f(z)? == Verdict::In);
        }
        Ok(n)
    };
    let inf = count(&|z| Ok(member_infinity(&spec, z, &tol)?.verdict))?;
    println!("Λ_∞: {inf} of {} grid points", grid.len());
    for k in [1, 2, 5] {
        let n = count(&|z| Ok(member(&spec, Rank::Finite(k), z, &tol)?.verdict))?;
        println!("Λ_{k}: {n} of {} grid points", grid.len());
    }
    Ok(())
}
