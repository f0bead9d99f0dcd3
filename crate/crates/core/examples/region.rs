//! Estimate the closure of Λ_2 for a five-point spectrum and print its vertices.

use hrnr::geometry::{Point, TolerancePolicy};
use hrnr::range::region;
use hrnr::spectral::{Atom, Multiplicity, SpectralMeasureModel};

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let atoms = (0..5)
        .map(|j| Atom::new(Point::from_polar(0.9, 1.3 * j as f64), Multiplicity::Finite(1)))
        .collect();
    let spec = SpectralMeasureModel::from_atoms(atoms, &tol)?;
    let r = region(&spec, 2, 360, &tol)?;
    println!("area {:.6}", r.polygon.area());
    for v in r.polygon.vertices() {
        println!("{:+.6} {:+.6}", v.re, v.im);
    }
    Ok(())
}
