//! A symbolic certificate that a point lies outside Λ_k, built from 2×2
//! scalar dilations.

use hrnr::dilation::excluding_certificate;
use hrnr::geometry::{Point, TolerancePolicy};
use hrnr::spectral::{Atom, Multiplicity, SpectralMeasureModel};

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let atoms = [(0.5, 0.0), (-0.5, 0.0), (0.0, 0.3)]
        .map(|(x, y)| Atom::new(Point::new(x, y), Multiplicity::Finite(1)));
    let spec = SpectralMeasureModel::from_atoms(atoms.to_vec(), &tol)?;
    let cert = excluding_certificate(&spec, 2, Point::new(0.0, 0.1), None, &tol)?;
    cert.verify(&tol)?;
    println!("beta {:.6} mu {:.6} dim {}", cert.beta, cert.mu, cert.certified_dim);
    for s in &cert.scalar_dilations {
        println!("d={} xi={:.6} eta={:.6} t={:.6}", s.d, s.xi, s.eta, s.t);
    }
    Ok(())
}
