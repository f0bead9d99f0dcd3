//! Whether Λ_k equals the intersection of Λ_k over unitary dilations, for a
//! matrix and for an operator with an arc of spectrum.

use hrnr::dilation::wu_check;
use hrnr::geometry::{Point, TolerancePolicy};
use hrnr::models::durszt;
use hrnr::range::region;
use hrnr::spectral::{Atom, Multiplicity, SpectralMeasureModel};

fn main() -> hrnr::Result<()> {
    let tol = TolerancePolicy::default();
    let atoms = [(0.5, 0.0), (-0.5, 0.0), (0.0, 0.3)]
        .map(|(x, y)| Atom::new(Point::new(x, y), Multiplicity::Finite(1)));
    let models = [
        ("triangle", SpectralMeasureModel::from_atoms(atoms.to_vec(), &tol)?),
        ("durszt", durszt(1)),
    ];
    for (name, spec) in models {
        let r = region(&spec, 1, 180, &tol)?;
        let report = wu_check(&spec, 1, &r, &tol)?;
        println!("{name}: {:?} ({} samples)", report.verdict, report.evidence.len());
    }
    Ok(())
}
