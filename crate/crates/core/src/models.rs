//! Built-in spectral models used by `reproduce` and the examples.

use crate::geometry::{ConvexPolygon, Point, TolerancePolicy};
use crate::spectral::{
    ApproachSide, Atom, ContinuousPiece, FamilyTerm, Multiplicity, SequenceFamily,
    SpectralMeasureModel,
};
use std::f64::consts::{PI, TAU};

/// Number of listed terms in each family of [`infinity_empty`].
pub const INFINITY_EMPTY_TERMS: usize = 200;

fn build(atoms: Vec<Atom>, pieces: Vec<ContinuousPiece>, families: Vec<SequenceFamily>) -> SpectralMeasureModel {
    SpectralMeasureModel::new(atoms, pieces, families, 1.0, &TolerancePolicy::default())
        .expect("built-in model is valid")
}

/// Multiplication by `z` on the upper unit semicircle, plus the eigenvalue
/// `0` with multiplicity `k`.
pub fn durszt(k: u64) -> SpectralMeasureModel {
    build(
        vec![Atom::new(Point::new(0.0, 0.0), Multiplicity::Finite(k))],
        vec![ContinuousPiece::Arc {
            center: Point::new(0.0, 0.0),
            radius: 1.0,
            theta0: 0.0,
            theta1: PI,
        }],
        vec![],
    )
}

/// The bilateral shift: Lebesgue measure on the whole unit circle.
pub fn bilateral_shift() -> SpectralMeasureModel {
    build(
        vec![],
        vec![ContinuousPiece::Arc {
            center: Point::new(0.0, 0.0),
            radius: 1.0,
            theta0: 0.0,
            theta1: TAU,
        }],
        vec![],
    )
}

/// `⊕_{n≥2} diag(−1/n, e^{iπ/n}/n)`, whose `Λ_∞` is empty.
pub fn infinity_empty() -> SpectralMeasureModel {
    infinity_empty_with(INFINITY_EMPTY_TERMS)
}

pub fn infinity_empty_with(terms: usize) -> SpectralMeasureModel {
    let n = 2..terms + 2;
    let origin = Point::new(0.0, 0.0);
    let negative = SequenceFamily {
        prefix: n
            .clone()
            .map(|n| FamilyTerm {
                point: Point::new(-1.0 / n as f64, 0.0),
                mult: 1,
            })
            .collect(),
        limit: origin,
        approach_angle: PI,
        approach_side: ApproachSide::On,
        tail_mult: 1,
    };
    let spiral = SequenceFamily {
        prefix: n
            .map(|n| FamilyTerm {
                point: Point::from_polar(1.0 / n as f64, PI / n as f64),
                mult: 1,
            })
            .collect(),
        limit: origin,
        approach_angle: 0.0,
        approach_side: ApproachSide::Above,
        tail_mult: 1,
    };
    build(vec![], vec![], vec![negative, spiral])
}

/// Real eigenvalues `1, 0.5, 0, −0.2, −1`, each simple.
pub fn hermitian() -> SpectralMeasureModel {
    let atoms = [1.0, 0.5, 0.0, -0.2, -1.0]
        .iter()
        .map(|&x| Atom::new(Point::new(x, 0.0), Multiplicity::Finite(1)))
        .collect();
    SpectralMeasureModel::from_atoms(atoms, &TolerancePolicy::default()).expect("valid atoms")
}

/// Area measure on `[−1/2, 1/2]²` plus `1/2 + i/4` with multiplicity `k − 1`
/// and `1/2 − i/4` with multiplicity one.
pub fn square_region(k: u64) -> SpectralMeasureModel {
    let mut atoms = vec![Atom::new(Point::new(0.5, -0.25), Multiplicity::Finite(1))];
    if k > 1 {
        atoms.push(Atom::new(Point::new(0.5, 0.25), Multiplicity::Finite(k - 1)));
    }
    build(atoms, vec![ContinuousPiece::Region(ConvexPolygon::square(0.5))], vec![])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::range::{member, member_infinity, region, Rank};
    use crate::geometry::Verdict;

    #[test]
    fn built_ins_are_valid() {
        let tol = TolerancePolicy::default();
        assert_eq!(durszt(2).atoms().len(), 1);
        assert_eq!(bilateral_shift().pieces().len(), 1);
        assert_eq!(infinity_empty().families()[0].prefix.len(), INFINITY_EMPTY_TERMS);
        let r = region(&hermitian(), 2, 64, &tol).unwrap();
        let xs: Vec<f64> = r.polygon.vertices().iter().map(|v| v.re).collect();
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((lo + 0.2).abs() < 1e-8 && (hi - 0.5).abs() < 1e-8);
        assert_eq!(square_region(3).atoms().len(), 2);
    }

    #[test]
    fn infinity_empty_excludes_origin() {
        let tol = TolerancePolicy::default();
        let m = infinity_empty();
        for z in [Point::new(0.0, 0.0), Point::new(-0.05, 0.0)] {
            assert_eq!(member_infinity(&m, z, &tol).unwrap().verdict, Verdict::Out);
        }
        assert_eq!(
            member(&m, Rank::Finite(1), Point::new(0.1, 0.1), &tol).unwrap().verdict,
            Verdict::In
        );
    }
}
