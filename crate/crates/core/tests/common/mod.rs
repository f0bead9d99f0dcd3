#![allow(dead_code)]

use hrnr::geometry::{convex_hull, ConvexPolygon, Point, TolerancePolicy};
use hrnr::linalg::{diag, haar_unitary, CMatrix};
use hrnr::spectral::{
    ApproachSide, Atom, ContinuousPiece, FamilyTerm, Multiplicity, SequenceFamily,
    SpectralMeasureModel,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{PI, TAU};

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point_in_disk(rng: &mut TestRng, radius: f64) -> Point {
    let r = radius * rng.random::<f64>().sqrt();
    Point::from_polar(r, rng.random_range(0.0..TAU))
}

/// `Q·diag(values)·Q*` for a Haar-random unitary `Q`.
pub fn normal_with(values: &[Point], rng: &mut TestRng) -> CMatrix {
    let q = haar_unitary(values.len(), rng);
    &q * diag(values) * q.adjoint()
}

pub fn random_normal(n: usize, radius: f64, rng: &mut TestRng) -> (CMatrix, Vec<Point>) {
    let values: Vec<Point> = (0..n).map(|_| point_in_disk(rng, radius)).collect();
    (normal_with(&values, rng), values)
}

pub fn random_hermitian(n: usize, rng: &mut TestRng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        Point::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    (&g + g.adjoint()) * Point::new(0.5, 0.0)
}

fn random_polygon(rng: &mut TestRng) -> ConvexPolygon {
    let c = point_in_disk(rng, 0.5);
    let pts: Vec<Point> = (0..rng.random_range(3..7))
        .map(|_| c + point_in_disk(rng, 0.4))
        .collect();
    convex_hull(&pts)
}

/// Atoms only, finite multiplicities, total dimension at least `min_dim`.
pub fn random_atom_model(rng: &mut TestRng, min_dim: u64) -> SpectralMeasureModel {
    let mut atoms = Vec::new();
    let mut total = 0;
    while total < min_dim || atoms.len() < 2 {
        let m = rng.random_range(1..=3);
        total += m;
        atoms.push(Atom::new(point_in_disk(rng, 1.0), Multiplicity::Finite(m)));
    }
    SpectralMeasureModel::from_atoms(atoms, &TolerancePolicy::default()).unwrap()
}

/// A mix of atoms (occasionally of infinite multiplicity), segments, arcs,
/// polygons and accumulating sequences.
pub fn random_mixed_model(rng: &mut TestRng) -> SpectralMeasureModel {
    let tol = TolerancePolicy::default();
    let mut atoms = Vec::new();
    for _ in 0..rng.random_range(0..5) {
        let mult = if rng.random_bool(0.15) {
            Multiplicity::Infinite
        } else {
            Multiplicity::Finite(rng.random_range(1..=3))
        };
        atoms.push(Atom::new(point_in_disk(rng, 1.0), mult));
    }
    let mut pieces = Vec::new();
    for _ in 0..rng.random_range(0..3) {
        pieces.push(match rng.random_range(0..3) {
            0 => ContinuousPiece::Segment {
                a: point_in_disk(rng, 1.0),
                b: point_in_disk(rng, 1.0),
            },
            1 => {
                let theta0 = rng.random_range(0.0..TAU);
                ContinuousPiece::Arc {
                    center: point_in_disk(rng, 0.3),
                    radius: rng.random_range(0.2..0.7),
                    theta0,
                    theta1: theta0 + rng.random_range(0.3..TAU),
                }
            }
            _ => ContinuousPiece::Region(random_polygon(rng)),
        });
    }
    let mut families = Vec::new();
    if rng.random_bool(0.3) {
        let limit = point_in_disk(rng, 0.6);
        let angle = rng.random_range(0.0..TAU);
        let side = [ApproachSide::Above, ApproachSide::Below, ApproachSide::On][rng.random_range(0..3)];
        let bend = match side {
            ApproachSide::Above => 1.0,
            ApproachSide::Below => -1.0,
            ApproachSide::On => 0.0,
        };
        let prefix = (1..=12)
            .map(|n| {
                let r = 0.3 / n as f64;
                FamilyTerm {
                    point: limit + Point::from_polar(r, angle + bend * 0.5 / n as f64),
                    mult: 1,
                }
            })
            .collect();
        families.push(SequenceFamily {
            prefix,
            limit,
            approach_angle: angle,
            approach_side: side,
            tail_mult: rng.random_range(1..=2),
        });
    }
    if atoms.is_empty() && pieces.is_empty() && families.is_empty() {
        atoms.push(Atom::new(point_in_disk(rng, 1.0), Multiplicity::Finite(2)));
    }
    SpectralMeasureModel::new(atoms, pieces, families, 2.0, &tol).unwrap()
}

/// `n × n` grid over `[-half, half]²`, endpoints included.
pub fn grid(n: usize, half: f64) -> Vec<Point> {
    let step = 2.0 * half / (n - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| Point::new(-half + i as f64 * step, -half + j as f64 * step)))
        .collect()
}

pub fn angle_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| PI * j as f64 / n as f64)
}
