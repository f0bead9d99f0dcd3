use super::{arc_covers, ApproachSide, ContinuousPiece, DimClass, Multiplicity, SpectralMeasureModel};
use crate::error::{Error, Result};
use crate::geometry::{unit, Point};
use serde::{Deserialize, Serialize};

/// How the tail of a real family approaches its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealApproach {
    /// Tail terms lie in `(limit, limit + band)`.
    FromAbove,
    /// Tail terms lie in `(limit − band, limit)`.
    FromBelow,
    /// Tail terms sit exactly at the limit.
    At,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealFamily {
    pub prefix: Vec<(f64, u64)>,
    pub limit: f64,
    pub approach: RealApproach,
    /// Every tail term lies within `band` of the limit.
    pub band: f64,
}

/// Spectral measure of a self-adjoint operator, as produced by
/// [`pushforward`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RealSpectralModel {
    pub atoms: Vec<(f64, Multiplicity)>,
    /// Closed intervals carrying infinite-dimensional range; a degenerate
    /// interval is an infinite-dimensional point mass.
    pub intervals: Vec<(f64, f64)>,
    pub families: Vec<RealFamily>,
}

impl RealSpectralModel {
    pub fn total_dimension(&self) -> DimClass {
        if !self.intervals.is_empty() || !self.families.is_empty() {
            return DimClass::Infinite;
        }
        self.atoms
            .iter()
            .fold(DimClass::ZERO, |acc, (_, m)| acc + (*m).into())
    }
}

/// Image of `model` under `µ ↦ Re(e^{iθ}µ)`.
pub fn pushforward(model: &SpectralMeasureModel, theta: f64) -> RealSpectralModel {
    let rot = unit(theta);
    let x = |z: Point| (rot * z).re;
    let atoms = model
        .atoms()
        .iter()
        .map(|a| (x(a.location), a.mult))
        .collect();
    let intervals = model
        .pieces()
        .iter()
        .map(|p| match p {
            ContinuousPiece::Segment { a, b } => {
                let (xa, xb) = (x(*a), x(*b));
                (xa.min(xb), xa.max(xb))
            }
            ContinuousPiece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                let xc = x(*center);
                let e0 = radius * (theta0 + theta).cos();
                let e1 = radius * (theta1 + theta).cos();
                let hi = if arc_covers(*theta0, *theta1, -theta) {
                    *radius
                } else {
                    e0.max(e1)
                };
                let lo = if arc_covers(*theta0, *theta1, std::f64::consts::PI - theta) {
                    -radius
                } else {
                    e0.min(e1)
                };
                (xc + lo, xc + hi)
            }
            ContinuousPiece::Region(poly) => poly
                .vertices()
                .iter()
                .map(|&v| x(v))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    (lo.min(v), hi.max(v))
                }),
        })
        .collect();
    let fallback_band = 2.0 * model.support_radius();
    let families = model
        .families()
        .iter()
        .map(|f| {
            let g = (rot * f.approach()).re;
            let transverse = (rot * Point::i() * f.approach()).re;
            let from_sign = |v: f64| {
                if v > 0.0 {
                    RealApproach::FromAbove
                } else {
                    RealApproach::FromBelow
                }
            };
            let approach = if g.abs() > 1e-12 {
                from_sign(g)
            } else {
                match f.approach_side {
                    ApproachSide::Above => from_sign(transverse),
                    ApproachSide::Below => from_sign(-transverse),
                    ApproachSide::On => RealApproach::At,
                }
            };
            RealFamily {
                prefix: f.prefix.iter().map(|t| (x(t.point), t.mult)).collect(),
                limit: x(f.limit),
                approach,
                band: f.tail_radius().min(fallback_band),
            }
        })
        .collect();
    RealSpectralModel {
        atoms,
        intervals,
        families,
    }
}

/// `sup { b : dim ran E[b, ∞) ≥ k }`, the k-th largest point of the
/// spectrum counted with multiplicity.
pub fn lambda_k_sup(rm: &RealSpectralModel, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidRank);
    }
    let total = rm.total_dimension();
    if total < DimClass::Finite(k) {
        return Err(Error::InsufficientDimension {
            k: k.to_string(),
            dim: total.to_string(),
        });
    }
    let mut events: Vec<(f64, DimClass)> = rm
        .atoms
        .iter()
        .map(|(x, m)| (*x, DimClass::from(*m)))
        .collect();
    events.extend(rm.intervals.iter().map(|(_, hi)| (*hi, DimClass::Infinite)));
    for f in &rm.families {
        events.extend(f.prefix.iter().map(|(x, m)| (*x, DimClass::Finite(*m))));
        events.push((f.limit, DimClass::Infinite));
    }
    events.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut acc = DimClass::ZERO;
    let mut value = None;
    for (x, d) in events {
        acc = acc + d;
        if acc >= DimClass::Finite(k) {
            value = Some(x);
            break;
        }
    }
    let v = value.expect("total dimension was checked");
    for f in &rm.families {
        if f.approach == RealApproach::FromAbove && v < f.limit + f.band {
            return Err(Error::UnresolvedTail(format!(
                "terms accumulating at {} from above may reach past {}",
                f.limit, v
            )));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConvexPolygon, TolerancePolicy};
    use crate::spectral::{Atom, FamilyTerm, SequenceFamily};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn p(re: f64, im: f64) -> Point {
        Point::new(re, im)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn pushforward_of_atoms() {
        let tol = TolerancePolicy::default();
        let m = SpectralMeasureModel::from_atoms(
            vec![
                Atom::new(p(0.0, 1.0), Multiplicity::Finite(1)),
                Atom::new(p(0.0, -1.0), Multiplicity::Finite(1)),
            ],
            &tol,
        )
        .unwrap();
        let rm = pushforward(&m, FRAC_PI_2);
        assert!(close(rm.atoms[0].0, -1.0) && close(rm.atoms[1].0, 1.0));
    }

    #[test]
    fn pushforward_of_pieces() {
        let tol = TolerancePolicy::default();
        let arc = ContinuousPiece::Arc {
            center: p(0.0, 0.0),
            radius: 1.0,
            theta0: 0.0,
            theta1: PI,
        };
        let square = ContinuousPiece::Region(ConvexPolygon::square(0.5));
        let m = SpectralMeasureModel::new(vec![], vec![arc, square], vec![], 1.0, &tol).unwrap();
        let rm = pushforward(&m, 0.0);
        assert!(close(rm.intervals[0].0, -1.0) && close(rm.intervals[0].1, 1.0));
        let rm = pushforward(&m, FRAC_PI_4);
        let h = 0.5 * 2f64.sqrt();
        assert!(close(rm.intervals[1].0, -h) && close(rm.intervals[1].1, h));
        // upper semicircle seen along the imaginary axis: Re(i·z) = −Im z
        let rm = pushforward(&m, FRAC_PI_2);
        assert!(close(rm.intervals[0].0, -1.0) && rm.intervals[0].1.abs() < 1e-12);
    }

    #[test]
    fn lambda_scan_examples() {
        let rm = RealSpectralModel {
            atoms: vec![
                (2.0, Multiplicity::Finite(3)),
                (0.0, Multiplicity::Infinite),
                (-1.0, Multiplicity::Finite(1)),
            ],
            ..Default::default()
        };
        assert_eq!(lambda_k_sup(&rm, 2), Ok(2.0));
        assert_eq!(lambda_k_sup(&rm, 5), Ok(0.0));
        let rm = RealSpectralModel {
            intervals: vec![(-1.0, 1.0)],
            ..Default::default()
        };
        assert_eq!(lambda_k_sup(&rm, 7), Ok(1.0));
        let small = RealSpectralModel {
            atoms: vec![(1.0, Multiplicity::Finite(2))],
            ..Default::default()
        };
        assert!(matches!(
            lambda_k_sup(&small, 3),
            Err(Error::InsufficientDimension { .. })
        ));
    }

    #[test]
    fn tail_from_above_blocks_the_answer() {
        let tol = TolerancePolicy::default();
        let fam = SequenceFamily {
            prefix: vec![FamilyTerm {
                point: p(0.5, 0.0),
                mult: 1,
            }],
            limit: p(0.0, 0.0),
            approach_angle: 0.0,
            approach_side: ApproachSide::On,
            tail_mult: 1,
        };
        let m = SpectralMeasureModel::new(vec![], vec![], vec![fam], 1.0, &tol).unwrap();
        assert_eq!(lambda_k_sup(&pushforward(&m, 0.0), 1), Ok(0.5));
        assert!(matches!(
            lambda_k_sup(&pushforward(&m, 0.0), 2),
            Err(Error::UnresolvedTail(_))
        ));
        // seen from the other side the tail sits below its limit
        assert_eq!(lambda_k_sup(&pushforward(&m, PI), 3), Ok(0.0));
    }
}
