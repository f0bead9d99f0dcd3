//! Unitary dilations of contractions and the dilation side of `Λ_k`.
//!
//! [`halmos`] builds the rotated 2×2-block dilation, [`block_dilation`]
//! builds dilations of normal contractions eigenvalue by eigenvalue from
//! [`scalar_dilation`]s, and [`excluding_dilation_matrix`] uses both to push
//! a point out of `Λ_k` of the dilation. [`wu_check`] looks for the closed
//! half planes that decide whether `Λ_k(T)` is the intersection of `Λ_k` over
//! all unitary dilations, and [`excluding_certificate`] turns such a half
//! plane into explicit scalar dilations.

use crate::error::{Error, Result};
use crate::geometry::{
    halfplane_intersection, segment_distance, unit, wrap_pi, wrap_tau, ClosedHalfPlane,
    ConvexPolygon, Point, TolerancePolicy, Verdict,
};
use crate::linalg::{
    block2, check_square, commutator_residual, diag, haar_unitary, hermitian_eigenvalues,
    identity, normal_eigen, operator_norm, psd_sqrt, rotated_real_part, unitarity_residual,
    CMatrix,
};
use crate::range::{matrix_lambda_k, member, sweep_directions, Rank, RegionEstimate};
use crate::spectral::{from_normal_matrix, DimClass, Selector, SpectralMeasureModel};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Angle grid used to find a separating direction.
pub const SEPARATING_GRID: usize = 720;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `[[T, −e^{−iα}D_{T*}], [e^{−iα}D_T, e^{−2iα}T*]]`.
    Halmos,
    /// Eigenvalue-wise 2×2 dilations of a normal contraction.
    Block,
    /// `(I ⊕ V)·Halmos(T, 0)·(I ⊕ W)` with random unitaries `V`, `W`.
    Random,
}

/// A unitary dilation `U` of `T` on `H ⊕ H` with its verification residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct DilationArtifact {
    pub matrix: CMatrix,
    pub alpha: f64,
    pub construction: Construction,
    /// `‖U*U − I‖_F`.
    pub unitarity_residual: f64,
    /// `‖PUP − T‖_F` on the first block.
    pub compression_residual: f64,
    /// Rank of `(I − T*T)^{1/2}` at `eps_eig`.
    pub defect_rank: usize,
}

impl DilationArtifact {
    fn assess(
        matrix: CMatrix,
        t: &CMatrix,
        alpha: f64,
        construction: Construction,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let n = t.nrows();
        let top = matrix.view((0, 0), (n, n)).into_owned();
        let defect = identity(n) - t.adjoint() * t;
        let defect_rank = hermitian_eigenvalues(&defect)?
            .iter()
            .filter(|&&v| v.max(0.0).sqrt() > tol.eps_eig)
            .count();
        Ok(Self {
            unitarity_residual: unitarity_residual(&matrix),
            compression_residual: (top - t).norm(),
            matrix,
            alpha,
            construction,
            defect_rank,
        })
    }

    pub fn is_accepted(&self, tol: &TolerancePolicy) -> bool {
        self.unitarity_residual <= tol.eps_unitary && self.compression_residual <= tol.eps_unitary
    }

    /// Spectral model of the (normal) dilation.
    pub fn model(&self, tol: &TolerancePolicy) -> Result<SpectralMeasureModel> {
        from_normal_matrix(&self.matrix, tol)
    }
}

fn check_contraction(t: &CMatrix, tol: &TolerancePolicy) -> Result<f64> {
    check_square(t)?;
    let norm = operator_norm(t)?;
    if norm > 1.0 + tol.eps_eig {
        return Err(Error::NotContraction { norm });
    }
    Ok(norm)
}

fn check_normal(t: &CMatrix, tol: &TolerancePolicy) -> Result<()> {
    let residual = commutator_residual(t);
    let threshold = tol.eps_eig * t.norm().powi(2).max(1.0);
    if residual <= threshold {
        Ok(())
    } else {
        Err(Error::NotNormal {
            residual,
            threshold,
        })
    }
}

fn halmos_matrix(t: &CMatrix, alpha: f64) -> Result<CMatrix> {
    let n = t.nrows();
    let (d_t, _) = psd_sqrt(&(identity(n) - t.adjoint() * t))?;
    let (d_tstar, _) = psd_sqrt(&(identity(n) - t * t.adjoint()))?;
    let e = Complex64::from_polar(1.0, -alpha);
    Ok(block2(
        t,
        &(d_tstar * (-e)),
        &(d_t * e),
        &(t.adjoint() * (e * e)),
    ))
}

/// Rotated Halmos dilation of a contraction.
pub fn halmos(t: &CMatrix, alpha: f64, tol: &TolerancePolicy) -> Result<DilationArtifact> {
    check_contraction(t, tol)?;
    let u = halmos_matrix(t, alpha)?;
    DilationArtifact::assess(u, t, alpha, Construction::Halmos, tol)
}

fn two_by_two(ξ: Point, η: Point, t: f64) -> [Complex64; 4] {
    let t = t.clamp(0.0, 1.0);
    let (a, b) = (t.sqrt(), (1.0 - t).sqrt());
    // Q = [[a, b], [b, −a]] is real orthogonal and symmetric.
    [
        ξ * a * a + η * b * b,
        (ξ - η) * a * b,
        (ξ - η) * a * b,
        ξ * b * b + η * a * a,
    ]
}

/// The 2×2 unitary `Q·diag(ξ, η)·Qᵀ` whose `(0,0)` entry is `d`.
///
/// `Q = [[√t, √(1−t)], [√(1−t), −√t]]` with `t = |d − η|/|ξ − η|`, so the
/// eigenvalues are `ξ` and `η` and `d = tξ + (1 − t)η`.
pub fn scalar_dilation(d: Point, ξ: Point, η: Point, tol: &TolerancePolicy) -> Result<CMatrix> {
    for z in [ξ, η] {
        if (z.norm() - 1.0).abs() > tol.eps_geom {
            return Err(Error::NotUnimodular { modulus: z.norm() });
        }
    }
    let span = (ξ - η).norm();
    if span <= tol.eps_geom {
        return Err(Error::CoincidentEndpoints);
    }
    let distance = segment_distance(d, ξ, η);
    if distance > tol.eps_geom {
        return Err(Error::NotOnSegment { distance });
    }
    let v = two_by_two(ξ, η, (d - η).norm() / span);
    Ok(CMatrix::from_row_slice(2, 2, &v))
}

/// Second intersection of the line from `η ∈ 𝕋` through `d` with `𝕋`.
fn chord_end(η: Point, d: Point) -> Point {
    let w = d - η;
    let s = -2.0 * (η.conj() * w).re / w.norm_sqr();
    η + w * s
}

/// Dilation of a normal contraction built from one 2×2 unitary per
/// eigenvalue.
///
/// In the frame rotated by `α`, the `top` eigenvalues with the largest
/// `x_j = Re(e^{iα}t_j)` are dilated along the chord from `−e^{−iα}` through
/// `t_j`, the rest along the chord perpendicular to that direction, which
/// keeps both eigenvalues of the 2×2 block at rotated real part `x_j`. The
/// result has at most `top` eigenvalues with rotated real part above the
/// largest remaining `x_j`.
pub fn block_dilation(
    t: &CMatrix,
    alpha: f64,
    top: usize,
    tol: &TolerancePolicy,
) -> Result<DilationArtifact> {
    check_contraction(t, tol)?;
    check_normal(t, tol)?;
    let n = t.nrows();
    let (values, q) = normal_eigen(t)?;
    let rot = unit(alpha);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| (rot * values[j]).re.total_cmp(&(rot * values[i]).re));
    let mut blocks = vec![[Complex64::new(0.0, 0.0); 4]; n];
    for (rank, &j) in order.iter().enumerate() {
        let d = values[j];
        let back = unit(-alpha);
        let x = (rot * d).re;
        blocks[j] = if d.norm() >= 1.0 - 1e-12 {
            let on_circle = d / d.norm();
            let other = if rank < top { -back } else { on_circle };
            [on_circle, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), other]
        } else if rank < top {
            let η = -back;
            let ξ = chord_end(η, d);
            two_by_two(ξ, η, (d - η).norm() / (ξ - η).norm())
        } else {
            let y = (1.0 - x * x).max(0.0).sqrt();
            let ξ = back * Complex64::new(x, y);
            let η = back * Complex64::new(x, -y);
            two_by_two(ξ, η, (d - η).norm() / (ξ - η).norm())
        };
    }
    let pick = |i: usize| -> Vec<Complex64> { blocks.iter().map(|b| b[i]).collect() };
    let w = block2(&diag(&pick(0)), &diag(&pick(1)), &diag(&pick(2)), &diag(&pick(3)));
    let zero = CMatrix::zeros(n, n);
    let frame = block2(&q, &zero, &zero, &identity(n));
    let u = &frame * w * frame.adjoint();
    DilationArtifact::assess(u, t, alpha, Construction::Block, tol)
}

/// The grid angle maximizing `Re(e^{iα}λ) − λ_k(Re(e^{iα}T))`, with that
/// margin.
pub fn separating_angle(t: &CMatrix, k: usize, lambda: Point, grid: usize) -> Result<(f64, f64)> {
    let mut best = (0.0, f64::NEG_INFINITY);
    for j in 0..grid {
        let alpha = TAU * j as f64 / grid as f64;
        let gap = (unit(alpha) * lambda).re - matrix_lambda_k(t, k, alpha)?;
        if gap > best.1 {
            best = (alpha, gap);
        }
    }
    Ok(best)
}

/// A unitary dilation `U` of the normal contraction `T` with
/// `λ ∉ Λ_k(U)`.
///
/// The rotated Halmos dilation at the best separating angle is tried first;
/// when it does not exclude `λ` (it never separates better than `λ_⌈k/2⌉`)
/// the block dilation at the same angle is used.
pub fn excluding_dilation_matrix(
    t: &CMatrix,
    k: usize,
    lambda: Point,
    tol: &TolerancePolicy,
) -> Result<DilationArtifact> {
    check_contraction(t, tol)?;
    check_normal(t, tol)?;
    let (alpha, gap) = separating_angle(t, k, lambda, SEPARATING_GRID)?;
    if gap <= tol.eps_geom {
        return Err(Error::NoSeparatingAngle { margin: gap });
    }
    let rank = Rank::Finite(k as u64);
    let excludes = |a: &DilationArtifact| -> Result<bool> {
        if !a.is_accepted(tol) {
            return Ok(false);
        }
        Ok(member(&a.model(tol)?, rank, lambda, tol)?.verdict == Verdict::Out)
    };
    let h = halmos(t, alpha, tol)?;
    if excludes(&h)? {
        return Ok(h);
    }
    let c = (unit(alpha) * lambda).re;
    let (values, _) = normal_eigen(t)?;
    let top = values
        .iter()
        .filter(|v| (unit(alpha) * **v).re >= c - 0.5 * gap)
        .count();
    let b = block_dilation(t, alpha, top, tol)?;
    if excludes(&b)? {
        return Ok(b);
    }
    Err(Error::DilationCheck(format!(
        "no dilation at α = {alpha:.6} excludes the point (residuals {:.2e}, {:.2e})",
        b.unitarity_residual, b.compression_residual
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarDilation {
    pub d: Point,
    pub xi: Point,
    pub eta: Point,
    pub t: f64,
}

/// Symbolic unitary dilation excluding a boundary point `λ ∉ Λ_k`.
///
/// Each eigenvalue `d_j` of `T` in the closed half plane `H` gets
/// `V_j = diag(ξ_j, η_j)` in a basis where `d_j = t_jξ_j + (1 − t_j)η_j`,
/// with `ξ_j ∈ 𝕋 ∩ H` and `η_j` in the complementary arc; the rest of `T`
/// satisfies `W(e^{iβ}T₂) ⊆ {Re < µ}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExclusionCertificate {
    pub lambda: Point,
    pub half_plane: ClosedHalfPlane,
    pub scalar_dilations: Vec<ScalarDilation>,
    pub beta: f64,
    pub mu: f64,
    pub certified_dim: u64,
}

impl ExclusionCertificate {
    /// Recheck the arithmetic and the side conditions.
    pub fn verify(&self, tol: &TolerancePolicy) -> Result<()> {
        let fail = |m: String| Err(Error::DilationCheck(m));
        let h = &self.half_plane;
        if (h.anchor - self.lambda).norm() > tol.eps_geom {
            return fail("half plane does not pass through λ".into());
        }
        for s in &self.scalar_dilations {
            if !(0.0..=1.0).contains(&s.t) {
                return fail(format!("t = {} outside [0, 1]", s.t));
            }
            if ((s.xi.norm() - 1.0).abs() > 1e-12) || ((s.eta.norm() - 1.0).abs() > 1e-12) {
                return fail("dilation endpoints are not unimodular".into());
            }
            let rebuilt = s.xi * s.t + s.eta * (1.0 - s.t);
            if (rebuilt - s.d).norm() > 1e-12 {
                return fail(format!("t·ξ + (1−t)·η misses d by {:.2e}", (rebuilt - s.d).norm()));
            }
            if h.signed_distance(s.xi) <= tol.eps_geom {
                return fail("ξ is not strictly inside H".into());
            }
            if h.signed_distance(s.eta) >= -tol.eps_geom {
                return fail("η is not strictly outside H".into());
            }
        }
        if self.certified_dim != self.scalar_dilations.len() as u64 {
            return fail("certified dimension does not match the dilation count".into());
        }
        let mu = (unit(self.beta) * self.lambda).re;
        if (mu - self.mu).abs() > 1e-12 {
            return fail("µ is not Re(e^{iβ}λ)".into());
        }
        Ok(())
    }
}

/// Outcome of searching closed half planes through a point.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedSearch {
    Witness(ClosedHalfPlane, u64),
    /// Every searched closed half plane has dimension at least `k`.
    Exhausted,
    Undecided,
}

/// Search the critical directions at `lambda` (plus `extra` line
/// directions) for a closed half plane with `dim ran E(H) < k`. Among the
/// smallest dimensions, the normal closest to `hint` wins.
pub fn closed_witness(
    spec: &SpectralMeasureModel,
    k: u64,
    lambda: Point,
    extra: &[f64],
    hint: Option<f64>,
    tol: &TolerancePolicy,
) -> ClosedSearch {
    let rank = Rank::Finite(k);
    let mut dirs = sweep_directions(spec, lambda, tol.eps_geom);
    dirs.extend(extra.iter().map(|&a| wrap_pi(a)));
    if let Some(h) = hint {
        dirs.push(wrap_pi(h - PI / 2.0));
    }
    let mut best: Option<(ClosedHalfPlane, u64, f64)> = None;
    let mut undecided = false;
    for psi in dirs {
        for normal in [psi + PI / 2.0, psi + 1.5 * PI] {
            let plane = ClosedHalfPlane::new(lambda, normal);
            let b = Selector::from(&plane).bounds(spec, tol);
            match b.exact() {
                Some(DimClass::Finite(d)) if d < k => {
                    let miss = hint.map_or(0.0, |h| {
                        let diff = wrap_tau(plane.normal_angle - h);
                        diff.min(TAU - diff)
                    });
                    let better = match best {
                        None => true,
                        Some((_, bd, bm)) => d < bd || (d == bd && miss < bm - 1e-12),
                    };
                    if better {
                        best = Some((plane, d, miss));
                    }
                }
                _ if b.certainly_at_least(rank) => {}
                _ => undecided = true,
            }
        }
    }
    match best {
        Some((plane, d, _)) => ClosedSearch::Witness(plane, d),
        None if undecided => ClosedSearch::Undecided,
        None => ClosedSearch::Exhausted,
    }
}

/// Certificate for a given closed half plane `h` through `lambda`.
pub fn certificate_for_witness(
    spec: &SpectralMeasureModel,
    k: u64,
    lambda: Point,
    h: &ClosedHalfPlane,
    tol: &TolerancePolicy,
) -> Result<ExclusionCertificate> {
    let eps = tol.eps_geom;
    let sel = Selector::from(h);
    match sel.bounds(spec, tol).exact() {
        Some(DimClass::Finite(d)) if d < k => {}
        _ => return Err(Error::NoWuWitness),
    }
    let n = h.normal();
    let eta = -n;
    let mut members: Vec<(Point, u64)> = Vec::new();
    for a in spec.atoms() {
        if sel.point(a.location, eps) == Verdict::In {
            match a.mult {
                crate::spectral::Multiplicity::Finite(m) => members.push((a.location, m)),
                crate::spectral::Multiplicity::Infinite => return Err(Error::NoWuWitness),
            }
        }
    }
    for f in spec.families() {
        for t in &f.prefix {
            if sel.point(t.point, eps) == Verdict::In {
                members.push((t.point, t.mult));
            }
        }
    }
    let mut scalar_dilations = Vec::new();
    for (d, m) in members {
        if d.norm() >= 1.0 - eps {
            return Err(Error::AtomNotStrictContraction { re: d.re, im: d.im });
        }
        let xi = chord_end(eta, d);
        let t = ((d - eta).norm() / (xi - eta).norm()).clamp(0.0, 1.0);
        for _ in 0..m {
            scalar_dilations.push(ScalarDilation { d, xi, eta, t });
        }
    }
    let beta = wrap_tau(-h.normal_angle);
    let cert = ExclusionCertificate {
        lambda,
        half_plane: *h,
        certified_dim: scalar_dilations.len() as u64,
        scalar_dilations,
        beta,
        mu: (unit(beta) * lambda).re,
    };
    cert.verify(tol)?;
    Ok(cert)
}

/// Certificate excluding `lambda` from the intersection of `Λ_k` over all
/// unitary dilations, from the best closed half plane through it.
pub fn excluding_certificate(
    spec: &SpectralMeasureModel,
    k: u64,
    lambda: Point,
    normal_hint: Option<f64>,
    tol: &TolerancePolicy,
) -> Result<ExclusionCertificate> {
    match closed_witness(spec, k, lambda, &[], normal_hint, tol) {
        ClosedSearch::Witness(h, _) => certificate_for_witness(spec, k, lambda, &h, tol),
        ClosedSearch::Exhausted => Err(Error::NoWuWitness),
        ClosedSearch::Undecided => Err(Error::UncertainGeometry(
            "closed half planes through the point could not be classified".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WuVerdict {
    EqualityPredicted,
    StrictContainmentPredicted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WuOutcome {
    Witness { plane: ClosedHalfPlane, dim: u64 },
    /// Every critical closed half plane through the point has dimension at
    /// least `k`.
    FailureNote { note: String },
    Undecided { note: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WuEvidence {
    pub point: Point,
    pub outcome: WuOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WuReport {
    pub verdict: WuVerdict,
    pub evidence: Vec<WuEvidence>,
}

/// Interior samples per polygon edge used by [`wu_check`].
pub const WU_SAMPLES_PER_EDGE: usize = 7;

/// Decide, on sampled boundary points of `region`, whether every boundary
/// point outside `Λ_k` admits a closed half plane through it with dimension
/// below `k`.
pub fn wu_check(
    spec: &SpectralMeasureModel,
    k: u64,
    region: &RegionEstimate,
    tol: &TolerancePolicy,
) -> Result<WuReport> {
    wu_check_with(spec, k, region, WU_SAMPLES_PER_EDGE, tol)
}

pub fn wu_check_with(
    spec: &SpectralMeasureModel,
    k: u64,
    region: &RegionEstimate,
    per_edge: usize,
    tol: &TolerancePolicy,
) -> Result<WuReport> {
    let eps = tol.eps_geom;
    let point_reach = spec
        .atoms()
        .iter()
        .map(|a| a.location.norm())
        .chain(spec.families().iter().flat_map(|f| {
            f.prefix
                .iter()
                .map(|t| t.point.norm())
                .chain(std::iter::once(f.limit.norm()))
        }))
        .fold(0.0, f64::max);
    let piece_reach = spec.pieces().iter().map(|p| p.max_modulus()).fold(0.0, f64::max);
    if point_reach >= 1.0 - eps || piece_reach > 1.0 + eps {
        return Err(Error::NotStrictContraction {
            norm: point_reach.max(piece_reach),
        });
    }
    let rank = Rank::Finite(k);
    let mut samples: Vec<(Point, Option<f64>)> = region
        .polygon
        .vertices()
        .iter()
        .map(|&v| (v, None))
        .collect();
    for (a, b) in region.polygon.edges() {
        let dir = (b - a).arg();
        for j in 1..=per_edge {
            let s = j as f64 / (per_edge + 1) as f64;
            samples.push((a + (b - a) * s, Some(dir)));
        }
    }
    let mut evidence = Vec::new();
    for (point, edge_dir) in samples {
        let m = member(spec, rank, point, tol)?;
        let outcome = match m.verdict {
            Verdict::In => continue,
            Verdict::Uncertain => WuOutcome::Undecided {
                note: "membership of the boundary sample is uncertain".into(),
            },
            Verdict::Out => {
                let extra: Vec<f64> = edge_dir.into_iter().collect();
                match closed_witness(spec, k, point, &extra, None, tol) {
                    ClosedSearch::Witness(plane, dim) => WuOutcome::Witness { plane, dim },
                    ClosedSearch::Exhausted => WuOutcome::FailureNote {
                        note: format!(
                            "every critical closed half plane through ({:.6}, {:.6}) has dimension ≥ {k}",
                            point.re, point.im
                        ),
                    },
                    ClosedSearch::Undecided => WuOutcome::Undecided {
                        note: "some closed half planes could not be classified".into(),
                    },
                }
            }
        };
        evidence.push(WuEvidence { point, outcome });
    }
    let any = |f: fn(&WuOutcome) -> bool| evidence.iter().any(|e| f(&e.outcome));
    let verdict = if any(|o| matches!(o, WuOutcome::FailureNote { .. })) {
        WuVerdict::StrictContainmentPredicted
    } else if any(|o| matches!(o, WuOutcome::Undecided { .. })) {
        WuVerdict::Inconclusive
    } else {
        WuVerdict::EqualityPredicted
    };
    Ok(WuReport { verdict, evidence })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum ConjectureOutcome {
    ConditionHolds { theta: f64 },
    ConditionFails,
}

/// Whether `Re(e^{iθ}T − λI)` has fewer than `k` eigenvalues `≥ −eps_eig`.
pub fn conjecture_condition_at(
    t: &CMatrix,
    k: usize,
    lambda: Point,
    theta: f64,
    tol: &TolerancePolicy,
) -> Result<bool> {
    let s = rotated_real_part(t, theta);
    let shift = lambda.re;
    let count = hermitian_eigenvalues(&s)?
        .iter()
        .filter(|&&v| v - shift >= -tol.eps_eig)
        .count();
    Ok(count < k)
}

/// Scan a uniform `θ` grid for the first angle where the conjectured
/// exclusion condition holds.
pub fn conjecture_check(
    t: &CMatrix,
    k: usize,
    lambda: Point,
    n_theta: usize,
    tol: &TolerancePolicy,
) -> Result<ConjectureOutcome> {
    check_square(t)?;
    let norm = operator_norm(t)?;
    if norm >= 1.0 {
        return Err(Error::NotStrictContraction { norm });
    }
    for j in 0..n_theta.max(1) {
        let theta = TAU * j as f64 / n_theta.max(1) as f64;
        if conjecture_condition_at(t, k, lambda, theta, tol)? {
            return Ok(ConjectureOutcome::ConditionHolds { theta });
        }
    }
    Ok(ConjectureOutcome::ConditionFails)
}

/// Intersection of the closures of `Λ_k(U)` over rotated Halmos dilations
/// on an `n_alpha` grid, `n_samples` random dilations and, for normal `T`
/// with `k ≥ 2`, block dilations on the same grid.
///
/// Each `Λ_k(U)` closure is represented by its support function on the
/// `n_alpha` grid, so the intersection is one half-plane intersection of the
/// pointwise minima.
pub fn dilation_intersection(
    t: &CMatrix,
    k: usize,
    n_samples: usize,
    n_alpha: usize,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<ConvexPolygon> {
    check_contraction(t, tol)?;
    let n = t.nrows();
    if k == 0 || k > 2 * n {
        return Err(Error::RankExceedsDimension {
            k: k.to_string(),
            dim: (2 * n).to_string(),
        });
    }
    let n_alpha = n_alpha.max(8);
    let xis: Vec<f64> = (0..n_alpha).map(|j| TAU * j as f64 / n_alpha as f64).collect();
    let mut h = vec![f64::INFINITY; n_alpha];
    let mut absorb = |u: &CMatrix| -> Result<()> {
        for (j, &xi) in xis.iter().enumerate() {
            h[j] = h[j].min(matrix_lambda_k(u, k, xi)?);
        }
        Ok(())
    };
    let accept = |a: &DilationArtifact| -> Result<()> {
        if a.is_accepted(tol) {
            Ok(())
        } else {
            Err(Error::DilationCheck(format!(
                "residuals {:.2e}, {:.2e} exceed tolerance",
                a.unitarity_residual, a.compression_residual
            )))
        }
    };
    for &alpha in &xis {
        let a = halmos(t, alpha, tol)?;
        accept(&a)?;
        absorb(&a.matrix)?;
    }
    if k >= 2 && check_normal(t, tol).is_ok() {
        for &alpha in &xis {
            let a = block_dilation(t, alpha, (k - 1).min(n), tol)?;
            accept(&a)?;
            absorb(&a.matrix)?;
        }
    }
    let base = halmos_matrix(t, 0.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = CMatrix::zeros(n, n);
    let eye = identity(n);
    for _ in 0..n_samples {
        let v = haar_unitary(n, &mut rng);
        let w = haar_unitary(n, &mut rng);
        let u = block2(&eye, &zero, &zero, &v) * &base * block2(&eye, &zero, &zero, &w);
        let a = DilationArtifact::assess(u, t, 0.0, Construction::Random, tol)?;
        accept(&a)?;
        absorb(&a.matrix)?;
    }
    let planes: Vec<ClosedHalfPlane> = xis
        .iter()
        .zip(&h)
        .map(|(&xi, &hv)| ClosedHalfPlane::support(xi, hv))
        .collect();
    Ok(halfplane_intersection(&planes, 2.0, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::range::region;
    use crate::spectral::{Atom, ContinuousPiece, Multiplicity};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &CMatrix, b: &CMatrix, eps: f64) -> bool {
        (a - b).norm() < eps
    }

    #[test]
    fn halmos_examples() {
        let tol = TolerancePolicy::default();
        let z = CMatrix::from_element(1, 1, c(0.0, 0.0));
        let a = halmos(&z, 0.0, &tol).unwrap();
        let want = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(close(&a.matrix, &want, 1e-15));
        assert_eq!(a.defect_rank, 1);
        let half = CMatrix::from_element(1, 1, c(0.5, 0.0));
        let a = halmos(&half, 0.0, &tol).unwrap();
        let r = 0.75f64.sqrt();
        let want = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(-r, 0.0), c(r, 0.0), c(0.5, 0.0)]);
        assert!(close(&a.matrix, &want, 1e-15) && a.is_accepted(&tol));
        let eye = identity(2);
        let a = halmos(&eye, 0.7, &tol).unwrap();
        let e2 = Complex64::from_polar(1.0, -1.4);
        let zero = CMatrix::zeros(2, 2);
        assert!(close(&a.matrix, &block2(&eye, &zero, &zero, &(&eye * e2)), 1e-14));
        assert_eq!(a.defect_rank, 0);
        let big = CMatrix::from_element(1, 1, c(1.5, 0.0));
        assert!(matches!(halmos(&big, 0.0, &tol), Err(Error::NotContraction { .. })));
    }

    #[test]
    fn scalar_dilation_examples() {
        let tol = TolerancePolicy::default();
        let (one, minus) = (c(1.0, 0.0), c(-1.0, 0.0));
        let u = scalar_dilation(c(0.0, 0.0), one, minus, &tol).unwrap();
        let want = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), one, one, c(0.0, 0.0)]);
        assert!(close(&u, &want, 1e-15));
        let u = scalar_dilation(one, one, minus, &tol).unwrap();
        assert!(close(&u, &diag(&[one, minus]), 1e-15));
        let u = scalar_dilation(c(0.5, 0.0), one, minus, &tol).unwrap();
        let s = 0.75f64.sqrt();
        let want = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(s, 0.0), c(s, 0.0), c(-0.5, 0.0)]);
        assert!(close(&u, &want, 1e-15));
        assert!(matches!(
            scalar_dilation(c(0.0, 0.5), one, minus, &tol),
            Err(Error::NotOnSegment { .. })
        ));
        assert_eq!(scalar_dilation(one, one, one, &tol), Err(Error::CoincidentEndpoints));
    }

    #[test]
    fn excluding_dilation_examples() {
        let tol = TolerancePolicy::default();
        let t = diag(&[c(0.5, 0.0), c(-0.5, 0.0)]);
        let a = excluding_dilation_matrix(&t, 1, c(0.8, 0.0), &tol).unwrap();
        assert!(a.alpha.abs() < 1e-12 && a.is_accepted(&tol));
        let z = CMatrix::from_element(1, 1, c(0.0, 0.0));
        let a = excluding_dilation_matrix(&z, 1, c(1.0, 0.0), &tol).unwrap();
        let want = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(close(&a.matrix, &want, 1e-14));
        let t = diag(&[c(0.0, 0.3)]);
        let a = excluding_dilation_matrix(&t, 1, c(0.0, -0.9), &tol).unwrap();
        assert!((a.alpha - PI / 2.0).abs() < 1e-9, "{}", a.alpha);
        assert!(matches!(
            excluding_dilation_matrix(&t, 1, c(0.0, 0.3), &tol),
            Err(Error::NoSeparatingAngle { .. })
        ));
    }

    #[test]
    fn block_dilation_reaches_rank_two() {
        let tol = TolerancePolicy::default();
        let t = diag(&[c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.4), c(0.1, -0.3)]);
        let lambda = c(0.3, 0.0);
        assert_eq!(
            crate::range::ckz_member(&t, 2, lambda, &tol),
            Ok(Verdict::Out)
        );
        let a = excluding_dilation_matrix(&t, 2, lambda, &tol).unwrap();
        assert!(a.is_accepted(&tol));
        let m = a.model(&tol).unwrap();
        assert_eq!(member(&m, Rank::Finite(2), lambda, &tol).unwrap().verdict, Verdict::Out);
    }

    fn durszt(k: u64) -> SpectralMeasureModel {
        SpectralMeasureModel::new(
            vec![Atom::new(c(0.0, 0.0), Multiplicity::Finite(k))],
            vec![ContinuousPiece::Arc {
                center: c(0.0, 0.0),
                radius: 1.0,
                theta0: 0.0,
                theta1: PI,
            }],
            vec![],
            1.0,
            &TolerancePolicy::default(),
        )
        .unwrap()
    }

    #[test]
    fn certificate_examples() {
        let tol = TolerancePolicy::default();
        let m = SpectralMeasureModel::new(
            vec![Atom::new(c(0.5, 0.0), Multiplicity::Finite(1))],
            vec![ContinuousPiece::Segment {
                a: c(0.0, -0.9),
                b: c(0.0, -0.1),
            }],
            vec![],
            1.0,
            &tol,
        )
        .unwrap();
        let cert = excluding_certificate(&m, 2, c(0.5, 0.0), Some(0.0), &tol).unwrap();
        assert_eq!(cert.certified_dim, 1);
        let s = cert.scalar_dilations[0];
        assert!((s.eta - c(-1.0, 0.0)).norm() < 1e-12 && (s.xi - c(1.0, 0.0)).norm() < 1e-12);
        assert!((s.t - 0.75).abs() < 1e-12);
        assert!(cert.mu.abs() > 0.0 && (cert.mu - 0.5).abs() < 1e-12);

        let seg_only = SpectralMeasureModel::new(
            vec![],
            vec![ContinuousPiece::Segment {
                a: c(0.0, -0.9),
                b: c(0.0, -0.1),
            }],
            vec![],
            1.0,
            &tol,
        )
        .unwrap();
        let cert = excluding_certificate(&seg_only, 2, c(0.5, 0.0), None, &tol).unwrap();
        assert!(cert.scalar_dilations.is_empty() && cert.certified_dim == 0);

        assert_eq!(
            excluding_certificate(&durszt(2), 2, c(0.5, 0.0), None, &tol),
            Err(Error::NoWuWitness)
        );
    }

    #[test]
    fn wu_check_durszt_and_matrix() {
        let tol = TolerancePolicy::default();
        for k in 1..=3 {
            let m = durszt(k);
            let r = region(&m, k, 64, &tol).unwrap();
            let report = wu_check(&m, k, &r, &tol).unwrap();
            assert_eq!(report.verdict, WuVerdict::StrictContainmentPredicted);
            assert!(report.evidence.iter().any(|e| (e.point - c(0.5, 0.0)).norm() < 1e-9
                && matches!(e.outcome, WuOutcome::FailureNote { .. })));
        }
        let t = diag(&[c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.3)]);
        let m = from_normal_matrix(&t, &tol).unwrap();
        let r = region(&m, 1, 64, &tol).unwrap();
        assert_eq!(wu_check(&m, 1, &r, &tol).unwrap().verdict, WuVerdict::EqualityPredicted);
    }

    #[test]
    fn wu_check_square_region() {
        let tol = TolerancePolicy::default();
        let square = ContinuousPiece::Region(ConvexPolygon::square(0.5));
        let m = SpectralMeasureModel::new(
            vec![
                Atom::new(c(0.5, 0.25), Multiplicity::Finite(1)),
                Atom::new(c(0.5, -0.25), Multiplicity::Finite(1)),
            ],
            vec![square],
            vec![],
            1.0,
            &tol,
        )
        .unwrap();
        let r = region(&m, 2, 64, &tol).unwrap();
        let report = wu_check(&m, 2, &r, &tol).unwrap();
        assert_eq!(report.verdict, WuVerdict::StrictContainmentPredicted);
        assert_eq!(member(&m, Rank::Finite(2), c(0.5, 0.0), &tol).unwrap().verdict, Verdict::Out);
    }

    #[test]
    fn wu_check_rejects_non_strict() {
        let tol = TolerancePolicy::default();
        let m = SpectralMeasureModel::from_atoms(vec![Atom::new(c(1.0, 0.0), Multiplicity::Finite(1))], &tol).unwrap();
        let r = region(&m, 1, 8, &tol).unwrap();
        assert!(matches!(wu_check(&m, 1, &r, &tol), Err(Error::NotStrictContraction { .. })));
    }

    #[test]
    fn conjecture_examples() {
        let tol = TolerancePolicy::default();
        let t = diag(&[c(0.5, 0.0), c(-0.5, 0.0)]);
        assert!(conjecture_condition_at(&t, 1, c(0.6, 0.0), PI, &tol).unwrap());
        assert!(matches!(
            conjecture_check(&t, 1, c(0.6, 0.0), 360, &tol).unwrap(),
            ConjectureOutcome::ConditionHolds { .. }
        ));
        assert_eq!(
            conjecture_check(&t, 1, c(0.0, 0.0), 360, &tol).unwrap(),
            ConjectureOutcome::ConditionFails
        );
        let z = CMatrix::from_element(1, 1, c(0.0, 0.0));
        assert!(conjecture_condition_at(&z, 1, c(0.5, 0.0), PI, &tol).unwrap());
        let one = CMatrix::from_element(1, 1, c(1.0, 0.0));
        assert!(matches!(
            conjecture_check(&one, 1, c(0.5, 0.0), 8, &tol),
            Err(Error::NotStrictContraction { .. })
        ));
    }

    #[test]
    fn dilation_intersection_of_zero_shrinks_to_a_point() {
        let tol = TolerancePolicy::default();
        let z = CMatrix::from_element(1, 1, c(0.0, 0.0));
        let poly = dilation_intersection(&z, 1, 5, 360, 0, &tol).unwrap();
        assert!(poly.vertices().iter().all(|v| v.norm() <= TAU / 360.0), "{poly:?}");
    }

    #[test]
    fn unitary_dilates_itself() {
        let tol = TolerancePolicy::default();
        let t = diag(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]);
        let poly = dilation_intersection(&t, 1, 5, 64, 1, &tol).unwrap();
        let m = from_normal_matrix(&t, &tol).unwrap();
        let r = region(&m, 1, 64, &tol).unwrap();
        assert!(poly.hausdorff(&r.polygon) < 1e-9);
    }
}
