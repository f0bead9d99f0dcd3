//! Command-line front end.
//!
//! Every subcommand prints JSON on stdout. Exit status: 0 on success, 1 for
//! malformed input, 2 for a violated precondition, 3 when the answer is
//! dominated by undecidable geometry and 4 when a reproduction check fails.

use crate::dilation::{
    conjecture_check, dilation_intersection, excluding_certificate, excluding_dilation_matrix,
    halmos, wu_check, WuVerdict,
};
use crate::error::Error;
use crate::geometry::{Point, TolerancePolicy, Verdict};
use crate::io::{parse_input, region_json, support_csv, DilationFile, Input};
use crate::models;
use crate::range::{member, member_infinity, region, selfadjoint_interval, Rank};
use crate::spectral::SpectralMeasureModel;
use crate::svg::region_svg;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Exit status of a failed reproduction.
pub const EXIT_REPRODUCTION_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "hrnr", version, about = "Higher-rank numerical ranges of normal operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reconstruct the closure of Λ_k and classify its boundary.
    Region {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: u64,
        #[arg(long, default_value_t = 360)]
        angles: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Decide whether a point lies in Λ_k (k may be `inf`).
    Member {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: Rank,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
    },
    /// Λ_k of a self-adjoint model as a real interval.
    Selfadjoint {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: u64,
    },
    /// Unitary dilation of a contraction matrix.
    Dilate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        /// Fail unless both residuals are within tolerance.
        #[arg(long)]
        check: bool,
        /// Build a dilation whose Λ_k excludes this point instead.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires = "k")]
        exclude: Option<Point>,
        /// Emit a symbolic exclusion certificate for this point.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires = "k", conflicts_with = "exclude")]
        certify: Option<Point>,
        #[arg(short)]
        k: Option<u64>,
    },
    /// Predict whether Λ_k equals the intersection over unitary dilations.
    WuCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: u64,
        #[arg(long, default_value_t = 360)]
        angles: usize,
    },
    /// Scan the conjectured exclusion condition over θ.
    Conjecture {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
        #[arg(long, default_value_t = 720)]
        thetas: usize,
    },
    /// Intersect Λ_k over sampled unitary dilations.
    Intersect {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 720)]
        alphas: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a built-in example and check it against the known answer.
    Reproduce {
        example: Example,
        #[arg(short)]
        k: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Durszt,
    BilateralShift,
    InfinityEmpty,
    Hermitian,
    SquareRegion,
}

/// Parse `"x,y"` into `x + iy`.
pub fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"x,y\", got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad coordinate {t:?}"))
    };
    let p = Point::new(num(x)?, num(y)?);
    if p.re.is_finite() && p.im.is_finite() {
        Ok(p)
    } else {
        Err(format!("non-finite point {s:?}"))
    }
}

enum Failure {
    Core(Error),
    Input(String),
    Uncertain(String),
    Reproduction,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path, tol: &TolerancePolicy) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(parse_input(&text, tol)?)
}

fn write_file(path: &Path, body: &str) -> Outcome {
    std::fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("json value serializes");
    writeln!(out, "{text}").map_err(|e| Failure::Input(e.to_string()))
}

/// Parse `args` (including the program name) and run the command, writing
/// results to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(Failure::Uncertain(m)) => {
            eprintln!("uncertain: {m}");
            3
        }
        Err(Failure::Reproduction) => EXIT_REPRODUCTION_FAILED,
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    let tol = TolerancePolicy::default();
    match command {
        Command::Region {
            input,
            k,
            angles,
            svg,
            json,
            csv,
        } => {
            let spec = read_input(&input, &tol)?.spectral(&tol)?;
            let r = region(&spec, k, angles, &tol)?;
            let body = region_json(&r);
            if let Some(path) = &svg {
                write_file(path, &region_svg(&r, Some(&spec)))?;
            }
            if let Some(path) = &csv {
                write_file(path, &support_csv(&r))?;
            }
            match &json {
                Some(path) => write_file(path, &body)?,
                None => writeln!(out, "{body}").map_err(|e| Failure::Input(e.to_string()))?,
            }
            let uncertain = r
                .boundary_report
                .iter()
                .filter(|s| s.verdict == Verdict::Uncertain)
                .count();
            if 2 * uncertain > r.boundary_report.len() {
                return Err(Failure::Uncertain(format!(
                    "{uncertain} of {} boundary samples are undecided",
                    r.boundary_report.len()
                )));
            }
            Ok(())
        }
        Command::Member { input, k, point } => {
            let spec = read_input(&input, &tol)?.spectral(&tol)?;
            let m = match k {
                Rank::Infinity => member_infinity(&spec, point, &tol)?,
                finite => member(&spec, finite, point, &tol)?,
            };
            emit(
                out,
                &json!({
                    "k": k.to_string(),
                    "point": point,
                    "verdict": m.verdict,
                    "witness": m.witness,
                    "witness_dim": m.witness_dim.map(|d| d.to_string()),
                }),
            )?;
            if m.verdict == Verdict::Uncertain {
                return Err(Failure::Uncertain("membership is undecided".into()));
            }
            Ok(())
        }
        Command::Selfadjoint { input, k } => {
            let spec = read_input(&input, &tol)?.spectral(&tol)?;
            let interval = selfadjoint_interval(&spec, k, &tol)?;
            emit(out, &json!({ "k": k, "interval": interval }))
        }
        Command::Dilate {
            input,
            alpha,
            check,
            exclude,
            certify,
            k,
        } => {
            let parsed = read_input(&input, &tol)?;
            if let (Some(lambda), Some(k)) = (certify, k) {
                let spec = parsed.spectral(&tol)?;
                let cert = excluding_certificate(&spec, k, lambda, None, &tol)?;
                return emit(out, &serde_json::to_value(&cert).expect("certificate serializes"));
            }
            let t = parsed.matrix()?;
            let artifact = match (exclude, k) {
                (Some(lambda), Some(k)) => excluding_dilation_matrix(t, k as usize, lambda, &tol)?,
                _ => halmos(t, alpha, &tol)?,
            };
            if check && !artifact.is_accepted(&tol) {
                return Err(Error::DilationCheck(format!(
                    "residuals {:.3e}, {:.3e}",
                    artifact.unitarity_residual, artifact.compression_residual
                ))
                .into());
            }
            let file = DilationFile::from(&artifact);
            emit(out, &serde_json::to_value(&file).expect("dilation serializes"))
        }
        Command::WuCheck { input, k, angles } => {
            let spec = read_input(&input, &tol)?.spectral(&tol)?;
            let r = region(&spec, k, angles, &tol)?;
            let report = wu_check(&spec, k, &r, &tol)?;
            emit(out, &serde_json::to_value(&report).expect("report serializes"))?;
            if report.verdict == WuVerdict::Inconclusive {
                return Err(Failure::Uncertain("some boundary samples were undecided".into()));
            }
            Ok(())
        }
        Command::Conjecture {
            input,
            k,
            point,
            thetas,
        } => {
            let parsed = read_input(&input, &tol)?;
            let outcome = conjecture_check(parsed.matrix()?, k, point, thetas, &tol)?;
            emit(out, &serde_json::to_value(outcome).expect("outcome serializes"))
        }
        Command::Intersect {
            input,
            k,
            alphas,
            samples,
            seed,
        } => {
            let parsed = read_input(&input, &tol)?;
            let poly = dilation_intersection(parsed.matrix()?, k, samples, alphas, seed, &tol)?;
            emit(
                out,
                &json!({ "k": k, "seed": seed, "polygon": poly.vertices() }),
            )
        }
        Command::Reproduce { example, k } => reproduce(example, k, out),
    }
}

struct Checks<'a> {
    out: &'a mut dyn Write,
    failed: bool,
}

impl Checks<'_> {
    fn check(&mut self, name: &str, ok: bool) {
        self.failed |= !ok;
        let _ = writeln!(self.out, "{} {name}", if ok { "PASS" } else { "FAIL" });
    }

    fn finish(self) -> Outcome {
        if self.failed {
            Err(Failure::Reproduction)
        } else {
            Ok(())
        }
    }
}

fn verdict(spec: &SpectralMeasureModel, k: Rank, z: Point, tol: &TolerancePolicy) -> Option<Verdict> {
    member(spec, k, z, tol).ok().map(|m| m.verdict)
}

fn grid(n: usize, half: f64) -> Vec<Point> {
    let step = 2.0 * half / (n - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| Point::new(-half + i as f64 * step, -half + j as f64 * step)))
        .collect()
}

fn reproduce(example: Example, k: Option<u64>, out: &mut dyn Write) -> Outcome {
    let tol = TolerancePolicy::default();
    let mut c = Checks { out, failed: false };
    match example {
        Example::Durszt => {
            let k = k.unwrap_or(2);
            let spec = models::durszt(k);
            let rank = Rank::finite(k)?;
            for (z, want, label) in [
                (Point::new(0.0, 0.0), Verdict::In, "0"),
                (Point::new(0.5, 0.0), Verdict::Out, "0.5"),
                (Point::new(-0.5, 0.0), Verdict::Out, "-0.5"),
                (Point::new(0.3, 0.4), Verdict::In, "0.3+0.4i"),
                (Point::new(0.0, 1.0), Verdict::Out, "i"),
            ] {
                let got = verdict(&spec, rank, z, &tol);
                c.check(&format!("member({label}) = {want:?} (got {got:?})"), got == Some(want));
            }
            let report = region(&spec, k, 360, &tol).and_then(|r| wu_check(&spec, k, &r, &tol));
            let v = report.as_ref().ok().map(|r| r.verdict);
            c.check(
                &format!("wu-check predicts strict containment (got {v:?})"),
                v == Some(WuVerdict::StrictContainmentPredicted),
            );
        }
        Example::BilateralShift => {
            let k = k.unwrap_or(5);
            let spec = models::bilateral_shift();
            let r = region(&spec, k, 360, &tol)?;
            let radius_ok = r
                .polygon
                .vertices()
                .iter()
                .all(|v| v.norm() >= 1.0 - 1e-9 && v.norm() <= 1.0 / (std::f64::consts::PI / 360.0).cos() + 1e-9);
            c.check("region polygon circumscribes the unit circle", radius_ok);
            let boundary_out = r.boundary_report.iter().all(|s| s.verdict == Verdict::Out);
            c.check("every boundary sample is Out", boundary_out);
            let ranks = [Rank::Finite(1), Rank::Finite(2), Rank::Finite(k), Rank::Infinity];
            let mut same = true;
            let mut disk = true;
            for z in grid(21, 1.05) {
                let vs: Vec<Option<Verdict>> = ranks.iter().map(|&r| verdict(&spec, r, z, &tol)).collect();
                same &= vs.iter().all(|v| *v == vs[0]);
                let want = if z.norm() <= 0.995 {
                    Some(Verdict::In)
                } else if z.norm() >= 1.0 {
                    Some(Verdict::Out)
                } else {
                    vs[0]
                };
                disk &= vs[0] == want;
            }
            c.check("grid verdicts match the open unit disk", disk);
            c.check(&format!("verdicts agree for k = 1, 2, {k}, inf"), same);
        }
        Example::InfinityEmpty => {
            let spec = models::infinity_empty();
            let points = grid(20, 1.0);
            let all_out = points.iter().all(|&z| {
                member_infinity(&spec, z, &tol).map(|m| m.verdict) == Ok(Verdict::Out)
            });
            c.check("Λ_inf grid is all Out", all_out);
            let some_in = points
                .iter()
                .any(|&z| verdict(&spec, Rank::Finite(1), z, &tol) == Some(Verdict::In));
            c.check("Λ_1 grid is nonempty", some_in);
        }
        Example::Hermitian => {
            let k = k.unwrap_or(2);
            let spec = models::hermitian();
            let mut xs = [1.0, 0.5, 0.0, -0.2, -1.0];
            xs.sort_by(|a: &f64, b| b.total_cmp(a));
            let n = xs.len() as u64;
            if k > n {
                return Err(Error::RankExceedsDimension {
                    k: k.to_string(),
                    dim: n.to_string(),
                }
                .into());
            }
            let (lo, hi) = (xs[(n - k) as usize], xs[(k - 1) as usize]);
            let interval = selfadjoint_interval(&spec, k, &tol)?;
            let want = (lo <= hi).then_some((lo, hi));
            let close = match (interval, want) {
                (Some(a), Some(b)) => (a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8,
                (None, None) => true,
                _ => false,
            };
            c.check(&format!("interval is {want:?} (got {interval:?})"), close);
            let r = region(&spec, k, 360, &tol)?;
            let flat = r.polygon.vertices().iter().all(|v| v.im.abs() < 1e-8);
            let ends = want.is_none_or(|(lo, hi)| {
                let re: Vec<f64> = r.polygon.vertices().iter().map(|v| v.re).collect();
                let min = re.iter().cloned().fold(f64::INFINITY, f64::min);
                let max = re.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                (min - lo).abs() < 1e-8 && (max - hi).abs() < 1e-8
            });
            c.check("region degenerates to the same real segment", flat && ends);
        }
        Example::SquareRegion => {
            let k = k.unwrap_or(2).max(2);
            let spec = models::square_region(k);
            let rank = Rank::finite(k)?;
            let edge = Point::new(0.5, 0.0);
            c.check(
                "member(1/2) = Out",
                verdict(&spec, rank, edge, &tol) == Some(Verdict::Out),
            );
            c.check(
                "member(0) = In",
                verdict(&spec, rank, Point::new(0.0, 0.0), &tol) == Some(Verdict::In),
            );
            c.check(
                "no closed half plane through 1/2 has dimension below k",
                excluding_certificate(&spec, k, edge, None, &tol) == Err(Error::NoWuWitness),
            );
            let report = region(&spec, k, 360, &tol).and_then(|r| wu_check(&spec, k, &r, &tol));
            let v = report.as_ref().ok().map(|r| r.verdict);
            c.check(
                &format!("wu-check predicts strict containment (got {v:?})"),
                v == Some(WuVerdict::StrictContainmentPredicted),
            );
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse() {
        assert_eq!(parse_point("0.5,-1"), Ok(Point::new(0.5, -1.0)));
        assert_eq!(parse_point(" -2 , 3e-1 "), Ok(Point::new(-2.0, 0.3)));
        assert!(parse_point("1+2i").is_err());
        assert!(parse_point("nan,0").is_err());
    }

    #[test]
    fn reproductions_pass() {
        for (ex, k) in [
            (Example::Durszt, Some(2)),
            (Example::BilateralShift, Some(5)),
            (Example::InfinityEmpty, None),
            (Example::Hermitian, Some(2)),
            (Example::SquareRegion, Some(2)),
        ] {
            let mut buf = Vec::new();
            let ok = reproduce(ex, k, &mut buf).is_ok();
            let text = String::from_utf8(buf).unwrap();
            assert!(ok && !text.contains("FAIL"), "{ex:?}\n{text}");
        }
    }
}
