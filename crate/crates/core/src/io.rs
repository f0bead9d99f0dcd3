//! JSON and CSV formats read and written by the command-line tool.

use crate::dilation::{Construction, DilationArtifact};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point, TolerancePolicy};
use crate::linalg::CMatrix;
use crate::range::{BoundarySample, RegionEstimate, SupportSample};
use crate::spectral::{
    from_normal_matrix, Atom, ContinuousPiece, SequenceFamily, SpectralMeasureModel,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// On-disk input: a spectral model or a dense matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputFile {
    Model {
        support_radius: f64,
        #[serde(default)]
        atoms: Vec<Atom>,
        #[serde(default)]
        pieces: Vec<ContinuousPiece>,
        #[serde(default)]
        families: Vec<SequenceFamily>,
    },
    Matrix {
        data: Vec<Vec<Complex64>>,
    },
}

/// A parsed and validated input.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Model(SpectralMeasureModel),
    Matrix(CMatrix),
}

impl Input {
    /// The spectral model; matrices must be normal.
    pub fn spectral(&self, tol: &TolerancePolicy) -> Result<SpectralMeasureModel> {
        match self {
            Input::Model(m) => Ok(m.clone()),
            Input::Matrix(m) => from_normal_matrix(m, tol),
        }
    }

    pub fn matrix(&self) -> Result<&CMatrix> {
        match self {
            Input::Matrix(m) => Ok(m),
            Input::Model(_) => Err(Error::InvalidModel(
                "this command needs a matrix input".into(),
            )),
        }
    }
}

pub fn matrix_from_rows(rows: &[Vec<Complex64>]) -> Result<CMatrix> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::BadShape {
            rows: n,
            cols: bad.len(),
        });
    }
    if n == 0 || cols != n {
        return Err(Error::BadShape { rows: n, cols });
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn matrix_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn parse_input(text: &str, tol: &TolerancePolicy) -> Result<Input> {
    let file: InputFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
    match file {
        InputFile::Model {
            support_radius,
            atoms,
            pieces,
            families,
        } => Ok(Input::Model(SpectralMeasureModel::new(
            atoms,
            pieces,
            families,
            support_radius,
            tol,
        )?)),
        InputFile::Matrix { data } => Ok(Input::Matrix(matrix_from_rows(&data)?)),
    }
}

pub fn model_file(m: &SpectralMeasureModel) -> InputFile {
    InputFile::Model {
        support_radius: m.support_radius(),
        atoms: m.atoms().to_vec(),
        pieces: m.pieces().to_vec(),
        families: m.families().to_vec(),
    }
}

pub fn matrix_file(m: &CMatrix) -> InputFile {
    InputFile::Matrix {
        data: matrix_rows(m),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionFile {
    pub k: u64,
    pub support: Vec<SupportSample>,
    pub polygon: Vec<Point>,
    pub boundary: Vec<BoundarySample>,
}

impl From<&RegionEstimate> for RegionFile {
    fn from(r: &RegionEstimate) -> Self {
        Self {
            k: r.k,
            support: r.support_samples.clone(),
            polygon: r.polygon.vertices().to_vec(),
            boundary: r.boundary_report.clone(),
        }
    }
}

impl RegionFile {
    pub fn estimate(&self) -> RegionEstimate {
        RegionEstimate {
            k: self.k,
            support_samples: self.support.clone(),
            polygon: ConvexPolygon::from_hull_vertices(self.polygon.clone()),
            boundary_report: self.boundary.clone(),
        }
    }
}

pub fn region_json(r: &RegionEstimate) -> String {
    serde_json::to_string_pretty(&RegionFile::from(r)).expect("region serializes")
}

pub fn parse_region(text: &str) -> Result<RegionEstimate> {
    let file: RegionFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
    Ok(file.estimate())
}

/// `xi,h` per support sample.
pub fn support_csv(r: &RegionEstimate) -> String {
    let mut out = String::from("xi,h\n");
    for s in &r.support_samples {
        let _ = writeln!(out, "{},{}", s.xi, s.h);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DilationFile {
    pub alpha: f64,
    pub construction: Construction,
    pub unitarity_residual: f64,
    pub compression_residual: f64,
    pub defect_rank: usize,
    pub matrix: Vec<Vec<Complex64>>,
}

impl From<&DilationArtifact> for DilationFile {
    fn from(a: &DilationArtifact) -> Self {
        Self {
            alpha: a.alpha,
            construction: a.construction,
            unitarity_residual: a.unitarity_residual,
            compression_residual: a.compression_residual,
            defect_rank: a.defect_rank,
            matrix: matrix_rows(&a.matrix),
        }
    }
}
