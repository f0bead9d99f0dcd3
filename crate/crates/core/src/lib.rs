//! Higher-rank numerical ranges `Λ_k(T)` of normal operators.
//!
//! A normal operator is described by its spectral measure
//! ([`spectral::SpectralMeasureModel`]): atoms, continuous pieces and
//! accumulating eigenvalue sequences. A point `λ` lies in `Λ_k(T)` exactly
//! when every half closed-half plane at `λ` carries spectral subspace of
//! dimension at least `k`; [`range::member`] decides this and
//! [`range::region`] reconstructs the closure of `Λ_k` from its support
//! function. [`dilation`] compares `Λ_k(T)` with `Λ_k` of unitary dilations.

pub mod cli;
pub mod dilation;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod models;
pub mod range;
pub mod spectral;
pub mod svg;

pub use error::{Error, Result};
