//! Resonant normal forms of area-preserving maps near an elliptic fixed
//! point.
//!
//! The crate provides, in layers:
//!
//! - a truncated formal power series algebra in (z, zbar, p1, p2, p3) with
//!   Poisson brackets, Lie transforms, rotations and grading overlays
//!   ([`series`], [`monomial`], [`param`], [`polar`]);
//! - maps in complex coordinates, time-one flows, Birkhoff reduction and
//!   Takens interpolation between maps and Hamiltonians, with a conjugacy
//!   residual checker ([`map`], [`interpolate`], [`change`]);
//! - the normalization pipelines for degenerate resonant Hamiltonians:
//!   individual maps (two-harmonic and alternative forms), three-parameter
//!   families (degree-2 reduction, reparametrization, two-harmonic and
//!   alternative forms) and the twist-degenerate case ([`nf`]);
//! - the model Hamiltonians of the bifurcation analysis: critical-point
//!   censuses, region classification (astroid, n=3 parabola, twist cubic),
//!   level-set extraction and parameter sweeps ([`bif`]).

pub mod bif;
pub mod change;
pub mod error;
pub mod interpolate;
pub mod map;
pub mod monomial;
pub mod nf;
pub mod param;
pub mod polar;
pub mod series;

pub use change::{Change, ChangeStep};
pub use error::{Error, Result};
pub use interpolate::{birkhoff_reduce, conjugacy_residual, takens_interpolate, ConjugacyReport};
pub use map::{flow_time_one, rotation_after_flow, MapSeries};
pub use monomial::{Grading, Monomial};
pub use param::ParamSeries;
pub use polar::{from_polar, to_polar, PolarEntry, PolarHarmonic};
pub use series::FormalSeries;
