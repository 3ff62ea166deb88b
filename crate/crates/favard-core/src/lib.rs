//! Planar integral geometry at desk scale: exact per-direction shadow
//! measures, Favard length and Crofton integrals for finite segment sets,
//! conical density analysis, Lipschitz-graph extraction, a structure
//! pipeline that either covers a set by a single graph or produces a
//! measured multi-incidence certificate, the exact line-pair measure of
//! two curves, and a grid-of-circles example family.
//!
//! Everything per fixed direction is evaluated in closed form; the only
//! discretizations are one-dimensional quadrature over the direction
//! circle, arclength sampling of point clouds, and seeded Monte Carlo.
//! All operations are pure and deterministic for a fixed configuration
//! and seed.
//!
//! The crate is `no_std`-compatible (with `alloc`) when built with
//! `--no-default-features --features no-std-math`; the companion binary
//! crate carries file formats, CSV emission and the CLI.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analyzer;
pub mod cloud;
pub mod cones;
pub mod extract;
pub mod favard;
pub mod geom;
pub mod grid;
pub mod interval;
pub mod math;
pub mod mc;
pub mod pairs;
pub mod quad;
pub mod synth;

pub use analyzer::{AnalysisConfig, AnalysisOutcome, AnalysisReport, MinigraphFamily, Witness};
pub use cloud::WeightedCloud;
pub use cones::{AlternativeOutcome, Cone};
pub use extract::GraphCover;
pub use favard::FavardReport;
pub use geom::{AffineLine, Angle, Point, Polyline, Segment, SegmentSet, Tube};
pub use grid::GridScene;
pub use interval::IntervalUnion;
pub use pairs::CurveWithTangents;
pub use quad::QuadratureConfig;

use alloc::string::String;
use core::fmt;

/// Absolute tolerance for geometric degeneracy detection (doubles at unit scale).
pub const GEOM_EPS: f64 = 1e-12;

/// Stages of the witness construction that can fail when the configured
/// constants are inconsistent with the input's scale. Reported, never patched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStage {
    /// A designated direction bucket does not carry the required mass.
    BucketMass,
    /// The single-graph cover of a bucket lost too much mass.
    BucketCover,
    /// Fewer separated heavy balls than required could be selected.
    BallSelection,
    /// No graph piece dominates a selected ball.
    DominantGraph,
    /// A fitted line does not contain its point set in the inner tube.
    LineFit,
    /// A fitted line makes too large an angle with its bucket axis.
    LineAngle,
    /// The tube/ball incidence relation is not row/column unique.
    Incidence,
    /// The final point sets fail the mutual tube-avoidance membership test.
    Membership,
}

impl fmt::Display for WitnessStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WitnessStage::BucketMass => "bucket-mass",
            WitnessStage::BucketCover => "bucket-cover",
            WitnessStage::BallSelection => "ball-selection",
            WitnessStage::DominantGraph => "dominant-graph",
            WitnessStage::LineFit => "line-fit",
            WitnessStage::LineAngle => "line-angle",
            WitnessStage::Incidence => "incidence",
            WitnessStage::Membership => "membership",
        };
        f.write_str(s)
    }
}

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A line contains a full segment of the set; intersection counting is
    /// undefined there (measure-zero direction; perturb and retry).
    CollinearOverlap,
    /// Panel refinement hit the panel budget before reaching the tolerance.
    QuadratureNotConverged { estimate: f64, error: f64 },
    /// The requested analysis is meaningless on this input (e.g. zero
    /// maximal conical density).
    DegenerateInput(String),
    /// An extraction removed every point.
    EmptyResult,
    /// The input violates a documented precondition.
    AssumptionViolated(String),
    /// Coarse direction buckets cannot accommodate the separation constant.
    InsufficientBuckets { buckets: usize, required: usize },
    /// The witness construction failed at the given stage.
    WitnessFailed { stage: WitnessStage, detail: String },
    /// Two points expected to be distinct coincide within tolerance.
    DegeneratePair,
    /// The two curves are too close for the pair-measure integrand.
    CurvesTooClose { min_distance: f64 },
    /// Malformed geometric input (zero-length segment, bad interval, ...).
    InvalidGeometry(String),
    /// A configuration field is out of its documented range.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CollinearOverlap => {
                write!(f, "line contains a full segment; counting undefined")
            }
            Error::QuadratureNotConverged { estimate, error } => write!(
                f,
                "quadrature did not converge (estimate {estimate}, last refinement {error})"
            ),
            Error::DegenerateInput(s) => write!(f, "degenerate input: {s}"),
            Error::EmptyResult => write!(f, "all points were removed"),
            Error::AssumptionViolated(s) => write!(f, "assumption violated: {s}"),
            Error::InsufficientBuckets { buckets, required } => write!(
                f,
                "only {buckets} coarse buckets but {required} required; \
                 config inconsistent with alpha"
            ),
            Error::WitnessFailed { stage, detail } => {
                write!(f, "witness construction failed at stage {stage}: {detail}")
            }
            Error::DegeneratePair => write!(f, "point pair coincides within tolerance"),
            Error::CurvesTooClose { min_distance } => {
                write!(f, "curves too close for pair measure (min distance {min_distance})")
            }
            Error::InvalidGeometry(s) => write!(f, "invalid geometry: {s}"),
            Error::InvalidConfig(s) => write!(f, "invalid config: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
