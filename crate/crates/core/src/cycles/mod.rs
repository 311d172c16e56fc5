//! Vanishing cycles of two-variable potentials whose fibers are double
//! covers of a line.
//!
//! Branch points are tracked from a reference value along arcs to the
//! critical values. At the end of an arc a small loop around each
//! colliding pair is carried back to the reference fiber. Each loop lifts
//! to a vanishing cycle, whose class in the first homology of the compact
//! (genus one) fiber is read off from its period of `dt / sqrt(Δ)`.

mod arc;
mod braid;
mod fiber;
mod quiver;
mod transport;

use thiserror::Error;

use crate::laurent::LaurentError;
use crate::C64;

pub use arc::{clockwise_order, ArcKind, ArcSpec};
pub use braid::{reference_branch_points, track_branch_points, BraidSample, BranchBraid, Collision, StepConfig};
pub use fiber::FiberSpec;
pub use quiver::{
    default_arcs, del_pezzo_arcs, intersection_number, quiver_matrix, vanishing_cycles, CycleRun, QuiverMatrix, VanishingCycle,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error("fiber equation has degree {degree} in the cover variable, expected 2")]
    NotQuadratic { degree: i32 },
    #[error("invalid fiber spec: {0}")]
    InvalidSpec(String),
    #[error("arc passes within {distance:e} of critical value {value}")]
    ArcClearance { value: C64, distance: f64 },
    #[error("branch points cannot be matched near λ = {lambda} even at the smallest step")]
    TrackingAmbiguity { lambda: C64 },
    #[error("branch points {pair:?} collide at λ = {lambda} before the end of the arc")]
    UnexpectedCollision { lambda: C64, pair: (usize, usize) },
    #[error("number of branch points changed from {expected} to {found} at λ = {lambda}")]
    BranchCountChanged { lambda: C64, expected: usize, found: usize },
    #[error("arc {arc} ends at {value} but no critical point has that value")]
    NoCriticalPoint { arc: usize, value: C64 },
    #[error("arc {arc}: {reason}")]
    Unmatched { arc: usize, reason: String },
    #[error("cycle transport failed: {0}")]
    TransportFailed(String),
    #[error("intersection pairing {value} is not within tolerance of an integer")]
    NonIntegral { value: f64 },
    #[error("intersection numbers are implemented for genus one fibers (3 or 4 branch points), got {0}")]
    UnsupportedGenus(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}
