//! Crate-wide error type.

use core::fmt;

/// Failure modes of the geometric and statistical kernels.
///
/// `DegenerateInput` and `TieDetected` mark measure-zero configurations that a
/// trial driver resolves by resampling with a fresh seed rather than by
/// perturbing data.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A configuration too close to affine dependence (relative pivot below
    /// tolerance) for the requested computation.
    DegenerateInput(&'static str),
    /// A point lies at toroidal distance >= 1/2 from the lift anchor, so no
    /// isometric Euclidean chart contains the whole set.
    LiftOutOfRange,
    /// A strict test (center containment, nearest facet) fell inside the
    /// ambiguity band around the decision boundary.
    AmbiguousBoundary(&'static str),
    /// Two quantities that must be strictly ordered are equal within tolerance.
    TieDetected(&'static str),
    /// A parameter violates its documented range.
    ParameterOutOfRange(&'static str),
    /// The cloud does not cover the torus within the radius bound, so
    /// coverage-dependent statistics are undefined for this trial.
    NotCovered,
    /// Too many trials were discarded as degenerate; the run is aborted
    /// instead of silently biasing the statistics.
    DegeneracyRateExceeded { discarded: u64, attempted: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::LiftOutOfRange => {
                write!(f, "point at toroidal distance >= 1/2 from lift anchor")
            }
            Error::AmbiguousBoundary(what) => {
                write!(f, "ambiguous boundary decision: {what}")
            }
            Error::TieDetected(what) => write!(f, "tie detected: {what}"),
            Error::ParameterOutOfRange(what) => write!(f, "parameter out of range: {what}"),
            Error::NotCovered => write!(f, "torus not covered within the radius bound"),
            Error::DegeneracyRateExceeded {
                discarded,
                attempted,
            } => write!(
                f,
                "degeneracy rate exceeded: {discarded} of {attempted} trials discarded"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
