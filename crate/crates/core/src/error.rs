use thiserror::Error;

/// Errors produced by geometry queries, strategy evaluation and the game engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error(
        "k = {k} outside Helly range: k-Hull nonemptiness requires 1 <= k <= ceil(n/(m+1)) = {bound} for n = {n}, m = {m}"
    )]
    HellyBound { k: usize, n: usize, m: usize, bound: usize },

    #[error("query point coincides with point {index} of the set (within eps_loc)")]
    CoincidentPoint { index: usize },

    #[error("point is not strictly inside the k-Hull; violating direction {witness:?} has g <= 0")]
    NotInKHullInterior { witness: Vec<f64> },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("illegal move by {agent}: {detail}")]
    IllegalMove { agent: String, detail: String },

    #[error("co-location violation: {a} and {b} at distance {distance:e}")]
    CoLocation { a: String, b: String, distance: f64 },

    #[error("invalid scenario:\n{}", .0.join("\n"))]
    InvalidScenario(Vec<String>),

    #[error("general-position perturbation failed after {attempts} halvings")]
    PerturbationFailed { attempts: u32 },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors caused by bad inputs (as opposed to runtime invariant breaks).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::EmptyPointSet
                | Error::HellyBound { .. }
                | Error::CoincidentPoint { .. }
                | Error::NotInKHullInterior { .. }
                | Error::DegenerateInput(_)
                | Error::InvalidScenario(_)
        )
    }
}
