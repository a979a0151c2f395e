//! Multi-pursuer, single-evader k-capture games in m-dimensional Euclidean space.
//!
//! The library has three layers:
//!
//! * `geometry` — halfspace (Tukey) depth, k-Hull membership and 2D boundary
//!   polygons, the worst-case approach angle `beta_max`, and cone tests.
//! * `pursuit` / `evader` / `bounded` — the motion strategies themselves:
//!   Advance and Cone moves for the pursuers, separating-hyperplane escape for
//!   the evader, and the lead/follower strategy for compact convex arenas.
//! * `engine` / `scenario` / `oracle` — the alternating-move game loop,
//!   declarative scenario descriptions with deterministic seeding, full replay
//!   traces, and independent brute-force verifiers for every capture-time bound.
//!
//! All distances are normalized to the players' common maximum speed: every
//! agent may move anywhere inside the closed unit ball around its position,
//! the evader moving first and all pursuers answering simultaneously.

pub mod bounded;
pub mod engine;
pub mod error;
pub mod evader;
pub mod geometry;
pub mod oracle;
pub mod pursuit;
pub mod scenario;
pub mod trace;

pub use error::Error;
pub use geometry::{PointSet, Vector};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
