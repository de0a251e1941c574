//! Configuration spaces of a robotic arm moving in a rectangular tunnel.
//!
//! An arm of length `n` in a tunnel of width `m` is a self-avoiding chain of
//! unit links pointing up, down or right, pinned at the lower-left corner.
//! It moves by switching corners and by flipping its last link. The space of
//! all positions is a CAT(0) cube complex whose poset with inconsistent pairs
//! is the *coral PIP*; this crate builds that structure and uses it to
//! compute distances, geodesics, normal cube paths and diameters, and checks
//! everything against brute-force enumeration and exact generating functions.
//!
//! Module map:
//!
//! - [`arm`]: states, legal moves, physical independence.
//! - [`coral`]: coral snakes, coral tableaux, numbered snakes and the
//!   state/tableau/ideal bijections.
//! - [`pip`]: posets with inconsistent pairs, consistent ideals, the cube
//!   complex of a PIP and hyperplane reconstruction.
//! - [`planner`]: distance formulas, edge geodesics, normal cube paths,
//!   special positions and diameters.
//! - [`complex_enum`]: brute-force transition graphs, cubes, f-vectors, BFS
//!   metrics and partial-state words.
//! - [`genfun`]: exact bivariate rational generating functions.
//! - [`verify`]: oracle suites shared by the CLI.

pub mod arm;
pub mod complex_enum;
pub mod coral;
pub mod genfun;
pub mod par;
pub mod pip;
pub mod planner;
pub mod verify;

pub use arm::{ArmError, ArmState, Link, Move};
pub use complex_enum::{EnumError, FVector, TransitionGraph};
pub use coral::{CoralError, CoralSnake, CoralTableau, NumberedSnake, Step};
pub use par::Execution;
pub use pip::{CoralPip, CubeComplex, Ideal, Pip, PipError};
pub use planner::PlanError;

/// Crate-wide error, used by front ends that mix several modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arm(#[from] ArmError),
    #[error(transparent)]
    Coral(#[from] CoralError),
    #[error(transparent)]
    Pip(#[from] PipError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Enum(#[from] EnumError),
}
