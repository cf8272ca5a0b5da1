//! Occupation games: a ground set `X`, a family of admissible positions `S`
//! and a family of moves `O`, played under the normal-play rule.
//!
//! The crate provides an exact memoized solver for explicitly represented
//! games, closed forms for Nim and the {1,2}-subtraction game, and the
//! Subset Sum gadget whose start position is won exactly when the instance
//! has a solution.

pub mod classical;
pub mod error;
pub mod format;
pub mod game;
pub mod reduction;

pub use error::{Error, Rejection, Result};
pub use game::{
    apply_move, ElementSet, GroundSet, MoveFamily, MoveRule, MoveSet, OccupationGame, PositionSet, SolveConfig, Solver,
    StateFamily, TruthValue, Violation,
};
