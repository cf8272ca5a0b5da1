use std::fmt;

use crate::game::Violation;

/// Why a proposed move was refused at a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rejection {
    /// The move removes elements the position does not hold.
    NotASubset,
    /// The move is not a member of the game's move family.
    NotInMoveFamily,
    /// Removing the move leaves a position outside the state family.
    ResultNotInStates,
}

impl Rejection {
    /// Stable clause name used on the wire and in CLI output.
    pub fn clause(self) -> &'static str {
        match self {
            Rejection::NotASubset => "not_a_subset",
            Rejection::NotInMoveFamily => "not_in_O",
            Rejection::ResultNotInStates => "not_in_S",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::NotASubset => "move is not a subset of the position",
            Rejection::NotInMoveFamily => "move is not in the move family",
            Rejection::ResultNotInStates => "resulting position is not in the state family",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("position is not a member of the state family")]
    PositionNotInStates,
    #[error("set refers to elements outside the ground set")]
    OutOfGround,
    #[error("move is not a subset of the position")]
    NotASubset,
    #[error("inadmissible move: {0}")]
    Inadmissible(Rejection),
    #[error("size {size} exceeds the solve cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("memo table exceeded its limit of {limit} entries")]
    MemoLimitExceeded { limit: usize },
    #[error("invalid game: {}", join_violations(.0))]
    InvalidGame(Vec<Violation>),
    #[error("relabeling is not a bijection on the ground set")]
    NonBijective,
    #[error("invalid subset sum instance: {0}")]
    InvalidInstance(String),
    #[error("invalid gadget state: {0}")]
    InvalidState(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
