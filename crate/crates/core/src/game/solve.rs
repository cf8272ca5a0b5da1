use std::collections::HashMap;
use std::fmt;

use super::{MoveSet, OccupationGame, PositionSet};
use crate::error::{Error, Result};

/// Default bound on ground-set size for explicit solving (at most 2^24 memo entries).
pub const DEFAULT_SOLVE_CAP: usize = 24;

/// Perfect-play value of a position for the player about to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    /// The player to move loses.
    Zero,
    /// The player to move has a winning strategy.
    One,
}

impl TruthValue {
    pub fn from_win(win: bool) -> Self {
        if win {
            TruthValue::One
        } else {
            TruthValue::Zero
        }
    }

    pub fn is_win(self) -> bool {
        self == TruthValue::One
    }

    pub fn bit(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// Largest ground set the explicit solver accepts.
    pub cap: usize,
    /// Optional bound on memo entries; exceeding it fails the solve.
    pub memo_limit: Option<usize>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            cap: DEFAULT_SOLVE_CAP,
            memo_limit: None,
        }
    }
}

impl SolveConfig {
    pub fn with_cap(cap: usize) -> Self {
        SolveConfig {
            cap,
            ..SolveConfig::default()
        }
    }
}

/// Exact memoized solver over one game. The memo is owned by the solver
/// and lives as long as it does.
pub struct Solver<'g> {
    game: &'g OccupationGame,
    config: SolveConfig,
    memo: HashMap<u64, bool>,
}

impl<'g> Solver<'g> {
    pub fn new(game: &'g OccupationGame, config: SolveConfig) -> Result<Self> {
        if game.ground.len() > config.cap {
            return Err(Error::CapExceeded {
                size: game.ground.len(),
                cap: config.cap,
            });
        }
        Ok(Solver {
            game,
            config,
            memo: HashMap::new(),
        })
    }

    pub fn game(&self) -> &'g OccupationGame {
        self.game
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn truth(&mut self, position: PositionSet) -> Result<TruthValue> {
        self.game.admissible_moves(position)?;
        self.wins(position).map(TruthValue::from_win)
    }

    /// First winning move in canonical order, or `None` from a lost position.
    pub fn best_move(&mut self, position: PositionSet) -> Result<Option<MoveSet>> {
        for sigma in self.game.admissible_moves(position)? {
            if !self.wins(position.difference(sigma))? {
                return Ok(Some(sigma));
            }
        }
        Ok(None)
    }

    // Positions reached by admissible moves are members of S, so the
    // recursion skips re-validating them.
    fn wins(&mut self, position: PositionSet) -> Result<bool> {
        if let Some(&known) = self.memo.get(&position.bits()) {
            return Ok(known);
        }
        let mut win = false;
        for sigma in self.game.admissible_unchecked(position) {
            if !self.wins(position.difference(sigma))? {
                win = true;
                break;
            }
        }
        if let Some(limit) = self.config.memo_limit {
            if self.memo.len() >= limit {
                return Err(Error::MemoLimitExceeded { limit });
            }
        }
        self.memo.insert(position.bits(), win);
        Ok(win)
    }
}

/// Truth value of `position` with a fresh memo.
pub fn truth(game: &OccupationGame, position: PositionSet, config: SolveConfig) -> Result<TruthValue> {
    Solver::new(game, config)?.truth(position)
}

/// Winning move at `position` with a fresh memo.
pub fn best_move(game: &OccupationGame, position: PositionSet, config: SolveConfig) -> Result<Option<MoveSet>> {
    Solver::new(game, config)?.best_move(position)
}
