use super::{MoveSet, OccupationGame, PositionSet, SolveConfig, Solver};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    First,
    Second,
}

impl Player {
    pub fn index(self) -> usize {
        match self {
            Player::First => 0,
            Player::Second => 1,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::First => Player::Second,
            Player::Second => Player::First,
        }
    }

    /// Player to move after `plies` moves from the start.
    pub fn after(plies: usize) -> Player {
        if plies.is_multiple_of(2) {
            Player::First
        } else {
            Player::Second
        }
    }
}

/// A complete play `A_0 → A_1 → … → A_n` ending where no move is admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTrace {
    pub positions: Vec<PositionSet>,
    pub moves: Vec<MoveSet>,
    pub loser: Player,
}

impl GameTrace {
    pub fn final_position(&self) -> PositionSet {
        *self.positions.last().expect("trace holds at least the start")
    }
}

/// Chooses a move for the player to move. Called only at positions that
/// have at least one admissible move.
pub trait Policy {
    fn choose(&mut self, game: &OccupationGame, position: PositionSet) -> Result<MoveSet>;
}

impl<F> Policy for F
where
    F: FnMut(&OccupationGame, PositionSet) -> Result<MoveSet>,
{
    fn choose(&mut self, game: &OccupationGame, position: PositionSet) -> Result<MoveSet> {
        self(game, position)
    }
}

/// Plays a winning move when one exists, otherwise the first admissible move.
#[derive(Clone, Copy, Debug, Default)]
pub struct OptimalPolicy {
    pub config: SolveConfig,
}

impl Policy for OptimalPolicy {
    fn choose(&mut self, game: &OccupationGame, position: PositionSet) -> Result<MoveSet> {
        let mut solver = Solver::new(game, self.config)?;
        if let Some(m) = solver.best_move(position)? {
            return Ok(m);
        }
        game.admissible_moves(position)?
            .first()
            .copied()
            .ok_or(Error::Internal("policy consulted at a terminal position".into()))
    }
}

/// Always plays the first admissible move in canonical order.
#[derive(Clone, Copy, Debug, Default)]
pub struct FirstMovePolicy;

impl Policy for FirstMovePolicy {
    fn choose(&mut self, game: &OccupationGame, position: PositionSet) -> Result<MoveSet> {
        game.admissible_moves(position)?
            .first()
            .copied()
            .ok_or(Error::Internal("policy consulted at a terminal position".into()))
    }
}

/// Plays the game from its start until a position without admissible moves.
pub fn playout(game: &OccupationGame, first: &mut dyn Policy, second: &mut dyn Policy) -> Result<GameTrace> {
    let mut position = game.start;
    let mut positions = vec![position];
    let mut moves = Vec::new();
    while !game.admissible_moves(position)?.is_empty() {
        let policy: &mut dyn Policy = match Player::after(moves.len()) {
            Player::First => &mut *first,
            Player::Second => &mut *second,
        };
        let sigma = policy.choose(game, position)?;
        game.check_move(position, sigma).map_err(Error::Inadmissible)?;
        position = position.difference(sigma);
        positions.push(position);
        moves.push(sigma);
    }
    Ok(GameTrace {
        positions,
        loser: Player::after(moves.len()),
        moves,
    })
}
