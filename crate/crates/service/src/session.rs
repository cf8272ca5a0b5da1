use std::sync::Arc;

use occupation_core::classical::{
    apply_pile_move, check_pile_move, pile_moves, PileMove, PileSolver, PileVariant, DEFAULT_PILE_CAP,
};
use occupation_core::game::DEFAULT_SOLVE_CAP;
use occupation_core::reduction::{build_gadget, GadgetGame, GadgetSolver, GadgetState, SubsetSumInstance};
use occupation_core::{Error as CoreError, OccupationGame, PositionSet, Rejection, SolveConfig, Solver, TruthValue};

use crate::error::ServiceError;
use crate::wire::{
    CreateRequest, ExplicitWire, GameSpec, HistoryEntry, Mover, PileWire, SessionView, StateView, Status, Variant,
    WireMove,
};

/// Size bounds applied when a session is created.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub explicit_cap: usize,
    pub pile_cap: usize,
    pub gadget_max_piles: usize,
    pub gadget_l_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            explicit_cap: DEFAULT_SOLVE_CAP,
            pile_cap: DEFAULT_PILE_CAP,
            gadget_max_piles: 12,
            gadget_l_bound: 100_000,
        }
    }
}

/// The current position together with the rules that govern it.
#[derive(Clone, Debug)]
enum Board {
    Piles {
        variant: PileVariant,
        piles: Vec<usize>,
        cap: usize,
    },
    Gadget {
        game: GadgetGame,
        state: GadgetState,
    },
    Explicit {
        game: Arc<OccupationGame>,
        position: PositionSet,
        cap: usize,
    },
}

impl Board {
    fn from_spec(spec: &GameSpec, limits: &Limits) -> Result<Board, ServiceError> {
        let invalid = |e: CoreError| ServiceError::InvalidParameters(e.to_string());
        match spec {
            GameSpec::Nim { piles } | GameSpec::Subtraction { piles } => {
                let variant = match spec {
                    GameSpec::Nim { .. } => PileVariant::Nim,
                    _ => PileVariant::Subtraction,
                };
                let total: usize = piles.iter().sum();
                if total > limits.pile_cap {
                    return Err(invalid(CoreError::CapExceeded {
                        size: total,
                        cap: limits.pile_cap,
                    }));
                }
                Ok(Board::Piles {
                    variant,
                    piles: piles.clone(),
                    cap: limits.pile_cap,
                })
            }
            GameSpec::Gadget { weights, target } => {
                if weights.len() > limits.gadget_max_piles {
                    return Err(ServiceError::InvalidParameters(format!(
                        "{} weights, at most {} supported",
                        weights.len(),
                        limits.gadget_max_piles
                    )));
                }
                let instance =
                    SubsetSumInstance::with_bound(weights.clone(), *target, limits.gadget_l_bound).map_err(invalid)?;
                let game = build_gadget(&instance).map_err(invalid)?;
                let state = game.start();
                Ok(Board::Gadget { game, state })
            }
            GameSpec::Explicit { game } => {
                let game = game.to_game().map_err(invalid)?;
                if game.ground.len() > limits.explicit_cap {
                    return Err(invalid(CoreError::CapExceeded {
                        size: game.ground.len(),
                        cap: limits.explicit_cap,
                    }));
                }
                Ok(Board::Explicit {
                    position: game.start,
                    game: Arc::new(game),
                    cap: limits.explicit_cap,
                })
            }
        }
    }

    fn variant(&self) -> Variant {
        match self {
            Board::Piles {
                variant: PileVariant::Nim,
                ..
            } => Variant::Nim,
            Board::Piles { .. } => Variant::Subtraction,
            Board::Gadget { .. } => Variant::Gadget,
            Board::Explicit { .. } => Variant::Explicit,
        }
    }

    fn state_view(&self) -> StateView {
        match self {
            Board::Piles { piles, .. } => StateView::Piles { piles: piles.clone() },
            Board::Gadget { state, .. } => StateView::Gadget {
                v: state.v,
                w: state.w,
                l: state.l,
                piles: state.piles().collect(),
            },
            Board::Explicit { game, position, .. } => StateView::Explicit {
                elements: game
                    .ground
                    .labels_of(*position)
                    .into_iter()
                    .map(str::to_string)
                    .collect(),
            },
        }
    }

    fn legal_moves(&self) -> Result<Vec<WireMove>, ServiceError> {
        Ok(match self {
            Board::Piles { variant, piles, .. } => pile_moves(*variant, piles)
                .into_iter()
                .map(|m| {
                    WireMove::Pile(PileWire {
                        pile: m.pile,
                        take: m.take,
                    })
                })
                .collect(),
            Board::Gadget { game, state } => game.moves(state)?.into_iter().map(WireMove::Gadget).collect(),
            Board::Explicit { game, position, .. } => game
                .admissible_moves(*position)?
                .into_iter()
                .map(|m| explicit_wire(game, m))
                .collect(),
        })
    }

    fn truth(&self) -> Result<TruthValue, ServiceError> {
        Ok(match self {
            Board::Piles { variant, piles, cap } => PileSolver::new(*variant, *cap).truth(piles)?,
            Board::Gadget { game, state } => GadgetSolver::new(game).truth(state)?,
            Board::Explicit { game, position, cap } => {
                Solver::new(game, SolveConfig::with_cap(*cap))?.truth(*position)?
            }
        })
    }

    /// Validates `mv` for this board and applies it.
    fn play(&mut self, mv: &WireMove) -> Result<(), ServiceError> {
        match (self, mv) {
            (Board::Piles { variant, piles, .. }, WireMove::Pile(p)) => {
                let m = PileMove {
                    pile: p.pile,
                    take: p.take,
                };
                check_pile_move(*variant, piles, m)?;
                *piles = apply_pile_move(*variant, piles, m)?.into_inner();
            }
            (Board::Gadget { game, state }, WireMove::Gadget(m)) => {
                game.check_move(state, *m)?;
                *state = game.apply(state, *m)?;
            }
            (Board::Explicit { game, position, .. }, WireMove::Explicit(e)) => {
                let sigma = game.ground.set_of(&e.elements).map_err(|_| Rejection::NotASubset)?;
                game.check_move(*position, sigma)?;
                *position = position.difference(sigma);
            }
            _ => return Err(Rejection::NotInMoveFamily.into()),
        }
        Ok(())
    }

    /// A winning move when one exists, otherwise the first move in the
    /// variant's preferred order; `None` at terminal positions.
    fn engine_move(&self) -> Result<Option<WireMove>, ServiceError> {
        Ok(match self {
            Board::Piles { variant, piles, cap } => {
                let best = PileSolver::new(*variant, *cap).best_move(piles)?;
                best.or_else(|| pile_moves(*variant, piles).first().copied()).map(|m| {
                    WireMove::Pile(PileWire {
                        pile: m.pile,
                        take: m.take,
                    })
                })
            }
            Board::Gadget { game, state } => GadgetSolver::new(game).engine_move(state)?.map(WireMove::Gadget),
            Board::Explicit { game, position, cap } => {
                let mut solver = Solver::new(game, SolveConfig::with_cap(*cap))?;
                let m = match solver.best_move(*position)? {
                    Some(m) => Some(m),
                    None => game.admissible_moves(*position)?.first().copied(),
                };
                m.map(|m| explicit_wire(game, m))
            }
        })
    }
}

fn explicit_wire(game: &OccupationGame, m: PositionSet) -> WireMove {
    WireMove::Explicit(ExplicitWire {
        elements: game.ground.labels_of(m).into_iter().map(str::to_string).collect(),
    })
}

/// One human-versus-engine game. The engine answers every human move
/// immediately, so an unfinished session always waits on the human.
#[derive(Clone, Debug)]
pub struct Session {
    id: String,
    board: Board,
    to_move: Mover,
    status: Status,
    start_truth: TruthValue,
    truth: TruthValue,
    legal: Vec<WireMove>,
    history: Vec<HistoryEntry>,
}

impl Session {
    pub fn create(id: impl Into<String>, request: &CreateRequest, limits: &Limits) -> Result<Session, ServiceError> {
        let board = Board::from_spec(&request.game, limits)?;
        let start_truth = board.truth()?;
        let legal = board.legal_moves()?;
        let mut session = Session {
            id: id.into(),
            board,
            to_move: request.first,
            status: Status::InProgress,
            start_truth,
            truth: start_truth,
            legal,
            history: Vec::new(),
        };
        session.settle();
        if session.status == Status::InProgress && session.to_move == Mover::Engine {
            session.engine_turn()?;
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn to_move(&self) -> Mover {
        self.to_move
    }

    pub fn start_truth(&self) -> TruthValue {
        self.start_truth
    }

    pub fn truth(&self) -> TruthValue {
        self.truth
    }

    pub fn legal_moves(&self) -> &[WireMove] {
        &self.legal
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn view(&self) -> SessionView {
        SessionView {
            id: self.id.clone(),
            variant: self.board.variant(),
            state: self.board.state_view(),
            to_move: self.to_move,
            status: self.status,
            start_truth: self.start_truth.bit(),
            truth: self.truth.bit(),
            history: self.history.clone(),
            legal_moves: self.legal.clone(),
        }
    }

    /// Applies the human's move and, if the game goes on, the engine's reply.
    pub fn submit(&mut self, mv: WireMove) -> Result<Option<WireMove>, ServiceError> {
        if self.status != Status::InProgress {
            return Err(ServiceError::Finished);
        }
        if self.to_move != Mover::Human {
            return Err(ServiceError::OutOfTurn);
        }
        self.apply(Mover::Human, mv)?;
        if self.status == Status::InProgress {
            return self.engine_turn().map(Some);
        }
        Ok(None)
    }

    fn engine_turn(&mut self) -> Result<WireMove, ServiceError> {
        let reply = self.board.engine_move()?.ok_or_else(|| {
            ServiceError::Engine(CoreError::Internal(
                "engine asked to move at a terminal position".into(),
            ))
        })?;
        self.apply(Mover::Engine, reply.clone())?;
        Ok(reply)
    }

    fn apply(&mut self, by: Mover, mv: WireMove) -> Result<(), ServiceError> {
        self.board.play(&mv)?;
        self.history.push(HistoryEntry { by, mv });
        self.to_move = by.other();
        self.truth = self.board.truth()?;
        self.legal = self.board.legal_moves()?;
        self.settle();
        Ok(())
    }

    /// Normal play: whoever faces a position without moves has lost.
    fn settle(&mut self) {
        if self.legal.is_empty() {
            self.status = match self.to_move {
                Mover::Human => Status::HumanLost,
                Mover::Engine => Status::HumanWon,
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use occupation_core::reduction::GadgetMove;

    fn nim(piles: &[usize], first: Mover) -> Session {
        let req = CreateRequest {
            game: GameSpec::Nim { piles: piles.to_vec() },
            first,
        };
        Session::create("t", &req, &Limits::default()).unwrap()
    }

    fn take(pile: usize, take: usize) -> WireMove {
        WireMove::Pile(PileWire { pile, take })
    }

    #[test]
    fn start_truth_is_reported() {
        assert_eq!(nim(&[3, 5], Mover::Human).start_truth(), TruthValue::One);
        assert_eq!(nim(&[1, 1], Mover::Human).start_truth(), TruthValue::Zero);
    }

    #[test]
    fn fresh_single_pile_lists_both_takes() {
        let s = nim(&[2], Mover::Human);
        assert_eq!(s.legal_moves(), &[take(0, 1), take(0, 2)]);
    }

    #[test]
    fn engine_answers_and_human_loses() {
        let mut s = nim(&[1, 1], Mover::Human);
        let reply = s.submit(take(0, 1)).unwrap();
        assert_eq!(reply, Some(take(1, 1)));
        assert_eq!(s.status(), Status::HumanLost);
        assert_eq!(s.to_move(), Mover::Human);
        assert!(s.legal_moves().is_empty());
        assert!(matches!(s.submit(take(0, 1)), Err(ServiceError::Finished)));
    }

    #[test]
    fn human_wins_by_emptying_the_board() {
        let mut s = nim(&[3], Mover::Human);
        assert_eq!(s.submit(take(0, 3)).unwrap(), None);
        assert_eq!(s.status(), Status::HumanWon);
    }

    #[test]
    fn gadget_engine_opens_with_a_pool_draw_from_a_witness() {
        let req = CreateRequest {
            game: GameSpec::Gadget {
                weights: vec![1, 2],
                target: 3,
            },
            first: Mover::Engine,
        };
        let s = Session::create("g", &req, &Limits::default()).unwrap();
        assert_eq!(s.history().len(), 1);
        assert_eq!(s.history()[0].by, Mover::Engine);
        assert_eq!(
            s.history()[0].mv,
            WireMove::Gadget(GadgetMove::O1 { pile: 0, l_take: 4 })
        );
        // The human now faces w = v + 1 and can only answer with O2.
        assert_eq!(s.legal_moves(), &[WireMove::Gadget(GadgetMove::O2)]);
    }

    #[test]
    fn gadget_o2_at_balanced_state_names_the_state_clause() {
        let req = CreateRequest {
            game: GameSpec::Gadget {
                weights: vec![1, 2],
                target: 3,
            },
            first: Mover::Human,
        };
        let mut s = Session::create("g", &req, &Limits::default()).unwrap();
        let err = s.submit(WireMove::Gadget(GadgetMove::O2)).unwrap_err();
        assert!(matches!(err, ServiceError::Inadmissible(Rejection::ResultNotInStates)));
        assert!(s.history().is_empty());
    }

    #[test]
    fn wrong_shape_is_not_in_the_move_family() {
        let mut s = nim(&[2], Mover::Human);
        let err = s.submit(WireMove::Gadget(GadgetMove::O2)).unwrap_err();
        assert!(matches!(err, ServiceError::Inadmissible(Rejection::NotInMoveFamily)));
        let err = s.submit(take(0, 3)).unwrap_err();
        assert!(matches!(err, ServiceError::Inadmissible(Rejection::NotASubset)));
    }

    #[test]
    fn limits_are_enforced() {
        let req = CreateRequest {
            game: GameSpec::Nim { piles: vec![40, 40] },
            first: Mover::Human,
        };
        assert!(matches!(
            Session::create("x", &req, &Limits::default()),
            Err(ServiceError::InvalidParameters(_))
        ));
        let req = CreateRequest {
            game: GameSpec::Gadget {
                weights: vec![0],
                target: 1,
            },
            first: Mover::Human,
        };
        assert!(matches!(
            Session::create("x", &req, &Limits::default()),
            Err(ServiceError::InvalidParameters(_))
        ));
    }

    #[test]
    fn terminal_start_is_settled_immediately() {
        let s = nim(&[0, 0], Mover::Engine);
        assert_eq!(s.status(), Status::HumanWon);
        let s = nim(&[], Mover::Human);
        assert_eq!(s.status(), Status::HumanLost);
    }
}
