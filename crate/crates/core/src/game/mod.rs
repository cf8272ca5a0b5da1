//! The generic occupation-game model.
//!
//! A game is a ground set `X`, a family `S` of admissible positions and a
//! family `O` of nonempty moves. A move `σ` is playable at `A` when `σ ⊆ A`
//! and `A − σ ∈ S`; the player who faces a position without playable moves
//! loses.

mod set;
mod solve;
mod trace;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use set::{for_each_subset_of_size, ElementSet, Indices, MoveSet, PositionSet, MAX_ELEMENTS};
pub use solve::{best_move, truth, SolveConfig, Solver, TruthValue, DEFAULT_SOLVE_CAP};
pub use trace::{playout, FirstMovePolicy, GameTrace, OptimalPolicy, Player, Policy};

use crate::error::{Error, Rejection, Result};

/// The ordered, labeled elements of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroundSet {
    labels: Vec<String>,
    regions: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        GroundSet {
            labels: labels.into_iter().map(Into::into).collect(),
            regions: None,
        }
    }

    /// Attaches one region tag per element (used for display and embeddings).
    pub fn with_regions<S: Into<String>>(mut self, regions: impl IntoIterator<Item = S>) -> Self {
        self.regions = Some(regions.into_iter().map(Into::into).collect());
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn regions(&self) -> Option<&[String]> {
        self.regions.as_deref()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn region(&self, index: usize) -> Option<&str> {
        self.regions.as_ref().and_then(|r| r.get(index)).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Every element of the ground set.
    pub fn full(&self) -> ElementSet {
        ElementSet::prefix(self.len().min(MAX_ELEMENTS))
    }

    /// Elements carrying the given region tag.
    pub fn region_set(&self, region: &str) -> ElementSet {
        match &self.regions {
            Some(tags) => tags
                .iter()
                .enumerate()
                .filter(|(_, t)| *t == region)
                .map(|(i, _)| i)
                .collect(),
            None => ElementSet::EMPTY,
        }
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<ElementSet> {
        labels
            .into_iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            })
            .collect()
    }

    pub fn labels_of(&self, set: ElementSet) -> Vec<&str> {
        set.indices().map(|i| self.label(i)).collect()
    }
}

/// The state family `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateFamily {
    /// Every subset of the ground set.
    All,
    /// A finite list of positions.
    Explicit(Vec<PositionSet>),
    /// Positions `A` with `0 ≤ |A∩W| − |A∩V| ≤ 1`. Membership is a predicate;
    /// the family is never enumerated.
    Band { w_region: ElementSet, v_region: ElementSet },
}

impl StateFamily {
    pub fn contains(&self, position: PositionSet) -> bool {
        match self {
            StateFamily::All => true,
            StateFamily::Explicit(sets) => sets.contains(&position),
            StateFamily::Band { w_region, v_region } => {
                let w = position.intersection(*w_region).len();
                let v = position.intersection(*v_region).len();
                w >= v && w - v <= 1
            }
        }
    }
}

/// A move family described by a rule rather than a list.
///
/// `candidates` must push exactly the members of `O` that are subsets of
/// `position`; the game filters them by state membership and orders them.
pub trait MoveRule: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;
    fn contains(&self, sigma: MoveSet) -> bool;
    fn candidates(&self, position: PositionSet, out: &mut Vec<MoveSet>);
}

/// The move family `O`.
#[derive(Clone, Debug)]
pub enum MoveFamily {
    /// Finite list of moves, kept in canonical order.
    Explicit(Vec<MoveSet>),
    Structured(Arc<dyn MoveRule>),
}

impl PartialEq for MoveFamily {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MoveFamily::Explicit(a), MoveFamily::Explicit(b)) => a == b,
            (MoveFamily::Structured(a), MoveFamily::Structured(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl MoveFamily {
    pub fn contains(&self, sigma: MoveSet) -> bool {
        match self {
            MoveFamily::Explicit(moves) => moves.contains(&sigma),
            MoveFamily::Structured(rule) => rule.contains(sigma),
        }
    }
}

/// One failed well-formedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateLabel(String),
    TooManyElements(usize),
    RegionTagCount { labels: usize, tags: usize },
    StateOutOfGround(usize),
    DuplicateState(usize),
    BandOutOfGround,
    BandRegionsOverlap,
    EmptyMove(usize),
    MoveOutOfGround(usize),
    DuplicateMove(usize),
    StartOutOfGround,
    StartNotInStates,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLabel(l) => write!(f, "duplicate label {l:?}"),
            Violation::TooManyElements(n) => {
                write!(f, "ground set has {n} elements, at most {MAX_ELEMENTS} supported")
            }
            Violation::RegionTagCount { labels, tags } => {
                write!(f, "{tags} region tags for {labels} elements")
            }
            Violation::StateOutOfGround(i) => write!(f, "state #{i} is not a subset of X"),
            Violation::DuplicateState(i) => write!(f, "state #{i} is listed twice"),
            Violation::BandOutOfGround => write!(f, "band region is not a subset of X"),
            Violation::BandRegionsOverlap => write!(f, "band regions are not disjoint"),
            Violation::EmptyMove(i) => write!(f, "move #{i} is the empty set"),
            Violation::MoveOutOfGround(i) => write!(f, "move #{i} is not a subset of X"),
            Violation::DuplicateMove(i) => write!(f, "move #{i} is listed twice"),
            Violation::StartOutOfGround => write!(f, "start is not a subset of X"),
            Violation::StartNotInStates => write!(f, "start is not in S"),
        }
    }
}

/// The triple `(X, S, O)` together with a start position.
#[derive(Clone, Debug, PartialEq)]
pub struct OccupationGame {
    pub ground: GroundSet,
    pub states: StateFamily,
    pub moves: MoveFamily,
    pub start: PositionSet,
}

impl OccupationGame {
    /// Builds a game, putting explicit lists in canonical order, and rejects
    /// it if any well-formedness check fails.
    pub fn new(ground: GroundSet, states: StateFamily, moves: MoveFamily, start: PositionSet) -> Result<Self> {
        let mut game = OccupationGame {
            ground,
            states,
            moves,
            start,
        };
        game.canonicalize();
        let violations = game.validate();
        if violations.is_empty() {
            Ok(game)
        } else {
            Err(Error::InvalidGame(violations))
        }
    }

    fn canonicalize(&mut self) {
        if let StateFamily::Explicit(sets) = &mut self.states {
            sets.sort_by(ElementSet::canonical_cmp);
        }
        if let MoveFamily::Explicit(moves) = &mut self.moves {
            moves.sort_by(ElementSet::canonical_cmp);
        }
    }

    /// Lists every violated invariant; empty when the game is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.ground.len();
        if n > MAX_ELEMENTS {
            out.push(Violation::TooManyElements(n));
        }
        let mut seen = HashSet::new();
        for label in self.ground.labels() {
            if !seen.insert(label.as_str()) {
                out.push(Violation::DuplicateLabel(label.clone()));
            }
        }
        if let Some(tags) = self.ground.regions() {
            if tags.len() != n {
                out.push(Violation::RegionTagCount {
                    labels: n,
                    tags: tags.len(),
                });
            }
        }
        let full = self.ground.full();
        match &self.states {
            StateFamily::All => {}
            StateFamily::Explicit(sets) => {
                let mut seen = HashSet::new();
                for (i, s) in sets.iter().enumerate() {
                    if !s.is_subset(full) {
                        out.push(Violation::StateOutOfGround(i));
                    }
                    if !seen.insert(*s) {
                        out.push(Violation::DuplicateState(i));
                    }
                }
            }
            StateFamily::Band { w_region, v_region } => {
                if !w_region.is_subset(full) || !v_region.is_subset(full) {
                    out.push(Violation::BandOutOfGround);
                }
                if !w_region.is_disjoint(*v_region) {
                    out.push(Violation::BandRegionsOverlap);
                }
            }
        }
        if let MoveFamily::Explicit(moves) = &self.moves {
            let mut seen = HashSet::new();
            for (i, m) in moves.iter().enumerate() {
                if m.is_empty() {
                    out.push(Violation::EmptyMove(i));
                }
                if !m.is_subset(full) {
                    out.push(Violation::MoveOutOfGround(i));
                }
                if !seen.insert(*m) {
                    out.push(Violation::DuplicateMove(i));
                }
            }
        }
        if !self.start.is_subset(full) {
            out.push(Violation::StartOutOfGround);
        }
        if !self.states.contains(self.start) {
            out.push(Violation::StartNotInStates);
        }
        out
    }

    pub fn is_state(&self, position: PositionSet) -> bool {
        position.is_subset(self.ground.full()) && self.states.contains(position)
    }

    fn require_state(&self, position: PositionSet) -> Result<()> {
        if !position.is_subset(self.ground.full()) {
            Err(Error::OutOfGround)
        } else if !self.states.contains(position) {
            Err(Error::PositionNotInStates)
        } else {
            Ok(())
        }
    }

    /// The admissible moves at `position`, in canonical order.
    pub fn admissible_moves(&self, position: PositionSet) -> Result<Vec<MoveSet>> {
        self.require_state(position)?;
        Ok(self.admissible_unchecked(position))
    }

    pub(crate) fn admissible_unchecked(&self, position: PositionSet) -> Vec<MoveSet> {
        let keep =
            |m: &MoveSet| !m.is_empty() && m.is_subset(position) && self.states.contains(position.difference(*m));
        match &self.moves {
            MoveFamily::Explicit(moves) => moves.iter().copied().filter(keep).collect(),
            MoveFamily::Structured(rule) => {
                let mut out = Vec::new();
                rule.candidates(position, &mut out);
                out.retain(keep);
                out.sort_by(ElementSet::canonical_cmp);
                out.dedup();
                out
            }
        }
    }

    /// Checks a proposed move, naming the first clause it breaks.
    pub fn check_move(&self, position: PositionSet, sigma: MoveSet) -> Result<(), Rejection> {
        if !sigma.is_subset(position) {
            return Err(Rejection::NotASubset);
        }
        if sigma.is_empty() || !self.moves.contains(sigma) {
            return Err(Rejection::NotInMoveFamily);
        }
        if !self.states.contains(position.difference(sigma)) {
            return Err(Rejection::ResultNotInStates);
        }
        Ok(())
    }

    /// Applies `permutation` (element `i` becomes element `permutation[i]`)
    /// to every part of the game.
    pub fn relabel(&self, permutation: &[usize]) -> Result<OccupationGame> {
        let n = self.ground.len();
        if permutation.len() != n {
            return Err(Error::NonBijective);
        }
        let mut hit = vec![false; n];
        for &p in permutation {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::NonBijective);
            }
        }
        let map = |s: ElementSet| -> ElementSet { s.indices().map(|i| permutation[i]).collect() };
        let mut labels = vec![String::new(); n];
        for (i, l) in self.ground.labels().iter().enumerate() {
            labels[permutation[i]] = l.clone();
        }
        let mut ground = GroundSet::new(labels);
        if let Some(tags) = self.ground.regions() {
            let mut moved = vec![String::new(); n];
            for (i, t) in tags.iter().enumerate() {
                moved[permutation[i]] = t.clone();
            }
            ground = ground.with_regions(moved);
        }
        let states = match &self.states {
            StateFamily::All => StateFamily::All,
            StateFamily::Explicit(sets) => StateFamily::Explicit(sets.iter().copied().map(map).collect()),
            StateFamily::Band { w_region, v_region } => StateFamily::Band {
                w_region: map(*w_region),
                v_region: map(*v_region),
            },
        };
        let moves = match &self.moves {
            MoveFamily::Explicit(moves) => MoveFamily::Explicit(moves.iter().copied().map(map).collect()),
            MoveFamily::Structured(rule) => {
                return Err(Error::Unsupported(format!(
                    "relabeling structured move family {}",
                    rule.name()
                )))
            }
        };
        OccupationGame::new(ground, states, moves, map(self.start))
    }
}

/// `A − σ`, failing when `σ ⊄ A`.
pub fn apply_move(position: PositionSet, sigma: MoveSet) -> Result<PositionSet> {
    if sigma.is_subset(position) {
        Ok(position.difference(sigma))
    } else {
        Err(Error::NotASubset)
    }
}
