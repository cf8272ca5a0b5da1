//! Subset Sum as an occupation game.
//!
//! For weights `t_1..t_n` and target `t` the gadget has regions `V` and `W`
//! of size `n`, a pool `L` of `2nt + n − 1` elements and one pile `Y_i` of
//! size `t_i` per weight. Positions must satisfy `0 ≤ |A∩W| − |A∩V| ≤ 1`.
//! A move either removes one `V` element, one whole pile `Y_j` and either
//! nothing or exactly `2n·t_j` elements of `L` (family O1), or removes one
//! `W` element and one `L` element (family O2). The player to move at the
//! full ground set wins exactly when some piles sum to `t`.
//!
//! Elements inside each region are interchangeable and O1 only ever removes
//! whole piles, so reachable positions are described by the counts
//! `(v, w, l)` plus the set of piles still present.

mod explicit;
mod oracle;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use explicit::{gadget_to_explicit, position_of, state_of};
pub use oracle::subset_sum_oracle;

use crate::error::{Error, Rejection, Result};
use crate::game::TruthValue;

/// Default bound on `|L|` accepted by instance validation.
pub const DEFAULT_L_BOUND: u64 = 1_000_000;

/// Weights `t_1..t_n` and target `t`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetSumInstance {
    weights: Vec<u64>,
    target: u64,
}

impl SubsetSumInstance {
    pub fn new(weights: Vec<u64>, target: u64) -> Result<Self> {
        Self::with_bound(weights, target, DEFAULT_L_BOUND)
    }

    /// Like [`SubsetSumInstance::new`] with a custom bound on `|L|`.
    pub fn with_bound(weights: Vec<u64>, target: u64, l_bound: u64) -> Result<Self> {
        let instance = SubsetSumInstance { weights, target };
        instance.check(l_bound)?;
        Ok(instance)
    }

    fn check(&self, l_bound: u64) -> Result<u64> {
        let invalid = |msg: String| Err(Error::InvalidInstance(msg));
        let n = self.weights.len();
        if n == 0 {
            return invalid("at least one weight is required".into());
        }
        if n > 64 {
            return invalid(format!("{n} weights, at most 64 supported"));
        }
        if let Some(i) = self.weights.iter().position(|&w| w == 0) {
            return invalid(format!("weight #{} is zero; weights must be positive", i + 1));
        }
        if self.target == 0 {
            return invalid("target must be positive".into());
        }
        let n = n as u64;
        let l = (2 * n)
            .checked_mul(self.target)
            .and_then(|x| x.checked_add(n - 1))
            .filter(|&l| l <= l_bound);
        match l {
            Some(l) => Ok(l),
            None => invalid(format!("pool size 2nt+n-1 exceeds the bound of {l_bound} elements")),
        }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl fmt::Display for SubsetSumInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "weights [{}], target {}", w.join(","), self.target)
    }
}

/// The constructed game with its region sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGame {
    instance: SubsetSumInstance,
    l_size: u64,
}

impl GadgetGame {
    pub fn instance(&self) -> &SubsetSumInstance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.len()
    }

    /// `|V| = |W| = n`.
    pub fn v_size(&self) -> usize {
        self.n()
    }

    pub fn w_size(&self) -> usize {
        self.n()
    }

    /// `|L| = 2nt + n − 1`.
    pub fn l_size(&self) -> u64 {
        self.l_size
    }

    /// `|Y_i| = t_i`.
    pub fn y_sizes(&self) -> &[u64] {
        self.instance.weights()
    }

    /// `|X| = 2n + |L| + Σ t_i`, saturating.
    pub fn ground_size(&self) -> u64 {
        self.y_sizes()
            .iter()
            .fold((2 * self.n()) as u64 + self.l_size, |a, &t| a.saturating_add(t))
    }

    /// Elements of `L` an O1 move on pile `j` removes when it takes from `L`.
    pub fn pile_take(&self, pile: usize) -> u64 {
        2 * self.n() as u64 * self.instance.weights[pile]
    }

    pub fn all_piles(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    /// The full ground set.
    pub fn start(&self) -> GadgetState {
        GadgetState {
            v: self.n(),
            w: self.n(),
            l: self.l_size,
            mask: self.all_piles(),
        }
    }

    /// Set when the target exceeds the total weight: the answer is trivially
    /// false but `|L|` still grows with the target.
    pub fn size_warning(&self) -> Option<String> {
        let total: u64 = self.y_sizes().iter().fold(0u64, |a, &t| a.saturating_add(t));
        (self.instance.target > total).then(|| {
            format!(
                "target {} exceeds the total weight {}; the gadget still allocates {} pool elements",
                self.instance.target, total, self.l_size
            )
        })
    }

    pub fn validate_state(&self, s: &GadgetState) -> Result<()> {
        let n = self.n();
        let bad = |msg: String| Err(Error::InvalidState(msg));
        if s.v > n || s.w > n {
            return bad(format!("v={} w={} exceed n={n}", s.v, s.w));
        }
        if s.l > self.l_size {
            return bad(format!("l={} exceeds |L|={}", s.l, self.l_size));
        }
        if s.w < s.v || s.w - s.v > 1 {
            return bad(format!("w-v={} outside {{0,1}}", s.w as i64 - s.v as i64));
        }
        if s.mask & !self.all_piles() != 0 {
            return bad("pile mask names piles beyond n".into());
        }
        Ok(())
    }

    /// Admissible moves at `s`: pile ascending, larger `l_take` first.
    pub fn moves(&self, s: &GadgetState) -> Result<Vec<GadgetMove>> {
        self.validate_state(s)?;
        Ok(self.moves_unchecked(s))
    }

    fn moves_unchecked(&self, s: &GadgetState) -> Vec<GadgetMove> {
        let mut out = Vec::new();
        if s.w == s.v {
            if s.v >= 1 {
                for pile in s.piles() {
                    let take = self.pile_take(pile);
                    if take <= s.l {
                        out.push(GadgetMove::O1 { pile, l_take: take });
                    }
                    out.push(GadgetMove::O1 { pile, l_take: 0 });
                }
            }
        } else if s.l >= 1 {
            out.push(GadgetMove::O2);
        }
        out
    }

    /// Checks `m` at `s`, naming the violated clause.
    pub fn check_move(&self, s: &GadgetState, m: GadgetMove) -> Result<(), Rejection> {
        match m {
            GadgetMove::O1 { pile, l_take } => {
                if pile >= self.n() || (l_take != 0 && l_take != self.pile_take(pile)) {
                    return Err(Rejection::NotInMoveFamily);
                }
                if s.v == 0 || !s.has_pile(pile) || l_take > s.l {
                    return Err(Rejection::NotASubset);
                }
                if s.w != s.v {
                    return Err(Rejection::ResultNotInStates);
                }
            }
            GadgetMove::O2 => {
                if s.w == 0 || s.l == 0 {
                    return Err(Rejection::NotASubset);
                }
                if s.w == s.v {
                    return Err(Rejection::ResultNotInStates);
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, s: &GadgetState, m: GadgetMove) -> Result<GadgetState> {
        self.validate_state(s)?;
        self.check_move(s, m).map_err(Error::Inadmissible)?;
        Ok(s.after(m))
    }
}

/// Builds the gadget for `instance`.
pub fn build_gadget(instance: &SubsetSumInstance) -> Result<GadgetGame> {
    let l_size = instance.check(u64::MAX)?;
    Ok(GadgetGame {
        instance: instance.clone(),
        l_size,
    })
}

/// Count description of a gadget position: `v = |A∩V|`, `w = |A∩W|`,
/// `l = |A∩L|`, and bit `i` of `mask` set while pile `Y_i` is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GadgetState {
    pub v: usize,
    pub w: usize,
    pub l: u64,
    pub mask: u64,
}

impl GadgetState {
    pub fn has_pile(&self, pile: usize) -> bool {
        pile < 64 && self.mask >> pile & 1 == 1
    }

    /// Present pile indices, ascending.
    pub fn piles(&self) -> impl Iterator<Item = usize> {
        let mask = self.mask;
        (0..64).filter(move |i| mask >> i & 1 == 1)
    }

    fn after(&self, m: GadgetMove) -> GadgetState {
        match m {
            GadgetMove::O1 { pile, l_take } => GadgetState {
                v: self.v - 1,
                w: self.w,
                l: self.l - l_take,
                mask: self.mask & !(1u64 << pile),
            },
            GadgetMove::O2 => GadgetState {
                v: self.v,
                w: self.w - 1,
                l: self.l - 1,
                mask: self.mask,
            },
        }
    }
}

impl fmt::Display for GadgetState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let piles: Vec<String> = self.piles().map(|p| p.to_string()).collect();
        write!(
            f,
            "v={} w={} l={} piles={{{}}}",
            self.v,
            self.w,
            self.l,
            piles.join(",")
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum GadgetMove {
    /// One `V` element, the whole pile `Y_pile`, and `l_take ∈ {0, 2n·t_pile}` from `L`.
    O1 { pile: usize, l_take: u64 },
    /// One `W` element and one `L` element.
    O2,
}

impl GadgetMove {
    /// Rank under the winning-line preference: O1 moves that draw from `L`
    /// first, then O1 moves that leave `L` alone, each by pile index.
    fn preference(&self) -> (u8, usize) {
        match *self {
            GadgetMove::O1 { pile, l_take } if l_take > 0 => (0, pile),
            GadgetMove::O1 { pile, .. } => (1, pile),
            GadgetMove::O2 => (2, 0),
        }
    }
}

impl fmt::Display for GadgetMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetMove::O1 { pile, l_take } => write!(f, "O1(pile={pile}, l_take={l_take})"),
            GadgetMove::O2 => write!(f, "O2"),
        }
    }
}

/// Moves at `s` in preference order.
pub fn preference_order(mut moves: Vec<GadgetMove>) -> Vec<GadgetMove> {
    moves.sort_by_key(GadgetMove::preference);
    moves
}

/// Pile indices whose weights sum to the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub subset: Vec<usize>,
}

impl Witness {
    pub fn sum(&self, instance: &SubsetSumInstance) -> u64 {
        self.subset.iter().map(|&i| instance.weights()[i]).sum()
    }
}

/// Exact memoized solver over gadget states.
pub struct GadgetSolver<'g> {
    game: &'g GadgetGame,
    memo: HashMap<GadgetState, bool>,
}

impl<'g> GadgetSolver<'g> {
    pub fn new(game: &'g GadgetGame) -> Self {
        GadgetSolver {
            game,
            memo: HashMap::new(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn truth(&mut self, s: &GadgetState) -> Result<TruthValue> {
        self.game.validate_state(s)?;
        Ok(TruthValue::from_win(self.wins(*s)))
    }

    /// The preferred winning move, or `None` from a lost position.
    pub fn best_move(&mut self, s: &GadgetState) -> Result<Option<GadgetMove>> {
        for m in preference_order(self.game.moves(s)?) {
            if !self.wins(s.after(m)) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// The move an engine plays: a winning one if any, else the first
    /// admissible move in preference order.
    pub fn engine_move(&mut self, s: &GadgetState) -> Result<Option<GadgetMove>> {
        match self.best_move(s)? {
            Some(m) => Ok(Some(m)),
            None => Ok(preference_order(self.game.moves(s)?).into_iter().next()),
        }
    }

    fn wins(&mut self, s: GadgetState) -> bool {
        if let Some(&known) = self.memo.get(&s) {
            return known;
        }
        let win = self
            .game
            .moves_unchecked(&s)
            .into_iter()
            .any(|m| !self.wins(s.after(m)));
        self.memo.insert(s, win);
        win
    }
}

pub fn gadget_truth(game: &GadgetGame, s: &GadgetState) -> Result<TruthValue> {
    GadgetSolver::new(game).truth(s)
}

/// Decides the instance by solving its gadget at the full ground set.
pub fn decide_subset_sum_via_game(instance: &SubsetSumInstance) -> Result<bool> {
    let game = build_gadget(instance)?;
    Ok(gadget_truth(&game, &game.start())?.is_win())
}

/// Reads a witness off optimal self-play from the start.
///
/// The first player follows the preferred winning line; every O1 move that
/// draws `2n·t_j` from `L` contributes pile `j`. A collected set that does
/// not sum to the target is reported as an internal error.
pub fn extract_witness(game: &GadgetGame) -> Result<Option<Witness>> {
    let mut solver = GadgetSolver::new(game);
    let mut s = game.start();
    if !solver.truth(&s)?.is_win() {
        return Ok(None);
    }
    let mut subset = Vec::new();
    let mut ply = 0usize;
    loop {
        let m = if ply.is_multiple_of(2) {
            match solver.best_move(&s)? {
                Some(m) => m,
                None if game.moves(&s)?.is_empty() => {
                    return Err(Error::Internal(format!(
                        "winning line stalled with the first player to move at {s}"
                    )))
                }
                None => return Err(Error::Internal(format!("first player lost the win at {s}"))),
            }
        } else {
            match solver.engine_move(&s)? {
                Some(m) => m,
                None => break,
            }
        };
        if let GadgetMove::O1 { pile, l_take } = m {
            if ply.is_multiple_of(2) && l_take > 0 {
                subset.push(pile);
            }
        }
        s = game.apply(&s, m)?;
        ply += 1;
    }
    subset.sort_unstable();
    let witness = Witness { subset };
    if witness.sum(game.instance()) != game.instance().target() {
        return Err(Error::Internal(format!(
            "collected piles {:?} sum to {} instead of {}",
            witness.subset,
            witness.sum(game.instance()),
            game.instance().target()
        )));
    }
    Ok(Some(witness))
}
