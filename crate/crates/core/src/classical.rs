//! Nim and the {1,2}-subtraction game: closed forms, a count-based solver,
//! and embeddings as explicit occupation games.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Rejection, Result};
use crate::game::{
    for_each_subset_of_size, ElementSet, GroundSet, MoveFamily, MoveRule, MoveSet, OccupationGame, PositionSet,
    StateFamily, TruthValue,
};

/// Default bound on the total element count for [`pile_truth`].
pub const DEFAULT_PILE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PileVariant {
    /// Remove any positive number of elements from one pile.
    Nim,
    /// Remove one or two elements from one pile.
    Subtraction,
}

impl PileVariant {
    pub fn max_take(self) -> Option<usize> {
        match self {
            PileVariant::Nim => None,
            PileVariant::Subtraction => Some(2),
        }
    }
}

impl fmt::Display for PileVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PileVariant::Nim => "nim",
            PileVariant::Subtraction => "subtraction",
        })
    }
}

impl FromStr for PileVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nim" => Ok(PileVariant::Nim),
            "subtraction" => Ok(PileVariant::Subtraction),
            other => Err(Error::Unsupported(format!("pile variant {other:?}"))),
        }
    }
}

/// Remaining element count in each pile.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PileVector(Vec<usize>);

impl PileVector {
    pub fn new(sizes: Vec<usize>) -> Self {
        PileVector(sizes)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Sorted multiset with empty piles dropped.
    fn canonical(&self) -> Vec<usize> {
        let mut key: Vec<usize> = self.0.iter().copied().filter(|&s| s > 0).collect();
        key.sort_unstable();
        key
    }
}

impl Deref for PileVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for PileVector {
    fn from(sizes: Vec<usize>) -> Self {
        PileVector(sizes)
    }
}

impl From<&[usize]> for PileVector {
    fn from(sizes: &[usize]) -> Self {
        PileVector(sizes.to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PileMove {
    pub pile: usize,
    pub take: usize,
}

/// `Truth ⊕ 1 = ∏_j (1 ⊕ ⊕_i a_ij)` over the binary digits `a_ij` of the pile sizes.
pub fn nim_truth_closed_form(piles: &[usize]) -> TruthValue {
    let max = piles.iter().copied().max().unwrap_or(0);
    let width = (usize::BITS - max.leading_zeros()) as usize;
    digit_product_formula(piles.iter().copied(), width)
}

/// Same product formula over the two binary digits of each `size mod 3`.
pub fn subtraction_truth_closed_form(piles: &[usize]) -> TruthValue {
    digit_product_formula(piles.iter().map(|&s| s % 3), 2)
}

fn digit_product_formula(values: impl Iterator<Item = usize> + Clone, width: usize) -> TruthValue {
    let mut product = 1u8;
    for j in 0..width {
        let column = values.clone().fold(0u8, |acc, a| acc ^ ((a >> j) & 1) as u8);
        product &= 1 ^ column;
    }
    TruthValue::from_win(product ^ 1 == 1)
}

pub fn closed_form(variant: PileVariant, piles: &[usize]) -> TruthValue {
    match variant {
        PileVariant::Nim => nim_truth_closed_form(piles),
        PileVariant::Subtraction => subtraction_truth_closed_form(piles),
    }
}

/// Legal moves, pile ascending then take ascending.
pub fn pile_moves(variant: PileVariant, piles: &[usize]) -> Vec<PileMove> {
    let mut out = Vec::new();
    for (pile, &size) in piles.iter().enumerate() {
        let top = variant.max_take().map_or(size, |m| m.min(size));
        out.extend((1..=top).map(|take| PileMove { pile, take }));
    }
    out
}

pub fn check_pile_move(variant: PileVariant, piles: &[usize], m: PileMove) -> Result<(), Rejection> {
    if m.take == 0 || variant.max_take().is_some_and(|max| m.take > max) {
        return Err(Rejection::NotInMoveFamily);
    }
    match piles.get(m.pile) {
        Some(&size) if m.take <= size => Ok(()),
        _ => Err(Rejection::NotASubset),
    }
}

pub fn apply_pile_move(variant: PileVariant, piles: &[usize], m: PileMove) -> Result<PileVector> {
    check_pile_move(variant, piles, m).map_err(Error::Inadmissible)?;
    let mut next = piles.to_vec();
    next[m.pile] -= m.take;
    Ok(PileVector(next))
}

/// Exact count-based solver; positions are memoized by their sorted multiset.
#[derive(Debug)]
pub struct PileSolver {
    variant: PileVariant,
    cap: usize,
    memo: HashMap<Vec<usize>, bool>,
}

impl PileSolver {
    pub fn new(variant: PileVariant, cap: usize) -> Self {
        PileSolver {
            variant,
            cap,
            memo: HashMap::new(),
        }
    }

    pub fn truth(&mut self, piles: &[usize]) -> Result<TruthValue> {
        let piles = PileVector::from(piles);
        if piles.total() > self.cap {
            return Err(Error::CapExceeded {
                size: piles.total(),
                cap: self.cap,
            });
        }
        Ok(TruthValue::from_win(self.wins(piles.canonical())))
    }

    /// First winning move in [`pile_moves`] order.
    pub fn best_move(&mut self, piles: &[usize]) -> Result<Option<PileMove>> {
        self.truth(piles)?;
        for m in pile_moves(self.variant, piles) {
            let next = apply_pile_move(self.variant, piles, m)?;
            if !self.wins(next.canonical()) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    fn wins(&mut self, key: Vec<usize>) -> bool {
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let mut win = false;
        'search: for (i, &size) in key.iter().enumerate() {
            if i > 0 && key[i - 1] == size {
                continue;
            }
            let top = self.variant.max_take().map_or(size, |m| m.min(size));
            for take in 1..=top {
                let mut child = key.clone();
                child[i] -= take;
                let child = PileVector(child).canonical();
                if !self.wins(child) {
                    win = true;
                    break 'search;
                }
            }
        }
        self.memo.insert(key, win);
        win
    }
}

pub fn pile_truth(variant: PileVariant, piles: &[usize], cap: usize) -> Result<TruthValue> {
    PileSolver::new(variant, cap).truth(piles)
}

pub fn best_pile_move(variant: PileVariant, piles: &[usize], cap: usize) -> Result<Option<PileMove>> {
    PileSolver::new(variant, cap).best_move(piles)
}

/// Nim as an occupation game: every nonempty subset of a pile is a move.
pub fn embed_nim(piles: &[usize], cap: usize) -> Result<OccupationGame> {
    embed(piles, cap, None)
}

/// Subtraction as an occupation game: the 1- and 2-subsets of each pile are moves.
pub fn embed_subtraction(piles: &[usize], cap: usize) -> Result<OccupationGame> {
    embed(piles, cap, Some(2))
}

pub fn embed(piles: &[usize], cap: usize, max_take: Option<usize>) -> Result<OccupationGame> {
    let total: usize = piles.iter().sum();
    if total > cap {
        return Err(Error::CapExceeded { size: total, cap });
    }
    let mut labels = Vec::with_capacity(total);
    let mut regions = Vec::with_capacity(total);
    let mut moves = Vec::new();
    let mut offset = 0;
    for (i, &size) in piles.iter().enumerate() {
        for k in 0..size {
            labels.push(format!("p{i}_{k}"));
            regions.push(format!("pile{i}"));
        }
        let pile = ElementSet::range(offset, size);
        for k in 1..=max_take.map_or(size, |m| m.min(size)) {
            for_each_subset_of_size(pile, k, |s| moves.push(s));
        }
        offset += size;
    }
    OccupationGame::new(
        GroundSet::new(labels).with_regions(regions),
        StateFamily::All,
        MoveFamily::Explicit(moves),
        ElementSet::prefix(total),
    )
}

pub fn embed_variant(variant: PileVariant, piles: &[usize], cap: usize) -> Result<OccupationGame> {
    embed(piles, cap, variant.max_take())
}

/// Pile moves as a rule instead of a list: any subset of one pile, up to
/// `max_take` elements.
#[derive(Debug)]
pub struct PileRule {
    piles: Vec<ElementSet>,
    max_take: Option<usize>,
}

impl PileRule {
    pub fn new(variant: PileVariant, piles: &[usize]) -> Self {
        let mut offset = 0;
        let piles = piles
            .iter()
            .map(|&size| {
                let pile = ElementSet::range(offset, size);
                offset += size;
                pile
            })
            .collect();
        PileRule {
            piles,
            max_take: variant.max_take(),
        }
    }
}

impl MoveRule for PileRule {
    fn name(&self) -> &str {
        "piles"
    }

    fn contains(&self, sigma: MoveSet) -> bool {
        !sigma.is_empty()
            && self.max_take.is_none_or(|m| sigma.len() <= m)
            && self.piles.iter().any(|p| sigma.is_subset(*p))
    }

    fn candidates(&self, position: PositionSet, out: &mut Vec<MoveSet>) {
        for pile in &self.piles {
            let held = pile.intersection(position);
            let top = self.max_take.map_or(held.len(), |m| m.min(held.len()));
            for k in 1..=top {
                for_each_subset_of_size(held, k, |s| out.push(s));
            }
        }
    }
}

/// Same game as [`embed_variant`] with the move family given by [`PileRule`].
pub fn embed_structured(variant: PileVariant, piles: &[usize], cap: usize) -> Result<OccupationGame> {
    let explicit = embed_variant(variant, piles, cap)?;
    OccupationGame::new(
        explicit.ground,
        StateFamily::All,
        MoveFamily::Structured(Arc::new(PileRule::new(variant, piles))),
        explicit.start,
    )
}

/// Reads the pile sizes of a position in an embedded game.
pub fn piles_of(game: &OccupationGame, piles: usize, position: ElementSet) -> PileVector {
    PileVector(
        (0..piles)
            .map(|i| position.intersection(game.ground.region_set(&format!("pile{i}"))).len())
            .collect(),
    )
}
