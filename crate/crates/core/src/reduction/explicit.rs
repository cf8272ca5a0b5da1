use super::{GadgetGame, GadgetState};
use crate::error::{Error, Result};
use crate::game::{
    for_each_subset_of_size, ElementSet, GroundSet, MoveFamily, OccupationGame, PositionSet, StateFamily, MAX_ELEMENTS,
};

/// Element offsets of each region in the explicit layout `V, W, L, Y_1..Y_n`.
struct Layout {
    n: usize,
    l: usize,
    piles: Vec<(usize, usize)>,
}

impl Layout {
    fn of(game: &GadgetGame, cap: usize) -> Result<Layout> {
        let size = game.ground_size();
        if size > cap.min(MAX_ELEMENTS) as u64 {
            return Err(Error::CapExceeded {
                size: usize::try_from(size).unwrap_or(usize::MAX),
                cap,
            });
        }
        let n = game.n();
        let l = game.l_size() as usize;
        let mut offset = 2 * n + l;
        let piles = game
            .y_sizes()
            .iter()
            .map(|&t| {
                let start = offset;
                offset += t as usize;
                (start, t as usize)
            })
            .collect();
        Ok(Layout { n, l, piles })
    }

    fn v(&self) -> ElementSet {
        ElementSet::range(0, self.n)
    }

    fn w(&self) -> ElementSet {
        ElementSet::range(self.n, self.n)
    }

    fn l(&self) -> ElementSet {
        ElementSet::range(2 * self.n, self.l)
    }

    fn pile(&self, i: usize) -> ElementSet {
        let (start, len) = self.piles[i];
        ElementSet::range(start, len)
    }
}

/// The gadget with every element, the band state family over `(W, V)` and
/// the full list of O1 and O2 moves.
pub fn gadget_to_explicit(game: &GadgetGame, cap: usize) -> Result<OccupationGame> {
    let layout = Layout::of(game, cap)?;
    let n = layout.n;
    let mut labels = Vec::new();
    let mut regions = Vec::new();
    for (prefix, count) in [("v", n), ("w", n), ("l", layout.l)] {
        for k in 0..count {
            labels.push(format!("{prefix}{k}"));
            regions.push(prefix.to_string());
        }
    }
    for (i, &(_, len)) in layout.piles.iter().enumerate() {
        for k in 0..len {
            labels.push(format!("y{i}_{k}"));
            regions.push(format!("y{i}"));
        }
    }

    let mut moves = Vec::new();
    for v in layout.v().indices() {
        for (i, &(_, len)) in layout.piles.iter().enumerate() {
            let base = ElementSet::singleton(v).union(layout.pile(i));
            moves.push(base);
            let take = 2 * n * len;
            if take > 0 {
                for_each_subset_of_size(layout.l(), take, |ls| moves.push(base.union(ls)));
            }
        }
    }
    for w in layout.w().indices() {
        for l in layout.l().indices() {
            moves.push(ElementSet::from_iter([w, l]));
        }
    }

    let full = ElementSet::prefix(labels.len());
    OccupationGame::new(
        GroundSet::new(labels).with_regions(regions),
        StateFamily::Band {
            w_region: layout.w(),
            v_region: layout.v(),
        },
        MoveFamily::Explicit(moves),
        full,
    )
}

/// The canonical element-level position for `s`: the lowest-indexed
/// `v`, `w` and `l` elements of their regions and every present pile.
pub fn position_of(game: &GadgetGame, s: &GadgetState, cap: usize) -> Result<PositionSet> {
    game.validate_state(s)?;
    let layout = Layout::of(game, cap)?;
    let mut a = ElementSet::range(0, s.v)
        .union(ElementSet::range(layout.n, s.w))
        .union(ElementSet::range(2 * layout.n, s.l as usize));
    for i in s.piles() {
        a = a.union(layout.pile(i));
    }
    Ok(a)
}

/// Reads an element-level position back into counts; `None` when some pile
/// is only partly present.
pub fn state_of(game: &GadgetGame, position: PositionSet, cap: usize) -> Result<Option<GadgetState>> {
    let layout = Layout::of(game, cap)?;
    let mut mask = 0u64;
    for i in 0..layout.n {
        let held = position.intersection(layout.pile(i)).len();
        if held == layout.piles[i].1 {
            mask |= 1 << i;
        } else if held != 0 {
            return Ok(None);
        }
    }
    Ok(Some(GadgetState {
        v: position.intersection(layout.v()).len(),
        w: position.intersection(layout.w()).len(),
        l: position.intersection(layout.l()).len() as u64,
        mask,
    }))
}
