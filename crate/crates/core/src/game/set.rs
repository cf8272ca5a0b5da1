use std::cmp::Ordering;
use std::fmt;

/// Hard upper bound on ground-set size imposed by the 64-bit mask encoding.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of the ground set, stored as a bit mask over ground-set indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

/// A position: the elements still present.
pub type PositionSet = ElementSet;
/// A move: the elements it removes.
pub type MoveSet = ElementSet;

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` elements of the ground set.
    pub fn prefix(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "prefix of {n} exceeds mask width");
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    /// Builds the set of elements `start..start + len`.
    pub fn range(start: usize, len: usize) -> Self {
        ElementSet(ElementSet::prefix(len).0 << start)
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_ELEMENTS);
        ElementSet(1u64 << index)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_ELEMENTS && self.0 & (1u64 << index) != 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn insert(&mut self, index: usize) {
        *self = self.union(ElementSet::singleton(index));
    }

    /// Ascending element indices.
    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    /// Canonical order: by cardinality, then lexicographically by the
    /// ascending index sequence.
    pub fn canonical_cmp(&self, other: &ElementSet) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal if self.0 == other.0 => Ordering::Equal,
            Ordering::Equal => {
                // The first position where the sorted index lists differ is
                // the lowest bit of the symmetric difference.
                let lowest = (self.0 ^ other.0).trailing_zeros();
                if self.0 >> lowest & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            unequal => unequal,
        }
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ElementSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Calls `f` with every `k`-element subset of `pool`, in increasing mask order.
pub fn for_each_subset_of_size(pool: ElementSet, k: usize, mut f: impl FnMut(ElementSet)) {
    let members: Vec<usize> = pool.indices().collect();
    if k > members.len() {
        return;
    }
    if k == 0 {
        f(ElementSet::EMPTY);
        return;
    }
    if k == members.len() {
        f(pool);
        return;
    }
    // Gosper's hack over positions within `members`, then scattered back.
    let width = members.len();
    let mut combo: u64 = (1u64 << k) - 1;
    let limit: u128 = 1u128 << width;
    while (combo as u128) < limit {
        let set: ElementSet = ElementSet(combo).indices().map(|p| members[p]).collect();
        f(set);
        let c = combo & combo.wrapping_neg();
        let r = combo.wrapping_add(c);
        if r == 0 {
            break;
        }
        combo = (((r ^ combo) >> 2) / c) | r;
    }
}
