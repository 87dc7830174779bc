//! Element identifiers and fixed-capacity element sets.

use std::fmt;

/// Largest carrier an [`EffectAlgebra`](crate::EffectAlgebra) may have.
pub const MAX_ELEMENTS: usize = 256;

const WORDS: usize = MAX_ELEMENTS / 64;

/// Index of an element inside one algebra. Only meaningful relative to the
/// algebra that produced it; element names are the external identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u16);

impl ElementId {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_ELEMENTS, "element index {index} out of range");
        ElementId(index as u16)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of element ids, stored as a 256-bit bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet {
    words: [u64; WORDS],
}

impl ElementSet {
    pub const fn new() -> Self {
        ElementSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new();
        for i in 0..n {
            s.words[i / 64] |= 1 << (i % 64);
        }
        s
    }

    pub fn singleton(x: ElementId) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    #[inline]
    pub fn insert(&mut self, x: ElementId) -> bool {
        let (w, b) = (x.index() / 64, x.index() % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: ElementId) {
        self.words[x.index() / 64] &= !(1 << (x.index() % 64));
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.words[x.index() / 64] & (1 << (x.index() % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = *self;
        for (a, b) in s.words.iter_mut().zip(other.words) {
            *a |= b;
        }
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = *self;
        for (a, b) in s.words.iter_mut().zip(other.words) {
            *a &= b;
        }
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = *self;
        for (a, b) in s.words.iter_mut().zip(other.words) {
            *a &= !b;
        }
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words).all(|(a, b)| a & b == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<ElementId> {
        self.iter().next()
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|x| x.index())).finish()
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl Extend<ElementId> for ElementSet {
    fn extend<I: IntoIterator<Item = ElementId>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

impl IntoIterator for &ElementSet {
    type Item = ElementId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(ElementId::new(self.word * 64 + bit));
            }
            self.word += 1;
        }
        None
    }
}
