use std::cmp::Ordering;
use std::fmt;

/// Fixed-universe bit vector used for subsets of a semigroup or group.
///
/// Ordering is by cardinality first and then by the sorted element lists,
/// so singletons sort before pairs and come out in element order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    universe: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(universe: usize) -> Self {
        BitSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = BitSet::new(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = BitSet::new(universe);
        s.insert(x);
        s
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(universe: usize, elems: I) -> Self {
        let mut s = BitSet::new(universe);
        for x in elems {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        if x < self.universe {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_size_then_lex() {
        let a = BitSet::from_elems(70, [1]);
        let b = BitSet::from_elems(70, [0, 65]);
        let c = BitSet::from_elems(70, [1, 2]);
        assert!(a < b);
        assert!(b < c);
        assert_eq!(b.to_vec(), vec![0, 65]);
        assert_eq!(b.len(), 2);
        assert!(b.is_subset(&BitSet::from_elems(70, [0, 3, 65])));
        assert!(!c.is_subset(&b));
    }
}
