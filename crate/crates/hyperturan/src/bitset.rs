//! Fixed-width bitsets over a vertex universe `0..n`.

const WORD_BITS: usize = 64;

/// Set of vertex ids below a fixed universe size, packed into `u64` words.
///
/// Intersection and disjointness tests run over `n/64` words, which is what
/// the pattern detectors spend most of their time on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            words: vec![0; universe.div_ceil(WORD_BITS)],
        }
    }

    pub fn from_iter(universe: usize, verts: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(universe);
        for v in verts {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        match self.words.get(v / WORD_BITS) {
            Some(w) => (w >> (v % WORD_BITS)) & 1 == 1,
            None => false,
        }
    }

    #[inline]
    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Smallest vertex in `self ∩ other`, if the intersection is nonempty.
    #[inline]
    pub fn first_common(&self, other: &VertexSet) -> Option<usize> {
        for (i, (a, b)) in self.words.iter().zip(other.words.iter()).enumerate() {
            let w = a & b;
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD_BITS + bit)
            })
        })
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_remove() {
        let mut s = VertexSet::new(130);
        s.insert(0);
        s.insert(63);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(63) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1) && !s.contains(128));
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.count(), 3);
    }

    #[test]
    fn intersection_and_iter() {
        let a = VertexSet::from_iter(10, [1, 3, 5, 7]);
        let b = VertexSet::from_iter(10, [3, 4, 7, 9]);
        assert_eq!(a.intersection_count(&b), 2);
        assert_eq!(a.first_common(&b), Some(3));
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 3, 5, 7]);

        let c = VertexSet::from_iter(10, [0, 2]);
        assert!(a.is_disjoint(&c));
        assert_eq!(a.first_common(&c), None);
    }
}
