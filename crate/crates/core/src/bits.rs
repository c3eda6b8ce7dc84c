//! Fixed-width bitsets over vertex indices, shared by the graph store and
//! the combinatorial search code.

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A set of vertices of a graph with a fixed order known from context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits {
            words: vec![0; words_for(n)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn or_slice(&mut self, row: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(row) {
            *a |= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> BitsIter<'_> {
        BitsIter {
            bits: self,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }
}

pub(crate) struct BitsIter<'a> {
    bits: &'a Bits,
    word: usize,
    cur: u64,
}

impl Iterator for BitsIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            self.word += 1;
            if self.word >= self.bits.words.len() {
                return None;
            }
            self.cur = self.bits.words[self.word];
        }
        let tz = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some(self.word * WORD_BITS + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iterate_count() {
        let mut b = Bits::new(130);
        for i in [0, 5, 63, 64, 100, 129] {
            b.insert(i);
        }
        assert_eq!(b.count(), 6);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 100, 129]);
        assert_eq!(b.first(), Some(0));
        b.remove(0);
        assert_eq!(b.first(), Some(5));
        assert!(!b.contains(0));
        assert!(b.contains(64));
    }

    #[test]
    fn set_algebra() {
        let mut a = Bits::new(70);
        let mut b = Bits::new(70);
        a.insert(1);
        a.insert(65);
        b.insert(65);
        b.insert(2);
        assert!(a.intersects(&b));
        assert_eq!(a.intersection_count(&b), 1);
        let mut c = a.clone();
        c.or_slice(b.words());
        assert_eq!(c.count(), 3);
        c.and_not_assign(&b);
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![1]);
    }
}
