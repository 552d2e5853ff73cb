//! Fixed-capacity bitsets and bit-row adjacency matrices.

/// A set of vertices `0..n` packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_words(words: &[u64]) -> Self {
        BitSet { words: words.to_vec() }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn and_with(&mut self, row: &[u64]) {
        for (w, r) in self.words.iter_mut().zip(row) {
            *w &= r;
        }
    }

    pub fn and_not_with(&mut self, row: &[u64]) {
        for (w, r) in self.words.iter_mut().zip(row) {
            *w &= !r;
        }
    }

    pub fn intersection(&self, row: &[u64]) -> BitSet {
        BitSet { words: self.words.iter().zip(row).map(|(a, b)| a & b).collect() }
    }

    pub fn intersection_len(&self, row: &[u64]) -> usize {
        self.words
            .iter()
            .zip(row)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }
}

pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Simple undirected graph on `0..n` stored as one bit row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        BitGraph { n, words, rows: vec![0; n * words] }
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        let words = words_for(n);
        assert_eq!(rows.len(), n * words);
        BitGraph { n, words, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.rows[u * self.words + (v >> 6)] |= 1 << (v & 63);
        self.rows[v * self.words + (u >> 6)] |= 1 << (u & 63);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + (v >> 6)] >> (v & 63) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> BitIter<'_> {
        let row = self.row(u);
        BitIter { words: row, idx: 0, cur: row.first().copied().unwrap_or(0) }
    }

    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> BitGraph {
        let mut g = BitGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> BitGraph {
        let mut g = BitGraph::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// True iff `perm` maps edges to edges.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        (0..self.n).all(|u| {
            let pu = perm[u] as usize;
            self.neighbors(u).all(|v| self.has_edge(pu, perm[v] as usize))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_basics() {
        let mut s = BitSet::new(130);
        for i in [0, 63, 64, 129] {
            s.insert(i);
        }
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        s.remove(0);
        assert_eq!(s.first(), Some(63));
        assert!(!s.contains(0));
        assert_eq!(BitSet::full(70).len(), 70);
    }

    #[test]
    fn graph_basics() {
        let mut g = BitGraph::new(5);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.common_neighbors(0, 1), 1);
        let sub = g.induced(&[2, 0]);
        assert!(sub.has_edge(0, 1));
        assert_eq!(g.complement().complement(), g);
        assert!(g.is_automorphism(&[1, 2, 0, 3, 4]));
        assert!(!g.is_automorphism(&[3, 1, 2, 0, 4]));
    }
}
