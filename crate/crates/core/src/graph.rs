//! Simple undirected graphs stored as adjacency bit rows, together with the
//! construction algebra (named families, join, disjoint union, contraction)
//! used everywhere else in the crate.

use crate::bits::{words_for, Bits, WORD_BITS};
use crate::error::{Error, Result};

/// 0-based vertex index, valid only relative to a specific graph's order.
pub type VertexId = usize;

/// Hard cap on the vertex count; exact work beyond this scale goes through
/// the closed-form spectral routines, never through explicit adjacency.
pub const MAX_VERTICES: usize = 1 << 16;

/// A simple undirected graph: vertex count plus one n-bit adjacency row per
/// vertex. Rows stay symmetric and irreflexive under every operation here.
/// Values are immutable in spirit: mutation is confined to construction and
/// to explicit edits on owned clones.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    row_words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices. `n = 0` is legal and acts as the
    /// identity for [`Graph::disjoint_union`].
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "vertex cap exceeded");
        let row_words = words_for(n);
        Graph {
            n,
            row_words,
            bits: vec![0; n * row_words],
        }
    }

    fn checked_empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph::empty(n))
    }

    /// Complete graph K_k, k >= 1.
    pub fn complete(k: usize) -> Result<Graph> {
        if k < 1 {
            return Err(Error::InvalidParameter("complete graph needs k >= 1".into()));
        }
        let mut g = Graph::checked_empty(k)?;
        for u in 0..k {
            for v in u + 1..k {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Path P_k with edges {i, i+1}, k >= 1.
    pub fn path(k: usize) -> Result<Graph> {
        if k < 1 {
            return Err(Error::InvalidParameter("path needs k >= 1".into()));
        }
        let mut g = Graph::checked_empty(k)?;
        for u in 0..k.saturating_sub(1) {
            g.add_edge(u, u + 1);
        }
        Ok(g)
    }

    /// Cycle C_k, k >= 3.
    pub fn cycle(k: usize) -> Result<Graph> {
        if k < 3 {
            return Err(Error::InvalidParameter("cycle needs k >= 3".into()));
        }
        let mut g = Graph::path(k)?;
        g.add_edge(0, k - 1);
        Ok(g)
    }

    /// Star K_{1,k-1} with center 0, k >= 1.
    pub fn star(k: usize) -> Result<Graph> {
        if k < 1 {
            return Err(Error::InvalidParameter("star needs k >= 1".into()));
        }
        let mut g = Graph::checked_empty(k)?;
        for v in 1..k {
            g.add_edge(0, v);
        }
        Ok(g)
    }

    /// Complete bipartite K_{a,b}: vertices 0..a on the left, a..a+b on the
    /// right.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        if a < 1 || b < 1 {
            return Err(Error::InvalidParameter(
                "complete bipartite graph needs both sides nonempty".into(),
            ));
        }
        let mut g = Graph::checked_empty(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Build from an explicit edge list. Rejects loops and out-of-range ends;
    /// duplicate edges collapse silently.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::checked_empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::IdenticalVertices(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.row_words + v / WORD_BITS] >> (v % WORD_BITS) & 1 != 0
    }

    /// Insert the edge {u,v}; a no-op when already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.bits[u * self.row_words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.bits[v * self.row_words + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    /// Delete the edge {u,v}; a no-op when absent.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.bits[u * self.row_words + v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        self.bits[v * self.row_words + u / WORD_BITS] &= !(1 << (u % WORD_BITS));
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self
            .bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>();
        total / 2
    }

    /// Edges as (u, v) pairs with u < v, in row order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let row = self.row(v);
        (0..self.row_words).flat_map(move |k| {
            let mut w = row[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD_BITS + tz)
            })
        })
    }

    pub(crate) fn row(&self, v: VertexId) -> &[u64] {
        &self.bits[v * self.row_words..(v + 1) * self.row_words]
    }

    pub(crate) fn neighbors_bits(&self, v: VertexId) -> Bits {
        let mut b = Bits::new(self.n);
        b.or_slice(self.row(v));
        b
    }

    /// |Γ(u) ∩ Γ(v)|, the number of 2-walks from u to v. Requires u ≠ v.
    pub fn common_neighbor_count(&self, u: VertexId, v: VertexId) -> Result<usize> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(Error::IdenticalVertices(u));
        }
        Ok(self
            .row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    /// Join: disjoint copies of `self` and `other` plus every edge between
    /// them. `self`'s vertices come first.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in self.n..g.n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Disjoint union with `self`'s vertices first and no cross edges.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self
            .n
            .checked_add(other.n)
            .filter(|&n| n <= MAX_VERTICES)
            .ok_or(Error::TooManyVertices(self.n + other.n))?;
        let mut g = Graph::empty(n);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    g.add_edge(u, v);
                }
            }
        }
        for u in 0..other.n {
            for v in other.neighbors(u) {
                if v > u {
                    g.add_edge(self.n + u, self.n + v);
                }
            }
        }
        Ok(g)
    }

    /// Contract the edge {u,v}: the merged vertex keeps label min(u,v),
    /// indices above max(u,v) shift down by one, parallel edges collapse and
    /// the loop disappears.
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(Error::IdenticalVertices(u));
        }
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let (lo, hi) = (u.min(v), u.max(v));
        let relabel = |w: usize| if w > hi { w - 1 } else { w };
        let mut g = Graph::empty(self.n - 1);
        for a in 0..self.n {
            if a == hi {
                continue;
            }
            for b in self.neighbors(a) {
                if b <= a || b == hi {
                    continue;
                }
                g.add_edge(relabel(a), relabel(b));
            }
        }
        for b in self.neighbors(hi) {
            if b != lo {
                g.add_edge(lo, relabel(b));
            }
        }
        Ok(g)
    }

    /// Connected components as sorted vertex lists, ordered by their minimum
    /// vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = Bits::new(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let comp = self.component_of(start, &mut seen);
            out.push(comp);
        }
        out
    }

    fn component_of(&self, start: VertexId, seen: &mut Bits) -> Vec<VertexId> {
        let mut stack = vec![start];
        let mut comp = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen.contains(w) {
                    seen.insert(w);
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comp
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = Bits::new(self.n);
        self.component_of(0, &mut seen).len() == self.n
    }

    /// Induced subgraph on `verts` (need not be sorted); vertex i of the
    /// result is verts[i].
    pub fn induced(&self, verts: &[VertexId]) -> Graph {
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Vertices adjacent to all others.
    pub fn dominating_vertices(&self) -> Vec<VertexId> {
        (0..self.n)
            .filter(|&v| self.degree(v) == self.n - 1)
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn check_invariants(&self) {
        for u in 0..self.n {
            assert!(!self.has_edge(u, u), "loop at {u}");
            for v in self.neighbors(u) {
                assert!(self.has_edge(v, u), "asymmetry at ({u},{v})");
            }
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
