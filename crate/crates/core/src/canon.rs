//! Canonical labeling for small graphs: the lexicographically minimal
//! upper-triangle bit string over all vertex orderings consistent with the
//! sorted degree sequence. Two graphs get equal keys iff they are
//! isomorphic. Affordable up to n = 11, which covers the delete/contract
//! oracle and the built-in enumerator.

use crate::graph::Graph;

pub(crate) const CANON_MAX: usize = 11;

/// Key layout: order in the high bits, the minimal column-major triangle
/// bit string below. Distinct orders therefore never collide.
pub(crate) fn canon_key(g: &Graph) -> u128 {
    let n = g.n();
    assert!(n <= CANON_MAX, "canonical form capped at n = {CANON_MAX}");
    ((n as u128) << 64) | canon_bits(g)
}

fn canon_bits(g: &Graph) -> u128 {
    let n = g.n();
    if n < 2 {
        return 0;
    }
    // positions take vertices in descending degree order
    let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut target: Vec<usize> = degs.clone();
    target.sort_unstable_by(|a, b| b.cmp(a));

    let mut search = CanonSearch {
        g,
        degs,
        target,
        perm: vec![0; n],
        used: vec![false; n],
        best: None,
    };
    search.assign(0, 0, 0);
    search.best.expect("at least one ordering exists")
}

struct CanonSearch<'a> {
    g: &'a Graph,
    degs: Vec<usize>,
    target: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<u128>,
}

impl CanonSearch<'_> {
    /// Extend the ordering to position `q`; `cur` holds the first
    /// `bits_done` triangle bits, earlier columns most significant.
    fn assign(&mut self, q: usize, cur: u128, bits_done: u32) {
        let n = self.perm.len();
        if q == n {
            if self.best.is_none_or(|b| cur < b) {
                self.best = Some(cur);
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.degs[v] != self.target[q] {
                continue;
            }
            // column q against the already placed positions
            let mut col = 0u128;
            for i in 0..q {
                col = (col << 1) | u128::from(self.g.has_edge(self.perm[i], v));
            }
            let next = (cur << q) | col;
            let next_bits = bits_done + q as u32;
            if let Some(best) = self.best {
                let total = (n * (n - 1) / 2) as u32;
                if next > best >> (total - next_bits) {
                    continue;
                }
            }
            self.perm[q] = v;
            self.used[v] = true;
            self.assign(q + 1, next, next_bits);
            self.used[v] = false;
        }
    }
}

/// The canonical representative itself, rebuilt from the key bits.
pub(crate) fn canon_graph(g: &Graph) -> Graph {
    let n = g.n();
    let bits = canon_key(g) & ((1u128 << 64) - 1);
    let total = n.saturating_sub(1) * n / 2;
    let mut out = Graph::empty(n);
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if bits >> (total - 1 - pos) & 1 != 0 {
                out.add_edge(i, j);
            }
            pos += 1;
        }
    }
    out
}
