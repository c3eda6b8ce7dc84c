//! The extremal family F_t(n): one hub joined to p disjoint K_t blocks plus
//! one K_s block, where n - 1 = pt + s. For t = 2 this is the friendship
//! graph, with the even-n case carrying a pendant edge at the hub (that
//! pendant is exactly the K_1 block the general construction produces).

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The parameter split (t, n) -> (p, s) with n - 1 = pt + s, 0 <= s <= t-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FtParams {
    pub t: usize,
    pub n: usize,
    pub p: usize,
    pub s: usize,
}

/// Decompose n - 1 = pt + s. Requires t >= 2 and n >= t + 1.
pub fn split_params(t: usize, n: usize) -> Result<FtParams> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be >= 2, got {t}")));
    }
    if n < t + 1 {
        return Err(Error::InvalidParameter(format!(
            "n must be >= t + 1 = {}, got {n}",
            t + 1
        )));
    }
    let p = (n - 1) / t;
    let s = (n - 1) - p * t;
    Ok(FtParams { t, n, p, s })
}

/// Build F_t(n) with the fixed layout: hub 0, then the p K_t blocks in
/// order, then the K_s block (when s >= 1) last.
pub fn build_ft(t: usize, n: usize) -> Result<Graph> {
    let FtParams { p, s, .. } = split_params(t, n)?;
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(0, v);
    }
    let mut base = 1;
    for _ in 0..p {
        add_clique(&mut g, base, t);
        base += t;
    }
    if s >= 1 {
        add_clique(&mut g, base, s);
    }
    Ok(g)
}

fn add_clique(g: &mut Graph, base: usize, size: usize) {
    for i in 0..size {
        for j in i + 1..size {
            g.add_edge(base + i, base + j);
        }
    }
}

/// Structural recognition of the family: some dominating vertex whose
/// removal leaves p complete blocks of order t plus one of order s. The
/// family is rigid, so no general isomorphism machinery is needed.
pub fn is_ft(g: &Graph, t: usize) -> bool {
    let n = g.n();
    let Ok(FtParams { p, s, .. }) = split_params(t, n) else {
        return false;
    };
    'hubs: for hub in g.dominating_vertices() {
        let rest: Vec<usize> = (0..n).filter(|&v| v != hub).collect();
        let sub = g.induced(&rest);
        let mut t_blocks = 0;
        let mut s_blocks = 0;
        for comp in sub.components() {
            if !is_clique(&sub, &comp) {
                continue 'hubs;
            }
            if comp.len() == t {
                t_blocks += 1;
            } else if comp.len() == s {
                s_blocks += 1;
            } else {
                continue 'hubs;
            }
        }
        if s == 0 {
            if t_blocks == p && s_blocks == 0 {
                return true;
            }
        } else if t_blocks == p && s_blocks == 1 {
            return true;
        }
    }
    false
}

fn is_clique(g: &Graph, verts: &[usize]) -> bool {
    verts
        .iter()
        .all(|&v| g.degree(v) >= verts.len() - 1 && verts.iter().all(|&u| u == v || g.has_edge(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_split() {
        assert_eq!(
            split_params(3, 10).unwrap(),
            FtParams { t: 3, n: 10, p: 3, s: 0 }
        );
        assert_eq!(
            split_params(3, 9).unwrap(),
            FtParams { t: 3, n: 9, p: 2, s: 2 }
        );
        assert_eq!(
            split_params(4, 6).unwrap(),
            FtParams { t: 4, n: 6, p: 1, s: 1 }
        );
        assert!(split_params(3, 3).is_err());
        assert!(split_params(1, 10).is_err());
    }

    #[test]
    fn smallest_member_is_complete() {
        for t in 2..=6 {
            let g = build_ft(t, t + 1).unwrap();
            assert_eq!(g, Graph::complete(t + 1).unwrap());
        }
    }

    #[test]
    fn bowtie() {
        let g = build_ft(2, 5).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(0), 4);
    }

    #[test]
    fn friendship_pendant_for_even_n() {
        // F_2(6): two triangles plus a pendant edge hanging off the hub
        let g = build_ft(2, 6).unwrap();
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.degree(5), 1, "the pendant vertex comes last");
        let degs: Vec<usize> = (1..5).map(|v| g.degree(v)).collect();
        assert_eq!(degs, vec![2, 2, 2, 2]);
    }

    #[test]
    fn degrees_of_f3_10() {
        let g = build_ft(3, 10).unwrap();
        assert_eq!(g.degree(0), 9);
        assert!((1..10).all(|v| g.degree(v) == 3));
        assert_eq!(g.edge_count(), 18);
    }

    #[test]
    fn recognizer_round_trip() {
        for t in 2..=5 {
            for n in t + 1..=40 {
                let g = build_ft(t, n).unwrap();
                assert!(is_ft(&g, t), "t={t} n={n}");
                // and not a member of a different family unless it happens
                // to coincide (K_{t+1} = F_t(t+1) only matches its own t)
            }
        }
        assert!(is_ft(&build_ft(3, 40).unwrap(), 3));
    }

    #[test]
    fn recognizer_rejects_lookalikes() {
        // a star has K_1 blocks, not K_3 blocks
        let star = Graph::star(10).unwrap();
        assert!(!is_ft(&star, 3));

        // deleting one block edge breaks the family
        let mut g = build_ft(3, 10).unwrap();
        g.remove_edge(1, 2);
        assert!(!is_ft(&g, 3));

        // adding a cross edge also breaks it
        let mut g = build_ft(3, 10).unwrap();
        g.add_edge(1, 4);
        assert!(!is_ft(&g, 3));

        assert!(!is_ft(&Graph::empty(0), 3));
        assert!(!is_ft(&Graph::complete(3).unwrap(), 3)); // n < t + 1
    }
}
