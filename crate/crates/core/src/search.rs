//! Extremal search: exhaustive maximization of the spectral radius over
//! K_{2,t}-minor-free graphs, and hill climbing with exactly the structural
//! rewiring moves the extremal analysis uses.

use std::collections::HashMap;

use serde::Serialize;

use crate::canon::{canon_graph, canon_key};
use crate::error::{Error, Result};
use crate::extremal::is_ft;
use crate::graph::{Graph, VertexId};
use crate::graph6::write_graph6;
use crate::minor::k2t_minor_test;
use crate::numfmt::sig12;
use crate::spectral::{bound_upper, bound_ysh, perron_vector, spectral_radius, DEFAULT_TOL};

/// Built-in generator cap; larger orders must arrive as graph6 streams.
pub const ENUMERATION_MAX: usize = 8;

/// Two candidates within this of each other count as tied maximizers.
pub const TIE_TOL: f64 = 1e-10;

/// Minimum spectral-radius gain for a hill-climbing step to count as an
/// improvement.
pub const IMPROVE_EPS: f64 = 1e-8;

/// One row of search output.
#[derive(Debug, Clone, Serialize)]
pub struct SearchRecord {
    pub graph6: String,
    pub n: usize,
    pub t: usize,
    pub mu: f64,
    /// bound_upper(t, n) - mu.
    pub gap_upper: f64,
    /// bound_ysh(n) - mu; only meaningful for t = 3.
    pub gap_ysh: Option<f64>,
    pub is_ft: bool,
    /// Set when mu exceeds the upper bound; such records are preserved,
    /// never dropped.
    pub violated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub move_trace: Option<Vec<MoveStep>>,
}

impl SearchRecord {
    fn build(g: &Graph, t: usize, mu: f64, move_trace: Option<Vec<MoveStep>>) -> SearchRecord {
        let n = g.n();
        let gap_upper = bound_upper(t, n) - mu;
        SearchRecord {
            graph6: write_graph6(g),
            n,
            t,
            mu,
            gap_upper,
            gap_ysh: (t == 3).then(|| bound_ysh(n) - mu),
            is_ft: is_ft(g, t),
            violated: gap_upper < -1e-9,
            move_trace,
        }
    }

    pub fn csv_header() -> &'static str {
        "graph6,n,t,mu,gap_upper,gap_ysh,is_ft"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.graph6,
            self.n,
            self.t,
            sig12(self.mu),
            sig12(self.gap_upper),
            self.gap_ysh.map(sig12).unwrap_or_default(),
            self.is_ft
        )
    }

    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// One applied hill-climbing step and the spectral radius it reached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MoveStep {
    pub mv: Move,
    pub mu: f64,
}

type EdgeList = Vec<(usize, usize)>;

/// The rewiring moves from the structural analysis, plus plain edge
/// addition for the hill climber. The rotation fields name the four path
/// vertices around the middle: the removed edges are {a,b} and {c,d}, the
/// added ones {b,c} and {a,d}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Move {
    /// Remove every edge at `v`, then join `v` to `target`.
    LemmaRewire { v: VertexId, target: VertexId },
    /// Rotation on an odd-order path (order 2s+1, s >= 2).
    RotOdd {
        a: VertexId,
        b: VertexId,
        c: VertexId,
        d: VertexId,
    },
    /// Rotation on an even-order path (order 2s, s >= 3).
    RotEven {
        a: VertexId,
        b: VertexId,
        c: VertexId,
        d: VertexId,
    },
    /// Order-4 path: remove {p1,p2}, add {p2,p4}.
    RotH4 {
        p1: VertexId,
        p2: VertexId,
        p4: VertexId,
    },
    /// Plain edge addition.
    AddEdge { u: VertexId, v: VertexId },
}

impl Move {
    /// The rotation matching the parity of `path` (vertices in path
    /// order), or `None` for paths shorter than 4.
    pub fn rot_for_path(path: &[VertexId]) -> Option<Move> {
        let h = path.len();
        if h < 4 {
            return None;
        }
        if h == 4 {
            return Some(Move::RotH4 {
                p1: path[0],
                p2: path[1],
                p4: path[3],
            });
        }
        // path[j] holds v_{k+j+1}; the edges move around position s
        let s = h / 2;
        let (a, b, c, d) = (path[s - 2], path[s - 1], path[s + 1], path[s + 2]);
        Some(if h % 2 == 1 {
            Move::RotOdd { a, b, c, d }
        } else {
            Move::RotEven { a, b, c, d }
        })
    }

    fn removed_and_added(&self, g: &Graph) -> Result<(EdgeList, EdgeList)> {
        let n = g.n();
        let check = |v: usize| -> Result<()> {
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            Ok(())
        };
        match *self {
            Move::LemmaRewire { v, target } => {
                check(v)?;
                check(target)?;
                if v == target {
                    return Err(Error::InfeasibleMove(format!(
                        "rewire of {v} onto itself"
                    )));
                }
                let mut removed: Vec<(usize, usize)> =
                    g.neighbors(v).map(|u| (v, u)).collect();
                let mut added = vec![(v, target)];
                if g.has_edge(v, target) {
                    removed.retain(|&(_, u)| u != target);
                    added.clear();
                }
                Ok((removed, added))
            }
            Move::RotOdd { a, b, c, d } | Move::RotEven { a, b, c, d } => {
                for v in [a, b, c, d] {
                    check(v)?;
                }
                let distinct = [a, b, c, d];
                if (1..4).any(|i| distinct[..i].contains(&distinct[i])) {
                    return Err(Error::InfeasibleMove("rotation vertices repeat".into()));
                }
                for (u, v) in [(a, b), (c, d)] {
                    if !g.has_edge(u, v) {
                        return Err(Error::InfeasibleMove(format!(
                            "edge ({u},{v}) to remove is absent"
                        )));
                    }
                }
                for (u, v) in [(b, c), (a, d)] {
                    if g.has_edge(u, v) {
                        return Err(Error::InfeasibleMove(format!(
                            "edge ({u},{v}) to add already exists"
                        )));
                    }
                }
                Ok((vec![(a, b), (c, d)], vec![(b, c), (a, d)]))
            }
            Move::RotH4 { p1, p2, p4 } => {
                for v in [p1, p2, p4] {
                    check(v)?;
                }
                if p1 == p2 || p1 == p4 || p2 == p4 {
                    return Err(Error::InfeasibleMove("rotation vertices repeat".into()));
                }
                if !g.has_edge(p1, p2) {
                    return Err(Error::InfeasibleMove(format!(
                        "edge ({p1},{p2}) to remove is absent"
                    )));
                }
                if g.has_edge(p2, p4) {
                    return Err(Error::InfeasibleMove(format!(
                        "edge ({p2},{p4}) to add already exists"
                    )));
                }
                Ok((vec![(p1, p2)], vec![(p2, p4)]))
            }
            Move::AddEdge { u, v } => {
                check(u)?;
                check(v)?;
                if u == v {
                    return Err(Error::InfeasibleMove(format!("loop at {u}")));
                }
                if g.has_edge(u, v) {
                    return Err(Error::InfeasibleMove(format!(
                        "edge ({u},{v}) already exists"
                    )));
                }
                Ok((vec![], vec![(u, v)]))
            }
        }
    }
}

/// Apply `m` to (a copy of) `g` and report the exact change this makes to
/// the weighted edge sum Σ w_i w_j under the given vertex weights.
pub fn apply_move(g: &Graph, w: &[f64], m: &Move) -> Result<(Graph, f64)> {
    if w.len() != g.n() {
        return Err(Error::WeightLength {
            got: w.len(),
            expected: g.n(),
        });
    }
    let (removed, added) = m.removed_and_added(g)?;
    let mut out = g.clone();
    let mut delta = 0.0;
    for &(u, v) in &removed {
        out.remove_edge(u, v);
        delta -= w[u] * w[v];
    }
    for &(u, v) in &added {
        out.add_edge(u, v);
        delta += w[u] * w[v];
    }
    Ok((out, delta))
}

/// One representative per isomorphism class of connected graphs on n
/// vertices, by iterated vertex augmentation with canonical-form
/// rejection. Deterministic: canonical representatives sorted by their
/// graph6 line.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "enumeration needs n >= 1".into(),
        ));
    }
    if n > ENUMERATION_MAX {
        return Err(Error::EnumerationTooLarge {
            got: n,
            limit: ENUMERATION_MAX,
        });
    }
    let mut level: HashMap<u128, Graph> = HashMap::new();
    let k1 = Graph::complete(1).unwrap();
    level.insert(canon_key(&k1), k1);
    for size in 1..n {
        let mut next: HashMap<u128, Graph> = HashMap::new();
        for g in level.values() {
            let grown = g.disjoint_union(&Graph::empty(1)).unwrap();
            for subset in 1u32..(1 << size) {
                let mut g2 = grown.clone();
                for v in 0..size {
                    if subset >> v & 1 != 0 {
                        g2.add_edge(v, size);
                    }
                }
                let key = canon_key(&g2);
                next.entry(key).or_insert_with(|| canon_graph(&g2));
            }
        }
        level = next;
    }
    let mut out: Vec<Graph> = level.into_values().collect();
    out.sort_by_key(write_graph6);
    Ok(out)
}

/// Scan a stream of same-order graphs and report the K_{2,t}-minor-free
/// members with maximal spectral radius; ties within [`TIE_TOL`] are all
/// reported, sorted by graph6 line. An empty result simply means nothing
/// survived the filter.
pub fn exhaustive_max<I>(source: I, t: usize) -> Result<Vec<SearchRecord>>
where
    I: IntoIterator<Item = Graph>,
{
    let mut expected_n: Option<usize> = None;
    let mut best: Vec<(Graph, f64)> = Vec::new();
    let mut best_mu = f64::NEG_INFINITY;
    for g in source {
        match expected_n {
            None => expected_n = Some(g.n()),
            Some(n) if n != g.n() => return Err(Error::MixedOrders(n, g.n())),
            _ => {}
        }
        if k2t_minor_test(&g, t)?.is_present() {
            continue;
        }
        let mu = spectral_radius(&g, DEFAULT_TOL)?.mu;
        if mu > best_mu + TIE_TOL {
            best_mu = mu;
            best.retain(|&(_, m)| m >= best_mu - TIE_TOL);
            best.push((g, mu));
        } else if mu >= best_mu - TIE_TOL {
            best.push((g, mu));
        }
    }
    let mut records: Vec<SearchRecord> = best
        .into_iter()
        .filter(|&(_, m)| m >= best_mu - TIE_TOL)
        .map(|(g, mu)| SearchRecord::build(&g, t, mu, None))
        .collect();
    records.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(records)
}

/// Partitioned-worker variant of [`exhaustive_max`]: the stream is split
/// across `jobs` threads, each keeps a private best set, and the merge is
/// deterministic regardless of the partitioning.
pub fn exhaustive_max_jobs<I>(source: I, t: usize, jobs: usize) -> Result<Vec<SearchRecord>>
where
    I: IntoIterator<Item = Graph>,
{
    if jobs == 0 {
        return Err(Error::InvalidParameter("jobs must be >= 1".into()));
    }
    let graphs: Vec<Graph> = source.into_iter().collect();
    if let Some(bad) = graphs.windows(2).find(|w| w[0].n() != w[1].n()) {
        return Err(Error::MixedOrders(bad[0].n(), bad[1].n()));
    }
    if jobs == 1 || graphs.len() < 2 {
        return exhaustive_max(graphs, t);
    }
    let chunk = graphs.len().div_ceil(jobs);
    let partials: Vec<Result<Vec<SearchRecord>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| scope.spawn(move || exhaustive_max(part.to_vec(), t)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    let mut all: Vec<SearchRecord> = Vec::new();
    for p in partials {
        all.extend(p?);
    }
    let best_mu = all.iter().map(|r| r.mu).fold(f64::NEG_INFINITY, f64::max);
    let mut records: Vec<SearchRecord> =
        all.into_iter().filter(|r| r.mu >= best_mu - TIE_TOL).collect();
    records.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(records)
}

/// Hill climbing on the spectral radius from a K_{2,t}-minor-free start:
/// each step enumerates single-edge additions, hub rewirings, and the path
/// rotations, applies the best strictly improving move whose result stays
/// minor-free, and stops at a fixpoint or after `max_steps`.
pub fn local_search(t: usize, start: &Graph, max_steps: usize) -> Result<SearchRecord> {
    if start.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if k2t_minor_test(start, t)?.is_present() {
        return Err(Error::StartNotMinorFree(t));
    }
    let mut g = start.clone();
    let mut mu = spectral_radius(&g, DEFAULT_TOL)?.mu;
    let mut trace: Vec<MoveStep> = Vec::new();
    for _ in 0..max_steps {
        let weights = current_weights(&g)?;
        let mut best: Option<(f64, Graph, Move)> = None;
        for mv in candidate_moves(&g, &weights) {
            let Ok((g2, _)) = apply_move(&g, &weights, &mv) else {
                continue;
            };
            // eigensolve first: only improving candidates are worth the
            // minor test
            let mu2 = spectral_radius(&g2, DEFAULT_TOL)?.mu;
            if mu2 <= mu + IMPROVE_EPS || best.as_ref().is_some_and(|(b, _, _)| mu2 <= *b) {
                continue;
            }
            if k2t_minor_test(&g2, t)?.is_present() {
                continue;
            }
            best = Some((mu2, g2, mv));
        }
        match best {
            Some((mu2, g2, mv)) => {
                g = g2;
                mu = mu2;
                trace.push(MoveStep { mv, mu: mu2 });
            }
            None => break,
        }
    }
    Ok(SearchRecord::build(&g, t, mu, Some(trace)))
}

fn current_weights(g: &Graph) -> Result<Vec<f64>> {
    if g.is_connected() {
        Ok(perron_vector(g, DEFAULT_TOL)?.vector.expect("connected"))
    } else {
        let n = g.n();
        Ok(vec![1.0 / (n as f64).sqrt(); n])
    }
}

/// Deterministic move menu: edge additions in index order, rewirings of
/// every vertex onto the anchor, then rotations on the path components
/// hanging off the anchor.
fn candidate_moves(g: &Graph, weights: &[f64]) -> Vec<Move> {
    let n = g.n();
    let mut moves = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                moves.push(Move::AddEdge { u, v });
            }
        }
    }
    let hub = (0..n)
        .max_by(|&x, &y| {
            weights[x]
                .total_cmp(&weights[y])
                .then_with(|| y.cmp(&x)) // ties toward the lower index
        })
        .unwrap_or(0);
    for v in 0..n {
        if v == hub {
            continue;
        }
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        if nbrs.is_empty() || nbrs == [hub] {
            continue; // rewiring would be a plain addition or a no-op
        }
        moves.push(Move::LemmaRewire { v, target: hub });
    }
    let rest: Vec<usize> = (0..n).filter(|&v| v != hub).collect();
    let sub = g.induced(&rest);
    for comp in sub.components() {
        if let Some(path) = path_order(&sub, &comp) {
            let path_g: Vec<usize> = path.into_iter().map(|i| rest[i]).collect();
            if let Some(mv) = Move::rot_for_path(&path_g) {
                moves.push(mv);
            }
        }
    }
    moves
}

/// If the component `comp` of `g` induces a path, return its vertices in
/// path order, starting from the lower-indexed endpoint.
fn path_order(g: &Graph, comp: &[usize]) -> Option<Vec<usize>> {
    let h = comp.len();
    if h == 1 {
        return Some(vec![comp[0]]);
    }
    let deg_in = |v: usize| comp.iter().filter(|&&u| u != v && g.has_edge(u, v)).count();
    let ends: Vec<usize> = comp.iter().copied().filter(|&v| deg_in(v) == 1).collect();
    if ends.len() != 2 || comp.iter().any(|&v| deg_in(v) > 2) {
        return None;
    }
    let mut order = vec![ends[0]];
    let mut prev = usize::MAX;
    while order.len() < h {
        let cur = *order.last().unwrap();
        let next = comp
            .iter()
            .copied()
            .find(|&u| u != prev && u != cur && g.has_edge(u, cur))?;
        prev = cur;
        order.push(next);
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_ft;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enumeration_counts() {
        // connected graphs up to isomorphism: 1, 1, 2, 6, 21, 112, 853
        let expected = [1usize, 1, 2, 6, 21, 112, 853];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let got = enumerate_connected(n).unwrap();
            assert_eq!(got.len(), want, "n = {n}");
            assert!(got.iter().all(Graph::is_connected));
            // no two emitted graphs are isomorphic
            let keys: std::collections::HashSet<u128> =
                got.iter().map(crate::canon::canon_key).collect();
            assert_eq!(keys.len(), want);
        }
        assert!(enumerate_connected(0).is_err());
        assert!(enumerate_connected(9).is_err());
    }

    #[test]
    fn exhaustive_small_cases() {
        // n = 4, t = 3: every 4-vertex graph is K_{2,3}-minor-free; K_4 wins
        let records = exhaustive_max(enumerate_connected(4).unwrap(), 3).unwrap();
        assert_eq!(records.len(), 1);
        assert!((records[0].mu - 3.0).abs() < 1e-9);
        assert_eq!(records[0].graph6, write_graph6(&Graph::complete(4).unwrap()));
        assert!(!records[0].violated);

        // n = 5, t = 2: the bowtie F_2(5) is the unique maximizer
        let records = exhaustive_max(enumerate_connected(5).unwrap(), 2).unwrap();
        assert_eq!(records.len(), 1);
        assert!(records[0].is_ft);
        let expect = (1.0 + 17f64.sqrt()) / 2.0;
        assert!((records[0].mu - expect).abs() < 1e-9);
    }

    #[test]
    fn parallel_merge_is_deterministic() {
        let graphs = enumerate_connected(6).unwrap();
        let one = exhaustive_max_jobs(graphs.clone(), 3, 1).unwrap();
        let three = exhaustive_max_jobs(graphs.clone(), 3, 3).unwrap();
        let eight = exhaustive_max_jobs(graphs, 3, 8).unwrap();
        let rows = |rs: &[SearchRecord]| rs.iter().map(|r| r.csv_row()).collect::<Vec<_>>();
        assert_eq!(rows(&one), rows(&three));
        assert_eq!(rows(&one), rows(&eight));
        assert!(exhaustive_max_jobs(Vec::new(), 3, 0).is_err());
    }

    #[test]
    fn mixed_orders_rejected() {
        let graphs = vec![Graph::complete(3).unwrap(), Graph::complete(4).unwrap()];
        assert_eq!(
            exhaustive_max(graphs, 3).unwrap_err(),
            Error::MixedOrders(3, 4)
        );
    }

    #[test]
    fn rotation_identities() {
        // odd path, order 5: palindromic weights give (w_a - w_b)^2
        let p5 = Graph::path(5).unwrap();
        let w = [0.3, 0.7, 1.1, 0.7, 0.3];
        let mv = Move::rot_for_path(&[0, 1, 2, 3, 4]).unwrap();
        assert!(matches!(mv, Move::RotOdd { .. }));
        let (g2, delta) = apply_move(&p5, &w, &mv).unwrap();
        let expect = (w[0] - w[1]) * (w[0] - w[1]);
        assert!((delta - expect).abs() < 1e-15, "{delta} vs {expect}");
        // a shorter path plus a disjoint triangle
        let comps = g2.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().any(|c| c.len() == 3 && g2.induced(c).edge_count() == 3));

        // even path, order 6: palindromic weights preserve the sum
        let p6 = Graph::path(6).unwrap();
        let w6 = [0.2, 0.5, 0.9, 0.9, 0.5, 0.2];
        let mv = Move::rot_for_path(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(matches!(mv, Move::RotEven { .. }));
        let (_, delta) = apply_move(&p6, &w6, &mv).unwrap();
        assert!(delta.abs() < 1e-15);

        // order-4 path with palindromic weights
        let p4 = Graph::path(4).unwrap();
        let w4 = [0.4, 0.8, 0.8, 0.4];
        let mv = Move::rot_for_path(&[0, 1, 2, 3]).unwrap();
        assert!(matches!(mv, Move::RotH4 { .. }));
        let (g2, delta) = apply_move(&p4, &w4, &mv).unwrap();
        assert!(delta.abs() < 1e-15);
        assert_eq!(g2.components().len(), 2);
    }

    #[test]
    fn predicted_delta_matches_recomputation() {
        use crate::spectral::edge_weight_sum;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let h = rng.random_range(4..=16);
            let path = Graph::path(h).unwrap();
            let w: Vec<f64> = (0..h).map(|_| rng.random_range(0.0..1.0)).collect();
            let order: Vec<usize> = (0..h).collect();
            let mv = Move::rot_for_path(&order).unwrap();
            let before = edge_weight_sum(&path, &w).unwrap();
            let (after_g, delta) = apply_move(&path, &w, &mv).unwrap();
            let after = edge_weight_sum(&after_g, &w).unwrap();
            assert!(
                (delta - (after - before)).abs() <= 1e-14,
                "h={h} delta={delta} recomputed={}",
                after - before
            );
        }
    }

    #[test]
    fn infeasible_moves_error() {
        let p4 = Graph::path(4).unwrap();
        let w = [1.0; 4];
        // edge to add already exists
        let bad = Move::RotH4 { p1: 0, p2: 1, p4: 2 };
        assert!(matches!(
            apply_move(&p4, &w, &bad),
            Err(Error::InfeasibleMove(_))
        ));
        // edge to remove is absent
        let bad = Move::RotOdd { a: 0, b: 2, c: 1, d: 3 };
        assert!(apply_move(&p4, &w, &bad).is_err());
        assert!(apply_move(&p4, &w, &Move::AddEdge { u: 0, v: 1 }).is_err());
        assert!(apply_move(&p4, &w, &Move::AddEdge { u: 2, v: 2 }).is_err());
        assert!(apply_move(&p4, &[1.0; 3], &Move::AddEdge { u: 0, v: 2 }).is_err());
    }

    #[test]
    fn lemma_rewire_semantics() {
        let f = build_ft(3, 10).unwrap();
        let w: Vec<f64> = vec![1.0; 10];
        let (g2, delta) = apply_move(&f, &w, &Move::LemmaRewire { v: 1, target: 5 }).unwrap();
        // vertex 1 lost hub + two block mates, gained vertex 5
        assert_eq!(g2.degree(1), 1);
        assert!(g2.has_edge(1, 5));
        assert!((delta - (1.0 - 3.0)).abs() < 1e-15);

        // rewiring onto an existing neighbor keeps that edge only
        let (g3, _) = apply_move(&f, &w, &Move::LemmaRewire { v: 1, target: 0 }).unwrap();
        assert_eq!(g3.degree(1), 1);
        assert!(g3.has_edge(1, 0));
    }

    #[test]
    fn local_search_star_start() {
        let start = Graph::star(10).unwrap();
        let rec = local_search(3, &start, 40).unwrap();
        assert!(rec.mu >= 3.0 - 1e-9, "must not lose ground: {}", rec.mu);
        let final_g = crate::graph6::parse_graph6(&rec.graph6).unwrap();
        assert!(!k2t_minor_test(&final_g, 3).unwrap().is_present());
        // mu is non-decreasing along the trace
        let trace = rec.move_trace.as_ref().unwrap();
        let mut last = 3.0 - 1e-9;
        for step in trace {
            assert!(step.mu >= last);
            last = step.mu;
        }
    }

    #[test]
    fn local_search_family_is_fixpoint() {
        // no strictly improving minor-free move exists at F_t(n)
        for (t, n) in [(2, 9), (2, 12), (3, 10), (3, 13), (3, 27), (3, 40), (4, 17), (5, 21)] {
            let f = build_ft(t, n).unwrap();
            let rec = local_search(t, &f, 5).unwrap();
            let trace = rec.move_trace.as_ref().unwrap();
            assert!(trace.is_empty(), "t={t} n={n} moved: {trace:?}");
            assert!(rec.is_ft);
        }
    }

    #[test]
    fn local_search_hub_path_rotates_to_family() {
        // a hub joined to P_9: the climb rotates the path into triangles
        let start = Graph::complete(1)
            .unwrap()
            .join(&Graph::path(9).unwrap())
            .unwrap();
        let start_mu = spectral_radius(&start, DEFAULT_TOL).unwrap().mu;
        let rec = local_search(3, &start, 50).unwrap();
        let trace = rec.move_trace.as_ref().unwrap();
        assert!(
            trace
                .iter()
                .any(|s| matches!(s.mv, Move::RotOdd { .. } | Move::RotEven { .. } | Move::RotH4 { .. })),
            "no rotation fired: {trace:?}"
        );
        let mut last = start_mu;
        for step in trace {
            assert!(step.mu > last, "mu must strictly increase");
            last = step.mu;
        }
        let final_g = crate::graph6::parse_graph6(&rec.graph6).unwrap();
        assert!(!k2t_minor_test(&final_g, 3).unwrap().is_present());
        // the non-triangle component of g - hub shrinks as rotations land;
        // the climb ends at the extremal family member
        assert!(rec.is_ft, "ended at {} with mu {}", rec.graph6, rec.mu);
        assert!((rec.mu - crate::spectral::ft_mu_exact(3, 10).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn local_search_rejects_bad_start() {
        let k6 = Graph::complete(6).unwrap();
        assert_eq!(
            local_search(2, &k6, 5).unwrap_err(),
            Error::StartNotMinorFree(2)
        );
    }

    #[test]
    fn path_order_detection() {
        let g = Graph::path(5).unwrap();
        assert_eq!(path_order(&g, &[0, 1, 2, 3, 4]).unwrap(), vec![0, 1, 2, 3, 4]);
        let c4 = Graph::cycle(4).unwrap();
        assert!(path_order(&c4, &[0, 1, 2, 3]).is_none());
        let k3 = Graph::complete(3).unwrap();
        assert!(path_order(&k3, &[0, 1, 2]).is_none());
    }
}
