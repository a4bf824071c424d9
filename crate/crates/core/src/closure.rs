//! The k-biclosure: repeatedly join non-adjacent cross pairs whose degree
//! sum is at least `k` until none remain.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, low_bits, BipartiteGraph};
use crate::hamilton::{is_2p_hamilton_biconnected, HamVerdict};

/// One edge added by the closure, with the degree sum that licensed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddedEdge {
    pub x: usize,
    pub y: usize,
    pub degree_sum: usize,
}

/// Result of [`biclosure`]: the closed graph and the addition trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureResult {
    pub closed_graph: BipartiteGraph,
    pub added_edges: Vec<AddedEdge>,
    pub threshold: usize,
}

/// Computes `cl_k(G)`.
///
/// A worklist holds every currently eligible non-adjacent pair in
/// lexicographic order; the smallest is added first and only pairs touching
/// the two endpoints are re-examined afterwards. The fixed point does not
/// depend on this order; the order only fixes the recorded trace.
pub fn biclosure(g: &BipartiteGraph, k: usize) -> ClosureResult {
    let n_x = g.n_x();
    let n_y = g.n_y();
    let mut rows: Vec<u128> = g.rows().to_vec();
    let mut dx = g.x_degrees();
    let mut dy = g.y_degrees();
    let mut work: BTreeSet<(usize, usize)> = BTreeSet::new();
    for x in 0..n_x {
        for y in 0..n_y {
            if (rows[x] >> y) & 1 == 0 && dx[x] + dy[y] >= k {
                work.insert((x, y));
            }
        }
    }
    let mut added = Vec::new();
    while let Some((x, y)) = work.pop_first() {
        if (rows[x] >> y) & 1 == 1 {
            continue;
        }
        let degree_sum = dx[x] + dy[y];
        debug_assert!(degree_sum >= k);
        rows[x] |= 1u128 << y;
        dx[x] += 1;
        dy[y] += 1;
        added.push(AddedEdge { x, y, degree_sum });
        // Degrees only grow, so only pairs at x or at y can become eligible.
        for yy in 0..n_y {
            if (rows[x] >> yy) & 1 == 0 && dx[x] + dy[yy] >= k {
                work.insert((x, yy));
            }
        }
        for xx in 0..n_x {
            if (rows[xx] >> y) & 1 == 0 && dx[xx] + dy[y] >= k {
                work.insert((xx, y));
            }
        }
    }
    let closed_graph =
        BipartiteGraph::from_rows(n_x, n_y, rows).expect("same part sizes as the input");
    ClosureResult {
        closed_graph,
        added_edges: added,
        threshold: k,
    }
}

/// Whether no non-adjacent cross pair has degree sum `>= k`.
pub fn is_k_closed(g: &BipartiteGraph, k: usize) -> bool {
    let dx = g.x_degrees();
    let dy = g.y_degrees();
    (0..g.n_x()).all(|x| {
        let missing = !g.row(x) & low_bits(g.n_y());
        bits(missing).all(|y| dx[x] + dy[y] < k)
    })
}

/// Lemma-threshold comparison of `G` against its closure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureEquivalence {
    pub p: usize,
    /// `n + p + 2` for balanced graphs, `n + p + 1` for nearly balanced ones
    /// (`n = |X|`).
    pub threshold: usize,
    pub added_edges: usize,
    pub original: HamVerdict,
    pub closed: HamVerdict,
    /// The two verdicts agree. Disagreement would falsify the closure lemma.
    pub agree: bool,
}

/// Closure threshold at which 2p-Hamilton-biconnectedness is preserved.
pub fn closure_threshold(g: &BipartiteGraph, p: usize) -> Result<usize> {
    let (n_x, n_y) = (g.n_x().max(g.n_y()), g.n_x().min(g.n_y()));
    if n_x == n_y {
        Ok(n_x + p + 2)
    } else if n_x == n_y + 1 {
        Ok(n_x + p + 1)
    } else {
        Err(Error::NotNearlyBalanced {
            n_x: g.n_x(),
            n_y: g.n_y(),
        })
    }
}

/// Evaluates the 2p-HB oracle on `G` and on its closure at the lemma
/// threshold and reports whether they agree.
pub fn closure_equivalence_check(g: &BipartiteGraph, p: usize) -> Result<ClosureEquivalence> {
    let threshold = closure_threshold(g, p)?;
    let closure = biclosure(g, threshold);
    let original = is_2p_hamilton_biconnected(g, p)?;
    let closed = is_2p_hamilton_biconnected(&closure.closed_graph, p)?;
    Ok(ClosureEquivalence {
        p,
        threshold,
        added_edges: closure.added_edges.len(),
        agree: original.holds == closed.holds,
        original,
        closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c6() -> BipartiteGraph {
        BipartiteGraph::build(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    /// Closure by full rescans with a random choice among eligible pairs.
    fn shuffled_closure(g: &BipartiteGraph, k: usize, seed: u64) -> BipartiteGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = g.clone();
        loop {
            let dx = h.x_degrees();
            let dy = h.y_degrees();
            let mut eligible: Vec<(usize, usize)> = (0..h.n_x())
                .flat_map(|x| (0..h.n_y()).map(move |y| (x, y)))
                .filter(|&(x, y)| !h.has_edge(x, y) && dx[x] + dy[y] >= k)
                .collect();
            if eligible.is_empty() {
                return h;
            }
            eligible.shuffle(&mut rng);
            let (x, y) = eligible[0];
            h = h.with_edge(x, y).unwrap();
        }
    }

    #[test]
    fn six_cycle_closes_to_k33() {
        let r = biclosure(&c6(), 4);
        assert_eq!(r.closed_graph, BipartiteGraph::complete(3, 3).unwrap());
        assert_eq!(r.added_edges.len(), 3);
        assert_eq!(
            r.added_edges[0],
            AddedEdge {
                x: 0,
                y: 2,
                degree_sum: 4
            }
        );
    }

    #[test]
    fn complete_and_empty_are_fixed() {
        let k = BipartiteGraph::complete(3, 4).unwrap();
        for t in 0..10 {
            let r = biclosure(&k, t);
            assert_eq!(r.closed_graph, k);
            assert!(r.added_edges.is_empty());
        }
        let e = BipartiteGraph::empty(2, 2).unwrap();
        let r = biclosure(&e, 1);
        assert_eq!(r.closed_graph, e);
        assert!(r.added_edges.is_empty());
    }

    #[test]
    fn closedness_of_six_cycle() {
        assert!(!is_k_closed(&c6(), 4));
        assert!(is_k_closed(&c6(), 5));
        assert!(is_k_closed(&BipartiteGraph::complete(4, 4).unwrap(), 0));
    }

    #[test]
    fn equivalence_on_k44_minus_matching() {
        let g = BipartiteGraph::from_fn(4, 4, |x, y| x != y).unwrap();
        let r = closure_equivalence_check(&g, 0).unwrap();
        assert_eq!(r.threshold, 6);
        assert!(r.agree);
        let k = BipartiteGraph::complete(4, 4).unwrap();
        let r = closure_equivalence_check(&k, 1).unwrap();
        assert!(r.agree && r.original.holds);
    }

    #[test]
    fn equivalence_rejects_unbalanced() {
        let g = BipartiteGraph::complete(5, 3).unwrap();
        assert!(matches!(
            closure_equivalence_check(&g, 0),
            Err(Error::NotNearlyBalanced { .. })
        ));
    }

    proptest! {
        #[test]
        fn closure_is_order_independent(seed in any::<u64>(), k in 0usize..12, p in 0.2f64..0.8) {
            let g = random_graph(5, 5, p, seed).unwrap();
            let fixed = biclosure(&g, k).closed_graph;
            for shuffle in 0..5 {
                prop_assert_eq!(&shuffled_closure(&g, k, seed ^ shuffle), &fixed);
            }
        }

        #[test]
        fn closure_contract(seed in any::<u64>(), k in 0usize..13, nx in 1usize..7, ny in 1usize..7) {
            let g = random_graph(nx, ny, 0.5, seed).unwrap();
            let r = biclosure(&g, k);
            prop_assert!(g.is_subgraph_of(&r.closed_graph));
            prop_assert!(is_k_closed(&r.closed_graph, k));
            prop_assert_eq!(r.closed_graph.edge_count(), g.edge_count() + r.added_edges.len());
            // Idempotence.
            prop_assert!(biclosure(&r.closed_graph, k).added_edges.is_empty());
            // Replay the trace: each addition was licensed when made.
            let mut h = g.clone();
            for a in &r.added_edges {
                prop_assert!(!g.has_edge(a.x, a.y));
                let sum = h.degree_x(a.x) + h.degree_y(a.y);
                prop_assert_eq!(sum, a.degree_sum);
                prop_assert!(sum >= k);
                h = h.with_edge(a.x, a.y).unwrap();
            }
            prop_assert_eq!(h, r.closed_graph);
        }

        #[test]
        fn closure_is_monotone_in_k(seed in any::<u64>(), k in 1usize..12, d in 0usize..4) {
            let g = random_graph(5, 6, 0.5, seed).unwrap();
            let lo = k.saturating_sub(d);
            prop_assert!(biclosure(&g, k).closed_graph.is_subgraph_of(&biclosure(&g, lo).closed_graph));
        }
    }
}
