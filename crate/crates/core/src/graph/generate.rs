//! Seeded random graphs and exhaustive enumeration of small labeled graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BipartiteGraph;
use crate::error::{Error, Result};

/// Largest `n_x · n_y` for which [`enumerate_all`] will run (2^25 graphs).
pub const ENUMERATION_CEILING: usize = 25;

/// A G(n_x, n_y, p) random bipartite graph. Each pair `(x, y)` is decided in
/// lexicographic order from a ChaCha8 stream seeded with `seed`, so equal
/// arguments always give the same graph.
pub fn random_graph(
    n_x: usize,
    n_y: usize,
    edge_probability: f64,
    seed: u64,
) -> Result<BipartiteGraph> {
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {edge_probability} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![0u128; n_x];
    for row in rows.iter_mut() {
        for y in 0..n_y {
            if rng.gen_bool(edge_probability) {
                *row |= 1u128 << y;
            }
        }
    }
    BipartiteGraph::from_rows(n_x, n_y, rows)
}

/// Every labeled bipartite graph on parts of the given sizes, exactly once.
///
/// Graph number `i` has edge `(x, y)` iff bit `x·n_y + y` of `i` is set.
pub fn enumerate_all(n_x: usize, n_y: usize) -> Result<impl Iterator<Item = BipartiteGraph>> {
    let cells = n_x * n_y;
    if cells > ENUMERATION_CEILING {
        return Err(Error::TooLarge {
            what: format!("enumeration of {n_x}x{n_y} = {cells} vertex pairs"),
            limit: ENUMERATION_CEILING,
        });
    }
    Ok((0u64..1u64 << cells).map(move |code| {
        let rows = (0..n_x)
            .map(|x| ((code >> (x * n_y)) as u128) & ((1u128 << n_y) - 1))
            .collect();
        BipartiteGraph::from_rows(n_x, n_y, rows).expect("sizes checked above")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all(1, 1).unwrap().count(), 2);
        assert_eq!(enumerate_all(2, 2).unwrap().count(), 16);
        assert_eq!(enumerate_all(0, 3).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_is_injective_and_total() {
        let all: HashSet<BipartiteGraph> = enumerate_all(3, 2).unwrap().collect();
        assert_eq!(all.len(), 64);
        let by_edges: usize = all.iter().map(|g| g.edge_count()).sum();
        assert_eq!(by_edges, 6 * 32);
    }

    #[test]
    fn enumeration_ceiling() {
        assert!(matches!(enumerate_all(5, 6), Err(Error::TooLarge { .. })));
        assert!(enumerate_all(5, 5).is_ok());
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        assert_eq!(
            random_graph(4, 4, 1.0, 7).unwrap(),
            BipartiteGraph::complete(4, 4).unwrap()
        );
        assert_eq!(random_graph(4, 4, 0.0, 7).unwrap().edge_count(), 0);
        assert_eq!(
            random_graph(6, 5, 0.5, 42).unwrap(),
            random_graph(6, 5, 0.5, 42).unwrap()
        );
        assert!(random_graph(2, 2, 1.5, 0).is_err());
    }
}
