//! Exact Hamiltonian-path decisions and (2p-)Hamilton-biconnectedness.
//!
//! The oracle is a subset DP: for a fixed start `u`, `dp[S]` is the set of
//! vertices `w` such that some path from `u` visits exactly `S` and ends at
//! `w`. One DP from `u` answers every target `v` at once. Bipartite parity is
//! only used as a pre-screen.

mod catalog;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BalancedDeletionSet, BipartiteGraph, Part, VertexRef};

pub use catalog::{
    appendix_path_catalog, catalog_covers_biconnectedness, compositions, CatalogId, CatalogPath,
    PathCatalog,
};

/// Largest vertex count the subset DP accepts.
pub const DP_CEILING: usize = 26;

/// Largest number of balanced deletion sets `C(n_x,p)·C(n_y,p)` examined.
pub const DELETION_CEILING: u64 = 1_000_000;

/// A sequence of vertices; valid when it is a Hamiltonian path of the host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamPath {
    pub vertices: Vec<VertexRef>,
}

impl HamPath {
    /// Checks that the path visits every vertex of `g` exactly once along
    /// edges of `g`. Returns the first problem found.
    pub fn check(&self, g: &BipartiteGraph) -> std::result::Result<(), String> {
        let mut seen_x = vec![false; g.n_x()];
        let mut seen_y = vec![false; g.n_y()];
        for v in &self.vertices {
            if !g.contains_vertex(*v) {
                return Err(format!("vertex {v} is not in the graph"));
            }
            let slot = match v.part {
                Part::X => &mut seen_x[v.index],
                Part::Y => &mut seen_y[v.index],
            };
            if *slot {
                return Err(format!("vertex {v} is visited twice"));
            }
            *slot = true;
        }
        if self.vertices.len() != g.order() {
            return Err(format!(
                "path has {} vertices, graph has {}",
                self.vertices.len(),
                g.order()
            ));
        }
        for w in self.vertices.windows(2) {
            if !g.adjacent(w[0], w[1]) {
                return Err(format!("{} and {} are not adjacent", w[0], w[1]));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &BipartiteGraph) -> bool {
        self.check(g).is_ok()
    }

    pub fn endpoints(&self) -> Option<(VertexRef, VertexRef)> {
        Some((*self.vertices.first()?, *self.vertices.last()?))
    }
}

/// A failing `(W, u, v)`: after deleting `W` there is no Hamiltonian
/// `u`–`v` path. `u` and `v` are indices in the original graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureWitness {
    #[serde(flatten)]
    pub w: BalancedDeletionSet,
    pub u: VertexRef,
    pub v: VertexRef,
}

/// Outcome of a (2p-)Hamilton-biconnectedness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamVerdict {
    pub holds: bool,
    pub p: usize,
    pub witness: Option<FailureWitness>,
    /// Endpoint pairs examined, in enumeration order, up to and including
    /// the failing one.
    pub pairs_checked: u64,
}

/// Whether bipartite alternation permits a Hamiltonian `u`–`v` path.
pub fn parity_feasible(n_x: usize, n_y: usize, u: VertexRef, v: VertexRef) -> bool {
    if n_x == n_y {
        u.part != v.part
    } else if n_x == n_y + 1 {
        u.part == Part::X && v.part == Part::X
    } else if n_y == n_x + 1 {
        u.part == Part::Y && v.part == Part::Y
    } else {
        false
    }
}

/// Subset DP from one start vertex over a relabeled vertex set in which the
/// start is the highest bit; table index omits that bit.
struct PathDp {
    /// Local adjacency masks; local vertex `n−1` is the start.
    adj: Vec<u32>,
    /// Local index → global index (X first, then Y).
    to_global: Vec<usize>,
    table: Vec<u32>,
}

impl PathDp {
    fn new(global_adj: &[u32], start: usize) -> PathDp {
        let n = global_adj.len();
        let to_global: Vec<usize> = (0..n).filter(|&v| v != start).chain([start]).collect();
        let mut to_local = vec![0usize; n];
        for (l, &g) in to_global.iter().enumerate() {
            to_local[g] = l;
        }
        let adj = to_global
            .iter()
            .map(|&g| {
                let mut m = 0u32;
                let mut a = global_adj[g];
                while a != 0 {
                    let b = a.trailing_zeros() as usize;
                    a &= a - 1;
                    m |= 1 << to_local[b];
                }
                m
            })
            .collect();
        let mut dp = PathDp {
            adj,
            to_global,
            table: Vec::new(),
        };
        dp.run();
        dp
    }

    fn run(&mut self) {
        let n = self.adj.len();
        let top = n - 1;
        let size = 1usize << top;
        let mut table = vec![0u32; size];
        table[0] = 1 << top;
        for idx in 0..size {
            let mut ends = table[idx];
            if ends == 0 {
                continue;
            }
            let mask = (idx as u32) | (1u32 << top);
            while ends != 0 {
                let w = ends.trailing_zeros() as usize;
                ends &= ends - 1;
                let mut next = self.adj[w] & !mask;
                while next != 0 {
                    let b = next.trailing_zeros() as usize;
                    next &= next - 1;
                    table[idx | (1 << b)] |= 1 << b;
                }
            }
        }
        self.table = table;
    }

    /// Global indices of vertices at which a Hamiltonian path from the start
    /// can end.
    fn full_ends(&self) -> u32 {
        let local = self.table[self.table.len() - 1];
        let mut out = 0u32;
        let mut m = local;
        while m != 0 {
            let l = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.to_global[l];
        }
        out
    }

    /// Walks the table backwards from global end vertex `end`.
    fn path_to(&self, end: usize) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let top = n - 1;
        let mut cur = self.to_global.iter().position(|&g| g == end)?;
        let mut idx = self.table.len() - 1;
        if (self.table[idx] >> cur) & 1 == 0 {
            return None;
        }
        let mut rev = vec![cur];
        while cur != top {
            let prev_idx = idx & !(1usize << cur);
            let cands = self.table[prev_idx] & self.adj[cur];
            if cands == 0 {
                return None;
            }
            let w = cands.trailing_zeros() as usize;
            rev.push(w);
            idx = prev_idx;
            cur = w;
        }
        rev.reverse();
        Some(rev.into_iter().map(|l| self.to_global[l]).collect())
    }
}

fn global_adjacency(g: &BipartiteGraph) -> Vec<u32> {
    let n_x = g.n_x();
    let mut adj = vec![0u32; g.order()];
    for (x, y) in g.edges() {
        adj[x] |= 1 << (n_x + y);
        adj[n_x + y] |= 1 << x;
    }
    adj
}

fn global_index(g: &BipartiteGraph, v: VertexRef) -> usize {
    match v.part {
        Part::X => v.index,
        Part::Y => g.n_x() + v.index,
    }
}

fn vertex_of(g: &BipartiteGraph, i: usize) -> VertexRef {
    if i < g.n_x() {
        VertexRef::x(i)
    } else {
        VertexRef::y(i - g.n_x())
    }
}

fn check_dp_size(g: &BipartiteGraph) -> Result<()> {
    if g.order() > DP_CEILING {
        return Err(Error::TooLarge {
            what: format!("Hamiltonian path DP on {} vertices", g.order()),
            limit: DP_CEILING,
        });
    }
    Ok(())
}

/// A Hamiltonian path from `u` to `v`, if one exists.
pub fn ham_path_between(g: &BipartiteGraph, u: VertexRef, v: VertexRef) -> Result<Option<HamPath>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidEndpoints(format!("u = v = {u}")));
    }
    check_dp_size(g)?;
    if !parity_feasible(g.n_x(), g.n_y(), u, v) {
        return Ok(None);
    }
    let dp = PathDp::new(&global_adjacency(g), global_index(g, u));
    Ok(dp.path_to(global_index(g, v)).map(|p| HamPath {
        vertices: p.into_iter().map(|i| vertex_of(g, i)).collect(),
    }))
}

/// Whether `g` has a Hamiltonian cycle. Only balanced graphs with at least
/// two vertices per part can have one.
pub fn has_hamiltonian_cycle(g: &BipartiteGraph) -> Result<bool> {
    check_dp_size(g)?;
    if !g.is_balanced() || g.n_x() < 2 {
        return Ok(false);
    }
    // A cycle through x0 is a Hamiltonian path from x0 to one of its
    // neighbours closed by that edge.
    let ends = PathDp::new(&global_adjacency(g), 0).full_ends();
    let nbrs = (g.row(0) as u32) << g.n_x();
    Ok(ends & nbrs != 0)
}

/// Endpoint pairs required by Hamilton-biconnectedness, in check order:
/// all `X × Y` pairs for balanced graphs, all `u < v` pairs in `X` for
/// nearly balanced ones (the larger part must be X).
fn pairs_required(n_x: usize, n_y: usize) -> u64 {
    if n_x == n_y {
        (n_x * n_y) as u64
    } else {
        (n_x * n_x.saturating_sub(1) / 2) as u64
    }
}

/// First failing endpoint pair of `g` (larger part X) and the 1-based
/// position of that pair in the check order.
fn first_failure(g: &BipartiteGraph) -> Option<(VertexRef, VertexRef, u64)> {
    let n_x = g.n_x();
    let n_y = g.n_y();
    if g.order() < 2 {
        return None;
    }
    let adj = global_adjacency(g);
    let mut position = 0u64;
    for u in 0..n_x {
        let targets: Vec<usize> = if n_x == n_y {
            (n_x..n_x + n_y).collect()
        } else {
            (u + 1..n_x).collect()
        };
        if targets.is_empty() {
            continue;
        }
        let ends = PathDp::new(&adj, u).full_ends();
        for v in targets {
            position += 1;
            if (ends >> v) & 1 == 0 {
                return Some((VertexRef::x(u), vertex_of(g, v), position));
            }
        }
    }
    None
}

/// Hamilton-biconnectedness (the `p = 0` case).
pub fn is_hamilton_biconnected(g: &BipartiteGraph) -> Result<HamVerdict> {
    is_2p_hamilton_biconnected(g, 0)
}

fn nearly_balanced_orientation(g: &BipartiteGraph) -> Result<bool> {
    let (a, b) = (g.n_x(), g.n_y());
    if a == b || a == b + 1 {
        Ok(false)
    } else if b == a + 1 {
        Ok(true)
    } else {
        Err(Error::NotNearlyBalanced { n_x: a, n_y: b })
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// 2p-Hamilton-biconnectedness: every balanced deletion of `p + p` vertices
/// leaves a Hamilton-biconnected graph.
///
/// Deletion sets are enumerated lexicographically (X-subsets outer,
/// Y-subsets inner); the witness is the first failure in that order no
/// matter how work is scheduled. A graph with `|Y| = |X| + 1` is handled by
/// exchanging the parts; the witness is reported in the input's labels.
pub fn is_2p_hamilton_biconnected(g: &BipartiteGraph, p: usize) -> Result<HamVerdict> {
    let swapped = nearly_balanced_orientation(g)?;
    let h = if swapped { g.transpose() } else { g.clone() };
    let n_x = h.n_x();
    let n_y = h.n_y();
    if p > n_y {
        // No balanced deletion set of this size exists.
        return Ok(HamVerdict {
            holds: true,
            p,
            witness: None,
            pairs_checked: 0,
        });
    }
    let count = binomial(n_x, p) * binomial(n_y, p);
    if count > DELETION_CEILING {
        return Err(Error::TooLarge {
            what: format!("{count} balanced deletion sets"),
            limit: DELETION_CEILING as usize,
        });
    }
    if h.order() - 2 * p > DP_CEILING {
        return Err(Error::TooLarge {
            what: format!("Hamiltonian path DP on {} vertices", h.order() - 2 * p),
            limit: DP_CEILING,
        });
    }
    let x_sets: Vec<Vec<usize>> = (0..n_x).combinations(p).collect();
    let y_sets: Vec<Vec<usize>> = (0..n_y).combinations(p).collect();
    let per_w = pairs_required(n_x - p, n_y - p);
    let found = (0..x_sets.len() * y_sets.len())
        .into_par_iter()
        .map(|idx| -> Result<Option<(usize, FailureWitness, u64)>> {
            let wx = &x_sets[idx / y_sets.len()];
            let wy = &y_sets[idx % y_sets.len()];
            let w = BalancedDeletionSet::new(wx.clone(), wy.clone())?;
            let rest = h.delete_balanced_set(&w)?;
            Ok(first_failure(&rest).map(|(u, v, pos)| {
                let keep_x: Vec<usize> = (0..n_x).filter(|x| !wx.contains(x)).collect();
                let keep_y: Vec<usize> = (0..n_y).filter(|y| !wy.contains(y)).collect();
                let lift = |r: VertexRef| match r.part {
                    Part::X => VertexRef::x(keep_x[r.index]),
                    Part::Y => VertexRef::y(keep_y[r.index]),
                };
                (
                    idx,
                    FailureWitness {
                        w,
                        u: lift(u),
                        v: lift(v),
                    },
                    pos,
                )
            }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let flip = |v: VertexRef| VertexRef {
        part: v.part.other(),
        index: v.index,
    };
    match found {
        None => Ok(HamVerdict {
            holds: true,
            p,
            witness: None,
            pairs_checked: count * per_w,
        }),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!("filtered by find_map_first"),
        Some(Ok(Some((idx, mut wit, pos)))) => {
            if swapped {
                wit = FailureWitness {
                    w: BalancedDeletionSet {
                        x_set: wit.w.y_set,
                        y_set: wit.w.x_set,
                    },
                    u: flip(wit.u),
                    v: flip(wit.v),
                };
            }
            Ok(HamVerdict {
                holds: false,
                p,
                witness: Some(wit),
                pairs_checked: idx as u64 * per_w + pos,
            })
        }
    }
}

/// Re-checks a failure witness: after deleting `W` there must be no
/// Hamiltonian `u`–`v` path.
pub fn verify_witness(g: &BipartiteGraph, wit: &FailureWitness) -> Result<bool> {
    if wit.w.x_set.contains(&wit.u.index) && wit.u.part == Part::X
        || wit.w.y_set.contains(&wit.u.index) && wit.u.part == Part::Y
        || wit.w.x_set.contains(&wit.v.index) && wit.v.part == Part::X
        || wit.w.y_set.contains(&wit.v.index) && wit.v.part == Part::Y
    {
        return Err(Error::InvalidEndpoints(
            "witness endpoint lies inside the deletion set".into(),
        ));
    }
    let rest = g.delete_balanced_set(&wit.w)?;
    let compact = |v: VertexRef| {
        let removed = match v.part {
            Part::X => &wit.w.x_set,
            Part::Y => &wit.w.y_set,
        };
        VertexRef {
            part: v.part,
            index: v.index - removed.iter().filter(|&&r| r < v.index).count(),
        }
    };
    Ok(ham_path_between(&rest, compact(wit.u), compact(wit.v))?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::graph::{enumerate_all, random_graph};
    use itertools::Itertools;
    use proptest::prelude::*;

    /// Permutation-enumeration oracle for a Hamiltonian u–v path.
    fn naive_path(g: &BipartiteGraph, u: VertexRef, v: VertexRef) -> bool {
        let all: Vec<VertexRef> = (0..g.n_x())
            .map(VertexRef::x)
            .chain((0..g.n_y()).map(VertexRef::y))
            .filter(|&w| w != u && w != v)
            .collect();
        let k = all.len();
        all.into_iter().permutations(k).any(|mid| {
            let mut seq = vec![u];
            seq.extend(mid);
            seq.push(v);
            seq.windows(2).all(|w| g.adjacent(w[0], w[1]))
        })
    }

    fn all_vertices(g: &BipartiteGraph) -> Vec<VertexRef> {
        (0..g.n_x())
            .map(VertexRef::x)
            .chain((0..g.n_y()).map(VertexRef::y))
            .collect()
    }

    #[test]
    fn k22_paths() {
        let g = BipartiteGraph::complete(2, 2).unwrap();
        let p = ham_path_between(&g, VertexRef::x(0), VertexRef::y(1))
            .unwrap()
            .unwrap();
        assert!(p.is_valid(&g));
        assert_eq!(p.endpoints(), Some((VertexRef::x(0), VertexRef::y(1))));
        assert!(ham_path_between(&g, VertexRef::x(0), VertexRef::x(1))
            .unwrap()
            .is_none());
    }

    #[test]
    fn endpoint_errors() {
        let g = BipartiteGraph::complete(2, 2).unwrap();
        assert!(matches!(
            ham_path_between(&g, VertexRef::x(0), VertexRef::x(0)),
            Err(Error::InvalidEndpoints(_))
        ));
        assert!(matches!(
            ham_path_between(&g, VertexRef::x(0), VertexRef::y(5)),
            Err(Error::InvalidVertex(_))
        ));
        let big = BipartiteGraph::complete(14, 13).unwrap();
        assert!(matches!(
            ham_path_between(&big, VertexRef::x(0), VertexRef::x(1)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn dp_matches_permutation_oracle_exhaustively() {
        for (a, b) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            for g in enumerate_all(a, b).unwrap() {
                let vs = all_vertices(&g);
                for &u in &vs {
                    for &v in &vs {
                        if u == v {
                            continue;
                        }
                        let dp = ham_path_between(&g, u, v).unwrap();
                        let naive = naive_path(&g, u, v);
                        assert_eq!(dp.is_some(), naive, "{g:?} {u} {v}");
                        if let Some(p) = dp {
                            assert!(p.is_valid(&g));
                            assert_eq!(p.endpoints(), Some((u, v)));
                        }
                        if naive {
                            assert!(parity_feasible(a, b, u, v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complete_graphs_are_biconnected() {
        for n in 1..=6 {
            assert!(
                is_hamilton_biconnected(&BipartiteGraph::complete(n, n).unwrap())
                    .unwrap()
                    .holds
            );
            for p in 0..=n.saturating_sub(2) {
                let v = is_2p_hamilton_biconnected(&BipartiteGraph::complete(n, n).unwrap(), p)
                    .unwrap();
                assert!(v.holds, "K_{n},{n} p={p}");
            }
        }
    }

    #[test]
    fn m332_is_not_biconnected() {
        let g = FamilySpec::M {
            n: 3,
            m: 3,
            s: 2,
            t: 1,
        }
        .build()
        .unwrap();
        // The X-vertex of degree n−t and the Y-vertex of degree n.
        assert_eq!(g.degree_x(0), 2);
        assert_eq!(g.degree_y(0), 3);
        assert!(ham_path_between(&g, VertexRef::x(0), VertexRef::y(0))
            .unwrap()
            .is_none());
        let v = is_hamilton_biconnected(&g).unwrap();
        assert!(!v.holds);
        assert!(verify_witness(&g, v.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn nearly_balanced_m_fails() {
        let g = FamilySpec::M {
            n: 4,
            m: 3,
            s: 2,
            t: 1,
        }
        .build()
        .unwrap();
        let v = is_hamilton_biconnected(&g).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!((w.u.part, w.v.part), (Part::X, Part::X));
        // Brute force over all X pairs agrees with the verdict.
        let any_fail = (0..4)
            .tuple_combinations()
            .any(|(a, b)| !naive_path(&g, VertexRef::x(a), VertexRef::x(b)));
        assert!(any_fail);
    }

    #[test]
    fn n1_fails_between_its_two_full_degree_vertices() {
        let g = FamilySpec::N1 { n: 6, p: 0 }.build().unwrap();
        // X2 and Y2 are the blocks of full degree n.
        let x = (0..6).find(|&x| g.degree_x(x) == 6).unwrap();
        let y = (0..6).find(|&y| g.degree_y(y) == 6).unwrap();
        assert!(ham_path_between(&g, VertexRef::x(x), VertexRef::y(y))
            .unwrap()
            .is_none());
        let v = is_2p_hamilton_biconnected(&g, 0).unwrap();
        assert!(!v.holds);
        assert!(verify_witness(&g, v.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn m4421_with_p1_fails() {
        let g = FamilySpec::M {
            n: 4,
            m: 4,
            s: 2,
            t: 1,
        }
        .build()
        .unwrap();
        let v = is_2p_hamilton_biconnected(&g, 1).unwrap();
        assert!(!v.holds);
        assert!(verify_witness(&g, v.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn y_heavy_graphs_are_transposed() {
        let g = FamilySpec::M {
            n: 4,
            m: 3,
            s: 2,
            t: 1,
        }
        .build()
        .unwrap()
        .transpose();
        let v = is_hamilton_biconnected(&g).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!((w.u.part, w.v.part), (Part::Y, Part::Y));
        assert!(verify_witness(&g, &w).unwrap());
    }

    #[test]
    fn hamiltonian_cycles() {
        assert!(has_hamiltonian_cycle(&BipartiteGraph::complete(3, 3).unwrap()).unwrap());
        assert!(!has_hamiltonian_cycle(&BipartiteGraph::complete(1, 1).unwrap()).unwrap());
        assert!(!has_hamiltonian_cycle(&BipartiteGraph::complete(3, 2).unwrap()).unwrap());
        // Two disjoint 4-cycles.
        let g = BipartiteGraph::from_fn(4, 4, |x, y| x / 2 == y / 2).unwrap();
        assert!(!has_hamiltonian_cycle(&g).unwrap());
        for g in enumerate_all(3, 3).unwrap() {
            let naive = (0..3)
                .any(|y| g.has_edge(0, y) && naive_path(&g, VertexRef::x(0), VertexRef::y(y)));
            assert_eq!(has_hamiltonian_cycle(&g).unwrap(), naive, "{g:?}");
        }
    }

    #[test]
    fn unbalanced_is_rejected() {
        let g = BipartiteGraph::complete(5, 3).unwrap();
        assert!(matches!(
            is_2p_hamilton_biconnected(&g, 0),
            Err(Error::NotNearlyBalanced { .. })
        ));
    }

    #[test]
    fn deletion_ceiling() {
        let g = BipartiteGraph::complete(40, 40).unwrap();
        assert!(matches!(
            is_2p_hamilton_biconnected(&g, 5),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn pairs_checked_accounting() {
        let g = BipartiteGraph::complete(4, 4).unwrap();
        assert_eq!(is_2p_hamilton_biconnected(&g, 0).unwrap().pairs_checked, 16);
        assert_eq!(
            is_2p_hamilton_biconnected(&g, 1).unwrap().pairs_checked,
            16 * 9
        );
        let g = BipartiteGraph::complete(5, 4).unwrap();
        assert_eq!(
            is_2p_hamilton_biconnected(&g, 1).unwrap().pairs_checked,
            5 * 4 * 6
        );
    }

    #[test]
    fn witness_is_first_in_lexicographic_order() {
        // Sequential reference: scan W in order, then pairs in order.
        for seed in 0..40 {
            let g = random_graph(5, 5, 0.75, seed).unwrap();
            for p in 0..=1 {
                let v = is_2p_hamilton_biconnected(&g, p).unwrap();
                let mut reference = None;
                'outer: for wx in (0..5).combinations(p) {
                    for wy in (0..5).combinations(p) {
                        let w = BalancedDeletionSet::new(wx.clone(), wy.clone()).unwrap();
                        for u in (0..5).filter(|x| !wx.contains(x)) {
                            for t in (0..5).filter(|y| !wy.contains(y)) {
                                let wit = FailureWitness {
                                    w: w.clone(),
                                    u: VertexRef::x(u),
                                    v: VertexRef::y(t),
                                };
                                if verify_witness(&g, &wit).unwrap() {
                                    reference = Some(wit);
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
                assert_eq!(v.witness, reference, "seed {seed} p {p}");
                assert_eq!(v.holds, reference.is_none());
            }
        }
    }

    proptest! {
        #[test]
        fn adding_an_edge_never_breaks_the_property(seed in any::<u64>(), p in 0usize..2, x in 0usize..5, y in 0usize..5) {
            let g = random_graph(5, 5, 0.7, seed).unwrap();
            if is_2p_hamilton_biconnected(&g, p).unwrap().holds {
                let h = g.with_edge(x, y).unwrap();
                prop_assert!(is_2p_hamilton_biconnected(&h, p).unwrap().holds);
            }
        }

        #[test]
        fn witnesses_reverify(seed in any::<u64>(), p in 0usize..2) {
            let g = random_graph(6, 5, 0.7, seed).unwrap();
            let v = is_2p_hamilton_biconnected(&g, p).unwrap();
            if let Some(w) = &v.witness {
                prop_assert!(verify_witness(&g, w).unwrap());
            }
        }

        #[test]
        fn returned_paths_are_valid(seed in any::<u64>(), a in 0usize..5, b in 0usize..5) {
            let g = random_graph(5, 5, 0.6, seed).unwrap();
            if let Some(p) = ham_path_between(&g, VertexRef::x(a), VertexRef::y(b)).unwrap() {
                prop_assert!(p.is_valid(&g));
                prop_assert_eq!(p.endpoints(), Some((VertexRef::x(a), VertexRef::y(b))));
            }
        }
    }
}
