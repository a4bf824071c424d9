//! Deciding "G ⊆ family" up to a bipartition-respecting relabeling.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{BlockStructure, FamilySpec};
use crate::error::{Error, Result};
use crate::graph::{bits, BipartiteGraph};

/// Default cap on `n_x + n_y` for containment searches.
pub const CONTAINMENT_CEILING: usize = 32;

/// Certificate that `G ⊆ M_{n,m}^{s,t}`: a hole with no `G`-edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentWitness {
    /// X-vertices of the hole (size `s`, or `t` when swapped).
    pub x_hole: Vec<usize>,
    /// Y-vertices of the hole (size `t`, or `s` when swapped).
    pub y_hole: Vec<usize>,
    /// The hole was found with the parts exchanged (`t` on the X side).
    pub swapped: bool,
}

/// How `G` sits inside a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `X(G)` maps into the family's X side.
    Direct,
    /// `X(G)` maps into the family's Y side.
    Swapped,
}

fn check_ceiling(g: &BipartiteGraph, ceiling: usize) -> Result<()> {
    if g.order() > ceiling {
        return Err(Error::TooLarge {
            what: format!("containment search on {} vertices", g.order()),
            limit: ceiling,
        });
    }
    Ok(())
}

/// Finds `s` X-vertices and `t` Y-vertices with no edges between them,
/// enumerating subsets of the smaller side, lowest-degree vertices first.
fn find_hole(g: &BipartiteGraph, s: usize, t: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    if s > g.n_x() || t > g.n_y() {
        return None;
    }
    if s == 0 || t == 0 {
        return Some(((0..s).collect(), (0..t).collect()));
    }
    let (side, other_need, nbhd): (Vec<usize>, usize, Vec<u128>) = if s <= t {
        (
            (0..g.n_x()).collect(),
            t,
            (0..g.n_x()).map(|x| g.row(x)).collect(),
        )
    } else {
        (
            (0..g.n_y()).collect(),
            s,
            (0..g.n_y()).map(|y| g.col(y)).collect(),
        )
    };
    let other_size = if s <= t { g.n_y() } else { g.n_x() };
    let choose = s.min(t);
    let mut order = side;
    order.sort_by_key(|&v| (nbhd[v].count_ones(), v));
    // A vertex with more than other_size − other_need neighbours can never
    // be in a hole.
    order.retain(|&v| nbhd[v].count_ones() as usize + other_need <= other_size);
    let full = if other_size >= 128 {
        u128::MAX
    } else {
        (1u128 << other_size) - 1
    };
    for combo in order.iter().copied().combinations(choose) {
        let covered = combo.iter().fold(0u128, |acc, &v| acc | nbhd[v]);
        let free = full & !covered;
        if free.count_ones() as usize >= other_need {
            let mut picked: Vec<usize> = combo;
            picked.sort_unstable();
            let others: Vec<usize> = bits(free).take(other_need).collect();
            return Some(if s <= t {
                (picked, others)
            } else {
                (others, picked)
            });
        }
    }
    None
}

/// Decides `G ⊆ M_{n_x,n_y}^{s,t}` with the default size ceiling.
pub fn contained_in_m(
    g: &BipartiteGraph,
    s: usize,
    t: usize,
    allow_part_swap: bool,
) -> Result<Option<ContainmentWitness>> {
    contained_in_m_bounded(g, s, t, allow_part_swap, CONTAINMENT_CEILING)
}

/// Decides `G ⊆ M_{n_x,n_y}^{s,t}`: some `s` X-vertices and `t` Y-vertices
/// span no edge of `G`. With `allow_part_swap` on a balanced graph the
/// mirrored hole (`t` X-vertices, `s` Y-vertices) is also accepted.
pub fn contained_in_m_bounded(
    g: &BipartiteGraph,
    s: usize,
    t: usize,
    allow_part_swap: bool,
    ceiling: usize,
) -> Result<Option<ContainmentWitness>> {
    check_ceiling(g, ceiling)?;
    if let Some((x_hole, y_hole)) = find_hole(g, s, t) {
        return Ok(Some(ContainmentWitness {
            x_hole,
            y_hole,
            swapped: false,
        }));
    }
    if allow_part_swap && g.is_balanced() {
        if let Some((x_hole, y_hole)) = find_hole(g, t, s) {
            return Ok(Some(ContainmentWitness {
                x_hole,
                y_hole,
                swapped: true,
            }));
        }
    }
    Ok(None)
}

/// Part-preserving embedding of `g` into the blow-up described by `bs`.
///
/// X-vertices are assigned to X-blocks by backtracking (highest degree
/// first, pruned by block degree and by keeping every Y-vertex placeable);
/// Y-vertices are then matched to Y-block slots by augmenting paths.
fn embeds(g: &BipartiteGraph, bs: &BlockStructure) -> bool {
    if g.n_x() != bs.n_x() || g.n_y() != bs.n_y() {
        return false;
    }
    let nbx = bs.x_blocks.len();
    let nby = bs.y_blocks.len();
    // Y-blocks reachable from each X-block, as a bitmask over Y-blocks.
    let x_reach: Vec<u64> = (0..nbx)
        .map(|i| {
            (0..nby)
                .filter(|&j| bs.adj[i][j])
                .fold(0u64, |a, j| a | 1 << j)
        })
        .collect();
    let x_deg: Vec<usize> = (0..nbx).map(|i| bs.x_block_degree(i)).collect();
    let y_deg: Vec<usize> = (0..nby).map(|j| bs.y_block_degree(j)).collect();
    let gy_deg = g.y_degrees();
    let all_y_blocks: u64 = if nby >= 64 {
        u64::MAX
    } else {
        (1u64 << nby) - 1
    };
    // Y-vertex y may only use blocks of large enough degree.
    let y_init: Vec<u64> = (0..g.n_y())
        .map(|y| {
            (0..nby)
                .filter(|&j| bs.y_blocks[j] > 0 && y_deg[j] >= gy_deg[y])
                .fold(0u64, |a, j| a | 1 << j)
        })
        .collect();
    if y_init.contains(&0) {
        return false;
    }
    let mut order: Vec<usize> = (0..g.n_x()).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(g.degree_x(x)), x));

    struct Search<'a> {
        g: &'a BipartiteGraph,
        bs: &'a BlockStructure,
        order: Vec<usize>,
        x_reach: Vec<u64>,
        x_deg: Vec<usize>,
        remaining: Vec<usize>,
        y_allowed: Vec<u64>,
        all_y_blocks: u64,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return match_y(&self.y_allowed, &self.bs.y_blocks);
            }
            let x = self.order[depth];
            let dx = self.g.degree_x(x);
            let row = self.g.row(x);
            let mut tried_shapes: Vec<(u64, usize)> = Vec::new();
            for b in 0..self.remaining.len() {
                if self.remaining[b] == 0 || self.x_deg[b] < dx {
                    continue;
                }
                // Blocks with identical reach and degree are interchangeable
                // for the remaining search only if their leftover capacity
                // also matches; skip exact repeats.
                let shape = (self.x_reach[b], self.remaining[b]);
                if tried_shapes.contains(&shape) {
                    continue;
                }
                tried_shapes.push(shape);
                let saved: Vec<(usize, u64)> = bits(row).map(|y| (y, self.y_allowed[y])).collect();
                let mut ok = true;
                for &(y, _) in &saved {
                    self.y_allowed[y] &= self.x_reach[b] & self.all_y_blocks;
                    if self.y_allowed[y] == 0 {
                        ok = false;
                    }
                }
                if ok {
                    self.remaining[b] -= 1;
                    let found = self.run(depth + 1);
                    self.remaining[b] += 1;
                    if found {
                        return true;
                    }
                }
                for (y, m) in saved {
                    self.y_allowed[y] = m;
                }
            }
            false
        }
    }

    let mut search = Search {
        g,
        bs,
        order,
        x_reach,
        x_deg,
        remaining: bs.x_blocks.clone(),
        y_allowed: y_init,
        all_y_blocks,
    };
    search.run(0)
}

/// Assigns every Y-vertex to an allowed Y-block without exceeding block
/// sizes (bipartite matching against expanded block slots).
fn match_y(allowed: &[u64], sizes: &[usize]) -> bool {
    let slots: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &sz)| std::iter::repeat_n(b, sz))
        .collect();
    if slots.len() != allowed.len() {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; slots.len()];

    fn augment(
        y: usize,
        allowed: &[u64],
        slots: &[usize],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for (i, &b) in slots.iter().enumerate() {
            if (allowed[y] >> b) & 1 == 0 || seen[i] {
                continue;
            }
            seen[i] = true;
            match owner[i] {
                None => {
                    owner[i] = Some(y);
                    return true;
                }
                Some(other) => {
                    if augment(other, allowed, slots, owner, seen) {
                        owner[i] = Some(y);
                        return true;
                    }
                }
            }
        }
        false
    }

    (0..allowed.len()).all(|y| {
        let mut seen = vec![false; slots.len()];
        augment(y, allowed, &slots, &mut owner, &mut seen)
    })
}

/// Decides `G ⊆ family` with parts preserved (X into X).
pub fn contained_in_family(g: &BipartiteGraph, spec: &FamilySpec) -> Result<bool> {
    Ok(contained_in_family_oriented(g, spec, false)?.is_some())
}

/// Decides `G ⊆ family`; with `allow_part_swap` the embedding of `G` with
/// its parts exchanged is tried as well. Returns the orientation found.
pub fn contained_in_family_oriented(
    g: &BipartiteGraph,
    spec: &FamilySpec,
    allow_part_swap: bool,
) -> Result<Option<Orientation>> {
    let bs = spec.blocks()?;
    // Hole search scales with the hole size rather than the order, so the
    // ceiling only guards the general embedding search.
    if let FamilySpec::M { s, t, .. } = *spec {
        if g.n_x() == bs.n_x() && g.n_y() == bs.n_y() && find_hole(g, s, t).is_some() {
            return Ok(Some(Orientation::Direct));
        }
        if allow_part_swap
            && g.n_y() == bs.n_x()
            && g.n_x() == bs.n_y()
            && find_hole(&g.transpose(), s, t).is_some()
        {
            return Ok(Some(Orientation::Swapped));
        }
        return Ok(None);
    }
    check_ceiling(g, CONTAINMENT_CEILING)?;
    if embeds(g, &bs) {
        return Ok(Some(Orientation::Direct));
    }
    if allow_part_swap && embeds(&g.transpose(), &bs) {
        return Ok(Some(Orientation::Swapped));
    }
    Ok(None)
}

/// Whether `G` is isomorphic to the family member (bipartition respected,
/// parts optionally exchanged): containment plus equal edge counts.
pub fn is_family_member(
    g: &BipartiteGraph,
    spec: &FamilySpec,
    allow_part_swap: bool,
) -> Result<Option<Orientation>> {
    let e = spec.closed_form_edge_count()?.edges;
    if g.edge_count() != e {
        return Ok(None);
    }
    contained_in_family_oriented(g, spec, allow_part_swap)
}
