//! Labeled bipartite graphs stored as per-X-vertex bitsets of Y-neighbours.

mod bel;
mod generate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use bel::{parse_bel, to_bel};
pub use generate::{enumerate_all, random_graph, ENUMERATION_CEILING};

/// Largest supported part size (one `u128` row per X-vertex).
pub const MAX_PART: usize = 128;

/// Which side of the bipartition a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    X,
    Y,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::X => Part::Y,
            Part::Y => Part::X,
        }
    }
}

/// A vertex addressed by its part and its 0-based index within that part.
///
/// Text form is `x3` / `y0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub part: Part,
    pub index: usize,
}

impl VertexRef {
    pub fn x(index: usize) -> Self {
        VertexRef {
            part: Part::X,
            index,
        }
    }

    pub fn y(index: usize) -> Self {
        VertexRef {
            part: Part::Y,
            index,
        }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.part {
            Part::X => 'x',
            Part::Y => 'y',
        };
        write!(f, "{tag}{}", self.index)
    }
}

impl FromStr for VertexRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("expected a vertex like x3 or y0, got {s:?}"),
        };
        let mut chars = s.chars();
        let part = match chars.next() {
            Some('x') | Some('X') => Part::X,
            Some('y') | Some('Y') => Part::Y,
            _ => return Err(bad()),
        };
        let index = chars.as_str().parse().map_err(|_| bad())?;
        Ok(VertexRef { part, index })
    }
}

impl Serialize for VertexRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A balanced set `W` of `p` X-vertices and `p` Y-vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BalancedDeletionSet {
    #[serde(rename = "W_x")]
    pub x_set: Vec<usize>,
    #[serde(rename = "W_y")]
    pub y_set: Vec<usize>,
}

impl BalancedDeletionSet {
    /// Builds a deletion set; indices are sorted and must be distinct with
    /// equally many on each side.
    pub fn new(mut x_set: Vec<usize>, mut y_set: Vec<usize>) -> Result<Self> {
        x_set.sort_unstable();
        y_set.sort_unstable();
        let dup = |v: &[usize]| v.windows(2).any(|w| w[0] == w[1]);
        if x_set.len() != y_set.len() || dup(&x_set) || dup(&y_set) {
            return Err(Error::UnbalancedDeletion {
                x: x_set.len(),
                y: y_set.len(),
            });
        }
        Ok(BalancedDeletionSet { x_set, y_set })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Half-size `p` of the set.
    pub fn p(&self) -> usize {
        self.x_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_set.is_empty() && self.y_set.is_empty()
    }
}

/// A simple bipartite graph on labeled parts `X = {0..n_x}` and
/// `Y = {0..n_y}`. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n_x: usize,
    n_y: usize,
    rows: Vec<u128>,
}

pub(crate) fn low_bits(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates the indices of the set bits of `mask`, ascending.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn check_sizes(n_x: usize, n_y: usize) -> Result<()> {
    if n_x > MAX_PART || n_y > MAX_PART {
        return Err(Error::TooLarge {
            what: format!("part size max({n_x}, {n_y})"),
            limit: MAX_PART,
        });
    }
    Ok(())
}

impl BipartiteGraph {
    /// Builds a graph from an edge list; repeated pairs collapse to one edge.
    pub fn build(n_x: usize, n_y: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_sizes(n_x, n_y)?;
        let mut rows = vec![0u128; n_x];
        for &(x, y) in edges {
            if x >= n_x || y >= n_y {
                return Err(Error::InvalidEdge { x, y, n_x, n_y });
            }
            rows[x] |= 1u128 << y;
        }
        Ok(BipartiteGraph { n_x, n_y, rows })
    }

    /// Builds a graph with an edge `(x, y)` wherever `adjacent(x, y)` holds.
    pub fn from_fn(
        n_x: usize,
        n_y: usize,
        adjacent: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        check_sizes(n_x, n_y)?;
        let rows = (0..n_x)
            .map(|x| {
                (0..n_y)
                    .filter(|&y| adjacent(x, y))
                    .fold(0u128, |row, y| row | (1u128 << y))
            })
            .collect();
        Ok(BipartiteGraph { n_x, n_y, rows })
    }

    /// Builds a graph directly from X-rows; bits at or above `n_y` are dropped.
    pub fn from_rows(n_x: usize, n_y: usize, rows: Vec<u128>) -> Result<Self> {
        check_sizes(n_x, n_y)?;
        if rows.len() != n_x {
            return Err(Error::InvalidFamilyParams(format!(
                "{} rows supplied for {n_x} X-vertices",
                rows.len()
            )));
        }
        let mask = low_bits(n_y);
        let rows = rows.into_iter().map(|r| r & mask).collect();
        Ok(BipartiteGraph { n_x, n_y, rows })
    }

    pub fn empty(n_x: usize, n_y: usize) -> Result<Self> {
        Self::from_fn(n_x, n_y, |_, _| false)
    }

    pub fn complete(n_x: usize, n_y: usize) -> Result<Self> {
        Self::from_fn(n_x, n_y, |_, _| true)
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    /// Total number of vertices.
    pub fn order(&self) -> usize {
        self.n_x + self.n_y
    }

    pub fn part_size(&self, part: Part) -> usize {
        match part {
            Part::X => self.n_x,
            Part::Y => self.n_y,
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.n_x == self.n_y
    }

    /// `|X| = |Y| + 1`.
    pub fn is_nearly_balanced(&self) -> bool {
        self.n_x == self.n_y + 1
    }

    pub fn contains_vertex(&self, v: VertexRef) -> bool {
        v.index < self.part_size(v.part)
    }

    pub fn check_vertex(&self, v: VertexRef) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.n_x && y < self.n_y && (self.rows[x] >> y) & 1 == 1
    }

    /// Whether two vertices (in either order) are adjacent.
    pub fn adjacent(&self, a: VertexRef, b: VertexRef) -> bool {
        match (a.part, b.part) {
            (Part::X, Part::Y) => self.has_edge(a.index, b.index),
            (Part::Y, Part::X) => self.has_edge(b.index, a.index),
            _ => false,
        }
    }

    /// Y-neighbourhood of X-vertex `x` as a bitset.
    pub fn row(&self, x: usize) -> u128 {
        self.rows[x]
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    /// X-neighbourhood of Y-vertex `y` as a bitset (derived view).
    pub fn col(&self, y: usize) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| (*r >> y) & 1 == 1)
            .fold(0u128, |c, (x, _)| c | (1u128 << x))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn degree_x(&self, x: usize) -> usize {
        self.rows[x].count_ones() as usize
    }

    pub fn degree_y(&self, y: usize) -> usize {
        self.rows.iter().filter(|r| (*r >> y) & 1 == 1).count()
    }

    pub fn degree(&self, v: VertexRef) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(match v.part {
            Part::X => self.degree_x(v.index),
            Part::Y => self.degree_y(v.index),
        })
    }

    pub fn x_degrees(&self) -> Vec<usize> {
        (0..self.n_x).map(|x| self.degree_x(x)).collect()
    }

    pub fn y_degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n_y];
        for &r in &self.rows {
            for y in bits(r) {
                d[y] += 1;
            }
        }
        d
    }

    /// Minimum degree δ(G); a graph with an empty part has no defined δ.
    pub fn min_degree(&self) -> Result<usize> {
        if self.n_x == 0 || self.n_y == 0 {
            return Err(Error::EmptyPart);
        }
        let dx = self.x_degrees().into_iter().min().unwrap_or(0);
        let dy = self.y_degrees().into_iter().min().unwrap_or(0);
        Ok(dx.min(dy))
    }

    /// All edges in lexicographic `(x, y)` order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &r)| bits(r).map(move |y| (x, y)))
            .collect()
    }

    /// The bipartite complement: `(x, y)` is an edge iff it is not one here.
    pub fn complement(&self) -> BipartiteGraph {
        let mask = low_bits(self.n_y);
        BipartiteGraph {
            n_x: self.n_x,
            n_y: self.n_y,
            rows: self.rows.iter().map(|r| !r & mask).collect(),
        }
    }

    /// The graph with the roles of X and Y exchanged.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph {
            n_x: self.n_y,
            n_y: self.n_x,
            rows: (0..self.n_y).map(|y| self.col(y)).collect(),
        }
    }

    pub fn with_edge(&self, x: usize, y: usize) -> Result<BipartiteGraph> {
        self.edge_op(x, y, true)
    }

    pub fn without_edge(&self, x: usize, y: usize) -> Result<BipartiteGraph> {
        self.edge_op(x, y, false)
    }

    fn edge_op(&self, x: usize, y: usize, add: bool) -> Result<BipartiteGraph> {
        if x >= self.n_x || y >= self.n_y {
            return Err(Error::InvalidEdge {
                x,
                y,
                n_x: self.n_x,
                n_y: self.n_y,
            });
        }
        let mut g = self.clone();
        if add {
            g.rows[x] |= 1u128 << y;
        } else {
            g.rows[x] &= !(1u128 << y);
        }
        Ok(g)
    }

    /// Induced subgraph on the kept vertices; surviving vertices are
    /// re-indexed in their original relative order.
    pub fn induced(&self, keep_x: u128, keep_y: u128) -> BipartiteGraph {
        let keep_x = keep_x & low_bits(self.n_x);
        let keep_y = keep_y & low_bits(self.n_y);
        let ys: Vec<usize> = bits(keep_y).collect();
        let rows = bits(keep_x)
            .map(|x| {
                let r = self.rows[x];
                ys.iter()
                    .enumerate()
                    .filter(|(_, &y)| (r >> y) & 1 == 1)
                    .fold(0u128, |acc, (i, _)| acc | (1u128 << i))
            })
            .collect();
        BipartiteGraph {
            n_x: keep_x.count_ones() as usize,
            n_y: ys.len(),
            rows,
        }
    }

    /// Removes the vertices of `W` and compacts indices, preserving order.
    pub fn delete_balanced_set(&self, w: &BalancedDeletionSet) -> Result<BipartiteGraph> {
        let mut keep_x = low_bits(self.n_x);
        let mut keep_y = low_bits(self.n_y);
        for &x in &w.x_set {
            self.check_vertex(VertexRef::x(x))?;
            keep_x &= !(1u128 << x);
        }
        for &y in &w.y_set {
            self.check_vertex(VertexRef::y(y))?;
            keep_y &= !(1u128 << y);
        }
        Ok(self.induced(keep_x, keep_y))
    }

    /// Connected components as `(X-set, Y-set)` bitset pairs, ordered by
    /// their smallest vertex (X before Y).
    pub fn components(&self) -> Vec<(u128, u128)> {
        let cols: Vec<u128> = (0..self.n_y).map(|y| self.col(y)).collect();
        let mut seen_x = 0u128;
        let mut seen_y = 0u128;
        let mut out = Vec::new();
        let start = |sx: u128, sy: u128, seen_x: &mut u128, seen_y: &mut u128| {
            let (mut cx, mut cy) = (sx, sy);
            loop {
                let nx = cy_to_x(&cols, cy) | cx;
                let ny = cx_to_y(&self.rows, nx) | cy;
                if nx == cx && ny == cy {
                    break;
                }
                cx = nx;
                cy = ny;
            }
            *seen_x |= cx;
            *seen_y |= cy;
            (cx, cy)
        };
        for x in 0..self.n_x {
            if (seen_x >> x) & 1 == 0 {
                out.push(start(1u128 << x, 0, &mut seen_x, &mut seen_y));
            }
        }
        for y in 0..self.n_y {
            if (seen_y >> y) & 1 == 0 {
                out.push(start(0, 1u128 << y, &mut seen_x, &mut seen_y));
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether every edge of `self` is an edge of `other` on the same
    /// labeled vertex set.
    pub fn is_subgraph_of(&self, other: &BipartiteGraph) -> bool {
        self.n_x == other.n_x
            && self.n_y == other.n_y
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }
}

fn cy_to_x(cols: &[u128], ys: u128) -> u128 {
    bits(ys).fold(0, |acc, y| acc | cols[y])
}

fn cx_to_y(rows: &[u128], xs: u128) -> u128 {
    bits(xs).fold(0, |acc, x| acc | rows[x])
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BipartiteGraph({}+{}, {:?})",
            self.n_x,
            self.n_y,
            self.edges()
        )
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_bel(self))
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bel(s)
    }
}

impl Serialize for BipartiteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_bel(self))
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_bel(&s).map_err(serde::de::Error::custom)
    }
}
