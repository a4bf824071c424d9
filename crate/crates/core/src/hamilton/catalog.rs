//! Explicit Hamiltonian-path catalogs for the positive constructions.
//!
//! Each catalog lists representative paths built from named vertex labels
//! with path concatenation. The labels are resolved against the fixed block
//! layout of the construction, so every path can be validated mechanically.
//! Nearly balanced variants are derived from a balanced path by a surgery:
//! delete one `Y`-vertex, cut one edge, and join the pieces with two new
//! edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::{BalancedDeletionSet, BipartiteGraph, VertexRef};

use super::{is_hamilton_biconnected, HamPath};

/// Identifies a catalog and the graph its paths live in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogId {
    /// `M^{s,t;-}` on `s+t+1` vertices per side.
    Mminus { s: usize, t: usize },
    /// `N^{0,2}` on `n_minus_p` vertices per side.
    N02 { n_minus_p: usize },
    /// The H-graph: `F(n,m,k,p,l)` minus a fixed balanced set of size `2p`.
    /// `r` lists how many vertices are removed from each pendant group when
    /// `l <= p` (empty otherwise). `m = n - 1` selects the starred paths.
    H {
        n: usize,
        m: usize,
        k: usize,
        p: usize,
        l: usize,
        r: Vec<usize>,
    },
}

impl std::fmt::Display for CatalogId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CatalogId::Mminus { s, t } => write!(f, "M-:{s},{t}"),
            CatalogId::N02 { n_minus_p } => write!(f, "N02:{n_minus_p}"),
            CatalogId::H { n, m, k, p, l, r } => {
                write!(f, "H:{n},{m},{k},{p},{l}")?;
                if !r.is_empty() {
                    let parts: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                    write!(f, ";{}", parts.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CatalogId> {
        let bad = || Error::InvalidArgument(format!("unrecognised catalog id {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let (main, extra) = match rest.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let nums = |text: &str| -> Result<Vec<usize>> {
            text.split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let v = nums(main)?;
        match (kind, v.as_slice(), extra) {
            ("M-", [s, t], None) => Ok(CatalogId::Mminus { s: *s, t: *t }),
            ("N02", [n], None) => Ok(CatalogId::N02 { n_minus_p: *n }),
            ("H", [n, m, k, p, l], extra) => Ok(CatalogId::H {
                n: *n,
                m: *m,
                k: *k,
                p: *p,
                l: *l,
                r: extra.map(nums).transpose()?.unwrap_or_default(),
            }),
            _ => Err(bad()),
        }
    }
}

/// One catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogPath {
    pub label: String,
    pub path: HamPath,
}

/// A catalog together with the graph it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCatalog {
    pub id: CatalogId,
    pub graph: BipartiteGraph,
    pub paths: Vec<CatalogPath>,
}

impl PathCatalog {
    /// Labels and reasons of the entries that are not Hamiltonian paths of
    /// the catalog's graph.
    pub fn invalid_paths(&self) -> Vec<(String, String)> {
        self.paths
            .iter()
            .filter_map(|p| {
                p.path
                    .check(&self.graph)
                    .err()
                    .map(|e| (p.label.clone(), e))
            })
            .collect()
    }

    pub fn all_valid(&self) -> bool {
        self.invalid_paths().is_empty()
    }
}

/// Whether every catalog path is a Hamiltonian path of `g` and `g` is
/// Hamilton-biconnected.
pub fn catalog_covers_biconnectedness(catalog: &PathCatalog, g: &BipartiteGraph) -> bool {
    catalog.paths.iter().all(|p| p.path.is_valid(g))
        && is_hamilton_biconnected(g).map(|v| v.holds).unwrap_or(false)
}

/// All vectors of `parts` non-negative entries, each at most `max_part`,
/// summing to `total`, in lexicographic order.
pub fn compositions(total: usize, parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(
        total: usize,
        parts: usize,
        max_part: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=max_part.min(total) {
            cur.push(v);
            go(total - v, parts - 1, max_part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// Builds the catalog named by `id`.
pub fn appendix_path_catalog(id: &CatalogId) -> Result<PathCatalog> {
    match id {
        CatalogId::Mminus { s, t } => mminus_catalog(*s, *t),
        CatalogId::N02 { n_minus_p } => n02_catalog(*n_minus_p),
        CatalogId::H { n, m, k, p, l, r } => h_catalog(*n, *m, *k, *p, *l, r),
    }
}

fn params(msg: impl Into<String>) -> Error {
    Error::InvalidFamilyParams(msg.into())
}

/// Resolves a 1-based label index within a block of `size` vertices that
/// starts at `offset`.
fn slot(name: &str, i: usize, size: usize, offset: usize) -> Result<usize> {
    if i == 0 || i > size {
        return Err(params(format!(
            "label {name}{i} does not exist (block has {size})"
        )));
    }
    Ok(offset + i - 1)
}

fn cat(parts: &[&[VertexRef]]) -> Vec<VertexRef> {
    parts.concat()
}

fn finish(
    id: CatalogId,
    graph: BipartiteGraph,
    paths: Vec<(String, Vec<VertexRef>)>,
) -> PathCatalog {
    PathCatalog {
        id,
        graph,
        paths: paths
            .into_iter()
            .map(|(label, vertices)| CatalogPath {
                label,
                path: HamPath { vertices },
            })
            .collect(),
    }
}

fn mminus_catalog(s: usize, t: usize) -> Result<PathCatalog> {
    if s < 2 || t < 1 {
        return Err(params("M- catalog requires s >= 2 and t >= 1"));
    }
    let n = s + t + 1;
    let graph = FamilySpec::Mminus { n, m: n, s, t }.build()?;
    let u1 = |i| slot("u1", i, s - 1, 0).map(VertexRef::x);
    let u = VertexRef::x(s - 1);
    let u2 = |i| slot("u2", i, t + 1, s).map(VertexRef::x);
    let v1 = |i| slot("v1", i, s, 0).map(VertexRef::y);
    let v = VertexRef::y(s);
    let v2 = |i| slot("v2", i, t, s + 1).map(VertexRef::y);

    let mut p1 = Vec::new();
    for i in 1..s {
        p1.extend([u1(i)?, v1(i)?]);
    }
    let mut p2 = Vec::new();
    for i in 1..=t {
        p2.extend([u2(i)?, v2(i)?]);
    }
    let uv = [u, v];
    let tail = [u2(t + 1)?, v1(s)?];
    let paths = vec![
        ("R1", cat(&[&p1, &uv, &p2, &tail])),
        ("R2", cat(&[&p1, &p2, &tail, &uv])),
        ("R3", cat(&[&p1, &uv, &tail, &p2])),
        ("R4", cat(&[&uv, &p2, &tail, &p1])),
        ("R5", cat(&[&[u, v1(s)?], &p1, &p2, &[u2(t + 1)?, v]])),
        ("R6", cat(&[&uv, &tail, &p1, &p2])),
        ("R7", cat(&[&p2, &[u2(t + 1)?, v, u, v1(s)?], &p1])),
        ("R8", cat(&[&p2, &tail, &p1, &uv])),
        ("R9", cat(&[&tail, &p1, &uv, &p2])),
    ];
    Ok(finish(
        CatalogId::Mminus { s, t },
        graph,
        paths.into_iter().map(|(l, p)| (l.to_string(), p)).collect(),
    ))
}

fn n02_catalog(n: usize) -> Result<PathCatalog> {
    if n < 6 {
        return Err(params("N02 catalog requires n-p >= 6"));
    }
    let graph = FamilySpec::N2 { n, p: 0 }.build()?;
    let t = n - 3;
    let u1 = |i| slot("u1", i, t, 0).map(VertexRef::x);
    let v1 = |i| slot("v1", i, t, 0).map(VertexRef::y);
    let (u21, u22, u) = (VertexRef::x(t), VertexRef::x(t + 1), VertexRef::x(t + 2));
    let (v21, v22, v) = (VertexRef::y(t), VertexRef::y(t + 1), VertexRef::y(t + 2));
    let prefix = |len: usize| -> Result<Vec<VertexRef>> {
        let mut out = Vec::new();
        for i in 1..=len {
            out.extend([u1(i)?, v1(i)?]);
        }
        Ok(out)
    };
    let pt1 = prefix(t - 1)?;
    let pt = prefix(t)?;
    let (u1t, v1t) = (u1(t)?, v1(t)?);
    let paths = vec![
        ("R1", cat(&[&pt1, &[u21, v, u22, v22, u, v21, u1t, v1t]])),
        ("R2", cat(&[&pt, &[u21, v, u22, v22, u, v21]])),
        ("R3", cat(&[&pt, &[u21, v22, u, v21, u22, v]])),
        ("R4", cat(&[&[u21, v, u22, v22, u, v21], &pt])),
        ("R5", cat(&[&[u21, v, u22, v1t], &pt1, &[u1t, v22, u, v21]])),
        ("R6", cat(&[&[u21, v22, u, v21], &pt, &[u22, v]])),
        ("R7", cat(&[&[u, v21, u22, v, u21, v22], &pt])),
        ("R8", cat(&[&[u, v21, u22, v, u21, v1t], &pt1, &[u1t, v22]])),
        ("R9", cat(&[&[u, v21], &pt, &[u21, v22, u22, v]])),
    ];
    Ok(finish(
        CatalogId::N02 { n_minus_p: n },
        graph,
        paths.into_iter().map(|(l, p)| (l.to_string(), p)).collect(),
    ))
}

/// Label resolver for the H-graph in its balanced layout:
/// `X = [t | g | groups of s_i + 1]`, `Y = [n - k | h]`.
struct HLabels {
    t: usize,
    g: usize,
    s: Vec<usize>,
    y1: usize,
}

impl HLabels {
    fn h(&self) -> usize {
        self.s.len()
    }
    fn u1(&self, i: usize) -> Result<VertexRef> {
        slot("u1", i, self.t, 0).map(VertexRef::x)
    }
    fn u2(&self, i: usize) -> Result<VertexRef> {
        slot("u2", i, self.g, self.t).map(VertexRef::x)
    }
    fn u3(&self, j: usize, i: usize) -> Result<VertexRef> {
        if i == 0 || i > self.h() {
            return Err(params(format!("pendant group {i} does not exist")));
        }
        let offset = self.t + self.g + self.s[..i - 1].iter().map(|s| s + 1).sum::<usize>();
        slot(&format!("u3^({i})_"), j, self.s[i - 1] + 1, offset).map(VertexRef::x)
    }
    fn v1(&self, i: usize) -> Result<VertexRef> {
        slot("v1", i, self.y1, 0).map(VertexRef::y)
    }
    fn v2(&self, i: usize) -> Result<VertexRef> {
        slot("v2", i, self.h(), self.y1).map(VertexRef::y)
    }
    /// `t + g + s_1 + … + s_{i-1}`: the Y1 offset of group `i`.
    fn base(&self, i: usize) -> usize {
        self.t + self.g + self.s[..i - 1].iter().sum::<usize>()
    }

    fn p1(&self) -> Result<Vec<VertexRef>> {
        let mut out = Vec::new();
        for i in 1..=self.t {
            out.extend([self.u1(i)?, self.v1(i)?]);
        }
        Ok(out)
    }
    fn p2(&self) -> Result<Vec<VertexRef>> {
        let mut out = Vec::new();
        for i in 1..=self.g {
            out.extend([self.u2(i)?, self.v1(self.t + i)?]);
        }
        Ok(out)
    }
    /// Group `i` entered through its apex: `u3_{s+1} v2_i u3_1 v1 … u3_s v1`.
    fn pg(&self, i: usize) -> Result<Vec<VertexRef>> {
        let s = self.s[i - 1];
        let mut out = vec![self.u3(s + 1, i)?, self.v2(i)?];
        for j in 1..=s {
            out.extend([self.u3(j, i)?, self.v1(self.base(i) + j)?]);
        }
        Ok(out)
    }
    fn pg_range(&self, last: usize) -> Result<Vec<VertexRef>> {
        let mut out = Vec::new();
        for i in 1..=last {
            out.extend(self.pg(i)?);
        }
        Ok(out)
    }
    /// Last group traversed so that it ends at its private neighbour.
    fn ph(&self) -> Result<Vec<VertexRef>> {
        let h = self.h();
        let s = self.s[h - 1];
        let mut out = Vec::new();
        for j in 1..=s {
            out.extend([self.u3(j, h)?, self.v1(self.base(h) + j)?]);
        }
        out.extend([self.u3(s + 1, h)?, self.v2(h)?]);
        Ok(out)
    }
    /// As `ph` but skipping the apex and the last Y1 vertex of the group.
    fn qh(&self) -> Result<Vec<VertexRef>> {
        let h = self.h();
        let s = self.s[h - 1];
        let mut out = Vec::new();
        for j in 1..s {
            out.extend([self.u3(j, h)?, self.v1(self.base(h) + j)?]);
        }
        out.extend([self.u3(s, h)?, self.v2(h)?]);
        Ok(out)
    }
}

/// Delete one vertex, optionally cut one edge, add edges, and re-linearise.
struct Surgery {
    remove: VertexRef,
    cut: Option<(VertexRef, VertexRef)>,
    add: Vec<(VertexRef, VertexRef)>,
}

fn apply_surgery(label: &str, path: &[VertexRef], op: &Surgery) -> Result<Vec<VertexRef>> {
    let defect = |reason: String| Error::CatalogDefect {
        label: label.to_string(),
        reason,
    };
    if !path.contains(&op.remove) {
        return Err(defect(format!("{} is not on the base path", op.remove)));
    }
    let same =
        |a: (VertexRef, VertexRef), b: (VertexRef, VertexRef)| a == b || (a.0 == b.1 && a.1 == b.0);
    let mut edges: Vec<(VertexRef, VertexRef)> = path
        .windows(2)
        .map(|w| (w[0], w[1]))
        .filter(|&(a, b)| a != op.remove && b != op.remove)
        .collect();
    if let Some(cut) = op.cut {
        let before = edges.len();
        edges.retain(|&e| !same(e, cut));
        if edges.len() == before {
            return Err(defect(format!(
                "edge {}{} is not on the base path",
                cut.0, cut.1
            )));
        }
    }
    edges.extend(op.add.iter().copied());
    let verts: Vec<VertexRef> = path.iter().copied().filter(|&v| v != op.remove).collect();
    let neighbours = |v: VertexRef| -> Vec<VertexRef> {
        edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    };
    if edges.len() + 1 != verts.len() {
        return Err(defect(format!(
            "{} edges for {} vertices after surgery",
            edges.len(),
            verts.len()
        )));
    }
    let start = verts
        .iter()
        .copied()
        .find(|&v| neighbours(v).len() == 1)
        .ok_or_else(|| defect("surgery leaves no endpoint".into()))?;
    let mut out = vec![start];
    let mut prev: Option<VertexRef> = None;
    let mut cur = start;
    loop {
        let next: Vec<VertexRef> = neighbours(cur)
            .into_iter()
            .filter(|&w| Some(w) != prev)
            .collect();
        match next.as_slice() {
            [] => break,
            [w] => {
                if out.contains(w) {
                    return Err(defect("surgery closes a cycle".into()));
                }
                out.push(*w);
                prev = Some(cur);
                cur = *w;
            }
            _ => return Err(defect(format!("{cur} has degree > 2 after surgery"))),
        }
    }
    if out.len() != verts.len() {
        return Err(defect("surgery disconnects the path".into()));
    }
    // Drop the removed Y slot from the labeling.
    Ok(out
        .into_iter()
        .map(|v| {
            if v.part == op.remove.part && v.index > op.remove.index {
                VertexRef {
                    part: v.part,
                    index: v.index - 1,
                }
            } else {
                v
            }
        })
        .collect())
}

fn h_catalog(n: usize, m: usize, k: usize, p: usize, l: usize, r: &[usize]) -> Result<PathCatalog> {
    let spec = FamilySpec::F { n, m, k, p, l };
    spec.validate()?;
    if m != n && m + 1 != n {
        return Err(params("H catalog requires m = n or m = n-1"));
    }
    let h = k - p;
    let tb = n - h * (k - l) - l;
    let (g, s, wx) = if l > p {
        if !r.is_empty() {
            return Err(params("H catalog with l > p takes no group removals"));
        }
        if l + 2 > k {
            return Err(params("H catalog with l > p requires l <= k-2"));
        }
        (l - p, vec![k - l - 1; h], (tb..tb + p).collect::<Vec<_>>())
    } else {
        if r.len() != h || r.iter().sum::<usize>() != p - l || r.iter().any(|&v| v + 1 > k - l) {
            return Err(params(format!(
                "H catalog with l <= p needs {h} group removals summing to {} each at most {}",
                p - l,
                k - l - 1
            )));
        }
        let mut wx: Vec<usize> = (tb..tb + l).collect();
        for (i, &ri) in r.iter().enumerate() {
            let start = tb + l + i * (k - l);
            wx.extend(start..start + ri);
        }
        (0, r.iter().map(|ri| k - l - ri - 1).collect(), wx)
    };
    let w = BalancedDeletionSet::new(wx, (0..p).collect())?;
    let graph = spec.build()?.delete_balanced_set(&w)?;
    let lab = HLabels {
        t: tb,
        g,
        s,
        y1: n - k,
    };
    let h = lab.h();
    let t = lab.t;
    let sh = lab.s[h - 1];
    let y_end = lab.y1;

    let p1 = lab.p1()?;
    let p2 = lab.p2()?;
    let all = lab.pg_range(h)?;
    let most = lab.pg_range(h - 1)?;
    let ph = lab.ph()?;
    let qh = lab.qh()?;
    let lead = [lab.u3(sh + 1, h)?, lab.v1(y_end)?];

    let balanced: Vec<(&str, Vec<VertexRef>)> = if l > p {
        vec![
            ("R1", cat(&[&p1, &p2, &all])),
            ("R2", cat(&[&p1, &p2, &most, &ph])),
            ("R3", cat(&[&p2, &p1, &all])),
            ("R4", cat(&[&p2, &p1, &most, &ph])),
            ("R5", cat(&[&all, &p1, &p2])),
            ("R6", cat(&[&most, &p1, &p2, &ph])),
            ("R7", cat(&[&lead, &most, &p1, &p2, &qh])),
        ]
    } else {
        vec![
            ("R1", cat(&[&p1, &all])),
            ("R2", cat(&[&p1, &most, &ph])),
            ("R3", cat(&[&all, &p1])),
            ("R4", cat(&[&most, &p1, &ph])),
            ("R5", cat(&[&lead, &most, &p1, &qh])),
        ]
    };
    let id = CatalogId::H {
        n,
        m,
        k,
        p,
        l,
        r: r.to_vec(),
    };
    if m == n {
        return Ok(finish(
            id,
            graph,
            balanced
                .into_iter()
                .map(|(l, p)| (l.to_string(), p))
                .collect(),
        ));
    }

    let base = |name: &str| {
        balanced
            .iter()
            .find(|(l, _)| *l == name)
            .map(|(_, p)| p.clone())
            .unwrap()
    };
    let only = |v: VertexRef| Surgery {
        remove: v,
        cut: None,
        add: vec![],
    };
    let mut ops: Vec<(&str, &str, Surgery)> = Vec::new();
    if l > p {
        let s = lab.s[0];
        ops.push((
            "R1*",
            "R1",
            Surgery {
                remove: lab.v1(t)?,
                cut: Some((lab.u1(t)?, lab.v1(t.wrapping_sub(1))?)),
                add: vec![(lab.u2(1)?, lab.v1(t - 1)?), (lab.u1(t)?, lab.v1(y_end)?)],
            },
        ));
        ops.push((
            "R2*",
            "R1",
            Surgery {
                remove: lab.v1(t + g)?,
                cut: Some((lab.u2(g)?, lab.v1(t + g - 1)?)),
                add: vec![
                    (lab.u3(s + 1, 1)?, lab.v1(t + g - 1)?),
                    (lab.u2(g)?, lab.v1(y_end)?),
                ],
            },
        ));
        ops.push(("R3*", "R1", only(lab.v1(y_end)?)));
        ops.push((
            "R4*",
            "R3",
            Surgery {
                remove: lab.v1(t + g)?,
                cut: Some((lab.u2(g)?, lab.v1(t + g - 1)?)),
                add: vec![
                    (lab.u1(1)?, lab.v1(t + g - 1)?),
                    (lab.u2(g)?, lab.v1(y_end)?),
                ],
            },
        ));
        ops.push(("R5*", "R3", only(lab.v1(y_end)?)));
        ops.push((
            "R6*",
            "R5",
            Surgery {
                remove: lab.v1(t + g + s)?,
                cut: Some((lab.u3(s, 1)?, lab.v1(t + g + s - 1)?)),
                add: vec![
                    (lab.u3(s + 1, 2)?, lab.v1(t + g + s - 1)?),
                    (lab.u3(s, 1)?, lab.v1(t + g)?),
                ],
            },
        ));
        ops.push((
            "R7*",
            "R5",
            Surgery {
                remove: lab.v1(t + g + h * s)?,
                cut: Some((lab.u3(s, h)?, lab.v1(t + g + h * s - 1)?)),
                add: vec![
                    (lab.u1(1)?, lab.v1(t + g + h * s - 1)?),
                    (lab.u3(s, h)?, lab.v1(t + g)?),
                ],
            },
        ));
    } else {
        let s1 = lab.s[0];
        let total: usize = lab.s.iter().sum();
        ops.push((
            "R1*",
            "R1",
            Surgery {
                remove: lab.v1(t)?,
                cut: Some((lab.u1(t)?, lab.v1(t.wrapping_sub(1))?)),
                add: vec![
                    (lab.u3(s1 + 1, 1)?, lab.v1(t - 1)?),
                    (lab.u1(t)?, lab.v1(y_end)?),
                ],
            },
        ));
        ops.push(("R2*", "R1", only(lab.v1(y_end)?)));
        let s2 = *lab
            .s
            .get(1)
            .ok_or_else(|| params("pendant group 2 does not exist"))?;
        ops.push((
            "R3*",
            "R3",
            Surgery {
                remove: lab.v1(t + s1)?,
                cut: Some((lab.u3(s1, 1)?, lab.v1((t + s1).wrapping_sub(1))?)),
                add: vec![
                    (lab.u3(s2 + 1, 2)?, lab.v1(t + s1 - 1)?),
                    (lab.u3(s1, 1)?, lab.v1(t)?),
                ],
            },
        ));
        ops.push((
            "R4*",
            "R3",
            Surgery {
                remove: lab.v1(t + total)?,
                cut: Some((lab.u3(sh, h)?, lab.v1((t + total).wrapping_sub(1))?)),
                add: vec![
                    (lab.u1(1)?, lab.v1(t + total - 1)?),
                    (lab.u3(sh, h)?, lab.v1(t)?),
                ],
            },
        ));
    }
    let mut paths = Vec::new();
    for (label, from, op) in ops {
        paths.push((label.to_string(), apply_surgery(label, &base(from), &op)?));
    }
    Ok(finish(id, graph, paths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Part;
    use crate::hamilton::is_2p_hamilton_biconnected;

    #[test]
    fn mminus_first_path_matches_hand_instance() {
        let c = appendix_path_catalog(&CatalogId::Mminus { s: 2, t: 1 }).unwrap();
        // u11 v11 u v u21 v21 u22 v12
        let expected = vec![
            VertexRef::x(0),
            VertexRef::y(0),
            VertexRef::x(1),
            VertexRef::y(2),
            VertexRef::x(2),
            VertexRef::y(3),
            VertexRef::x(3),
            VertexRef::y(1),
        ];
        assert_eq!(c.paths[0].label, "R1");
        assert_eq!(c.paths[0].path.vertices, expected);
        assert!(c.all_valid(), "{:?}", c.invalid_paths());
    }

    #[test]
    fn mminus_catalogs_validate_and_cover() {
        for s in 2..=4 {
            for t in 1..=3 {
                let c = appendix_path_catalog(&CatalogId::Mminus { s, t }).unwrap();
                assert_eq!(c.paths.len(), 9);
                assert!(c.all_valid(), "s={s} t={t}: {:?}", c.invalid_paths());
                assert!(catalog_covers_biconnectedness(&c, &c.graph));
            }
        }
    }

    #[test]
    fn n02_catalogs_validate_and_cover() {
        for n in 6..=8 {
            let c = appendix_path_catalog(&CatalogId::N02 { n_minus_p: n }).unwrap();
            assert_eq!(c.paths.len(), 9);
            assert!(c.all_valid(), "n={n}: {:?}", c.invalid_paths());
            assert!(catalog_covers_biconnectedness(&c, &c.graph));
        }
    }

    #[test]
    fn removing_a_path_edge_breaks_coverage() {
        let c = appendix_path_catalog(&CatalogId::N02 { n_minus_p: 6 }).unwrap();
        let w = &c.paths[0].path.vertices;
        let (a, b) = if w[0].part == Part::X {
            (w[0], w[1])
        } else {
            (w[1], w[0])
        };
        let g = c.graph.without_edge(a.index, b.index).unwrap();
        assert!(!catalog_covers_biconnectedness(&c, &g));
    }

    #[test]
    fn h_small_p_branch_balanced() {
        // k = p + 2, l = p, two pendant groups.
        for p in 0..=1 {
            let (k, l) = (p + 2, p);
            for n in 6..=9 {
                for r in compositions(p - l, k - p, k - l - 1) {
                    let id = CatalogId::H {
                        n,
                        m: n,
                        k,
                        p,
                        l,
                        r,
                    };
                    let Ok(c) = appendix_path_catalog(&id) else {
                        continue;
                    };
                    assert_eq!(c.paths.len(), 5);
                    assert!(c.all_valid(), "{id}: {:?}", c.invalid_paths());
                }
            }
        }
    }

    #[test]
    fn h_large_l_branch_balanced() {
        for (n, k, p, l) in [(8, 3, 0, 1), (9, 4, 1, 2), (10, 4, 0, 2), (13, 4, 0, 1)] {
            let id = CatalogId::H {
                n,
                m: n,
                k,
                p,
                l,
                r: vec![],
            };
            let c = appendix_path_catalog(&id).unwrap();
            assert_eq!(c.paths.len(), 7);
            assert!(c.all_valid(), "{id}: {:?}", c.invalid_paths());
        }
    }

    #[test]
    fn h_graph_is_the_deleted_f_graph() {
        let c = appendix_path_catalog(&CatalogId::H {
            n: 8,
            m: 8,
            k: 3,
            p: 1,
            l: 1,
            r: vec![0, 0],
        })
        .unwrap();
        assert_eq!((c.graph.n_x(), c.graph.n_y()), (7, 7));
        // The H-graph inherits the 2p-property as a plain biconnectedness
        // question; the oracle answers it independently of the catalog.
        let _ = is_2p_hamilton_biconnected(&c.graph, 0).unwrap();
    }

    #[test]
    fn starred_paths_live_in_the_nearly_balanced_graph() {
        let c = appendix_path_catalog(&CatalogId::H {
            n: 12,
            m: 11,
            k: 4,
            p: 1,
            l: 1,
            r: vec![0, 0, 0],
        })
        .unwrap();
        assert_eq!((c.graph.n_x(), c.graph.n_y()), (11, 10));
        assert_eq!(c.paths.len(), 4);
        assert!(c.all_valid(), "{:?}", c.invalid_paths());
        for p in &c.paths {
            assert_eq!(p.path.vertices.len(), 21);
            let (a, b) = p.path.endpoints().unwrap();
            assert_eq!((a.part, b.part), (Part::X, Part::X));
        }
    }

    #[test]
    fn starred_surgery_needs_two_vertices_in_the_first_group() {
        // With s_1 = 1 the edge the surgery cuts is not on the base path.
        let err = appendix_path_catalog(&CatalogId::H {
            n: 8,
            m: 7,
            k: 3,
            p: 1,
            l: 1,
            r: vec![0, 0],
        })
        .unwrap_err();
        assert!(
            matches!(err, Error::CatalogDefect { ref label, .. } if label == "R3*"),
            "{err}"
        );
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(
            appendix_path_catalog(&CatalogId::Mminus { s: 1, t: 1 }),
            Err(Error::InvalidFamilyParams(_))
        ));
        assert!(matches!(
            appendix_path_catalog(&CatalogId::N02 { n_minus_p: 5 }),
            Err(Error::InvalidFamilyParams(_))
        ));
        assert!(matches!(
            appendix_path_catalog(&CatalogId::H {
                n: 9,
                m: 9,
                k: 3,
                p: 0,
                l: 2,
                r: vec![]
            }),
            Err(Error::InvalidFamilyParams(_))
        ));
        assert!(matches!(
            appendix_path_catalog(&CatalogId::H {
                n: 9,
                m: 9,
                k: 3,
                p: 1,
                l: 0,
                r: vec![0, 0]
            }),
            Err(Error::InvalidFamilyParams(_))
        ));
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(2, 2, 1), vec![vec![1, 1]]);
        assert_eq!(compositions(2, 2, 2).len(), 3);
        assert_eq!(compositions(0, 3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn catalog_id_text_round_trips() {
        for id in [
            CatalogId::Mminus { s: 2, t: 1 },
            CatalogId::N02 { n_minus_p: 7 },
            CatalogId::H {
                n: 8,
                m: 7,
                k: 3,
                p: 1,
                l: 0,
                r: vec![1, 0],
            },
            CatalogId::H {
                n: 9,
                m: 9,
                k: 4,
                p: 0,
                l: 1,
                r: vec![],
            },
        ] {
            assert_eq!(id.to_string().parse::<CatalogId>().unwrap(), id);
        }
    }
}
