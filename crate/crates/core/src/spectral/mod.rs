//! Spectral radius `ρ(G)` of the adjacency matrix and `q(G)` of the
//! signless Laplacian `Q = D + A`, plus the classic bounds relating them to
//! the edge count.
//!
//! Both radii are computed by power iteration from the all-ones vector on
//! each connected component. Because a bipartite spectrum is symmetric about
//! zero, `ρ` is obtained from the Gram matrix `B·Bᵀ` of the biadjacency
//! matrix `B` and a square root; `Q` has a positive diagonal on every
//! non-trivial component and is iterated directly.

mod poly;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, BipartiteGraph};

pub use poly::{char_poly, largest_root, CharPoly, PolyTag, RadiusKind};

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Iteration cap per component.
pub const MAX_ITERATIONS: usize = 100_000;
/// Tolerance used to call a bound "attained".
pub const EQUALITY_TOL: f64 = 1e-7;

/// `ρ`, `q` and convergence diagnostics of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub rho: f64,
    pub q: f64,
    pub tolerance: f64,
    pub iterations: usize,
    /// Largest final residual `‖Mx − λx‖∞ / ‖x‖∞` over both computations.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy)]
struct Radius {
    value: f64,
    iterations: usize,
    residual: f64,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Power iteration of a symmetric non-negative operator given as a closure
/// on vectors of length `dim`. Returns the Perron root.
fn power_iterate(
    dim: usize,
    tol: f64,
    apply: impl Fn(&[f64], &mut [f64]),
) -> Result<(Radius, Vec<f64>)> {
    let mut x = vec![1.0f64; dim];
    let mut y = vec![0.0f64; dim];
    let mut last_residual = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        apply(&x, &mut y);
        let num: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        let lambda = num / den;
        let res = x
            .iter()
            .zip(&y)
            .fold(0.0f64, |m, (a, b)| m.max((b - lambda * a).abs()))
            / inf_norm(&x);
        last_residual = res;
        if res <= tol {
            let r = Radius {
                value: lambda,
                iterations: it,
                residual: res,
            };
            return Ok((r, x));
        }
        let norm = inf_norm(&y);
        if norm == 0.0 {
            let r = Radius {
                value: 0.0,
                iterations: it,
                residual: 0.0,
            };
            return Ok((r, x));
        }
        for (a, b) in x.iter_mut().zip(&y) {
            *a = b / norm;
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: MAX_ITERATIONS,
        residual: last_residual,
    })
}

/// Local biadjacency of one component.
struct Component {
    xs: Vec<usize>,
    ys: Vec<usize>,
    /// For each local X vertex, local Y neighbours.
    nbrs: Vec<Vec<usize>>,
}

fn components(g: &BipartiteGraph) -> Vec<Component> {
    g.components()
        .into_iter()
        .map(|(mx, my)| {
            let xs: Vec<usize> = bits(mx).collect();
            let ys: Vec<usize> = bits(my).collect();
            let nbrs = xs
                .iter()
                .map(|&x| {
                    ys.iter()
                        .enumerate()
                        .filter(|&(_, &y)| g.has_edge(x, y))
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect();
            Component { xs, ys, nbrs }
        })
        .collect()
}

fn rho_of(c: &Component, tol: f64) -> Result<Radius> {
    let (nx, ny) = (c.xs.len(), c.ys.len());
    if nx == 0 || ny == 0 {
        return Ok(Radius {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let bt = |x: &[f64], out: &mut [f64]| {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (i, row) in c.nbrs.iter().enumerate() {
            for &j in row {
                out[j] += x[i];
            }
        }
    };
    let b = |y: &[f64], out: &mut [f64]| {
        for (i, row) in c.nbrs.iter().enumerate() {
            out[i] = row.iter().map(|&j| y[j]).sum();
        }
    };
    // Iterate the Gram matrix on the X side; the tolerance is tightened
    // because the square root can amplify error for small radii.
    let (gram, x) = power_iterate(nx, tol * 0.5, |x, out| {
        let mut tmp = vec![0.0; ny];
        bt(x, &mut tmp);
        b(&tmp, out);
    })?;
    let rho = gram.value.max(0.0).sqrt();
    // Report the residual of the full adjacency eigenpair (x, Bᵀx/ρ).
    let mut tmp = vec![0.0; ny];
    bt(&x, &mut tmp);
    let yv: Vec<f64> = tmp.iter().map(|v| v / rho).collect();
    let mut ax = vec![0.0; nx];
    b(&yv, &mut ax);
    let res_x = ax
        .iter()
        .zip(&x)
        .fold(0.0f64, |m, (a, v)| m.max((a - rho * v).abs()));
    let res_y = tmp
        .iter()
        .zip(&yv)
        .fold(0.0f64, |m, (a, v)| m.max((a - rho * v).abs()));
    let scale = inf_norm(&x).max(inf_norm(&yv));
    Ok(Radius {
        value: rho,
        iterations: gram.iterations,
        residual: res_x.max(res_y) / scale,
    })
}

fn q_of(c: &Component, tol: f64) -> Result<Radius> {
    let (nx, ny) = (c.xs.len(), c.ys.len());
    if nx == 0 || ny == 0 {
        return Ok(Radius {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let mut ydeg = vec![0.0f64; ny];
    for row in &c.nbrs {
        for &j in row {
            ydeg[j] += 1.0;
        }
    }
    let (r, _) = power_iterate(nx + ny, tol, |v, out| {
        let (vx, vy) = v.split_at(nx);
        let (ox, oy) = out.split_at_mut(nx);
        oy.iter_mut()
            .zip(&ydeg)
            .zip(vy)
            .for_each(|((o, d), y)| *o = d * y);
        for (i, row) in c.nbrs.iter().enumerate() {
            let mut s = row.len() as f64 * vx[i];
            for &j in row {
                s += vy[j];
                oy[j] += vx[i];
            }
            ox[i] = s;
        }
    })?;
    Ok(r)
}

fn max_radius(parts: Vec<Radius>) -> Radius {
    let iterations = parts.iter().map(|r| r.iterations).sum();
    let residual = parts.iter().fold(0.0f64, |m, r| m.max(r.residual));
    let value = parts.iter().fold(0.0f64, |m, r| m.max(r.value));
    Radius {
        value,
        iterations,
        residual,
    }
}

fn rho_detail(g: &BipartiteGraph, tol: f64) -> Result<Radius> {
    check_tol(tol)?;
    Ok(max_radius(
        components(g)
            .iter()
            .map(|c| rho_of(c, tol))
            .collect::<Result<_>>()?,
    ))
}

fn q_detail(g: &BipartiteGraph, tol: f64) -> Result<Radius> {
    check_tol(tol)?;
    Ok(max_radius(
        components(g)
            .iter()
            .map(|c| q_of(c, tol))
            .collect::<Result<_>>()?,
    ))
}

/// Largest adjacency eigenvalue.
pub fn rho(g: &BipartiteGraph, tol: f64) -> Result<f64> {
    Ok(rho_detail(g, tol)?.value)
}

/// Largest signless-Laplacian eigenvalue.
pub fn q_radius(g: &BipartiteGraph, tol: f64) -> Result<f64> {
    Ok(q_detail(g, tol)?.value)
}

pub fn spectral_report(g: &BipartiteGraph, tol: f64) -> Result<SpectralReport> {
    let r = rho_detail(g, tol)?;
    let q = q_detail(g, tol)?;
    Ok(SpectralReport {
        rho: r.value,
        q: q.value,
        tolerance: tol,
        iterations: r.iterations + q.iterations,
        residual: r.residual.max(q.residual),
    })
}

/// `ρ(G) ≤ √e(G)`, with equality exactly for a complete bipartite graph
/// plus isolated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoEdgeBound {
    pub rho: f64,
    pub bound: f64,
    pub slack: f64,
    pub equality: bool,
    pub biclique_plus_isolated: bool,
    /// `ρ ≤ √e` within tolerance.
    pub bound_holds: bool,
    /// Equality occurs exactly when the structure is a biclique plus
    /// isolated vertices.
    pub characterization_holds: bool,
}

/// Whether the non-isolated vertices induce a complete bipartite graph that
/// carries every edge.
fn is_biclique_plus_isolated(g: &BipartiteGraph) -> bool {
    let xs: Vec<usize> = (0..g.n_x()).filter(|&x| g.degree_x(x) > 0).collect();
    let ys: u128 = (0..g.n_x()).fold(0u128, |m, x| m | g.row(x));
    xs.iter().all(|&x| g.row(x) == ys)
}

pub fn check_rho_edge_bound(g: &BipartiteGraph) -> Result<RhoEdgeBound> {
    let rho = rho(g, DEFAULT_TOL)?;
    let bound = (g.edge_count() as f64).sqrt();
    let slack = bound - rho;
    let equality = slack.abs() <= EQUALITY_TOL;
    let structure = is_biclique_plus_isolated(g);
    Ok(RhoEdgeBound {
        rho,
        bound,
        slack,
        equality,
        biclique_plus_isolated: structure,
        bound_holds: slack >= -EQUALITY_TOL,
        characterization_holds: equality == structure,
    })
}

/// `q(G) ≤ e(G)/n + n` for balanced `G` on `n + n` vertices.
///
/// The bound is commonly stated with equality exactly for `K_{n,n}`; that
/// characterization is reported separately because it is not exact: a star
/// `K_{1,n}` plus `n − 1` isolated vertices also attains the bound
/// (`q = n + 1 = n/n + n`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QBound {
    pub q: f64,
    pub bound: f64,
    pub slack: f64,
    pub equality: bool,
    pub complete: bool,
    /// `q ≤ e/n + n` within tolerance.
    pub bound_holds: bool,
    /// Equality occurs exactly when `G = K_{n,n}`.
    pub characterization_holds: bool,
}

pub fn check_q_bound(g: &BipartiteGraph) -> Result<QBound> {
    if !g.is_balanced() {
        return Err(Error::NotBalanced {
            n_x: g.n_x(),
            n_y: g.n_y(),
        });
    }
    let n = g.n_x();
    if n == 0 {
        return Err(Error::EmptyPart);
    }
    let q = q_radius(g, DEFAULT_TOL)?;
    let bound = g.edge_count() as f64 / n as f64 + n as f64;
    let slack = bound - q;
    let equality = slack.abs() <= EQUALITY_TOL;
    let complete = g.edge_count() == n * n;
    Ok(QBound {
        q,
        bound,
        slack,
        equality,
        complete,
        bound_holds: slack >= -EQUALITY_TOL,
        characterization_holds: equality == complete,
    })
}

/// Radii of a graph and one of its spanning subgraphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubgraphMonotonicity {
    pub rho_sub: f64,
    pub rho_super: f64,
    pub q_sub: f64,
    pub q_super: f64,
    pub proper: bool,
    pub super_connected: bool,
    /// Strict inequalities are required (proper subgraph of a connected graph).
    pub strict_expected: bool,
    pub holds: bool,
}

/// Checks `ρ(H) ≤ ρ(G)` and `q(H) ≤ q(G)` for `H ⊆ G`, strictly when `H` is
/// proper and `G` connected.
pub fn check_subgraph_monotonicity(
    g: &BipartiteGraph,
    h: &BipartiteGraph,
) -> Result<SubgraphMonotonicity> {
    if !h.is_subgraph_of(g) {
        return Err(Error::NotSubgraph);
    }
    let rs = rho(h, DEFAULT_TOL)?;
    let rg = rho(g, DEFAULT_TOL)?;
    let qs = q_radius(h, DEFAULT_TOL)?;
    let qg = q_radius(g, DEFAULT_TOL)?;
    let proper = h.edge_count() < g.edge_count();
    let connected = g.is_connected();
    let strict = proper && connected;
    let holds = if strict {
        rs < rg - EQUALITY_TOL && qs < qg - EQUALITY_TOL
    } else {
        rs <= rg + EQUALITY_TOL && qs <= qg + EQUALITY_TOL
    };
    Ok(SubgraphMonotonicity {
        rho_sub: rs,
        rho_super: rg,
        q_sub: qs,
        q_super: qg,
        proper,
        super_connected: connected,
        strict_expected: strict,
        holds,
    })
}
