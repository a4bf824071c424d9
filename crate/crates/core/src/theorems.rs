//! Hypothesis/conclusion evaluators for the edge-count and spectral
//! sufficient conditions, and a cross-validation against the exact oracle.
//!
//! Each evaluator answers one question: does `G` satisfy the full
//! hypothesis, and if so, what does the statement predict? Edge conditions
//! are strict, spectral conditions are non-strict with the equality case
//! routed to the "unless G = …" exception. Exceptions of the form
//! "unless G ⊆ family" are tested as containment, "unless G = family" as
//! isomorphism (containment plus equal edge count).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{contained_in_family_oriented, is_family_member, FamilySpec};
use crate::graph::BipartiteGraph;
use crate::hamilton::{has_hamiltonian_cycle, is_2p_hamilton_biconnected, HamVerdict};
use crate::spectral::{char_poly, q_radius, rho, PolyTag, RadiusKind, DEFAULT_TOL};

/// Numerical slack for non-strict spectral comparisons, so that a graph
/// equal to the comparison family is recognised as meeting the bound.
pub const SPECTRAL_SLACK: f64 = 1e-9;

/// The statements that can be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Balanced, `δ ≥ k`, `1 ≤ k ≤ n/2`, edges above the two-term maximum:
    /// Hamiltonian.
    EdgeHamiltonian,
    /// Balanced, `e > n(n−1)+p+1`: 2p-Hamilton-biconnected.
    EdgeDense,
    /// Balanced minimum-degree edge condition with `M`/`N` exceptions.
    EdgeBalanced,
    /// Nearly balanced minimum-degree edge condition with three `M`
    /// exceptions.
    EdgeNearly,
    /// `p = 0`, `1 ≤ k ≤ (n−2)/3`, `e > n(n−k)+k²`.
    EdgeSimple,
    /// Balanced, `k = p+2`, `ρ(G) ≥ ρ(N_{n,n}^{k−2,1})`.
    RhoBalancedN,
    /// Balanced, `k ≠ p+2`, `ρ(G) ≥ ρ(M_{n,n}^{n−k,k−p})`.
    RhoBalancedM,
    /// Balanced, `q(G) ≥ q(M_{n,n}^{n−k,k−p})`.
    QBalanced,
    /// Nearly balanced, `k = p+1`, `ρ(G) ≥ ρ(M_{n,n−1}^{1,n−k−1})`.
    RhoNearlySmallK,
    /// Nearly balanced, `k ≥ p+2`, `ρ(G) ≥ ρ(M_{n,n−1}^{n−k,k−p−1})`.
    RhoNearlyLargeK,
    /// Nearly balanced, `k = p+1`, `q(G) ≥ q(M_{n,n−1}^{n−k−1,1})`.
    QNearlySmallK,
    /// Nearly balanced, `k ≥ p+2`, `q(G) ≥ q(M_{n,n−1}^{n−k,k−p−1})`.
    QNearlyLargeK,
    /// Balanced, `ρ(G) ≥ √(n(n−k+p)+k(k−p))`.
    RhoBalancedClosedForm,
    /// Balanced, `q(G) ≥ 2n−k+p+k(k−p)/n`.
    QBalancedClosedForm,
    /// Nearly balanced, `ρ(G) ≥ √((n−1)²+k)` or `√(n(n−k+p)+k(k−p−1))`.
    RhoNearlyClosedForm,
    /// Nearly balanced, `q(G) ≥ 2n−2+(k+1)/n` or `2n−k+p+k(k−p−1)/n`.
    QNearlyClosedForm,
    /// The same with the thresholds under a square root, as originally
    /// published. Always informational.
    QNearlyClosedFormSqrt,
}

/// What the statement predicts for `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    /// 2p-Hamilton-biconnected.
    Biconnected,
    /// Has a Hamiltonian cycle.
    Hamiltonian,
    /// The hypothesis holds but an exception clause matches.
    Exceptional,
    /// The hypothesis fails; nothing is claimed.
    NoPrediction,
}

/// Evaluation of one statement on one `(G, k, p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub hypothesis_holds: bool,
    /// Side conditions and the main inequality that failed, by name.
    pub failed_conditions: Vec<String>,
    pub threshold_value: f64,
    pub measured_value: f64,
    pub predicted: Prediction,
    /// Exception families that matched (evaluated whether or not the
    /// hypothesis holds).
    pub exception_matches: Vec<FamilySpec>,
    /// The statement's own case split does not select this branch, or the
    /// reading is known to differ from the proof; never counted as a
    /// falsification.
    pub informational: bool,
    /// Largest root of the closed-form polynomial for the comparison radius,
    /// when one is known.
    pub closed_form_threshold: Option<f64>,
}

struct Builder {
    theorem: TheoremId,
    n: usize,
    k: usize,
    p: usize,
    failed: Vec<String>,
    informational: bool,
}

impl Builder {
    fn new(theorem: TheoremId, n: usize, k: usize, p: usize) -> Builder {
        Builder {
            theorem,
            n,
            k,
            p,
            failed: Vec::new(),
            informational: false,
        }
    }

    fn require(&mut self, ok: bool, name: &str) -> &mut Self {
        if !ok {
            self.failed.push(name.to_string());
        }
        self
    }

    fn holds(&self) -> bool {
        self.failed.is_empty()
    }

    /// Finishes the verdict. Exception matches are reported even when the
    /// hypothesis fails, but only turn the prediction into `Exceptional`
    /// when it holds.
    fn finish(
        &self,
        threshold: f64,
        measured: f64,
        conclusion: Prediction,
        exceptions: impl FnOnce() -> Result<Vec<FamilySpec>>,
    ) -> Result<TheoremVerdict> {
        let holds = self.holds();
        let matches = exceptions()?;
        let predicted = if !holds {
            Prediction::NoPrediction
        } else if !matches.is_empty() {
            Prediction::Exceptional
        } else {
            conclusion
        };
        Ok(TheoremVerdict {
            theorem: self.theorem,
            n: self.n,
            k: self.k,
            p: self.p,
            hypothesis_holds: holds,
            failed_conditions: self.failed.clone(),
            threshold_value: threshold,
            measured_value: measured,
            predicted,
            exception_matches: matches,
            informational: self.informational,
            closed_form_threshold: None,
        })
    }
}

fn min_degree(g: &BipartiteGraph) -> usize {
    g.min_degree().unwrap_or(0)
}

/// Families (from `candidates`) that contain `g`; parts may be exchanged
/// for balanced graphs.
fn containing(g: &BipartiteGraph, candidates: &[FamilySpec]) -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    for spec in candidates {
        if contained_in_family_oriented(g, spec, g.is_balanced())?.is_some() {
            out.push(*spec);
        }
    }
    Ok(out)
}

/// Families (from `candidates`) isomorphic to `g`.
fn equal_to(g: &BipartiteGraph, candidates: &[FamilySpec]) -> Result<Vec<FamilySpec>> {
    let mut out = Vec::new();
    for spec in candidates {
        if is_family_member(g, spec, g.is_balanced())?.is_some() {
            out.push(*spec);
        }
    }
    Ok(out)
}

fn require_balanced(g: &BipartiteGraph) -> Result<usize> {
    if !g.is_balanced() {
        return Err(Error::NotBalanced {
            n_x: g.n_x(),
            n_y: g.n_y(),
        });
    }
    Ok(g.n_x())
}

/// Orients a nearly balanced graph so that X is the larger part.
fn orient_nearly(g: &BipartiteGraph) -> Result<BipartiteGraph> {
    if g.n_x() == g.n_y() + 1 {
        Ok(g.clone())
    } else if g.n_y() == g.n_x() + 1 {
        Ok(g.transpose())
    } else {
        Err(Error::NotNearlyBalanced {
            n_x: g.n_x(),
            n_y: g.n_y(),
        })
    }
}

/// Edge-count statements for balanced graphs.
pub fn eval_edge_balanced(g: &BipartiteGraph, k: usize, p: usize) -> Result<Vec<TheoremVerdict>> {
    let n = require_balanced(g)?;
    let e = g.edge_count();
    let delta = min_degree(g);
    let (ni, ki, pi, ei) = (n as i64, k as i64, p as i64, e as i64);
    let mut out = Vec::new();

    // Hamiltonian from edges and minimum degree.
    {
        let mut b = Builder::new(TheoremId::EdgeHamiltonian, n, k, 0);
        let h = ni / 2;
        let thr = (ni * (ni - ki) + ki * ki).max(ni * (ni - h) + h * h);
        b.require(delta >= k, "min degree >= k")
            .require(k >= 1 && 2 * k <= n, "1 <= k <= n/2")
            .require(
                ei > thr,
                "e > max{n(n-k)+k^2, n(n-floor(n/2))+floor(n/2)^2}",
            );
        out.push(b.finish(thr as f64, e as f64, Prediction::Hamiltonian, || Ok(vec![]))?);
    }
    // Dense edge condition.
    {
        let mut b = Builder::new(TheoremId::EdgeDense, n, k, p);
        let thr = ni * (ni - 1) + pi + 1;
        b.require(ei > thr, "e > n(n-1)+p+1");
        out.push(b.finish(thr as f64, e as f64, Prediction::Biconnected, || Ok(vec![]))?);
    }
    // Minimum-degree edge condition.
    {
        let mut b = Builder::new(TheoremId::EdgeBalanced, n, k, p);
        let thr = ni * (ni - ki + pi - 1) + (ki + 2) * (ki - pi + 1);
        b.require(delta >= k, "min degree >= k")
            .require(n + p >= 2 * k + 2, "n >= 2k-p+2")
            .require(k >= p, "k >= p")
            .require(ei > thr, "e > n(n-k+p-1)+(k+2)(k-p+1)");
        out.push(b.finish(thr as f64, e as f64, Prediction::Biconnected, || {
            let mut cands = Vec::new();
            if k > p {
                cands.push(FamilySpec::M {
                    n,
                    m: n,
                    s: n - k,
                    t: k - p,
                });
            }
            if k == p + 2 {
                cands.push(FamilySpec::N1 { n, p });
            }
            containing(g, &cands)
        })?);
    }
    // The p = 0 specialisation with the simple edge threshold.
    {
        let mut b = Builder::new(TheoremId::EdgeSimple, n, k, 0);
        let thr = ni * (ni - ki) + ki * ki;
        b.require(delta >= k, "min degree >= k")
            .require(k >= 1 && 3 * k + 2 <= n, "1 <= k <= (n-2)/3")
            .require(ei > thr, "e > n(n-k)+k^2");
        out.push(b.finish(thr as f64, e as f64, Prediction::Biconnected, || Ok(vec![]))?);
    }
    Ok(out)
}

/// Edge-count statement for nearly balanced graphs. Input with the larger
/// part on the Y side is transposed first.
pub fn eval_edge_nearly(g: &BipartiteGraph, k: usize, p: usize) -> Result<TheoremVerdict> {
    let g = orient_nearly(g)?;
    let n = g.n_x();
    let e = g.edge_count();
    let (ni, ki, pi) = (n as i64, k as i64, p as i64);
    let mut b = Builder::new(TheoremId::EdgeNearly, n, k, p);
    let thr = ni * (ni - ki + pi - 2) + (ki + 2) * (ki - pi + 1);
    b.require(min_degree(&g) >= k, "min degree >= k")
        .require(n + p >= 2 * k + 2, "n >= 2k-p+2")
        .require(k >= p, "k >= p")
        .require(e as i64 > thr, "e > n(n-k+p-2)+(k+2)(k-p+1)");
    b.finish(thr as f64, e as f64, Prediction::Biconnected, || {
        let mut cands = Vec::new();
        if k > p {
            cands.push(FamilySpec::M {
                n,
                m: n - 1,
                s: n - k - 1,
                t: k - p,
            });
            cands.push(FamilySpec::M {
                n,
                m: n - 1,
                s: k - p,
                t: n - k - 1,
            });
        }
        if k >= p + 2 {
            cands.push(FamilySpec::M {
                n,
                m: n - 1,
                s: n - k,
                t: k - p - 1,
            });
        }
        containing(&g, &cands)
    })
}

type RadiusKey = (FamilySpec, RadiusKind);

fn radius_cache() -> &'static Mutex<HashMap<RadiusKey, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<RadiusKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Radius of a built family member, memoised.
pub fn family_radius(spec: &FamilySpec, kind: RadiusKind) -> Result<f64> {
    let key = (*spec, kind);
    if let Some(v) = radius_cache().lock().expect("cache lock").get(&key) {
        return Ok(*v);
    }
    let g = spec.build()?;
    let v = match kind {
        RadiusKind::Rho => rho(&g, DEFAULT_TOL)?,
        RadiusKind::Q => q_radius(&g, DEFAULT_TOL)?,
    };
    radius_cache().lock().expect("cache lock").insert(key, v);
    Ok(v)
}

/// Largest root of a known closed-form polynomial for this family radius.
fn closed_form(spec: &FamilySpec, kind: RadiusKind, n: usize, k: usize, p: usize) -> Option<f64> {
    PolyTag::ALL
        .iter()
        .filter(|t| **t != PolyTag::NearlyRhoGAsPublished && t.kind() == kind)
        .find(|t| t.family(n, k, p).ok().as_ref() == Some(spec))
        .and_then(|t| char_poly(*t, n, k, p).ok())
        .and_then(|poly| poly.largest_root(1e-12).ok())
}

/// A spectral comparison statement "radius(G) ≥ radius(reference)" with
/// side conditions already recorded in `b`.
fn spectral_verdict(
    b: &mut Builder,
    g: &BipartiteGraph,
    measured: f64,
    reference: Option<FamilySpec>,
    kind: RadiusKind,
    exceptions: Vec<FamilySpec>,
    cmp_name: &str,
) -> Result<TheoremVerdict> {
    let (threshold, closed) = match reference {
        Some(spec) if spec.validate().is_ok() => (
            family_radius(&spec, kind)?,
            closed_form(&spec, kind, b.n, b.k, b.p),
        ),
        _ => {
            b.require(false, "comparison family exists");
            (0.0, None)
        }
    };
    b.require(measured >= threshold - SPECTRAL_SLACK, cmp_name);
    let mut v = b.finish(threshold, measured, Prediction::Biconnected, || {
        equal_to(g, &exceptions)
    })?;
    v.closed_form_threshold = closed;
    Ok(v)
}

fn m_spec(n: usize, m: usize, s: isize, t: isize) -> Option<FamilySpec> {
    if s < 0 || t < 0 {
        return None;
    }
    let spec = FamilySpec::M {
        n,
        m,
        s: s as usize,
        t: t as usize,
    };
    spec.validate().ok().map(|_| spec)
}

fn closed_form_verdict(b: &Builder, threshold: f64, measured: f64) -> Result<TheoremVerdict> {
    b.finish(threshold, measured, Prediction::Biconnected, || Ok(vec![]))
}

/// Every spectral statement applicable to the shape of `G` (balanced or
/// nearly balanced), one verdict each.
pub fn eval_spectral(g: &BipartiteGraph, k: usize, p: usize) -> Result<Vec<TheoremVerdict>> {
    if g.is_balanced() {
        eval_spectral_balanced(g, k, p)
    } else {
        eval_spectral_nearly(&orient_nearly(g)?, k, p)
    }
}

fn eval_spectral_balanced(g: &BipartiteGraph, k: usize, p: usize) -> Result<Vec<TheoremVerdict>> {
    let n = g.n_x();
    let delta = min_degree(g);
    let r = rho(g, DEFAULT_TOL)?;
    let q = q_radius(g, DEFAULT_TOL)?;
    let (nf, kf, pf) = (n as f64, k as f64, p as f64);
    let (ni, ki, pi) = (n as isize, k as isize, p as isize);
    let mut out = Vec::new();
    let m_ref = m_spec(n, n, ni - ki, ki - pi);

    // ρ against N_{n,n}^{k-2,1}, the k = p+2 branch.
    {
        let mut b = Builder::new(TheoremId::RhoBalancedN, n, k, p);
        b.informational = k != p + 2;
        b.require(delta >= k, "min degree >= k")
            .require(k > p, "k >= p+1")
            .require(k == p + 2, "k = p+2")
            .require(n >= 2 * k * k + 3, "n >= 2k^2+3");
        let reference = (k >= 2).then_some(FamilySpec::N1 {
            n,
            p: k.saturating_sub(2),
        });
        let exc: Vec<FamilySpec> = reference.into_iter().collect();
        out.push(spectral_verdict(
            &mut b,
            g,
            r,
            reference,
            RadiusKind::Rho,
            exc,
            "rho(G) >= rho(N)",
        )?);
    }
    // ρ against M_{n,n}^{n-k,k-p}, the k != p+2 branch.
    {
        let mut b = Builder::new(TheoremId::RhoBalancedM, n, k, p);
        b.informational = k == p + 2;
        b.require(delta >= k, "min degree >= k")
            .require(k > p, "k >= p+1")
            .require(k != p + 2, "k != p+2")
            .require(
                n >= (k + 2) * (k + 1).saturating_sub(p),
                "n >= (k+2)(k-p+1)",
            );
        let exc: Vec<FamilySpec> = m_ref.into_iter().collect();
        out.push(spectral_verdict(
            &mut b,
            g,
            r,
            m_ref,
            RadiusKind::Rho,
            exc,
            "rho(G) >= rho(M)",
        )?);
    }
    // q against M_{n,n}^{n-k,k-p}.
    {
        let mut b = Builder::new(TheoremId::QBalanced, n, k, p);
        b.require(delta >= k, "min degree >= k")
            .require(k > p, "k >= p+1")
            .require(
                n >= (k + 2) * (k + 1).saturating_sub(p),
                "n >= (k+2)(k-p+1)",
            );
        let exc: Vec<FamilySpec> = m_ref.into_iter().collect();
        out.push(spectral_verdict(
            &mut b,
            g,
            q,
            m_ref,
            RadiusKind::Q,
            exc,
            "q(G) >= q(M)",
        )?);
    }
    // Closed-form ρ threshold.
    {
        let mut b = Builder::new(TheoremId::RhoBalancedClosedForm, n, k, p);
        let n0 = if k == p + 2 {
            2 * k * k + 3
        } else {
            (k + 2) * (k + 1).saturating_sub(p)
        };
        let thr = (nf * (nf - kf + pf) + kf * (kf - pf)).max(0.0).sqrt();
        b.require(delta >= k, "min degree >= k")
            .require(k > p, "k >= p+1")
            .require(n >= n0, "n >= n0(k,p)")
            .require(r >= thr, "rho(G) >= sqrt(n(n-k+p)+k(k-p))");
        out.push(closed_form_verdict(&b, thr, r)?);
    }
    // Closed-form q threshold.
    {
        let mut b = Builder::new(TheoremId::QBalancedClosedForm, n, k, p);
        let thr = 2.0 * nf - kf + pf + kf * (kf - pf) / nf;
        b.require(delta >= k, "min degree >= k")
            .require(k > p, "k >= p+1")
            .require(
                n >= (k + 2) * (k + 1).saturating_sub(p),
                "n >= (k+2)(k-p+1)",
            )
            .require(q >= thr, "q(G) >= 2n-k+p+k(k-p)/n");
        out.push(closed_form_verdict(&b, thr, q)?);
    }
    Ok(out)
}

fn eval_spectral_nearly(g: &BipartiteGraph, k: usize, p: usize) -> Result<Vec<TheoremVerdict>> {
    let n = g.n_x();
    let delta = min_degree(g);
    let r = rho(g, DEFAULT_TOL)?;
    let q = q_radius(g, DEFAULT_TOL)?;
    let (nf, kf, pf) = (n as f64, k as f64, p as f64);
    let (ni, ki, pi) = (n as isize, k as isize, p as isize);
    let small = k == p + 1;
    let large = k >= p + 2;
    let half_range = 2 * n >= (k + 2) * (k + 1).saturating_sub(p);
    let m_one = m_spec(n, n - 1, 1, ni - ki - 1);
    let m_three = m_spec(n, n - 1, ni - ki, ki - pi - 1);
    let m_q_small = m_spec(n, n - 1, ni - ki - 1, 1);
    let mut out = Vec::new();

    {
        let mut b = Builder::new(TheoremId::RhoNearlySmallK, n, k, p);
        b.informational = !small;
        b.require(delta >= k, "min degree >= k")
            .require(small, "k = p+1")
            .require(n >= 2 * k + 3, "n >= 2k+3");
        let exc: Vec<FamilySpec> = m_one.into_iter().collect();
        out.push(spectral_verdict(
            &mut b,
            g,
            r,
            m_one,
            RadiusKind::Rho,
            exc,
            "rho(G) >= rho(M)",
        )?);
    }
    {
        let mut b = Builder::new(TheoremId::RhoNearlyLargeK, n, k, p);
        b.informational = !large;
        b.require(delta >= k, "min degree >= k")
            .require(large, "k >= p+2")
            .require(half_range, "n >= (k+2)(k-p+1)/2");
        let exc: Vec<FamilySpec> = m_three.into_iter().collect();
        out.push(spectral_verdict(
            &mut b,
            g,
            r,
            m_three,
            RadiusKind::Rho,
            exc,
            "rho(G) >= rho(M)",
        )?);
    }
    {
        // The stated exception names M^{n-k-1,1}; the argument behind it
        // arrives at M^{1,n-k-1}. Both are tested and reported.
        let mut b = Builder::new(TheoremId::QNearlySmallK, n, k, p);
        b.informational = !small;
        b.require(delta >= k, "min degree >= k")
            .require(small, "k = p+1")
            .require(n >= 2 * k + 4, "n >= 2k+4");
        let exc: Vec<FamilySpec> = m_q_small.into_iter().chain(m_one).collect();
        out.push(spectral_verdict(
            &mut b,
            g,
            q,
            m_q_small,
            RadiusKind::Q,
            exc,
            "q(G) >= q(M)",
        )?);
    }
    {
        let mut b = Builder::new(TheoremId::QNearlyLargeK, n, k, p);
        b.informational = !large;
        b.require(delta >= k, "min degree >= k")
            .require(large, "k >= p+2")
            .require(half_range, "n >= (k+2)(k-p+1)/2");
        let exc: Vec<FamilySpec> = m_three.into_iter().collect();
        out.push(spectral_verdict(
            &mut b,
            g,
            q,
            m_three,
            RadiusKind::Q,
            exc,
            "q(G) >= q(M)",
        )?);
    }
    // Closed-form ρ thresholds (one branch chosen by k).
    {
        let mut b = Builder::new(TheoremId::RhoNearlyClosedForm, n, k, p);
        b.require(delta >= k, "min degree >= k");
        let thr = if small {
            b.require(n >= 2 * k + 3, "n >= 2k+3");
            ((nf - 1.0).powi(2) + kf).sqrt()
        } else if large {
            b.require(half_range, "n >= (k+2)(k-p+1)/2");
            (nf * (nf - kf + pf) + kf * (kf - pf - 1.0)).max(0.0).sqrt()
        } else {
            b.require(false, "k >= p+1");
            0.0
        };
        b.require(r >= thr, "rho(G) >= closed-form threshold");
        out.push(closed_form_verdict(&b, thr, r)?);
    }
    // Closed-form q thresholds, without and with the square root.
    for (id, sqrt) in [
        (TheoremId::QNearlyClosedForm, false),
        (TheoremId::QNearlyClosedFormSqrt, true),
    ] {
        let mut b = Builder::new(id, n, k, p);
        b.informational = sqrt;
        b.require(delta >= k, "min degree >= k");
        let base = if small {
            b.require(n >= 2 * k + 4, "n >= 2k+4");
            2.0 * nf - 2.0 + (kf + 1.0) / nf
        } else if large {
            b.require(half_range, "n >= (k+2)(k-p+1)/2");
            2.0 * nf - kf + pf + kf * (kf - pf - 1.0) / nf
        } else {
            b.require(false, "k >= p+1");
            0.0
        };
        let thr = if sqrt { base.sqrt() } else { base };
        b.require(q >= thr, "q(G) >= closed-form threshold");
        out.push(closed_form_verdict(&b, thr, q)?);
    }
    Ok(out)
}

/// Every applicable statement for `(G, k, p)`.
pub fn eval_all(g: &BipartiteGraph, k: usize, p: usize) -> Result<Vec<TheoremVerdict>> {
    let mut out = if g.is_balanced() {
        eval_edge_balanced(g, k, p)?
    } else {
        vec![eval_edge_nearly(g, k, p)?]
    };
    out.extend(eval_spectral(g, k, p)?);
    Ok(out)
}

/// A prediction that the oracle contradicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Falsification {
    pub verdict: TheoremVerdict,
    pub oracle: HamVerdict,
}

/// Oracle outcome for one verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckedVerdict {
    pub verdict: TheoremVerdict,
    /// 2p-Hamilton-biconnectedness of `G` at the verdict's `p`.
    pub oracle_holds: bool,
    /// Present for Hamiltonian-cycle predictions.
    pub hamiltonian: Option<bool>,
    /// The prediction is borne out (vacuously true without a prediction).
    pub consistent: bool,
}

/// Result of [`cross_validate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub checked: Vec<CheckedVerdict>,
    /// Oracle results keyed by `p`.
    pub oracle: BTreeMap<usize, HamVerdict>,
    /// Non-informational predictions contradicted by the oracle.
    pub falsifications: Vec<Falsification>,
}

/// Evaluates every statement and checks each prediction against the exact
/// oracle. Exceptional verdicts are consistent either way: an exception only
/// withdraws the claim.
pub fn cross_validate(g: &BipartiteGraph, k: usize, p: usize) -> Result<CrossValidation> {
    let verdicts = eval_all(g, k, p)?;
    let mut oracle: BTreeMap<usize, HamVerdict> = BTreeMap::new();
    let mut hamiltonian: Option<bool> = None;
    let mut checked = Vec::new();
    let mut falsifications = Vec::new();
    for v in verdicts {
        if let std::collections::btree_map::Entry::Vacant(e) = oracle.entry(v.p) {
            e.insert(is_2p_hamilton_biconnected(g, v.p)?);
        }
        let ov = &oracle[&v.p];
        let (consistent, ham) = match v.predicted {
            Prediction::Biconnected => (ov.holds, None),
            Prediction::Hamiltonian => {
                let h = match hamiltonian {
                    Some(h) => h,
                    None => {
                        let h = has_hamiltonian_cycle(g)?;
                        hamiltonian = Some(h);
                        h
                    }
                };
                (h, Some(h))
            }
            Prediction::Exceptional | Prediction::NoPrediction => (true, None),
        };
        if !consistent && !v.informational {
            falsifications.push(Falsification {
                verdict: v.clone(),
                oracle: ov.clone(),
            });
        }
        checked.push(CheckedVerdict {
            oracle_holds: ov.holds,
            hamiltonian: ham,
            consistent,
            verdict: v,
        });
    }
    Ok(CrossValidation {
        checked,
        oracle,
        falsifications,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    fn find(vs: &[TheoremVerdict], id: TheoremId) -> &TheoremVerdict {
        vs.iter().find(|v| v.theorem == id).unwrap()
    }

    #[test]
    fn complete_graph_is_predicted_biconnected() {
        let g = BipartiteGraph::complete(8, 8).unwrap();
        let vs = eval_edge_balanced(&g, 2, 0).unwrap();
        assert_eq!(
            find(&vs, TheoremId::EdgeBalanced).predicted,
            Prediction::Biconnected
        );
        assert_eq!(
            find(&vs, TheoremId::EdgeDense).predicted,
            Prediction::Biconnected
        );
        assert_eq!(
            find(&vs, TheoremId::EdgeHamiltonian).predicted,
            Prediction::Hamiltonian
        );
    }

    #[test]
    fn extremal_m_sits_below_the_threshold() {
        let g = FamilySpec::M {
            n: 6,
            m: 6,
            s: 4,
            t: 2,
        }
        .build()
        .unwrap();
        assert_eq!(g.edge_count(), 28);
        let v = eval_edge_balanced(&g, 2, 0).unwrap();
        let v = find(&v, TheoremId::EdgeBalanced);
        assert_eq!(v.threshold_value, 30.0);
        assert!(!v.hypothesis_holds);
        assert_eq!(v.predicted, Prediction::NoPrediction);
        assert!(v.failed_conditions.iter().any(|c| c.starts_with("e >")));
        // One more edge is still not enough.
        let h = g.with_edge(0, 5).unwrap();
        let v = eval_edge_balanced(&h, 2, 0).unwrap();
        assert_eq!(
            find(&v, TheoremId::EdgeBalanced).predicted,
            Prediction::NoPrediction
        );
    }

    #[test]
    fn nearly_balanced_exception() {
        // At (6,3,1) the member of the third exception family matches the
        // exception but sits outside the hypothesis: n < 2k-p+2 and e equals
        // the threshold.
        let g = FamilySpec::M {
            n: 6,
            m: 5,
            s: 3,
            t: 1,
        }
        .build()
        .unwrap();
        let v = eval_edge_nearly(&g, 3, 1).unwrap();
        assert!(!v.hypothesis_holds);
        assert_eq!(v.failed_conditions.len(), 2);
        assert_eq!(v.predicted, Prediction::NoPrediction);
        assert!(v.exception_matches.contains(&FamilySpec::M {
            n: 6,
            m: 5,
            s: 3,
            t: 1
        }));
        // In range, the extremal member plus an edge is still inside an
        // exception family only if the edge lands in the hole; the member
        // itself with the hypothesis met is exceptional.
        let (n, k, p) = (9, 3, 1);
        let g = FamilySpec::M {
            n,
            m: n - 1,
            s: n - k,
            t: k - p - 1,
        }
        .build()
        .unwrap();
        let v = eval_edge_nearly(&g, k, p).unwrap();
        assert!(v.hypothesis_holds, "{v:?}");
        assert_eq!(v.predicted, Prediction::Exceptional);
        // Same answer after exchanging parts.
        assert_eq!(
            eval_edge_nearly(&g.transpose(), k, p).unwrap().predicted,
            Prediction::Exceptional
        );
        let k = BipartiteGraph::complete(6, 5).unwrap();
        assert_eq!(
            eval_edge_nearly(&k, 2, 0).unwrap().predicted,
            Prediction::Biconnected
        );
    }

    #[test]
    fn sparse_random_graph_gets_no_prediction() {
        let g = random_graph(6, 5, 0.3, 11).unwrap();
        assert_eq!(
            eval_edge_nearly(&g, 2, 0).unwrap().predicted,
            Prediction::NoPrediction
        );
    }

    #[test]
    fn shape_errors() {
        let g = BipartiteGraph::complete(5, 3).unwrap();
        assert!(matches!(
            eval_edge_balanced(&g, 1, 0),
            Err(Error::NotBalanced { .. })
        ));
        assert!(matches!(
            eval_edge_nearly(&g, 1, 0),
            Err(Error::NotNearlyBalanced { .. })
        ));
        assert!(matches!(
            eval_spectral(&g, 1, 0),
            Err(Error::NotNearlyBalanced { .. })
        ));
    }

    #[test]
    fn self_comparison_is_exceptional() {
        for (n, k, p) in [(12, 1, 0), (10, 2, 1), (20, 3, 0)] {
            let g = FamilySpec::M {
                n,
                m: n,
                s: n - k,
                t: k - p,
            }
            .build()
            .unwrap();
            let vs = eval_spectral(&g, k, p).unwrap();
            let v = find(&vs, TheoremId::RhoBalancedM);
            assert!(v.hypothesis_holds, "{v:?}");
            assert_eq!(v.predicted, Prediction::Exceptional);
            let v = find(&vs, TheoremId::QBalanced);
            assert_eq!(v.predicted, Prediction::Exceptional);
        }
    }

    #[test]
    fn boundary_instance_of_the_n_branch() {
        let g = FamilySpec::N1 { n: 11, p: 0 }.build().unwrap();
        let vs = eval_spectral(&g, 2, 0).unwrap();
        let v = find(&vs, TheoremId::RhoBalancedN);
        assert!(!v.informational);
        assert!(v.hypothesis_holds, "{v:?}");
        assert_eq!(v.predicted, Prediction::Exceptional);
        // The other branch is reported but marked informational.
        assert!(find(&vs, TheoremId::RhoBalancedM).informational);
    }

    #[test]
    fn complete_graph_spectral_predictions() {
        let g = BipartiteGraph::complete(12, 12).unwrap();
        let vs = eval_spectral(&g, 2, 1).unwrap();
        let v = find(&vs, TheoremId::RhoBalancedM);
        assert_eq!(v.predicted, Prediction::Biconnected);
        assert!((v.measured_value - 12.0).abs() < 1e-9);
    }

    #[test]
    fn closed_form_threshold_is_attached_when_known() {
        let g = BipartiteGraph::complete(9, 8).unwrap();
        let vs = eval_spectral(&g, 3, 1).unwrap();
        let v = find(&vs, TheoremId::RhoNearlyLargeK);
        let cf = v.closed_form_threshold.unwrap();
        assert!((cf - v.threshold_value).abs() < 1e-8);
    }

    #[test]
    fn cross_validation_examples() {
        let g = FamilySpec::N1 { n: 6, p: 0 }.build().unwrap();
        let cv = cross_validate(&g, 2, 0).unwrap();
        let v = cv
            .checked
            .iter()
            .find(|c| c.verdict.theorem == TheoremId::EdgeBalanced)
            .unwrap();
        // e(N) = 28 does not exceed the threshold 30, so the exception is
        // matched without the hypothesis holding.
        assert!(v
            .verdict
            .exception_matches
            .contains(&FamilySpec::N1 { n: 6, p: 0 }));
        assert_eq!(v.verdict.predicted, Prediction::NoPrediction);
        assert!(!v.oracle_holds);
        assert!(cv.falsifications.is_empty());

        let k = BipartiteGraph::complete(5, 5).unwrap();
        let cv = cross_validate(&k, 2, 0).unwrap();
        assert!(cv.falsifications.is_empty());
        assert!(cv.checked.iter().all(|c| c.oracle_holds));
    }

    #[test]
    fn evaluation_is_repeatable() {
        let g = random_graph(6, 6, 0.8, 5).unwrap();
        let a = serde_json::to_string(&eval_all(&g, 2, 0).unwrap()).unwrap();
        let b = serde_json::to_string(&eval_all(&g, 2, 0).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
