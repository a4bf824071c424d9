//! Batch sweeps over family grids and seeded random graphs, persisted as
//! JSON Lines, with resumption and record replay.
//!
//! A sweep is a list of independent tasks. Each task is identified by a
//! fingerprint (SHA-256 over the graph's BEL text, `k`, `p`, the expected
//! outcome and the source label). Records are appended as tasks finish, so
//! an interrupted sweep keeps its progress; on restart, tasks whose
//! fingerprint is already present are skipped. When the sweep completes the
//! file is rewritten sorted by fingerprint, so identical configurations
//! produce identical files apart from timestamps.

use std::collections::BTreeSet;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::{parse_bel, random_graph, to_bel, BipartiteGraph};
use crate::hamilton::{has_hamiltonian_cycle, is_2p_hamilton_biconnected, HamVerdict};
use crate::spectral::{spectral_report, SpectralReport, DEFAULT_TOL};
use crate::theorems::{eval_all, Prediction, TheoremId, TheoremVerdict};

/// Schema tag written on the first line of every sweep file.
pub const SCHEMA: &str = "biham-sweep";
pub const SCHEMA_VERSION: u32 = 1;
/// Default cap on `n_x + n_y` for running the exact oracle.
pub const DEFAULT_ORACLE_CEILING: usize = 22;

const CHUNK: usize = 64;

/// Claims about specific family members checked by a family sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaKind {
    /// Every valid `F_{n,m}^{k,p,l}` is 2p-Hamilton-biconnected.
    FPositive,
    /// `M_{n,n}^{s,t;-}` with `n = s+t+p+1`, `s ≥ 2`, `t ≥ 1` is.
    MminusPositive,
    /// `N_{n,n}^{p,2}` with `n ≥ p+6` is.
    N2Positive,
    /// `M_{n,n-1}^{s,t}` with `max{s,t}+p+2 ≤ n ≤ s+t+p+1`, `s,t ≥ 1` is not.
    MNearlyNegative,
    /// `M_{n,n}^{s,t}` with `n = s+t+p`, `s,t ≥ 1` is not.
    MBalancedNegative,
    /// `N_{n,n}^{p,1}` with `n ≥ p+6` is not.
    N1Negative,
}

impl LemmaKind {
    pub const ALL: [LemmaKind; 6] = [
        LemmaKind::FPositive,
        LemmaKind::MminusPositive,
        LemmaKind::N2Positive,
        LemmaKind::MNearlyNegative,
        LemmaKind::MBalancedNegative,
        LemmaKind::N1Negative,
    ];

    /// Whether the claim is that the members are 2p-Hamilton-biconnected.
    pub fn claim(self) -> bool {
        matches!(
            self,
            LemmaKind::FPositive | LemmaKind::MminusPositive | LemmaKind::N2Positive
        )
    }

    fn tag(self) -> &'static str {
        match self {
            LemmaKind::FPositive => "f-positive",
            LemmaKind::MminusPositive => "mminus-positive",
            LemmaKind::N2Positive => "n2-positive",
            LemmaKind::MNearlyNegative => "m-nearly-negative",
            LemmaKind::MBalancedNegative => "m-balanced-negative",
            LemmaKind::N1Negative => "n1-negative",
        }
    }

    /// Members covered by the claim for deletion half-size `p`, with parts
    /// of size at most `n_max` and total order at most `max_order`.
    pub fn instances(self, p: usize, n_max: usize, max_order: usize) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        let fits = |spec: &FamilySpec| {
            let (a, b) = spec.part_sizes();
            a.max(b) <= n_max && a + b <= max_order && spec.validate().is_ok()
        };
        match self {
            LemmaKind::FPositive => {
                for n in 1..=n_max {
                    for m in [n.saturating_sub(1), n] {
                        for k in p + 2..=n {
                            for l in 0..k {
                                let spec = FamilySpec::F { n, m, k, p, l };
                                if fits(&spec) {
                                    out.push(spec);
                                }
                            }
                        }
                    }
                }
            }
            LemmaKind::MminusPositive => {
                for s in 2..=n_max {
                    for t in 1..=n_max {
                        let n = s + t + p + 1;
                        let spec = FamilySpec::Mminus { n, m: n, s, t };
                        if fits(&spec) {
                            out.push(spec);
                        }
                    }
                }
            }
            LemmaKind::N2Positive | LemmaKind::N1Negative => {
                for n in p + 6..=n_max {
                    let spec = if self == LemmaKind::N2Positive {
                        FamilySpec::N2 { n, p }
                    } else {
                        FamilySpec::N1 { n, p }
                    };
                    if fits(&spec) {
                        out.push(spec);
                    }
                }
            }
            LemmaKind::MNearlyNegative => {
                for n in 2..=n_max {
                    for s in 1..=n {
                        for t in 1..n {
                            if s.max(t) + p + 2 <= n && n <= s + t + p + 1 {
                                let spec = FamilySpec::M { n, m: n - 1, s, t };
                                if fits(&spec) {
                                    out.push(spec);
                                }
                            }
                        }
                    }
                }
            }
            LemmaKind::MBalancedNegative => {
                for s in 1..=n_max {
                    for t in 1..=n_max {
                        let n = s + t + p;
                        let spec = FamilySpec::M { n, m: n, s, t };
                        if fits(&spec) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Family-claim part of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "all_lemmas")]
    pub lemmas: Vec<LemmaKind>,
    /// Deletion half-sizes to check.
    pub p: Vec<usize>,
    /// Largest part size.
    pub n_max: usize,
    /// Largest total order `n_x + n_y`.
    pub max_order: usize,
}

fn all_lemmas() -> Vec<LemmaKind> {
    LemmaKind::ALL.to_vec()
}

/// Seeded random graphs checked against every statement at each `(k, p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomConfig {
    pub count: usize,
    pub n_x: usize,
    pub n_y: usize,
    /// Each graph draws its edge probability uniformly from this range.
    pub edge_probability: (f64, f64),
    pub seed: u64,
}

/// Sweep configuration, read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub random: Vec<RandomConfig>,
    /// `(k, p)` pairs for the statement checks on random graphs.
    #[serde(default)]
    pub kp: Vec<(usize, usize)>,
    #[serde(default = "default_ceiling")]
    pub oracle_ceiling: usize,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

fn default_ceiling() -> usize {
    DEFAULT_ORACLE_CEILING
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<SweepConfig> {
        let c: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        for r in &self.random {
            let (lo, hi) = r.edge_probability;
            if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
                return bad(format!(
                    "edge probability range ({lo}, {hi}) is not inside [0, 1]"
                ));
            }
            if r.count > 0 && r.n_x.abs_diff(r.n_y) > 1 {
                return bad(format!(
                    "random graphs {}+{} are not nearly balanced",
                    r.n_x, r.n_y
                ));
            }
            if r.count > 0 && self.kp.is_empty() {
                return bad("random graphs need at least one (k, p) pair".into());
            }
        }
        if self.oracle_ceiling > crate::hamilton::DP_CEILING {
            return bad(format!(
                "oracle ceiling {} exceeds the DP limit {}",
                self.oracle_ceiling,
                crate::hamilton::DP_CEILING
            ));
        }
        Ok(())
    }
}

/// One unit of work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepTask {
    pub source: String,
    pub seed: Option<u64>,
    pub graph: BipartiteGraph,
    pub k: Option<usize>,
    pub p: usize,
    /// Expected oracle result for family claims.
    pub claim: Option<bool>,
}

impl SweepTask {
    pub fn fingerprint(&self) -> String {
        fingerprint(&self.graph, self.k, self.p, self.claim, &self.source)
    }
}

fn fingerprint(
    g: &BipartiteGraph,
    k: Option<usize>,
    p: usize,
    claim: Option<bool>,
    source: &str,
) -> String {
    let mut h = Sha256::new();
    h.update(to_bel(g).as_bytes());
    h.update(format!("\nk={k:?}\np={p}\nclaim={claim:?}\nsource={source}").as_bytes());
    hex::encode(h.finalize())
}

/// Everything recomputable about a task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    /// Absent when the graph exceeds the oracle ceiling.
    pub oracle: Option<HamVerdict>,
    pub hamiltonian: Option<bool>,
    pub verdicts: Vec<TheoremVerdict>,
    /// Non-informational predictions the oracle contradicts.
    pub falsified: Vec<TheoremId>,
    pub spectral: SpectralReport,
    /// A family claim or a prediction is contradicted by the oracle.
    pub falsification: bool,
}

/// One persisted line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub fingerprint: String,
    pub source: String,
    pub seed: Option<u64>,
    /// The graph in BEL text form.
    pub graph: String,
    pub k: Option<usize>,
    pub p: usize,
    pub claim: Option<bool>,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub started_at_ms: u64,
    pub finished_at_ms: u64,
}

impl SweepRecord {
    /// The record with timestamps cleared, for comparisons.
    pub fn without_timestamps(&self) -> SweepRecord {
        SweepRecord {
            started_at_ms: 0,
            finished_at_ms: 0,
            ..self.clone()
        }
    }

    pub fn task(&self) -> Result<SweepTask> {
        Ok(SweepTask {
            source: self.source.clone(),
            seed: self.seed,
            graph: parse_bel(&self.graph)?,
            k: self.k,
            p: self.p,
            claim: self.claim,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    schema: String,
    version: u32,
}

/// Counts reported by [`run_sweep`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub tasks: usize,
    pub computed: usize,
    pub resumed: usize,
    pub oracle_skipped: usize,
    pub falsifications: usize,
}

/// All tasks described by `config`, in a fixed order.
pub fn plan(config: &SweepConfig) -> Result<Vec<SweepTask>> {
    config.validate()?;
    let mut tasks = Vec::new();
    if let Some(grid) = &config.grid {
        for &kind in &grid.lemmas {
            for &p in &grid.p {
                for spec in kind.instances(p, grid.n_max, grid.max_order) {
                    tasks.push(SweepTask {
                        source: format!("lemma:{}:{spec}", kind.tag()),
                        seed: None,
                        graph: spec.build()?,
                        k: None,
                        p,
                        claim: Some(kind.claim()),
                    });
                }
            }
        }
    }
    for r in &config.random {
        let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
        let (lo, hi) = r.edge_probability;
        for i in 0..r.count {
            let prob = lo + (hi - lo) * rng.gen::<f64>();
            let graph_seed = rng.gen::<u64>();
            let g = random_graph(r.n_x, r.n_y, prob, graph_seed)?;
            for &(k, p) in &config.kp {
                tasks.push(SweepTask {
                    source: format!("random:{}x{}:seed={}:index={i}", r.n_x, r.n_y, r.seed),
                    seed: Some(r.seed),
                    graph: g.clone(),
                    k: Some(k),
                    p,
                    claim: None,
                });
            }
        }
    }
    Ok(tasks)
}

/// Computes the outcome of one task.
pub fn evaluate(task: &SweepTask, oracle_ceiling: usize) -> Result<Outcome> {
    let g = &task.graph;
    let spectral = spectral_report(g, DEFAULT_TOL)?;
    let run_oracle = g.order() <= oracle_ceiling;
    let oracle = if run_oracle {
        Some(is_2p_hamilton_biconnected(g, task.p)?)
    } else {
        None
    };
    let verdicts = match task.k {
        Some(k) => eval_all(g, k, task.p)?,
        None => Vec::new(),
    };
    let mut hamiltonian = None;
    let mut falsified = Vec::new();
    if run_oracle {
        for v in verdicts.iter().filter(|v| !v.informational) {
            let ok = match v.predicted {
                Prediction::Biconnected => {
                    if v.p == task.p {
                        oracle.as_ref().map(|o| o.holds).unwrap_or(true)
                    } else {
                        is_2p_hamilton_biconnected(g, v.p)?.holds
                    }
                }
                Prediction::Hamiltonian => {
                    let h = match hamiltonian {
                        Some(h) => h,
                        None => has_hamiltonian_cycle(g)?,
                    };
                    hamiltonian = Some(h);
                    h
                }
                Prediction::Exceptional | Prediction::NoPrediction => true,
            };
            if !ok {
                falsified.push(v.theorem);
            }
        }
    }
    let claim_broken = match (task.claim, &oracle) {
        (Some(c), Some(o)) => c != o.holds,
        _ => false,
    };
    Ok(Outcome {
        falsification: claim_broken || !falsified.is_empty(),
        oracle,
        hamiltonian,
        verdicts,
        falsified,
        spectral,
    })
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn run_task(task: &SweepTask, ceiling: usize) -> Result<SweepRecord> {
    let started = now_ms();
    let outcome = evaluate(task, ceiling)?;
    Ok(SweepRecord {
        fingerprint: task.fingerprint(),
        source: task.source.clone(),
        seed: task.seed,
        graph: to_bel(&task.graph),
        k: task.k,
        p: task.p,
        claim: task.claim,
        outcome,
        started_at_ms: started,
        finished_at_ms: now_ms(),
    })
}

fn header_line() -> String {
    serde_json::to_string(&Header {
        schema: SCHEMA.into(),
        version: SCHEMA_VERSION,
    })
    .expect("header serializes")
}

/// Reads a sweep file. A final line without a newline (an interrupted
/// write) is ignored; any other malformed line is an error.
pub fn read_records(path: &Path) -> Result<Vec<SweepRecord>> {
    let text = fs::read_to_string(path)?;
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let mut lines = complete.lines();
    match lines.next() {
        None => return Ok(Vec::new()),
        Some(h) => {
            let header: Header = serde_json::from_str(h)
                .map_err(|e| Error::CorruptRecord(format!("bad header: {e}")))?;
            if header.schema != SCHEMA || header.version != SCHEMA_VERSION {
                return Err(Error::CorruptRecord(format!(
                    "unsupported schema {} v{}",
                    header.schema, header.version
                )));
            }
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| Error::CorruptRecord(format!("line {}: {e}", i + 2)))
        })
        .collect()
}

fn write_sorted(path: &Path, mut records: Vec<SweepRecord>) -> Result<()> {
    records.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
    records.dedup_by(|a, b| a.fingerprint == b.fingerprint);
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut f = File::create(&tmp)?;
        writeln!(f, "{}", header_line())?;
        for r in &records {
            writeln!(f, "{}", serde_json::to_string(r)?)?;
        }
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs (or resumes) the sweep, writing records to `out`.
pub fn run_sweep(config: &SweepConfig, out: &Path) -> Result<SweepSummary> {
    let tasks = plan(config)?;
    let mut done: BTreeSet<String> = BTreeSet::new();
    if out.exists() {
        let existing = read_records(out)?;
        done.extend(existing.iter().map(|r| r.fingerprint.clone()));
        // Drop any torn tail before appending.
        write_sorted(out, existing)?;
    } else {
        let mut f = File::create(out)?;
        writeln!(f, "{}", header_line())?;
    }
    let pending: Vec<&SweepTask> = tasks
        .iter()
        .filter(|t| !done.contains(&t.fingerprint()))
        .collect();
    let mut summary = SweepSummary {
        tasks: tasks.len(),
        resumed: tasks.len() - pending.len(),
        ..SweepSummary::default()
    };
    let mut writer = OpenOptions::new().append(true).open(out)?;
    for chunk in pending.chunks(CHUNK) {
        let records: Vec<SweepRecord> = chunk
            .par_iter()
            .map(|t| run_task(t, config.oracle_ceiling))
            .collect::<Result<_>>()?;
        for r in &records {
            writeln!(writer, "{}", serde_json::to_string(r)?)?;
        }
        writer.flush()?;
        summary.computed += records.len();
    }
    drop(writer);
    let all = read_records(out)?;
    let planned: BTreeSet<String> = tasks.iter().map(|t| t.fingerprint()).collect();
    for r in all.iter().filter(|r| planned.contains(&r.fingerprint)) {
        if r.outcome.oracle.is_none() {
            summary.oracle_skipped += 1;
        }
        if r.outcome.falsification {
            summary.falsifications += 1;
        }
    }
    write_sorted(out, all)?;
    Ok(summary)
}

/// Recomputes a record from its fingerprinted input and checks that the
/// stored outcome is reproduced exactly (timestamps excluded).
pub fn replay(record: &SweepRecord, oracle_ceiling: usize) -> Result<Outcome> {
    let task = record.task()?;
    let fp = task.fingerprint();
    if fp != record.fingerprint {
        return Err(Error::CorruptRecord(format!(
            "fingerprint mismatch: stored {}, recomputed {fp}",
            record.fingerprint
        )));
    }
    let outcome = evaluate(&task, oracle_ceiling)?;
    if outcome != record.outcome {
        return Err(Error::CorruptRecord(format!(
            "outcome of {} does not reproduce",
            record.fingerprint
        )));
    }
    Ok(outcome)
}
