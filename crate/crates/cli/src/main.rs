use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use biham_core::closure::{biclosure, closure_equivalence_check};
use biham_core::graph::{parse_bel, random_graph, to_bel};
use biham_core::hamilton::{
    appendix_path_catalog, catalog_covers_biconnectedness, is_2p_hamilton_biconnected, CatalogId,
};
use biham_core::harness::{read_records, replay, run_sweep, SweepConfig, DEFAULT_ORACLE_CEILING};
use biham_core::spectral::{spectral_report, DEFAULT_TOL};
use biham_core::theorems::{cross_validate, eval_all};
use biham_core::{BipartiteGraph, FamilySpec};
use clap::{Parser, Subcommand};
use serde::Serialize;

/// Exit status when a checked claim is contradicted.
const FALSIFIED: u8 = 2;

#[derive(Parser)]
#[command(
    name = "biham",
    version,
    about = "Hamilton-biconnectedness of bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the k-biclosure of a graph.
    Closure {
        #[arg(long, required_unless_present = "equivalence_p")]
        k: Option<usize>,
        /// Print the closed graph as BEL instead of the JSON trace.
        #[arg(long)]
        bel: bool,
        /// Instead, check that 2p-Hamilton-biconnectedness survives the
        /// closure at the preserving threshold.
        #[arg(long, conflicts_with = "k")]
        equivalence_p: Option<usize>,
        /// BEL file, or `-` for standard input.
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// Decide 2p-Hamilton-biconnectedness exactly.
    Check {
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// Spectral radius of the adjacency and signless Laplacian matrices.
    Spectral {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// Evaluate every sufficient condition at (k, p).
    Verdict {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// Evaluate every sufficient condition and compare with the exact oracle.
    CrossValidate {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(default_value = "-")]
        graph: PathBuf,
    },
    /// Run or resume a sweep described by a JSON configuration.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output file; overrides `output_path` in the configuration.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every record of a sweep file and check it reproduces.
    Replay {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CEILING)]
        oracle_ceiling: usize,
    },
    /// Build a family member, e.g. `M:6,6,2,3` or `F:9,9,2,0,1`, as BEL.
    Build { spec: FamilySpec },
    /// Generate a seeded random bipartite graph as BEL.
    Random {
        #[arg(long)]
        n_x: usize,
        #[arg(long)]
        n_y: usize,
        #[arg(long)]
        prob: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Construct and validate an explicit path catalog, e.g. `M-:2,1`.
    Catalog { id: CatalogId },
}

fn read_graph(path: &Path) -> Result<BipartiteGraph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(parse_bel(&text)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FALSIFIED)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Closure {
            k,
            bel,
            equivalence_p,
            graph,
        } => {
            let g = read_graph(&graph)?;
            if let Some(p) = equivalence_p {
                let eq = closure_equivalence_check(&g, p)?;
                print_json(&eq)?;
                return Ok(status(eq.agree));
            }
            let result = biclosure(&g, k.expect("required by clap"));
            if bel {
                print!("{}", to_bel(&result.closed_graph));
            } else {
                print_json(&result)?;
            }
        }
        Command::Check { p, graph } => {
            print_json(&is_2p_hamilton_biconnected(&read_graph(&graph)?, p)?)?;
        }
        Command::Spectral { tol, graph } => {
            print_json(&spectral_report(&read_graph(&graph)?, tol)?)?;
        }
        Command::Verdict { k, p, graph } => {
            print_json(&eval_all(&read_graph(&graph)?, k, p)?)?;
        }
        Command::CrossValidate { k, p, graph } => {
            let cv = cross_validate(&read_graph(&graph)?, k, p)?;
            print_json(&cv)?;
            return Ok(status(cv.falsifications.is_empty()));
        }
        Command::Sweep { config, out } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let cfg = SweepConfig::from_json(&text)?;
            let Some(out) = out.or_else(|| cfg.output_path.clone()) else {
                bail!("no output path: pass --out or set output_path");
            };
            let summary = run_sweep(&cfg, &out)?;
            print_json(&summary)?;
            return Ok(status(summary.falsifications == 0));
        }
        Command::Replay {
            file,
            oracle_ceiling,
        } => {
            let records = read_records(&file)?;
            for r in &records {
                replay(r, oracle_ceiling)?;
            }
            println!("{} records reproduced", records.len());
        }
        Command::Build { spec } => {
            print!("{}", to_bel(&spec.build()?));
        }
        Command::Random {
            n_x,
            n_y,
            prob,
            seed,
        } => {
            print!("{}", to_bel(&random_graph(n_x, n_y, prob, seed)?));
        }
        Command::Catalog { id } => {
            let catalog = appendix_path_catalog(&id)?;
            let covers = catalog_covers_biconnectedness(&catalog, &catalog.graph);
            #[derive(Serialize)]
            struct Report<'a> {
                id: String,
                all_valid: bool,
                covers: bool,
                invalid: Vec<(String, String)>,
                paths: &'a [biham_core::hamilton::CatalogPath],
            }
            print_json(&Report {
                id: id.to_string(),
                all_valid: catalog.all_valid(),
                covers,
                invalid: catalog.invalid_paths(),
                paths: &catalog.paths,
            })?;
            return Ok(status(catalog.all_valid() && covers));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
