use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twoec_core::experiment::{write_reports, ExperimentConfig};
use twoec_core::{
    format_edge_list, parse_edge_subset, read_graph, run_experiment, verify_subgraph, Algorithm, DatasetSummary,
    EdgeOrder, Partition, Problem, RunOptions, Verdict,
};

#[derive(Parser)]
#[command(name = "twoec", version, about = "Sparse strongly connected subgraphs preserving 2-edge-connectivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, strong bridges and block/component histograms of the largest SCC.
    Analyze { graph: PathBuf },
    /// Run one algorithm and print the surviving edges, one sorted 0-based `u v` per line.
    Sparsify {
        graph: PathBuf,
        #[arg(long)]
        algo: Algorithm,
        /// Defaults to the problem the algorithm solves.
        #[arg(long)]
        problem: Option<Problem>,
        #[arg(long, value_enum, default_value_t = OrderArg::Input)]
        order: OrderArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Filter the whole graph instead of a sparse certificate.
        #[arg(long)]
        no_cert: bool,
        #[arg(long)]
        no_trivial_skip: bool,
        /// Write the edge list here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a TOML benchmark plan and print one CSV row per (dataset, algorithm).
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check that an edge list preserves what `--problem` asks for.
    Verify {
        graph: PathBuf,
        subgraph: PathBuf,
        #[arg(long)]
        problem: Problem,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Input,
    Reverse,
    Random,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<twoec_core::Error> for Failure {
    fn from(e: twoec_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<DatasetSummary, Failure> {
    let raw = read_graph(path)?;
    if raw.loops_dropped + raw.duplicates_dropped > 0 {
        eprintln!(
            "{}: dropped {} loops and {} duplicate edges",
            path.display(),
            raw.loops_dropped,
            raw.duplicates_dropped
        );
    }
    if raw.graph.n() == 0 {
        return Err(Failure::Input(format!("{}: empty graph", path.display())));
    }
    let d = DatasetSummary::new(&path.display().to_string(), &raw.graph)?;
    if d.graph.n() < raw.graph.n() {
        eprintln!(
            "{}: using the largest strongly connected component ({} of {} vertices), renumbered",
            path.display(),
            d.graph.n(),
            raw.graph.n()
        );
    }
    Ok(d)
}

fn histogram(p: &Partition) -> String {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for class in p.classes() {
        *sizes.entry(class.len()).or_default() += 1;
    }
    sizes.iter().map(|(s, c)| format!("{s}:{c}")).collect::<Vec<_>>().join(" ")
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { graph } => {
            let d = load(&graph)?;
            println!("n {}", d.graph.n());
            println!("m {}", d.graph.m());
            println!("strong_bridges {}", d.bstar);
            println!("blocks {} (nontrivial vertices {})", d.blocks.count(), d.blocks.nontrivial_vertices());
            println!("block_sizes {}", histogram(&d.blocks));
            println!(
                "components {} (nontrivial vertices {})",
                d.components.count(),
                d.components.nontrivial_vertices()
            );
            println!("component_sizes {}", histogram(&d.components));
            println!("lower_bound_b {:.4}", d.lower_bound(Problem::B));
            println!("lower_bound_c {:.4}", d.lower_bound(Problem::C));
        }
        Command::Sparsify { graph, algo, problem, order, seed, no_cert, no_trivial_skip, output } => {
            if let Some(p) = problem {
                if p != algo.problem() {
                    return Err(Failure::Input(format!("{algo} solves {}, not {}", algo.problem(), p)));
                }
            }
            let d = load(&graph)?;
            let order = match order {
                OrderArg::Input => EdgeOrder::Input,
                OrderArg::Reverse => EdgeOrder::Reverse,
                OrderArg::Random => EdgeOrder::Random(seed),
            };
            let opts = RunOptions { order, preprocess_certificate: !no_cert, use_trivial_skip: !no_trivial_skip };
            let ids = algo.run(&d.graph, &opts)?;
            eprintln!("{algo}: kept {} of {} edges", ids.len(), d.graph.m());
            emit(&format_edge_list(&d.graph, &ids), output.as_deref())?;
        }
        Command::Bench { config, output } => {
            let text = fs::read_to_string(&config).map_err(|e| Failure::Input(format!("{}: {e}", config.display())))?;
            let mut cfg: ExperimentConfig =
                toml::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", config.display())))?;
            // Dataset paths are relative to the config file.
            let base = config.parent().unwrap_or(Path::new(""));
            for ds in &mut cfg.datasets {
                if ds.path.is_relative() {
                    ds.path = base.join(&ds.path);
                }
            }
            let outcome = run_experiment(&cfg)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            let mut buf = Vec::new();
            write_reports(&outcome.reports, &mut buf)?;
            emit(&String::from_utf8_lossy(&buf), output.as_deref())?;
        }
        Command::Verify { graph, subgraph, problem } => {
            let d = load(&graph)?;
            let file = fs::File::open(&subgraph).map_err(|e| Failure::Input(format!("{}: {e}", subgraph.display())))?;
            let ids = parse_edge_subset(file, &d.graph)?;
            match verify_subgraph(&d.graph, &ids, problem)? {
                Verdict::Preserved => println!("ok: {} edges preserve {}", ids.len(), problem),
                v => return Err(Failure::Verification(format!("{v:?}"))),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
