//! Algorithm catalog, preservation checks and the quality-ratio harness.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::certificates::{ist_b, ist_b_original, ist_bc, zni_c};
use crate::decomposition::{blocks, components, Partition};
use crate::dominators::strong_bridges;
use crate::error::{Error, Result};
use crate::filters::{filter, EdgeOrder, FilterConfig, FilterMode, FilterStrategy};
use crate::graph::{is_strongly_connected, largest_scc, Digraph, EdgeId};
use crate::io::read_graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    B,
    C,
    BC,
}

impl Problem {
    pub fn label(self) -> &'static str {
        match self {
            Problem::B => "2EC-B",
            Problem::C => "2EC-C",
            Problem::BC => "2EC-B-C",
        }
    }

    fn keeps_blocks(self) -> bool {
        matches!(self, Problem::B | Problem::BC)
    }

    fn keeps_components(self) -> bool {
        matches!(self, Problem::C | Problem::BC)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Problem> {
        match s.to_ascii_uppercase().as_str() {
            "B" | "2EC-B" => Ok(Problem::B),
            "C" | "2EC-C" => Ok(Problem::C),
            "BC" | "B-C" | "2EC-B-C" => Ok(Problem::BC),
            _ => Err(Error::InvalidArgument(format!("unknown problem `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    IstBOriginal,
    IstB,
    Test2EdpB,
    Test2EcbB,
    HybridB,
    Test2EdpBAux,
    HybridBAux,
    IstBc,
    Test2EdpBc,
    Test2EcbBc,
    HybridBc,
    Test2EdpBcAux,
    HybridBcAux,
    ZniC,
}

/// Knobs shared by the filter-based algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub order: EdgeOrder,
    pub preprocess_certificate: bool,
    pub use_trivial_skip: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { order: EdgeOrder::Input, preprocess_certificate: true, use_trivial_skip: true }
    }
}

impl Algorithm {
    pub const ALL: [Algorithm; 14] = [
        Algorithm::IstBOriginal,
        Algorithm::IstB,
        Algorithm::Test2EdpB,
        Algorithm::Test2EcbB,
        Algorithm::HybridB,
        Algorithm::Test2EdpBAux,
        Algorithm::HybridBAux,
        Algorithm::IstBc,
        Algorithm::Test2EdpBc,
        Algorithm::Test2EcbBc,
        Algorithm::HybridBc,
        Algorithm::Test2EdpBcAux,
        Algorithm::HybridBcAux,
        Algorithm::ZniC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::IstBOriginal => "ist-b-original",
            Algorithm::IstB => "ist-b",
            Algorithm::Test2EdpB => "test2edp-b",
            Algorithm::Test2EcbB => "test2ecb-b",
            Algorithm::HybridB => "hybrid-b",
            Algorithm::Test2EdpBAux => "test2edp-b-aux",
            Algorithm::HybridBAux => "hybrid-b-aux",
            Algorithm::IstBc => "ist-bc",
            Algorithm::Test2EdpBc => "test2edp-bc",
            Algorithm::Test2EcbBc => "test2ecb-bc",
            Algorithm::HybridBc => "hybrid-bc",
            Algorithm::Test2EdpBcAux => "test2edp-bc-aux",
            Algorithm::HybridBcAux => "hybrid-bc-aux",
            Algorithm::ZniC => "zni-c",
        }
    }

    pub fn problem(self) -> Problem {
        use Algorithm::*;
        match self {
            IstBOriginal | IstB | Test2EdpB | Test2EcbB | HybridB | Test2EdpBAux | HybridBAux => Problem::B,
            ZniC => Problem::C,
            _ => Problem::BC,
        }
    }

    /// Filter settings behind a filter-based algorithm, `None` for the others.
    pub fn filter_config(self, opts: &RunOptions) -> Option<FilterConfig> {
        use Algorithm::*;
        use FilterStrategy::*;
        let (mode, strategy, on_aux) = match self {
            Test2EdpB => (FilterMode::B, Test2Edp, false),
            Test2EcbB => (FilterMode::B, Test2Ecb, false),
            HybridB => (FilterMode::B, Hybrid, false),
            Test2EdpBAux => (FilterMode::B, Test2Edp, true),
            HybridBAux => (FilterMode::B, Hybrid, true),
            Test2EdpBc => (FilterMode::BC, Test2Edp, false),
            Test2EcbBc => (FilterMode::BC, Test2Ecb, false),
            HybridBc => (FilterMode::BC, Hybrid, false),
            Test2EdpBcAux => (FilterMode::BC, Test2Edp, true),
            HybridBcAux => (FilterMode::BC, Hybrid, true),
            IstBOriginal | IstB | IstBc | ZniC => return None,
        };
        Some(FilterConfig {
            mode,
            strategy,
            order: opts.order,
            use_trivial_skip: opts.use_trivial_skip,
            on_aux,
            preprocess_certificate: opts.preprocess_certificate,
        })
    }

    /// Runs the algorithm on a strongly connected graph; returns sorted edge ids.
    pub fn run(self, g: &Digraph, opts: &RunOptions) -> Result<Vec<EdgeId>> {
        if let Some(cfg) = self.filter_config(opts) {
            return Ok(filter(g, &cfg)?.edges);
        }
        match self {
            Algorithm::IstBOriginal => Ok(ist_b_original(g, 0)?.0),
            Algorithm::IstB => Ok(ist_b(g, 0)?.0),
            Algorithm::IstBc => ist_bc(g),
            Algorithm::ZniC => zni_c(g),
            _ => unreachable!("filter algorithms handled above"),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        let key = s.to_ascii_lowercase();
        Algorithm::ALL.into_iter().find(|a| a.name() == key).ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// What a candidate subgraph failed to preserve, if anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Preserved,
    NotStronglyConnected,
    BlocksDiffer,
    ComponentsDiffer,
}

/// Checks that the subgraph of `g` on `ids` preserves what `problem` asks for.
pub fn verify_subgraph(g: &Digraph, ids: &[EdgeId], problem: Problem) -> Result<Verdict> {
    let sub = g.restrict_to(ids)?;
    if !is_strongly_connected(&sub) {
        return Ok(Verdict::NotStronglyConnected);
    }
    if problem.keeps_blocks() && blocks(&sub)? != blocks(g)? {
        return Ok(Verdict::BlocksDiffer);
    }
    if problem.keeps_components() && components(&sub)? != components(g)? {
        return Ok(Verdict::ComponentsDiffer);
    }
    Ok(Verdict::Preserved)
}

/// Lower bound `(n + k) / n` on the average in-degree of any solution, with
/// `k` the vertices in nontrivial blocks (B, B-C) or components (C).
pub fn lower_bound(problem: Problem, blocks: &Partition, components: &Partition) -> f64 {
    let n = blocks.id.len();
    if n == 0 {
        return 1.0;
    }
    let k = match problem {
        Problem::B | Problem::BC => blocks.nontrivial_vertices(),
        Problem::C => components.nontrivial_vertices(),
    };
    (n + k) as f64 / n as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub dataset: String,
    pub algorithm: String,
    pub problem: String,
    pub n: usize,
    pub m: usize,
    pub bstar: usize,
    pub edges_out: usize,
    pub delta_avg: f64,
    pub lower_bound: f64,
    pub q: f64,
    pub seconds: f64,
}

/// Per-graph quantities shared by every algorithm run on it.
#[derive(Clone, Debug)]
pub struct DatasetSummary {
    pub name: String,
    pub graph: Digraph,
    pub bstar: usize,
    pub blocks: Partition,
    pub components: Partition,
}

impl DatasetSummary {
    /// Restricts to the largest strongly connected component and analyzes it.
    pub fn new(name: &str, raw: &Digraph) -> Result<DatasetSummary> {
        let (scc, _) = largest_scc(raw);
        let pairs: Vec<_> = scc.edges().map(|(_, u, v)| (u, v)).collect();
        let graph = Digraph::build(scc.n(), &pairs, raw.is_multi())?;
        Ok(DatasetSummary {
            name: name.to_string(),
            bstar: strong_bridges(&graph)?.len(),
            blocks: blocks(&graph)?,
            components: components(&graph)?,
            graph,
        })
    }

    pub fn lower_bound(&self, problem: Problem) -> f64 {
        lower_bound(problem, &self.blocks, &self.components)
    }

    /// Runs one algorithm `runs` times: median output size, mean wall time.
    /// The output is verified against the dataset's partitions.
    pub fn measure(&self, algo: Algorithm, opts: &RunOptions, runs: usize) -> Result<QualityReport> {
        let runs = runs.max(1);
        let mut sizes = Vec::with_capacity(runs);
        let mut total = 0.0;
        let mut last = Vec::new();
        for _ in 0..runs {
            let t = Instant::now();
            last = algo.run(&self.graph, opts)?;
            total += t.elapsed().as_secs_f64();
            sizes.push(last.len());
        }
        if verify_subgraph(&self.graph, &last, algo.problem())? != Verdict::Preserved {
            return Err(Error::InvalidArgument(format!("{algo} output on {} failed verification", self.name)));
        }
        sizes.sort_unstable();
        let edges_out = sizes[runs / 2];
        let n = self.graph.n().max(1);
        let delta_avg = edges_out as f64 / n as f64;
        let lb = self.lower_bound(algo.problem());
        Ok(QualityReport {
            dataset: self.name.clone(),
            algorithm: algo.name().to_string(),
            problem: algo.problem().label().to_string(),
            n: self.graph.n(),
            m: self.graph.m(),
            bstar: self.bstar,
            edges_out,
            delta_avg,
            lower_bound: lb,
            q: delta_avg / lb,
            seconds: total / runs as f64,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderSpec {
    Input,
    Reverse,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct DatasetSpec {
    pub name: String,
    pub path: PathBuf,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

fn input_order() -> OrderSpec {
    OrderSpec::Input
}

/// Benchmark plan: algorithms × datasets, each run `runs` times.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct ExperimentConfig {
    /// Algorithm names; empty means all of them.
    #[serde(default)]
    pub algorithms: Vec<String>,
    pub datasets: Vec<DatasetSpec>,
    #[serde(default = "one")]
    pub runs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "input_order")]
    pub order: OrderSpec,
    #[serde(default = "yes")]
    pub certificate: bool,
    #[serde(default = "yes")]
    pub trivial_skip: bool,
}

impl ExperimentConfig {
    pub fn run_options(&self) -> RunOptions {
        let order = match self.order {
            OrderSpec::Input => EdgeOrder::Input,
            OrderSpec::Reverse => EdgeOrder::Reverse,
            OrderSpec::Random => EdgeOrder::Random(self.seed),
        };
        RunOptions { order, preprocess_certificate: self.certificate, use_trivial_skip: self.trivial_skip }
    }

    pub fn algorithm_list(&self) -> Result<Vec<Algorithm>> {
        if self.algorithms.is_empty() {
            return Ok(Algorithm::ALL.to_vec());
        }
        self.algorithms.iter().map(|a| a.parse()).collect()
    }
}

/// Output of a benchmark: one report per cell plus one warning per skipped dataset.
#[derive(Clone, Debug, Default)]
pub struct ExperimentOutcome {
    pub reports: Vec<QualityReport>,
    pub warnings: Vec<String>,
}

/// Runs every (dataset, algorithm) cell sequentially.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let algos = cfg.algorithm_list()?;
    let opts = cfg.run_options();
    let mut out = ExperimentOutcome::default();
    for ds in &cfg.datasets {
        let raw = match read_graph(&ds.path) {
            Ok(r) => r,
            Err(e) => {
                out.warnings.push(format!("skipping dataset {}: {e}", ds.name));
                continue;
            }
        };
        let summary = DatasetSummary::new(&ds.name, &raw.graph)?;
        for &a in &algos {
            out.reports.push(summary.measure(a, &opts, cfg.runs)?);
        }
    }
    Ok(out)
}

pub fn write_reports(reports: &[QualityReport], w: impl std::io::Write) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in reports {
        wr.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    if reports.is_empty() {
        wr.write_record([
            "dataset",
            "algorithm",
            "problem",
            "n",
            "m",
            "bstar",
            "edges_out",
            "delta_avg",
            "lower_bound",
            "q",
            "seconds",
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_reports(r: impl std::io::Read) -> Result<Vec<QualityReport>> {
    csv::Reader::from_reader(r)
        .deserialize()
        .map(|row| {
            row.map_err(|e| Error::Parse { line: e.position().map_or(0, |p| p.line() as usize), msg: e.to_string() })
        })
        .collect()
}
