//! Command-line front end. [`run`] returns the process exit status: 0 on success, 1 on
//! bad input or usage, 2 when an internal invariant fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::centrality::compute_path_stats;
use crate::core_id::{enumerate_cores, jaccard_core_similarity, TiePolicy, DEFAULT_TAU};
use crate::error::{Error, Result};
use crate::generative::{
    edge_copy_generate_fitted, ensemble_sweep, fit_alpha, layered_scaffold_from, rp_generate, rp_generate_fitted,
    AlphaGrid, EdgeCopyConfig, InDegreeLaw, Model, RpConfig, SweepRow, DEFAULT_FIT_ENSEMBLE,
};
use crate::graph::{condense, exclude_vertices, largest_wcc, CondensationReport, DependencyNetwork, RawDigraph};
use crate::io::{
    core_listing, parse_edgelist, parse_reactions, write_dot, write_edgelist, write_metrics_csv, AnalysisReport,
    EnumeratedCores, NetworkSummary, Provenance,
};
use crate::metrics::{flatten, h_score_with_stats};

#[derive(Debug, Parser)]
#[command(name = "hourglass", version, about = "Hourglass analysis of dependency networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Core, flat core, H-score and per-vertex metrics of a network.
    Analyze(AnalyzeArgs),
    /// Write the flattened (source-to-target) network as an edge list.
    Flatten(FlattenArgs),
    /// Generate a synthetic network.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Estimate the reuse exponent alpha of a network.
    Fit(FitArgs),
    /// Mean H, core size, coverage and location over a parameter sweep.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edgelist,
    Reactions,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tie {
    Det,
    Seeded,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input network.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
    /// File of vertex ids (one per line) to drop before analysis.
    #[arg(long)]
    exclude: Option<PathBuf>,
    /// Keep only the largest weakly connected component.
    #[arg(long)]
    lwcc: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "det")]
    tie: Tie,
    /// List up to N distinct cores reachable through ties.
    #[arg(long, value_name = "N")]
    enumerate_cores: Option<usize>,
    /// Write the JSON report ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write per-vertex metrics as CSV ("-" for stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write a Graphviz rendering ("-" for stdout).
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FlattenArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum GenerateCommand {
    /// Reuse-preference model, free-standing or fitted to --template.
    Rp(GenerateRpArgs),
    /// Edge-copying model fitted to --template.
    Edgecopy(GenerateCopyArgs),
}

#[derive(Debug, Args)]
struct RpShape {
    #[arg(long)]
    sources: Option<usize>,
    #[arg(long)]
    intermediates: Option<usize>,
    #[arg(long)]
    targets: Option<usize>,
    /// const:C or poisson:MEAN (1 + Poisson(MEAN)).
    #[arg(long, default_value = "poisson:2")]
    indegree: InDegreeLaw,
    /// Fit to the layers, in-degrees and ancestors of this network instead.
    #[arg(long)]
    template: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
}

#[derive(Debug, Args)]
struct GenerateRpArgs {
    #[command(flatten)]
    shape: RpShape,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GenerateCopyArgs {
    #[arg(long)]
    template: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = AlphaGrid::default().min, allow_hyphen_values = true)]
    alpha_min: f64,
    #[arg(long, default_value_t = AlphaGrid::default().max, allow_hyphen_values = true)]
    alpha_max: f64,
    #[arg(long, default_value_t = AlphaGrid::default().step)]
    alpha_step: f64,
    #[arg(long, default_value_t = DEFAULT_FIT_ENSEMBLE)]
    ensemble: usize,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the fit table as JSON ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum SweepCommand {
    /// Sweep alpha of the reuse-preference model.
    Rp(SweepRpArgs),
    /// Sweep beta of the edge-copying model on --template.
    Edgecopy(SweepCopyArgs),
}

#[derive(Debug, Args)]
struct SweepOpts {
    /// Comma-separated parameter values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    values: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-")]
    csv: PathBuf,
}

#[derive(Debug, Args)]
struct SweepRpArgs {
    #[command(flatten)]
    shape: RpShape,
    #[command(flatten)]
    opts: SweepOpts,
}

#[derive(Debug, Args)]
struct SweepCopyArgs {
    #[arg(long)]
    template: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: Format,
    #[command(flatten)]
    opts: SweepOpts,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Invariant(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Analyze(args) => analyze(args, stdout),
        Command::Flatten(args) => {
            let loaded = load(&args.input)?;
            let flat = flatten(&loaded.network)?;
            let text = write_edgelist(flat.vertex_count(), flat.edge_ids())?;
            emit(&args.out, &text, stdout)
        }
        Command::Generate(GenerateCommand::Rp(args)) => {
            let g = match &args.shape.template {
                Some(path) => {
                    let scaffold = layered_scaffold_from(&load_template(path, args.shape.format)?)?;
                    rp_generate_fitted(&scaffold, args.alpha, args.seed)?
                }
                None => rp_generate(&rp_config(&args.shape, args.alpha, args.seed)?)?,
            };
            emit(&args.out, &write_edgelist(g.vertex_count(), g.edge_ids())?, stdout)
        }
        Command::Generate(GenerateCommand::Edgecopy(args)) => {
            let scaffold = layered_scaffold_from(&load_template(&args.template, args.format)?)?;
            let g = edge_copy_generate_fitted(&EdgeCopyConfig { beta: args.beta, seed: args.seed, scaffold: &scaffold })?;
            emit(&args.out, &write_edgelist(g.vertex_count(), g.edge_ids())?, stdout)
        }
        Command::Fit(args) => fit(args, stdout),
        Command::Sweep(SweepCommand::Rp(args)) => match &args.shape.template {
            Some(path) => {
                let scaffold = layered_scaffold_from(&load_template(path, args.shape.format)?)?;
                sweep(&Model::FittedRp(&scaffold), &args.opts, stdout)
            }
            None => sweep(&Model::Rp(rp_config(&args.shape, 0.0, args.opts.seed)?), &args.opts, stdout),
        },
        Command::Sweep(SweepCommand::Edgecopy(args)) => {
            let scaffold = layered_scaffold_from(&load_template(&args.template, args.format)?)?;
            sweep(&Model::EdgeCopy(&scaffold), &args.opts, stdout)
        }
    }
}

struct Loaded {
    raw: RawDigraph,
    condensation: CondensationReport,
    network: DependencyNetwork,
    excluded: Vec<String>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn parse(text: &str, format: Format) -> Result<RawDigraph> {
    match format {
        Format::Edgelist => parse_edgelist(text),
        Format::Reactions => parse_reactions(text),
    }
}

/// Parse, condense, then apply exclusion and the L-WCC filter in that order.
fn load(input: &InputArgs) -> Result<Loaded> {
    let raw = parse(&read(&input.file)?, input.format)?;
    let (mut network, condensation) = condense(&raw)?;
    let mut excluded = Vec::new();
    if let Some(path) = &input.exclude {
        excluded = read(path)?
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_owned())
            .filter(|l| !l.is_empty())
            .collect();
        network = exclude_vertices(&network, &excluded).0;
    }
    if input.lwcc {
        network = largest_wcc(&network)?;
    }
    Ok(Loaded { raw, condensation, network, excluded })
}

fn load_template(path: &Path, format: Format) -> Result<DependencyNetwork> {
    Ok(condense(&parse(&read(path)?, format)?)?.0)
}

fn rp_config(shape: &RpShape, alpha: f64, seed: u64) -> Result<RpConfig> {
    let need = |x: Option<usize>, flag: &str| {
        x.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required without --template")))
    };
    Ok(RpConfig {
        sources: need(shape.sources, "sources")?,
        intermediates: need(shape.intermediates, "intermediates")?,
        targets: need(shape.targets, "targets")?,
        alpha,
        indegree: shape.indegree,
        seed,
    })
}

fn emit(path: &Path, text: &str, stdout: &mut dyn Write) -> Result<()> {
    if path.as_os_str() == "-" {
        stdout.write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn is_stdout(path: &Option<PathBuf>) -> bool {
    path.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

fn analyze(args: AnalyzeArgs, stdout: &mut dyn Write) -> Result<()> {
    let loaded = load(&args.input)?;
    let g = &loaded.network;
    let stats = compute_path_stats(g)?;
    stats.require_paths()?;
    let tie = match args.tie {
        Tie::Det => TiePolicy::Deterministic,
        Tie::Seeded => TiePolicy::Seeded(args.seed),
    };
    let hourglass = h_score_with_stats(g, &stats, args.tau, tie)?;

    let enumerated_cores = match args.enumerate_cores {
        Some(limit) => {
            let found = enumerate_cores(g, &stats, args.tau, limit, true)?;
            Some(EnumeratedCores {
                jaccard_similarity: jaccard_core_similarity(&found.cores)?,
                cores: found
                    .cores
                    .iter()
                    .map(|c| c.elements.iter().map(|e| e.members.clone()).collect())
                    .collect(),
                truncated: found.truncated,
            })
        }
        None => None,
    };

    let report = AnalysisReport {
        provenance: Provenance {
            input: args.input.file.display().to_string(),
            format: format!("{:?}", args.input.format).to_lowercase(),
            tau: args.tau,
            seed: args.seed,
            tie_policy: format!("{:?}", args.tie).to_lowercase(),
            lwcc: args.input.lwcc,
            excluded: loaded.excluded.clone(),
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        },
        network: NetworkSummary::new(&loaded.raw, &loaded.condensation, g, &stats)?,
        core: core_listing(g, &stats, &hourglass.core),
        hourglass,
        enumerated_cores,
    };

    if let Some(path) = &args.json {
        emit(path, &report.to_json()?, stdout)?;
    }
    if let Some(path) = &args.csv {
        emit(path, &write_metrics_csv(g, &stats, &report.hourglass.core)?, stdout)?;
    }
    if let Some(path) = &args.dot {
        emit(path, &write_dot(g, &stats, &report.hourglass.core, 12)?, stdout)?;
    }
    if !(is_stdout(&args.json) || is_stdout(&args.csv) || is_stdout(&args.dot)) {
        stdout.write_all(summary(&report).as_bytes())?;
    }
    Ok(())
}

fn summary(report: &AnalysisReport) -> String {
    let n = &report.network;
    let h = &report.hourglass;
    let mut out = format!(
        "vertices {} (raw {}, {} super-vertices), edges {}\n\
         sources {}, intermediates {}, targets {}, isolated {}\n\
         st-paths {}, avg length {:.3}\n\
         core {} (flat {}), H {:.4} at tau {}\n\
         core vertex coverage {:.4}, avg core location {:.4}\n",
        n.vertices,
        n.raw_vertices,
        n.super_vertices,
        n.edges,
        n.classes.sources,
        n.classes.intermediates,
        n.classes.targets,
        n.classes.isolated,
        n.st_paths,
        n.avg_st_path_length,
        h.core_size,
        h.flat_core_size,
        h.h_score,
        h.tau,
        h.core_vertex_coverage,
        h.avg_core_location,
    );
    for e in &report.core {
        let names: Vec<&str> = e.members.iter().map(|m| m.vertex.as_str()).collect();
        out.push_str(&format!("  {:>3}. {}  weight {:.4}\n", e.rank, names.join(" "), e.weight));
    }
    out
}

fn fit(args: FitArgs, stdout: &mut dyn Write) -> Result<()> {
    let loaded = load(&args.input)?;
    let grid = AlphaGrid { min: args.alpha_min, max: args.alpha_max, step: args.alpha_step };
    let result = fit_alpha(&loaded.network, grid, args.ensemble, args.tau, args.seed)?;
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&serde_json::to_value(&result).expect("plain data")).expect("value");
        emit(path, &(text + "\n"), stdout)?;
    }
    if !is_stdout(&args.json) {
        writeln!(stdout, "alpha* = {} (target H {:.4})", result.alpha, result.target_h)?;
        writeln!(stdout, "alpha,h_mean,h_ci_low,h_ci_high")?;
        for row in &result.table {
            let h = row.h_score;
            writeln!(stdout, "{:?},{:?},{:?},{:?}", row.alpha, h.mean, h.ci_low, h.ci_high)?;
        }
    }
    Ok(())
}

fn sweep_csv(name: &str, rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut header = vec![name.to_owned(), "runs".to_owned()];
    for metric in ["h", "core_size", "core_vertex_coverage", "avg_core_location"] {
        for part in ["mean", "ci_low", "ci_high"] {
            header.push(format!("{metric}_{part}"));
        }
    }
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let mut record = vec![format!("{:?}", row.param), row.runs.to_string()];
        for e in [row.h_score, row.core_size, row.core_vertex_coverage, row.avg_core_location] {
            record.extend([e.mean, e.ci_low, e.ci_high].iter().map(|x| format!("{x:?}")));
        }
        w.write_record(&record).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("ASCII csv"))
}

fn sweep(model: &Model<'_>, opts: &SweepOpts, stdout: &mut dyn Write) -> Result<()> {
    let rows = ensemble_sweep(model, &opts.values, opts.runs, opts.tau, opts.seed)?;
    emit(&opts.csv, &sweep_csv(model.parameter_name(), &rows)?, stdout)
}
