//! Command line front end: counting runs, coloring runs, verification,
//! random instance generation, and the three experiment drivers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use isocount::color::check::is_p_centered;
use isocount::color::{
    compute_p_centered_coloring, load_coloring_path, write_coloring, ColorStats, Coloring,
    SplitHeuristic,
};
use isocount::config::load_pipeline_config;
use isocount::decompose::{induced_components, treedepth_decomposition};
use isocount::gen;
use isocount::graph::{build_motif, load_edge_list_path, write_edge_list, Graph, MotifSpec};
use isocount::harness::{
    run_config_sweep, run_split_experiment, run_treedepth_experiment, write_split_csv,
    write_sweep_csv, write_td_csv, SweepInstance,
};
use isocount::pipeline::{run_pipeline, PipelineConfig, RunMetrics};

#[derive(Parser)]
#[command(
    name = "isocount",
    version,
    about = "Exact subgraph isomorphism counting on sparse graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count occurrences of a motif in a host graph.
    Count(CountArgs),
    /// Compute a p-centered coloring and write it out.
    Color(ColorArgs),
    /// Check a graph file, and optionally a coloring against it.
    Verify(VerifyArgs),
    /// Generate a random host graph as an edge list.
    Generate(GenerateArgs),
    /// Run the full configuration sweep and emit CSV rows.
    Sweep(SweepArgs),
    /// Run the class-splitting experiment and emit CSV rows.
    #[command(name = "split-exp")]
    SplitExp(SplitArgs),
    /// Run the decomposition-size scaling experiment and emit CSV rows.
    #[command(name = "td-exp")]
    TdExp(TdArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Host graph edge list.
    #[arg(long)]
    graph: PathBuf,
    /// Motif spec: path:N, star:N, clique:N, cycle:N, or file:PATH.
    #[arg(long, default_value = "path:4")]
    motif: String,
    /// Run configuration file (key = value lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Counting engine: pipeline or baseline. Overrides the default.
    #[arg(long)]
    engine: Option<String>,
    /// Seed override for the coloring phase.
    #[arg(long)]
    seed: Option<u64>,
    /// Print run metrics after the count.
    #[arg(long)]
    metrics: bool,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ColorArgs {
    /// Host graph edge list.
    #[arg(long)]
    graph: PathBuf,
    /// Centeredness parameter. Defaults to |motif| + 1.
    #[arg(long)]
    p: Option<usize>,
    /// Motif used to derive p when --p is absent.
    #[arg(long, default_value = "path:4")]
    motif: String,
    /// Run configuration file (key = value lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed override for the coloring phase.
    #[arg(long)]
    seed: Option<u64>,
    /// Print coloring statistics to stderr.
    #[arg(long)]
    metrics: bool,
    /// Output coloring file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Host graph edge list.
    #[arg(long)]
    graph: PathBuf,
    /// Coloring file to check against the graph.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Centeredness parameter the coloring must satisfy.
    #[arg(long)]
    p: Option<usize>,
    /// Comma-separated color ids: dump the decomposition of each component
    /// of this color set as "vertex parent depth" lines.
    #[arg(long)]
    set: Option<String>,
    /// Output file for decomposition dumps (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Model: chung-lu, chung-lu-households, sbm, or tree-paths.
    #[arg(long)]
    model: String,
    /// Vertex count (ignored by tree-paths).
    #[arg(long, default_value_t = 256)]
    n: usize,
    /// Target average degree (ignored by tree-paths).
    #[arg(long, default_value_t = 6.0)]
    avg_degree: f64,
    /// Household size for chung-lu-households.
    #[arg(long, default_value_t = 4)]
    household_size: usize,
    /// Binary tree depth for tree-paths.
    #[arg(long)]
    d: Option<u32>,
    /// Pendant paths per tree vertex for tree-paths.
    #[arg(long)]
    s: Option<u32>,
    /// Pendant path length for tree-paths.
    #[arg(long)]
    l: Option<u32>,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge list (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Host graph edge lists. When absent, desk-scale default instances
    /// are generated (three household and three block-model graphs).
    #[arg(long)]
    graph: Vec<PathBuf>,
    /// Motif counted in every cell.
    #[arg(long, default_value = "path:4")]
    motif: String,
    /// Vertex count for generated default instances.
    #[arg(long, default_value_t = 256)]
    n: usize,
    /// Average degree for generated default instances.
    #[arg(long, default_value_t = 6.0)]
    avg_degree: f64,
    /// Repetitions per (instance, configuration) cell.
    #[arg(long, default_value_t = 3)]
    reps: u32,
    /// Base seed for cell seeds and generated instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SplitArgs {
    /// Host graph edge list.
    #[arg(long)]
    graph: PathBuf,
    /// Motif counted over the padded colorings.
    #[arg(long, default_value = "path:4")]
    motif: String,
    /// Run configuration file for the base colorings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of seed-varied base colorings to pad.
    #[arg(long, default_value_t = 4)]
    colorings: usize,
    /// Padding target. Defaults to the largest base coloring size.
    #[arg(long)]
    target: Option<usize>,
    /// Split heuristic: min, med, or max. All three when absent.
    #[arg(long)]
    heuristic: Option<String>,
    /// Random split repetitions per coloring.
    #[arg(long, default_value_t = 3)]
    reps: u32,
    /// Base seed for colorings and splits.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TdArgs {
    /// Host graph edge list.
    #[arg(long)]
    graph: PathBuf,
    /// 6-centered coloring file. Computed from the graph when absent.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Run configuration file for the computed coloring.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed override for the computed coloring.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        // A closed stdout (for example a downstream `head`) is not a failure.
        // The library's transparent io variant hides its inner error from
        // the cause chain, so match it alongside bare io errors.
        for cause in e.chain() {
            let kind = match cause.downcast_ref::<io::Error>() {
                Some(io) => Some(io.kind()),
                None => match cause.downcast_ref::<isocount::Error>() {
                    Some(isocount::Error::Io(io)) => Some(io.kind()),
                    _ => None,
                },
            };
            if kind == Some(io::ErrorKind::BrokenPipe) {
                return;
            }
        }
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Count(a) => cmd_count(a),
        Cmd::Color(a) => cmd_color(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Generate(a) => cmd_generate(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::SplitExp(a) => cmd_split_exp(a),
        Cmd::TdExp(a) => cmd_td_exp(a),
    }
}

fn out_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    load_edge_list_path(path).with_context(|| format!("loading graph {}", path.display()))
}

fn load_motif(spec: &str) -> Result<Graph> {
    let spec = MotifSpec::parse(spec)?;
    Ok(build_motif(&spec)?)
}

fn base_config(config: &Option<PathBuf>, seed: Option<u64>) -> Result<PipelineConfig> {
    let mut cfg = match config {
        Some(p) => load_pipeline_config(p)
            .with_context(|| format!("loading config {}", p.display()))?,
        None => PipelineConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn write_metrics<W: Write>(w: &mut W, m: &RunMetrics) -> Result<()> {
    writeln!(w, "colors_used = {}", m.colors_used)?;
    writeln!(w, "iterations = {}", m.iterations)?;
    writeln!(w, "joins = {}", m.joins)?;
    writeln!(w, "forgets = {}", m.forgets)?;
    writeln!(w, "table_peak = {}", m.table_peak)?;
    writeln!(w, "sets = {}", m.sets)?;
    writeln!(w, "components_counted = {}", m.components_counted)?;
    writeln!(w, "components_skipped = {}", m.components_skipped)?;
    writeln!(w, "color_ns = {}", m.color_ns)?;
    writeln!(w, "decompose_ns = {}", m.decompose_ns)?;
    writeln!(w, "compute_ns = {}", m.compute_ns)?;
    writeln!(w, "combine_ns = {}", m.combine_ns)?;
    writeln!(w, "total_ns = {}", m.total_ns)?;
    Ok(())
}

fn write_color_stats<W: Write>(w: &mut W, s: &ColorStats) -> Result<()> {
    writeln!(w, "iterations = {}", s.iterations)?;
    writeln!(w, "augmentation_steps = {}", s.augmentation_steps)?;
    writeln!(w, "arcs = {}", s.arcs)?;
    writeln!(w, "high_degree_isolated = {}", s.high_degree_isolated)?;
    writeln!(w, "colors_after_loop = {}", s.colors_after_loop)?;
    if let Some(c) = s.colors_after_degree_one {
        writeln!(w, "colors_after_degree_one = {c}")?;
    }
    if let Some(c) = s.colors_after_recolor {
        writeln!(w, "colors_after_recolor = {c}")?;
    }
    if let Some(c) = s.colors_after_merge {
        writeln!(w, "colors_after_merge = {c}")?;
    }
    writeln!(w, "colors_final = {}", s.colors_final)?;
    writeln!(w, "loop_ns = {}", s.loop_ns)?;
    writeln!(w, "degree_one_ns = {}", s.degree_one_ns)?;
    writeln!(w, "recolor_ns = {}", s.recolor_ns)?;
    writeln!(w, "merge_ns = {}", s.merge_ns)?;
    writeln!(w, "validate_ns = {}", s.validate_ns)?;
    Ok(())
}

fn cmd_count(a: CountArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let motif = load_motif(&a.motif)?;
    let mut cfg = base_config(&a.config, a.seed)?;
    if let Some(engine) = &a.engine {
        cfg.engine = engine.parse()?;
    }
    let (count, metrics) = run_pipeline(&g, &motif, &cfg)?;
    let mut w = out_writer(&a.out)?;
    writeln!(w, "count = {count}")?;
    if a.metrics {
        write_metrics(&mut w, &metrics)?;
    }
    Ok(())
}

fn cmd_color(a: ColorArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let p = match a.p {
        Some(p) => p,
        None => load_motif(&a.motif)?.n() + 1,
    };
    let cfg = base_config(&a.config, a.seed)?;
    let (coloring, stats) = compute_p_centered_coloring(&g, p, &cfg.color, cfg.seed)?;
    let mut w = out_writer(&a.out)?;
    write_coloring(&coloring, &mut w)?;
    drop(w);
    eprintln!("colors = {}", coloring.size());
    if a.metrics {
        let mut err = io::stderr().lock();
        write_color_stats(&mut err, &stats)?;
    }
    Ok(())
}

fn parse_color_set(s: &str, coloring: &Coloring) -> Result<Vec<u32>> {
    let mut set = Vec::new();
    for part in s.split(',') {
        let c: u32 = part
            .trim()
            .parse()
            .map_err(|_| anyhow!("invalid color id '{}' in --set", part.trim()))?;
        if c as usize >= coloring.size() {
            bail!("color id {c} out of range, coloring has {} classes", coloring.size());
        }
        set.push(c);
    }
    Ok(set)
}

fn cmd_verify(a: VerifyArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    if !g.check_invariants() {
        bail!("graph invariants violated in {}", a.graph.display());
    }
    println!("graph ok: {} vertices, {} edges", g.n(), g.num_edges());
    let Some(cpath) = &a.coloring else {
        if a.set.is_some() || a.p.is_some() {
            bail!("--p and --set need --coloring");
        }
        return Ok(());
    };
    let coloring = load_coloring_path(cpath)
        .with_context(|| format!("loading coloring {}", cpath.display()))?;
    if coloring.n() != g.n() {
        bail!(
            "coloring covers {} vertices but the graph has {}",
            coloring.n(),
            g.n()
        );
    }
    let p = a.p.ok_or_else(|| anyhow!("--p is required with --coloring"))?;
    if !is_p_centered(&g, &coloring, p) {
        bail!("coloring is not {p}-centered");
    }
    println!("coloring ok: {} colors, {p}-centered", coloring.size());
    if let Some(set_str) = &a.set {
        let set = parse_color_set(set_str, &coloring)?;
        let mut w = out_writer(&a.out)?;
        for comp in induced_components(&g, &coloring, &set)? {
            let tdd = treedepth_decomposition(&g, &comp, &coloring)?;
            tdd.dump(&mut w)?;
        }
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs) -> Result<()> {
    let g = match a.model.as_str() {
        "chung-lu" => gen::gen_chung_lu(a.n, a.avg_degree, a.seed)?,
        "chung-lu-households" => {
            gen::gen_chung_lu_households(a.n, a.avg_degree, a.household_size, a.seed)?
        }
        "sbm" => gen::gen_sbm(a.n, a.avg_degree, &gen::sbm_default_matrix(), a.seed)?,
        "tree-paths" => {
            let (Some(d), Some(s), Some(l)) = (a.d, a.s, a.l) else {
                bail!("tree-paths needs --d, --s, and --l");
            };
            gen::gen_tree_paths(d, s, l, a.seed)?
        }
        other => bail!(
            "unknown model '{other}', expected chung-lu, chung-lu-households, sbm, or tree-paths"
        ),
    };
    let mut w = out_writer(&a.out)?;
    write_edge_list(&g, &mut w)?;
    drop(w);
    if a.out.is_some() {
        println!("generated {} vertices, {} edges", g.n(), g.num_edges());
    }
    Ok(())
}

fn default_sweep_instances(n: usize, avg_degree: f64, seed: u64) -> Result<Vec<SweepInstance>> {
    let mut instances = Vec::new();
    for i in 0..3u64 {
        instances.push(SweepInstance {
            name: format!("clh-{n}-s{i}"),
            graph: gen::gen_chung_lu_households(n, avg_degree, 4, seed.wrapping_add(i))?,
        });
    }
    for i in 0..3u64 {
        instances.push(SweepInstance {
            name: format!("sbm-{n}-s{i}"),
            graph: gen::gen_sbm(n, avg_degree, &gen::sbm_default_matrix(), seed.wrapping_add(i))?,
        });
    }
    Ok(instances)
}

fn stem_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let motif = load_motif(&a.motif)?;
    let instances = if a.graph.is_empty() {
        default_sweep_instances(a.n, a.avg_degree, a.seed)?
    } else {
        let mut v = Vec::new();
        for path in &a.graph {
            v.push(SweepInstance {
                name: stem_name(path),
                graph: load_graph(path)?,
            });
        }
        v
    };
    let rows = run_config_sweep(&instances, &motif, a.reps, a.seed)?;
    let mut w = out_writer(&a.out)?;
    write_sweep_csv(&rows, &mut w)?;
    drop(w);
    if a.out.is_some() {
        println!("wrote {} sweep rows", rows.len());
    }
    Ok(())
}

fn cmd_split_exp(a: SplitArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let motif = load_motif(&a.motif)?;
    let cfg = base_config(&a.config, a.seed)?;
    if a.colorings == 0 {
        bail!("--colorings must be at least 1");
    }
    let p = motif.n() + 1;
    let mut colorings = Vec::new();
    for i in 0..a.colorings as u64 {
        let (coloring, _) =
            compute_p_centered_coloring(&g, p, &cfg.color, cfg.seed.wrapping_add(i))?;
        colorings.push(coloring);
    }
    let target = match a.target {
        Some(t) => t,
        None => colorings.iter().map(Coloring::size).max().unwrap(),
    };
    let heuristics = match &a.heuristic {
        Some(h) => vec![h.parse::<SplitHeuristic>().map_err(|e| anyhow!(e))?],
        None => vec![SplitHeuristic::Min, SplitHeuristic::Med, SplitHeuristic::Max],
    };
    let mut rows = Vec::new();
    for heuristic in heuristics {
        rows.extend(run_split_experiment(
            &g, &motif, &colorings, target, heuristic, a.reps, cfg.seed,
        )?);
    }
    let mut w = out_writer(&a.out)?;
    write_split_csv(&rows, &mut w)?;
    drop(w);
    if a.out.is_some() {
        println!("wrote {} split rows", rows.len());
    }
    Ok(())
}

fn cmd_td_exp(a: TdArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let cfg = base_config(&a.config, a.seed)?;
    let coloring = match &a.coloring {
        Some(p) => {
            let c = load_coloring_path(p)
                .with_context(|| format!("loading coloring {}", p.display()))?;
            if c.n() != g.n() {
                bail!("coloring covers {} vertices but the graph has {}", c.n(), g.n());
            }
            c
        }
        None => compute_p_centered_coloring(&g, 6, &cfg.color, cfg.seed)?.0,
    };
    let rows = run_treedepth_experiment(&g, &coloring)?;
    let mut w = out_writer(&a.out)?;
    write_td_csv(&rows, &mut w)?;
    drop(w);
    if a.out.is_some() {
        println!("wrote {} experiment rows", rows.len());
    }
    Ok(())
}
