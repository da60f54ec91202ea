//! Command-line front end. Every command is a deterministic function of its
//! input files, flags and seed.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 pipeline failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::certificate::{max_feasible_constants, strict_constants, verify_conditions, Constants};
use crate::coloring::{bundle_coloring, derandomized_coloring, random_coloring, stats_for, EdgeColoring, EdgeOrder};
use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorKind, GeneratorSpec, DEFAULT_RANGE};
use crate::graph::GeometricGraph;
use crate::rational::{self, Rational};
use crate::report::{render_svg, run_experiment, ExperimentConfig, Pipeline, CSV_HEADER};
use crate::structure::{
    build_bundles, default_epsilon, random_balanced_partition, regular_box_partition, same_type_check, same_type_refine,
    Bundle, BundleParams, RegularityConfig, SameTypeConfig, SameTypeVerdict, VertexTuplePartition,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "crossmono", version, about = "Edge colorings of dense geometric graphs with few monochromatic crossings")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write outputs here instead of standard output.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Random,
    Greedy,
    Bundle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random geometric graph in general position.
    Gen(GenArgs),
    /// Count crossing pairs.
    Crossings(GraphArg),
    /// Color the edges and count monochromatic crossings.
    Color(ColorArgs),
    /// Find k crossing bundles.
    Bundles(BundlesArgs),
    /// Witness-driven ε-regular box partition of a random balanced partition.
    Regularity(RegularityArgs),
    /// Check or refine a vertex partition for same-type transversals.
    Sametype(SametypeArgs),
    /// Verify bundle conditions; exits 2 on failure.
    Verify(VerifyArgs),
    /// Run a named pipeline and emit a report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct GraphArg {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value = "uniform-square")]
    pub kind: String,
    #[arg(long)]
    pub n: usize,
    /// Target edge density, as `a/b` or a decimal.
    #[arg(long, default_value = "1")]
    pub density: String,
    #[arg(long, default_value_t = DEFAULT_RANGE)]
    pub range: i64,
    #[arg(long, default_value = "instance")]
    pub name: String,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::Greedy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Bundle file for `--strategy bundle`; bundles are searched for when absent.
    #[arg(long)]
    pub bundles: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BundlesArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub eps: Option<String>,
}

#[derive(Debug, Args)]
pub struct RegularityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct SametypeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// JSON array of vertex id arrays.
    #[arg(long)]
    pub parts: PathBuf,
    #[arg(long, conflicts_with = "refine", required_unless_present = "refine")]
    pub check: bool,
    #[arg(long)]
    pub refine: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Output of `bundles`, or a JSON array of bundles.
    #[arg(long)]
    pub bundles: PathBuf,
    /// Explicit constants; the largest feasible ones are used when absent.
    #[arg(long, requires_all = ["c2", "c3"])]
    pub c1: Option<String>,
    #[arg(long, requires_all = ["c1", "c3"])]
    pub c2: Option<String>,
    #[arg(long, requires_all = ["c1", "c2"])]
    pub c3: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value = "greedy")]
    pub pipeline: String,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Instance label; defaults to the graph file stem.
    #[arg(long)]
    pub name: Option<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run_with(args, &mut out)
}

/// As [`run`], writing command output to `out`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Pipeline { .. } | Error::Vacuous | Error::SearchExhausted { .. } => EXIT_PIPELINE,
                _ => EXIT_USAGE,
            }
        }
    }
}

struct Sink<'a> {
    out: &'a mut dyn Write,
    dir: Option<&'a Path>,
}

impl Sink<'_> {
    /// Writes `body` to `<out-dir>/<file>` or to the output stream.
    fn emit(&mut self, file: &str, body: &str) -> Result<()> {
        match self.dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(file), body)?;
                writeln!(self.out, "{}", dir.join(file).display())?;
            }
            None => self.out.write_all(body.as_bytes())?,
        }
        Ok(())
    }

    fn json(&mut self, file: &str, value: &impl Serialize) -> Result<()> {
        self.emit(file, &(serde_json::to_string_pretty(value)? + "\n"))
    }
}

fn read_graph(path: &Path) -> Result<GeometricGraph> {
    GeometricGraph::parse(&std::fs::read_to_string(path)?)
}

fn parse_rational(s: &str, what: &str) -> Result<Rational> {
    rational::parse(s).ok_or_else(|| Error::Parameter(format!("{what}: cannot parse {s:?} as a rational")))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "instance".into(), |s| s.to_string_lossy().into_owned())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let mut sink = Sink { out, dir: cli.out_dir.as_deref() };
    let seed = cli.seed;
    match &cli.command {
        Command::Gen(a) => {
            let kind: GeneratorKind = a.kind.parse()?;
            let density = parse_rational(&a.density, "--density")?;
            let spec = GeneratorSpec { kind, n: a.n, density, seed, coordinate_range: a.range };
            let g = generate(&spec)?;
            match cli.format {
                Some(Format::Svg) => sink.emit(&format!("{}.svg", a.name), &render_svg(&g, None))?,
                Some(Format::Json) => sink.json(
                    &format!("{}.json", a.name),
                    &json!({ "spec": spec, "graph": g.to_text() }),
                )?,
                _ => sink.emit(&format!("{}.graph", a.name), &g.to_text())?,
            }
        }
        Command::Crossings(a) => {
            let g = read_graph(&a.graph)?;
            let crossings = g.crossing_set();
            match cli.format {
                Some(Format::Json) => sink.json(
                    "crossings.json",
                    &json!({ "n": g.vertex_count(), "m": g.edge_count(), "count": crossings.count, "pairs": crossings.pairs }),
                )?,
                _ => sink.emit("crossings.txt", &format!("{}\n", crossings.count))?,
            }
        }
        Command::Color(a) => {
            let g = read_graph(&a.graph)?;
            let order = EdgeOrder::default();
            let coloring: EdgeColoring = match a.strategy {
                Strategy::Random => random_coloring(&g, a.k, seed)?,
                Strategy::Greedy => derandomized_coloring(&g, a.k, &order)?,
                Strategy::Bundle => {
                    let bundles = match &a.bundles {
                        Some(path) => read_bundles(path, &g)?,
                        None => build_bundles(&g, a.k, &BundleParams { seed, ..BundleParams::default() })?.bundles,
                    };
                    if bundles.len() != a.k {
                        return Err(Error::Parameter(format!("{} bundles for k = {}", bundles.len(), a.k)));
                    }
                    bundle_coloring(&g, &bundles, &order)?
                }
            };
            let stats = stats_for(&g.crossing_set(), &coloring);
            match cli.format {
                Some(Format::Json) => sink.json("coloring.json", &json!({ "k": a.k, "colors": coloring.colors(), "stats": stats }))?,
                Some(Format::Svg) => sink.emit("coloring.svg", &render_svg(&g, Some(&coloring)))?,
                _ => sink.emit("coloring.txt", &coloring.to_text(&g))?,
            }
            eprintln!("mono {} of {} crossing pairs (ratio {})", stats.mono, stats.total, stats.ratio);
        }
        Command::Bundles(a) => {
            let g = read_graph(&a.graph)?;
            let epsilon = a.eps.as_deref().map(|e| parse_rational(e, "--eps")).transpose()?;
            let params = BundleParams { r: a.r, epsilon, seed, ..BundleParams::default() };
            let build = build_bundles(&g, a.k, &params)?;
            let bundles: Vec<_> = build
                .bundles
                .iter()
                .map(|b| json!({ "y": b.y, "z": b.z, "edges": b.edges.iter().map(|&e| g.edge(e)).collect::<Vec<_>>() }))
                .collect();
            sink.json("bundles.json", &json!({ "bundles": bundles, "build": build }))?;
        }
        Command::Regularity(a) => {
            let g = read_graph(&a.graph)?;
            let eps = match &a.eps {
                Some(e) => parse_rational(e, "--eps")?,
                None => default_epsilon(&g.density()?),
            };
            let partition = random_balanced_partition(&g, a.r, seed)?;
            let config = RegularityConfig { seed, ..RegularityConfig::default() };
            let boxes = regular_box_partition(&g, &partition.parts, &eps, &config)?;
            sink.json("regularity.json", &json!({ "parts": partition.parts, "removed": partition.removed, "partition": boxes }))?;
        }
        Command::Sametype(a) => {
            let g = read_graph(&a.graph)?;
            let parts: Vec<Vec<usize>> = serde_json::from_str(&std::fs::read_to_string(&a.parts)?)?;
            let partition = VertexTuplePartition::within(parts, g.vertex_count())?;
            if a.check {
                let verdict = same_type_check(g.points(), &partition);
                let holds = verdict.holds();
                let body = match verdict {
                    SameTypeVerdict::SameType => json!({ "same_type": true }),
                    SameTypeVerdict::Violation(v) => json!({ "same_type": false, "violation": v }),
                };
                sink.json("sametype.json", &body)?;
                return Ok(if holds { EXIT_OK } else { EXIT_VERIFY });
            }
            let refinement = same_type_refine(g.points(), &partition, &SameTypeConfig::default())?;
            sink.json("sametype.json", &refinement)?;
        }
        Command::Verify(a) => {
            let g = read_graph(&a.graph)?;
            let bundles = read_bundles(&a.bundles, &g)?;
            let constants = match (&a.c1, &a.c2, &a.c3) {
                (Some(c1), Some(c2), Some(c3)) => Constants {
                    c1: parse_rational(c1, "--c1")?,
                    c2: parse_rational(c2, "--c2")?,
                    c3: parse_rational(c3, "--c3")?,
                },
                _ => match max_feasible_constants(&g, &bundles) {
                    Ok(c) => strict_constants(&c, g.vertex_count()),
                    Err(e) => {
                        sink.json("verify.json", &json!({ "passed": false, "error": e.to_string() }))?;
                        return Ok(EXIT_VERIFY);
                    }
                },
            };
            let report = verify_conditions(&g, &bundles, &constants)?;
            let passed = report.passed();
            sink.json("verify.json", &json!({ "passed": passed, "constants": constants, "report": report }))?;
            return Ok(if passed { EXIT_OK } else { EXIT_VERIFY });
        }
        Command::Report(a) => {
            let g = read_graph(&a.graph)?;
            let pipeline: Pipeline = a.pipeline.parse()?;
            let name = a.name.clone().unwrap_or_else(|| stem(&a.graph));
            let mut config = ExperimentConfig::new(name, pipeline, a.k, seed);
            config.out_dir = cli.out_dir.clone();
            config.svg = cli.format == Some(Format::Svg);
            let report = run_experiment(&g, &config)?;
            if cli.out_dir.is_none() {
                match cli.format {
                    Some(Format::Csv) => sink.emit("", &format!("{CSV_HEADER}\n{}\n", report.csv_row()))?,
                    Some(Format::Svg) => {
                        let svg = render_svg(&g, report.coloring.as_ref());
                        sink.emit("", &svg)?;
                    }
                    _ => sink.json("", &report)?,
                }
            }
            if let Some(f) = &report.failure {
                eprintln!("pipeline failed at {}: {}", f.stage, f.detail);
                return Ok(EXIT_PIPELINE);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Accepts `bundles` output (`{"bundles": [...]}`) or a bare array, where
/// each bundle needs `y` and `z`; edge lists are recomputed from the graph.
fn read_bundles(path: &Path, graph: &GeometricGraph) -> Result<Vec<Bundle>> {
    #[derive(serde::Deserialize)]
    struct Sides {
        y: Vec<usize>,
        z: Vec<usize>,
    }
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let list = match value.get("bundles") {
        Some(v) => v.clone(),
        None => value,
    };
    let sides: Vec<Sides> = serde_json::from_value(list)?;
    sides.into_iter().map(|s| Bundle::new(graph, s.y, s.z)).collect()
}
