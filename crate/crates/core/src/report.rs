//! Experiment runs: a named coloring pipeline on one instance, recorded as a
//! JSON report, a CSV summary row, and an optional SVG drawing.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::certificate::{end_to_end, Certificate};
use crate::coloring::{derandomized_coloring, random_coloring, stats_for, ColoringStats, EdgeColoring, EdgeOrder};
use crate::error::{Error, Result};
use crate::graph::GeometricGraph;
use crate::rational::{self, to_f64, Rational};
use crate::structure::BundleParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    BaselineRandom,
    Greedy,
    FullTheorem,
}

impl Pipeline {
    pub const ALL: [Pipeline; 3] = [Pipeline::BaselineRandom, Pipeline::Greedy, Pipeline::FullTheorem];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::BaselineRandom => "baseline-random",
            Pipeline::Greedy => "greedy",
            Pipeline::FullTheorem => "full-theorem",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown pipeline {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Label used for output file names and the `instance` column.
    pub name: String,
    pub pipeline: Pipeline,
    pub k: usize,
    pub seed: u64,
    pub bundle_params: BundleParams,
    /// Directory for `<name>.json`, `<name>.csv` and `<name>.svg`; nothing is
    /// written when `None`.
    pub out_dir: Option<PathBuf>,
    pub svg: bool,
}

impl ExperimentConfig {
    pub fn new(name: impl Into<String>, pipeline: Pipeline, k: usize, seed: u64) -> Self {
        let bundle_params = BundleParams { seed, ..BundleParams::default() };
        ExperimentConfig { name: name.into(), pipeline, k, seed, bundle_params, out_dir: None, svg: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInfo {
    pub name: String,
    pub n: usize,
    pub m: usize,
    #[serde(with = "rational")]
    pub density: Rational,
    pub crossings: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub stage: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub crossings_ms: f64,
    pub pipeline_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instance: InstanceInfo,
    pub strategy: Pipeline,
    pub k: usize,
    pub seed: u64,
    pub stats: Option<ColoringStats>,
    /// Whether `mono ≤ crs/k`.
    pub within_average: Option<bool>,
    pub certificate: Option<Certificate>,
    pub failure: Option<Failure>,
    pub timings: Timings,
    #[serde(skip)]
    pub coloring: Option<EdgeColoring>,
}

/// Frozen CSV column order. New columns are only ever appended.
pub const CSV_HEADER: &str = "instance,strategy,n,m,density,k,seed,crossings,mono,ratio_num,ratio_den,ratio,vacuous,\
c_num,c_den,c,bound_num,bound_den,bound,within_bound,failed_stage,total_ms";

impl Report {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }

    pub fn csv_row(&self) -> String {
        let mut cells: Vec<String> = vec![
            csv_cell(&self.instance.name),
            self.strategy.name().into(),
            self.instance.n.to_string(),
            self.instance.m.to_string(),
            format!("{:.6}", to_f64(&self.instance.density)),
            self.k.to_string(),
            self.seed.to_string(),
            self.instance.crossings.to_string(),
        ];
        match &self.stats {
            Some(s) => {
                cells.push(s.mono.to_string());
                cells.extend(rational_cells(&s.ratio));
                cells.push(s.vacuous.to_string());
            }
            None => cells.extend(std::iter::repeat_n(String::new(), 5)),
        }
        match &self.certificate {
            Some(c) => {
                cells.extend(rational_cells(&c.c));
                cells.extend(rational_cells(&c.bound));
                cells.push(c.within_bound.to_string());
            }
            None => cells.extend(std::iter::repeat_n(String::new(), 7)),
        }
        cells.push(self.failure.as_ref().map(|f| f.stage.clone()).unwrap_or_default());
        cells.push(format!("{:.3}", self.timings.total_ms));
        cells.join(",")
    }
}

fn rational_cells(r: &Rational) -> [String; 3] {
    [r.numer().to_string(), r.denom().to_string(), format!("{:.9}", to_f64(r))]
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs `config.pipeline` on `graph`. Pipeline failures are recorded in the
/// report rather than returned; only I/O errors are returned.
pub fn run_experiment(graph: &GeometricGraph, config: &ExperimentConfig) -> Result<Report> {
    let start = Instant::now();
    let crossings = graph.crossing_set();
    let crossings_ms = ms(start);
    let density = graph.density().unwrap_or_default();
    let instance = InstanceInfo {
        name: config.name.clone(),
        n: graph.vertex_count(),
        m: graph.edge_count(),
        density,
        crossings: crossings.count,
    };
    let pipeline_start = Instant::now();
    let mut certificate = None;
    let outcome: Result<EdgeColoring> = match config.pipeline {
        Pipeline::BaselineRandom => random_coloring(graph, config.k, config.seed),
        Pipeline::Greedy => derandomized_coloring(graph, config.k, &EdgeOrder::default()),
        Pipeline::FullTheorem => {
            end_to_end(graph, config.k, &config.bundle_params, &EdgeOrder::default()).map(|out| {
                certificate = Some(out.certificate);
                out.coloring
            })
        }
    };
    let pipeline_ms = ms(pipeline_start);
    let (coloring, failure) = match outcome {
        Ok(c) => (Some(c), None),
        Err(e) => {
            let stage = match &e {
                Error::Pipeline { stage, .. } => stage.to_string(),
                Error::Vacuous => "vacuous".into(),
                _ => config.pipeline.name().into(),
            };
            (None, Some(Failure { stage, detail: e.to_string() }))
        }
    };
    let mut stats = coloring.as_ref().map(|c| stats_for(&crossings, c));
    if crossings.count == 0 && stats.is_none() {
        stats = Some(ColoringStats::from_counts(0, 0));
    }
    let report = Report {
        instance,
        strategy: config.pipeline,
        k: config.k,
        seed: config.seed,
        within_average: stats.as_ref().map(|s| s.within_average(config.k)),
        stats,
        certificate,
        failure,
        timings: Timings { crossings_ms, pipeline_ms, total_ms: ms(start) },
        coloring,
    };
    if let Some(dir) = &config.out_dir {
        write_outputs(graph, &report, dir, config.svg)?;
    }
    Ok(report)
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Writes `<name>.json`, `<name>.csv` (header plus one row) and, when asked
/// and a coloring exists, `<name>.svg`.
pub fn write_outputs(graph: &GeometricGraph, report: &Report, dir: &Path, svg: bool) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let name = &report.instance.name;
    std::fs::write(dir.join(format!("{name}.json")), serde_json::to_string_pretty(report)? + "\n")?;
    std::fs::write(dir.join(format!("{name}.csv")), format!("{CSV_HEADER}\n{}\n", report.csv_row()))?;
    if svg {
        if let Some(c) = &report.coloring {
            std::fs::write(dir.join(format!("{name}.svg")), render_svg(graph, Some(c)))?;
        }
    }
    Ok(())
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// One `<line>` per edge, colored by `coloring` when given, and one
/// `<circle>` per vertex. Crossings are not marked.
pub fn render_svg(graph: &GeometricGraph, coloring: Option<&EdgeColoring>) -> String {
    const SIZE: f64 = 800.0;
    const MARGIN: f64 = 20.0;
    let pts = graph.points().points();
    let (mut x0, mut y0, mut x1, mut y1) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
    for p in pts {
        x0 = x0.min(p.x as i64);
        y0 = y0.min(p.y as i64);
        x1 = x1.max(p.x as i64);
        y1 = y1.max(p.y as i64);
    }
    let span = ((x1 - x0).max(y1 - y0).max(1)) as f64;
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let map = |v: usize| {
        let p = pts[v];
        let x = MARGIN + (p.x as i64 - x0) as f64 * scale;
        let y = SIZE - MARGIN - (p.y as i64 - y0) as f64 * scale;
        (x, y)
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"<g stroke-width="1" stroke-opacity="0.7">"#);
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let color = coloring.map_or("#555555", |c| PALETTE[(c.color(e) as usize - 1) % PALETTE.len()]);
        let ((ax, ay), (bx, by)) = (map(u), map(v));
        let _ = writeln!(out, r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="{color}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black">"#);
    for v in 0..pts.len() {
        let (x, y) = map(v);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, PointSet};

    fn convex(n: i32) -> GeometricGraph {
        GeometricGraph::complete(PointSet::new((0..n).map(|i| Point::new(i, i * i)).collect()).unwrap())
    }

    #[test]
    fn greedy_report_within_average() {
        let g = convex(9);
        let r = run_experiment(&g, &ExperimentConfig::new("k9", Pipeline::Greedy, 3, 0)).unwrap();
        assert!(r.succeeded());
        assert_eq!(r.within_average, Some(true));
        assert_eq!(r.csv_row().split(',').count(), CSV_HEADER.split(',').count());
    }

    #[test]
    fn empty_graph_is_vacuous_for_baselines() {
        let g = GeometricGraph::new(PointSet::new(vec![Point::new(0, 0), Point::new(1, 0)]).unwrap(), []).unwrap();
        let r = run_experiment(&g, &ExperimentConfig::new("e", Pipeline::Greedy, 2, 0)).unwrap();
        let s = r.stats.unwrap();
        assert!(s.vacuous);
        assert_eq!(s.ratio, Rational::default());
        let r = run_experiment(&g, &ExperimentConfig::new("e", Pipeline::FullTheorem, 2, 0)).unwrap();
        assert!(r.stats.unwrap().vacuous);
        assert_eq!(r.failure.unwrap().stage, "vacuous");
    }

    #[test]
    fn svg_has_one_line_per_edge() {
        let g = convex(6);
        let svg = render_svg(&g, None);
        assert_eq!(svg.matches("<line ").count(), g.edge_count());
    }

    #[test]
    fn writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = ExperimentConfig::new("run", Pipeline::BaselineRandom, 2, 5);
        cfg.out_dir = Some(dir.path().to_path_buf());
        cfg.svg = true;
        run_experiment(&convex(7), &cfg).unwrap();
        for ext in ["json", "csv", "svg"] {
            assert!(dir.path().join(format!("run.{ext}")).exists(), "{ext}");
        }
        let csv = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
        assert!(csv.starts_with(CSV_HEADER));
    }
}
