use std::fs;
use std::io::Write;
use std::path::Path;

use euler_census::asymptotic::{k_ec, ln_ec_estimate};
use euler_census::enumeration::{count_eulerian_circuits, CountOptions, EnumerationError};
use euler_census::integral::{build_model, mc_estimate_int_with, quadrature_s, McConfig, RunReport, MAX_QUADRATURE_VERTICES};
use euler_census::spectral::{ln_bigint, spectral_summary, SpectralSummary};
use euler_census::{complete_graph, cycle_graph, parse_graph, random_even_graph, validate, Graph, GraphError, ValidationReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::record::{ComparisonRecord, SweepRow, CSV_HEADER};

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    parse_graph(&text).map_err(CliError::Parse)
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub m: usize,
    pub validation: ValidationReport,
    pub spectral: SpectralSummary,
    pub k_ec: f64,
}

pub fn analyze(g: &Graph) -> Result<AnalyzeReport, CliError> {
    Ok(AnalyzeReport {
        n: g.vertex_count(),
        m: g.edge_count(),
        validation: validate(g),
        spectral: spectral_summary(g)?,
        k_ec: k_ec(g),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodKind {
    Formula,
    Exact,
    MonteCarlo,
    Quadrature,
}

pub fn parse_methods(list: &str) -> Result<Vec<MethodKind>, CliError> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let m = match item {
            "formula" => MethodKind::Formula,
            "exact" => MethodKind::Exact,
            "mc" => MethodKind::MonteCarlo,
            "quadrature" => MethodKind::Quadrature,
            other => return Err(CliError::Usage(format!("unknown method '{other}'"))),
        };
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CompareSettings {
    pub methods: Vec<MethodKind>,
    pub epsilon: f64,
    pub seed: u64,
    pub samples: u64,
    pub node_budget: u64,
    pub grid: usize,
    pub workers: Option<usize>,
}

/// Runs the selected methods on one graph. The formula always runs; a
/// budget overrun or a graph too large for quadrature leaves that column
/// empty with a note.
pub fn compare(id: &str, g: &Graph, s: &CompareSettings) -> Result<ComparisonRecord, CliError> {
    let report = validate(g);
    if !report.all_ok() {
        return Err(CliError::Enumeration(EnumerationError::Precondition(report)));
    }
    let spectral = spectral_summary(g)?;
    let formula = ln_ec_estimate(g)?;
    let mut record = ComparisonRecord {
        graph_id: id.to_string(),
        n: g.vertex_count(),
        m: g.edge_count(),
        lambda2: spectral.lambda2,
        gamma_observed: spectral.gamma_observed,
        ln_ec_formula: formula.ln_ec,
        ln_ec_exact: None,
        ln_ec_mc: None,
        ln_ec_quadrature: None,
        delta: None,
        delta_scaled: None,
        notes: Vec::new(),
        runs: Vec::new(),
    };

    if s.methods.contains(&MethodKind::Exact) {
        let opts = CountOptions { node_budget: Some(s.node_budget), workers: s.workers, cut_edge: None };
        match count_eulerian_circuits(g, &opts) {
            Ok(c) => record.set_exact(ln_bigint(&c.count), s.epsilon),
            Err(EnumerationError::BudgetExhausted { budget, .. }) => {
                record.notes.push(format!("exact skipped: node budget {budget} exhausted"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    if s.methods.contains(&MethodKind::Quadrature) {
        if g.vertex_count() > MAX_QUADRATURE_VERTICES {
            record.notes.push(format!("quadrature skipped: n > {MAX_QUADRATURE_VERTICES}"));
        } else {
            let r = quadrature_s(g, s.grid)?;
            record.ln_ec_quadrature = Some(r.ln_ec_implied);
            record.runs.push(RunReport::new(g, &r, None, None));
        }
    }
    if s.methods.contains(&MethodKind::MonteCarlo) {
        let model = build_model(g, s.epsilon)?;
        let cfg = McConfig { workers: s.workers, ..McConfig::new(s.samples, s.seed) };
        let r = mc_estimate_int_with(&model, &cfg)?;
        record.ln_ec_mc = Some(r.ln_ec_implied);
        record.runs.push(RunReport::new(g, &r, Some(s.epsilon), Some(s.seed)));
    }
    Ok(record)
}

pub fn family_graph(family: &str, n: usize, p: f64, seed: u64) -> Result<(String, Graph), CliError> {
    match family {
        "kn" => Ok((format!("kn-{n}"), complete_graph(n).map_err(CliError::Graph)?)),
        "cycle" => Ok((format!("cycle-{n}"), cycle_graph(n).map_err(CliError::Graph)?)),
        "random-even" => {
            Ok((format!("random-even-{n}-p{p}-s{seed}"), random_even_graph(n, p, seed).map_err(CliError::Graph)?))
        }
        other => Err(CliError::Usage(format!("unknown family '{other}' (expected kn, cycle or random-even)"))),
    }
}

pub fn check_family(family: &str) -> Result<(), CliError> {
    match family {
        "kn" | "cycle" | "random-even" => Ok(()),
        other => Err(CliError::Usage(format!("unknown family '{other}' (expected kn, cycle or random-even)"))),
    }
}

/// One CSV row per `n`, in input order. Instance failures land in the
/// error column.
pub fn sweep(family: &str, ns: &[usize], p: f64, seed: u64, s: &CompareSettings) -> Vec<SweepRow> {
    let inner = CompareSettings { workers: Some(1), ..s.clone() };
    let run = |&n: &usize| -> SweepRow {
        let placeholder = format!("{family}-{n}");
        match family_graph(family, n, p, seed) {
            Err(e) => SweepRow { graph_id: placeholder, n: Some(n), error: Some(e.to_string()), ..Default::default() },
            Ok((id, g)) => match compare(&id, &g, &inner) {
                Ok(r) => SweepRow::from(&r),
                Err(e) => SweepRow {
                    graph_id: id,
                    n: Some(g.vertex_count()),
                    m: Some(g.edge_count()),
                    error: Some(e.to_string()),
                    ..Default::default()
                },
            },
        }
    };
    let job = || ns.par_iter().map(run).collect::<Vec<_>>();
    match s.workers.map(|w| rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build()) {
        Some(Ok(pool)) => pool.install(job),
        _ => job(),
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))?;
    Ok(())
}

pub fn generate(n: usize, p: f64, seed: u64) -> Result<String, CliError> {
    let g = random_even_graph(n, p, seed).map_err(|e| match e {
        GraphError::RetriesExhausted { .. } => CliError::Graph(e),
        other => CliError::Usage(other.to_string()),
    })?;
    Ok(g.to_edge_list())
}

pub fn parse_n_list(list: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (parse_usize(a)?, parse_usize(b)?);
            if a > b {
                return Err(CliError::Usage(format!("empty range '{part}'")));
            }
            out.extend(a..=b);
        } else {
            out.push(parse_usize(part)?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty --n list".into()));
    }
    Ok(out)
}

fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("not a vertex count: '{s}'")))
}
