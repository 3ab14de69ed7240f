use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use quickprune::baselines::{random_prune, ss_prune, top_k_prune, BaselineConfig, BaselineKind};
use quickprune::graphio::{
    assign_knapsack_costs, generate, write_edge_list, CostModel, DEFAULT_COST_ALPHA,
};
use quickprune::metrics::{sweep_budgets, write_csv, write_jsonl, PrunerOutput, SolverKind};
use quickprune::pruning::{
    alpha_multi, alpha_single, quickprune, quickprune_single, read_ids, size_bound, write_ids,
    write_report, LadderParams, PruneParams, PruneReport,
};
use quickprune::ElementId;
use serde::Serialize;

use crate::config::{ConstraintName, GenerateConfig, GeneratorName, PrunerName, RunConfig};
use crate::failure::{CliResult, Context, Failure};
use crate::instance::{build, generator, Instance};

pub const PRUNED_FILE: &str = "pruned.txt";
pub const REPORT_FILE: &str = "report.json";

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).context(format!("cannot create {}", dir.display()))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .context(format!("cannot create {}", path.display()))
}

fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn solver(cfg: &RunConfig) -> SolverKind {
    match cfg.constraint() {
        ConstraintName::Size => SolverKind::Size,
        ConstraintName::Knapsack => SolverKind::Knapsack,
    }
}

/// Runs one pruner over the instance in id order.
pub fn run_pruner(
    cfg: &RunConfig,
    inst: &Instance,
    which: PrunerName,
) -> CliResult<(Vec<ElementId>, PruneReport)> {
    let n = inst.oracle.n();
    let stream = inst.ground();
    let start = Instant::now();
    let (pruned, mut report) = match which {
        PrunerName::Quickprune => {
            let (lo, hi) = cfg.kappa_range()?;
            let params = LadderParams::new(lo, hi, cfg.eta(), cfg.delta(), cfg.epsilon())?;
            quickprune(&stream, &inst.oracle, &inst.costs, params)?
        }
        PrunerName::QuickpruneSingle => {
            let (_, hi) = cfg.kappa_range()?;
            let params = PruneParams::new(hi, cfg.delta(), cfg.epsilon())?;
            quickprune_single(&stream, &inst.oracle, &inst.costs, params)?
        }
        PrunerName::Ss => {
            let seed = RunConfig::require_seed(cfg.pruner.seed, "the ss pruner")?;
            let mut bc = BaselineConfig::new(BaselineKind::Ss, 0, seed);
            bc.r = cfg.pruner.r.unwrap_or(bc.r);
            bc.c = cfg.pruner.c.unwrap_or(bc.c);
            let out = ss_prune(&inst.oracle, &stream, &bc)?;
            let mut report = PruneReport::baseline("ss", n, out.pruned.len(), out.oracle_calls);
            report.seed = Some(seed);
            (out.pruned, report)
        }
        PrunerName::Topk => {
            let k = cfg.pruner.k.ok_or_else(|| Failure::config("topk needs pruner.k"))?;
            let graph = inst
                .graph
                .as_ref()
                .ok_or_else(|| Failure::config("topk needs a graph objective"))?;
            let pruned = top_k_prune(graph, &inst.costs, k)?;
            let report = PruneReport::baseline("topk", n, pruned.len(), 0);
            (pruned, report)
        }
        PrunerName::Random => {
            let k = cfg.pruner.k.ok_or_else(|| Failure::config("random needs pruner.k"))?;
            let seed = RunConfig::require_seed(cfg.pruner.seed, "the random pruner")?;
            let pruned = random_prune(n, k, seed)?;
            let mut report = PruneReport::baseline("random", n, pruned.len(), 0);
            report.seed = Some(seed);
            (pruned, report)
        }
    };
    report.algorithm = which.label().to_string();
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((pruned, report))
}

fn budget_range(cfg: &RunConfig, which: PrunerName) -> Option<(f64, f64)> {
    match which {
        PrunerName::Quickprune => cfg.kappa_range().ok(),
        PrunerName::QuickpruneSingle => cfg.kappa_range().ok().map(|(_, hi)| (hi, hi)),
        _ => None,
    }
}

pub fn prune(cfg: &RunConfig, out_dir: &Path) -> CliResult<()> {
    let inst = build(cfg)?;
    let (pruned, report) = run_pruner(cfg, &inst, cfg.pruner())?;
    write_ids(create(&out_dir.join(PRUNED_FILE))?, &pruned)?;
    write_report(create(&out_dir.join(REPORT_FILE))?, &report)?;
    eprintln!(
        "{}: kept {} of {} elements with {} oracle calls",
        report.algorithm, report.pruned_size, report.n, report.oracle_calls
    );
    Ok(())
}

fn load_ids(path: &Path, n: usize) -> CliResult<Vec<ElementId>> {
    let file = File::open(path).context(format!("cannot open {}", path.display()))?;
    let ids = read_ids(BufReader::new(file)).context(format!("reading {}", path.display()))?;
    if let Some(bad) = ids.iter().find(|&&e| e >= n) {
        return Err(Failure::config(format!(
            "{}: id {bad} outside ground set of size {n}",
            path.display()
        )));
    }
    Ok(ids)
}

pub fn solve(cfg: &RunConfig, pruned: Option<&Path>, budget: Option<f64>, out: Option<&Path>) -> CliResult<()> {
    let inst = build(cfg)?;
    let ground = match pruned {
        Some(p) => load_ids(p, inst.oracle.n())?,
        None => inst.ground(),
    };
    let budget = match budget {
        Some(b) => b,
        None => cfg.kappa_range()?.1,
    };
    let sol = solver(cfg).solve(&inst.oracle, &inst.costs, &ground, budget)?;
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, &sol)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_records(
    records: &[quickprune::metrics::EvalRecord],
    out: Option<&Path>,
    jsonl: bool,
) -> CliResult<()> {
    let w = output(out)?;
    if jsonl {
        write_jsonl(w, records)?;
    } else {
        write_csv(w, records)?;
    }
    Ok(())
}

pub fn eval(cfg: &RunConfig, pruned: &[PathBuf], out: Option<&Path>, jsonl: bool) -> CliResult<()> {
    if pruned.is_empty() {
        return Err(Failure::config("eval needs at least one --pruned file"));
    }
    let inst = build(cfg)?;
    let budgets = cfg.budget_list()?;
    let mut outputs = Vec::new();
    for path in pruned {
        let ids = load_ids(path, inst.oracle.n())?;
        // a report next to the id file supplies the prune cost and range
        let report = path
            .parent()
            .map(|d| d.join(REPORT_FILE))
            .filter(|r| r.exists())
            .and_then(|r| File::open(r).ok())
            .and_then(|f| quickprune::pruning::read_report(BufReader::new(f)).ok());
        let name = match &report {
            Some(r) => r.algorithm.clone(),
            None => path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        };
        outputs.push(PrunerOutput {
            name,
            pruned: ids,
            oracle_calls: report.as_ref().map_or(0, |r| r.oracle_calls),
            range: report.as_ref().and_then(|r| r.kappa_min.zip(r.kappa_max)),
        });
    }
    let records = sweep_budgets(&inst.oracle, &inst.costs, &inst.ground(), &outputs, &budgets, solver(cfg))?;
    write_records(&records, out, jsonl)
}

pub fn sweep(cfg: &RunConfig, out_dir: &Path) -> CliResult<()> {
    let inst = build(cfg)?;
    let budgets = cfg.budget_list()?;
    let pruners = cfg.sweep.pruners.clone().unwrap_or_else(|| vec![cfg.pruner()]);
    let mut outputs = Vec::new();
    for which in pruners {
        let (pruned, report) = run_pruner(cfg, &inst, which)?;
        let stem = which.as_str();
        write_ids(create(&out_dir.join(format!("{stem}.pruned.txt")))?, &pruned)?;
        write_report(create(&out_dir.join(format!("{stem}.report.json")))?, &report)?;
        outputs.push(PrunerOutput {
            name: which.label().to_string(),
            pruned,
            oracle_calls: report.oracle_calls,
            range: budget_range(cfg, which),
        });
    }
    let records = sweep_budgets(&inst.oracle, &inst.costs, &inst.ground(), &outputs, &budgets, solver(cfg))?;
    write_records(&records, Some(&out_dir.join("records.csv")), false)?;
    write_records(&records, Some(&out_dir.join("records.jsonl")), true)?;
    eprintln!("{} records written to {}", records.len(), out_dir.display());
    Ok(())
}

pub fn gen(request: &GenerateConfig, knapsack: bool, out: &Path) -> CliResult<()> {
    if request.kind == GeneratorName::Er && request.p.is_none() || request.kind == GeneratorName::Ba && request.m.is_none() {
        return Err(Failure::config("er needs --p and ba needs --m"));
    }
    let seed = RunConfig::require_seed(request.seed, "graph generation")?;
    let mut graph = generate(generator(request)?, request.n, seed)?;
    if knapsack {
        graph = assign_knapsack_costs(&graph, CostModel::Degree { cost_alpha: DEFAULT_COST_ALPHA })?;
    }
    write_edge_list(&graph, create(out)?)?;
    let mut meta_path = out.as_os_str().to_owned();
    meta_path.push(".meta.json");
    let mut w = create(Path::new(&meta_path))?;
    serde_json::to_writer_pretty(&mut w, &graph.metadata(None))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Bounds {
    n: usize,
    kappa: f64,
    delta: f64,
    epsilon: f64,
    gamma: f64,
    c_min: f64,
    alpha_single: f64,
    alpha_multi: f64,
    size_bound: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn bounds(n: usize, kappa: f64, delta: f64, epsilon: f64, gamma: f64, c_min: f64, json: bool) -> CliResult<()> {
    if n == 0 || !(kappa > 0.0) || !(c_min > 0.0) {
        return Err(Failure::config("n, kappa and c-min must be positive"));
    }
    let b = Bounds {
        n,
        kappa,
        delta,
        epsilon,
        gamma,
        c_min,
        alpha_single: alpha_single(delta, epsilon, gamma)?,
        alpha_multi: alpha_multi(delta, epsilon, gamma)?,
        size_bound: size_bound(n, kappa, delta, c_min, epsilon),
    };
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &b)?;
        writeln!(out)?;
    } else {
        writeln!(out, "alpha_single  {:.6}", b.alpha_single)?;
        writeln!(out, "alpha_multi   {:.6}", b.alpha_multi)?;
        writeln!(out, "size_bound    {:.2}", b.size_bound)?;
    }
    Ok(())
}
