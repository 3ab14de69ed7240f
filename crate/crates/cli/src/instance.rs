//! Builds the objective oracle and cost vector a configuration describes.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::Arc;

use quickprune::graphio::{
    assign_knapsack_costs, generate, read_edge_list_file, CostModel, Graph, GraphKind,
    DEFAULT_COST_ALPHA,
};
use quickprune::objectives::{
    Coverage, Cut, Influence, LiveEdgeSamplePool, SimGraphCut, SimilarityKernel,
    DEFAULT_EDGE_PROBABILITY, DEFAULT_LAMBDA, DEFAULT_SAMPLES,
};
use quickprune::{ElementId, Oracle};

use crate::config::{
    resolve_input, ConstraintName, GenerateConfig, GeneratorName, ObjectiveName, RunConfig,
};
use crate::failure::{CliResult, Context, Failure};

pub struct Instance {
    pub oracle: Oracle,
    pub costs: Vec<f64>,
    pub graph: Option<Arc<Graph>>,
}

impl Instance {
    pub fn ground(&self) -> Vec<ElementId> {
        (0..self.oracle.n()).collect()
    }
}

pub fn generator(g: &GenerateConfig) -> CliResult<GraphKind> {
    Ok(match g.kind {
        GeneratorName::Er => GraphKind::ErdosRenyi {
            p: g.p.ok_or_else(|| Failure::config("erdos-renyi generation needs p"))?,
        },
        GeneratorName::Ba => GraphKind::BarabasiAlbert {
            m: g.m.ok_or_else(|| Failure::config("barabasi-albert generation needs m"))?,
        },
        GeneratorName::Star => GraphKind::Star,
        GeneratorName::Path => GraphKind::Path,
    })
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    let path = resolve_input(path);
    File::open(&path)
        .map(BufReader::new)
        .context(format!("cannot open {}", path.display()))
}

fn load_graph(cfg: &RunConfig) -> CliResult<Graph> {
    if let Some(path) = &cfg.graph.path {
        let path = resolve_input(path);
        return read_edge_list_file(&path, cfg.graph.directed)
            .context(format!("reading {}", path.display()));
    }
    if let Some(g) = &cfg.graph.generate {
        let seed = RunConfig::require_seed(g.seed, "graph generation")?;
        return Ok(generate(generator(g)?, g.n, seed)?);
    }
    Err(Failure::config("no graph given (graph.path or graph.generate)"))
}

fn read_costs(path: &Path, n: usize) -> CliResult<Vec<f64>> {
    let mut costs = Vec::with_capacity(n);
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let c: f64 = body
            .parse()
            .map_err(|_| Failure::io(format!("{}:{}: {body:?} is not a cost", path.display(), i + 1)))?;
        costs.push(c);
    }
    if costs.len() != n {
        return Err(Failure::config(format!(
            "{} holds {} costs for {n} elements",
            path.display(),
            costs.len()
        )));
    }
    if let Some(c) = costs.iter().find(|c| !(**c > 0.0 && c.is_finite())) {
        return Err(Failure::config(format!("cost {c} is not a positive real")));
    }
    Ok(costs)
}

pub fn build(cfg: &RunConfig) -> CliResult<Instance> {
    let kind = cfg.objective();
    let o = &cfg.objective;
    if o.lambda.is_some() && kind != ObjectiveName::Simgraphcut {
        return Err(Failure::config("lambda only applies to simgraphcut"));
    }
    if (o.p.is_some() || o.samples.is_some()) && kind != ObjectiveName::Influence {
        return Err(Failure::config("p and samples only apply to influence"));
    }

    if kind == ObjectiveName::Simgraphcut {
        let (Some(kernel), Some(queries)) = (&o.kernel, &o.queries) else {
            return Err(Failure::config("simgraphcut needs objective.kernel and objective.queries"));
        };
        let kernel = SimilarityKernel::from_readers(
            open(kernel)?,
            open(queries)?,
            o.lambda.unwrap_or(DEFAULT_LAMBDA),
        )?;
        let oracle = Oracle::new(SimGraphCut::new(Arc::new(kernel)));
        let n = oracle.n();
        let costs = match (&cfg.constraint.costs, cfg.constraint()) {
            (Some(path), ConstraintName::Knapsack) => read_costs(path, n)?,
            _ => vec![1.0; n],
        };
        return Ok(Instance { oracle, costs, graph: None });
    }

    let graph = load_graph(cfg)?;
    let costs = match (cfg.constraint(), &cfg.constraint.costs) {
        (ConstraintName::Size, _) => vec![1.0; graph.n()],
        (ConstraintName::Knapsack, Some(path)) => read_costs(path, graph.n())?,
        (ConstraintName::Knapsack, None) => {
            let model = CostModel::Degree {
                cost_alpha: cfg.constraint.cost_alpha.unwrap_or(DEFAULT_COST_ALPHA),
            };
            assign_knapsack_costs(&graph, model)?.costs().to_vec()
        }
    };
    let graph = Arc::new(graph);
    let oracle = match kind {
        ObjectiveName::Coverage => Oracle::new(Coverage::new(Arc::clone(&graph))),
        ObjectiveName::Cut => Oracle::new(Cut::new(Arc::clone(&graph))),
        ObjectiveName::Influence => {
            let seed = RunConfig::require_seed(o.seed, "the influence objective")?;
            let pool = LiveEdgeSamplePool::sample(
                &graph,
                o.p.unwrap_or(DEFAULT_EDGE_PROBABILITY),
                o.samples.unwrap_or(DEFAULT_SAMPLES),
                seed,
            )?;
            Oracle::new(Influence::new(Arc::new(pool)))
        }
        ObjectiveName::Simgraphcut => unreachable!(),
    };
    Ok(Instance { oracle, costs, graph: Some(graph) })
}
