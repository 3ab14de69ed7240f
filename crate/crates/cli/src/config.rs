//! Declarative run configuration, read from TOML and patched by flags.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use crate::failure::{CliResult, Failure};

pub const DATA_DIR_ENV: &str = "QUICKPRUNE_DATA_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveName {
    Coverage,
    Cut,
    Influence,
    Simgraphcut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintName {
    Size,
    Knapsack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PrunerName {
    Quickprune,
    QuickpruneSingle,
    Ss,
    Topk,
    Random,
}

impl PrunerName {
    pub fn as_str(self) -> &'static str {
        match self {
            PrunerName::Quickprune => "quickprune",
            PrunerName::QuickpruneSingle => "quickprune-single",
            PrunerName::Ss => "ss",
            PrunerName::Topk => "topk",
            PrunerName::Random => "random",
        }
    }

    /// Name used in reports and records. The SS variant follows a
    /// reconstructed schedule, so it is labelled as a look-alike.
    pub fn label(self) -> &'static str {
        match self {
            PrunerName::Ss => "ss-style",
            other => other.as_str(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorName {
    Er,
    Ba,
    Star,
    Path,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub objective: ObjectiveConfig,
    #[serde(default)]
    pub graph: GraphConfig,
    #[serde(default)]
    pub constraint: ConstraintConfig,
    #[serde(default)]
    pub budgets: BudgetConfig,
    #[serde(default)]
    pub pruner: PrunerConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveConfig {
    pub kind: Option<ObjectiveName>,
    /// Influence edge probability.
    pub p: Option<f64>,
    /// Influence live-edge samples.
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub lambda: Option<f64>,
    pub kernel: Option<PathBuf>,
    pub queries: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphConfig {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub directed: bool,
    pub generate: Option<GenerateConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateConfig {
    pub kind: GeneratorName,
    pub n: usize,
    pub p: Option<f64>,
    pub m: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintConfig {
    pub kind: Option<ConstraintName>,
    pub cost_alpha: Option<f64>,
    /// One cost per line, overriding the cost model.
    pub costs: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    pub kappa_min: Option<f64>,
    pub kappa_max: Option<f64>,
    /// Evaluation budgets; defaults to ten evenly spaced points of the range.
    pub list: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrunerConfig {
    pub kind: Option<PrunerName>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub eta: Option<f64>,
    pub r: Option<usize>,
    pub c: Option<usize>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub pruners: Option<Vec<PrunerName>>,
}

/// Flags shared by the commands that build an instance.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// TOML run configuration.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// Edge-list file (plain or gzip); relative paths also try the data directory.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub directed: bool,
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveName>,
    /// Seed for sampled objectives.
    #[arg(long)]
    pub objective_seed: Option<u64>,
    #[arg(long, value_enum)]
    pub constraint: Option<ConstraintName>,
    #[arg(long)]
    pub kappa_min: Option<f64>,
    #[arg(long)]
    pub kappa_max: Option<f64>,
    /// Comma-separated evaluation budgets.
    #[arg(long, value_delimiter = ',')]
    pub budgets: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub pruner: Option<PrunerName>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    /// Output size for top-k and random.
    #[arg(long)]
    pub k: Option<usize>,
    /// Seed for randomised pruners.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| Failure::config(format!("bad configuration: {e}")))
    }

    /// Loads `--config` (if any), makes its relative paths relative to the
    /// file, then applies flag overrides.
    pub fn load(flags: &Overrides) -> CliResult<Self> {
        let mut cfg = match &flags.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
                let mut cfg = Self::from_toml(&text)?;
                let base = path.parent().unwrap_or(Path::new(""));
                for p in [
                    &mut cfg.graph.path,
                    &mut cfg.objective.kernel,
                    &mut cfg.objective.queries,
                    &mut cfg.constraint.costs,
                ]
                .into_iter()
                .flatten()
                {
                    if p.is_relative() && base.join(&*p).exists() {
                        *p = base.join(&*p);
                    }
                }
                cfg
            }
            None => RunConfig::default(),
        };
        cfg.apply(flags);
        Ok(cfg)
    }

    pub fn apply(&mut self, f: &Overrides) {
        fn set<T: Clone>(slot: &mut Option<T>, v: &Option<T>) {
            if v.is_some() {
                slot.clone_from(v);
            }
        }
        if f.graph.is_some() {
            self.graph.generate = None;
        }
        set(&mut self.graph.path, &f.graph);
        self.graph.directed |= f.directed;
        set(&mut self.objective.kind, &f.objective);
        set(&mut self.objective.seed, &f.objective_seed);
        set(&mut self.constraint.kind, &f.constraint);
        set(&mut self.budgets.kappa_min, &f.kappa_min);
        set(&mut self.budgets.kappa_max, &f.kappa_max);
        set(&mut self.budgets.list, &f.budgets);
        set(&mut self.pruner.kind, &f.pruner);
        set(&mut self.pruner.delta, &f.delta);
        set(&mut self.pruner.epsilon, &f.epsilon);
        set(&mut self.pruner.eta, &f.eta);
        set(&mut self.pruner.k, &f.k);
        set(&mut self.pruner.seed, &f.seed);
    }

    pub fn objective(&self) -> ObjectiveName {
        self.objective.kind.unwrap_or(ObjectiveName::Coverage)
    }

    pub fn constraint(&self) -> ConstraintName {
        self.constraint.kind.unwrap_or(ConstraintName::Knapsack)
    }

    pub fn pruner(&self) -> PrunerName {
        self.pruner.kind.unwrap_or(PrunerName::Quickprune)
    }

    pub fn delta(&self) -> f64 {
        self.pruner.delta.unwrap_or(0.1)
    }

    pub fn epsilon(&self) -> f64 {
        self.pruner.epsilon.unwrap_or(0.1)
    }

    pub fn eta(&self) -> f64 {
        self.pruner.eta.unwrap_or(0.5)
    }

    /// `(kappa_min, kappa_max)`; a single given end stands for both.
    pub fn kappa_range(&self) -> CliResult<(f64, f64)> {
        let (lo, hi) = match (self.budgets.kappa_min, self.budgets.kappa_max) {
            (Some(lo), Some(hi)) => (lo, hi),
            (Some(k), None) | (None, Some(k)) => (k, k),
            (None, None) => return Err(Failure::config("no budget given (kappa_min / kappa_max)")),
        };
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Failure::config(format!(
                "budget range requires 0 < kappa_min <= kappa_max, got [{lo}, {hi}]"
            )));
        }
        Ok((lo, hi))
    }

    pub fn budget_list(&self) -> CliResult<Vec<f64>> {
        if let Some(list) = &self.budgets.list {
            if list.is_empty() || list.iter().any(|b| !(*b > 0.0 && b.is_finite())) {
                return Err(Failure::config("budget list must hold positive reals"));
            }
            return Ok(list.clone());
        }
        let (lo, hi) = self.kappa_range()?;
        if lo == hi {
            return Ok(vec![lo]);
        }
        Ok((0..10).map(|i| lo + (hi - lo) * i as f64 / 9.0).collect())
    }

    pub fn require_seed(slot: Option<u64>, what: &str) -> CliResult<u64> {
        slot.ok_or_else(|| Failure::config(format!("{what} requires an explicit seed")))
    }
}

/// Resolves an input path: as given if it exists, else under the data directory.
pub fn resolve_input(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => Path::new(&dir).join(path),
        None => path.to_path_buf(),
    }
}
