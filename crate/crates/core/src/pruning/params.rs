use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!("{name} = {x} must be a positive real")))
    }
}

/// Parameters of the single-budget pruner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PruneParams {
    /// Knapsack budget.
    pub kappa: f64,
    /// Size control: larger values make the add rule stricter.
    pub delta: f64,
    /// Deletion aggressiveness.
    pub epsilon: f64,
}

impl PruneParams {
    pub fn new(kappa: f64, delta: f64, epsilon: f64) -> Result<Self> {
        positive("kappa", kappa)?;
        positive("delta", delta)?;
        positive("epsilon", epsilon)?;
        Ok(PruneParams {
            kappa,
            delta,
            epsilon,
        })
    }

    pub(crate) fn validate(&self) -> Result<()> {
        Self::new(self.kappa, self.delta, self.epsilon).map(|_| ())
    }
}

/// Parameters of the multi-budget pruner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderParams {
    pub kappa_min: f64,
    pub kappa_max: f64,
    /// Ladder ratio, in `(0, 1/2]`.
    pub eta: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl LadderParams {
    pub fn new(kappa_min: f64, kappa_max: f64, eta: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let p = LadderParams {
            kappa_min,
            kappa_max,
            eta,
            delta,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        check_ladder(self.kappa_min, self.kappa_max, self.eta)?;
        positive("delta", self.delta)?;
        positive("epsilon", self.epsilon)
    }

    pub fn at(&self, kappa: f64) -> PruneParams {
        PruneParams {
            kappa,
            delta: self.delta,
            epsilon: self.epsilon,
        }
    }
}

pub(crate) fn check_ladder(kappa_min: f64, kappa_max: f64, eta: f64) -> Result<()> {
    positive("kappa_min", kappa_min)?;
    positive("kappa_max", kappa_max)?;
    if kappa_min > kappa_max {
        return Err(Error::input(format!(
            "kappa_min = {kappa_min} exceeds kappa_max = {kappa_max}"
        )));
    }
    if !(eta > 0.0 && eta <= 0.5) {
        return Err(Error::input(format!("eta = {eta} must lie in (0, 1/2]")));
    }
    Ok(())
}
