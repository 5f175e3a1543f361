//! Numeric extremization of tripartite information: over local doubly
//! stochastic channels on binary variables, and over local measurements on
//! small quantum networks.

mod channels;
mod network;
mod simplex;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use channels::{extremize_under_local_channels, fold_angle, mixed_tripartite};
pub use network::{i_min_network, network_objective, NetworkFamily};

use crate::shannon::Bits;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub xtol: f64,
    pub ftol: f64,
    /// Points per axis of the coarse channel grid.
    pub grid_resolution: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            seed: 0,
            max_iterations: 2000,
            xtol: 1e-10,
            ftol: 1e-13,
            grid_resolution: 33,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be at least 1".into()));
        }
        if self.grid_resolution < 2 {
            return Err(Error::InvalidParameter("grid resolution must be at least 2".into()));
        }
        if !(self.xtol > 0.0 && self.ftol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn simplex(&self, step: f64) -> simplex::SimplexOptions {
        simplex::SimplexOptions {
            max_iterations: self.max_iterations,
            xtol: self.xtol,
            ftol: self.ftol,
            step,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Max,
    Min,
}

impl Direction {
    /// Sign that turns the objective into one to minimise.
    fn sign(self) -> f64 {
        match self {
            Direction::Max => -1.0,
            Direction::Min => 1.0,
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "max" => Ok(Direction::Max),
            "min" => Ok(Direction::Min),
            _ => Err(Error::InvalidParameter(format!("direction must be max or min, got `{s}`"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Max => "max",
            Direction::Min => "min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremumResult {
    pub value: Bits,
    pub argument: Vec<f64>,
    /// Best value reached by each restart, in restart order.
    pub trace: Vec<f64>,
}

impl ExtremumResult {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// `-I_min`: how much tripartite information the network can add.
pub fn delta_indicator(result: &ExtremumResult) -> Bits {
    Bits(-result.value.value())
}

/// Picks the best of per-restart results in restart order; ties keep the
/// earliest restart.
fn reduce(results: Vec<(Vec<f64>, f64)>, direction: Direction) -> (Vec<f64>, f64, Vec<f64>) {
    let trace: Vec<f64> = results.iter().map(|(_, v)| *v).collect();
    let mut best = 0;
    for (i, v) in trace.iter().enumerate() {
        if direction.sign() * v < direction.sign() * trace[best] {
            best = i;
        }
    }
    let (arg, val) = results.into_iter().nth(best).expect("at least one restart");
    (arg, val, trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        OptimizerConfig::default().validate().unwrap();
        let bad = OptimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn delta_negates() {
        let r = ExtremumResult {
            value: Bits(-0.25),
            argument: vec![],
            trace: vec![],
        };
        assert_eq!(delta_indicator(&r).value(), 0.25);
    }

    #[test]
    fn reduce_keeps_first_of_ties() {
        let (arg, v, trace) = reduce(vec![(vec![1.0], 2.0), (vec![2.0], 1.0), (vec![3.0], 1.0)], Direction::Min);
        assert_eq!((arg, v, trace.len()), (vec![2.0], 1.0, 3));
        let (arg, _, _) = reduce(vec![(vec![1.0], 2.0), (vec![2.0], 2.0)], Direction::Max);
        assert_eq!(arg, vec![1.0]);
    }
}
