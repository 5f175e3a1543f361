use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::simplex::nelder_mead;
use super::{reduce, Direction, ExtremumResult, OptimizerConfig};
use crate::probtab::Channel;
use crate::quantum::{
    born_distribution, canonical_tripartite_state, random_chain_spec, tripartite_spec, CanonicalFamily,
    MeasurementSet, NetworkSpec,
};
use crate::shannon::{tripartite_of, Bits};
use crate::{Error, Result};

/// Tripartite networks whose measurements can be optimised.
#[derive(Debug, Clone, PartialEq)]
pub enum NetworkFamily {
    /// One three-qubit canonical state shared by `X`, `Y`, `Z`.
    Canonical { family: CanonicalFamily, params: Vec<f64> },
    /// A random two-source chain drawn from `seed`.
    Chain { seed: u64 },
    /// Any three-party network.
    Custom(NetworkSpec),
}

impl NetworkFamily {
    pub fn spec(&self) -> Result<NetworkSpec> {
        let spec = match self {
            NetworkFamily::Canonical { family, params } => {
                let state = canonical_tripartite_state(*family, params)?;
                tripartite_spec(&state, std::array::from_fn(|_| MeasurementSet::computational(vec![2])))?
            }
            NetworkFamily::Chain { seed } => random_chain_spec(&mut ChaCha8Rng::seed_from_u64(*seed)),
            NetworkFamily::Custom(spec) => spec.clone(),
        };
        if spec.parties().len() != 3 {
            return Err(Error::NotApplicable(format!(
                "tripartite information needs three parties, found {}",
                spec.parties().len()
            )));
        }
        Ok(spec)
    }
}

/// Per party: a qubit party has `[theta, phi, gamma]` (projective basis then a
/// binary mixer); any other party keeps its measurement and has `[gamma]`,
/// mixing its outcome with the uniform distribution by `sin^2 gamma`.
fn layout(spec: &NetworkSpec) -> Vec<bool> {
    spec.parties().iter().map(|p| p.measurement.dim() == 2).collect()
}

fn param_len(qubit: &[bool]) -> usize {
    qubit.iter().map(|&q| if q { 3 } else { 1 }).sum()
}

fn uniform_mixer(n: usize, gamma: f64) -> Result<Channel> {
    let (c, s) = (gamma.cos().powi(2), gamma.sin().powi(2));
    let rows = (0..n)
        .map(|i| (0..n).map(|j| s / n as f64 + if i == j { c } else { 0.0 }).collect())
        .collect();
    Channel::new(rows)
}

/// Tripartite information of `spec` with measurements and post-channels set
/// from `args` (layout described on the parameter vector above).
pub fn network_objective(spec: &NetworkSpec, args: &[f64]) -> Result<f64> {
    let qubit = layout(spec);
    if args.len() != param_len(&qubit) {
        return Err(Error::InvalidParameter(format!(
            "expected {} measurement parameters, got {}",
            param_len(&qubit),
            args.len()
        )));
    }
    let mut spec = spec.clone();
    let mut posts = Vec::new();
    let mut k = 0;
    for (i, &q) in qubit.iter().enumerate() {
        if q {
            spec = spec.with_measurement(i, MeasurementSet::qubit_basis(args[k], args[k + 1]))?;
            posts.push(Channel::binary_mixer(args[k + 2]));
            k += 3;
        } else {
            posts.push(uniform_mixer(spec.parties()[i].measurement.outcomes(), args[k])?);
            k += 1;
        }
    }
    let mut p = born_distribution(&spec)?;
    for (party, ch) in spec.parties().iter().zip(&posts) {
        p = p.apply_channel(&party.name, ch)?;
    }
    tripartite_of(&p)
}

/// Parameters realising the uniformizing post-processing on every party.
fn uniformizing_args(qubit: &[bool]) -> Vec<f64> {
    qubit
        .iter()
        .flat_map(|&q| if q { vec![0.0, 0.0, FRAC_PI_4] } else { vec![FRAC_PI_2] })
        .collect()
}

fn start(qubit: &[bool], restart: usize, seed: u64) -> Vec<f64> {
    match restart {
        0 => qubit.iter().flat_map(|&q| if q { vec![0.0; 3] } else { vec![0.0] }).collect(),
        1 => qubit
            .iter()
            .flat_map(|&q| if q { vec![FRAC_PI_2, 0.0, 0.0] } else { vec![0.0] })
            .collect(),
        r => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
            qubit
                .iter()
                .flat_map(|&q| {
                    if q {
                        vec![rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..FRAC_PI_2)]
                    } else {
                        vec![rng.random_range(0.0..FRAC_PI_2)]
                    }
                })
                .collect()
        }
    }
}

/// Minimal tripartite information over local measurements (and local
/// post-processing) of a tripartite network.
///
/// Restart 0 measures in the given/computational bases, restart 1 in the
/// `X` basis, the rest start at seeded random points. The uniformizing
/// post-processing is always evaluated as a candidate, so the result is at
/// most zero.
pub fn i_min_network(family: &NetworkFamily, cfg: &OptimizerConfig) -> Result<ExtremumResult> {
    cfg.validate()?;
    let spec = family.spec()?;
    let qubit = layout(&spec);
    let f = |x: &[f64]| network_objective(&spec, x).unwrap_or(f64::INFINITY);
    let results = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let (x, _) = nelder_mead(f, &start(&qubit, r, cfg.seed), cfg.simplex(0.4));
            let v = network_objective(&spec, &x)?;
            Ok((x, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut argument, mut value, trace) = reduce(results, Direction::Min);
    let t_args = uniformizing_args(&qubit);
    let t_value = network_objective(&spec, &t_args)?;
    if t_value < value {
        (argument, value) = (t_args, t_value);
    }
    Ok(ExtremumResult {
        value: Bits(value),
        argument,
        trace,
    })
}
