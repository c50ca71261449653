//! Monte Carlo estimates of the consensus basin φ(Q⁰): the probability that
//! a uniformly random initial profile ends in consensus.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dynamics::{random_profile, run, Outcome, RunParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_key, stream, TRIAL_DOMAIN};

/// Histogram key for one trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutcomeClass {
    Equilibrium { clusters: usize },
    Cycle { period: usize },
    Timeout,
}

impl OutcomeClass {
    pub fn of(o: &Outcome) -> OutcomeClass {
        match o {
            Outcome::Equilibrium { partition, .. } => OutcomeClass::Equilibrium {
                clusters: partition.num_parts(),
            },
            Outcome::Cycle { period, .. } => OutcomeClass::Cycle { period: *period },
            Outcome::Timeout { .. } => OutcomeClass::Timeout,
        }
    }
}

impl std::fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OutcomeClass::Equilibrium { clusters } => write!(f, "equilibrium_{clusters}"),
            OutcomeClass::Cycle { period } => write!(f, "cycle_{period}"),
            OutcomeClass::Timeout => f.write_str("timeout"),
        }
    }
}

impl Serialize for OutcomeClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramBin {
    pub outcome: OutcomeClass,
    pub count: usize,
    pub frequency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasinEstimate {
    pub trials: usize,
    pub strategies: usize,
    pub consensus_fraction: f64,
    /// Binomial standard error sqrt(φ(1-φ)/trials).
    pub stderr: f64,
    /// Sorted by outcome class; frequencies sum to 1.
    pub histogram: Vec<HistogramBin>,
    pub deterministic_cycles: usize,
    pub statistical_cycles: usize,
    /// Largest false-positive bound among statistical cycle reports.
    pub max_false_positive_bound: Option<f64>,
    pub components: usize,
    /// Set when the graph is disconnected: consensus then needs every
    /// component to agree independently.
    pub disconnected: bool,
    /// 1/c^(r-1) for r components and c strategies: the chance that r
    /// independent uniform consensus labels coincide.
    pub independent_labels_prediction: f64,
    /// 1/r^(c-1), the alternative closed form for the same quantity.
    pub components_power_prediction: f64,
}

/// Runs `trials` trajectories on `g`, each from a uniform random profile
/// over `c` strategies. Trial `t` draws everything from the stream keyed by
/// `(seed, graph_key, t)`, so results do not depend on the thread count.
pub fn trial_outcomes(
    g: &Graph,
    graph_key: u64,
    trials: usize,
    c: usize,
    params: &RunParams,
    seed: u64,
) -> Result<Vec<Outcome>> {
    if c == 0 {
        return Err(Error::InvalidArgument("strategy count must be at least 1".into()));
    }
    params.validate()?;
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(derive_key(seed, TRIAL_DOMAIN, &[graph_key, t as u64]));
            let u0 = random_profile(g, c, &mut rng)?;
            run(g, &u0, params, &mut rng)
        })
        .collect()
}

/// Aggregates outcomes into a [`BasinEstimate`].
pub fn summarize_outcomes(g: &Graph, c: usize, outcomes: &[Outcome]) -> BasinEstimate {
    let trials = outcomes.len();
    let mut counts: std::collections::BTreeMap<OutcomeClass, usize> = Default::default();
    let (mut det, mut stat) = (0, 0);
    let mut max_bound: Option<f64> = None;
    for o in outcomes {
        *counts.entry(OutcomeClass::of(o)).or_default() += 1;
        if let Outcome::Cycle {
            deterministic,
            false_positive_bound,
            ..
        } = o
        {
            if *deterministic {
                det += 1;
            } else {
                stat += 1;
            }
            if let Some(b) = false_positive_bound {
                max_bound = Some(max_bound.map_or(*b, |m: f64| m.max(*b)));
            }
        }
    }
    let consensus = outcomes.iter().filter(|o| o.is_consensus()).count();
    let phi = consensus as f64 / trials as f64;
    let r = g.connected_components().len();
    BasinEstimate {
        trials,
        strategies: c,
        consensus_fraction: phi,
        stderr: (phi * (1.0 - phi) / trials as f64).sqrt(),
        histogram: counts
            .into_iter()
            .map(|(outcome, count)| HistogramBin {
                outcome,
                count,
                frequency: count as f64 / trials as f64,
            })
            .collect(),
        deterministic_cycles: det,
        statistical_cycles: stat,
        max_false_positive_bound: max_bound,
        components: r,
        disconnected: r > 1,
        independent_labels_prediction: (c as f64).powi(1 - r as i32),
        components_power_prediction: (r as f64).powi(1 - c as i32),
    }
}

pub fn estimate_basin(g: &Graph, trials: usize, c: usize, params: &RunParams, seed: u64) -> Result<BasinEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let outcomes = trial_outcomes(g, 0, trials, c, params, seed)?;
    Ok(summarize_outcomes(g, c, &outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn k2_halves() {
        let est = estimate_basin(&path(2).unwrap(), 4000, 2, &RunParams::default(), 11).unwrap();
        assert!((est.consensus_fraction - 0.5).abs() < 3.0 * 0.5 / (4000f64).sqrt());
        let total: f64 = est.histogram.iter().map(|b| b.frequency).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let labels: Vec<String> = est.histogram.iter().map(|b| b.outcome.to_string()).collect();
        assert_eq!(labels, vec!["equilibrium_1", "cycle_2"]);
        assert_eq!(est.statistical_cycles, 0);
        assert!(!est.disconnected);
    }

    #[test]
    fn deterministic_and_validated() {
        let g = complete(5).unwrap();
        let p = RunParams::default();
        let a = estimate_basin(&g, 300, 3, &p, 9).unwrap();
        let b = estimate_basin(&g, 300, 3, &p, 9).unwrap();
        assert_eq!(a, b);
        assert!(estimate_basin(&g, 0, 3, &p, 9).is_err());
        assert!(estimate_basin(&g, 10, 0, &p, 9).is_err());
    }

    #[test]
    fn disconnected_predictions() {
        let g = complete(3).unwrap().disjoint_union(&complete(3).unwrap());
        let est = estimate_basin(&g, 10, 3, &RunParams::default(), 1).unwrap();
        assert!(est.disconnected);
        assert_eq!(est.components, 2);
        assert!((est.independent_labels_prediction - 1.0 / 3.0).abs() < 1e-15);
        assert!((est.components_power_prediction - 0.25).abs() < 1e-15);
    }
}
