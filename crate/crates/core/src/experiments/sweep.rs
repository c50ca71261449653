//! Parameter sweeps over Erdős–Rényi graphs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::basin::trial_outcomes;
use crate::dynamics::{Outcome, RunParams};
use crate::error::{Error, Result};
use crate::graph::er_gnp_with;
use crate::rng::{derive_key, stream, GRAPH_DOMAIN};

/// What the per-order grid values mean.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "axis", content = "values")]
pub enum SweepAxis {
    /// Edge probability p directly.
    EdgeDensity(Vec<f64>),
    /// Expected mean degree d, i.e. p = d / (n − 1).
    MeanDegree(Vec<f64>),
}

impl SweepAxis {
    pub fn values(&self) -> &[f64] {
        match self {
            SweepAxis::EdgeDensity(v) | SweepAxis::MeanDegree(v) => v,
        }
    }

    fn probability(&self, n: usize, value: f64) -> Result<f64> {
        let p = match self {
            SweepAxis::EdgeDensity(_) => value,
            SweepAxis::MeanDegree(_) if n < 2 => {
                return Err(Error::InvalidArgument("mean-degree grids need order ≥ 2".into()))
            }
            SweepAxis::MeanDegree(_) => value / (n - 1) as f64,
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub orders: Vec<usize>,
    pub axis: SweepAxis,
    pub graphs_per_cell: usize,
    pub trials_per_graph: usize,
    /// Strategies in the initial profile; `None` uses the graph order.
    pub strategies: Option<usize>,
    pub params: RunParams,
    pub seed: u64,
    /// Resample disconnected graphs (up to `max_attempts` draws per slot;
    /// slots that never yield a connected graph are left out).
    pub connected_only: bool,
    pub max_attempts: usize,
}

impl SweepConfig {
    pub fn new(orders: Vec<usize>, axis: SweepAxis, graphs_per_cell: usize, trials_per_graph: usize, seed: u64) -> Self {
        SweepConfig {
            orders,
            axis,
            graphs_per_cell,
            trials_per_graph,
            strategies: None,
            params: RunParams::default(),
            seed,
            connected_only: false,
            max_attempts: 100,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.graphs_per_cell == 0 || self.trials_per_graph == 0 {
            return Err(Error::InvalidArgument("graph and trial counts must be at least 1".into()));
        }
        if self.strategies == Some(0) {
            return Err(Error::InvalidArgument("strategy count must be at least 1".into()));
        }
        if self.max_attempts == 0 {
            return Err(Error::InvalidArgument("max_attempts must be at least 1".into()));
        }
        if let Some(&n) = self.orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidOrder { min: 1, got: n });
        }
        self.params.validate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeTag {
    Equilibrium,
    CycleDeterministic,
    CycleStatistical,
    Timeout,
}

impl OutcomeTag {
    pub fn of(o: &Outcome) -> OutcomeTag {
        match o {
            Outcome::Equilibrium { .. } => OutcomeTag::Equilibrium,
            Outcome::Cycle { deterministic: true, .. } => OutcomeTag::CycleDeterministic,
            Outcome::Cycle { .. } => OutcomeTag::CycleStatistical,
            Outcome::Timeout { .. } => OutcomeTag::Timeout,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeTag::Equilibrium => "equilibrium",
            OutcomeTag::CycleDeterministic => "cycle_deterministic",
            OutcomeTag::CycleStatistical => "cycle_statistical",
            OutcomeTag::Timeout => "timeout",
        }
    }
}

/// One trajectory of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    /// Key of the graph's sampling stream; identifies the graph.
    pub graph_seed: u64,
    pub n: usize,
    pub edges: usize,
    pub edge_density: f64,
    pub mean_degree: f64,
    pub trial: usize,
    pub outcome: OutcomeTag,
    /// Parts at equilibrium, 0 otherwise.
    pub cluster_number: usize,
    pub steps: usize,
    /// Cycle period, 0 otherwise.
    pub period: usize,
    /// Grid value of the cell this graph was drawn for.
    #[serde(skip)]
    pub cell_value: f64,
    #[serde(skip)]
    pub false_positive_bound: Option<f64>,
}

impl SweepRecord {
    pub fn is_consensus(&self) -> bool {
        self.cluster_number == 1
    }
}

struct Job {
    n: usize,
    cell: usize,
    value: f64,
    p: f64,
    slot: usize,
}

/// Samples `graphs_per_cell` graphs for every (order, grid value) cell and
/// runs `trials_per_graph` trajectories on each.
///
/// Graph slot `s` of cell `(n, j)` draws attempt `a` from the stream keyed
/// by `(seed, n, j, s, a)`; trials follow [`trial_outcomes`]. Records come
/// out ordered by order, cell, slot and trial regardless of thread count.
pub fn basin_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for &n in &cfg.orders {
        for (cell, &value) in cfg.axis.values().iter().enumerate() {
            let p = cfg.axis.probability(n, value)?;
            for slot in 0..cfg.graphs_per_cell {
                jobs.push(Job { n, cell, value, p, slot });
            }
        }
    }
    let per_job: Vec<Vec<SweepRecord>> = jobs
        .par_iter()
        .map(|job| run_job(cfg, job))
        .collect::<Result<_>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

fn run_job(cfg: &SweepConfig, job: &Job) -> Result<Vec<SweepRecord>> {
    let mut sampled = None;
    for attempt in 0..cfg.max_attempts {
        let key = derive_key(
            cfg.seed,
            GRAPH_DOMAIN,
            &[job.n as u64, job.cell as u64, job.slot as u64, attempt as u64],
        );
        let g = er_gnp_with(job.n, job.p, &mut stream(key))?;
        if !cfg.connected_only || g.is_connected() {
            sampled = Some((key, g));
            break;
        }
    }
    let Some((key, g)) = sampled else {
        return Ok(Vec::new());
    };
    let c = cfg.strategies.unwrap_or(job.n);
    let outcomes = trial_outcomes(&g, key, cfg.trials_per_graph, c, &cfg.params, cfg.seed)?;
    let density = if job.n >= 2 { g.edge_density()? } else { 0.0 };
    Ok(outcomes
        .iter()
        .enumerate()
        .map(|(trial, o)| SweepRecord {
            graph_seed: key,
            n: job.n,
            edges: g.edge_count(),
            edge_density: density,
            mean_degree: g.mean_degree(),
            trial,
            outcome: OutcomeTag::of(o),
            cluster_number: o.cluster_number(),
            steps: o.steps(),
            period: o.period().unwrap_or(0),
            cell_value: job.value,
            false_positive_bound: match o {
                Outcome::Cycle { false_positive_bound, .. } => *false_positive_bound,
                _ => None,
            },
        })
        .collect())
}

/// Cycle counts by period, split by how they were established.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CycleCensus {
    pub deterministic: BTreeMap<usize, usize>,
    pub statistical: BTreeMap<usize, usize>,
    pub max_false_positive_bound: Option<f64>,
    pub timeouts: usize,
}

pub fn cycle_census(records: &[SweepRecord]) -> CycleCensus {
    let mut c = CycleCensus::default();
    for r in records {
        match r.outcome {
            OutcomeTag::CycleDeterministic => *c.deterministic.entry(r.period).or_default() += 1,
            OutcomeTag::CycleStatistical => *c.statistical.entry(r.period).or_default() += 1,
            OutcomeTag::Timeout => c.timeouts += 1,
            OutcomeTag::Equilibrium => {}
        }
        if let Some(b) = r.false_positive_bound {
            c.max_false_positive_bound = Some(c.max_false_positive_bound.map_or(b, |m| m.max(b)));
        }
    }
    c
}

/// Consensus fraction of each graph, in record order: (graph_seed, n,
/// edge density, mean degree, cell value, φ).
pub fn per_graph_consensus(records: &[SweepRecord]) -> Vec<GraphConsensus> {
    let mut out: Vec<GraphConsensus> = Vec::new();
    for r in records {
        match out.last_mut() {
            Some(g) if g.graph_seed == r.graph_seed => {
                g.trials += 1;
                g.consensus += r.is_consensus() as usize;
            }
            _ => out.push(GraphConsensus {
                graph_seed: r.graph_seed,
                n: r.n,
                edge_density: r.edge_density,
                mean_degree: r.mean_degree,
                cell_value: r.cell_value,
                trials: 1,
                consensus: r.is_consensus() as usize,
            }),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphConsensus {
    pub graph_seed: u64,
    pub n: usize,
    pub edge_density: f64,
    pub mean_degree: f64,
    pub cell_value: f64,
    pub trials: usize,
    pub consensus: usize,
}

impl GraphConsensus {
    pub fn fraction(&self) -> f64 {
        self.consensus as f64 / self.trials as f64
    }
}
