//! Synchronous myopic best-response dynamics with ε-inertia.
//!
//! Each step every vertex looks at the pre-step profile. A vertex whose
//! current strategy already earns the maximal payoff keeps it; any other
//! vertex moves to a best response, drawn uniformly when there is more than
//! one. Tie draws consume one 64-bit value each, in vertex-index order.

use std::collections::VecDeque;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::equilibria::{profile_to_partition, VertexPartition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::uniform_index;

pub type Strategy = u32;

pub const DEFAULT_MAX_STEPS: usize = 10_000;
pub const DEFAULT_WINDOW: usize = 34;
pub const DEFAULT_MAX_PERIOD: usize = 8;

/// One strategy per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrategyProfile(Vec<Strategy>);

impl StrategyProfile {
    pub fn new(assignment: Vec<Strategy>) -> Self {
        StrategyProfile(assignment)
    }

    /// Every vertex plays `s`.
    pub fn uniform(order: usize, s: Strategy) -> Self {
        StrategyProfile(vec![s; order])
    }

    pub fn as_slice(&self) -> &[Strategy] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Strategy {
        self.0[v]
    }

    /// One past the largest strategy id in use.
    pub fn strategy_bound(&self) -> usize {
        self.0.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn distinct_count(&self) -> usize {
        profile_to_partition(self).num_parts()
    }

    /// Applies `map[s]` to every strategy `s`.
    pub fn relabeled(&self, map: &[Strategy]) -> StrategyProfile {
        StrategyProfile(self.0.iter().map(|&s| map[s as usize]).collect())
    }
}

impl From<Vec<Strategy>> for StrategyProfile {
    fn from(v: Vec<Strategy>) -> Self {
        StrategyProfile(v)
    }
}

/// w(v, c | u): number of neighbors of `v` playing `c`.
pub fn payoff(g: &Graph, u: &StrategyProfile, v: usize, c: Strategy) -> usize {
    g.adjacent(v).iter().filter(|&&x| u.get(x) == c).count()
}

/// Scratch tallies reused across vertices and steps.
struct Tally {
    counts: Vec<u32>,
    marked: Vec<bool>,
    touched: Vec<Strategy>,
    best: Vec<Strategy>,
}

impl Tally {
    fn new(bound: usize) -> Self {
        Tally {
            counts: vec![0; bound],
            marked: vec![false; bound],
            touched: Vec::new(),
            best: Vec::new(),
        }
    }

    fn bump(&mut self, s: Strategy, by: u32) {
        let i = s as usize;
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(s);
        }
        self.counts[i] += by;
    }

    /// Tallies Γ(v) plus v's own strategy (at weight 0) and returns the maximum.
    fn load(&mut self, g: &Graph, u: &[Strategy], v: usize) -> u32 {
        self.bump(u[v], 0);
        for &x in g.adjacent(v) {
            self.bump(u[x], 1);
        }
        self.touched.iter().map(|&s| self.counts[s as usize]).max().unwrap_or(0)
    }

    /// Ascending argmax, in a buffer reused across calls.
    fn argmax(&mut self, max: u32) -> &[Strategy] {
        self.best.clear();
        let counts = &self.counts;
        self.best.extend(self.touched.iter().copied().filter(|&s| counts[s as usize] == max));
        self.best.sort_unstable();
        &self.best
    }

    fn clear(&mut self) {
        for &s in &self.touched {
            self.counts[s as usize] = 0;
            self.marked[s as usize] = false;
        }
        self.touched.clear();
    }
}

/// Best responses of `v`, ascending. Candidates are the strategies present in
/// Γ(v) together with v's own strategy, so the result is never empty.
pub fn best_response_set(g: &Graph, u: &StrategyProfile, v: usize) -> Vec<Strategy> {
    let mut t = Tally::new(u.strategy_bound());
    let max = t.load(g, u.as_slice(), v);
    t.argmax(max).to_vec()
}

/// Nash condition on a profile: every vertex already plays a best response.
pub fn is_nash(g: &Graph, u: &StrategyProfile) -> bool {
    let mut t = Tally::new(u.strategy_bound());
    nash_with(g, u.as_slice(), &mut t)
}

fn nash_with(g: &Graph, u: &[Strategy], t: &mut Tally) -> bool {
    (0..g.order()).all(|v| {
        let max = t.load(g, u, v);
        let ok = t.counts[u[v] as usize] == max;
        t.clear();
        ok
    })
}

/// Writes the successor of `u` into `out`. Returns true when every vertex
/// kept its strategy, i.e. `u` is a Nash profile; no draws happen then.
fn step_into<R: RngCore + ?Sized>(
    g: &Graph,
    u: &[Strategy],
    out: &mut Vec<Strategy>,
    t: &mut Tally,
    rng: &mut R,
) -> bool {
    out.clear();
    let mut stable = true;
    for v in 0..g.order() {
        let max = t.load(g, u, v);
        let own = u[v];
        let next = if t.counts[own as usize] == max {
            own
        } else {
            stable = false;
            let best = t.argmax(max);
            if best.len() == 1 {
                best[0]
            } else {
                best[uniform_index(rng, best.len())]
            }
        };
        t.clear();
        out.push(next);
    }
    stable
}

/// One synchronous update.
pub fn step<R: RngCore + ?Sized>(g: &Graph, u: &StrategyProfile, rng: &mut R) -> StrategyProfile {
    let mut t = Tally::new(u.strategy_bound());
    let mut out = Vec::with_capacity(u.len());
    step_into(g, u.as_slice(), &mut out, &mut t, rng);
    StrategyProfile(out)
}

/// Each vertex independently uniform over `0..c`.
pub fn random_profile<R: RngCore + ?Sized>(g: &Graph, c: usize, rng: &mut R) -> Result<StrategyProfile> {
    if c == 0 {
        return Err(Error::InvalidArgument("strategy count must be at least 1".into()));
    }
    if c > Strategy::MAX as usize {
        return Err(Error::InvalidArgument(format!("strategy count {c} too large")));
    }
    Ok(StrategyProfile(
        (0..g.order()).map(|_| uniform_index(rng, c) as Strategy).collect(),
    ))
}

/// True iff `states` is a cycle of period ≥ 2 traversed with probability 1:
/// along every transition (including last → first) each vertex that keeps
/// its strategy has it among its best responses, and each vertex that
/// switches has a single best response equal to its next strategy.
///
/// A trailing copy of `states[0]` is accepted and ignored. States within one
/// period must be pairwise distinct.
pub fn verify_cycle(g: &Graph, states: &[StrategyProfile]) -> bool {
    let states = match states {
        [first, rest @ .., last] if !rest.is_empty() || first != last => {
            if first == last {
                &states[..states.len() - 1]
            } else {
                states
            }
        }
        _ => return false,
    };
    let k = states.len();
    if k < 2 || states.iter().any(|s| s.len() != g.order()) {
        return false;
    }
    for i in 0..k {
        if states[i + 1..].contains(&states[i]) {
            return false;
        }
    }
    let bound = states.iter().map(|s| s.strategy_bound()).max().unwrap_or(0);
    let mut t = Tally::new(bound);
    for i in 0..k {
        let (cur, next) = (states[i].as_slice(), states[(i + 1) % k].as_slice());
        for v in 0..g.order() {
            let max = t.load(g, cur, v);
            let forced = if t.counts[cur[v] as usize] == max {
                next[v] == cur[v]
            } else {
                let best = t.argmax(max);
                best.len() == 1 && best[0] == next[v]
            };
            t.clear();
            if !forced {
                return false;
            }
        }
    }
    true
}

/// Limits for [`run`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunParams {
    pub max_steps: usize,
    /// Consecutive repeats u(t) = u(t-k) required before a cycle without a
    /// deterministic proof is reported.
    pub window: usize,
    /// Longest period looked for.
    pub max_period: usize,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            max_steps: DEFAULT_MAX_STEPS,
            window: DEFAULT_WINDOW,
            max_period: DEFAULT_MAX_PERIOD,
        }
    }
}

impl RunParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_steps < 1 {
            return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
        }
        if self.window < 4 {
            return Err(Error::InvalidArgument("window must be at least 4".into()));
        }
        if self.max_period < 2 {
            return Err(Error::InvalidArgument("max_period must be at least 2".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Equilibrium,
    Cycle,
    Timeout,
}

/// Terminal classification of one trajectory.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Equilibrium {
        partition: VertexPartition,
        profile: StrategyProfile,
        steps: usize,
    },
    Cycle {
        period: usize,
        /// Proven by [`verify_cycle`]; otherwise only observed for `window` steps.
        deterministic: bool,
        /// 2^(period - window) for observed cycles, `None` when proven.
        false_positive_bound: Option<f64>,
        steps: usize,
        /// One period of states, oldest first.
        states: Vec<StrategyProfile>,
    },
    Timeout {
        steps: usize,
    },
}

impl Outcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            Outcome::Equilibrium { .. } => OutcomeKind::Equilibrium,
            Outcome::Cycle { .. } => OutcomeKind::Cycle,
            Outcome::Timeout { .. } => OutcomeKind::Timeout,
        }
    }

    pub fn steps(&self) -> usize {
        match *self {
            Outcome::Equilibrium { steps, .. } | Outcome::Cycle { steps, .. } | Outcome::Timeout { steps } => steps,
        }
    }

    /// Parts at equilibrium; 0 for anything that did not converge.
    pub fn cluster_number(&self) -> usize {
        match self {
            Outcome::Equilibrium { partition, .. } => partition.num_parts(),
            _ => 0,
        }
    }

    pub fn period(&self) -> Option<usize> {
        match *self {
            Outcome::Cycle { period, .. } => Some(period),
            _ => None,
        }
    }

    pub fn is_consensus(&self) -> bool {
        self.cluster_number() == 1
    }
}

/// Iterates [`step`] from `u0` until an equilibrium, a cycle or `max_steps`.
///
/// Equilibria are detected by the Nash check on the current profile, which
/// is absorbing under inertia. When u(t) = u(t-k) for some 2 ≤ k ≤
/// `max_period`, the last k states are passed to [`verify_cycle`]; a proof
/// ends the run. Otherwise a cycle of period k is reported once the repeat
/// has held for `window` consecutive steps.
pub fn run<R: RngCore + ?Sized>(
    g: &Graph,
    u0: &StrategyProfile,
    params: &RunParams,
    rng: &mut R,
) -> Result<Outcome> {
    params.validate()?;
    if u0.len() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "profile has {} entries for a graph of order {}",
            u0.len(),
            g.order()
        )));
    }
    let mut t = Tally::new(u0.strategy_bound());
    let mut cur = u0.as_slice().to_vec();

    // history[k - 1] holds u(time - k).
    let mut history: VecDeque<Vec<Strategy>> = VecDeque::with_capacity(params.max_period + 1);
    let mut streak = vec![0usize; params.max_period + 1];
    let mut next = Vec::with_capacity(cur.len());

    let mut time = 0;
    loop {
        // A step that changes nothing is exactly the Nash check.
        if step_into(g, &cur, &mut next, &mut t, rng) {
            return Ok(equilibrium(cur, time));
        }
        if time == params.max_steps {
            return Ok(Outcome::Timeout {
                steps: params.max_steps,
            });
        }
        time += 1;
        let recycled = if history.len() == params.max_period {
            history.pop_back()
        } else {
            None
        };
        history.push_front(std::mem::replace(&mut cur, std::mem::take(&mut next)));
        next = recycled.unwrap_or_default();

        let window = |k: usize| -> Vec<StrategyProfile> {
            (1..=k).rev().map(|j| StrategyProfile(history[j - 1].clone())).collect()
        };
        for k in 2..=history.len() {
            if history[k - 1] != cur {
                streak[k] = 0;
                continue;
            }
            streak[k] += 1;
            // Later windows of the same streak are rotations of this one and
            // verify identically.
            if streak[k] == 1 {
                let states = window(k);
                if verify_cycle(g, &states) {
                    return Ok(Outcome::Cycle {
                        period: k,
                        deterministic: true,
                        false_positive_bound: None,
                        steps: time,
                        states,
                    });
                }
            }
        }
        if let Some(k) = (2..=history.len()).find(|&k| streak[k] >= params.window) {
            return Ok(Outcome::Cycle {
                period: k,
                deterministic: false,
                false_positive_bound: Some(false_positive_bound(k, params.window)),
                steps: time,
                states: window(k),
            });
        }
    }
}

/// Chance that a non-periodic trajectory repeats with period `period` for
/// `window` consecutive steps: 2^(period - window).
pub fn false_positive_bound(period: usize, window: usize) -> f64 {
    2f64.powi(period as i32 - window as i32)
}

fn equilibrium(profile: Vec<Strategy>, steps: usize) -> Outcome {
    let profile = StrategyProfile(profile);
    Outcome::Equilibrium {
        partition: profile_to_partition(&profile),
        profile,
        steps,
    }
}
