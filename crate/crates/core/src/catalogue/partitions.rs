//! Labeled partitions, candidate enumeration, pendant expansion and
//! partition isomorphism.

use serde::{Deserialize, Serialize};

use super::canon::is_isomorphic;
use crate::equilibria::{labels_are_nash, VertexPartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Per-vertex part labels `1..=d` (the "vector view", e.g. `[1,1,1,2,2]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabeledPartition(Vec<usize>);

impl LabeledPartition {
    /// Accepts any labeling whose label set is exactly `1..=d`.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let d = labels.iter().copied().max().unwrap_or(0);
        let mut used = vec![false; d + 1];
        for &l in &labels {
            if l == 0 {
                return Err(Error::MalformedPartition("labels start at 1".into()));
            }
            used[l] = true;
        }
        if labels.is_empty() || used[1..].iter().any(|&u| !u) {
            return Err(Error::MalformedPartition(format!(
                "labels {labels:?} do not form a contiguous range 1..d"
            )));
        }
        Ok(LabeledPartition(labels))
    }

    /// Labels in first-seen vertex order: vertex 0 gets label 1, the next
    /// vertex outside part 1 gets label 2, and so on.
    pub fn from_partition(q: &VertexPartition) -> Self {
        let mut map = vec![0usize; q.num_parts()];
        let mut next = 0;
        let labels = (0..q.order())
            .map(|v| {
                let p = q.part_of(v);
                if map[p] == 0 {
                    next += 1;
                    map[p] = next;
                }
                map[p]
            })
            .collect();
        LabeledPartition(labels)
    }

    pub fn trivial(order: usize) -> Self {
        LabeledPartition(vec![1; order])
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn num_parts(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `sizes[l - 1]` is the size of part `l`.
    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_parts()];
        for &l in &self.0 {
            sizes[l - 1] += 1;
        }
        sizes
    }

    pub(crate) fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|l| l - 1).collect()
    }

    /// Renames label `l` to `perm[l - 1] + 1`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        LabeledPartition(self.0.iter().map(|&l| perm[l - 1] + 1).collect())
    }

    /// Same blocks, labels reassigned in first-seen vertex order.
    pub fn normalized(&self) -> Self {
        Self::from_partition(&self.to_partition())
    }

    pub fn to_partition(&self) -> VertexPartition {
        VertexPartition::from_labels(&self.0)
    }

    fn part_sets(&self) -> Vec<VertexSet> {
        let mut sets = vec![VertexSet::new(self.order()); self.num_parts()];
        for (v, &l) in self.0.iter().enumerate() {
            sets[l - 1].insert(v);
        }
        sets
    }
}

/// Restricted growth strings of a fixed length, in lexicographic order.
/// Each set partition of `0..n` appears exactly once, labeled in first-seen
/// vertex order.
struct GrowthStrings {
    current: Option<Vec<usize>>,
}

impl GrowthStrings {
    fn new(n: usize) -> Self {
        GrowthStrings {
            current: Some(vec![0; n]),
        }
    }
}

impl Iterator for GrowthStrings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut a = out.clone();
        // prefix_max[i] = max(a[0..i])
        let mut prefix_max = vec![0usize; a.len()];
        for i in 1..a.len() {
            prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
        }
        for i in (1..a.len()).rev() {
            if a[i] <= prefix_max[i] {
                a[i] += 1;
                for x in &mut a[i + 1..] {
                    *x = 0;
                }
                self.current = Some(a);
                break;
            }
        }
        Some(out)
    }
}

/// All set partitions of `0..n` as labeled partitions (B(n) of them).
pub fn all_partitions(n: usize) -> impl Iterator<Item = LabeledPartition> {
    GrowthStrings::new(n).map(|a| LabeledPartition(a.into_iter().map(|x| x + 1).collect()))
}

/// The trivial partition followed by every partition whose parts all have at
/// least two vertices and induce connected subgraphs. Partitions with a
/// singleton part cannot be equilibria of a connected graph, and a
/// disconnected equilibrium part always refines into connected ones, so
/// nothing is lost.
pub fn candidate_partitions(g: &Graph) -> impl Iterator<Item = LabeledPartition> + '_ {
    all_partitions(g.order()).filter(move |p| {
        p.num_parts() == 1
            || (p.part_sizes().iter().all(|&s| s >= 2)
                && p.part_sets().iter().all(|s| g.induces_connected(s)))
    })
}

/// Attaches `label(v)` new pendant vertices to each vertex `v`. The new
/// vertices are numbered after the original ones, grouped by host in
/// vertex order.
pub fn expand(g: &Graph, p: &LabeledPartition) -> Graph {
    assert_eq!(g.order(), p.order(), "partition does not match graph order");
    let n = g.order();
    let mut edges = g.edge_list();
    let mut next = n;
    for (v, &l) in p.labels().iter().enumerate() {
        for _ in 0..l {
            edges.push((v, next));
            next += 1;
        }
    }
    Graph::from_edges(next, &edges).expect("expansion edges are in range")
}

/// Whether some label permutation π makes `expand(g, p1)` and
/// `expand(g, π·p2)` isomorphic. Only permutations sending each part of `p2`
/// to a part of `p1` of equal size are tried.
pub fn partitions_isomorphic(g: &Graph, p1: &LabeledPartition, p2: &LabeledPartition) -> bool {
    let (s1, s2) = (p1.part_sizes(), p2.part_sizes());
    let mut a = s1.clone();
    let mut b = s2.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return false;
    }
    let target = expand(g, p1);
    let mut perm = vec![usize::MAX; s2.len()];
    let mut used = vec![false; s1.len()];
    search_relabelings(0, &s1, &s2, &mut perm, &mut used, &mut |perm| {
        is_isomorphic(&target, &expand(g, &p2.relabeled(perm)))
    })
}

fn search_relabelings(
    l: usize,
    s1: &[usize],
    s2: &[usize],
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if l == s2.len() {
        return found(perm);
    }
    for t in 0..s1.len() {
        if !used[t] && s1[t] == s2[l] {
            used[t] = true;
            perm[l] = t;
            if search_relabelings(l + 1, s1, s2, perm, used, found) {
                return true;
            }
            used[t] = false;
        }
    }
    false
}

/// Equilibrium partitions of `g`, one per isomorphism class, trivial first.
pub fn enumerate_equilibrium_partitions(g: &Graph) -> Vec<LabeledPartition> {
    let mut reps: Vec<LabeledPartition> = Vec::new();
    for p in candidate_partitions(g) {
        if !labels_are_nash(g, &p.zero_based(), p.num_parts()) {
            continue;
        }
        if !reps.iter().any(|r| partitions_isomorphic(g, r, &p)) {
            reps.push(p);
        }
    }
    reps
}
