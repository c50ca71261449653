//! Vertex partitions and the partition-level Nash condition.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Serialize, Serializer};

use crate::catalogue;
use crate::dynamics::StrategyProfile;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A partition of `0..order` into nonempty parts.
///
/// Parts are kept in canonical order: size descending, then smallest member
/// ascending. Two partitions with the same blocks compare equal regardless of
/// how they were built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    parts: Vec<VertexSet>,
    part_of: Vec<usize>,
}

impl VertexPartition {
    /// Groups vertices by equal label. Any label type works; only equality matters.
    pub fn from_labels<L: Eq + Hash>(labels: &[L]) -> VertexPartition {
        let n = labels.len();
        let mut index: HashMap<&L, usize> = HashMap::new();
        let mut parts: Vec<VertexSet> = Vec::new();
        for (v, l) in labels.iter().enumerate() {
            let i = *index.entry(l).or_insert_with(|| {
                parts.push(VertexSet::new(n));
                parts.len() - 1
            });
            parts[i].insert(v);
        }
        Self::canonical(n, parts)
    }

    /// Validates and canonicalizes explicit blocks.
    pub fn from_parts(order: usize, parts: &[Vec<usize>]) -> Result<VertexPartition> {
        let mut seen = VertexSet::new(order);
        let mut sets = Vec::with_capacity(parts.len());
        for p in parts {
            if p.is_empty() {
                return Err(Error::MalformedPartition("empty part".into()));
            }
            let mut s = VertexSet::new(order);
            for &v in p {
                if v >= order {
                    return Err(Error::VertexOutOfRange { vertex: v, order });
                }
                if seen.contains(v) {
                    return Err(Error::MalformedPartition(format!("vertex {v} appears twice")));
                }
                seen.insert(v);
                s.insert(v);
            }
            sets.push(s);
        }
        if seen.len() != order {
            return Err(Error::MalformedPartition(format!(
                "parts cover {} of {order} vertices",
                seen.len()
            )));
        }
        Ok(Self::canonical(order, sets))
    }

    /// The one-part (consensus) partition.
    pub fn trivial(order: usize) -> VertexPartition {
        Self::canonical(order, vec![VertexSet::full(order)])
    }

    fn canonical(order: usize, mut parts: Vec<VertexSet>) -> VertexPartition {
        parts.retain(|p| !p.is_empty());
        parts.sort_by_key(|p| (std::cmp::Reverse(p.len()), p.min()));
        let mut part_of = vec![0; order];
        for (i, p) in parts.iter().enumerate() {
            for v in p.iter() {
                part_of[v] = i;
            }
        }
        VertexPartition { parts, part_of }
    }

    pub fn order(&self) -> usize {
        self.part_of.len()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// Index (into [`parts`](Self::parts)) of the part holding `v`.
    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn part_indices(&self) -> &[usize] {
        &self.part_of
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    /// Blocks as sorted vertex lists, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(VertexSet::to_vec).collect()
    }
}

impl Serialize for VertexPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

/// Partition induced by a strategy profile: one part per strategy in use.
pub fn profile_to_partition(u: &StrategyProfile) -> VertexPartition {
    VertexPartition::from_labels(u.as_slice())
}

/// Nash check on a raw per-vertex part index (any integer labels below `bound`).
///
/// Only parts touching the neighborhood of `v` are tallied; every other part
/// scores 0, which never beats the own-part score.
pub(crate) fn labels_are_nash(g: &Graph, labels: &[usize], bound: usize) -> bool {
    let mut counts = vec![0u32; bound];
    let mut touched: Vec<usize> = Vec::new();
    for v in 0..g.order() {
        for &x in g.adjacent(v) {
            let l = labels[x];
            if counts[l] == 0 {
                touched.push(l);
            }
            counts[l] += 1;
        }
        let own = counts[labels[v]];
        let ok = touched.iter().all(|&l| counts[l] <= own);
        for &l in &touched {
            counts[l] = 0;
        }
        touched.clear();
        if !ok {
            return false;
        }
    }
    true
}

/// True iff no vertex has strictly more neighbors in another part than in its own.
pub fn is_equilibrium(g: &Graph, q: &VertexPartition) -> Result<bool> {
    if q.order() != g.order() {
        return Err(Error::MalformedPartition(format!(
            "partition of {} vertices applied to graph of order {}",
            q.order(),
            g.order()
        )));
    }
    Ok(labels_are_nash(g, q.part_indices(), q.num_parts()))
}

/// Splits every part into the connected components of the subgraph it induces.
pub fn refine_to_connected(g: &Graph, q: &VertexPartition) -> VertexPartition {
    let parts = q
        .parts()
        .iter()
        .flat_map(|p| g.induced_components(p))
        .collect();
    VertexPartition::canonical(q.order(), parts)
}

pub fn has_singleton_part(q: &VertexPartition) -> bool {
    q.parts().iter().any(|p| p.len() == 1)
}

/// A graph is indecomposable when the trivial partition is its only
/// equilibrium partition. Disconnected graphs are always decomposable.
pub fn is_indecomposable(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    catalogue::candidate_partitions(g)
        .filter(|p| p.num_parts() > 1)
        .all(|p| !labels_are_nash(g, &p.zero_based(), p.num_parts()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, path};

    fn part(n: usize, blocks: &[&[usize]]) -> VertexPartition {
        let v: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        VertexPartition::from_parts(n, &v).unwrap()
    }

    #[test]
    fn profile_examples() {
        let q = profile_to_partition(&StrategyProfile::new(vec![0, 0, 0]));
        assert!(q.is_trivial());
        let q = profile_to_partition(&StrategyProfile::new(vec![0, 1, 0, 1]));
        assert_eq!(q.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(
            profile_to_partition(&StrategyProfile::new(vec![1, 1, 0])),
            profile_to_partition(&StrategyProfile::new(vec![0, 0, 1]))
        );
        // Unused strategy ids leave no empty parts.
        let q = profile_to_partition(&StrategyProfile::new(vec![7, 3, 7]));
        assert_eq!(q.num_parts(), 2);
        assert_eq!(q.blocks(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn malformed_partitions() {
        assert!(VertexPartition::from_parts(3, &[vec![0, 1]]).is_err());
        assert!(VertexPartition::from_parts(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::from_parts(3, &[vec![0, 1, 2], vec![]]).is_err());
        assert!(VertexPartition::from_parts(3, &[vec![0, 1, 5]]).is_err());
        let q = part(3, &[&[0, 1, 2]]);
        assert!(is_equilibrium(&complete(4).unwrap(), &q).is_err());
    }

    #[test]
    fn equilibrium_examples() {
        let c4 = cycle(4).unwrap();
        assert!(is_equilibrium(&c4, &part(4, &[&[0, 1], &[2, 3]])).unwrap());
        let k4 = complete(4).unwrap();
        for q in [
            part(4, &[&[0, 1], &[2, 3]]),
            part(4, &[&[0, 2], &[1, 3]]),
            part(4, &[&[0, 3], &[1, 2]]),
        ] {
            assert!(!is_equilibrium(&k4, &q).unwrap());
        }
        for g in [c4, k4, path(5).unwrap()] {
            assert!(is_equilibrium(&g, &VertexPartition::trivial(g.order())).unwrap());
        }
    }

    #[test]
    fn refinement_examples() {
        let p4 = path(4).unwrap();
        let q = refine_to_connected(&p4, &part(4, &[&[0, 3], &[1, 2]]));
        assert_eq!(q, part(4, &[&[0], &[3], &[1, 2]]));
        let connected = part(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(refine_to_connected(&p4, &connected), connected);
    }

    #[test]
    fn singleton_examples() {
        assert!(has_singleton_part(&part(3, &[&[0], &[1, 2]])));
        assert!(!has_singleton_part(&VertexPartition::trivial(3)));
        assert!(has_singleton_part(&part(3, &[&[0], &[1], &[2]])));
    }

    #[test]
    fn indecomposable_examples() {
        for n in 2..=7 {
            assert!(is_indecomposable(&complete(n).unwrap()), "K_{n}");
        }
        assert!(is_indecomposable(&complete_bipartite(2, 3).unwrap().graph));
        assert!(!is_indecomposable(&cycle(4).unwrap()));
        let two_triangles = complete(3).unwrap().disjoint_union(&complete(3).unwrap());
        assert!(!is_indecomposable(&two_triangles));
    }
}
