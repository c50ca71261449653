//! Connected graphs up to isomorphism by exhaustive edge-subset search.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted; 2^C(n,2) subsets must fit a `u64` counter.
pub const MAX_ENUMERATION_ORDER: usize = 10;

const CHUNK: u64 = 1 << 14;

/// One graph per isomorphism class of connected graphs on `n` vertices,
/// sorted by edge count and then canonical form.
///
/// Every subset of the C(n,2) vertex pairs is visited; connected ones are
/// reduced to their canonical form. Counts for n = 1..=7 are
/// 1, 1, 2, 6, 21, 112, 853. Orders above 7 work but the cost grows as
/// 2^C(n,2).
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidArgument(format!(
            "exhaustive enumeration supports orders 1..={MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total: u64 = 1 << pairs.len();
    let chunks = total.div_ceil(CHUNK);
    let forms: BTreeSet<(usize, CanonicalForm)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = BTreeSet::new();
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                if !mask_connected(n, &pairs, mask) {
                    continue;
                }
                let g = Graph::from_fn(n, |a, b| {
                    let i = pair_index(n, a, b);
                    mask >> i & 1 == 1
                });
                let form = canonical_form(&g);
                local.insert((form.edge_count(), form));
            }
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(forms.into_iter().map(|(_, f)| f.to_graph()).collect())
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    // index of (a, b), a < b, in row-major order of the upper triangle
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    if n == 1 {
        return true;
    }
    if (mask.count_ones() as usize) < n - 1 {
        return false;
    }
    let mut rows = [0u16; MAX_ENUMERATION_ORDER];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
    }
    let full: u16 = ((1u32 << n) - 1) as u16;
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = rows[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == full
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_matches_listing() {
        let n = 6;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            assert_eq!(pair_index(n, a, b), i);
        }
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert!(enumerate_connected_graphs(0).is_err());
        assert!(enumerate_connected_graphs(11).is_err());
    }

    #[test]
    fn output_is_connected_and_pairwise_distinct() {
        let graphs = enumerate_connected_graphs(5).unwrap();
        for (i, g) in graphs.iter().enumerate() {
            assert!(g.is_connected());
            for h in &graphs[i + 1..] {
                assert!(!super::super::canon::is_isomorphic(g, h));
            }
        }
    }
}
