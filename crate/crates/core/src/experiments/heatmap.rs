//! Cell aggregation of sweep records over (order, mean degree).

use std::collections::BTreeMap;

use serde::Serialize;

use super::sweep::{OutcomeTag, SweepRecord};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Bins {
    /// [k, k+1) for integer k.
    UnitWidth,
    /// Sorted edges e0 < e1 < ...; cell i is [e_i, e_{i+1}), the last one
    /// closed. Values outside are dropped.
    Edges(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeatmapCell {
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    pub records: usize,
    pub equilibria: usize,
    pub equilibrium_frequency: f64,
    /// Mean parts over the equilibrium records of the cell; `None` if none converged.
    pub mean_cluster_number: Option<f64>,
    pub consensus_fraction: f64,
}

fn bin_of(bins: &Bins, x: f64) -> Option<usize> {
    match bins {
        Bins::UnitWidth => (x >= 0.0).then(|| x.floor() as usize),
        Bins::Edges(e) => {
            let last = *e.last()?;
            if x < e[0] || x > last {
                None
            } else if x == last {
                Some(e.len() - 2)
            } else {
                Some(e.partition_point(|&b| b <= x) - 1)
            }
        }
    }
}

fn bounds(bins: &Bins, i: usize) -> (f64, f64) {
    match bins {
        Bins::UnitWidth => (i as f64, i as f64 + 1.0),
        Bins::Edges(e) => (e[i], e[i + 1]),
    }
}

/// Populated cells sorted by (order, bin). Records are binned by their
/// graph's realised mean degree.
pub fn summarize_heatmap(records: &[SweepRecord], bins: &Bins) -> Result<Vec<HeatmapCell>> {
    if let Bins::Edges(e) = bins {
        if e.len() < 2 || e.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::InvalidArgument("bin edges must be strictly increasing, at least two".into()));
        }
    }
    #[derive(Default)]
    struct Acc {
        records: usize,
        equilibria: usize,
        clusters: usize,
        consensus: usize,
    }
    let mut cells: BTreeMap<(usize, usize), Acc> = BTreeMap::new();
    for r in records {
        let Some(b) = bin_of(bins, r.mean_degree) else { continue };
        let a = cells.entry((r.n, b)).or_default();
        a.records += 1;
        if r.outcome == OutcomeTag::Equilibrium {
            a.equilibria += 1;
            a.clusters += r.cluster_number;
        }
        a.consensus += r.is_consensus() as usize;
    }
    Ok(cells
        .into_iter()
        .map(|((n, b), a)| {
            let (lo, hi) = bounds(bins, b);
            HeatmapCell {
                n,
                lo,
                hi,
                records: a.records,
                equilibria: a.equilibria,
                equilibrium_frequency: a.equilibria as f64 / a.records as f64,
                mean_cluster_number: (a.equilibria > 0).then(|| a.clusters as f64 / a.equilibria as f64),
                consensus_fraction: a.consensus as f64 / a.records as f64,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(n: usize, d: f64, outcome: OutcomeTag, clusters: usize) -> SweepRecord {
        SweepRecord {
            graph_seed: 0,
            n,
            edges: 0,
            edge_density: 0.0,
            mean_degree: d,
            trial: 0,
            outcome,
            cluster_number: clusters,
            steps: 1,
            period: if outcome == OutcomeTag::Equilibrium { 0 } else { 2 },
            cell_value: d,
            false_positive_bound: None,
        }
    }

    #[test]
    fn examples() {
        let all_eq = vec![rec(5, 1.2, OutcomeTag::Equilibrium, 1), rec(5, 3.4, OutcomeTag::Equilibrium, 2)];
        let cells = summarize_heatmap(&all_eq, &Bins::UnitWidth).unwrap();
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|c| c.equilibrium_frequency == 1.0));

        let single = summarize_heatmap(&[rec(5, 2.0, OutcomeTag::Equilibrium, 2)], &Bins::UnitWidth).unwrap();
        assert_eq!(single[0].mean_cluster_number, Some(2.0));
        assert_eq!((single[0].lo, single[0].hi), (2.0, 3.0));

        let mixed = vec![
            rec(6, 2.1, OutcomeTag::Equilibrium, 1),
            rec(6, 2.5, OutcomeTag::Equilibrium, 2),
            rec(6, 2.9, OutcomeTag::Equilibrium, 3),
            rec(6, 2.2, OutcomeTag::CycleDeterministic, 0),
        ];
        let cells = summarize_heatmap(&mixed, &Bins::UnitWidth).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].mean_cluster_number, Some(2.0));
        assert_eq!(cells[0].equilibrium_frequency, 0.75);
        assert_eq!(cells[0].consensus_fraction, 0.25);
    }

    #[test]
    fn explicit_edges() {
        let bins = Bins::Edges(vec![0.0, 1.5, 4.0]);
        let r = vec![
            rec(3, 1.5, OutcomeTag::Equilibrium, 1),
            rec(3, 4.0, OutcomeTag::Equilibrium, 1),
            rec(3, 4.5, OutcomeTag::Equilibrium, 1),
            rec(3, 0.2, OutcomeTag::Timeout, 0),
        ];
        let cells = summarize_heatmap(&r, &bins).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].records, 1);
        assert_eq!(cells[0].mean_cluster_number, None);
        assert_eq!(cells[1].records, 2);
        assert!(summarize_heatmap(&r, &Bins::Edges(vec![1.0])).is_err());
        assert!(summarize_heatmap(&r, &Bins::Edges(vec![1.0, 1.0])).is_err());
    }
}
