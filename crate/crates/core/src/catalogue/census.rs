//! Exhaustive census of equilibrium partitions on small connected graphs.

use rayon::prelude::*;

use super::enumerate::enumerate_connected_graphs;
use super::partitions::{enumerate_equilibrium_partitions, LabeledPartition};
use crate::error::Result;
use crate::graph::Graph;

/// Number of class-count columns always reported (graphs admitting 1..=10 classes).
pub const CLASS_COLUMNS: usize = 10;

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub graph: Graph,
    /// One representative per class, trivial first.
    pub classes: Vec<LabeledPartition>,
}

impl CensusEntry {
    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.classes.len() == 1
    }
}

/// Per-order aggregates of a census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRow {
    pub order: usize,
    pub graphs: usize,
    /// `by_class_count[k - 1]`: graphs admitting exactly k classes.
    pub by_class_count: Vec<usize>,
    /// `by_part_count[d - 1]`: classes with exactly d parts.
    pub by_part_count: Vec<usize>,
}

impl OrderRow {
    pub fn indecomposable(&self) -> usize {
        self.by_class_count[0]
    }
}

#[derive(Clone, Debug)]
pub struct CensusSummary {
    pub max_n: usize,
    pub entries: Vec<CensusEntry>,
    pub rows: Vec<OrderRow>,
}

impl CensusSummary {
    pub fn row(&self, order: usize) -> Option<&OrderRow> {
        self.rows.iter().find(|r| r.order == order)
    }

    fn width(&self, f: impl Fn(&OrderRow) -> usize) -> usize {
        self.rows.iter().map(f).max().unwrap_or(0)
    }

    /// Column sums of the class-count table.
    pub fn class_count_totals(&self) -> Vec<usize> {
        let w = self.width(|r| r.by_class_count.len());
        (0..w)
            .map(|k| self.rows.iter().map(|r| r.by_class_count.get(k).copied().unwrap_or(0)).sum())
            .collect()
    }

    /// Column sums of the part-count table.
    pub fn part_count_totals(&self) -> Vec<usize> {
        let w = self.width(|r| r.by_part_count.len());
        (0..w)
            .map(|d| self.rows.iter().map(|r| r.by_part_count.get(d).copied().unwrap_or(0)).sum())
            .collect()
    }

    pub fn total_classes(&self) -> usize {
        self.entries.iter().map(|e| e.classes.len()).sum()
    }

    /// Recomputes the aggregates from the entries and compares.
    pub fn is_consistent(&self) -> bool {
        let rebuilt = aggregate(self.max_n, &self.entries);
        rebuilt == self.rows
            && self.part_count_totals().iter().sum::<usize>() == self.total_classes()
            && self.class_count_totals().iter().enumerate().map(|(k, c)| (k + 1) * c).sum::<usize>()
                == self.total_classes()
    }
}

fn aggregate(max_n: usize, entries: &[CensusEntry]) -> Vec<OrderRow> {
    (1..=max_n)
        .map(|n| {
            let of_order: Vec<&CensusEntry> = entries.iter().filter(|e| e.order() == n).collect();
            let k_max = of_order.iter().map(|e| e.classes.len()).max().unwrap_or(0).max(CLASS_COLUMNS);
            let mut by_class_count = vec![0; k_max];
            let mut by_part_count = vec![0; 3];
            for e in &of_order {
                by_class_count[e.classes.len() - 1] += 1;
                for c in &e.classes {
                    let d = c.num_parts();
                    if d > by_part_count.len() {
                        by_part_count.resize(d, 0);
                    }
                    by_part_count[d - 1] += 1;
                }
            }
            OrderRow {
                order: n,
                graphs: of_order.len(),
                by_class_count,
                by_part_count,
            }
        })
        .collect()
}

/// Enumerates every connected graph of order `1..=max_n` and its equilibrium
/// partition classes. Graphs are processed in parallel; output order is the
/// enumeration order and does not depend on the thread count.
pub fn build_census(max_n: usize) -> Result<CensusSummary> {
    let mut entries = Vec::new();
    for n in 1..=max_n {
        let graphs = enumerate_connected_graphs(n)?;
        let mut batch: Vec<CensusEntry> = graphs
            .into_par_iter()
            .map(|graph| {
                let classes = enumerate_equilibrium_partitions(&graph);
                CensusEntry { graph, classes }
            })
            .collect();
        entries.append(&mut batch);
    }
    let rows = aggregate(max_n, &entries);
    Ok(CensusSummary { max_n, entries, rows })
}
