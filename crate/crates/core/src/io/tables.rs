//! CSV tables and JSON reports.
//!
//! Column orders are fixed:
//!
//! * sweep records: `graph_seed,n,edges,edge_density,mean_degree,trial,outcome,cluster_number,steps,period`
//! * heatmap: `n,lo,hi,records,equilibria,equilibrium_frequency,mean_cluster_number,consensus_fraction`
//! * census class counts: `n,graphs,k1,...,k10` (graphs admitting exactly k classes)
//! * census part counts: `n,d1,d2,d3` (classes with d parts)
//!
//! Floats are written by [`fmt_g17`]; an absent value is an empty field.

use std::io::Write;

use serde::Serialize;

use super::float::fmt_g17;
use super::graph6::emit_graph6;
use crate::catalogue::{CensusSummary, LabeledPartition, CLASS_COLUMNS};
use crate::experiments::{HeatmapCell, SweepRecord};

pub const SWEEP_HEADER: [&str; 10] = [
    "graph_seed",
    "n",
    "edges",
    "edge_density",
    "mean_degree",
    "trial",
    "outcome",
    "cluster_number",
    "steps",
    "period",
];

pub const HEATMAP_HEADER: [&str; 8] = [
    "n",
    "lo",
    "hi",
    "records",
    "equilibria",
    "equilibrium_frequency",
    "mean_cluster_number",
    "consensus_fraction",
];

fn opt(x: Option<f64>) -> String {
    x.map(fmt_g17).unwrap_or_default()
}

pub fn write_sweep_csv<W: Write>(out: W, records: &[SweepRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in records {
        w.write_record([
            r.graph_seed.to_string(),
            r.n.to_string(),
            r.edges.to_string(),
            fmt_g17(r.edge_density),
            fmt_g17(r.mean_degree),
            r.trial.to_string(),
            r.outcome.as_str().to_string(),
            r.cluster_number.to_string(),
            r.steps.to_string(),
            r.period.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_heatmap_csv<W: Write>(out: W, cells: &[HeatmapCell]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEATMAP_HEADER)?;
    for c in cells {
        w.write_record([
            c.n.to_string(),
            fmt_g17(c.lo),
            fmt_g17(c.hi),
            c.records.to_string(),
            c.equilibria.to_string(),
            fmt_g17(c.equilibrium_frequency),
            opt(c.mean_cluster_number),
            fmt_g17(c.consensus_fraction),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Class-count table; at least [`CLASS_COLUMNS`] columns, more if some
/// graph admits more classes. The last row holds column totals.
pub fn write_class_table_csv<W: Write>(out: W, census: &CensusSummary) -> csv::Result<()> {
    let width = census.class_count_totals().len().max(CLASS_COLUMNS);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string(), "graphs".to_string()];
    header.extend((1..=width).map(|k| format!("k{k}")));
    w.write_record(&header)?;
    let cell = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0).to_string();
    for r in &census.rows {
        let mut row = vec![r.order.to_string(), r.graphs.to_string()];
        row.extend((0..width).map(|i| cell(&r.by_class_count, i)));
        w.write_record(&row)?;
    }
    let totals = census.class_count_totals();
    let mut row = vec!["total".to_string(), census.entries.len().to_string()];
    row.extend((0..width).map(|i| cell(&totals, i)));
    w.write_record(&row)?;
    w.flush()?;
    Ok(())
}

/// Part-count table with at least three columns and a totals row.
pub fn write_part_table_csv<W: Write>(out: W, census: &CensusSummary) -> csv::Result<()> {
    let width = census.part_count_totals().len().max(3);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string()];
    header.extend((1..=width).map(|d| format!("d{d}")));
    w.write_record(&header)?;
    let cell = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0).to_string();
    for r in &census.rows {
        let mut row = vec![r.order.to_string()];
        row.extend((0..width).map(|i| cell(&r.by_part_count, i)));
        w.write_record(&row)?;
    }
    let totals = census.part_count_totals();
    let mut row = vec!["total".to_string()];
    row.extend((0..width).map(|i| cell(&totals, i)));
    w.write_record(&row)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CensusGraph<'a> {
    n: usize,
    edges: usize,
    graph6: String,
    classes: &'a [LabeledPartition],
}

#[derive(Serialize)]
struct CensusRow {
    n: usize,
    graphs: usize,
    by_class_count: Vec<usize>,
    by_part_count: Vec<usize>,
}

#[derive(Serialize)]
struct CensusDoc<'a> {
    max_n: usize,
    graphs: Vec<CensusGraph<'a>>,
    rows: Vec<CensusRow>,
    class_count_totals: Vec<usize>,
    part_count_totals: Vec<usize>,
}

/// Census as pretty JSON: every graph (graph6 plus its class
/// representatives as label vectors) and the aggregate tables.
pub fn census_json(census: &CensusSummary) -> String {
    let doc = CensusDoc {
        max_n: census.max_n,
        graphs: census
            .entries
            .iter()
            .map(|e| CensusGraph {
                n: e.graph.order(),
                edges: e.graph.edge_count(),
                graph6: emit_graph6(&e.graph),
                classes: &e.classes,
            })
            .collect(),
        rows: census
            .rows
            .iter()
            .map(|r| CensusRow {
                n: r.order,
                graphs: r.graphs,
                by_class_count: r.by_class_count.clone(),
                by_part_count: r.by_part_count.clone(),
            })
            .collect(),
        class_count_totals: census.class_count_totals(),
        part_count_totals: census.part_count_totals(),
    };
    serde_json::to_string_pretty(&doc).expect("census serializes")
}
