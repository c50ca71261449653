//! Random-initial-condition experiments on fixed and random graphs.

pub mod basin;
pub mod connectivity;
pub mod heatmap;
pub mod stats;
pub mod sweep;

pub use basin::{estimate_basin, summarize_outcomes, trial_outcomes, BasinEstimate, HistogramBin, OutcomeClass};
pub use connectivity::{connectedness_probability, threshold_curve, ThresholdKind};
pub use heatmap::{summarize_heatmap, Bins, HeatmapCell};
pub use sweep::{
    basin_sweep, cycle_census, per_graph_consensus, CycleCensus, GraphConsensus, OutcomeTag, SweepAxis, SweepConfig,
    SweepRecord,
};
