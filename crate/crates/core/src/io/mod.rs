//! Serialization: graph6, DOT, CSV tables and JSON reports.

pub mod dot;
pub mod float;
pub mod graph6;
pub mod tables;

pub use dot::emit_partition_dot;
pub use float::fmt_g17;
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use tables::{census_json, write_class_table_csv, write_heatmap_csv, write_part_table_csv, write_sweep_csv};
