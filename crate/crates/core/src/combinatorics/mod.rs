//! Set partitions, simple graphs and arc diagrams over ordered grounds.

mod arcs;
mod graph;
mod partition;

pub use arcs::{diagram_leq, ArcDiagram};
pub use graph::{graphs_over, SimpleGraph};
pub use partition::{arcs, atomic_segments, is_atomic, quasi_shuffles, SetPartition};
