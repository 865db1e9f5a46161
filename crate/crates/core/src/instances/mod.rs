//! The concrete Hopf monoids and the maps between them.

mod class_functions;
mod functions;
mod graphs;
pub mod morphisms;
mod orders;
mod partitions;
mod superclass;

pub use class_functions::{ClassFunctions, ClassKey};
pub use functions::{is_graph_atomic, lambda_generator, ConnectedMatrices, Functions, GraphAtomicMatrices};
pub use graphs::Graphs;
pub use orders::Orders;
pub use partitions::Partitions;
pub use superclass::{diagram_count, lambda_diagram, AtomicDiagrams, SuperclassFunctions};

use crate::hopf::{FreeMonoid, Hadamard};

/// `L × Π`.
pub type OrdersPartitions = Hadamard<Orders, Partitions>;
/// `L × G`.
pub type OrdersGraphs = Hadamard<Orders, Graphs>;
/// The free monoid on atomic arc diagrams.
pub type FreeDiagrams = FreeMonoid<AtomicDiagrams>;

pub fn orders_partitions() -> OrdersPartitions {
    Hadamard::new(Orders, Partitions)
}

pub fn orders_graphs() -> OrdersGraphs {
    Hadamard::new(Orders, Graphs)
}
