//! Hopf monoids in species built from unitriangular matrix groups over small
//! prime fields.
//!
//! The crate provides exact arithmetic ([`algebra`]), the species bookkeeping
//! layer ([`ordered`]), unitriangular groups and their conjugacy/superclass
//! census ([`unitriangular`]), set partitions, graphs and arc diagrams
//! ([`combinatorics`]), a generic Hopf-monoid framework with axiom, morphism
//! and freeness checkers ([`hopf`]), the concrete monoids
//! ([`instances`]) and the counting results built on them ([`enumerative`]).
//!
//! All coefficients are exact rationals; nothing in the crate uses floating
//! point.

pub mod algebra;
pub mod combinatorics;
pub mod enumerative;
pub mod error;
pub mod hopf;
pub mod instances;
pub mod ordered;
pub mod unitriangular;

pub use error::{Error, Result};
