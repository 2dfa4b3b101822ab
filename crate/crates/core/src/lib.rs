//! Tools for studying positive graphs: graphs whose homomorphism number into
//! every edge-weighted graph is nonnegative.
//!
//! The crate is organised around the objects a verification run touches:
//!
//! - [`graph`]: simple, looped and weighted graphs, graph6 I/O, canonical
//!   labeling, enumeration and the usual constructions.
//! - [`hom`]: exact homomorphism counting by variable elimination, densities,
//!   product identities and symbolic homomorphism polynomials.
//! - [`structure`]: symmetry decision, parity filters, Weisfeiler-Lehman
//!   partitions and the tree classification.
//! - [`witness`]: searching for weighted targets with negative homomorphism
//!   number and certifying them exactly.
//! - [`even`]: even homomorphisms, the parameters `r`, `p` and `r̄`, and the
//!   half-image property of positive graphs.
//! - [`pipeline`]: the staged classifier, the resumable ledger and reports.

pub mod error;
pub mod even;
pub mod graph;
pub mod hom;
pub mod pipeline;
pub mod structure;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{LoopedGraph, SimpleGraph, WeightedGraph};
