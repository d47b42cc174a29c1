//! Toolkit for 3-connected almost-planar graphs: the Möbius ladders, the
//! bicycle-wheel family and the fan-extended `K_{3,3}` families.
//!
//! The crate generates every family with role labels, decides planarity and
//! almost-planarity exactly, builds cycles of every achievable length from
//! explicit formulas, and checks all of it against a brute-force oracle.

pub mod classify;
pub mod cli;
pub mod constructive;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod planarity;
pub mod verify;

pub use graph::{Edge, Graph, GraphError, Vertex, VertexSeq};

/// Version tag written into every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
