//! Rainbow Hamilton cycles in edge-coloured Dirac graphs.
//!
//! The search walks over Hamilton cycles by three-edge switchings, repairing
//! repeated colours one conflict at a time. Graphs close to one of the two
//! extremal shapes (two cliques, an unbalanced complete bipartite graph) are
//! first reduced around a protected set of edges that every cycle must use.

pub mod berge;
pub mod classification;
pub mod error;
pub mod experiment;
pub mod fraction;
pub mod generators;
pub mod graph;
pub mod hamilton;
pub mod io;
pub mod rainbow;
pub mod seed;
pub mod switching;

pub use error::{Error, Result};
pub use fraction::Fraction;
pub use graph::{Colour, Colouring, DirectedHamCycle, Edge, Graph, ProtectedSet, Vertex};
