//! Approximate counting and sampling for low-temperature spin systems through
//! truncated cluster expansions of abstract polymer models.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bounded-degree graphs, vertex bitsets, boundary operators,
//!   connected-set enumeration in graph powers, expansion measurement and
//!   random regular graphs.
//! * [`polymer`]: model-agnostic polymer indexes, exact Ursell functions,
//!   cluster enumeration, the truncated expansion `T_m`, the Kotecký–Preiss
//!   checks and an exact `Ξ` evaluator.
//! * [`sampler`]: the self-reducibility sampler over polymer configurations.
//! * [`models`]: the ferromagnetic Potts, hard-core and proper-coloring
//!   instantiations.
//! * [`oracle`]: brute-force ground truth used by the test suites and the CLI.
//!
//! Work that splits naturally (clusters by root polymer, colorings by pattern,
//! exhaustive enumeration by prefix) runs on rayon when the `parallel` feature
//! is enabled and sequentially otherwise.

pub mod error;
pub mod graph;
pub mod models;
pub mod numeric;
pub mod oracle;
pub mod par;
pub mod polymer;
pub mod sampler;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, Side, VertexSet};
pub use models::{ApproxResult, Method};
pub use polymer::{Cluster, KpReport, KpStatus, PolymerIndex, PolymerModel};
