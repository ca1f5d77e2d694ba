//! Multi-robot coordination on embedded roadmaps.
//!
//! Two planners share one substrate:
//!
//! * [`carp`]: prioritized planning through per-vertex free time windows,
//!   retried over random priority orderings.
//! * [`mrdrrt`]: a discrete multi-robot RRT grown over the implicit composite
//!   configuration space, with restricted sampling, a collision-aware
//!   steering oracle, best-predecessor expansion, rewiring, and the
//!   prioritized planner as its local connector.
//!
//! Geometry is generic over the [`Scalar`] type; [`Roadmap64`] and friends
//! fix it to `f64`.

pub mod bench;
pub mod carp;
pub mod error;
pub mod graph;
pub mod mapgen;
pub mod mrdrrt;
mod scalar;

pub use error::{FormatError, GraphError};
pub use scalar::Scalar;

pub type Roadmap64 = graph::Roadmap<f64>;
pub type Roadmap32 = graph::Roadmap<f32>;
pub type SearchTree64 = mrdrrt::SearchTree<f64>;
pub type SampleSpace64 = mrdrrt::SampleSpace<f64>;
pub type PlannerParams64 = mrdrrt::PlannerParams<f64>;
pub type CarpPlanner64<'a> = carp::CarpPlanner<'a, f64>;
