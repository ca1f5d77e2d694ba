//! Roadmaps, composite configurations, plans and their validation.

mod config;
pub mod io;
mod roadmap;
mod shortest;
mod validate;

pub use config::{composite_distance, Assignment, Configuration, Plan};
pub(crate) use config::composite_length;
pub use roadmap::{Point, Roadmap, VertexId};
pub use shortest::{dijkstra_distances, hop_distances, UNREACHABLE_HOPS};
pub use validate::{validate_move, validate_plan, MoveViolation, PlanViolation};
