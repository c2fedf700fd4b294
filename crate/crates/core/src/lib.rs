//! Metric graphs built from first principles.
//!
//! A metric graph is a finite family of closed intervals `[0, ℓ_e]` whose
//! endpoints are glued together by an equivalence relation. Everything in this
//! crate works with that description directly:
//!
//! * [`relation`] holds equivalence relations on endpoint sets and their
//!   algebra (closure, intersection, generated union and difference).
//! * [`graph`] pairs an [`EdgeSpace`] with an [`EndpointRelation`] and derives
//!   vertices, adjacency, degrees, subgraphs and components.
//! * [`metric`] computes the path pseudo-metric and geodesics exactly.
//! * [`surgery`] subdivides, cuts, rewires and smooths graphs, and moves points
//!   between rearrangements.
//! * [`ops`] lifts the relation algebra to graphs on a shared edge space.
//! * [`functions`] treats edgewise polynomials as functions on the graph:
//!   continuity, `C^k` membership, `L^p` and Sobolev norms.
//! * [`format`] is the line-oriented text format used by the `mgraph` CLI.
//!
//! Lengths, coordinates and coefficients are exact rationals throughout.
//!
//! ```
//! use metric_graph::{MetricGraph, Endpoint, GraphPoint, metric, rational::int};
//!
//! // A triangle whose edge lengths violate the triangle inequality.
//! let g = MetricGraph::build(
//!     [(1u64.into(), int(1)), (2u64.into(), int(2)), (3u64.into(), int(4))],
//!     [
//!         (Endpoint::length(1u64), Endpoint::zero(2u64)),
//!         (Endpoint::length(2u64), Endpoint::length(3u64)),
//!         (Endpoint::zero(3u64), Endpoint::zero(1u64)),
//!     ],
//! )
//! .unwrap();
//! let d = metric::distance(&g, &GraphPoint::new(3u64, int(0)), &GraphPoint::new(3u64, int(4))).unwrap();
//! assert_eq!(d.to_string(), "3");
//! ```

pub mod edge;
pub mod error;
pub mod format;
pub mod functions;
pub mod graph;
pub mod metric;
pub mod ops;
pub mod rational;
pub mod relation;
pub mod surgery;

pub use edge::{EdgeId, EdgeSpace};
pub use error::{Error, Result};
pub use graph::{GraphPoint, MetricGraph, Multigraph, Vertex};
pub use metric::{Distance, Geodesic, Segment};
pub use rational::Rational;
pub use relation::{Endpoint, EndpointRelation, Side};
