//! Strategy selection for limited-memory influence diagrams through a
//! credal-network reformulation solved as a 0/1 mixed-integer linear program.
//!
//! The numeric core is generic over [`Scalar`] (`f64` or `f32`); the aliases
//! below fix the common `f64` instantiation.

pub mod bench;
pub mod credal;
pub mod factor;
pub mod graph;
pub mod linear;
pub mod model;
pub mod reform;
pub mod scalar;
pub mod solver;

pub use scalar::Scalar;

pub type Diagram = model::InfluenceDiagram<f64>;
pub type DiagramF32 = model::InfluenceDiagram<f32>;
pub type StrategyF64 = model::Strategy<f64>;
pub type Milp = reform::MilpProblem<f64>;
