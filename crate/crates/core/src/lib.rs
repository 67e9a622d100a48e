pub mod analysis;
pub mod cli;
pub mod error;
pub mod gap;
pub mod geometry;
mod linalg;
pub mod operators;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{Geometry, GeometryKind};
pub use operators::{StochasticOracle, VIProblem};
