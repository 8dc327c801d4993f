//! Exact laboratory for the Grid Tiling (with inequality) to k-Center
//! reduction: instance construction with rational edge lengths, exact
//! solvers for both problems, structural checks, and certificates for
//! skeleton dimension, highway dimension, doubling and pathwidth.

pub mod error;
pub mod graph;
pub mod gridtiling;
pub mod harness;
pub mod hitting;
pub mod kcenter;
pub mod par;
pub mod params;
pub mod paths;
pub mod rational;
pub mod reduction;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use par::Exec;
pub use rational::Rational;
