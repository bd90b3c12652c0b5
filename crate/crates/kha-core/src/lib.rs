pub mod arith;
pub mod cli;
pub mod error;
pub mod fixedpoint;
pub mod quiver;
pub mod report;
pub mod rmatrix;
pub mod shuffle;
pub mod taut;

pub use error::{KhaError, Result};
