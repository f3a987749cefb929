//! Finite belief operators, their axioms, and the certainty, type and game
//! theoretic notions built on them.

pub mod audit;
pub mod axioms;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod exec;
pub mod game;
pub mod informativeness;
pub mod model;
pub mod operator;
pub mod report;
pub mod signal;
pub mod space;
pub mod types;

pub use error::{Error, Result};
