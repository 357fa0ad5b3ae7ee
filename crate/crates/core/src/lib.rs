//! Finite-scale representation theory of bicrossed products.

pub mod bicrossed;
pub mod cli;
pub mod config;
pub mod error;
pub mod fusion;
pub mod group;
pub mod instances;
pub mod length;
pub mod linalg;
pub mod mackey;
pub mod projective;
pub mod rep;

pub use error::{Error, Result};
