//! Exact computer algebra for bar and cobar constructions.

pub mod barcobar;
pub mod combination;
pub mod dg;
pub mod error;
pub mod format;
pub mod hopf;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod simplicial;

pub use combination::Combination;
pub use error::{Error, Result};
