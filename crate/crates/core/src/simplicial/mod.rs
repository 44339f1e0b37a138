//! Simplicial chain coalgebras, collapse quotients and classifying spaces
//! of finite groups.

mod complex;
mod group;

pub use complex::{
    chains_with_coproduct, collapse_quotient, CollapsePair, Simplex, SimplicialComplex,
};
pub use group::{classifying_complex, GroupTable};
