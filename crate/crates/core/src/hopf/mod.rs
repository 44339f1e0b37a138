//! Hopf invariants through the bar construction of a sphere model.

mod invariant;
mod map;
mod model;

pub use invariant::{
    bar_differential, harrison_invariant, hopf_invariant, integrate, parametrized_cocycle,
    parametrized_formula, render, weight_reduce, BarCocycle, BarElement, ParametrizedData,
    WeightReduction,
};
pub use map::AlgebraMap;
pub use model::{hopf_map_model, linking_model, named_element, SphereModel};
