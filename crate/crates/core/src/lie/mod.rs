//! Graded Lie algebras: free ones as primitives of tensor algebras,
//! quotients by relations, Chevalley-Eilenberg complexes, and primitives of
//! DG Hopf algebras.

mod algebra;
mod ce;
mod free;
mod hopf;
mod quotient;
mod tensor;

pub use algebra::GradedLieAlgebra;
pub use ce::chevalley_eilenberg;
pub use free::{free_dg_lie, free_lie, free_lie_with_tensor, FreeLie};
pub use hopf::{
    primitives, primitives_of_homology, tensor_hopf_algebra, HopfAlgebraData, PrimitiveComplex,
};
pub use quotient::{lie_quotient, lie_quotient_by_expressions};
pub use tensor::{degree_of, tensor_algebra, TensorAlgebra};
