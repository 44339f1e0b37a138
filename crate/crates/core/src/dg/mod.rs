//! Graded modules, complexes and their homology, and verified DG algebras
//! and coalgebras.

pub mod algebra;
pub mod coalgebra;
pub mod complex;
pub mod dual;
pub mod module;
pub mod violation;

pub use algebra::{elem, show_element, DgAlgebra, Element};
pub use coalgebra::{show_tensor, DgCoalgebra, Tensor};
pub use complex::{Complex, DegreeHomology, HomologyReport};
pub use dual::{dual_module, dual_name, dualize_algebra, dualize_coalgebra, dualize_complex};
pub use module::{Direction, Gen, GradedModule};
pub use violation::{Violation, ViolationKind};
