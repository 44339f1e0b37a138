//! Bar and cobar constructions, the counit `Omega B A -> A`, shuffle
//! products and the Harrison complex.

mod bar;
mod cobar;
mod counit;
mod harrison;
mod word;

pub use bar::{group_bar, group_ring, BarComplex};
pub use cobar::{require_one_reduced, CobarComplex};
pub use counit::{counit_and_check, CounitDegree, CounitReport};
pub use harrison::HarrisonComplex;
pub use word::{shuffle_product, TensorWord, WordBasis};

/// Bar construction through total degree `n`.
pub fn bar(a: &crate::dg::DgAlgebra, n: usize) -> crate::Result<BarComplex> {
    BarComplex::new(a, n, None)
}

/// Cobar construction through total degree `n`.
pub fn cobar(c: &crate::dg::DgCoalgebra, n: usize) -> crate::Result<CobarComplex> {
    CobarComplex::new(c, n)
}

/// Harrison complex through total degree `n`.
pub fn harrison_complex(a: &crate::dg::DgAlgebra, n: usize) -> crate::Result<HarrisonComplex> {
    HarrisonComplex::new(a, n, None)
}
