use num_traits::One;

use super::bar::BarComplex;
use super::cobar::CobarComplex;
use crate::combination::Combination;
use crate::dg::{show_element, DgAlgebra, Direction, Element, Gen, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::linalg::{dense_to_sparse, sign, Rational, SparseMatrix};

/// Per-degree comparison of `H(Omega B A)` and `H(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounitDegree {
    pub degree: usize,
    pub cobar_bar_rank: usize,
    pub algebra_rank: usize,
    /// Rank of the map induced on homology.
    pub induced_rank: usize,
}

impl CounitDegree {
    pub fn is_iso(&self) -> bool {
        self.cobar_bar_rank == self.algebra_rank && self.induced_rank == self.algebra_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounitReport {
    pub degrees: Vec<CounitDegree>,
    /// First failure of the chain-map or multiplicativity check, if any.
    pub violation: Option<Violation>,
}

impl CounitReport {
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.violation.is_none() && self.degrees.iter().all(CounitDegree::is_iso)
    }
}

/// Builds `Omega B A -> A` through degree `N`, checks it is a multiplicative
/// chain map, and compares homology in degrees `0..N`.
///
/// A cobar letter `<[a]>` goes to `(-1)^{|a|} a`, letters of bar weight two
/// or more go to zero, and words go to products.
pub fn counit_and_check(a: &DgAlgebra, n: usize) -> Result<CounitReport> {
    a.verify()?;
    if a.complex().direction() != Direction::Homological || !a.is_connected() {
        return Err(Error::Precondition(
            "the counit check expects a connected chain algebra".into(),
        ));
    }
    if !a.complex().is_complete() && a.window() < n {
        return Err(Error::WindowTooSmall(format!(
            "the counit through degree {n} needs the algebra through degree {n}"
        )));
    }
    let bar = BarComplex::new(a, n + 1, None)?;
    let cobar = CobarComplex::new(bar.coalgebra(), n)?;
    let omega = cobar.algebra();

    let image = |g: Gen| -> Element {
        let mut acc = Combination::term(a.unit(), Rational::one());
        for &letter in &cobar.words().word(g).letters {
            let bar_word = bar.words().word(letter);
            if bar_word.weight() != 1 {
                return Element::new();
            }
            let x = bar_word.letters[0];
            acc = a.mul(&acc, &Combination::term(x, sign(x.0)));
        }
        acc
    };
    let map_elem = |x: &Element| -> Element {
        let mut out = Element::new();
        for (g, q) in x.iter() {
            out.add_scaled(&image(*g), q);
        }
        out
    };

    let m = omega.complex().module();
    let mut violation = None;
    'chain: for g in m.gens() {
        let x = Combination::term(g, Rational::one());
        let lhs = map_elem(&omega.d(&x));
        let rhs = a.d(&image(g));
        if lhs != rhs {
            violation = Some(Violation::new(
                ViolationKind::ChainMap,
                format!(
                    "f(d {}) = {} but d f({}) = {}",
                    m.name(g),
                    show_element(a.complex().module(), &lhs),
                    m.name(g),
                    show_element(a.complex().module(), &rhs)
                ),
            ));
            break 'chain;
        }
    }
    if violation.is_none() {
        'mult: for u in m.gens() {
            for v in m.gens() {
                if u.0 + v.0 > n {
                    continue;
                }
                let lhs = map_elem(&omega.mul_gen(u, v));
                let rhs = a.mul(&image(u), &image(v));
                if lhs != rhs {
                    violation = Some(Violation::new(
                        ViolationKind::Multiplicative,
                        format!(
                            "f({} {}) differs from f({}) f({})",
                            m.name(u),
                            m.name(v),
                            m.name(u),
                            m.name(v)
                        ),
                    ));
                    break 'mult;
                }
            }
        }
    }

    let mut degrees = Vec::new();
    for deg in 0..n {
        let h_omega = cobar.complex().homology_in(deg)?;
        let h_a = a.complex().homology_in(deg)?;
        // Rank of H(f): image of the cycles modulo boundaries in A.
        let cycles = omega.complex().d(deg).kernel_basis();
        let dim_a = a.complex().dim(deg);
        let columns = cycles
            .iter()
            .map(|z| {
                let mut col = std::collections::BTreeMap::new();
                for (g, q) in map_elem(
                    &dense_to_sparse(z)
                        .into_iter()
                        .map(|(i, q)| ((deg, i), q))
                        .collect(),
                )
                .iter()
                {
                    col.insert(g.1, q.clone());
                }
                col
            })
            .collect();
        let images = SparseMatrix::from_columns(dim_a, columns);
        let boundaries = match a.complex().direction().source(deg) {
            Some(s) if s <= a.window() => a.complex().d(s).clone(),
            _ => SparseMatrix::zeros(dim_a, 0),
        };
        let induced_rank = images.hstack(&boundaries).rank() - boundaries.rank();
        degrees.push(CounitDegree {
            degree: deg,
            cobar_bar_rank: h_omega.rank,
            algebra_rank: h_a.rank,
            induced_rank,
        });
    }
    Ok(CounitReport { degrees, violation })
}
