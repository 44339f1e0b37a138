use std::collections::BTreeMap;

use num_traits::One;

use crate::dg::{show_element, DgAlgebra, Element, Gen, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A degree-preserving map of augmented DGAs, given on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    source: DgAlgebra,
    target: DgAlgebra,
    images: BTreeMap<Gen, Element>,
}

impl AlgebraMap {
    /// Basis elements missing from `images` map to zero, except the unit,
    /// which maps to the unit.
    pub fn new(
        source: &DgAlgebra,
        target: &DgAlgebra,
        images: impl IntoIterator<Item = (Gen, Element)>,
    ) -> Result<AlgebraMap> {
        let mut map: BTreeMap<Gen, Element> =
            images.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        map.entry(source.unit())
            .or_insert_with(|| Element::term(target.unit(), Rational::one()));
        let f = AlgebraMap {
            source: source.clone(),
            target: target.clone(),
            images: map,
        };
        f.verify()?;
        Ok(f)
    }

    pub fn identity(a: &DgAlgebra) -> AlgebraMap {
        let images = a
            .complex()
            .module()
            .gens()
            .map(|g| (g, Element::term(g, Rational::one())));
        AlgebraMap::new(a, a, images).expect("the identity is an algebra map")
    }

    /// The map sending the unit to the unit and every positive-degree
    /// generator to zero. The source must be connected.
    pub fn augmentation_map(source: &DgAlgebra, target: &DgAlgebra) -> Result<AlgebraMap> {
        if !source.is_connected() {
            return Err(Error::Precondition("the source must be connected".into()));
        }
        AlgebraMap::new(source, target, [])
    }

    /// A map given by images of named generators.
    pub fn from_names(
        source: &DgAlgebra,
        target: &DgAlgebra,
        images: &[(&str, &[(Rational, &str)])],
    ) -> Result<AlgebraMap> {
        let m = source.complex().module();
        let mut out = Vec::new();
        for (s, terms) in images {
            let g = m
                .find(s)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{s}`")))?;
            out.push((g, super::named_element(target, terms)?));
        }
        AlgebraMap::new(source, target, out)
    }

    pub fn source(&self) -> &DgAlgebra {
        &self.source
    }

    pub fn target(&self) -> &DgAlgebra {
        &self.target
    }

    pub fn image_gen(&self, g: Gen) -> Element {
        self.images.get(&g).cloned().unwrap_or_default()
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut out = Element::new();
        for (g, q) in x.iter() {
            out.add_scaled(&self.image_gen(*g), q);
        }
        out
    }

    /// Matrix of the map in degree `n`, as columns of target coordinates.
    pub fn matrix(&self, n: usize) -> crate::linalg::SparseMatrix {
        let rows = self.target.complex().dim(n);
        let cols = (0..self.source.complex().dim(n))
            .map(|j| {
                self.image_gen((n, j))
                    .iter()
                    .map(|(g, q)| (g.1, q.clone()))
                    .collect()
            })
            .collect();
        crate::linalg::SparseMatrix::from_columns(rows, cols)
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &AlgebraMap) -> Result<AlgebraMap> {
        if self.target != g.source {
            return Err(Error::Precondition(
                "maps do not compose: target and source differ".into(),
            ));
        }
        let images = self.images.iter().map(|(x, y)| (*x, g.apply(y)));
        AlgebraMap::new(&self.source, &g.target, images)
    }

    fn verify(&self) -> std::result::Result<(), Violation> {
        let sm = self.source.complex().module();
        let tm = self.target.complex().module();
        let top = self.source.window().min(self.target.window());
        for (g, y) in &self.images {
            if let Some(h) = y.keys().find(|h| h.0 != g.0) {
                return Err(Violation::new(
                    ViolationKind::Degree,
                    format!("{} maps to {} in degree {}", sm.name(*g), tm.name(*h), h.0),
                ));
            }
            if g.0 > top && !y.is_zero() {
                return Err(Violation::new(
                    ViolationKind::Degree,
                    format!("{} lies beyond the target window", sm.name(*g)),
                ));
            }
        }
        if self.image_gen(self.source.unit()) != Element::term(self.target.unit(), Rational::one())
        {
            return Err(Violation::new(
                ViolationKind::Unit,
                "the unit must map to the unit",
            ));
        }
        for j in 0..sm.dim(0) {
            let g = (0, j);
            if self.target.augment(&self.image_gen(g)) != self.source.augmentation()[j] {
                return Err(Violation::new(
                    ViolationKind::Augmentation,
                    format!("the augmentation is not preserved on {}", sm.name(g)),
                ));
            }
        }
        let dir = self.source.complex().direction();
        if dir != self.target.complex().direction() {
            return Err(Violation::new(
                ViolationKind::ChainMap,
                "source and target grade in opposite directions",
            ));
        }
        for g in sm.gens() {
            let Some(t) = dir.target(g.0) else { continue };
            if t > top {
                continue;
            }
            let lhs = self.apply(&self.source.complex().d_gen(g));
            let rhs = self.target.d(&self.image_gen(g));
            if lhs != rhs {
                return Err(Violation::new(
                    ViolationKind::ChainMap,
                    format!(
                        "f(d {}) = {} but d f({}) = {}",
                        sm.name(g),
                        show_element(tm, &lhs),
                        sm.name(g),
                        show_element(tm, &rhs)
                    ),
                ));
            }
        }
        for x in sm.gens() {
            for y in sm.gens() {
                if x.0 + y.0 > top {
                    continue;
                }
                let lhs = self.apply(&self.source.mul_gen(x, y));
                let rhs = self.target.mul(&self.image_gen(x), &self.image_gen(y));
                if lhs != rhs {
                    return Err(Violation::new(
                        ViolationKind::Multiplicative,
                        format!(
                            "f({} {}) differs from f({}) f({})",
                            sm.name(x),
                            sm.name(y),
                            sm.name(x),
                            sm.name(y)
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}
