use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::complex::Complex;
use super::module::Gen;
use super::violation::{Violation, ViolationKind};
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, Ring};

pub type Element = Combination<Gen>;

/// A differential graded algebra given by structure constants on a named
/// basis. Products with the unit are implicit unless listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebra {
    complex: Complex,
    product: BTreeMap<(Gen, Gen), Element>,
    unit: Gen,
    augmentation: Vec<Rational>,
}

impl DgAlgebra {
    /// `augmentation` lists the value on each degree-0 generator.
    pub fn new(
        complex: Complex,
        products: impl IntoIterator<Item = (Gen, Gen, Element)>,
        unit: Gen,
        augmentation: Vec<Rational>,
    ) -> Result<DgAlgebra> {
        let m = complex.module();
        if unit.0 != 0 || unit.1 >= m.dim(0) {
            return Err(Error::Precondition(
                "unit must be a degree-0 generator".into(),
            ));
        }
        if augmentation.len() != m.dim(0) {
            return Err(Error::Precondition(format!(
                "augmentation has {} values for {} degree-0 generators",
                augmentation.len(),
                m.dim(0)
            )));
        }
        let mut product: BTreeMap<(Gen, Gen), Element> = BTreeMap::new();
        for (a, b, c) in products {
            for (g, q) in c.iter() {
                if g.0 != a.0 + b.0 {
                    return Err(Violation::new(
                        ViolationKind::Degree,
                        format!(
                            "{} * {} has a term {} in degree {}, expected {}",
                            m.name(a),
                            m.name(b),
                            m.name(*g),
                            g.0,
                            a.0 + b.0
                        ),
                    )
                    .into());
                }
                if m.ring() == Ring::Z && !q.is_integer() {
                    return Err(Error::Precondition(format!(
                        "non-integral product coefficient {q} over Z"
                    )));
                }
            }
            let slot = product.entry((a, b)).or_default();
            *slot += &c;
        }
        // Entries that merely restate the implicit unit rule carry no information.
        product.retain(|&(a, b), c| {
            let implicit = if a == unit {
                Combination::term(b, Rational::one())
            } else if b == unit {
                Combination::term(a, Rational::one())
            } else {
                Combination::new()
            };
            *c != implicit
        });
        Ok(DgAlgebra {
            complex,
            product,
            unit,
            augmentation,
        })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn unit(&self) -> Gen {
        self.unit
    }

    pub fn augmentation(&self) -> &[Rational] {
        &self.augmentation
    }

    pub fn ring(&self) -> Ring {
        self.complex.ring()
    }

    pub fn window(&self) -> usize {
        self.complex.window()
    }

    /// Explicit structure constants, excluding implicit unit products.
    pub fn products(&self) -> &BTreeMap<(Gen, Gen), Element> {
        &self.product
    }

    /// Whether the product of degrees `p` and `q` is determined by the data.
    pub fn product_known(&self, p: usize, q: usize) -> bool {
        p + q <= self.window() || self.complex.is_complete()
    }

    pub fn mul_gen(&self, a: Gen, b: Gen) -> Element {
        if let Some(c) = self.product.get(&(a, b)) {
            return c.clone();
        }
        if a == self.unit {
            Combination::term(b, Rational::one())
        } else if b == self.unit {
            Combination::term(a, Rational::one())
        } else {
            Combination::new()
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Combination::new();
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                out.add_scaled(&self.mul_gen(*a, *b), &(p * q));
            }
        }
        out
    }

    pub fn d(&self, x: &Element) -> Element {
        self.complex.d_elem(x)
    }

    pub fn augment(&self, x: &Element) -> Rational {
        x.iter()
            .filter(|(g, _)| g.0 == 0)
            .map(|(g, q)| q * &self.augmentation[g.1])
            .fold(Rational::zero(), |s, t| s + t)
    }

    /// Positive-degree generators together with the degree-0 generators
    /// other than the unit: a basis of the augmentation ideal once each
    /// degree-0 generator `g` is read as `g - aug(g) 1`.
    pub fn reduced_gens(&self) -> Vec<Gen> {
        self.complex
            .module()
            .gens()
            .filter(|&g| g != self.unit)
            .collect()
    }

    fn name(&self, g: Gen) -> &str {
        self.complex.module().name(g)
    }

    fn show(&self, x: &Element) -> String {
        show_element(self.complex.module(), x)
    }

    /// Checks every identity of an augmented DGA on the basis tuples whose
    /// products lie in the window, returning the first failure.
    pub fn verify(&self) -> std::result::Result<(), Violation> {
        self.complex.check_d_squared()?;
        self.check_unit()?;
        self.check_augmentation()?;
        self.check_associativity()?;
        self.check_leibniz()
    }

    fn check_unit(&self) -> std::result::Result<(), Violation> {
        let u = Combination::term(self.unit, Rational::one());
        let du = self.d(&u);
        if !du.is_zero() {
            return Err(Violation::new(
                ViolationKind::Unit,
                format!("d(1) = {}", self.show(&du)),
            ));
        }
        for g in self.complex.module().gens() {
            let x = Combination::term(g, Rational::one());
            if self.mul_gen(self.unit, g) != x || self.mul_gen(g, self.unit) != x {
                return Err(Violation::new(
                    ViolationKind::Unit,
                    format!(
                        "{} is not fixed by multiplication with the unit",
                        self.name(g)
                    ),
                ));
            }
        }
        Ok(())
    }

    fn check_augmentation(&self) -> std::result::Result<(), Violation> {
        if !self.augmentation[self.unit.1].is_one() {
            return Err(Violation::new(
                ViolationKind::Augmentation,
                "augmentation of the unit is not 1",
            ));
        }
        let n0 = self.complex.dim(0);
        for i in 0..n0 {
            for j in 0..n0 {
                let lhs = self.augment(&self.mul_gen((0, i), (0, j)));
                let rhs = &self.augmentation[i] * &self.augmentation[j];
                if lhs != rhs {
                    return Err(Violation::new(
                        ViolationKind::Augmentation,
                        format!(
                            "aug({} * {}) = {lhs}, expected {rhs}",
                            self.name((0, i)),
                            self.name((0, j))
                        ),
                    ));
                }
            }
        }
        for g in self.complex.module().gens() {
            let e = self.augment(&self.complex.d_gen(g));
            if !e.is_zero() {
                return Err(Violation::new(
                    ViolationKind::Augmentation,
                    format!("aug(d({})) = {e}", self.name(g)),
                ));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> std::result::Result<(), Violation> {
        let w = self.window();
        let m = self.complex.module();
        for p in 0..=w {
            for q in 0..=w - p {
                for r in 0..=w - p - q {
                    for i in 0..m.dim(p) {
                        for j in 0..m.dim(q) {
                            let ab = self.mul_gen((p, i), (q, j));
                            for k in 0..m.dim(r) {
                                let c = Combination::term((r, k), Rational::one());
                                let lhs = self.mul(&ab, &c);
                                let bc = self.mul_gen((q, j), (r, k));
                                let rhs =
                                    self.mul(&Combination::term((p, i), Rational::one()), &bc);
                                if lhs != rhs {
                                    return Err(Violation::new(
                                        ViolationKind::Associativity,
                                        format!(
                                            "({} {}) {} = {} but {} ({} {}) = {}",
                                            self.name((p, i)),
                                            self.name((q, j)),
                                            self.name((r, k)),
                                            self.show(&lhs),
                                            self.name((p, i)),
                                            self.name((q, j)),
                                            self.name((r, k)),
                                            self.show(&rhs)
                                        ),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_leibniz(&self) -> std::result::Result<(), Violation> {
        let w = self.window();
        let m = self.complex.module();
        for p in 0..=w {
            for q in 0..=w - p {
                if !self.complex.d_known(p + q) {
                    continue;
                }
                for i in 0..m.dim(p) {
                    let a = Combination::term((p, i), Rational::one());
                    let da = self.d(&a);
                    for j in 0..m.dim(q) {
                        let b = Combination::term((q, j), Rational::one());
                        let lhs = self.d(&self.mul_gen((p, i), (q, j)));
                        let mut rhs = self.mul(&da, &b);
                        rhs.add_scaled(&self.mul(&a, &self.d(&b)), &sign(p));
                        if lhs != rhs {
                            return Err(Violation::new(
                                ViolationKind::Leibniz,
                                format!(
                                    "on the pair ({x}, {y}): d({x} {y}) = {} but d({x}) {y} {} {x} d({y}) = {}",
                                    self.show(&lhs),
                                    if p % 2 == 0 { "+" } else { "-" },
                                    self.show(&rhs),
                                    x = self.name((p, i)),
                                    y = self.name((q, j)),
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `ab = (-1)^{|a||b|} ba` on all basis pairs in the window.
    pub fn check_commutative(&self) -> std::result::Result<(), Violation> {
        let w = self.window();
        let gens: Vec<Gen> = self.complex.module().gens().collect();
        for &a in &gens {
            for &b in &gens {
                if a.0 + b.0 > w || b < a {
                    continue;
                }
                let ab = self.mul_gen(a, b);
                let ba = self.mul_gen(b, a).scaled(&sign(a.0 * b.0));
                if ab != ba {
                    return Err(Violation::new(
                        ViolationKind::Commutativity,
                        format!(
                            "{} {} = {} but (-1)^(|a||b|) {} {} = {}",
                            self.name(a),
                            self.name(b),
                            self.show(&ab),
                            self.name(b),
                            self.name(a),
                            self.show(&ba)
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Whether degree 0 is spanned by the unit.
    pub fn is_connected(&self) -> bool {
        self.complex.dim(0) == 1
    }
}

/// Human-readable rendering of a combination of named generators.
pub fn show_element(m: &super::module::GradedModule, x: &Element) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter()
        .map(|(g, q)| format!("{}*{}", crate::linalg::format_scalar(q), m.name(*g)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Shorthand for building elements in code.
pub fn elem(terms: &[(Gen, i64)]) -> Element {
    terms
        .iter()
        .map(|&(g, k)| (g, crate::linalg::int(k)))
        .collect()
}
