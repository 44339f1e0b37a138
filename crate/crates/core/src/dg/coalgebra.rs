use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::{show_element, Element};
use super::complex::Complex;
use super::module::{Gen, GradedModule};
use super::violation::{Violation, ViolationKind};
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, sign, Rational, Ring};

pub type Tensor = Combination<(Gen, Gen)>;

/// A differential graded coalgebra with an explicit (full) coproduct table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCoalgebra {
    complex: Complex,
    coproduct: BTreeMap<Gen, Tensor>,
    counit: Vec<Rational>,
    coaugmentation: Gen,
}

impl DgCoalgebra {
    /// `coproduct` lists the full coproduct of each generator; generators
    /// without an entry have zero coproduct.
    pub fn new(
        complex: Complex,
        coproduct: impl IntoIterator<Item = (Gen, Tensor)>,
        counit: Vec<Rational>,
        coaugmentation: Gen,
    ) -> Result<DgCoalgebra> {
        let m = complex.module();
        if coaugmentation.0 != 0 || coaugmentation.1 >= m.dim(0) {
            return Err(Error::Precondition(
                "coaugmentation must be a degree-0 generator".into(),
            ));
        }
        if counit.len() != m.dim(0) {
            return Err(Error::Precondition(format!(
                "counit has {} values for {} degree-0 generators",
                counit.len(),
                m.dim(0)
            )));
        }
        let mut table: BTreeMap<Gen, Tensor> = BTreeMap::new();
        for (x, t) in coproduct {
            for ((l, r), q) in t.iter() {
                if l.0 + r.0 != x.0 {
                    return Err(Violation::new(
                        ViolationKind::Degree,
                        format!(
                            "coproduct of {} has a term {} (x) {} of degree {}",
                            m.name(x),
                            m.name(*l),
                            m.name(*r),
                            l.0 + r.0
                        ),
                    )
                    .into());
                }
                if m.ring() == Ring::Z && !q.is_integer() {
                    return Err(Error::Precondition(format!(
                        "non-integral coproduct coefficient {q} over Z"
                    )));
                }
            }
            *table.entry(x).or_default() += &t;
        }
        table.retain(|_, t| !t.is_zero());
        Ok(DgCoalgebra {
            complex,
            coproduct: table,
            counit,
            coaugmentation,
        })
    }

    /// Builds a coalgebra from its reduced coproduct: every positive-degree
    /// generator `x` gets `1 (x) x + x (x) 1` added, and the coaugmentation is
    /// group-like. Degree 0 must be spanned by the coaugmentation.
    pub fn from_reduced(
        complex: Complex,
        reduced: impl IntoIterator<Item = (Gen, Tensor)>,
    ) -> Result<DgCoalgebra> {
        if complex.dim(0) != 1 {
            return Err(Error::Precondition(
                "a reduced coproduct determines the coalgebra only when degree 0 is one-dimensional".into(),
            ));
        }
        let one = (0, 0);
        let mut table: BTreeMap<Gen, Tensor> = reduced.into_iter().collect();
        for g in complex.module().gens().collect::<Vec<_>>() {
            let t = table.entry(g).or_default();
            if g == one {
                t.add_term((one, one), Rational::one());
            } else {
                t.add_term((one, g), Rational::one());
                t.add_term((g, one), Rational::one());
            }
        }
        DgCoalgebra::new(complex, table, vec![Rational::one()], one)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn module(&self) -> &GradedModule {
        self.complex.module()
    }

    pub fn window(&self) -> usize {
        self.complex.window()
    }

    pub fn counit(&self) -> &[Rational] {
        &self.counit
    }

    pub fn coaugmentation(&self) -> Gen {
        self.coaugmentation
    }

    pub fn coproduct_table(&self) -> &BTreeMap<Gen, Tensor> {
        &self.coproduct
    }

    pub fn coproduct_gen(&self, x: Gen) -> Tensor {
        self.coproduct.get(&x).cloned().unwrap_or_default()
    }

    pub fn coproduct(&self, x: &Element) -> Tensor {
        let mut out = Tensor::new();
        for (g, q) in x.iter() {
            if let Some(t) = self.coproduct.get(g) {
                out.add_scaled(t, q);
            }
        }
        out
    }

    /// `Delta(x) - 1 (x) x - x (x) 1` for a positive-degree generator.
    pub fn reduced_coproduct(&self, x: Gen) -> Tensor {
        let one = self.coaugmentation;
        let mut t = self.coproduct_gen(x);
        t.add_term((one, x), -Rational::one());
        t.add_term((x, one), -Rational::one());
        t
    }

    pub fn counit_of(&self, x: &Element) -> Rational {
        x.iter()
            .filter(|(g, _)| g.0 == 0)
            .map(|(g, q)| q * &self.counit[g.1])
            .fold(Rational::zero(), |s, t| s + t)
    }

    /// Degree 0 is the coaugmentation alone and degree 1 vanishes, so every
    /// reduced coproduct factor has degree at least 2.
    pub fn is_one_reduced(&self) -> bool {
        self.complex.dim(0) == 1 && self.complex.dim(1) == 0
    }

    fn name(&self, g: Gen) -> &str {
        self.module().name(g)
    }

    fn show_tensor(&self, t: &Tensor) -> String {
        show_tensor(self.module(), t)
    }

    /// Checks every coalgebra identity in the window and reports whether the
    /// coalgebra is 1-reduced.
    pub fn verify(&self) -> std::result::Result<bool, Violation> {
        self.complex.check_d_squared()?;
        self.check_counit()?;
        self.check_coaugmentation()?;
        self.check_coassociativity()?;
        self.check_coleibniz()?;
        Ok(self.is_one_reduced())
    }

    /// Like [`verify`](Self::verify) but additionally requires the 1-reduced
    /// property when `claimed` is set.
    pub fn verify_claim(&self, claimed: bool) -> std::result::Result<bool, Violation> {
        let reduced = self.verify()?;
        if claimed && !reduced {
            return Err(Violation::new(
                ViolationKind::OneReduced,
                format!(
                    "claimed 1-reduced but degree 0 has dimension {} and degree 1 has dimension {}",
                    self.complex.dim(0),
                    self.complex.dim(1)
                ),
            ));
        }
        Ok(reduced)
    }

    fn check_counit(&self) -> std::result::Result<(), Violation> {
        for g in self.module().gens() {
            let t = self.coproduct_gen(g);
            let mut left = Element::new();
            let mut right = Element::new();
            for ((l, r), q) in t.iter() {
                if l.0 == 0 {
                    left.add_term(*r, q * &self.counit[l.1]);
                }
                if r.0 == 0 {
                    right.add_term(*l, q * &self.counit[r.1]);
                }
            }
            let x = Combination::term(g, Rational::one());
            if left != x || right != x {
                return Err(Violation::new(
                    ViolationKind::Counit,
                    format!(
                        "counit laws fail on {}: (e (x) 1)D = {}, (1 (x) e)D = {}",
                        self.name(g),
                        show_element(self.module(), &left),
                        show_element(self.module(), &right)
                    ),
                ));
            }
            let e = self.counit_of(&self.complex.d_gen(g));
            if !e.is_zero() {
                return Err(Violation::new(
                    ViolationKind::Counit,
                    format!("counit of d({}) is {e}", self.name(g)),
                ));
            }
        }
        Ok(())
    }

    fn check_coaugmentation(&self) -> std::result::Result<(), Violation> {
        let one = self.coaugmentation;
        let t = self.coproduct_gen(one);
        if t != Tensor::term((one, one), Rational::one()) {
            return Err(Violation::new(
                ViolationKind::Coaugmentation,
                format!(
                    "{} is not group-like: D = {}",
                    self.name(one),
                    self.show_tensor(&t)
                ),
            ));
        }
        if !self.counit[one.1].is_one() {
            return Err(Violation::new(
                ViolationKind::Coaugmentation,
                format!(
                    "counit of {} is {}",
                    self.name(one),
                    format_scalar(&self.counit[one.1])
                ),
            ));
        }
        let d = self.complex.d_gen(one);
        if !d.is_zero() {
            return Err(Violation::new(
                ViolationKind::Coaugmentation,
                format!(
                    "d({}) = {}",
                    self.name(one),
                    show_element(self.module(), &d)
                ),
            ));
        }
        Ok(())
    }

    fn check_coassociativity(&self) -> std::result::Result<(), Violation> {
        for g in self.module().gens() {
            let t = self.coproduct_gen(g);
            let mut lhs: Combination<(Gen, Gen, Gen)> = Combination::new();
            let mut rhs: Combination<(Gen, Gen, Gen)> = Combination::new();
            for ((l, r), q) in t.iter() {
                for ((ll, lr), p) in self.coproduct_gen(*l).iter() {
                    lhs.add_term((*ll, *lr, *r), q * p);
                }
                for ((rl, rr), p) in self.coproduct_gen(*r).iter() {
                    rhs.add_term((*l, *rl, *rr), q * p);
                }
            }
            if lhs != rhs {
                let diff = lhs - rhs;
                let ((a, b, c), q) = diff.iter().next().unwrap();
                return Err(Violation::new(
                    ViolationKind::Coassociativity,
                    format!(
                        "coassociativity fails on {}: coefficient {} on {} (x) {} (x) {}",
                        self.name(g),
                        format_scalar(q),
                        self.name(*a),
                        self.name(*b),
                        self.name(*c)
                    ),
                ));
            }
        }
        Ok(())
    }

    fn check_coleibniz(&self) -> std::result::Result<(), Violation> {
        for g in self.module().gens() {
            if !self.complex.d_known(g.0) {
                continue;
            }
            let lhs = self.coproduct(&self.complex.d_gen(g));
            let mut rhs = Tensor::new();
            for ((l, r), q) in self.coproduct_gen(g).iter() {
                for (dl, p) in self.complex.d_gen(*l).iter() {
                    rhs.add_term((*dl, *r), q * p);
                }
                for (dr, p) in self.complex.d_gen(*r).iter() {
                    rhs.add_term((*l, *dr), q * p * sign(l.0));
                }
            }
            if lhs != rhs {
                return Err(Violation::new(
                    ViolationKind::CoLeibniz,
                    format!(
                        "D(d({})) = {} but (d (x) 1 + 1 (x) d)D = {}",
                        self.name(g),
                        self.show_tensor(&lhs),
                        self.show_tensor(&rhs)
                    ),
                ));
            }
        }
        Ok(())
    }
}

pub fn show_tensor(m: &GradedModule, t: &Tensor) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .map(|((l, r), q)| format!("{}*{}(x){}", format_scalar(q), m.name(*l), m.name(*r)))
        .collect::<Vec<_>>()
        .join(" + ")
}
