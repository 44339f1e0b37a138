use num_traits::{One, Zero};

use crate::combination::Combination;
use crate::dg::{
    Complex, DgAlgebra, Direction, Element, Gen, GradedModule, Violation, ViolationKind,
};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Ring};

/// A cochain model of the `n`-sphere with a functional on degree `n` that
/// evaluates the fundamental class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereModel {
    algebra: DgAlgebra,
    n: usize,
    fundamental: Vec<Rational>,
    class: Element,
}

impl SphereModel {
    pub fn new(algebra: DgAlgebra, n: usize, fundamental: Vec<Rational>) -> Result<SphereModel> {
        let cx = algebra.complex();
        if cx.direction() != Direction::Cohomological {
            return Err(Error::Precondition(
                "a sphere model is a cochain algebra".into(),
            ));
        }
        if n < 2 {
            return Err(Error::Precondition(
                "sphere models are supported for n >= 2".into(),
            ));
        }
        if !algebra.is_connected() {
            return Err(Error::Precondition(
                "a sphere model must be connected".into(),
            ));
        }
        if !cx.is_complete() && cx.window() < n + 1 {
            return Err(Error::WindowTooSmall(format!(
                "a model of S^{n} needs degrees through {}, but its window ends at {}",
                n + 1,
                cx.window()
            )));
        }
        if fundamental.len() != cx.dim(n) {
            return Err(Error::Precondition(format!(
                "the fundamental functional has {} values for {} generators in degree {n}",
                fundamental.len(),
                cx.dim(n)
            )));
        }
        algebra.verify()?;
        let report = cx.homology(cx.valid_degrees())?;
        for h in &report.degrees {
            let expected = usize::from(h.degree == 0 || h.degree == n);
            if h.rank != expected {
                return Err(Violation::new(
                    ViolationKind::SphereModel,
                    format!(
                        "cohomology has rank {} in degree {}, expected {expected}",
                        h.rank, h.degree
                    ),
                )
                .into());
            }
        }
        // The functional must kill coboundaries.
        let d_in = cx.d(n - 1);
        for j in 0..d_in.cols() {
            let v: Rational = d_in
                .column(j)
                .iter()
                .map(|(r, q)| q * &fundamental[*r])
                .sum();
            if !v.is_zero() {
                return Err(Violation::new(
                    ViolationKind::SphereModel,
                    format!(
                        "the fundamental functional is nonzero on d({})",
                        cx.module().name((n - 1, j))
                    ),
                )
                .into());
            }
        }
        let class = cx
            .d(n)
            .kernel_basis()
            .into_iter()
            .find_map(|v| {
                let value: Rational = v.iter().zip(&fundamental).map(|(a, b)| a * b).sum();
                (!value.is_zero()).then(|| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, q)| !q.is_zero())
                        .map(|(i, q)| ((n, i), q / &value))
                        .collect::<Element>()
                })
            })
            .ok_or_else(|| {
                Violation::new(
                    ViolationKind::SphereModel,
                    "the fundamental functional vanishes on every cocycle",
                )
            })?;
        Ok(SphereModel {
            algebra,
            n,
            fundamental,
            class,
        })
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn fundamental(&self) -> &[Rational] {
        &self.fundamental
    }

    /// A cocycle on which the functional is 1.
    pub fn fundamental_class(&self) -> &Element {
        &self.class
    }

    /// Value of the functional on an element; other degrees give 0.
    pub fn evaluate(&self, x: &Element) -> Rational {
        x.iter()
            .filter(|(g, _)| g.0 == self.n)
            .map(|(g, q)| q * &self.fundamental[g.1])
            .sum()
    }
}

/// The minimal model of the Hopf map's source: `1, c, a, b` in degrees
/// 0 to 3 with `dc = a` and `ca = ac = b`.
pub fn hopf_map_model() -> SphereModel {
    let one = Rational::one();
    linking_model(&[vec![one]]).expect("the Hopf map model is a sphere model")
}

/// A model of `S^3` with classes `c_i` in degree 1, `a_i = dc_i`, and `b` in
/// degree 3, where `c_i a_j = a_j c_i = L_ij b` for a symmetric matrix `L`.
///
/// With one class this is [`hopf_map_model`], with generators named
/// `c, a, b`; otherwise they are `c1, c2, ..., a1, a2, ..., b`.
pub fn linking_model(l: &[Vec<Rational>]) -> Result<SphereModel> {
    let k = l.len();
    if k == 0 || l.iter().any(|row| row.len() != k) {
        return Err(Error::Precondition(
            "the linking matrix must be square and nonempty".into(),
        ));
    }
    for i in 0..k {
        for j in 0..k {
            if l[i][j] != l[j][i] {
                return Err(Error::Precondition(
                    "the linking matrix must be symmetric".into(),
                ));
            }
        }
    }
    let name = |s: &str, i: usize| {
        if k == 1 {
            s.to_string()
        } else {
            format!("{s}{}", i + 1)
        }
    };
    let basis = vec![
        vec!["1".to_string()],
        (0..k).map(|i| name("c", i)).collect(),
        (0..k).map(|i| name("a", i)).collect(),
        vec!["b".to_string()],
    ];
    let module = GradedModule::new(Ring::Q, basis)?;
    let terms = (0..k).map(|i| ((1, i), (2, i), Rational::one()));
    let complex = Complex::from_terms(module, Direction::Cohomological, terms, true)?;
    let mut products = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if !l[i][j].is_zero() {
                let b = Combination::term((3, 0), l[i][j].clone());
                products.push(((1, i), (2, j), b.clone()));
                products.push(((2, j), (1, i), b));
            }
        }
    }
    let algebra = DgAlgebra::new(complex, products, (0, 0), vec![Rational::one()])?;
    SphereModel::new(algebra, 3, vec![Rational::one()])
}

/// Builds an element from `(coefficient, generator name)` pairs.
pub fn named_element(algebra: &DgAlgebra, terms: &[(Rational, &str)]) -> Result<Element> {
    let m = algebra.complex().module();
    let mut out = Element::new();
    for (q, s) in terms {
        let g: Gen = m
            .find(s)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{s}`")))?;
        out.add_term(g, q.clone());
    }
    Ok(out)
}
