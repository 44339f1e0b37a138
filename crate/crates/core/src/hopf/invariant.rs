use num_traits::{One, Zero};

use super::map::AlgebraMap;
use super::model::SphereModel;
use crate::barcobar::{BarComplex, HarrisonComplex};
use crate::combination::Combination;
use crate::dg::{show_element, DgAlgebra, Direction, Element, Gen, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, SparseMatrix, SparseRow};

/// Combination of bar words, each word a list of letters.
pub type BarElement = Combination<Vec<Gen>>;

/// A closed element of the bar construction of a connected cochain algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCocycle {
    algebra: DgAlgebra,
    element: BarElement,
    degree: usize,
}

fn letter_degree(g: Gen) -> usize {
    g.0 - 1
}

fn word_degree(w: &[Gen]) -> usize {
    w.iter().map(|&g| letter_degree(g)).sum()
}

fn check_bar_algebra(a: &DgAlgebra) -> Result<()> {
    if a.complex().direction() != Direction::Cohomological || !a.is_connected() {
        return Err(Error::Precondition(
            "bar cocycles live over connected cochain algebras".into(),
        ));
    }
    Ok(())
}

/// Bar differential of a combination of words, computed letterwise.
pub fn bar_differential(a: &DgAlgebra, x: &BarElement) -> Result<BarElement> {
    let b = BarComplex::new(a, 0, Some(0))?;
    let mut out = BarElement::new();
    for (w, q) in x.iter() {
        out.add_scaled(&b.differential_of_letters(w), q);
    }
    Ok(out)
}

impl BarCocycle {
    pub fn new(algebra: &DgAlgebra, element: BarElement) -> Result<BarCocycle> {
        check_bar_algebra(algebra)?;
        let degrees: Vec<usize> = element.keys().map(|w| word_degree(w)).collect();
        let degree = degrees.first().copied().unwrap_or(0);
        if degrees.iter().any(|&d| d != degree) {
            return Err(Error::Precondition(
                "a bar cocycle must be homogeneous".into(),
            ));
        }
        let m = algebra.complex().module();
        for w in element.keys() {
            if w.is_empty() {
                return Err(Error::Precondition(
                    "the empty word is not a reduced bar element".into(),
                ));
            }
            if let Some(g) = w
                .iter()
                .find(|g| g.0 > m.window() || g.1 >= m.dim(g.0) || g.0 == 0)
            {
                return Err(Error::Precondition(format!("{g:?} is not a letter")));
            }
        }
        let needed = degree + 2;
        if !algebra.complex().is_complete() && algebra.window() < needed {
            return Err(Error::WindowTooSmall(format!(
                "checking a bar cocycle of degree {degree} needs the algebra through degree {needed}"
            )));
        }
        let d = bar_differential(algebra, &element)?;
        if !d.is_zero() {
            return Err(Violation::new(
                ViolationKind::Cocycle,
                format!(
                    "the bar differential of {} is nonzero",
                    render(algebra, &element)
                ),
            )
            .into());
        }
        Ok(BarCocycle {
            algebra: algebra.clone(),
            element,
            degree,
        })
    }

    /// A cocycle from `(coefficient, letter names)` terms.
    pub fn from_words(algebra: &DgAlgebra, terms: &[(Rational, &[&str])]) -> Result<BarCocycle> {
        let m = algebra.complex().module();
        let mut element = BarElement::new();
        for (q, names) in terms {
            let w = names
                .iter()
                .map(|s| {
                    m.find(s)
                        .ok_or_else(|| Error::Parse(format!("unknown letter `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            element.add_term(w, q.clone());
        }
        BarCocycle::new(algebra, element)
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn element(&self) -> &BarElement {
        &self.element
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn max_weight(&self) -> usize {
        self.element.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// `self + d(beta)`.
    pub fn add_coboundary(&self, beta: &BarElement) -> Result<BarCocycle> {
        let mut element = self.element.clone();
        element += &bar_differential(&self.algebra, beta)?;
        BarCocycle::new(&self.algebra, element)
    }

    /// Pushes every letter through `f`.
    pub fn pull_back(&self, f: &AlgebraMap) -> Result<BarCocycle> {
        if f.source() != &self.algebra {
            return Err(Error::Precondition(
                "the map does not start at the cocycle's algebra".into(),
            ));
        }
        check_bar_algebra(f.target())?;
        let mut element = BarElement::new();
        for (w, q) in self.element.iter() {
            let mut partial: Vec<(Vec<Gen>, Rational)> = vec![(Vec::new(), q.clone())];
            for &g in w {
                let image = f.image_gen(g);
                let mut next = Vec::new();
                for (prefix, p) in &partial {
                    for (h, r) in image.iter() {
                        let mut v = prefix.clone();
                        v.push(*h);
                        next.push((v, p * r));
                    }
                }
                partial = next;
            }
            for (v, p) in partial {
                element.add_term(v, p);
            }
        }
        BarCocycle::new(f.target(), element)
    }
}

/// Renders a bar element with letter names.
pub fn render(a: &DgAlgebra, x: &BarElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let m = a.complex().module();
    x.iter()
        .map(|(w, q)| {
            let names: Vec<&str> = w.iter().map(|&g| m.name(g)).collect();
            format!("{}*[{}]", crate::linalg::format_scalar(q), names.join("|"))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A closed degree-`n` cochain `t` and a bar element `beta` with
/// `d(beta) = gamma - [t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReduction {
    pub t: Element,
    pub beta: BarElement,
}

/// Extra weight allowed for `beta` beyond the weight of `gamma`.
const EXTRA_WEIGHT: usize = 3;

pub fn weight_reduce(w: &SphereModel, gamma: &BarCocycle) -> Result<WeightReduction> {
    let a = w.algebra();
    if gamma.algebra() != a {
        return Err(Error::Precondition(
            "the cocycle does not live in the bar construction of the model".into(),
        ));
    }
    let n = w.dimension();
    if gamma.degree() != n - 1 && !gamma.element().is_zero() {
        return Err(Error::Precondition(format!(
            "a cocycle of degree {} cannot be integrated over S^{n}; degree {} is needed",
            gamma.degree(),
            n - 1
        )));
    }
    let cx = a.complex();
    let base = gamma.max_weight().max(1);
    for cap in base + 1..=base + EXTRA_WEIGHT {
        let bar = BarComplex::new(a, n - 1, Some(cap))?;
        let words = bar.words();
        let rows_bar = words.dim(n - 1);
        let rows_w = cx.dim(n + 1);
        let d_bar = bar.complex().d(n - 2);
        let mut columns: Vec<SparseRow> =
            (0..d_bar.cols()).map(|j| d_bar.column(j).clone()).collect();
        for j in 0..cx.dim(n) {
            let mut col = SparseRow::new();
            let word = words
                .find(&[(n, j)])
                .expect("weight-one words are in the basis");
            col.insert(word.1, Rational::one());
            if cx.d_known(n) {
                for (r, q) in cx.d(n).column(j) {
                    col.insert(rows_bar + r, q.clone());
                }
            }
            columns.push(col);
        }
        let m = SparseMatrix::from_columns(rows_bar + rows_w, columns);
        let mut rhs = vec![Rational::zero(); rows_bar + rows_w];
        for (word, q) in gamma.element().iter() {
            let g = words.find(word).ok_or_else(|| {
                Error::Internal("cocycle word missing from the capped bar".into())
            })?;
            rhs[g.1] = q.clone();
        }
        if let Some(x) = m.solve_particular(&rhs) {
            let k = words.dim(n - 2);
            let mut beta = BarElement::new();
            for (i, q) in x[..k].iter().enumerate() {
                if !q.is_zero() {
                    beta.add_term(words.word((n - 2, i)).letters.clone(), q.clone());
                }
            }
            let t: Element = x[k..]
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(j, q)| ((n, j), q.clone()))
                .collect();
            return Ok(WeightReduction { t, beta });
        }
    }
    Err(Error::Precondition(format!(
        "{} is not cohomologous to a weight-one cocycle; the algebra is not a sphere model",
        render(a, gamma.element())
    )))
}

/// The fundamental functional applied to a weight-one reduction of `gamma`.
pub fn integrate(w: &SphereModel, gamma: &BarCocycle) -> Result<Rational> {
    let r = weight_reduce(w, gamma)?;
    Ok(w.evaluate(&r.t))
}

/// Integrates the pullback of `gamma` along `f`.
pub fn hopf_invariant(gamma: &BarCocycle, f: &AlgebraMap, w: &SphereModel) -> Result<Rational> {
    if f.target() != w.algebra() {
        return Err(Error::Precondition(
            "the map must land in the sphere model".into(),
        ));
    }
    if gamma.degree() + 1 != w.dimension() {
        return Err(Error::Precondition(format!(
            "a cocycle of degree {} pairs with S^{}, not S^{}",
            gamma.degree(),
            gamma.degree() + 1,
            w.dimension()
        )));
    }
    integrate(w, &gamma.pull_back(f)?)
}

/// Inputs to the parametrized formula: closed cochains `x_i, y_i` and
/// `theta` with `d theta = sum (-1)^{|x_i|} x_i y_i`.
#[derive(Clone, Debug)]
pub struct ParametrizedData {
    pub xs: Vec<Element>,
    pub ys: Vec<Element>,
    pub theta: Element,
}

fn homogeneous_degree(x: &Element) -> Option<usize> {
    let mut ds = x.keys().map(|g| g.0);
    let d = ds.next()?;
    ds.all(|e| e == d).then_some(d)
}

/// Some `u` with `du = x`, chosen by fixed pivoting.
fn d_inverse(a: &DgAlgebra, x: &Element) -> Result<Element> {
    if x.is_zero() {
        return Ok(Element::new());
    }
    let m = a.complex().module();
    let k =
        homogeneous_degree(x).ok_or_else(|| Error::Precondition("inhomogeneous element".into()))?;
    if k == 0 {
        return Err(Error::Precondition(format!(
            "{} is not exact",
            show_element(m, x)
        )));
    }
    let d = a.complex().d(k - 1);
    let mut rhs = vec![Rational::zero(); a.complex().dim(k)];
    for (g, q) in x.iter() {
        rhs[g.1] = q.clone();
    }
    let u = d
        .solve_particular(&rhs)
        .ok_or_else(|| Error::Precondition(format!("{} is not exact", show_element(m, x))))?;
    Ok(u.into_iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| ((k - 1, i), q))
        .collect())
}

/// Evaluates `theta - sum( t_i (-1)^{|x_i|} d^-1(x_i) y_i + (1 - t_i) x_i d^-1(y_i) )`
/// on the fundamental class.
pub fn parametrized_formula(
    w: &SphereModel,
    data: &ParametrizedData,
    t: &[Rational],
) -> Result<Rational> {
    let a = w.algebra();
    let m = a.complex().module();
    if data.xs.len() != data.ys.len() || data.xs.len() != t.len() {
        return Err(Error::Precondition(
            "x, y and t must have the same length".into(),
        ));
    }
    let mut rhs = Element::new();
    for (x, y) in data.xs.iter().zip(&data.ys) {
        for z in [x, y] {
            if !a.d(z).is_zero() {
                return Err(Violation::new(
                    ViolationKind::Cocycle,
                    format!("{} is not closed", show_element(m, z)),
                )
                .into());
            }
        }
        let s = sign(homogeneous_degree(x).unwrap_or(0));
        rhs.add_scaled(&a.mul(x, y), &s);
    }
    if a.d(&data.theta) != rhs {
        return Err(Violation::new(
            ViolationKind::Cocycle,
            format!(
                "d theta = {} but the identity needs {}",
                show_element(m, &a.d(&data.theta)),
                show_element(m, &rhs)
            ),
        )
        .into());
    }
    let mut total = data.theta.clone();
    for ((x, y), ti) in data.xs.iter().zip(&data.ys).zip(t) {
        let s = sign(homogeneous_degree(x).unwrap_or(0));
        let one_minus = Rational::one() - ti;
        if !ti.is_zero() {
            let u = d_inverse(a, x)?;
            total.add_scaled(&a.mul(&u, y), &-(ti * &s));
        }
        if !one_minus.is_zero() {
            let v = d_inverse(a, y)?;
            total.add_scaled(&a.mul(x, &v), &-one_minus);
        }
    }
    Ok(w.evaluate(&total))
}

/// The bar cocycle `sum [x_i|y_i] + [theta]` matching [`parametrized_formula`].
pub fn parametrized_cocycle(w: &SphereModel, data: &ParametrizedData) -> Result<BarCocycle> {
    let mut element = BarElement::new();
    for (x, y) in data.xs.iter().zip(&data.ys) {
        for (g, p) in x.iter() {
            for (h, q) in y.iter() {
                element.add_term(vec![*g, *h], p * q);
            }
        }
    }
    for (g, q) in data.theta.iter() {
        element.add_term(vec![*g], q.clone());
    }
    BarCocycle::new(w.algebra(), element)
}

/// Invariant of a Harrison cocycle: lift it to the bar construction,
/// correct by shuffles to a bar cocycle, and integrate.
pub fn harrison_invariant(
    w: &SphereModel,
    h: &HarrisonComplex,
    class: &SparseRow,
) -> Result<Rational> {
    let a = w.algebra();
    if h.bar().algebra() != a {
        return Err(Error::Precondition(
            "the Harrison complex is not built on the sphere model".into(),
        ));
    }
    let deg = w.dimension() - 1;
    if h.complex().window() < deg + 1 {
        return Err(Error::WindowTooSmall(format!(
            "the Harrison complex must reach degree {}",
            deg + 1
        )));
    }
    let dh = h.complex().d(deg).apply_sparse(class);
    if !dh.is_empty() {
        return Err(
            Violation::new(ViolationKind::Cocycle, "the Harrison element is not closed").into(),
        );
    }
    let bar = h.bar();
    let kept = h.kept(deg);
    let lift: SparseRow = class.iter().map(|(i, q)| (kept[*i], q.clone())).collect();
    let d = bar.complex().d(deg);
    let dlift = d.apply_sparse(&lift);
    let span = h.shuffle_span(deg);
    let columns: Vec<SparseRow> = span.rows.iter().map(|r| d.apply_sparse(r)).collect();
    let m = SparseMatrix::from_columns(bar.complex().dim(deg + 1), columns);
    let target: Vec<Rational> = crate::linalg::sparse_to_dense(&dlift, bar.complex().dim(deg + 1))
        .into_iter()
        .map(|q| -q)
        .collect();
    let lambda = m
        .solve_particular(&target)
        .ok_or_else(|| Error::Precondition("no shuffle correction makes the lift closed".into()))?;
    let mut total = lift;
    for (row, l) in span.rows.iter().zip(&lambda) {
        for (j, q) in row {
            crate::linalg::matrix::add_entry(&mut total, *j, &(q * l));
        }
    }
    let element: BarElement = total
        .iter()
        .map(|(j, q)| (bar.words().word((deg, *j)).letters.clone(), q.clone()))
        .collect();
    integrate(w, &BarCocycle::new(a, element)?)
}
