use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::{One, Zero};

use super::word::WordBasis;
use crate::combination::Combination;
use crate::dg::{Complex, DgAlgebra, DgCoalgebra, Direction, Element, Gen, GradedModule, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, Ring, SparseMatrix};
use crate::simplicial::GroupTable;

/// The bar construction of an augmented DGA, truncated to total degrees
/// `0..=N`, as a DG coalgebra under deconcatenation.
///
/// Letters are the generators other than the unit, each degree-0 letter `g`
/// standing for `g - aug(g) 1`. A letter of degree `|a|` has shifted degree
/// `|a| + 1` for chain algebras and `|a| - 1` for cochain algebras.
#[derive(Clone, Debug)]
pub struct BarComplex {
    algebra: DgAlgebra,
    words: WordBasis,
    coalgebra: DgCoalgebra,
    max_weight: Option<usize>,
}

pub(crate) fn shifted(direction: Direction, degree: usize) -> Option<usize> {
    match direction {
        Direction::Homological => Some(degree + 1),
        Direction::Cohomological => degree.checked_sub(1),
    }
}

struct LetterOps<'a> {
    a: &'a DgAlgebra,
    products: RefCell<HashMap<(Gen, Gen), Element>>,
}

impl<'a> LetterOps<'a> {
    /// Reduced coordinates of `d(x)`.
    fn d(&self, x: Gen) -> Element {
        let unit = self.a.unit();
        self.a
            .complex()
            .d_gen(x)
            .into_iter()
            .filter(|(g, _)| *g != unit)
            .collect()
    }

    /// Reduced coordinates of the product of two letters.
    fn mul(&self, x: Gen, y: Gen) -> Element {
        if let Some(p) = self.products.borrow().get(&(x, y)) {
            return p.clone();
        }
        let unit = self.a.unit();
        let mut p: Element = self
            .a
            .mul_gen(x, y)
            .into_iter()
            .filter(|(g, _)| *g != unit)
            .collect();
        if y.0 == 0 {
            p.add_term(x, -self.a.augmentation()[y.1].clone());
        }
        if x.0 == 0 {
            p.add_term(y, -self.a.augmentation()[x.1].clone());
        }
        self.products.borrow_mut().insert((x, y), p.clone());
        p
    }
}

impl BarComplex {
    pub fn new(a: &DgAlgebra, n: usize, max_weight: Option<usize>) -> Result<BarComplex> {
        let dir = a.complex().direction();
        let needed = match dir {
            Direction::Homological => n.saturating_sub(1),
            Direction::Cohomological => n + 1,
        };
        if !a.complex().is_complete() && a.window() < needed {
            return Err(Error::WindowTooSmall(format!(
                "the bar construction through degree {n} needs the algebra through degree {needed}, but its window ends at {}",
                a.window()
            )));
        }
        let mut letters = Vec::new();
        for g in a.reduced_gens() {
            let s = shifted(dir, g.0).ok_or_else(|| {
                Error::Precondition(
                    "a cochain algebra must be connected (degree 0 spanned by the unit) to form its bar construction".into(),
                )
            })?;
            letters.push((g, s));
        }
        let words = WordBasis::enumerate(&letters, n, max_weight)?;
        let module = GradedModule::new(a.ring(), words.names(a.complex().module(), '[', ']'))?;
        let ops = LetterOps {
            a,
            products: RefCell::new(HashMap::new()),
        };

        let mut diffs = Vec::with_capacity(n + 1);
        for deg in 0..=n {
            let target = dir.target(deg).filter(|&t| t <= n);
            let rows = target.map_or(0, |t| words.dim(t));
            let mut d = SparseMatrix::zeros(rows, words.dim(deg));
            if target.is_some() {
                for (j, w) in words.degree(deg).iter().enumerate() {
                    for (v, q) in bar_differential(&ops, &words, &w.letters).iter() {
                        let g = words.find(v).ok_or_else(|| {
                            Error::Internal("bar differential left the word basis".into())
                        })?;
                        d.add_to(g.1, j, q);
                    }
                }
            }
            diffs.push(d);
        }
        let complete = words.letters().next().is_none();
        let complex = Complex::new(module, dir, diffs, complete)?;

        let mut table = Vec::new();
        for deg in 0..=n {
            for (j, w) in words.degree(deg).iter().enumerate() {
                let mut t = Tensor::new();
                for i in 0..=w.weight() {
                    let l = words.find(&w.letters[..i]).expect("prefix is a word");
                    let r = words.find(&w.letters[i..]).expect("suffix is a word");
                    t.add_term((l, r), Rational::one());
                }
                table.push(((deg, j), t));
            }
        }
        let empty = words.find(&[]).expect("empty word");
        let mut counit = vec![Rational::zero(); words.dim(0)];
        counit[empty.1] = Rational::one();
        let coalgebra = DgCoalgebra::new(complex, table, counit, empty)?;
        Ok(BarComplex {
            algebra: a.clone(),
            words,
            coalgebra,
            max_weight,
        })
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &DgCoalgebra {
        &self.coalgebra
    }

    pub fn complex(&self) -> &Complex {
        self.coalgebra.complex()
    }

    pub fn words(&self) -> &WordBasis {
        &self.words
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.max_weight
    }

    pub fn window(&self) -> usize {
        self.words.top()
    }

    /// Basis element for a word given by letter names.
    pub fn word_gen(&self, names: &[&str]) -> Result<Gen> {
        let m = self.algebra.complex().module();
        let letters = names
            .iter()
            .map(|s| {
                m.find(s)
                    .ok_or_else(|| Error::Parse(format!("unknown letter `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.words.find(&letters).ok_or_else(|| {
            Error::Precondition(format!(
                "[{}] is not a word of this bar complex",
                names.join("|")
            ))
        })
    }

    /// Applies the differential to a combination of words by letters,
    /// without reference to the window.
    pub fn differential_of_letters(&self, letters: &[Gen]) -> Combination<Vec<Gen>> {
        let ops = LetterOps {
            a: &self.algebra,
            products: RefCell::new(HashMap::new()),
        };
        bar_differential(&ops, &self.words, letters)
    }
}

fn bar_differential(ops: &LetterOps, words: &WordBasis, letters: &[Gen]) -> Combination<Vec<Gen>> {
    let mut out = Combination::new();
    let mut eps = 0;
    for i in 0..letters.len() {
        for (g, q) in ops.d(letters[i]).iter() {
            let mut w = letters.to_vec();
            w[i] = *g;
            out.add_term(w, q * sign(eps));
        }
        eps += words.shift(letters[i]);
        if i + 1 < letters.len() {
            for (g, q) in ops.mul(letters[i], letters[i + 1]).iter() {
                let mut w = letters[..i].to_vec();
                w.push(*g);
                w.extend_from_slice(&letters[i + 2..]);
                out.add_term(w, q * sign(eps));
            }
        }
    }
    out
}

/// The group ring `k[G]` as an augmented algebra concentrated in degree 0.
pub fn group_ring(g: &GroupTable, ring: Ring) -> DgAlgebra {
    let module =
        GradedModule::new(ring, vec![g.names().to_vec()]).expect("element names are distinct");
    let complex = Complex::zero(module, Direction::Homological, true);
    let n = g.order();
    let products = (0..n).flat_map(|a| {
        (0..n).map(move |b| {
            (
                (0, a),
                (0, b),
                Combination::term((0, g.mul(a, b)), Rational::one()),
            )
        })
    });
    DgAlgebra::new(
        complex,
        products,
        (0, g.identity()),
        vec![Rational::one(); n],
    )
    .expect("group rings are algebras")
}

/// The bar construction of the group ring, in total degrees `0..=N`.
pub fn group_bar(g: &GroupTable, n: usize, ring: Ring) -> Result<BarComplex> {
    BarComplex::new(&group_ring(g, ring), n, None)
}
