use num_traits::{One, Zero};

use super::word::WordBasis;
use crate::combination::Combination;
use crate::dg::{Complex, DgAlgebra, DgCoalgebra, Direction, Gen, GradedModule, Violation};
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, SparseMatrix};

/// The cobar construction of a 1-reduced DG coalgebra, truncated to total
/// degrees `0..=N`, as a DGA under concatenation.
///
/// Letters are the positive-degree generators, desuspended: degree `|c| - 1`
/// for chain coalgebras and `|c| + 1` for cochain coalgebras.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    coalgebra: DgCoalgebra,
    words: WordBasis,
    algebra: DgAlgebra,
}

impl CobarComplex {
    pub fn new(c: &DgCoalgebra, n: usize) -> Result<CobarComplex> {
        let reduced = c.verify()?;
        if !reduced {
            return Err(Error::Precondition(
                "the cobar construction needs a 1-reduced coalgebra (degree 0 spanned by the coaugmentation, degree 1 zero)"
                    .into(),
            ));
        }
        let dir = c.complex().direction();
        let needed = match dir {
            Direction::Homological => n + 1,
            Direction::Cohomological => n.saturating_sub(1),
        };
        if !c.complex().is_complete() && c.window() < needed {
            return Err(Error::WindowTooSmall(format!(
                "the cobar construction through degree {n} needs the coalgebra through degree {needed}, but its window ends at {}",
                c.window()
            )));
        }
        let letters: Vec<(Gen, usize)> = c
            .module()
            .gens()
            .filter(|g| g.0 > 0)
            .map(|g| (g, desuspended(dir, g.0)))
            .collect();
        let words = WordBasis::enumerate(&letters, n, None)?;
        let module = GradedModule::new(c.module().ring(), words.names(c.module(), '<', '>'))?;

        let mut diffs = Vec::with_capacity(n + 1);
        for deg in 0..=n {
            let target = dir.target(deg).filter(|&t| t <= n);
            let rows = target.map_or(0, |t| words.dim(t));
            let mut d = SparseMatrix::zeros(rows, words.dim(deg));
            if target.is_some() {
                for (j, w) in words.degree(deg).iter().enumerate() {
                    for (v, q) in cobar_differential(c, &words, &w.letters).iter() {
                        let g = words.find(v).ok_or_else(|| {
                            Error::Internal("cobar differential left the word basis".into())
                        })?;
                        d.add_to(g.1, j, q);
                    }
                }
            }
            diffs.push(d);
        }
        let complete = letters.is_empty();
        let complex = Complex::new(module, dir, diffs, complete)?;

        let mut products = Vec::new();
        for p in 1..=n {
            for q in 1..=n - p {
                for (i, u) in words.degree(p).iter().enumerate() {
                    for (j, v) in words.degree(q).iter().enumerate() {
                        let mut w = u.letters.clone();
                        w.extend_from_slice(&v.letters);
                        let g = words.find(&w).expect("concatenation stays in the window");
                        products.push(((p, i), (q, j), Combination::term(g, Rational::one())));
                    }
                }
            }
        }
        let empty = words.find(&[]).expect("empty word");
        let mut augmentation = vec![Rational::zero(); words.dim(0)];
        augmentation[empty.1] = Rational::one();
        let algebra = DgAlgebra::new(complex, products, empty, augmentation)?;
        Ok(CobarComplex {
            coalgebra: c.clone(),
            words,
            algebra,
        })
    }

    pub fn coalgebra(&self) -> &DgCoalgebra {
        &self.coalgebra
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn complex(&self) -> &Complex {
        self.algebra.complex()
    }

    pub fn words(&self) -> &WordBasis {
        &self.words
    }

    pub fn window(&self) -> usize {
        self.words.top()
    }
}

pub(crate) fn desuspended(dir: Direction, degree: usize) -> usize {
    match dir {
        Direction::Homological => degree - 1,
        Direction::Cohomological => degree + 1,
    }
}

/// `d[x1|...|xk] = sum_i (-1)^{e_i} ( -[..|dx_i|..] + sum (-1)^{|a|} [..|a|b|..] )`
/// over the reduced coproduct `sum a (x) b` of `x_i`, where `e_i` is the
/// total degree of the letters before position `i`.
fn cobar_differential(
    c: &DgCoalgebra,
    words: &WordBasis,
    letters: &[Gen],
) -> Combination<Vec<Gen>> {
    let mut out = Combination::new();
    let mut eps = 0;
    for (i, &x) in letters.iter().enumerate() {
        for (g, q) in c.complex().d_gen(x).iter() {
            if g.0 == 0 {
                continue;
            }
            let mut w = letters.to_vec();
            w[i] = *g;
            out.add_term(w, -(q * sign(eps)));
        }
        for ((a, b), q) in c.reduced_coproduct(x).iter() {
            let mut w = letters[..i].to_vec();
            w.push(*a);
            w.push(*b);
            w.extend_from_slice(&letters[i + 1..]);
            out.add_term(w, q * sign(eps + a.0));
        }
        eps += words.shift(x);
    }
    out
}

/// Checks that a coalgebra is 1-reduced, naming the offending degree.
pub fn require_one_reduced(c: &DgCoalgebra) -> std::result::Result<(), Violation> {
    c.verify_claim(true).map(|_| ())
}
