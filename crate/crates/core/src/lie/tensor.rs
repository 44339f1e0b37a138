use std::collections::HashMap;

use num_traits::One;

use crate::barcobar::WordBasis;
use crate::combination::Combination;
use crate::dg::{Complex, DgAlgebra, DgCoalgebra, Direction, Element, Gen, GradedModule, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, Ring, SparseRow};

/// The tensor algebra `T(V)` on named generators of positive degree,
/// truncated at degree `top`, with generators primitive.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    generators: GradedModule,
    words: WordBasis,
    module: GradedModule,
}

impl TensorAlgebra {
    pub fn new(generators: &[(&str, usize)], top: usize, ring: Ring) -> Result<TensorAlgebra> {
        if generators.iter().any(|g| g.1 == 0) {
            return Err(Error::Precondition(
                "generators must have positive degree".into(),
            ));
        }
        let gmax = generators.iter().map(|g| g.1).max().unwrap_or(0);
        let mut basis = vec![Vec::new(); gmax.max(1) + 1];
        for (name, d) in generators {
            basis[*d].push(name.to_string());
        }
        let gm = GradedModule::new(ring, basis)?;
        let letters: Vec<(Gen, usize)> = gm.gens().map(|g| (g, g.0)).collect();
        let words = WordBasis::enumerate(&letters, top, None)?;
        let names = (0..=top)
            .map(|n| {
                words
                    .degree(n)
                    .iter()
                    .map(|w| word_name(&gm, &w.letters))
                    .collect()
            })
            .collect();
        let module = GradedModule::new(ring, names)?;
        Ok(TensorAlgebra {
            generators: gm,
            words,
            module,
        })
    }

    pub fn top(&self) -> usize {
        self.words.top()
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn generators(&self) -> &GradedModule {
        &self.generators
    }

    pub fn words(&self) -> &WordBasis {
        &self.words
    }

    /// Basis element of a single generator.
    pub fn generator(&self, name: &str) -> Option<Gen> {
        let g = self.generators.find(name)?;
        self.words.find(&[g])
    }

    pub fn letters(&self, g: Gen) -> &[Gen] {
        &self.words.word(g).letters
    }

    /// Concatenation, or zero beyond the window.
    pub fn mul_gens(&self, a: Gen, b: Gen) -> Element {
        let mut w = self.letters(a).to_vec();
        w.extend_from_slice(self.letters(b));
        match self.words.find(&w) {
            Some(g) => Combination::term(g, Rational::one()),
            None => Element::new(),
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                out.add_scaled(&self.mul_gens(*a, *b), &(p * q));
            }
        }
        out
    }

    /// `[x, y] = xy - (-1)^{|x||y|} yx` for homogeneous `x`, `y`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        let (Some(dx), Some(dy)) = (degree_of(x), degree_of(y)) else {
            return Element::new();
        };
        let mut out = self.mul(x, y);
        out.add_scaled(&self.mul(y, x), &-sign(dx * dy));
        out
    }

    /// The unshuffle coproduct of a word: each letter is primitive and the
    /// coproduct is multiplicative with the Koszul sign.
    pub fn coproduct_gen(&self, g: Gen) -> Tensor {
        let w = self.letters(g);
        let n = w.len();
        let mut t = Tensor::new();
        for mask in 0u64..(1u64 << n) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut parity = 0;
            let mut right_degree = 0;
            for (i, &x) in w.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    parity += right_degree * x.0;
                    left.push(x);
                } else {
                    right_degree += x.0;
                    right.push(x);
                }
            }
            let l = self.words.find(&left).expect("subword");
            let r = self.words.find(&right).expect("subword");
            t.add_term((l, r), sign(parity));
        }
        t
    }

    /// Coproduct minus the two unit terms.
    pub fn reduced_coproduct(&self, g: Gen) -> Tensor {
        let one = self.words.find(&[]).expect("empty word");
        let mut t = self.coproduct_gen(g);
        t.add_term((one, g), -Rational::one());
        t.add_term((g, one), -Rational::one());
        t
    }

    /// Matrix of the reduced coproduct on degree `n`, with rows indexed by
    /// pairs of positive-degree words.
    pub fn reduced_coproduct_rows(&self, n: usize) -> Vec<SparseRow> {
        let mut pairs: HashMap<(Gen, Gen), usize> = HashMap::new();
        let mut columns: Vec<SparseRow> = Vec::new();
        for j in 0..self.words.dim(n) {
            let mut col = SparseRow::new();
            for (pair, q) in self.reduced_coproduct((n, j)).iter() {
                let k = pairs.len();
                let r = *pairs.entry(*pair).or_insert(k);
                col.insert(r, q.clone());
            }
            columns.push(col);
        }
        let mut rows = vec![SparseRow::new(); pairs.len()];
        for (j, col) in columns.into_iter().enumerate() {
            for (r, q) in col {
                rows[r].insert(j, q);
            }
        }
        rows
    }

    /// `T(V)` as an augmented algebra with the given differential on
    /// generators (extended as a derivation).
    pub fn algebra(
        &self,
        differential: &[(Gen, Element)],
        direction: Direction,
    ) -> Result<DgAlgebra> {
        let d = self.derivation(differential, direction)?;
        let terms = d
            .iter()
            .flat_map(|(g, v)| v.iter().map(move |(h, q)| (*g, *h, q.clone())))
            .collect::<Vec<_>>();
        let complete = self.words.letters().next().is_none();
        let complex = Complex::from_terms(self.module.clone(), direction, terms, complete)?;
        let mut products = Vec::new();
        for p in 1..=self.top() {
            for q in 1..=self.top() - p {
                for i in 0..self.words.dim(p) {
                    for j in 0..self.words.dim(q) {
                        products.push(((p, i), (q, j), self.mul_gens((p, i), (q, j))));
                    }
                }
            }
        }
        let unit = self.words.find(&[]).expect("empty word");
        DgAlgebra::new(complex, products, unit, vec![Rational::one()])
    }

    /// `T(V)` as a coalgebra under the unshuffle coproduct.
    pub fn coalgebra(
        &self,
        differential: &[(Gen, Element)],
        direction: Direction,
    ) -> Result<DgCoalgebra> {
        let a = self.algebra(differential, direction)?;
        let table = self
            .module
            .gens()
            .map(|g| (g, self.coproduct_gen(g)))
            .collect::<Vec<_>>();
        DgCoalgebra::new(a.complex().clone(), table, vec![Rational::one()], a.unit())
    }

    fn derivation(
        &self,
        on_generators: &[(Gen, Element)],
        direction: Direction,
    ) -> Result<Vec<(Gen, Element)>> {
        let mut on: HashMap<Gen, Element> = HashMap::new();
        for (g, v) in on_generators {
            let w = self.letters(*g);
            if w.len() != 1 {
                return Err(Error::Precondition(format!(
                    "{} is not a generator",
                    self.module.name(*g)
                )));
            }
            on.insert(w[0], v.clone());
        }
        let mut out = Vec::new();
        for n in 0..=self.top() {
            for j in 0..self.words.dim(n) {
                let w = &self.words.degree(n)[j].letters;
                let mut value = Element::new();
                let mut before = 0;
                for (i, x) in w.iter().enumerate() {
                    if let Some(dx) = on.get(x) {
                        let prefix = self.words.find(&w[..i]).expect("subword");
                        let suffix = self.words.find(&w[i + 1..]).expect("subword");
                        let term = self.mul(
                            &self.mul(&Combination::term(prefix, Rational::one()), dx),
                            &Combination::term(suffix, Rational::one()),
                        );
                        value.add_scaled(&term, &sign(before));
                    }
                    before += x.0;
                }
                if direction.target(n).is_some_and(|t| t > self.top()) {
                    value = Element::new();
                }
                out.push(((n, j), value));
            }
        }
        Ok(out)
    }
}

fn word_name(gens: &GradedModule, letters: &[Gen]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    letters
        .iter()
        .map(|&g| gens.name(g))
        .collect::<Vec<_>>()
        .join(".")
}

/// The common degree of a homogeneous element, or `None` for zero.
pub fn degree_of(x: &Element) -> Option<usize> {
    x.keys().next().map(|g| g.0)
}

/// The tensor algebra on the given generators as a DGA with zero differential.
pub fn tensor_algebra(
    generators: &[(&str, usize)],
    top: usize,
    direction: Direction,
    ring: Ring,
) -> Result<DgAlgebra> {
    TensorAlgebra::new(generators, top, ring)?.algebra(&[], direction)
}
