//! Small standard algebras and coalgebras used as inputs and fixtures.

use std::collections::BTreeMap;

use num_traits::One;

use crate::combination::Combination;
use crate::dg::{Complex, DgAlgebra, DgCoalgebra, Direction, Element, Gen, GradedModule, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, Ring};

fn power_name(x: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => x.into(),
        _ => format!("{x}^{k}"),
    }
}

/// `k[x] / x^height` with zero differential, through its top degree.
pub fn truncated_polynomial(
    x: &str,
    degree: usize,
    height: usize,
    direction: Direction,
    ring: Ring,
) -> Result<DgAlgebra> {
    if degree == 0 || height == 0 {
        return Err(Error::Precondition(
            "need a positive degree and height".into(),
        ));
    }
    if degree % 2 == 1 && height > 2 {
        return Err(Error::Precondition(
            "an odd generator squares to zero in a graded-commutative algebra; use height 2".into(),
        ));
    }
    let top = degree * (height - 1);
    let mut basis = vec![Vec::new(); top + 1];
    for k in 0..height {
        basis[k * degree].push(power_name(x, k));
    }
    let module = GradedModule::new(ring, basis)?;
    let complex = Complex::zero(module, direction, true);
    let mut products = Vec::new();
    for i in 1..height {
        for j in 1..height - i {
            products.push((
                (i * degree, 0),
                (j * degree, 0),
                Combination::term(((i + j) * degree, 0), Rational::one()),
            ));
        }
    }
    DgAlgebra::new(complex, products, (0, 0), vec![Rational::one()])
}

/// The exterior algebra `Lambda(x)` on one generator of odd degree.
pub fn exterior(x: &str, degree: usize, direction: Direction, ring: Ring) -> Result<DgAlgebra> {
    if degree.is_multiple_of(2) {
        return Err(Error::Precondition(
            "exterior generators must have odd degree".into(),
        ));
    }
    truncated_polynomial(x, degree, 2, direction, ring)
}

/// A monomial in a free graded-commutative algebra, as exponents.
pub type Monomial = Vec<usize>;

/// The free graded-commutative algebra on named generators of positive
/// degree, truncated at total degree `top`: polynomial on even generators,
/// exterior on odd ones. Monomials are written in generator order.
#[derive(Clone, Debug)]
pub struct FreeCommutative {
    pub generators: Vec<(String, usize)>,
    pub monomials: Vec<Vec<Monomial>>,
    index: BTreeMap<Monomial, Gen>,
}

impl FreeCommutative {
    pub fn new(generators: &[(String, usize)], top: usize) -> Result<FreeCommutative> {
        if generators.iter().any(|g| g.1 == 0) {
            return Err(Error::Precondition(
                "generators must have positive degree".into(),
            ));
        }
        let k = generators.len();
        let mut monomials: Vec<Vec<Monomial>> = vec![Vec::new(); top + 1];
        let mut stack = vec![(vec![0usize; k], 0usize, 0usize)];
        while let Some((m, deg, next)) = stack.pop() {
            monomials[deg].push(m.clone());
            for i in next..k {
                let (_, d) = generators[i];
                let max = if d % 2 == 1 { 1 } else { usize::MAX };
                let mut e = m.clone();
                let mut dd = deg;
                for _ in 0..max {
                    dd += d;
                    if dd > top {
                        break;
                    }
                    e[i] += 1;
                    stack.push((e.clone(), dd, i + 1));
                }
            }
        }
        for ms in &mut monomials {
            ms.sort_by(|a, b| b.cmp(a));
        }
        let mut index = BTreeMap::new();
        for (d, ms) in monomials.iter().enumerate() {
            for (i, m) in ms.iter().enumerate() {
                index.insert(m.clone(), (d, i));
            }
        }
        Ok(FreeCommutative {
            generators: generators.to_vec(),
            monomials,
            index,
        })
    }

    pub fn top(&self) -> usize {
        self.monomials.len() - 1
    }

    pub fn find(&self, m: &Monomial) -> Option<Gen> {
        self.index.get(m).copied()
    }

    pub fn monomial(&self, g: Gen) -> &Monomial {
        &self.monomials[g.0][g.1]
    }

    pub fn generator(&self, i: usize) -> Option<Gen> {
        let mut e = vec![0; self.generators.len()];
        e[i] = 1;
        self.find(&e)
    }

    pub fn name(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| power_name(&self.generators[i].0, e))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("")
        }
    }

    pub fn module(&self, ring: Ring) -> Result<GradedModule> {
        GradedModule::new(
            ring,
            self.monomials
                .iter()
                .map(|ms| ms.iter().map(|m| self.name(m)).collect())
                .collect(),
        )
    }

    /// Product of two monomials with the Koszul sign, or `None` when an odd
    /// generator repeats or the degree leaves the window.
    pub fn mul(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, Rational)> {
        let mut parity = 0;
        for (i, &eb) in b.iter().enumerate() {
            if eb == 0 || self.generators[i].1.is_multiple_of(2) {
                continue;
            }
            if a[i] > 0 {
                return None;
            }
            parity += a
                .iter()
                .enumerate()
                .skip(i + 1)
                .filter(|&(j, &ea)| ea > 0 && self.generators[j].1 % 2 == 1)
                .count();
        }
        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.find(&m).map(|_| (m, sign(parity)))
    }

    pub fn mul_gens(&self, a: Gen, b: Gen) -> Element {
        match self.mul(self.monomial(a), self.monomial(b)) {
            Some((m, q)) => Combination::term(self.find(&m).unwrap(), q),
            None => Element::new(),
        }
    }

    pub fn mul_elems(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                out.add_scaled(&self.mul_gens(*a, *b), &(p * q));
            }
        }
        out
    }

    /// Extends values on generators to a derivation of degree `step` on every
    /// monomial, dropping terms beyond the window.
    pub fn derivation(&self, on_generators: &[Element]) -> BTreeMap<Gen, Element> {
        let mut out: BTreeMap<Gen, Element> = BTreeMap::new();
        for (deg, ms) in self.monomials.iter().enumerate() {
            for (i, m) in ms.iter().enumerate() {
                let g = (deg, i);
                let Some(first) = m.iter().position(|&e| e > 0) else {
                    out.insert(g, Element::new());
                    continue;
                };
                let mut rest = m.clone();
                rest[first] -= 1;
                let rest_gen = self.find(&rest).expect("divisors stay in the window");
                let x = self.generator(first).expect("generator in window");
                // d(x * rest) = d(x) rest + (-1)^{|x|} x d(rest)
                let rest_elem = Combination::term(rest_gen, Rational::one());
                let mut value = self.mul_elems(&on_generators[first], &rest_elem);
                let d_rest = out.get(&rest_gen).cloned().unwrap_or_default();
                let x_elem = Combination::term(x, Rational::one());
                value.add_scaled(
                    &self.mul_elems(&x_elem, &d_rest),
                    &sign(self.generators[first].1),
                );
                out.insert(g, value);
            }
        }
        out
    }

    /// Whether every monomial of the full (untruncated) algebra fits in the window.
    pub fn is_finite_in_window(&self) -> bool {
        self.generators.iter().all(|g| g.1 % 2 == 1)
            && self.generators.iter().map(|g| g.1).sum::<usize>() <= self.top()
    }
}

/// The free graded-commutative DGA with the given differential on
/// generators (as linear combinations of monomial names), truncated at `top`.
pub fn free_commutative_algebra(
    generators: &[(&str, usize)],
    differential: &[(&str, &[(Rational, &str)])],
    top: usize,
    direction: Direction,
    ring: Ring,
) -> Result<DgAlgebra> {
    let gens: Vec<(String, usize)> = generators
        .iter()
        .map(|(s, d)| (s.to_string(), *d))
        .collect();
    let fc = FreeCommutative::new(&gens, top)?;
    let module = fc.module(ring)?;
    let mut on_gens = vec![Element::new(); gens.len()];
    for (x, terms) in differential {
        let i = gens
            .iter()
            .position(|g| g.0 == *x)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{x}`")))?;
        for (q, name) in terms.iter() {
            let g = module
                .find(name)
                .ok_or_else(|| Error::Parse(format!("unknown monomial `{name}`")))?;
            on_gens[i].add_term(g, q.clone());
        }
    }
    let d = fc.derivation(&on_gens);
    let terms = d
        .iter()
        .flat_map(|(g, v)| v.iter().map(move |(h, q)| (*g, *h, q.clone())))
        .collect::<Vec<_>>();
    let complex = Complex::from_terms(module, direction, terms, fc.is_finite_in_window())?;
    let mut products = Vec::new();
    for a in complex.module().gens() {
        for b in complex.module().gens() {
            if a.0 > 0 && b.0 > 0 && a.0 + b.0 <= top {
                products.push((a, b, fc.mul_gens(a, b)));
            }
        }
    }
    DgAlgebra::new(complex, products, (0, 0), vec![Rational::one()])
}

/// The homology coalgebra of `CP^infinity` through degree `top`: `x_{2n}`
/// with `D x_{2n} = sum_i x_{2i} (x) x_{2n-2i}`.
pub fn cp_infinity_coalgebra(top: usize, ring: Ring) -> Result<DgCoalgebra> {
    let mut basis = vec![Vec::new(); top + 1];
    for d in (0..=top).step_by(2) {
        basis[d].push(format!("x{d}"));
    }
    let module = GradedModule::new(ring, basis)?;
    let complex = Complex::zero(module, Direction::Homological, false);
    let mut table = Vec::new();
    for n in (0..=top).step_by(2) {
        let mut t = Tensor::new();
        for i in (0..=n).step_by(2) {
            t.add_term(((i, 0), (n - i, 0)), Rational::one());
        }
        table.push(((n, 0), t));
    }
    DgCoalgebra::new(complex, table, vec![Rational::one()], (0, 0))
}

/// The homology coalgebra of `S^n`: one primitive generator in degree `n`.
pub fn sphere_coalgebra(n: usize, ring: Ring) -> Result<DgCoalgebra> {
    let mut basis = vec![Vec::new(); n + 1];
    basis[0].push("1".to_string());
    basis[n].push(format!("s{n}"));
    let module = GradedModule::new(ring, basis)?;
    let complex = Complex::zero(module, Direction::Homological, true);
    DgCoalgebra::from_reduced(complex, Vec::new())
}

/// The ground ring as an algebra concentrated in degree 0.
pub fn ground_algebra(direction: Direction, ring: Ring) -> DgAlgebra {
    let module = GradedModule::new(ring, vec![vec!["1".to_string()]]).expect("one name");
    DgAlgebra::new(
        Complex::zero(module, direction, true),
        Vec::new(),
        (0, 0),
        vec![Rational::one()],
    )
    .expect("the ground ring is an algebra")
}

/// The ground ring as a coalgebra concentrated in degree 0.
pub fn ground_coalgebra(direction: Direction, ring: Ring) -> DgCoalgebra {
    let module = GradedModule::new(ring, vec![vec!["1".to_string()]]).expect("one name");
    DgCoalgebra::from_reduced(Complex::zero(module, direction, true), Vec::new())
        .expect("the ground ring is a coalgebra")
}
