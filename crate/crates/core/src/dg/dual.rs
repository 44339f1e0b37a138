//! Linear duality between chains and cochains.
//!
//! The dual of a differential out of degree `n` is the transpose scaled by
//! `(-1)^{n+1}`, where `n` is the degree of the dual generators it acts on.
//! Applying this twice returns the original matrices. Coproducts and
//! products are exchanged with the Koszul sign `(-1)^{|a||b|}`.

use num_traits::{One, Zero};

use super::algebra::DgAlgebra;
use super::coalgebra::{DgCoalgebra, Tensor};
use super::complex::Complex;
use super::module::{Gen, GradedModule};
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::linalg::{sign, SparseMatrix};

/// `x` becomes `x*`, and `x*` becomes `x`.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

pub fn dual_module(m: &GradedModule) -> GradedModule {
    let basis = m
        .basis()
        .iter()
        .map(|names| names.iter().map(|s| dual_name(s)).collect())
        .collect();
    GradedModule::new(m.ring(), basis).expect("dual names stay distinct")
}

pub fn dualize_complex(c: &Complex) -> Complex {
    let module = dual_module(c.module());
    let dir = c.direction().flip();
    let diffs = (0..=c.window())
        .map(|n| match dir.target(n) {
            Some(t) if t <= c.window() => c.d(t).transpose().scaled(&sign(n + 1)),
            _ => SparseMatrix::zeros(0, c.dim(n)),
        })
        .collect();
    Complex::new(module, dir, diffs, c.is_complete()).expect("dual shapes are consistent")
}

fn basis_index(values: &[crate::linalg::Rational]) -> Option<usize> {
    let nonzero: Vec<usize> = (0..values.len())
        .filter(|&i| !values[i].is_zero())
        .collect();
    match nonzero.as_slice() {
        [i] if values[*i].is_one() => Some(*i),
        _ => None,
    }
}

/// The dual algebra: `a* b* = (-1)^{|a||b|} sum_x <a (x) b, D x> x*`.
pub fn dualize_coalgebra(c: &DgCoalgebra) -> Result<DgAlgebra> {
    let unit = basis_index(c.counit()).ok_or_else(|| {
        Error::Precondition("the counit must be a single dual basis vector to dualize".into())
    })?;
    let complex = dualize_complex(c.complex());
    let mut products: std::collections::BTreeMap<(Gen, Gen), Combination<Gen>> = Default::default();
    for (x, t) in c.coproduct_table() {
        for ((a, b), q) in t.iter() {
            products
                .entry((*a, *b))
                .or_default()
                .add_term(*x, q * sign(a.0 * b.0));
        }
    }
    let mut augmentation = vec![crate::linalg::Rational::zero(); c.complex().dim(0)];
    augmentation[c.coaugmentation().1] = crate::linalg::Rational::one();
    DgAlgebra::new(
        complex,
        products.into_iter().map(|((a, b), p)| (a, b, p)),
        (0, unit),
        augmentation,
    )
}

/// The dual coalgebra: `D x* = sum (-1)^{|a||b|} <x*, ab> a* (x) b*`.
pub fn dualize_algebra(a: &DgAlgebra) -> Result<DgCoalgebra> {
    let coaug = basis_index(a.augmentation()).ok_or_else(|| {
        Error::Precondition("the augmentation must be a single dual basis vector to dualize".into())
    })?;
    let complex = dualize_complex(a.complex());
    let m = a.complex().module();
    let mut table: std::collections::BTreeMap<Gen, Tensor> = Default::default();
    let gens: Vec<Gen> = m.gens().collect();
    for &x in &gens {
        for &y in &gens {
            if x.0 + y.0 > a.window() {
                continue;
            }
            for (z, q) in a.mul_gen(x, y).iter() {
                table
                    .entry(*z)
                    .or_default()
                    .add_term((x, y), q * sign(x.0 * y.0));
            }
        }
    }
    let mut counit = vec![crate::linalg::Rational::zero(); m.dim(0)];
    counit[a.unit().1] = crate::linalg::Rational::one();
    DgCoalgebra::new(complex, table, counit, (0, coaug))
}
