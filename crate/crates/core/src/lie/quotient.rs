use std::collections::HashMap;

use super::algebra::GradedLieAlgebra;
use crate::combination::Combination;
use crate::dg::{Element, Gen, GradedModule};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Rref, SparseRow};

fn to_row(x: &Element) -> SparseRow {
    x.iter().map(|(g, q)| (g.1, q.clone())).collect()
}

/// The quotient of `l` by the Lie ideal generated by homogeneous relations.
///
/// The ideal is closed degree by degree under brackets with basis elements
/// (and under `d`) until nothing new appears in the window. The quotient
/// keeps the basis elements that are not pivots of the ideal, with their
/// original names.
pub fn lie_quotient(l: &GradedLieAlgebra, relations: &[Element]) -> Result<GradedLieAlgebra> {
    let w = l.window();
    let m = l.module();
    let mut ideal: Vec<Rref> = (0..=w)
        .map(|n| Rref::from_rows(Vec::new(), m.dim(n)))
        .collect();
    let mut queue: Vec<Element> = Vec::new();
    for r in relations {
        let degrees: std::collections::BTreeSet<usize> = r.keys().map(|g| g.0).collect();
        if degrees.len() > 1 {
            return Err(Error::Precondition(format!(
                "relation {} is not homogeneous",
                crate::dg::show_element(m, r)
            )));
        }
        queue.push(r.clone());
    }
    let gens: Vec<Gen> = m.gens().collect();
    while let Some(x) = queue.pop() {
        let Some(deg) = x.keys().next().map(|g| g.0) else {
            continue;
        };
        let row = to_row(&x);
        if ideal[deg].reduce(&row).is_empty() {
            continue;
        }
        let mut rows = ideal[deg].rows.clone();
        rows.push(row);
        ideal[deg] = Rref::from_rows(rows, m.dim(deg));
        for &g in &gens {
            if g.0 + deg <= w {
                let b = l.bracket(&Combination::term(g, Rational::from_integer(1.into())), &x);
                if !b.is_zero() {
                    queue.push(b);
                }
            }
        }
        let dx = l.d(&x);
        if !dx.is_zero() {
            queue.push(dx);
        }
    }

    let kept: Vec<Vec<usize>> = ideal.iter().map(|r| r.free_columns()).collect();
    let position: Vec<HashMap<usize, usize>> = kept
        .iter()
        .map(|ks| ks.iter().enumerate().map(|(i, &j)| (j, i)).collect())
        .collect();
    let names = kept
        .iter()
        .enumerate()
        .map(|(n, ks)| ks.iter().map(|&j| m.name((n, j)).to_string()).collect())
        .collect();
    let module = GradedModule::new(m.ring(), names)?;
    let project = |x: &Element| -> Element {
        let Some(deg) = x.keys().next().map(|g| g.0) else {
            return Element::new();
        };
        ideal[deg]
            .reduce(&to_row(x))
            .into_iter()
            .map(|(j, q)| ((deg, position[deg][&j]), q))
            .collect()
    };
    let mut bracket = Vec::new();
    let mut diff = Vec::new();
    for p in 1..=w {
        for (i, &a) in kept[p].iter().enumerate() {
            for q in 1..=w - p {
                for (j, &b) in kept[q].iter().enumerate() {
                    let v = project(&l.bracket_gen((p, a), (q, b)));
                    if !v.is_zero() {
                        bracket.push(((p, i), (q, j), v));
                    }
                }
            }
            let e = Combination::term((p, a), Rational::from_integer(1.into()));
            for (g, q) in project(&l.d(&e)).iter() {
                diff.push(((p, i), *g, q.clone()));
            }
        }
    }
    let differential = l.differential().map(|_| diff);
    GradedLieAlgebra::new(module, bracket, differential, l.is_complete())
}

/// Parses relations with [`GradedLieAlgebra::parse_element`] and forms the
/// quotient.
pub fn lie_quotient_by_expressions(
    l: &GradedLieAlgebra,
    relations: &[&str],
) -> Result<GradedLieAlgebra> {
    let rels = relations
        .iter()
        .map(|r| l.parse_element(r))
        .collect::<Result<Vec<_>>>()?;
    lie_quotient(l, &rels)
}
