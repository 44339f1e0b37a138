use num_traits::Zero;

use super::algebra::GradedLieAlgebra;
use super::tensor::TensorAlgebra;
use crate::combination::Combination;
use crate::dg::{Element, Gen, GradedModule};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Ring, Rref, SparseRow};

/// A free graded Lie algebra realized as the primitives of a tensor algebra.
#[derive(Clone, Debug)]
pub struct FreeLie {
    pub lie: GradedLieAlgebra,
    pub tensor: TensorAlgebra,
    /// Each Lie basis element as a vector in the tensor algebra.
    pub embedding: Vec<Vec<SparseRow>>,
    /// Dimension of the primitives of `T(V)` in each degree.
    pub primitive_dims: Vec<usize>,
}

fn to_row(x: &Element) -> SparseRow {
    x.iter().map(|(g, q)| (g.1, q.clone())).collect()
}

fn to_element(deg: usize, row: &SparseRow) -> Element {
    row.iter().map(|(i, q)| ((deg, *i), q.clone())).collect()
}

/// The free graded Lie algebra on the generators through degree `top`.
///
/// In each degree the primitives of `T(V)` are computed as the kernel of the
/// reduced coproduct, and a named basis is chosen among right-normed
/// brackets `[g,[...]]`, which must span them.
pub fn free_lie_with_tensor(generators: &[(&str, usize)], top: usize) -> Result<FreeLie> {
    let tensor = TensorAlgebra::new(generators, top, Ring::Q)?;
    let mut primitive_dims = vec![0; top + 1];
    for (n, slot) in primitive_dims.iter_mut().enumerate().skip(1) {
        let rows = tensor.reduced_coproduct_rows(n);
        let dim = tensor.words().dim(n);
        let rank = Rref::from_rows(rows, dim).rank();
        *slot = dim - rank;
    }

    let mut names: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut vectors: Vec<Vec<SparseRow>> = vec![Vec::new(); top + 1];
    let gens_by_degree: Vec<(String, usize, Gen)> = generators
        .iter()
        .map(|(s, d)| (s.to_string(), *d, tensor.generator(s).expect("generator")))
        .collect();
    for n in 1..=top {
        let mut candidates: Vec<(String, SparseRow)> = Vec::new();
        for (name, d, g) in &gens_by_degree {
            if *d == n {
                candidates.push((
                    name.clone(),
                    std::iter::once((g.1, Rational::from_integer(1.into()))).collect(),
                ));
            } else if *d < n {
                let inner = n - d;
                for (bname, bvec) in names[inner].iter().zip(&vectors[inner]) {
                    let x = Combination::term(*g, Rational::from_integer(1.into()));
                    let y = to_element(inner, bvec);
                    let c = tensor.commutator(&x, &y);
                    candidates.push((format!("[{name},{bname}]"), to_row(&c)));
                }
            }
        }
        let dim = tensor.words().dim(n);
        let mut rref = Rref::from_rows(Vec::new(), dim);
        for (name, v) in candidates {
            if v.is_empty() || rref.reduce(&v).is_empty() {
                continue;
            }
            let mut rows = rref.rows.clone();
            rows.push(v.clone());
            rref = Rref::from_rows(rows, dim);
            names[n].push(name);
            vectors[n].push(v);
        }
        if vectors[n].len() != primitive_dims[n] {
            return Err(Error::Internal(format!(
                "right-normed brackets span {} dimensions in degree {n} but there are {} primitives",
                vectors[n].len(),
                primitive_dims[n]
            )));
        }
        let coproduct = tensor.reduced_coproduct_rows(n);
        for v in &vectors[n] {
            for row in &coproduct {
                let s: Rational = row
                    .iter()
                    .filter_map(|(j, q)| v.get(j).map(|x| x * q))
                    .fold(Rational::zero(), |a, b| a + b);
                if !s.is_zero() {
                    return Err(Error::Internal(format!(
                        "a bracket in degree {n} is not primitive"
                    )));
                }
            }
        }
    }

    let module = GradedModule::new(Ring::Q, names.clone())?;
    // Coordinates in the chosen basis: reduce [v | 0] against rows [b_i | e_i].
    let extractors: Vec<Option<Rref>> = (0..=top)
        .map(|n| {
            if n == 0 {
                return None;
            }
            let dim = tensor.words().dim(n);
            let rows = vectors[n]
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let mut r = v.clone();
                    r.insert(dim + i, Rational::from_integer(1.into()));
                    r
                })
                .collect();
            Some(Rref::from_rows(rows, dim + vectors[n].len()))
        })
        .collect();
    let mut bracket = Vec::new();
    for p in 1..=top {
        for q in 1..=top - p {
            for (i, u) in vectors[p].iter().enumerate() {
                for (j, v) in vectors[q].iter().enumerate() {
                    let c = tensor.commutator(&to_element(p, u), &to_element(q, v));
                    if c.is_zero() {
                        continue;
                    }
                    let n = p + q;
                    let dim = tensor.words().dim(n);
                    let rest = extractors[n].as_ref().unwrap().reduce(&to_row(&c));
                    let mut value = Element::new();
                    for (k, x) in rest {
                        if k < dim {
                            return Err(Error::Internal("a commutator left the Lie span".into()));
                        }
                        value.add_term((n, k - dim), -x);
                    }
                    bracket.push(((p, i), (q, j), value));
                }
            }
        }
    }
    let lie = GradedLieAlgebra::new(module, bracket, None, false)?;
    Ok(FreeLie {
        lie,
        tensor,
        embedding: vectors,
        primitive_dims,
    })
}

pub fn free_lie(generators: &[(&str, usize)], top: usize) -> Result<GradedLieAlgebra> {
    Ok(free_lie_with_tensor(generators, top)?.lie)
}

/// A free graded Lie algebra with a differential given on generators by
/// bracket expressions, e.g. `("y", "[x,x]")`.
pub fn free_dg_lie(
    generators: &[(&str, usize)],
    differential: &[(&str, &str)],
    top: usize,
) -> Result<GradedLieAlgebra> {
    let free = free_lie_with_tensor(generators, top)?;
    if differential.is_empty() {
        return Ok(free.lie);
    }
    let lie = &free.lie;
    let tensor = &free.tensor;
    let embed = |x: &Element| -> Element {
        let mut out = Element::new();
        for (g, q) in x.iter() {
            out.add_scaled(&to_element(g.0, &free.embedding[g.0][g.1]), q);
        }
        out
    };
    let mut on_gens = Vec::new();
    for (name, expr) in differential {
        let g = tensor
            .generator(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
        let value = lie.parse_element(expr)?;
        if value.keys().any(|h| h.0 + 1 != g.0) {
            return Err(Error::Precondition(format!(
                "d({name}) must have degree {}",
                g.0 as isize - 1
            )));
        }
        on_gens.push((g, embed(&value)));
    }
    let t = tensor.algebra(&on_gens, crate::dg::Direction::Homological)?;
    let mut terms = Vec::new();
    for n in 2..=top {
        let dim = tensor.words().dim(n - 1);
        let rows = free.embedding[n - 1]
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut r = v.clone();
                r.insert(dim + i, Rational::from_integer(1.into()));
                r
            })
            .collect();
        let extractor = Rref::from_rows(rows, dim + free.embedding[n - 1].len());
        for (j, v) in free.embedding[n].iter().enumerate() {
            let dv = t.d(&to_element(n, v));
            let rest = extractor.reduce(&to_row(&dv));
            for (k, x) in rest {
                if k < dim {
                    return Err(Error::Precondition(format!(
                        "the differential does not preserve the Lie span in degree {n}"
                    )));
                }
                terms.push(((n, j), (n - 1, k - dim), -x));
            }
        }
    }
    let brackets = lie
        .brackets()
        .iter()
        .map(|((a, b), c)| (*a, *b, c.clone()))
        .collect::<Vec<_>>();
    GradedLieAlgebra::new(lie.module().clone(), brackets, Some(terms), false)
}
