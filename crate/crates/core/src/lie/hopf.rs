use std::collections::HashMap;

use num_traits::One;

use super::free::free_lie_with_tensor;
use crate::dg::{
    show_element, Complex, DgAlgebra, DgCoalgebra, Element, Gen, GradedModule, Tensor, Violation,
    ViolationKind,
};
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, Rref, SparseMatrix, SparseRow};

/// An algebra and a coalgebra structure on one complex.
#[derive(Clone, Debug)]
pub struct HopfAlgebraData {
    algebra: DgAlgebra,
    coalgebra: DgCoalgebra,
}

impl HopfAlgebraData {
    /// Requires both structures on the same complex, each valid, and the
    /// coproduct multiplicative on all basis pairs in the window.
    pub fn new(algebra: DgAlgebra, coalgebra: DgCoalgebra) -> Result<HopfAlgebraData> {
        if algebra.complex() != coalgebra.complex() {
            return Err(Error::Precondition(
                "the algebra and coalgebra must share one complex".into(),
            ));
        }
        algebra.verify()?;
        coalgebra.verify()?;
        let h = HopfAlgebraData { algebra, coalgebra };
        h.check_compatibility()?;
        Ok(h)
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &DgCoalgebra {
        &self.coalgebra
    }

    pub fn complex(&self) -> &Complex {
        self.algebra.complex()
    }

    fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for ((a, b), p) in x.iter() {
            for ((c, d), q) in y.iter() {
                let s = p * q * sign(b.0 * c.0);
                for (ac, r) in self.algebra.mul_gen(*a, *c).iter() {
                    for (bd, t) in self.algebra.mul_gen(*b, *d).iter() {
                        out.add_term((*ac, *bd), &s * r * t);
                    }
                }
            }
        }
        out
    }

    fn check_compatibility(&self) -> std::result::Result<(), Violation> {
        let m = self.complex().module();
        let w = self.complex().window();
        for a in m.gens() {
            for b in m.gens() {
                if a.0 + b.0 > w {
                    continue;
                }
                let lhs = self.coalgebra.coproduct(&self.algebra.mul_gen(a, b));
                let rhs = self.tensor_mul(
                    &self.coalgebra.coproduct_gen(a),
                    &self.coalgebra.coproduct_gen(b),
                );
                if lhs != rhs {
                    return Err(Violation::new(
                        ViolationKind::HopfCompatibility,
                        format!(
                            "D({} {}) differs from D({}) D({})",
                            m.name(a),
                            m.name(b),
                            m.name(a),
                            m.name(b)
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The tensor algebra on the generators with primitive generators, and a
/// differential given on generators by Lie bracket expressions.
pub fn tensor_hopf_algebra(
    generators: &[(&str, usize)],
    differential: &[(&str, &str)],
    top: usize,
) -> Result<HopfAlgebraData> {
    let free = free_lie_with_tensor(generators, top)?;
    let tensor = &free.tensor;
    let mut on_gens = Vec::new();
    for (name, expr) in differential {
        let g = tensor
            .generator(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
        let value = free.lie.parse_element(expr)?;
        let mut embedded = Element::new();
        for (h, q) in value.iter() {
            let v: Element = free.embedding[h.0][h.1]
                .iter()
                .map(|(i, x)| ((h.0, *i), x.clone()))
                .collect();
            embedded.add_scaled(&v, q);
        }
        on_gens.push((g, embedded));
    }
    let direction = crate::dg::Direction::Homological;
    HopfAlgebraData::new(
        tensor.algebra(&on_gens, direction)?,
        tensor.coalgebra(&on_gens, direction)?,
    )
}

/// The primitives of a connected DG Hopf algebra as a subcomplex.
#[derive(Clone, Debug)]
pub struct PrimitiveComplex {
    pub complex: Complex,
    /// Basis of the primitives in each degree, in coordinates of the carrier.
    pub inclusion: Vec<Vec<SparseRow>>,
}

fn reduced_rows(c: &DgCoalgebra, n: usize) -> Vec<SparseRow> {
    let mut pairs: HashMap<(Gen, Gen), usize> = HashMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    for j in 0..c.complex().dim(n) {
        for (pair, q) in c.reduced_coproduct((n, j)).iter() {
            let k = pairs.len();
            let r = *pairs.entry(*pair).or_insert(k);
            if r == rows.len() {
                rows.push(SparseRow::new());
            }
            rows[r].insert(j, q.clone());
        }
    }
    rows
}

/// Per-degree kernel of the reduced coproduct, with the restricted
/// differential. Fails if `d` does not preserve primitives.
pub fn primitives(h: &HopfAlgebraData) -> Result<PrimitiveComplex> {
    let c = h.coalgebra();
    let cx = h.complex();
    if cx.dim(0) != 1 {
        return Err(Error::Precondition(
            "primitives are computed for connected Hopf algebras".into(),
        ));
    }
    let w = cx.window();
    let mut inclusion: Vec<Vec<SparseRow>> = vec![Vec::new(); w + 1];
    for (n, slot) in inclusion.iter_mut().enumerate().skip(1) {
        let rref = Rref::from_rows(reduced_rows(c, n), cx.dim(n));
        *slot = rref
            .kernel_basis()
            .into_iter()
            .map(|v| crate::linalg::dense_to_sparse(&v))
            .collect();
    }
    let names: Vec<Vec<String>> = inclusion
        .iter()
        .enumerate()
        .map(|(n, vs)| (0..vs.len()).map(|i| format!("p{n}_{i}")).collect())
        .collect();
    let module = GradedModule::new(cx.ring(), names)?;
    let dir = cx.direction();
    let mut terms = Vec::new();
    for n in 1..=w {
        let Some(t) = dir.target(n).filter(|&t| t <= w && t >= 1) else {
            continue;
        };
        let dim = cx.dim(t);
        let rows = inclusion[t]
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut r = v.clone();
                r.insert(dim + i, Rational::one());
                r
            })
            .collect();
        let extractor = Rref::from_rows(rows, dim + inclusion[t].len());
        for (j, v) in inclusion[n].iter().enumerate() {
            let dv = cx.d(n).apply_sparse(v);
            for (k, q) in extractor.reduce(&dv) {
                if k < dim {
                    let x: Element = v.iter().map(|(i, q)| ((n, *i), q.clone())).collect();
                    return Err(Violation::new(
                        ViolationKind::Subcomplex,
                        format!(
                            "d does not preserve primitives: d({}) is not primitive",
                            show_element(cx.module(), &x)
                        ),
                    )
                    .into());
                }
                terms.push(((n, j), (t, k - dim), -q));
            }
        }
    }
    let complex = Complex::from_terms(module, dir, terms, cx.is_complete())?;
    Ok(PrimitiveComplex { complex, inclusion })
}

/// Rank of the primitives of the homology Hopf algebra in degree `n`:
/// classes `[z]` whose reduced coproduct is a boundary in the reduced tensor
/// square.
pub fn primitives_of_homology(h: &HopfAlgebraData, n: usize) -> Result<usize> {
    let cx = h.complex();
    let c = h.coalgebra();
    if cx.dim(0) != 1 {
        return Err(Error::Precondition(
            "primitives are computed for connected Hopf algebras".into(),
        ));
    }
    let dir = cx.direction();
    let source = dir.source(n);
    let in_window = |k: usize| k <= cx.window();
    if n == 0 {
        return Ok(0);
    }
    if let Some(s) = source {
        if !in_window(s) && !cx.is_complete() {
            return Err(Error::WindowTooSmall(format!(
                "degree {n} needs degree {s}"
            )));
        }
    }
    // Reduced tensor square in degrees n and source(n).
    let pairs_in = |k: usize| -> Vec<(Gen, Gen)> {
        let mut out = Vec::new();
        for p in 1..k {
            for i in 0..cx.dim(p) {
                for j in 0..cx.dim(k - p) {
                    out.push(((p, i), (k - p, j)));
                }
            }
        }
        out
    };
    let target_pairs = pairs_in(n);
    let index: HashMap<(Gen, Gen), usize> = target_pairs
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i))
        .collect();
    let source_pairs = source
        .filter(|&s| in_window(s))
        .map(pairs_in)
        .unwrap_or_default();
    let dim_n = cx.dim(n);
    let d_out = cx.d(n);
    let rows_d = d_out.rows();
    let unknowns = dim_n + source_pairs.len();
    // Columns: z coordinates, then w coordinates.
    let mut columns: Vec<SparseRow> = vec![SparseRow::new(); unknowns];
    for j in 0..dim_n {
        for (r, q) in d_out.column(j) {
            columns[j].insert(*r, q.clone());
        }
        for (pair, q) in c.reduced_coproduct((n, j)).iter() {
            let r = index[pair];
            columns[j].insert(rows_d + r, q.clone());
        }
    }
    let mut d_tensor_columns: Vec<SparseRow> = Vec::new();
    for (k, (a, b)) in source_pairs.iter().enumerate() {
        let mut col = SparseRow::new();
        let mut add = |pair: (Gen, Gen), q: Rational| {
            if pair.0 .0 == 0 || pair.1 .0 == 0 {
                return;
            }
            let r = index[&pair];
            crate::linalg::matrix::add_entry(&mut col, r, &q);
        };
        for (da, q) in cx.d_gen(*a).iter() {
            add((*da, *b), q.clone());
        }
        for (db, q) in cx.d_gen(*b).iter() {
            add((*a, *db), q * sign(a.0));
        }
        let negated: SparseRow = col.iter().map(|(r, q)| (rows_d + r, -q.clone())).collect();
        columns[dim_n + k] = negated;
        d_tensor_columns.push(col);
    }
    let m = SparseMatrix::from_columns(rows_d + target_pairs.len(), columns);
    let dt = SparseMatrix::from_columns(target_pairs.len(), d_tensor_columns);
    let dim_s = (unknowns - m.rank()) - (source_pairs.len() - dt.rank());
    let boundaries = match source {
        Some(s) if in_window(s) => cx.d(s).rank(),
        _ => 0,
    };
    Ok(dim_s - boundaries)
}
