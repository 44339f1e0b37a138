use num_traits::Zero;

use super::bar::BarComplex;
use super::word::shuffle_product;
use crate::dg::{Complex, DgAlgebra, Gen, GradedModule, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Rref, SparseMatrix, SparseRow};

/// The reduced bar complex of a graded-commutative DGA modulo the span of
/// shuffle products of nonempty words.
#[derive(Clone, Debug)]
pub struct HarrisonComplex {
    bar: BarComplex,
    /// Row space of the shuffle span in each degree, in bar coordinates.
    shuffles: Vec<Rref>,
    /// Bar word index of each quotient basis element, per degree.
    kept: Vec<Vec<usize>>,
    complex: Complex,
}

impl HarrisonComplex {
    pub fn new(a: &DgAlgebra, n: usize, max_weight: Option<usize>) -> Result<HarrisonComplex> {
        a.verify()?;
        a.check_commutative().map_err(|v| {
            Error::Precondition(format!(
                "the Harrison complex needs a graded-commutative algebra: {v}"
            ))
        })?;
        let bar = BarComplex::new(a, n, max_weight)?;
        let words = bar.words();
        let shift = |g: Gen| words.shift(g);

        let mut shuffles = Vec::with_capacity(n + 1);
        for deg in 0..=n {
            let mut rows: Vec<SparseRow> = Vec::new();
            // Words of weight zero are not part of the reduced complex.
            for (j, w) in words.degree(deg).iter().enumerate() {
                if w.weight() == 0 {
                    rows.push(std::iter::once((j, Rational::from_integer(1.into()))).collect());
                }
            }
            for p in 0..=deg {
                for u in words.degree(p).iter().filter(|u| u.weight() > 0) {
                    for v in words.degree(deg - p).iter().filter(|v| v.weight() > 0) {
                        if u.letters > v.letters && p == deg - p {
                            continue;
                        }
                        if max_weight.is_some_and(|cap| u.weight() + v.weight() > cap) {
                            continue;
                        }
                        let mut row = SparseRow::new();
                        for (w, q) in shuffle_product(&u.letters, &v.letters, &shift).iter() {
                            let g = words.find(w).ok_or_else(|| {
                                Error::Internal("shuffle product left the word basis".into())
                            })?;
                            row.insert(g.1, q.clone());
                        }
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
            shuffles.push(Rref::from_rows(rows, words.dim(deg)));
        }

        let kept: Vec<Vec<usize>> = shuffles.iter().map(|r| r.free_columns()).collect();
        let names: Vec<Vec<String>> = kept
            .iter()
            .enumerate()
            .map(|(deg, ks)| {
                ks.iter()
                    .map(|&j| bar.complex().module().name((deg, j)).to_string())
                    .collect()
            })
            .collect();
        let module = GradedModule::new(a.ring(), names)?;
        let dir = bar.complex().direction();

        let mut diffs = Vec::with_capacity(n + 1);
        for deg in 0..=n {
            let target = dir.target(deg).filter(|&t| t <= n);
            let Some(t) = target else {
                diffs.push(SparseMatrix::zeros(0, kept[deg].len()));
                continue;
            };
            let d = bar.complex().d(deg);
            let position: std::collections::HashMap<usize, usize> =
                kept[t].iter().enumerate().map(|(i, &j)| (j, i)).collect();
            // The shuffle span must be a subcomplex for d to descend.
            for (row, _) in shuffles[deg].rows.iter().zip(&shuffles[deg].pivots) {
                let image = shuffles[t].reduce(&d.apply_sparse(row));
                if !image.is_empty() {
                    return Err(Violation::new(
                        ViolationKind::Derivation,
                        format!("the differential does not preserve shuffles in degree {deg}"),
                    )
                    .into());
                }
            }
            let mut m = SparseMatrix::zeros(kept[t].len(), kept[deg].len());
            for (i, &j) in kept[deg].iter().enumerate() {
                let image = shuffles[t].reduce(d.column(j));
                for (r, q) in image.iter() {
                    if !q.is_zero() {
                        m.add_to(position[r], i, q);
                    }
                }
            }
            diffs.push(m);
        }
        let complex = Complex::new(module, dir, diffs, bar.complex().is_complete())?;
        Ok(HarrisonComplex {
            bar,
            shuffles,
            kept,
            complex,
        })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn bar(&self) -> &BarComplex {
        &self.bar
    }

    /// Image in the quotient of a bar element of degree `deg`, given in bar
    /// coordinates.
    pub fn project(&self, deg: usize, x: &SparseRow) -> SparseRow {
        let reduced = self.shuffles[deg].reduce(x);
        let position: std::collections::HashMap<usize, usize> = self.kept[deg]
            .iter()
            .enumerate()
            .map(|(i, &j)| (j, i))
            .collect();
        reduced
            .into_iter()
            .map(|(j, q)| (position[&j], q))
            .collect()
    }

    /// Bar word index of each quotient generator in degree `deg`.
    pub fn kept(&self, deg: usize) -> &[usize] {
        &self.kept[deg]
    }

    pub fn shuffle_span(&self, deg: usize) -> &Rref {
        &self.shuffles[deg]
    }
}
