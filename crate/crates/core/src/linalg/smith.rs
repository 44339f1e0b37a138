use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::SparseMatrix;
use super::scalar::to_integer;
use crate::error::{Error, Result};

/// Smith normal form of an integer matrix.
///
/// `diagonal` lists the nonzero invariant factors `d1 | d2 | ...`, all
/// positive. When transforms were requested, `left * M * right` is the
/// `rows x cols` matrix carrying `diagonal` on its main diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Option<Vec<Vec<BigInt>>>,
    pub right: Option<Vec<Vec<BigInt>>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

type IntMatrix = Vec<Vec<BigInt>>;

fn integer_rows(m: &SparseMatrix) -> Result<Vec<BTreeMap<usize, BigInt>>> {
    let mut rows = vec![BTreeMap::new(); m.rows()];
    for (r, c, v) in m.entries() {
        let z = to_integer(v).ok_or_else(|| {
            Error::Precondition(format!(
                "non-integral entry {v} at ({r}, {c}) in Smith normal form"
            ))
        })?;
        rows[r].insert(c, z);
    }
    Ok(rows)
}

/// Invariant factors only. Unit pivots are eliminated sparsely first; the
/// remaining block is reduced densely.
pub fn smith_normal_form(m: &SparseMatrix) -> Result<SmithForm> {
    let mut rows = integer_rows(m)?;
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, row) in rows.iter().enumerate() {
        for c in row.keys() {
            col_rows[*c].insert(r);
        }
    }
    let mut units = 0usize;
    // Rows that may hold a unit, shortest first. A row rejoins when it changes.
    let mut queue: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.is_empty())
        .map(|(r, row)| (row.len(), r))
        .collect();
    while let Some((_, pr)) = queue.pop_first() {
        let unit = rows[pr]
            .iter()
            .filter(|(_, v)| v.magnitude().is_one())
            .min_by_key(|(c, _)| col_rows[**c].len())
            .map(|(c, v)| (*c, v.clone()));
        let Some((pc, pv)) = unit else { continue };
        let pivot_row = std::mem::take(&mut rows[pr]);
        for c in pivot_row.keys() {
            col_rows[*c].remove(&pr);
        }
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in others {
            queue.remove(&(rows[r].len(), r));
            let factor = &rows[r][&pc] * &pv;
            for (c, v) in &pivot_row {
                let entry = rows[r].entry(*c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(c);
                    col_rows[*c].remove(&r);
                } else {
                    col_rows[*c].insert(r);
                }
            }
            if !rows[r].is_empty() {
                queue.insert((rows[r].len(), r));
            }
        }
        debug_assert!(col_rows[pc].is_empty());
        units += 1;
    }

    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..col_rows.len())
        .filter(|&c| !col_rows[c].is_empty())
        .collect();
    let mut dense: IntMatrix = live_rows
        .iter()
        .map(|&r| {
            live_cols
                .iter()
                .map(|c| rows[r].get(c).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    let rest = dense_smith(&mut dense, None, None);
    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(rest);
    Ok(SmithForm {
        diagonal,
        left: None,
        right: None,
    })
}

/// Dense reduction that also returns unimodular `left` and `right`.
pub fn smith_normal_form_with_transforms(m: &SparseMatrix) -> Result<SmithForm> {
    let rows = integer_rows(m)?;
    let mut a: IntMatrix = rows
        .iter()
        .map(|row| {
            (0..m.cols())
                .map(|c| row.get(&c).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    let mut left = identity(m.rows());
    let mut right = identity(m.cols());
    let diagonal = dense_smith(&mut a, Some(&mut left), Some(&mut right));
    Ok(SmithForm {
        diagonal,
        left: Some(left),
        right: Some(right),
    })
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row_i -= q * row_j
fn row_axpy(a: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    let src = a[j].clone();
    for (x, y) in a[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// col_i -= q * col_j
fn col_axpy(a: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let y = row[j].clone();
        row[i] -= q * y;
    }
}

/// Reduces `a` in place to diagonal form and returns the nonzero invariant
/// factors. Row operations are mirrored on `left`, column operations on
/// `right`, keeping `left * a0 * right == a`.
fn dense_smith(
    a: &mut IntMatrix,
    mut left: Option<&mut IntMatrix>,
    mut right: Option<&mut IntMatrix>,
) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        if let Some(l) = left.as_deref_mut() {
            l.swap(t, bi);
        }
        swap_cols(a, t, bj);
        if let Some(r) = right.as_deref_mut() {
            swap_cols(r, t, bj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(a, i, t, &q);
                if let Some(l) = left.as_deref_mut() {
                    row_axpy(l, i, t, &q);
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(a, j, t, &q);
                if let Some(r) = right.as_deref_mut() {
                    col_axpy(r, j, t, &q);
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    if let Some(l) = left.as_deref_mut() {
                        l.swap(t, best.0);
                    }
                }
                if best.1 != t {
                    swap_cols(a, t, best.1);
                    if let Some(r) = right.as_deref_mut() {
                        swap_cols(r, t, best.1);
                    }
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(a, t, i, &minus_one);
                    if let Some(l) = left.as_deref_mut() {
                        row_axpy(l, t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            if let Some(l) = left.as_deref_mut() {
                for x in l[t].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        t += 1;
    }
    (0..m.min(n))
        .map(|i| a[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_transforms(m: &SparseMatrix, s: &SmithForm) {
        let l = s.left.as_ref().unwrap();
        let r = s.right.as_ref().unwrap();
        let a: Vec<Vec<BigInt>> = m
            .to_dense()
            .iter()
            .map(|row| row.iter().map(|v| v.to_integer()).collect())
            .collect();
        let prod = |x: &IntMatrix, y: &IntMatrix, inner: usize, rows: usize, cols: usize| {
            (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| (0..inner).map(|k| &x[i][k] * &y[k][j]).sum::<BigInt>())
                        .collect::<Vec<_>>()
                })
                .collect::<IntMatrix>()
        };
        let la = prod(l, &a, m.rows(), m.rows(), m.cols());
        let lar = prod(&la, r, m.cols(), m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = if i == j && i < s.diagonal.len() {
                    s.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(lar[i][j], expect, "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn diag_two_three() {
        let m = SparseMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&m).unwrap().diagonal, big(&[1, 6]));
        let s = smith_normal_form_with_transforms(&m).unwrap();
        assert_eq!(s.diagonal, big(&[1, 6]));
        check_transforms(&m, &s);
    }

    #[test]
    fn identity_and_zero() {
        let id = SparseMatrix::identity(4);
        assert_eq!(smith_normal_form(&id).unwrap().diagonal, big(&[1, 1, 1, 1]));
        let z = SparseMatrix::zeros(3, 2);
        assert!(smith_normal_form(&z).unwrap().diagonal.is_empty());
        assert!(smith_normal_form_with_transforms(&z)
            .unwrap()
            .diagonal
            .is_empty());
    }

    #[test]
    fn rejects_fractions() {
        let m = SparseMatrix::from_triplets(1, 1, vec![(0, 0, crate::linalg::scalar::frac(1, 2))]);
        assert!(smith_normal_form(&m).is_err());
    }

    fn int_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |vals| {
                let rows: Vec<Vec<_>> = vals
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&v| int(v)).collect())
                    .collect();
                SparseMatrix::from_dense(&rows, c)
            })
        })
    }

    proptest! {
        #[test]
        fn divisibility_and_transforms(m in int_matrix()) {
            let fast = smith_normal_form(&m).unwrap();
            let full = smith_normal_form_with_transforms(&m).unwrap();
            prop_assert_eq!(&fast.diagonal, &full.diagonal);
            prop_assert_eq!(fast.rank(), m.rank());
            for w in full.diagonal.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert!(full.diagonal.iter().all(|d| d.is_positive()));
            check_transforms(&m, &full);
        }
    }
}
