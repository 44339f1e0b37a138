use crate::dg::{Complex, Direction, GradedModule, Violation, ViolationKind};
use crate::error::{Error, Result};
use crate::linalg::{sign, Ring, SparseMatrix};

/// A finite group as a multiplication table on element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    /// Validates closure, associativity, a two-sided identity and inverses.
    pub fn new(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Precondition(
                "a group has at least one element".into(),
            ));
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::Precondition(format!(
                "the table must be {n}x{n} with entries below {n}"
            )));
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if names.len() != n {
            return Err(Error::Precondition(
                "one name per element is required".into(),
            ));
        }
        let violation = |detail: String| Error::from(Violation::new(ViolationKind::Group, detail));
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| violation("no two-sided identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(violation(format!("element {} has no inverse", names[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(violation(format!(
                            "({} {}) {} differs from {} ({} {})",
                            names[a], names[b], names[c], names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            names,
            table,
            identity,
        })
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable::new(table, None).expect("cyclic groups are groups")
    }

    pub fn trivial() -> GroupTable {
        GroupTable::cyclic(1)
    }

    /// Direct product, with element `(g, h)` at index `g * |H| + h`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.table[x / m][y / m] * m + other.table[x % m][y % m])
                    .collect()
            })
            .collect();
        let names = (0..n * m)
            .map(|x| format!("({},{})", self.names[x / m], other.names[x % m]))
            .collect();
        GroupTable::new(table, Some(names)).expect("products of groups are groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Elements used as bar letters: all of them, or the non-identity ones.
    pub fn letters(&self, reduced: bool) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| !reduced || g != self.identity)
            .collect()
    }

    pub fn tuple_name(&self, tuple: &[usize]) -> String {
        let parts: Vec<&str> = tuple.iter().map(|&g| self.names[g].as_str()).collect();
        format!("[{}]", parts.join("|"))
    }
}

/// Enumerates `letters^k` in lexicographic order of letter positions.
pub(crate) fn tuples(letters: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                letters.iter().map(move |&g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

/// Mixed-radix position of a tuple of letter positions.
pub(crate) fn tuple_index(positions: impl Iterator<Item = usize>, base: usize) -> usize {
    positions.fold(0, |acc, p| acc * base + p)
}

/// Chains on the simplicial classifying space: degree `k` is spanned by
/// tuples `[g1|...|gk]`, with faces dropping the first entry, multiplying
/// neighbours, or dropping the last entry. In the reduced variant tuples
/// containing the identity are degenerate and set to zero.
pub fn classifying_complex(g: &GroupTable, n: usize, reduced: bool, ring: Ring) -> Complex {
    let letters = g.letters(reduced);
    let base = letters.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in letters.iter().enumerate() {
        pos[x] = i;
    }
    let all: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| tuples(&letters, k)).collect();
    let basis = all
        .iter()
        .map(|ts| ts.iter().map(|t| g.tuple_name(t)).collect())
        .collect();
    let module = GradedModule::new(ring, basis).expect("tuple names are distinct");
    let index_of = |t: &[usize]| -> Option<usize> {
        if t.iter().any(|&x| pos[x] == usize::MAX) {
            None
        } else {
            Some(tuple_index(t.iter().map(|&x| pos[x]), base))
        }
    };
    let mut diffs = vec![SparseMatrix::zeros(0, 1)];
    for k in 1..=n {
        let mut d = SparseMatrix::zeros(all[k - 1].len(), all[k].len());
        for (j, t) in all[k].iter().enumerate() {
            for i in 0..=k {
                let face: Vec<usize> = if i == 0 {
                    t[1..].to_vec()
                } else if i == k {
                    t[..k - 1].to_vec()
                } else {
                    let mut f = t[..i - 1].to_vec();
                    f.push(g.mul(t[i - 1], t[i]));
                    f.extend_from_slice(&t[i + 1..]);
                    f
                };
                if let Some(r) = index_of(&face) {
                    d.add_to(r, j, &sign(i));
                }
            }
        }
        diffs.push(d);
    }
    let complete = letters.is_empty();
    Complex::new(module, Direction::Homological, diffs, complete).expect("faces have degree -1")
}
