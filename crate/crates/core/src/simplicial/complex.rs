use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::dg::{
    Complex, DgCoalgebra, Direction, Gen, GradedModule, Tensor, Violation, ViolationKind,
};
use crate::error::{Error, Result};
use crate::linalg::{sign, Rational, Ring};

/// A simplex as a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// A finite simplicial complex given by its facets. Vertex order fixes the
/// orientation of every simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Precondition(
                "a simplicial complex needs a vertex".into(),
            ));
        }
        let distinct: BTreeSet<&String> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::Precondition("vertex labels must be distinct".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for f in facets {
            let s: BTreeSet<usize> = f.iter().copied().collect();
            if s.len() != f.len() || s.is_empty() {
                return Err(Error::Precondition(format!(
                    "facet {f:?} repeats a vertex or is empty"
                )));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::Precondition(format!(
                    "facet refers to unknown vertex {v}"
                )));
            }
            let s: Simplex = s.into_iter().collect();
            if !seen.insert(s.clone()) {
                return Err(Error::Precondition(format!("facet {s:?} listed twice")));
            }
            out.push(s);
        }
        Ok(SimplicialComplex {
            vertices,
            facets: out,
        })
    }

    /// Builds from labelled facets, sorting vertices by first appearance in
    /// `vertices`.
    pub fn from_labels(vertices: &[&str], facets: &[&[&str]]) -> Result<Self> {
        let index: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let facets = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| {
                        index
                            .get(v)
                            .copied()
                            .ok_or_else(|| Error::Precondition(format!("unknown vertex `{v}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::new(vertices.iter().map(|s| s.to_string()).collect(), facets)
    }

    /// The boundary of the `k`-simplex on vertices `0..=k`.
    pub fn boundary_of_simplex(k: usize) -> SimplicialComplex {
        let vertices = (0..=k).map(|i| i.to_string()).collect();
        let facets = (0..=k)
            .map(|skip| (0..=k).filter(|&v| v != skip).collect())
            .collect();
        SimplicialComplex::new(vertices, facets).expect("valid boundary")
    }

    /// The full `k`-simplex on vertices `0..=k`.
    pub fn simplex(k: usize) -> SimplicialComplex {
        let vertices = (0..=k).map(|i| i.to_string()).collect();
        SimplicialComplex::new(vertices, vec![(0..=k).collect()]).expect("valid simplex")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }

    /// All faces of dimension `0..=top`, each degree sorted lexicographically.
    /// Isolated vertices (not in any facet) are included in degree 0.
    pub fn faces(&self, top: usize) -> Vec<Vec<Simplex>> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); top + 1];
        for v in 0..self.vertices.len() {
            by_dim[0].insert(vec![v]);
        }
        for f in &self.facets {
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                let k = mask.count_ones() as usize - 1;
                if k > top {
                    continue;
                }
                let s: Simplex = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                by_dim[k].insert(s);
            }
        }
        by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.facets
            .iter()
            .any(|f| s.iter().all(|v| f.binary_search(v).is_ok()))
            || (s.len() == 1 && s[0] < self.vertices.len())
    }

    pub fn simplex_name(&self, s: &[usize]) -> String {
        let labels: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("({})", labels.join(" "))
    }

    /// The closed star of a vertex: every face whose union with the vertex is
    /// again a face.
    pub fn closed_star(&self, v: usize) -> SimplicialComplex {
        let facets: BTreeSet<Simplex> = self
            .facets
            .iter()
            .filter(|f| f.binary_search(&v).is_ok())
            .cloned()
            .collect();
        let mut facets: Vec<Simplex> = facets.into_iter().collect();
        if facets.is_empty() {
            facets.push(vec![v]);
        }
        SimplicialComplex {
            vertices: self.vertices.clone(),
            facets,
        }
    }

    /// Subcomplex on the given facets, keeping this complex's vertex labels.
    pub fn subcomplex(&self, facets: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
        let sub = SimplicialComplex::new(self.vertices.clone(), facets)?;
        for f in &sub.facets {
            if !self.contains(f) {
                return Err(Error::Precondition(format!(
                    "{} is not a face of the total complex",
                    self.simplex_name(f)
                )));
            }
        }
        Ok(sub)
    }

    /// Oriented simplicial chains with `d = sum (-1)^i d_i` in degrees `0..=n`.
    pub fn chain_complex(&self, n: usize, ring: Ring) -> Complex {
        let faces = self.faces(n);
        let basis: Vec<Vec<String>> = faces
            .iter()
            .map(|fs| fs.iter().map(|s| self.simplex_name(s)).collect())
            .collect();
        let module = GradedModule::new(ring, basis).expect("simplex names are distinct");
        let terms = boundary_terms(&faces);
        Complex::from_terms(module, Direction::Homological, terms, n >= self.dimension())
            .expect("boundary has degree -1")
    }
}

fn index_faces(faces: &[Vec<Simplex>]) -> Vec<BTreeMap<&Simplex, usize>> {
    faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect()
}

fn boundary_terms(faces: &[Vec<Simplex>]) -> Vec<(Gen, Gen, Rational)> {
    let index = index_faces(faces);
    let mut terms = Vec::new();
    for (k, fs) in faces.iter().enumerate().skip(1) {
        for (j, s) in fs.iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                terms.push(((k, j), (k - 1, index[k - 1][&face]), sign(i)));
            }
        }
    }
    terms
}

/// Simplicial chains with the Alexander-Whitney coproduct
/// `D(v0..vn) = sum_i (v0..vi) (x) (vi..vn)`, counit 1 on every vertex and
/// the first vertex as coaugmentation.
pub fn chains_with_coproduct(x: &SimplicialComplex, n: usize, ring: Ring) -> Result<DgCoalgebra> {
    let complex = x.chain_complex(n, ring);
    let faces = x.faces(n);
    let index = index_faces(&faces);
    let mut table = Vec::new();
    for (k, fs) in faces.iter().enumerate() {
        for (j, s) in fs.iter().enumerate() {
            let mut t = Tensor::new();
            for i in 0..=k {
                let front = s[..=i].to_vec();
                let back = s[i..].to_vec();
                t.add_term(
                    ((i, index[i][&front]), (k - i, index[k - i][&back])),
                    Rational::one(),
                );
            }
            table.push(((k, j), t));
        }
    }
    let counit = vec![Rational::one(); faces[0].len()];
    DgCoalgebra::new(complex, table, counit, (0, 0))
}

/// A simplicial complex together with a subcomplex to be collapsed to a
/// point. The subcomplex must contain the whole 1-skeleton and be acyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsePair {
    total: SimplicialComplex,
    sub: SimplicialComplex,
}

impl CollapsePair {
    pub fn new(total: SimplicialComplex, sub: SimplicialComplex) -> Result<CollapsePair> {
        if total.vertices != sub.vertices {
            return Err(Error::Precondition(
                "total and sub must share their vertex list".into(),
            ));
        }
        for f in &sub.facets {
            if !total.contains(f) {
                return Err(Violation::new(
                    ViolationKind::Subcomplex,
                    format!(
                        "{} is not a face of the total complex",
                        total.simplex_name(f)
                    ),
                )
                .into());
            }
        }
        for edge in total.faces(1).get(1).into_iter().flatten() {
            if !sub.contains(edge) {
                return Err(Violation::new(
                    ViolationKind::Subcomplex,
                    format!(
                        "the subcomplex misses the edge {}",
                        total.simplex_name(edge)
                    ),
                )
                .into());
            }
        }
        let h = sub
            .chain_complex(sub.dimension(), Ring::Z)
            .full_homology()?;
        for d in &h.degrees {
            let expected = usize::from(d.degree == 0);
            if d.rank != expected || !d.torsion.is_empty() {
                return Err(Violation::new(
                    ViolationKind::Acyclicity,
                    format!(
                        "the subcomplex has H_{} = {}",
                        d.degree,
                        d.describe(Ring::Z)
                    ),
                )
                .into());
            }
        }
        Ok(CollapsePair { total, sub })
    }

    /// Collapses the closed star of `v`.
    pub fn star(total: SimplicialComplex, v: usize) -> Result<CollapsePair> {
        let sub = total.closed_star(v);
        CollapsePair::new(total, sub)
    }

    pub fn total(&self) -> &SimplicialComplex {
        &self.total
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }
}

/// The quotient coalgebra `C(total) / C(sub)` with a single degree-0
/// generator `*`: vertices map to `*`, other simplices of the subcomplex to
/// zero, and the Alexander-Whitney coproduct descends.
pub fn collapse_quotient(p: &CollapsePair, n: usize, ring: Ring) -> Result<DgCoalgebra> {
    let faces = p.total.faces(n);
    let mut kept: Vec<Vec<Simplex>> = vec![Vec::new(); n + 1];
    for (k, fs) in faces.iter().enumerate().skip(1) {
        kept[k] = fs.iter().filter(|s| !p.sub.contains(s)).cloned().collect();
    }
    let index = index_faces(&kept);
    let image = |s: &Simplex| -> Option<Gen> {
        if s.len() == 1 {
            Some((0, 0))
        } else {
            index[s.len() - 1].get(s).map(|&i| (s.len() - 1, i))
        }
    };
    let mut basis: Vec<Vec<String>> = vec![vec!["*".to_string()]];
    for fs in kept.iter().skip(1) {
        basis.push(fs.iter().map(|s| p.total.simplex_name(s)).collect());
    }
    let module = GradedModule::new(ring, basis)?;
    let mut terms = Vec::new();
    let mut table = Vec::new();
    for (k, fs) in kept.iter().enumerate().skip(1) {
        for (j, s) in fs.iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                if k > 1 {
                    if let Some(g) = image(&face) {
                        terms.push(((k, j), g, sign(i)));
                    }
                }
            }
            let mut t = Tensor::new();
            for i in 0..=k {
                if let (Some(a), Some(b)) = (image(&s[..=i].to_vec()), image(&s[i..].to_vec())) {
                    t.add_term((a, b), Rational::one());
                }
            }
            table.push(((k, j), t));
        }
    }
    table.push(((0, 0), Tensor::term(((0, 0), (0, 0)), Rational::one())));
    let complex = Complex::from_terms(
        module,
        Direction::Homological,
        terms,
        n >= p.total.dimension(),
    )?;
    DgCoalgebra::new(complex, table, vec![Rational::one()], (0, 0))
}
