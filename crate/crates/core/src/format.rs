//! JSON file formats. Scalars are `"p/q"` strings so that no coefficient
//! passes through floating point.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combination::Combination;
use crate::dg::{Complex, DgAlgebra, DgCoalgebra, Direction, Element, Gen, GradedModule, Tensor};
use crate::error::{Error, Result};
use crate::lie::GradedLieAlgebra;
use crate::linalg::{format_scalar, parse_scalar, Rational, Ring};
use crate::simplicial::{GroupTable, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl SimplicialFile {
    pub fn build(&self) -> Result<SimplicialComplex> {
        let vs: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let fs: Vec<Vec<&str>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(String::as_str).collect())
            .collect();
        let fs: Vec<&[&str]> = fs.iter().map(Vec::as_slice).collect();
        SimplicialComplex::from_labels(&vs, &fs)
    }

    pub fn from_complex(x: &SimplicialComplex) -> SimplicialFile {
        SimplicialFile {
            vertices: x.vertices().to_vec(),
            facets: x
                .facets()
                .iter()
                .map(|f| f.iter().map(|&v| x.vertices()[v].clone()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn build(&self) -> Result<GroupTable> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!(
                "order {} but {} table rows",
                self.order,
                self.table.len()
            )));
        }
        GroupTable::new(self.table.clone(), self.names.clone())
    }

    pub fn from_group(g: &GroupTable) -> GroupFile {
        let default: Vec<String> = (0..g.order()).map(|i| i.to_string()).collect();
        GroupFile {
            order: g.order(),
            table: g.table().to_vec(),
            names: (g.names() != default.as_slice()).then(|| g.names().to_vec()),
        }
    }
}

fn default_complete() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

/// Graded basis and differential shared by the algebra, coalgebra and Lie
/// algebra formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    /// Whether the basis is complete, so that everything above the window is zero.
    #[serde(default = "default_complete", skip_serializing_if = "is_true")]
    pub complete: bool,
    pub basis: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub d: Vec<(String, String, String)>,
}

fn parse_direction(s: Option<&str>) -> Result<Direction> {
    match s {
        None | Some("homological") => Ok(Direction::Homological),
        Some("cohomological") => Ok(Direction::Cohomological),
        Some(other) => Err(Error::Parse(format!("unknown direction `{other}`"))),
    }
}

fn lookup(m: &GradedModule, name: &str) -> Result<Gen> {
    m.find(name)
        .ok_or_else(|| Error::Parse(format!("unknown basis element `{name}`")))
}

impl ComplexFile {
    pub fn module(&self, ring: Ring) -> Result<GradedModule> {
        let mut by_degree: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (k, names) in &self.basis {
            let deg: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid degree `{k}`")))?;
            if by_degree.insert(deg, names.clone()).is_some() {
                return Err(Error::Parse(format!("degree {deg} listed twice")));
            }
        }
        let top = by_degree
            .keys()
            .next_back()
            .copied()
            .unwrap_or(0)
            .max(self.window.unwrap_or(0));
        if let Some(w) = self.window {
            if w < top {
                return Err(Error::Parse(format!(
                    "basis reaches degree {top} beyond window {w}"
                )));
            }
        }
        let basis = (0..=top)
            .map(|d| by_degree.remove(&d).unwrap_or_default())
            .collect();
        GradedModule::new(ring, basis)
    }

    pub fn direction(&self) -> Result<Direction> {
        parse_direction(self.direction.as_deref())
    }

    pub fn differential_terms(&self, m: &GradedModule) -> Result<Vec<(Gen, Gen, Rational)>> {
        self.d
            .iter()
            .map(|(a, b, q)| Ok((lookup(m, a)?, lookup(m, b)?, parse_scalar(q)?)))
            .collect()
    }

    pub fn build(&self, ring: Ring) -> Result<Complex> {
        let m = self.module(ring)?;
        let terms = self.differential_terms(&m)?;
        Complex::from_terms(m, self.direction()?, terms, self.complete)
    }

    pub fn from_complex(c: &Complex) -> ComplexFile {
        let m = c.module();
        let basis = (0..=c.window())
            .filter(|&n| m.dim(n) > 0)
            .map(|n| (n.to_string(), m.names(n).to_vec()))
            .collect();
        let mut d = Vec::new();
        for n in 0..=c.window() {
            let Some(t) = c.direction().target(n) else {
                continue;
            };
            for (r, col, q) in c.d(n).entries() {
                d.push((
                    m.name((n, col)).to_string(),
                    m.name((t, r)).to_string(),
                    format_scalar(q),
                ));
            }
        }
        d.sort();
        ComplexFile {
            direction: Some(c.direction().as_str().to_string()),
            window: Some(c.window()),
            complete: c.is_complete(),
            basis,
            d,
        }
    }
}

fn scalar_map(
    m: &GradedModule,
    values: &BTreeMap<String, String>,
    degree: usize,
) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); m.dim(degree)];
    for (name, q) in values {
        let g = lookup(m, name)?;
        if g.0 != degree {
            return Err(Error::Parse(format!("`{name}` is not in degree {degree}")));
        }
        out[g.1] = parse_scalar(q)?;
    }
    Ok(out)
}

fn default_point(m: &GradedModule, named: Option<&str>) -> Result<Gen> {
    match named {
        Some(s) => lookup(m, s),
        None => m
            .find("1")
            .or_else(|| (m.dim(0) > 0).then_some((0, 0)))
            .ok_or_else(|| Error::Parse("degree 0 is empty".into())),
    }
}

fn unit_values(m: &GradedModule, point: Gen) -> Vec<Rational> {
    (0..m.dim(0))
        .map(|i| {
            if i == point.1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn values_map(m: &GradedModule, values: &[Rational]) -> BTreeMap<String, String> {
    values
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| (m.name((0, i)).to_string(), format_scalar(q)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(flatten)]
    pub complex: ComplexFile,
    /// `[a, b, c, q]`: the product `a b` has coefficient `q` on `c`.
    #[serde(default)]
    pub mul: Vec<(String, String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<BTreeMap<String, String>>,
}

impl AlgebraFile {
    pub fn build(&self, ring: Ring) -> Result<DgAlgebra> {
        let complex = self.complex.build(ring)?;
        let m = complex.module().clone();
        let unit = default_point(&m, self.unit.as_deref())?;
        let augmentation = match &self.augmentation {
            Some(values) => scalar_map(&m, values, 0)?,
            None => unit_values(&m, unit),
        };
        let mut products: BTreeMap<(Gen, Gen), Element> = BTreeMap::new();
        for (a, b, c, q) in &self.mul {
            let key = (lookup(&m, a)?, lookup(&m, b)?);
            products
                .entry(key)
                .or_default()
                .add_term(lookup(&m, c)?, parse_scalar(q)?);
        }
        DgAlgebra::new(
            complex,
            products.into_iter().map(|((a, b), c)| (a, b, c)),
            unit,
            augmentation,
        )
    }

    pub fn from_algebra(a: &DgAlgebra) -> AlgebraFile {
        let m = a.complex().module();
        let mut mul = Vec::new();
        for ((x, y), c) in a.products() {
            for (z, q) in c.iter() {
                mul.push((
                    m.name(*x).to_string(),
                    m.name(*y).to_string(),
                    m.name(*z).to_string(),
                    format_scalar(q),
                ));
            }
        }
        AlgebraFile {
            complex: ComplexFile::from_complex(a.complex()),
            mul,
            unit: Some(m.name(a.unit()).to_string()),
            augmentation: Some(values_map(m, a.augmentation())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraFile {
    #[serde(flatten)]
    pub complex: ComplexFile,
    /// `[a, b, c, q]`: the coproduct of `a` has coefficient `q` on `b (x) c`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comul: Option<Vec<(String, String, String, String)>>,
    /// Same shape, listing only the reduced coproduct of a connected coalgebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_comul: Option<Vec<(String, String, String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaugmentation: Option<String>,
}

impl CoalgebraFile {
    pub fn build(&self, ring: Ring) -> Result<DgCoalgebra> {
        let complex = self.complex.build(ring)?;
        let m = complex.module().clone();
        let table =
            |entries: &[(String, String, String, String)]| -> Result<BTreeMap<Gen, Tensor>> {
                let mut out: BTreeMap<Gen, Tensor> = BTreeMap::new();
                for (a, b, c, q) in entries {
                    out.entry(lookup(&m, a)?)
                        .or_default()
                        .add_term((lookup(&m, b)?, lookup(&m, c)?), parse_scalar(q)?);
                }
                Ok(out)
            };
        match (&self.comul, &self.reduced_comul) {
            (Some(full), None) => {
                let point = default_point(&m, self.coaugmentation.as_deref())?;
                let counit = match &self.counit {
                    Some(values) => scalar_map(&m, values, 0)?,
                    None => unit_values(&m, point),
                };
                DgCoalgebra::new(complex, table(full)?, counit, point)
            }
            (None, Some(reduced)) => {
                if self.counit.is_some() || self.coaugmentation.is_some() {
                    return Err(Error::Parse(
                        "a reduced coproduct fixes the counit and coaugmentation; omit them".into(),
                    ));
                }
                DgCoalgebra::from_reduced(complex, table(reduced)?)
            }
            _ => Err(Error::Parse(
                "give exactly one of `comul` and `reduced_comul`".into(),
            )),
        }
    }

    pub fn from_coalgebra(c: &DgCoalgebra) -> CoalgebraFile {
        let m = c.module();
        let mut comul = Vec::new();
        for (x, t) in c.coproduct_table() {
            for ((a, b), q) in t.iter() {
                comul.push((
                    m.name(*x).to_string(),
                    m.name(*a).to_string(),
                    m.name(*b).to_string(),
                    format_scalar(q),
                ));
            }
        }
        CoalgebraFile {
            complex: ComplexFile::from_complex(c.complex()),
            comul: Some(comul),
            reduced_comul: None,
            counit: Some(values_map(m, c.counit())),
            coaugmentation: Some(m.name(c.coaugmentation()).to_string()),
        }
    }
}

/// A Lie algebra either by an explicit bracket table or as a free Lie
/// algebra on generators, modulo relations, with a differential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LieFile {
    Table(LieTableFile),
    Presented(LiePresentationFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieTableFile {
    #[serde(flatten)]
    pub complex: ComplexFile,
    /// `[a, b, c, q]`: `[a, b]` has coefficient `q` on `c`.
    pub bracket: Vec<(String, String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiePresentationFile {
    pub generators: Vec<(String, usize)>,
    #[serde(default)]
    pub differential: Vec<(String, String)>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl LieFile {
    /// `top` bounds the degrees computed for presented algebras.
    pub fn build(&self, top: usize) -> Result<GradedLieAlgebra> {
        match self {
            LieFile::Table(t) => {
                if t.complex
                    .direction
                    .as_deref()
                    .is_some_and(|d| d != "homological")
                {
                    return Err(Error::Parse(
                        "Lie algebra differentials lower degree".into(),
                    ));
                }
                let m = t.complex.module(Ring::Q)?;
                let mut brackets: BTreeMap<(Gen, Gen), Element> = BTreeMap::new();
                for (a, b, c, q) in &t.bracket {
                    let key = (lookup(&m, a)?, lookup(&m, b)?);
                    brackets
                        .entry(key)
                        .or_default()
                        .add_term(lookup(&m, c)?, parse_scalar(q)?);
                }
                let d = t.complex.differential_terms(&m)?;
                GradedLieAlgebra::new(
                    m,
                    brackets.into_iter().map(|((a, b), c)| (a, b, c)),
                    Some(d),
                    t.complex.complete,
                )
            }
            LieFile::Presented(p) => {
                let gens: Vec<(&str, usize)> =
                    p.generators.iter().map(|(s, d)| (s.as_str(), *d)).collect();
                let diff: Vec<(&str, &str)> = p
                    .differential
                    .iter()
                    .map(|(a, b)| (a.as_str(), b.as_str()))
                    .collect();
                let l = crate::lie::free_dg_lie(&gens, &diff, top)?;
                if p.relations.is_empty() {
                    return Ok(l);
                }
                let rels: Vec<&str> = p.relations.iter().map(String::as_str).collect();
                crate::lie::lie_quotient_by_expressions(&l, &rels)
            }
        }
    }

    pub fn from_lie(l: &GradedLieAlgebra) -> LieFile {
        let m = l.module();
        let zero = Complex::zero(m.clone(), Direction::Homological, l.is_complete());
        let mut complex = ComplexFile::from_complex(l.differential().unwrap_or(&zero));
        complex.direction = None;
        let mut bracket = Vec::new();
        for ((a, b), c) in l.brackets() {
            for (g, q) in c.iter() {
                bracket.push((
                    m.name(*a).to_string(),
                    m.name(*b).to_string(),
                    m.name(*g).to_string(),
                    format_scalar(q),
                ));
            }
        }
        LieFile::Table(LieTableFile { complex, bracket })
    }
}

/// Bar words as `[scalar, [letter, ...]]` pairs.
pub type WordsFile = Vec<(String, Vec<String>)>;

pub fn parse_words(a: &DgAlgebra, words: &WordsFile) -> Result<Combination<Vec<Gen>>> {
    let m = a.complex().module();
    let mut out = Combination::new();
    for (q, letters) in words {
        let w = letters
            .iter()
            .map(|s| lookup(m, s))
            .collect::<Result<Vec<_>>>()?;
        out.add_term(w, parse_scalar(q)?);
    }
    Ok(out)
}

pub fn write_words(a: &DgAlgebra, x: &Combination<Vec<Gen>>) -> WordsFile {
    let m = a.complex().module();
    x.iter()
        .map(|(w, q)| {
            (
                format_scalar(q),
                w.iter().map(|&g| m.name(g).to_string()).collect(),
            )
        })
        .collect()
}

/// Linear combinations as `[scalar, name]` pairs.
pub type ElementFile = Vec<(String, String)>;

pub fn parse_element(m: &GradedModule, x: &ElementFile) -> Result<Element> {
    let mut out = Element::new();
    for (q, s) in x {
        out.add_term(lookup(m, s)?, parse_scalar(q)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: AlgebraFile,
    /// Images of source generators; unlisted positive-degree generators map to zero.
    pub images: BTreeMap<String, ElementFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametrizedFile {
    pub x: Vec<ElementFile>,
    pub y: Vec<ElementFile>,
    #[serde(default)]
    pub theta: ElementFile,
}

/// A sphere model with a bar cocycle, optionally over another algebra
/// mapping to the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    pub model: AlgebraFile,
    pub dimension: usize,
    pub fundamental: BTreeMap<String, String>,
    pub cocycle: WordsFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrized: Option<ParametrizedFile>,
}

impl HopfFile {
    pub fn sphere(&self) -> Result<crate::hopf::SphereModel> {
        let a = self.model.build(Ring::Q)?;
        let m = a.complex().module().clone();
        let mut f = vec![Rational::zero(); m.dim(self.dimension)];
        for (name, q) in &self.fundamental {
            let g = lookup(&m, name)?;
            if g.0 != self.dimension {
                return Err(Error::Parse(format!(
                    "`{name}` is not in degree {}",
                    self.dimension
                )));
            }
            f[g.1] = parse_scalar(q)?;
        }
        crate::hopf::SphereModel::new(a, self.dimension, f)
    }
}

/// Which kind of object a JSON document describes, judged by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Simplicial,
    Group,
    Algebra,
    Coalgebra,
    Lie,
    Hopf,
}

pub fn detect(value: &serde_json::Value) -> Result<Kind> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    Ok(if has("vertices") {
        Kind::Simplicial
    } else if has("table") {
        Kind::Group
    } else if has("model") {
        Kind::Hopf
    } else if has("bracket") || has("generators") {
        Kind::Lie
    } else if has("comul") || has("reduced_comul") {
        Kind::Coalgebra
    } else if has("basis") {
        Kind::Algebra
    } else {
        return Err(Error::Parse(
            "cannot tell what kind of object this file describes".into(),
        ));
    })
}

pub fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    Ok(serde_json::from_str(s)?)
}

pub fn to_string<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("file types serialize")
}
