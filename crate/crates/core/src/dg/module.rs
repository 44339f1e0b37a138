use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Ring;

/// A basis element, addressed as `(degree, index within degree)`.
pub type Gen = (usize, usize);

/// Whether differentials lower degree (chains) or raise it (cochains).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Homological,
    Cohomological,
}

impl Direction {
    /// Degree of the differential.
    pub fn step(self) -> isize {
        match self {
            Direction::Homological => -1,
            Direction::Cohomological => 1,
        }
    }

    /// Degree of `d(x)` for `x` in degree `n`, if non-negative.
    pub fn target(self, n: usize) -> Option<usize> {
        match self {
            Direction::Homological => n.checked_sub(1),
            Direction::Cohomological => Some(n + 1),
        }
    }

    /// Degree mapping into `n` under the differential.
    pub fn source(self, n: usize) -> Option<usize> {
        match self {
            Direction::Homological => Some(n + 1),
            Direction::Cohomological => n.checked_sub(1),
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Homological => Direction::Cohomological,
            Direction::Cohomological => Direction::Homological,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Homological => "homological",
            Direction::Cohomological => "cohomological",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homological" | "chain" => Ok(Direction::Homological),
            "cohomological" | "cochain" => Ok(Direction::Cohomological),
            other => Err(Error::Parse(format!("unknown direction `{other}`"))),
        }
    }
}

/// Free graded module with a named basis in each degree of the window
/// `[0, window]`. Names are unique across the whole module so that files can
/// refer to generators by name alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    ring: Ring,
    basis: Vec<Vec<String>>,
    lookup: HashMap<String, Gen>,
}

impl GradedModule {
    pub fn new(ring: Ring, basis: Vec<Vec<String>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Precondition(
                "graded module needs at least degree 0".into(),
            ));
        }
        let mut lookup = HashMap::new();
        for (deg, names) in basis.iter().enumerate() {
            for (i, name) in names.iter().enumerate() {
                if lookup.insert(name.clone(), (deg, i)).is_some() {
                    return Err(Error::Precondition(format!(
                        "duplicate basis name `{name}`"
                    )));
                }
            }
        }
        Ok(GradedModule {
            ring,
            basis,
            lookup,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(&self, ring: Ring) -> GradedModule {
        GradedModule {
            ring,
            ..self.clone()
        }
    }

    /// Top degree of the window.
    pub fn window(&self) -> usize {
        self.basis.len() - 1
    }

    /// Dimension in degree `n`; zero outside the window.
    pub fn dim(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, |b| b.len())
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    pub fn names(&self, n: usize) -> &[String] {
        self.basis.get(n).map_or(&[], |b| b.as_slice())
    }

    pub fn basis(&self) -> &[Vec<String>] {
        &self.basis
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.basis[g.0][g.1]
    }

    pub fn find(&self, name: &str) -> Option<Gen> {
        self.lookup.get(name).copied()
    }

    /// All generators in degree order.
    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(d, b)| (0..b.len()).map(move |i| (d, i)))
    }
}
