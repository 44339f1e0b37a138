use std::fmt;

use num_bigint::BigInt;

use super::module::{Direction, Gen, GradedModule};
use super::violation::{Violation, ViolationKind};
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Ring, SparseMatrix};

/// A (co)chain complex on a windowed graded module.
///
/// `diffs[n]` is the differential out of degree `n`; its row count is the
/// dimension of the target degree, which is zero when the target lies
/// outside the window. When `complete` is false the complex is a truncation
/// of something larger and homology at the edge of the window is refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    module: GradedModule,
    direction: Direction,
    diffs: Vec<SparseMatrix>,
    complete: bool,
}

impl Complex {
    pub fn new(
        module: GradedModule,
        direction: Direction,
        diffs: Vec<SparseMatrix>,
        complete: bool,
    ) -> Result<Complex> {
        let top = module.window();
        if diffs.len() != top + 1 {
            return Err(Error::Internal(format!(
                "expected {} differentials, got {}",
                top + 1,
                diffs.len()
            )));
        }
        for (n, d) in diffs.iter().enumerate() {
            let rows = direction.target(n).map_or(0, |t| module.dim(t));
            if d.cols() != module.dim(n) || d.rows() != rows {
                return Err(Error::Internal(format!(
                    "differential out of degree {n} has shape {}x{}, expected {rows}x{}",
                    d.rows(),
                    d.cols(),
                    module.dim(n)
                )));
            }
            if module.ring() == Ring::Z && !d.is_integral() {
                return Err(Error::Precondition(format!(
                    "non-integral differential out of degree {n} over Z"
                )));
            }
        }
        Ok(Complex {
            module,
            direction,
            diffs,
            complete,
        })
    }

    /// The complex with zero differential.
    pub fn zero(module: GradedModule, direction: Direction, complete: bool) -> Complex {
        let diffs = (0..=module.window())
            .map(|n| {
                let rows = direction.target(n).map_or(0, |t| module.dim(t));
                SparseMatrix::zeros(rows, module.dim(n))
            })
            .collect();
        Complex {
            module,
            direction,
            diffs,
            complete,
        }
    }

    /// Builds a complex from `d(gen) = sum coeff * target` triplets.
    pub fn from_terms(
        module: GradedModule,
        direction: Direction,
        terms: impl IntoIterator<Item = (Gen, Gen, crate::linalg::Rational)>,
        complete: bool,
    ) -> Result<Complex> {
        let mut c = Complex::zero(module, direction, complete);
        for (from, to, q) in terms {
            if direction.target(from.0) != Some(to.0) {
                return Err(Violation::new(
                    ViolationKind::Degree,
                    format!(
                        "d({}) has a term {} in degree {}, expected degree {}",
                        c.module.name(from),
                        c.module.name(to),
                        to.0,
                        direction
                            .target(from.0)
                            .map_or("-".into(), |t| t.to_string())
                    ),
                )
                .into());
            }
            if c.module.ring() == Ring::Z && !q.is_integer() {
                return Err(Error::Precondition(format!(
                    "non-integral coefficient {q} over Z"
                )));
            }
            c.diffs[from.0].add_to(to.1, from.1, &q);
        }
        Ok(c)
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn ring(&self) -> Ring {
        self.module.ring()
    }

    pub fn window(&self) -> usize {
        self.module.window()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn dim(&self, n: usize) -> usize {
        self.module.dim(n)
    }

    /// Differential out of degree `n`.
    pub fn d(&self, n: usize) -> &SparseMatrix {
        &self.diffs[n]
    }

    pub fn diffs(&self) -> &[SparseMatrix] {
        &self.diffs
    }

    /// Whether `d(x)` is known for `x` in degree `n`.
    pub fn d_known(&self, n: usize) -> bool {
        match self.direction.target(n) {
            None => true,
            Some(t) => t <= self.window() || self.complete,
        }
    }

    pub fn d_gen(&self, g: Gen) -> Combination<Gen> {
        match self.direction.target(g.0) {
            Some(t) if t <= self.window() => self.diffs[g.0]
                .column(g.1)
                .iter()
                .map(|(r, v)| ((t, *r), v.clone()))
                .collect(),
            _ => Combination::new(),
        }
    }

    pub fn d_elem(&self, x: &Combination<Gen>) -> Combination<Gen> {
        let mut out = Combination::new();
        for (g, q) in x.iter() {
            out.add_scaled(&self.d_gen(*g), q);
        }
        out
    }

    /// First degree where `d o d` is nonzero, if any.
    pub fn check_d_squared(&self) -> std::result::Result<(), Violation> {
        for n in 0..=self.window() {
            let Some(t) = self.direction.target(n) else {
                continue;
            };
            if t > self.window() {
                continue;
            }
            let dd = self.diffs[t].mul(&self.diffs[n]);
            let first = dd.entries().next().map(|(r, c, v)| (r, c, v.clone()));
            if let Some((r, c, v)) = first {
                let tt = self.direction.target(t).unwrap();
                return Err(Violation::new(
                    ViolationKind::DSquared,
                    format!(
                        "d(d({})) has coefficient {v} on {}",
                        self.module.name((n, c)),
                        self.module.name((tt, r))
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Differential mapping into degree `n`, or `None` if it cannot be known
    /// from the window.
    fn incoming(&self, n: usize) -> Option<SparseMatrix> {
        match self.direction.source(n) {
            None => Some(SparseMatrix::zeros(self.dim(n), 0)),
            Some(s) if s <= self.window() => Some(self.diffs[s].clone()),
            Some(_) if self.complete => Some(SparseMatrix::zeros(self.dim(n), 0)),
            Some(_) => None,
        }
    }

    fn outgoing(&self, n: usize) -> Option<&SparseMatrix> {
        self.d_known(n).then(|| &self.diffs[n])
    }

    /// Degrees in which homology is determined by the window.
    #[allow(clippy::reversed_empty_ranges)]
    pub fn valid_degrees(&self) -> std::ops::RangeInclusive<usize> {
        if self.complete {
            0..=self.window()
        } else {
            match self.window() {
                // Nothing is determined.
                0 => 1..=0,
                w => 0..=w - 1,
            }
        }
    }

    pub fn homology(&self, degrees: std::ops::RangeInclusive<usize>) -> Result<HomologyReport> {
        let mut out = Vec::new();
        for n in degrees {
            out.push(self.homology_in(n)?);
        }
        Ok(HomologyReport {
            ring: self.ring(),
            direction: self.direction,
            degrees: out,
        })
    }

    /// Homology in every degree the window determines.
    pub fn full_homology(&self) -> Result<HomologyReport> {
        self.homology(self.valid_degrees())
    }

    pub fn homology_in(&self, n: usize) -> Result<DegreeHomology> {
        if n > self.window() {
            if self.complete {
                return Ok(DegreeHomology {
                    degree: n,
                    rank: 0,
                    torsion: vec![],
                });
            }
            return Err(Error::WindowTooSmall(format!(
                "degree {n} lies outside the window [0, {}]",
                self.window()
            )));
        }
        let too_small = || {
            Error::WindowTooSmall(format!(
                "homology in degree {n} needs the differential beyond the window [0, {}]",
                self.window()
            ))
        };
        let incoming = self.incoming(n).ok_or_else(too_small)?;
        let outgoing = self.outgoing(n).ok_or_else(too_small)?;
        let cycles = self.dim(n) - outgoing.rank();
        match self.ring() {
            Ring::Q => Ok(DegreeHomology {
                degree: n,
                rank: cycles - incoming.rank(),
                torsion: vec![],
            }),
            Ring::Z => {
                let snf = smith_normal_form(&incoming)?;
                Ok(DegreeHomology {
                    degree: n,
                    rank: cycles - snf.rank(),
                    torsion: snf.torsion(),
                })
            }
        }
    }

    /// Alternating sum of carrier dimensions over `degrees`.
    pub fn euler_characteristic(&self, degrees: std::ops::RangeInclusive<usize>) -> i64 {
        degrees
            .map(|n| {
                let d = self.dim(n) as i64;
                if n % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }
}

/// Homology of one degree: free rank plus torsion coefficients (over Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn describe(&self, ring: Ring) -> String {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(ring.to_string()),
            r => parts.push(format!("{ring}^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub ring: Ring,
    pub direction: Direction,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn get(&self, degree: usize) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == degree)
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.direction {
            Direction::Homological => "_",
            Direction::Cohomological => "^",
        };
        for d in &self.degrees {
            writeln!(f, "H{sym}{} = {}", d.degree, d.describe(self.ring))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn module(ring: Ring, dims: &[usize]) -> GradedModule {
        let basis = dims
            .iter()
            .enumerate()
            .map(|(d, &k)| (0..k).map(|i| format!("e{d}_{i}")).collect())
            .collect();
        GradedModule::new(ring, basis).unwrap()
    }

    #[test]
    fn zero_differential_homology_is_carrier() {
        let c = Complex::zero(module(Ring::Q, &[1, 0, 1]), Direction::Homological, true);
        assert_eq!(c.full_homology().unwrap().ranks(), vec![1, 0, 1]);
    }

    #[test]
    fn multiplication_by_two() {
        let m = module(Ring::Z, &[1, 1]);
        let c = Complex::from_terms(
            m,
            Direction::Homological,
            vec![((1, 0), (0, 0), int(2))],
            true,
        )
        .unwrap();
        let h = c.full_homology().unwrap();
        assert_eq!(h.degrees[0].rank, 0);
        assert_eq!(h.degrees[0].torsion, vec![BigInt::from(2)]);
        assert_eq!(h.degrees[1].rank, 0);
        assert!(h.degrees[1].torsion.is_empty());
        assert_eq!(h.degrees[0].describe(Ring::Z), "Z/2");
    }

    #[test]
    fn truncated_edge_is_refused() {
        let c = Complex::zero(module(Ring::Q, &[1, 1, 1]), Direction::Homological, false);
        assert!(c.homology_in(1).is_ok());
        assert!(matches!(c.homology_in(2), Err(Error::WindowTooSmall(_))));
        let c = Complex::zero(module(Ring::Q, &[1, 1, 1]), Direction::Cohomological, false);
        assert!(matches!(c.homology_in(2), Err(Error::WindowTooSmall(_))));
        assert_eq!(c.full_homology().unwrap().degrees.len(), 2);
    }

    #[test]
    fn wrong_degree_term_is_a_violation() {
        let m = module(Ring::Q, &[1, 1, 1]);
        let err = Complex::from_terms(
            m,
            Direction::Homological,
            vec![((2, 0), (0, 0), int(1))],
            true,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Verification(v) if v.kind == ViolationKind::Degree));
    }
}
