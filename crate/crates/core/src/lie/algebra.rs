use std::collections::BTreeMap;

use num_traits::One;

use crate::combination::Combination;
use crate::dg::{
    show_element, Complex, Direction, Element, Gen, GradedModule, Violation, ViolationKind,
};
use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, sign, Rational};

/// A graded Lie algebra (optionally with a differential of degree -1) given
/// by structure constants on a named basis in degrees `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    module: GradedModule,
    bracket: BTreeMap<(Gen, Gen), Element>,
    differential: Option<Complex>,
    complete: bool,
}

impl GradedLieAlgebra {
    /// `complete` asserts that the algebra vanishes above the window, so
    /// brackets landing beyond it are zero rather than unknown.
    pub fn new(
        module: GradedModule,
        bracket: impl IntoIterator<Item = (Gen, Gen, Element)>,
        differential: Option<Vec<(Gen, Gen, Rational)>>,
        complete: bool,
    ) -> Result<GradedLieAlgebra> {
        if module.dim(0) != 0 {
            return Err(Error::Precondition(
                "Lie algebras here are concentrated in positive degrees".into(),
            ));
        }
        let mut table: BTreeMap<(Gen, Gen), Element> = BTreeMap::new();
        for (a, b, c) in bracket {
            for g in c.keys() {
                if g.0 != a.0 + b.0 {
                    return Err(Violation::new(
                        ViolationKind::Degree,
                        format!(
                            "[{}, {}] has a term {} of degree {}",
                            module.name(a),
                            module.name(b),
                            module.name(*g),
                            g.0
                        ),
                    )
                    .into());
                }
            }
            *table.entry((a, b)).or_default() += &c;
        }
        table.retain(|_, c| !c.is_zero());
        let differential = match differential {
            None => None,
            Some(terms) if terms.is_empty() => None,
            Some(terms) => Some(Complex::from_terms(
                module.clone(),
                Direction::Homological,
                terms,
                complete,
            )?),
        };
        Ok(GradedLieAlgebra {
            module,
            bracket: table,
            differential,
            complete,
        })
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn window(&self) -> usize {
        self.module.window()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn differential(&self) -> Option<&Complex> {
        self.differential.as_ref()
    }

    pub fn brackets(&self) -> &BTreeMap<(Gen, Gen), Element> {
        &self.bracket
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.window()).map(|n| self.module.dim(n)).collect()
    }

    pub fn bracket_gen(&self, a: Gen, b: Gen) -> Element {
        self.bracket.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                out.add_scaled(&self.bracket_gen(*a, *b), &(p * q));
            }
        }
        out
    }

    pub fn d(&self, x: &Element) -> Element {
        match &self.differential {
            Some(c) => c.d_elem(x),
            None => Element::new(),
        }
    }

    fn unit(&self, g: Gen) -> Element {
        Combination::term(g, Rational::one())
    }

    fn show(&self, x: &Element) -> String {
        show_element(&self.module, x)
    }

    /// Antisymmetry, Jacobi, and (with a differential) `d^2 = 0` and the
    /// derivation rule, on all basis tuples whose brackets lie in the window.
    pub fn verify(&self) -> std::result::Result<(), Violation> {
        let w = self.window();
        let gens: Vec<Gen> = self.module.gens().collect();
        for &x in &gens {
            for &y in &gens {
                if x.0 + y.0 > w {
                    continue;
                }
                let xy = self.bracket_gen(x, y);
                let yx = self.bracket_gen(y, x).scaled(&-sign(x.0 * y.0));
                if xy != yx {
                    return Err(Violation::new(
                        ViolationKind::Antisymmetry,
                        format!(
                            "[{}, {}] = {} but -(-1)^(|x||y|)[{}, {}] = {}",
                            self.module.name(x),
                            self.module.name(y),
                            self.show(&xy),
                            self.module.name(y),
                            self.module.name(x),
                            self.show(&yx)
                        ),
                    ));
                }
            }
        }
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    if x.0 + y.0 + z.0 > w {
                        continue;
                    }
                    let (ex, ey, ez) = (self.unit(x), self.unit(y), self.unit(z));
                    let mut j = self
                        .bracket(&ex, &self.bracket(&ey, &ez))
                        .scaled(&sign(x.0 * z.0));
                    j += &self
                        .bracket(&ey, &self.bracket(&ez, &ex))
                        .scaled(&sign(y.0 * x.0));
                    j += &self
                        .bracket(&ez, &self.bracket(&ex, &ey))
                        .scaled(&sign(z.0 * y.0));
                    if !j.is_zero() {
                        return Err(Violation::new(
                            ViolationKind::Jacobi,
                            format!(
                                "Jacobi sum for ({}, {}, {}) is {}",
                                self.module.name(x),
                                self.module.name(y),
                                self.module.name(z),
                                self.show(&j)
                            ),
                        ));
                    }
                }
            }
        }
        if let Some(c) = &self.differential {
            c.check_d_squared()?;
            for &x in &gens {
                for &y in &gens {
                    if x.0 + y.0 > w {
                        continue;
                    }
                    let (ex, ey) = (self.unit(x), self.unit(y));
                    let lhs = self.d(&self.bracket_gen(x, y));
                    let mut rhs = self.bracket(&self.d(&ex), &ey);
                    rhs.add_scaled(&self.bracket(&ex, &self.d(&ey)), &sign(x.0));
                    if lhs != rhs {
                        return Err(Violation::new(
                            ViolationKind::Derivation,
                            format!(
                                "d[{}, {}] = {} but [dx, y] + (-1)^|x| [x, dy] = {}",
                                self.module.name(x),
                                self.module.name(y),
                                self.show(&lhs),
                                self.show(&rhs)
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates an expression such as `2*[x,[x,y]] - 1/2*z`.
    pub fn parse_element(&self, expr: &str) -> Result<Element> {
        let mut p = Parser {
            src: expr.as_bytes(),
            pos: 0,
            lie: self,
        };
        let value = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!(
                "unexpected input at offset {} in `{expr}`",
                p.pos
            )));
        }
        Ok(value)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    lie: &'a GradedLieAlgebra,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn sum(&mut self) -> Result<Element> {
        let mut total = Element::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let term = self.term()?;
            let factor = if negative {
                -Rational::one()
            } else {
                Rational::one()
            };
            total.add_scaled(&term, &factor);
            if !matches!(self.peek(), Some(b'+') | Some(b'-')) {
                break;
            }
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<Element> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
        {
            self.pos += 1;
        }
        if self.pos > start {
            let coeff = parse_scalar(std::str::from_utf8(&self.src[start..self.pos]).unwrap())?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                return Ok(self.atom()?.scaled(&coeff));
            }
            self.pos = start;
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Element> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.sum()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected `,`"));
                }
                self.pos += 1;
                let b = self.sum()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected `]`"));
                }
                self.pos += 1;
                Ok(self.lie.bracket(&a, &b))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(a)
            }
            Some(_) => {
                let start = self.pos;
                while self.pos < self.src.len() && !b"[](),+-* \t\n".contains(&self.src[self.pos]) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.err("expected a generator"));
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "0" {
                    return Ok(Element::new());
                }
                let g = self
                    .lie
                    .module
                    .find(name)
                    .ok_or_else(|| Error::Parse(format!("unknown basis element `{name}`")))?;
                Ok(Combination::term(g, Rational::one()))
            }
            None => Err(self.err("unexpected end of expression")),
        }
    }
}
