use std::collections::HashMap;

use crate::combination::Combination;
use crate::dg::{Gen, GradedModule};
use crate::error::{Error, Result};
use crate::linalg::sign;

/// A bar or cobar word `[x1|...|xk]`: letters are generators of the
/// underlying (co)algebra, and `degree` is the total degree after shifting
/// every letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    pub letters: Vec<Gen>,
    pub degree: usize,
}

impl TensorWord {
    pub fn empty() -> TensorWord {
        TensorWord {
            letters: Vec::new(),
            degree: 0,
        }
    }

    pub fn weight(&self) -> usize {
        self.letters.len()
    }

    /// Internal (unshifted) degrees of the letters.
    pub fn internal_degrees(&self) -> Vec<usize> {
        self.letters.iter().map(|g| g.0).collect()
    }

    pub fn render(&self, m: &GradedModule, open: char, close: char) -> String {
        let names: Vec<&str> = self.letters.iter().map(|&g| m.name(g)).collect();
        format!("{open}{}{close}", names.join("|"))
    }
}

/// The words of a construction, graded by total degree and ordered by
/// weight and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBasis {
    words: Vec<Vec<TensorWord>>,
    index: HashMap<Vec<Gen>, Gen>,
    shift: HashMap<Gen, usize>,
}

impl WordBasis {
    /// All words in `letters` of total shifted degree at most `top` and weight
    /// at most `max_weight`.
    pub fn enumerate(
        letters: &[(Gen, usize)],
        top: usize,
        max_weight: Option<usize>,
    ) -> Result<WordBasis> {
        if max_weight.is_none() && letters.iter().any(|&(_, s)| s == 0) {
            return Err(Error::Precondition(
                "letters of shifted degree zero give infinitely many words; a weight cap is required".into(),
            ));
        }
        let mut words: Vec<Vec<TensorWord>> = vec![Vec::new(); top + 1];
        let mut stack = vec![TensorWord::empty()];
        while let Some(w) = stack.pop() {
            if max_weight.is_none_or(|cap| w.weight() < cap) {
                for &(g, s) in letters {
                    if w.degree + s <= top {
                        let mut next = w.clone();
                        next.letters.push(g);
                        next.degree += s;
                        stack.push(next);
                    }
                }
            }
            words[w.degree].push(w);
        }
        for ws in &mut words {
            ws.sort_by(|a, b| {
                a.weight()
                    .cmp(&b.weight())
                    .then_with(|| a.letters.cmp(&b.letters))
            });
        }
        let mut index = HashMap::new();
        for (d, ws) in words.iter().enumerate() {
            for (i, w) in ws.iter().enumerate() {
                index.insert(w.letters.clone(), (d, i));
            }
        }
        let shift = letters.iter().copied().collect();
        Ok(WordBasis {
            words,
            index,
            shift,
        })
    }

    pub fn top(&self) -> usize {
        self.words.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.words.get(n).map_or(0, |w| w.len())
    }

    pub fn degree(&self, n: usize) -> &[TensorWord] {
        &self.words[n]
    }

    pub fn word(&self, g: Gen) -> &TensorWord {
        &self.words[g.0][g.1]
    }

    pub fn find(&self, letters: &[Gen]) -> Option<Gen> {
        self.index.get(letters).copied()
    }

    /// Shifted degree of a letter.
    pub fn shift(&self, letter: Gen) -> usize {
        self.shift[&letter]
    }

    pub fn letters(&self) -> impl Iterator<Item = (Gen, usize)> + '_ {
        self.shift.iter().map(|(g, s)| (*g, *s))
    }

    pub fn names(&self, m: &GradedModule, open: char, close: char) -> Vec<Vec<String>> {
        self.words
            .iter()
            .map(|ws| ws.iter().map(|w| w.render(m, open, close)).collect())
            .collect()
    }

    /// Sum of shifted degrees of `letters`.
    pub fn shifted_degree(&self, letters: &[Gen]) -> usize {
        letters.iter().map(|g| self.shift[g]).sum()
    }
}

/// Signed shuffle product of two words. Moving a letter `b` past a letter
/// `a` contributes `(-1)^{s(a) s(b)}` where `s` is the shifted degree.
pub fn shuffle_product(
    u: &[Gen],
    v: &[Gen],
    shift: &dyn Fn(Gen) -> usize,
) -> Combination<Vec<Gen>> {
    let mut out = Combination::new();
    let mut prefix = Vec::with_capacity(u.len() + v.len());
    shuffle_into(u, v, shift, &mut prefix, 0, &mut out);
    out
}

fn shuffle_into(
    u: &[Gen],
    v: &[Gen],
    shift: &dyn Fn(Gen) -> usize,
    prefix: &mut Vec<Gen>,
    parity: usize,
    out: &mut Combination<Vec<Gen>>,
) {
    if u.is_empty() || v.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        out.add_term(w, sign(parity));
        return;
    }
    prefix.push(u[0]);
    shuffle_into(&u[1..], v, shift, prefix, parity, out);
    prefix.pop();
    let rest: usize = u.iter().map(|&a| shift(a)).sum();
    prefix.push(v[0]);
    shuffle_into(u, &v[1..], shift, prefix, parity + rest * shift(v[0]), out);
    prefix.pop();
}
