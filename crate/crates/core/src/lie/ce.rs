use super::algebra::GradedLieAlgebra;
use crate::dg::{Complex, Direction, Element};
use crate::error::{Error, Result};
use crate::linalg::{frac, sign, Ring};
use crate::models::FreeCommutative;

/// The Chevalley-Eilenberg cochain complex of `l` through degree `N`.
///
/// The carrier is the free graded-commutative algebra on generators `e*`
/// of degree `|e| + 1`, one for each basis element `e`. On generators
///
/// `d(e_k*) = -1/2 sum_{i,j} (-1)^{|e_i|} c^k_{ij} e_i* e_j* - sum_i d^k_i e_i*`
///
/// where `[e_i, e_j] = sum_k c^k_{ij} e_k` and `d e_i = sum_k d^k_i e_k`,
/// extended as a derivation.
pub fn chevalley_eilenberg(l: &GradedLieAlgebra, n: usize) -> Result<Complex> {
    let needed = n.saturating_sub(1);
    if !l.is_complete() && l.window() < needed {
        return Err(Error::WindowTooSmall(format!(
            "the Chevalley-Eilenberg complex through degree {n} needs the Lie algebra through degree {needed}, but its window ends at {}",
            l.window()
        )));
    }
    let m = l.module();
    let basis: Vec<crate::dg::Gen> = m.gens().filter(|g| g.0 < n).collect();
    let gens: Vec<(String, usize)> = basis
        .iter()
        .map(|&g| (format!("{}*", m.name(g)), g.0 + 1))
        .collect();
    let position = |g: crate::dg::Gen| basis.iter().position(|&h| h == g);
    let fc = FreeCommutative::new(&gens, n)?;
    let half = frac(-1, 2);
    let mut on_gens = vec![Element::new(); basis.len()];
    for (i, &a) in basis.iter().enumerate() {
        let xi = fc.generator(i).expect("generator in window");
        for (j, &b) in basis.iter().enumerate() {
            let xj = fc.generator(j).expect("generator in window");
            if a.0 + b.0 + 2 > n {
                continue;
            }
            let product = fc.mul_gens(xi, xj);
            for (e, c) in l.bracket_gen(a, b).iter() {
                let Some(k) = position(*e) else { continue };
                on_gens[k].add_scaled(&product, &(c * &half * sign(a.0)));
            }
        }
        let e = crate::combination::Combination::term(a, crate::linalg::int(1));
        for (t, c) in l.d(&e).iter() {
            let Some(k) = position(*t) else { continue };
            if a.0 < n {
                on_gens[k].add_term(xi, -c.clone());
            }
        }
    }
    let d = fc.derivation(&on_gens);
    let module = fc.module(Ring::Q)?;
    let terms = d
        .iter()
        .flat_map(|(g, v)| v.iter().map(move |(h, q)| (*g, *h, q.clone())))
        .collect::<Vec<_>>();
    let complete = l.is_complete() && l.window() < n && fc.is_finite_in_window();
    let c = Complex::from_terms(module, Direction::Cohomological, terms, complete)?;
    c.check_d_squared()?;
    Ok(c)
}
