use koszul::dg::Gen;
use koszul::lie::{
    chevalley_eilenberg, free_dg_lie, free_lie, free_lie_with_tensor, lie_quotient_by_expressions,
    primitives, primitives_of_homology, tensor_hopf_algebra,
};

/// Free Lie dimensions from the Poincare-Birkhoff-Witt identity
/// `sum_n dim T_n t^n = prod_even (1 - t^d)^{-l_d} prod_odd (1 + t^d)^{l_d}`,
/// solved degree by degree.
fn pbw_dims(degrees: &[usize], top: usize) -> Vec<i128> {
    let mut tensor = vec![0i128; top + 1];
    tensor[0] = 1;
    for n in 1..=top {
        tensor[n] = degrees
            .iter()
            .filter(|&&d| d <= n)
            .map(|&d| tensor[n - d])
            .sum();
    }
    let mut lie = vec![0i128; top + 1];
    for n in 1..=top {
        // Series of the product using l_1..l_{n-1}, truncated at degree n.
        let mut series = vec![0i128; top + 1];
        series[0] = 1;
        for d in 1..n {
            for _ in 0..lie[d] {
                let mut next = series.clone();
                if d % 2 == 0 {
                    // Multiply by 1 / (1 - t^d).
                    for k in d..=top {
                        next[k] += next[k - d];
                    }
                } else {
                    for k in d..=top {
                        next[k] += series[k - d];
                    }
                }
                series = next;
            }
        }
        lie[n] = tensor[n] - series[n];
    }
    lie
}

/// Necklace count for `k` generators all of one even degree.
fn witt(k: i128, n: u32) -> i128 {
    fn mobius(mut n: u32) -> i128 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let total: i128 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * k.pow(n / d))
        .sum();
    total / n as i128
}

fn named(names: &[&'static str], degrees: &[usize]) -> Vec<(&'static str, usize)> {
    names.iter().copied().zip(degrees.iter().copied()).collect()
}

#[test]
fn pbw_oracle_agrees_with_necklaces() {
    for k in 1..=3 {
        let dims = pbw_dims(&vec![2; k], 12);
        for n in 1..=6u32 {
            assert_eq!(dims[2 * n as usize], witt(k as i128, n));
        }
    }
}

#[test]
fn free_lie_dimensions() {
    let even = free_lie(&[("x", 2), ("y", 2)], 6).unwrap();
    assert_eq!(even.dims(), vec![0, 0, 2, 0, 1, 0, 2]);
    // Odd generators: [x,x] and [y,y] survive.
    let odd = free_lie(&[("x", 1), ("y", 1)], 3).unwrap();
    assert_eq!(odd.dims(), vec![0, 2, 3, 2]);
    let single = free_lie(&[("x", 1)], 4).unwrap();
    assert_eq!(single.dims(), vec![0, 1, 1, 0, 0]);
}

#[test]
fn free_lie_matches_pbw_oracle() {
    let cases: &[&[usize]] = &[
        &[1],
        &[2],
        &[1, 1],
        &[1, 2],
        &[2, 3],
        &[1, 1, 1],
        &[1, 2, 3],
        &[2, 2, 2],
    ];
    let names = ["x", "y", "z"];
    for degrees in cases {
        let gens = named(&names[..degrees.len()], degrees);
        let l = free_lie(&gens, 6).unwrap();
        l.verify().unwrap();
        let expected: Vec<usize> = pbw_dims(degrees, 6)
            .into_iter()
            .map(|d| d as usize)
            .collect();
        assert_eq!(l.dims(), expected, "generators {gens:?}");
    }
}

#[test]
fn free_lie_basis_brackets() {
    let f = free_lie_with_tensor(&[("x", 2), ("y", 2)], 4).unwrap();
    let m = f.lie.module();
    assert_eq!(m.names(2), ["x", "y"]);
    assert_eq!(m.names(4), ["[x,y]"]);
    let x = f.lie.parse_element("x").unwrap();
    let y = f.lie.parse_element("y").unwrap();
    assert_eq!(f.lie.bracket(&x, &y), f.lie.parse_element("[x,y]").unwrap());
    assert_eq!(
        f.lie.bracket(&y, &x),
        f.lie.parse_element("-[x,y]").unwrap()
    );
    assert!(f.lie.bracket(&x, &x).is_zero());
}

#[test]
fn primitives_of_tensor_algebras_are_free_lie() {
    let one_even = tensor_hopf_algebra(&[("x", 2)], &[], 6).unwrap();
    let p = primitives(&one_even).unwrap();
    let ranks: Vec<usize> = (0..=6).map(|n| p.complex.dim(n)).collect();
    assert_eq!(ranks, vec![0, 0, 1, 0, 0, 0, 0]);

    let two_odd = tensor_hopf_algebra(&[("x", 1), ("y", 1)], &[], 3).unwrap();
    let p = primitives(&two_odd).unwrap();
    let ranks: Vec<usize> = (1..=3).map(|n| p.complex.dim(n)).collect();
    assert_eq!(ranks, vec![2, 3, 2]);
}

#[test]
fn primitives_are_a_subcomplex() {
    let h = tensor_hopf_algebra(&[("x", 1), ("y", 3)], &[("y", "[x,x]")], 5).unwrap();
    let p = primitives(&h).unwrap();
    p.complex.check_d_squared().unwrap();
    let l = free_dg_lie(&[("x", 1), ("y", 3)], &[("y", "[x,x]")], 5).unwrap();
    assert_eq!(
        (0..=5).map(|n| p.complex.dim(n)).collect::<Vec<_>>(),
        l.dims()
    );
}

#[test]
fn primitives_of_homology_match_lie_homology() {
    // Homology of U(L) is U(H(L)), whose primitives are H(L).
    let cases: &[(&[(&str, usize)], &[(&str, &str)])] = &[
        (&[("x", 1), ("y", 3)], &[("y", "[x,x]")]),
        (&[("x", 1), ("y", 2)], &[("y", "x")]),
        (&[("x", 2)], &[]),
        (&[("x", 1), ("y", 2), ("z", 4)], &[("z", "[x,y]")]),
    ];
    for (gens, d) in cases {
        let h = tensor_hopf_algebra(gens, d, 6).unwrap();
        let l = free_dg_lie(gens, d, 6).unwrap();
        let lie_homology = match l.differential() {
            Some(c) => c.homology(1..=5).unwrap().ranks(),
            None => l.dims()[1..=5].to_vec(),
        };
        let prims: Vec<usize> = (1..=5)
            .map(|n| primitives_of_homology(&h, n).unwrap())
            .collect();
        assert_eq!(prims, lie_homology, "generators {gens:?}");
    }
}

#[test]
fn acyclic_tensor_algebra_has_no_primitive_homology() {
    let h = tensor_hopf_algebra(&[("x", 1), ("y", 2)], &[("y", "x")], 6).unwrap();
    for n in 1..=5 {
        assert_eq!(primitives_of_homology(&h, n).unwrap(), 0);
    }
    assert!(primitives_of_homology(&h, 6).is_err());
}

#[test]
fn quotients() {
    let l = free_lie(&[("x", 2), ("y", 2)], 6).unwrap();
    let abelian = lie_quotient_by_expressions(&l, &["[x,y]"]).unwrap();
    assert_eq!(abelian.dims(), vec![0, 0, 2, 0, 0, 0, 0]);
    abelian.verify().unwrap();

    let l = free_lie(&[("x", 3), ("y", 3), ("z", 3)], 6).unwrap();
    let q = lie_quotient_by_expressions(&l, &["[x,y] - [y,z]"]).unwrap();
    q.verify().unwrap();
    assert_eq!(q.dims(), vec![0, 0, 0, 3, 0, 0, 5]);
}

#[test]
fn ce_of_free_lie_on_one_generator_is_a_sphere() {
    for n in 3..=5 {
        let l = free_lie(&[("x", n - 1)], 8).unwrap();
        let ce = chevalley_eilenberg(&l, 8).unwrap();
        let ranks = ce.homology(0..=7).unwrap().ranks();
        let expected: Vec<usize> = (0..=7).map(|k| usize::from(k == 0 || k == n)).collect();
        assert_eq!(ranks, expected, "S^{n}");
    }
}

#[test]
fn ce_of_a_quillen_model_of_cp2() {
    // Cells in dimensions 2 and 4 attached along twice the Hopf class.
    let l = free_dg_lie(&[("x", 1), ("y", 3)], &[("y", "[x,x]")], 8).unwrap();
    l.verify().unwrap();
    let ce = chevalley_eilenberg(&l, 8).unwrap();
    assert_eq!(
        ce.homology(0..=7).unwrap().ranks(),
        vec![1, 0, 1, 0, 1, 0, 0, 0]
    );
}

#[test]
fn ce_differential_squares_to_zero_on_mixed_parity() {
    for gens in [
        &[("x", 1), ("y", 2)][..],
        &[("x", 1), ("y", 1), ("z", 2)],
        &[("x", 2), ("y", 3)],
    ] {
        let l = free_lie(gens, 7).unwrap();
        chevalley_eilenberg(&l, 8).unwrap();
    }
}

/// Rank of the bracket `Sym^2(V) -> L_6` for three odd generators modulo
/// `[x,y] = [y,z]`, computed from commutators `uv + vu` in the tensor
/// algebra.
fn bracket_rank_oracle() -> usize {
    let idx = |u: usize, v: usize| 3 * u + v;
    let mut rows: Vec<[i64; 9]> = Vec::new();
    for u in 0..3 {
        for v in u..3 {
            let mut r = [0; 9];
            r[idx(u, v)] += 1;
            r[idx(v, u)] += 1;
            rows.push(r);
        }
    }
    // Work modulo the relation vector [x,y] - [y,z].
    let mut rel = [0i64; 9];
    rel[idx(0, 1)] += 1;
    rel[idx(1, 0)] += 1;
    rel[idx(1, 2)] -= 1;
    rel[idx(2, 1)] -= 1;
    rows.push(rel);
    let rank_with = rank_i64(rows.clone());
    rank_with - 1
}

fn rank_i64(mut rows: Vec<[i64; 9]>) -> usize {
    let mut rank = 0;
    for col in 0..9 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let (a, b) = (rows[rank][col], rows[r][col]);
                for c in 0..9 {
                    rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn ce_of_three_generators_with_one_relation() {
    let l = free_lie(&[("x", 3), ("y", 3), ("z", 3)], 8).unwrap();
    let q = lie_quotient_by_expressions(&l, &["[x,y] - [y,z]"]).unwrap();
    let ce = chevalley_eilenberg(&q, 9).unwrap();
    let ranks = ce.homology(0..=8).unwrap().ranks();

    // Cochains: three even generators in degree 4, one odd generator in
    // degree 7 per element of L_6, and Sym^2 of the degree-4 ones in degree 8.
    let r = bracket_rank_oracle();
    assert_eq!(r, 5);
    let l6 = 5;
    let expected = vec![1, 0, 0, 0, 3, 0, 0, l6 - r, 6 - r];
    assert_eq!(ranks, expected);
    assert_eq!(ranks, vec![1, 0, 0, 0, 3, 0, 0, 0, 1]);
    assert_eq!(ce.d(7).rank(), 5);
}

#[test]
fn ce_needs_enough_lie_algebra() {
    let l = free_lie(&[("x", 1)], 3).unwrap();
    assert!(matches!(
        chevalley_eilenberg(&l, 8),
        Err(koszul::Error::WindowTooSmall(_))
    ));
}

#[test]
fn hopf_compatibility_is_checked() {
    let h = tensor_hopf_algebra(&[("x", 2)], &[], 6).unwrap();
    let mut table: Vec<(Gen, koszul::dg::Tensor)> = Vec::new();
    for g in h.complex().module().gens() {
        let mut t = h.coalgebra().coproduct_gen(g);
        if g.0 == 4 {
            // Declaring x^2 primitive keeps coassociativity but breaks
            // multiplicativity, since x is even.
            t = koszul::dg::Tensor::new();
            t.add_term(((0, 0), g), koszul::linalg::int(1));
            t.add_term((g, (0, 0)), koszul::linalg::int(1));
        }
        table.push((g, t));
    }
    let c = koszul::dg::DgCoalgebra::new(
        h.complex().clone(),
        table,
        h.coalgebra().counit().to_vec(),
        h.coalgebra().coaugmentation(),
    )
    .unwrap();
    let err = koszul::lie::HopfAlgebraData::new(h.algebra().clone(), c).unwrap_err();
    assert!(matches!(
        err,
        koszul::Error::Verification(v) if v.kind == koszul::dg::ViolationKind::HopfCompatibility
    ));
}
