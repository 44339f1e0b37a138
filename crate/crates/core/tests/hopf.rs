use koszul::barcobar::HarrisonComplex;
use koszul::dg::Direction;
use koszul::dg::Element;
use koszul::hopf::{
    harrison_invariant, hopf_invariant, hopf_map_model, integrate, linking_model, named_element,
    parametrized_cocycle, parametrized_formula, weight_reduce, AlgebraMap, BarCocycle, BarElement,
    ParametrizedData, SphereModel,
};
use koszul::linalg::Ring;
use koszul::linalg::{frac, int, Rational};
use koszul::models::exterior;

fn q(n: i64) -> Rational {
    int(n)
}

fn word(w: &SphereModel, names: &[&str]) -> Vec<koszul::dg::Gen> {
    let m = w.algebra().complex().module();
    names.iter().map(|s| m.find(s).unwrap()).collect()
}

fn hopf_cocycle(w: &SphereModel) -> BarCocycle {
    BarCocycle::from_words(w.algebra(), &[(q(-1), &["a", "a"])]).unwrap()
}

#[test]
fn hopf_map_model_is_a_sphere() {
    let w = hopf_map_model();
    assert_eq!(w.dimension(), 3);
    let h = w.algebra().complex().full_homology().unwrap();
    assert_eq!(h.ranks(), vec![1, 0, 0, 1]);
    assert_eq!(
        w.fundamental_class(),
        &named_element(w.algebra(), &[(q(1), "b")]).unwrap()
    );
}

#[test]
fn hopf_map_has_invariant_one() {
    let w = hopf_map_model();
    let gamma = hopf_cocycle(&w);
    let r = weight_reduce(&w, &gamma).unwrap();
    assert_eq!(r.t, named_element(w.algebra(), &[(q(1), "b")]).unwrap());
    // d(beta) = gamma - [t], checked directly.
    let mut lhs = koszul::hopf::bar_differential(w.algebra(), &r.beta).unwrap();
    let mut t_word = BarElement::new();
    for (g, c) in r.t.iter() {
        t_word.add_term(vec![*g], c.clone());
    }
    lhs += &t_word;
    assert_eq!(&lhs, gamma.element());
    assert_eq!(integrate(&w, &gamma).unwrap(), q(1));
}

#[test]
fn bar_differential_by_hand() {
    // d[c|a] = [a|a] + [b].
    let w = hopf_map_model();
    let x: BarElement = [(word(&w, &["c", "a"]), q(1))].into_iter().collect();
    let d = koszul::hopf::bar_differential(w.algebra(), &x).unwrap();
    let expected: BarElement = [(word(&w, &["a", "a"]), q(1)), (word(&w, &["b"]), q(1))]
        .into_iter()
        .collect();
    assert_eq!(d, expected);
}

#[test]
fn weight_one_cocycles() {
    let w = hopf_map_model();
    let gamma = BarCocycle::from_words(w.algebra(), &[(q(5), &["b"])]).unwrap();
    let r = weight_reduce(&w, &gamma).unwrap();
    assert!(r.beta.is_zero());
    assert_eq!(integrate(&w, &gamma).unwrap(), q(5));
    // Not closed: [a] has d[a] = 0 but [c] does not.
    assert!(BarCocycle::from_words(w.algebra(), &[(q(1), &["c"])]).is_err());
}

#[test]
fn coboundaries_change_nothing() {
    let w = hopf_map_model();
    let gamma = BarCocycle::from_words(w.algebra(), &[(q(1), &["a"])]).unwrap();
    assert!(
        weight_reduce(&w, &gamma).is_err(),
        "degree 1 cocycles do not pair with S^3"
    );
    // 2[b] + d[c|a] = 3[b] + [a|a].
    let gamma = BarCocycle::from_words(w.algebra(), &[(q(2), &["b"])])
        .unwrap()
        .add_coboundary(&[(word(&w, &["c", "a"]), q(1))].into_iter().collect())
        .unwrap();
    assert_eq!(gamma.element().len(), 2);
    assert_eq!(integrate(&w, &gamma).unwrap(), q(2));
}

#[test]
fn exact_weight_one_cocycle_integrates_to_zero() {
    // S^3 times an acyclic piece: du = v.
    let a = koszul::models::free_commutative_algebra(
        &[("x", 3), ("u", 2), ("v", 3)],
        &[("u", &[(q(1), "v")])],
        7,
        Direction::Cohomological,
        Ring::Q,
    )
    .unwrap();
    let m = a.complex().module();
    let mut fundamental = vec![q(0); m.dim(3)];
    fundamental[m.find("x").unwrap().1] = q(1);
    let w = SphereModel::new(a, 3, fundamental).unwrap();
    let exact = BarCocycle::from_words(w.algebra(), &[(q(1), &["v"])]).unwrap();
    assert_eq!(integrate(&w, &exact).unwrap(), q(0));
    let fundamental =
        BarCocycle::from_words(w.algebra(), &[(q(1), &["x"]), (q(4), &["v"])]).unwrap();
    assert_eq!(integrate(&w, &fundamental).unwrap(), q(1));
}

#[test]
fn antisymmetric_cocycle_has_invariant_zero() {
    // x = a1, y = a2 closed of degree 2; x y = y x = 0 is exact.
    let l = vec![vec![q(1), q(2)], vec![q(2), q(3)]];
    let w = linking_model(&l).unwrap();
    let gamma = BarCocycle::from_words(
        w.algebra(),
        &[(q(1), &["a1", "a2"]), (q(-1), &["a2", "a1"])],
    )
    .unwrap();
    assert_eq!(integrate(&w, &gamma).unwrap(), q(0));
    // The symmetric combination sees the linking number.
    let gamma = BarCocycle::from_words(w.algebra(), &[(q(-1), &["a1", "a2"])]).unwrap();
    assert_eq!(integrate(&w, &gamma).unwrap(), q(2));
    let gamma = BarCocycle::from_words(w.algebra(), &[(q(-1), &["a2", "a2"])]).unwrap();
    assert_eq!(integrate(&w, &gamma).unwrap(), q(3));
}

#[test]
fn integration_ignores_basis_order() {
    let l = vec![vec![q(1), q(2)], vec![q(2), q(3)]];
    let swapped = vec![vec![q(3), q(2)], vec![q(2), q(1)]];
    let w = linking_model(&l).unwrap();
    let v = linking_model(&swapped).unwrap();
    let words = [
        (q(-1), ["a1", "a2"]),
        (q(4), ["a1", "a1"]),
        (q(-2), ["a2", "a2"]),
    ];
    fn swap(s: &'static str) -> &'static str {
        match s {
            "a1" => "a2",
            "a2" => "a1",
            other => other,
        }
    }
    let g: Vec<(Rational, &[&str])> = words.iter().map(|(c, w)| (c.clone(), &w[..])).collect();
    let swapped_words: Vec<(Rational, [&str; 2])> = words
        .iter()
        .map(|(c, w)| (c.clone(), [swap(w[0]), swap(w[1])]))
        .collect();
    let h: Vec<(Rational, &[&str])> = swapped_words
        .iter()
        .map(|(c, w)| (c.clone(), &w[..]))
        .collect();
    let a = integrate(&w, &BarCocycle::from_words(w.algebra(), &g).unwrap()).unwrap();
    let b = integrate(&v, &BarCocycle::from_words(v.algebra(), &h).unwrap()).unwrap();
    assert_eq!(a, b);
    // Each -[a_i|a_j] integrates to L_ij.
    assert_eq!(a, q(2 - 4 + 6));
}

#[test]
fn integration_ignores_coboundaries() {
    let w = hopf_map_model();
    let gamma = hopf_cocycle(&w);
    let betas: Vec<BarElement> = vec![
        [(word(&w, &["c", "a"]), q(3))].into_iter().collect(),
        [
            (word(&w, &["a", "c"]), q(-2)),
            (word(&w, &["c", "c", "a"]), q(1)),
        ]
        .into_iter()
        .collect(),
        [(word(&w, &["c", "a", "c"]), frac(1, 2))]
            .into_iter()
            .collect(),
    ];
    for beta in betas {
        let shifted = gamma.add_coboundary(&beta).unwrap();
        assert_eq!(integrate(&w, &shifted).unwrap(), q(1));
    }
}

#[test]
fn pulling_back_along_maps() {
    let w = hopf_map_model();
    let gamma = hopf_cocycle(&w);
    let id = AlgebraMap::identity(w.algebra());
    assert_eq!(hopf_invariant(&gamma, &id, &w).unwrap(), q(1));

    let zero = AlgebraMap::augmentation_map(w.algebra(), w.algebra()).unwrap();
    assert_eq!(hopf_invariant(&gamma, &zero, &w).unwrap(), q(0));

    // Scaling c and a by k scales b by k^2: the invariant is quadratic.
    for k in [2i64, -3] {
        let kk = q(k);
        let f = AlgebraMap::from_names(
            w.algebra(),
            w.algebra(),
            &[
                ("c", &[(kk.clone(), "c")]),
                ("a", &[(kk.clone(), "a")]),
                ("b", &[(&kk * &kk, "b")]),
            ],
        )
        .unwrap();
        assert_eq!(hopf_invariant(&gamma, &f, &w).unwrap(), &kk * &kk);
    }
}

#[test]
fn invalid_maps_are_rejected() {
    let w = hopf_map_model();
    // Not multiplicative: b must go to k^2 b.
    let bad = AlgebraMap::from_names(
        w.algebra(),
        w.algebra(),
        &[
            ("c", &[(q(2), "c")]),
            ("a", &[(q(2), "a")]),
            ("b", &[(q(2), "b")]),
        ],
    );
    assert!(bad.is_err());
    // Not a chain map.
    let bad = AlgebraMap::from_names(w.algebra(), w.algebra(), &[("c", &[(q(1), "c")])]);
    assert!(bad.is_err());
}

#[test]
fn hopf_invariant_is_functorial() {
    let l = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
    let x = linking_model(&l).unwrap();
    let w = hopf_map_model();
    let swap = AlgebraMap::from_names(
        x.algebra(),
        x.algebra(),
        &[
            ("c1", &[(q(1), "c2")]),
            ("c2", &[(q(1), "c1")]),
            ("a1", &[(q(1), "a2")]),
            ("a2", &[(q(1), "a1")]),
            ("b", &[(q(1), "b")]),
        ],
    )
    .unwrap();
    // Multiplicativity needs L_ij mu = lambda_i lambda_j.
    let to_w = AlgebraMap::from_names(
        x.algebra(),
        w.algebra(),
        &[
            ("c1", &[(q(2), "c")]),
            ("c2", &[(q(2), "c")]),
            ("a1", &[(q(2), "a")]),
            ("a2", &[(q(2), "a")]),
            ("b", &[(q(4), "b")]),
        ],
    )
    .unwrap();
    let gamma = BarCocycle::from_words(
        x.algebra(),
        &[
            (q(-1), &["a1", "a1"]),
            (q(-2), &["a2", "a2"]),
            (q(5), &["b"]),
            (q(-1), &["a1", "a2"]),
        ],
    )
    .unwrap();
    let composite = swap.then(&to_w).unwrap();
    let direct = hopf_invariant(&gamma, &composite, &w).unwrap();
    let twice = hopf_invariant(&gamma.pull_back(&swap).unwrap(), &to_w, &w).unwrap();
    assert_eq!(direct, twice);
    // The pullback is -16[a|a] + 20[b].
    assert_eq!(direct, q(16 + 20));
}

#[test]
fn weight_one_pullback_evaluates_directly() {
    let w = hopf_map_model();
    let gamma = BarCocycle::from_words(w.algebra(), &[(q(7), &["b"])]).unwrap();
    let f = AlgebraMap::from_names(
        w.algebra(),
        w.algebra(),
        &[
            ("c", &[(q(2), "c")]),
            ("a", &[(q(2), "a")]),
            ("b", &[(q(4), "b")]),
        ],
    )
    .unwrap();
    assert_eq!(hopf_invariant(&gamma, &f, &w).unwrap(), q(28));
}

fn hopf_data(w: &SphereModel) -> ParametrizedData {
    ParametrizedData {
        xs: vec![named_element(w.algebra(), &[(q(-1), "a")]).unwrap()],
        ys: vec![named_element(w.algebra(), &[(q(1), "a")]).unwrap()],
        theta: Element::new(),
    }
}

#[test]
fn parametrized_family_is_constant() {
    let w = hopf_map_model();
    let data = hopf_data(&w);
    for t in [
        q(0),
        frac(1, 4),
        frac(1, 2),
        frac(3, 4),
        q(1),
        q(7),
        frac(-5, 3),
    ] {
        assert_eq!(parametrized_formula(&w, &data, &[t]).unwrap(), q(1));
    }
    let gamma = parametrized_cocycle(&w, &data).unwrap();
    assert_eq!(integrate(&w, &gamma).unwrap(), q(1));
}

#[test]
fn parametrized_formula_with_several_terms() {
    let l = vec![vec![q(1), q(2)], vec![q(2), q(3)]];
    let w = linking_model(&l).unwrap();
    let e = |terms: &[(i64, &str)]| {
        let t: Vec<(Rational, &str)> = terms.iter().map(|(c, s)| (q(*c), *s)).collect();
        named_element(w.algebra(), &t).unwrap()
    };
    let data = ParametrizedData {
        xs: vec![e(&[(1, "a1")]), e(&[(2, "a2"), (-1, "a1")])],
        ys: vec![e(&[(1, "a2")]), e(&[(1, "a2")])],
        theta: e(&[(4, "b")]),
    };
    let gamma = parametrized_cocycle(&w, &data).unwrap();
    let expected = integrate(&w, &gamma).unwrap();
    for t1 in [q(0), frac(1, 2), q(1)] {
        for t2 in [q(0), frac(1, 3), q(1)] {
            assert_eq!(
                parametrized_formula(&w, &data, &[t1.clone(), t2]).unwrap(),
                expected
            );
        }
    }
    let zero = ParametrizedData {
        xs: vec![Element::new()],
        ys: vec![Element::new()],
        theta: Element::new(),
    };
    assert_eq!(
        parametrized_formula(&w, &zero, &[frac(1, 2)]).unwrap(),
        q(0)
    );
}

#[test]
fn parametrized_formula_checks_theta() {
    let w = hopf_map_model();
    let mut data = hopf_data(&w);
    data.theta = named_element(w.algebra(), &[(q(1), "c")]).unwrap();
    assert!(parametrized_formula(&w, &data, &[q(0)]).is_err());
}

#[test]
fn harrison_classes_have_well_defined_invariants() {
    let w = hopf_map_model();
    let h = HarrisonComplex::new(w.algebra(), 3, Some(4)).unwrap();
    let ranks = h.complex().homology(1..=2).unwrap().ranks();
    assert_eq!(ranks, vec![0, 1]);
    // Every Harrison cocycle in degree 2 integrates consistently.
    let z = h.complex().d(2).kernel_basis();
    let values: Vec<Rational> = z
        .iter()
        .map(|v| harrison_invariant(&w, &h, &koszul::linalg::dense_to_sparse(v)).unwrap())
        .collect();
    let b = h.complex().d(1);
    // Coboundaries integrate to zero.
    for j in 0..b.cols() {
        assert_eq!(harrison_invariant(&w, &h, b.column(j)).unwrap(), q(0));
    }
    assert!(values.iter().any(|v| *v != q(0)));
    // The image of [a|a] generates and pairs to -1.
    let bar = h.bar();
    let aa = bar.word_gen(&["a", "a"]).unwrap();
    let projected = h.project(2, &[(aa.1, q(1))].into_iter().collect());
    assert_eq!(harrison_invariant(&w, &h, &projected).unwrap(), q(-1));
}

#[test]
fn sphere_models_are_validated() {
    let p = koszul::models::free_commutative_algebra(
        &[("x", 2)],
        &[],
        2,
        Direction::Cohomological,
        Ring::Q,
    )
    .unwrap();
    assert!(matches!(
        SphereModel::new(p, 2, vec![q(1)]),
        Err(koszul::Error::WindowTooSmall(_))
    ));
    let x = exterior("x", 3, Direction::Cohomological, Ring::Q).unwrap();
    assert!(SphereModel::new(x, 3, vec![q(1)]).is_ok());
    let x = koszul::models::free_commutative_algebra(
        &[("x", 3)],
        &[],
        5,
        Direction::Cohomological,
        Ring::Q,
    )
    .unwrap();
    let s = SphereModel::new(x.clone(), 3, vec![q(2)]).unwrap();
    assert_eq!(
        s.fundamental_class(),
        &named_element(s.algebra(), &[(frac(1, 2), "x")]).unwrap()
    );
    assert!(SphereModel::new(x.clone(), 2, vec![]).is_err());
    assert!(SphereModel::new(x, 3, vec![q(0)]).is_err());
    assert!(linking_model(&[vec![q(1), q(2)], vec![q(0), q(1)]]).is_err());
}
