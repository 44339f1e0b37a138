use koszul::dg::Direction;
use koszul::format::{
    detect, from_str, parse_words, to_string, AlgebraFile, CoalgebraFile, GroupFile, HopfFile,
    Kind, LieFile, SimplicialFile,
};
use koszul::hopf::{hopf_map_model, integrate, BarCocycle};
use koszul::lie::{free_lie, lie_quotient_by_expressions};
use koszul::linalg::{int, Ring};
use koszul::models::{cp_infinity_coalgebra, truncated_polynomial};
use koszul::simplicial::{
    chains_with_coproduct, collapse_quotient, CollapsePair, GroupTable, SimplicialComplex,
};

#[test]
fn algebras_round_trip() {
    for a in [
        hopf_map_model().algebra().clone(),
        truncated_polynomial("w", 2, 3, Direction::Homological, Ring::Z).unwrap(),
    ] {
        let file = AlgebraFile::from_algebra(&a);
        let text = to_string(&file);
        let back: AlgebraFile = from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.build(a.ring()).unwrap(), a);
        assert_eq!(
            detect(&serde_json::from_str(&text).unwrap()).unwrap(),
            Kind::Algebra
        );
    }
}

#[test]
fn coalgebras_round_trip() {
    let x = SimplicialComplex::boundary_of_simplex(3);
    let pair = CollapsePair::star(x.clone(), 0).unwrap();
    for c in [
        chains_with_coproduct(&x, 3, Ring::Z).unwrap(),
        collapse_quotient(&pair, 3, Ring::Q).unwrap(),
        cp_infinity_coalgebra(6, Ring::Q).unwrap(),
    ] {
        let file = CoalgebraFile::from_coalgebra(&c);
        let text = to_string(&file);
        let back: CoalgebraFile = from_str(&text).unwrap();
        assert_eq!(back.build(c.complex().ring()).unwrap(), c);
        assert_eq!(
            detect(&serde_json::from_str(&text).unwrap()).unwrap(),
            Kind::Coalgebra
        );
    }
}

#[test]
fn reduced_coproducts_are_completed() {
    let text = r#"{
        "basis": {"0": ["1"], "2": ["x"], "4": ["x2"]},
        "reduced_comul": [["x2", "x", "x", "1"]]
    }"#;
    let file: CoalgebraFile = from_str(text).unwrap();
    let c = file.build(Ring::Q).unwrap();
    let x2 = c.module().find("x2").unwrap();
    let x = c.module().find("x").unwrap();
    assert_eq!(c.coproduct_gen(x2).len(), 3);
    assert_eq!(c.coproduct_gen(x2).coeff(&(x, x)), int(1));
    assert_eq!(c.verify(), Ok(true));
}

#[test]
fn simplicial_and_group_files_round_trip() {
    let x =
        SimplicialComplex::from_labels(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]])
            .unwrap();
    let file = SimplicialFile::from_complex(&x);
    let back: SimplicialFile = from_str(&to_string(&file)).unwrap();
    assert_eq!(back.build().unwrap(), x);

    let g = GroupTable::cyclic(4);
    let file = GroupFile::from_group(&g);
    let back: GroupFile = from_str(&to_string(&file)).unwrap();
    assert_eq!(back.build().unwrap(), g);
    let parsed: GroupFile = from_str(r#"{"order": 2, "table": [[0, 1], [1, 0]]}"#).unwrap();
    assert_eq!(parsed.build().unwrap(), GroupTable::cyclic(2));
}

#[test]
fn lie_files_round_trip() {
    let l = free_lie(&[("x", 3), ("y", 3), ("z", 3)], 6).unwrap();
    let q = lie_quotient_by_expressions(&l, &["[x,y] - [y,z]"]).unwrap();
    let file = LieFile::from_lie(&q);
    let back: LieFile = from_str(&to_string(&file)).unwrap();
    assert_eq!(back.build(6).unwrap(), q);

    let presented: LieFile = from_str(
        r#"{"generators": [["x", 3], ["y", 3], ["z", 3]], "relations": ["[x,y] - [y,z]"]}"#,
    )
    .unwrap();
    assert_eq!(presented.build(6).unwrap().dims(), q.dims());
}

#[test]
fn hopf_files() {
    let w = hopf_map_model();
    let file = HopfFile {
        model: AlgebraFile::from_algebra(w.algebra()),
        dimension: 3,
        fundamental: [("b".to_string(), "1".to_string())].into_iter().collect(),
        cocycle: vec![("-1".into(), vec!["a".into(), "a".into()])],
        map: None,
        parametrized: None,
    };
    let back: HopfFile = from_str(&to_string(&file)).unwrap();
    assert_eq!(back, file);
    let s = back.sphere().unwrap();
    assert_eq!(s, w);
    let gamma = BarCocycle::new(
        s.algebra(),
        parse_words(s.algebra(), &back.cocycle).unwrap(),
    )
    .unwrap();
    assert_eq!(integrate(&s, &gamma).unwrap(), int(1));
}

#[test]
fn malformed_inputs_are_parse_errors() {
    let bad = [
        r#"{"basis": {"0": ["1"]}, "d": [["1", "1", "0.5"]]}"#,
        r#"{"basis": {"zero": ["1"]}}"#,
        r#"{"basis": {"0": ["1"]}, "mul": [["1", "q", "1", "1"]]}"#,
        r#"{"basis": {"0": ["1"]}, "colour": 3}"#,
    ];
    for text in bad {
        let r = from_str::<AlgebraFile>(text).and_then(|f| f.build(Ring::Q));
        assert!(matches!(r, Err(koszul::Error::Parse(_))), "{text}: {r:?}");
    }
}
