use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn koszul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszul"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn group_homology_of_cyclic_three() {
    let o = koszul(&[
        "group-homology",
        "--input",
        &fixture("z3.json"),
        "--window",
        "6",
        "--ring",
        "Z",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("H_")).collect();
    assert_eq!(
        lines,
        [
            "H_0 = Z",
            "H_1 = Z/3",
            "H_2 = 0",
            "H_3 = Z/3",
            "H_4 = 0",
            "H_5 = Z/3"
        ]
    );
    assert!(text.contains("conventions = koszul-signs/1"));
    assert!(text.contains("window = 6"));
    assert!(text.contains("ring = Z"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("input-sha256 = ") && l.len() == "input-sha256 = ".len() + 64));
}

#[test]
fn leibniz_violation_exits_two_naming_the_pair() {
    let o = koszul(&["verify", "--input", &fixture("leibniz_violation.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("Leibniz"), "{err}");
    assert!(err.contains("(c, c)"), "{err}");
}

#[test]
fn hopf_map_invariant() {
    let o = koszul(&[
        "hopf",
        "--input",
        &fixture("hopf_map.json"),
        "--t-values",
        "0,1/4,1/2,3/4,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("invariant = 1\n"));
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("formula(") && l.ends_with(") = 1"))
            .count(),
        5
    );
}

#[test]
fn collapsed_sphere_cobar() {
    let o = koszul(&[
        "cobar",
        "--input",
        &fixture("tetrahedron_boundary.json"),
        "--sub",
        &fixture("star_of_vertex.json"),
        "--window",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ranks: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("H_"))
        .map(String::from)
        .collect();
    assert_eq!(ranks.len(), 6);
    assert!(ranks.iter().all(|l| l.ends_with("= Q")));
}

#[test]
fn preconditions_exit_three() {
    let o = koszul(&[
        "cobar",
        "--input",
        &fixture("unreduced_coalgebra.json"),
        "--window",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = koszul(&[
        "ce",
        "--input",
        &fixture("lie_relation.json"),
        "--ring",
        "Z",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(koszul(&["bogus", "--input", "x"]).status.code(), Some(1));
    assert_eq!(
        koszul(&["homology", "--input", "/nonexistent.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        koszul(&["homology", "--input", &fixture("z3.json"), "--window", "0"])
            .status
            .code(),
        Some(1)
    );
    let dir = std::env::temp_dir().join(format!("koszul-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"basis": {"0": ["1"]}, "d": [["1", "1", "0.5"]]}"#).unwrap();
    assert_eq!(
        koszul(&["verify", "--input", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(koszul(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let dir = std::env::temp_dir().join(format!("koszul-cli-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let out = dir.join(format!("report{i}.txt"));
        let o = koszul(&[
            "ce",
            "--input",
            &fixture("lie_relation.json"),
            "--window",
            "9",
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        reports.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let text = String::from_utf8(reports.pop().unwrap()).unwrap();
    assert!(text.contains("H^4 = Q^3\n"));
    assert!(text.contains("H^8 = Q\n"));
}

#[test]
fn harrison_of_spheres() {
    let o = koszul(&[
        "harrison",
        "--input",
        &fixture("two_sphere_cochains.json"),
        "--window",
        "4",
    ]);
    let text = stdout(&o);
    assert!(text.contains("H^1 = Q\nH^2 = Q\nH^3 = 0\n"), "{text}");
    let o = koszul(&[
        "harrison",
        "--input",
        &fixture("three_sphere_cochains.json"),
        "--window",
        "5",
    ]);
    let text = stdout(&o);
    assert!(
        text.contains("H^1 = 0\nH^2 = Q\nH^3 = 0\nH^4 = 0\n"),
        "{text}"
    );
}

#[test]
fn remaining_commands() {
    let o = koszul(&[
        "free-lie",
        "--input",
        &fixture("lie_relation.json"),
        "--window",
        "6",
    ]);
    assert!(stdout(&o).contains("L_6: dim 5"));
    let o = koszul(&[
        "bar",
        "--input",
        &fixture("three_sphere_cochains.json"),
        "--window",
        "6",
    ]);
    assert!(stdout(&o).contains("H^4 = Q\nH^5 = 0\n"));
    let o = koszul(&[
        "homology",
        "--input",
        &fixture("tetrahedron_boundary.json"),
        "--window",
        "3",
        "--ring",
        "Z",
    ]);
    assert!(
        stdout(&o).contains("H_0 = Z\nH_1 = 0\nH_2 = Z\n"),
        "{}",
        stdout(&o)
    );
    let o = koszul(&["verify", "--input", &fixture("hopf_map.json")]);
    assert!(stdout(&o).contains("status = ok"));
    let o = koszul(&["verify", "--input", &fixture("unreduced_coalgebra.json")]);
    assert!(stdout(&o).contains("1-reduced = false"), "{}", stdout(&o));
}
