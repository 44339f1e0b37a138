//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line and
//! the process exits nonzero if any fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use koszul::barcobar::{bar, cobar, counit_and_check, group_bar, harrison_complex};
use koszul::dg::{DgAlgebra, Direction};
use koszul::hopf::{
    hopf_map_model, integrate, linking_model, named_element, parametrized_cocycle,
    parametrized_formula, BarCocycle, BarElement, ParametrizedData,
};
use koszul::lie::{
    chevalley_eilenberg, free_lie, lie_quotient_by_expressions, primitives, tensor_hopf_algebra,
};
use koszul::linalg::{frac, int, Rational, Ring};
use koszul::models::{
    cp_infinity_coalgebra, exterior, free_commutative_algebra, truncated_polynomial,
};
use koszul::simplicial::{
    chains_with_coproduct, classifying_complex, collapse_quotient, CollapsePair, GroupTable,
    SimplicialComplex,
};

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration) -> Check {
    let spent = start.elapsed();
    ensure(spent < limit, || {
        format!("took {spent:.2?}, limit {limit:?}")
    })
}

fn loop_spaces_of_spheres() -> Check {
    let start = Instant::now();
    for n in 2..=4 {
        let pair = ok(CollapsePair::star(
            SimplicialComplex::boundary_of_simplex(n + 1),
            0,
        ))?;
        let c = ok(collapse_quotient(&pair, 10, Ring::Q))?;
        let om = ok(cobar(&c, 9))?;
        let ranks = ok(om.complex().homology(0..=8))?.ranks();
        let expected: Vec<usize> = (0..=8).map(|k| usize::from(k % (n - 1) == 0)).collect();
        ensure(ranks == expected, || {
            format!("S^{n}: {ranks:?}, expected {expected:?}")
        })?;
    }
    within(start, Duration::from_secs(10))
}

fn cobar_of_cp_infinity() -> Check {
    let start = Instant::now();
    let c = ok(cp_infinity_coalgebra(9, Ring::Q))?;
    let om = ok(cobar(&c, 8))?;
    let ranks = ok(om.complex().homology(0..=6))?.ranks();
    ensure(ranks == vec![1, 1, 0, 0, 0, 0, 0], || format!("{ranks:?}"))?;
    within(start, Duration::from_secs(10))
}

/// Expected integral homology of a cyclic group: Z, then Z/n in odd degrees.
fn cyclic_homology(n: i64, degree: usize) -> (usize, Vec<BigInt>) {
    match degree {
        0 => (1, vec![]),
        d if d % 2 == 1 => (0, vec![BigInt::from(n)]),
        _ => (0, vec![]),
    }
}

fn group_homology() -> Check {
    let start = Instant::now();
    for n in 2..=4 {
        let c = classifying_complex(&GroupTable::cyclic(n), 7, true, Ring::Z);
        for k in 0..=6 {
            let h = ok(c.homology_in(k))?;
            let (rank, torsion) = cyclic_homology(n as i64, k);
            ensure(h.rank == rank && h.torsion == torsion, || {
                format!("Z/{n} in degree {k}: {}", h.describe(Ring::Z))
            })?;
        }
    }
    let v4 = GroupTable::cyclic(2).product(&GroupTable::cyclic(2));
    let z4 = classifying_complex(&GroupTable::cyclic(4), 3, true, Ring::Z);
    let k4 = classifying_complex(&v4, 3, true, Ring::Z);
    let (a, b) = (ok(z4.homology_in(1))?, ok(k4.homology_in(1))?);
    ensure(a != b, || "Z/4 and Z/2 x Z/2 agree in degree 1".into())?;
    ensure(b.torsion == vec![BigInt::from(2), BigInt::from(2)], || {
        b.describe(Ring::Z)
    })?;
    within(start, Duration::from_secs(30))
}

fn counit() -> Check {
    let start = Instant::now();
    let cases: Vec<(&str, DgAlgebra)> = vec![
        (
            "Q[w]/w^2",
            ok(truncated_polynomial(
                "w",
                2,
                2,
                Direction::Homological,
                Ring::Q,
            ))?,
        ),
        (
            "exterior on a degree-3 class",
            ok(exterior("e", 3, Direction::Homological, Ring::Q))?,
        ),
        (
            "Q[w]/w^3",
            ok(truncated_polynomial(
                "w",
                2,
                3,
                Direction::Homological,
                Ring::Q,
            ))?,
        ),
    ];
    for (name, a) in cases {
        let r = ok(counit_and_check(&a, 5))?;
        ensure(r.violation.is_none(), || {
            format!("{name}: {:?}", r.violation)
        })?;
        for d in r.degrees.iter().filter(|d| d.degree <= 4) {
            ensure(d.is_iso(), || {
                format!("{name} in degree {}: {d:?}", d.degree)
            })?;
        }
        ensure(r.degrees.iter().any(|d| d.degree == 4), || {
            format!("{name}: degree 4 not covered")
        })?;
    }
    within(start, Duration::from_secs(60))
}

fn symmetric_group() -> GroupTable {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| perms.iter().position(|r| *r == compose(p, q)).unwrap())
                .collect()
        })
        .collect();
    GroupTable::new(table, None).expect("S3 is a group")
}

fn group_bar_is_classifying_complex() -> Check {
    let groups = [
        ("1", GroupTable::trivial()),
        ("Z/2", GroupTable::cyclic(2)),
        ("Z/3", GroupTable::cyclic(3)),
        ("Z/4", GroupTable::cyclic(4)),
        (
            "Z/2 x Z/2",
            GroupTable::cyclic(2).product(&GroupTable::cyclic(2)),
        ),
        ("S3", symmetric_group()),
    ];
    for (name, g) in &groups {
        let b = ok(group_bar(g, 6, Ring::Z))?;
        let c = classifying_complex(g, 6, true, Ring::Z);
        for n in 0..=6 {
            ensure(b.complex().d(n) == c.d(n), || {
                format!("{name}: differentials differ in degree {n}")
            })?;
        }
    }
    Ok(())
}

/// Free Lie dimensions from the generalized Witt formula, written as the
/// Poincare-Birkhoff-Witt identity solved degree by degree.
fn witt_dims(degrees: &[usize], top: usize) -> Vec<usize> {
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
        let mut series = vec![0i128; top + 1];
        series[0] = 1;
        for d in 1..n {
            for _ in 0..lie[d] {
                let mut next = series.clone();
                for k in d..=top {
                    next[k] += if d % 2 == 0 {
                        next[k - d]
                    } else {
                        series[k - d]
                    };
                }
                series = next;
            }
        }
        lie[n] = tensor[n] - series[n];
    }
    lie.into_iter().map(|d| d as usize).collect()
}

fn primitives_are_free_lie() -> Check {
    let cases: &[&[usize]] = &[
        &[1],
        &[2],
        &[3],
        &[1, 1],
        &[1, 2],
        &[2, 2],
        &[2, 3],
        &[1, 1, 1],
        &[1, 2, 3],
        &[2, 2, 2],
    ];
    let names = ["x", "y", "z"];
    for degrees in cases {
        let gens: Vec<(&str, usize)> = names.iter().copied().zip(degrees.iter().copied()).collect();
        let h = ok(tensor_hopf_algebra(&gens, &[], 6))?;
        let p = ok(primitives(&h))?;
        let prims: Vec<usize> = (0..=6).map(|n| p.complex.dim(n)).collect();
        let lie = ok(free_lie(&gens, 6))?.dims();
        let oracle = witt_dims(degrees, 6);
        ensure(prims == lie && lie == oracle, || {
            format!("{gens:?}: primitives {prims:?}, free Lie {lie:?}, oracle {oracle:?}")
        })?;
    }
    Ok(())
}

fn chevalley_eilenberg_spheres() -> Check {
    for n in 3..=5 {
        let l = ok(free_lie(&[("x", n - 1)], 8))?;
        let ranks = ok(ok(chevalley_eilenberg(&l, 8))?.homology(0..=7))?.ranks();
        let expected: Vec<usize> = (0..=7).map(|k| usize::from(k == 0 || k == n)).collect();
        ensure(ranks == expected, || format!("S^{n}: {ranks:?}"))?;
    }
    let l = ok(free_lie(&[("x", 3), ("y", 3), ("z", 3)], 8))?;
    let q = ok(lie_quotient_by_expressions(&l, &["[x,y] - [y,z]"]))?;
    let ranks = ok(ok(chevalley_eilenberg(&q, 9))?.homology(0..=8))?.ranks();
    ensure(ranks == vec![1, 0, 0, 0, 3, 0, 0, 0, 1], || {
        format!("relation algebra: {ranks:?}")
    })
}

fn hopf_invariants() -> Check {
    let start = Instant::now();
    let w = hopf_map_model();
    let gamma = ok(BarCocycle::from_words(
        w.algebra(),
        &[(int(-1), &["a", "a"])],
    ))?;
    let eta = ok(integrate(&w, &gamma))?;
    ensure(eta == int(1), || format!("Hopf map invariant {eta}"))?;

    let data = ParametrizedData {
        xs: vec![ok(named_element(w.algebra(), &[(int(-1), "a")]))?],
        ys: vec![ok(named_element(w.algebra(), &[(int(1), "a")]))?],
        theta: Default::default(),
    };
    for t in [int(0), frac(1, 4), frac(1, 2), frac(3, 4), int(1)] {
        let v = ok(parametrized_formula(&w, &data, std::slice::from_ref(&t)))?;
        ensure(v == int(1), || format!("t = {t}: {v}"))?;
    }
    let v = ok(integrate(&w, &ok(parametrized_cocycle(&w, &data))?))?;
    ensure(v == int(1), || {
        format!("parametrized cocycle integrates to {v}")
    })?;

    let l =
        linking_model(&[vec![int(1), int(2)], vec![int(2), int(3)]]).map_err(|e| e.to_string())?;
    let anti = ok(BarCocycle::from_words(
        l.algebra(),
        &[(int(1), &["a1", "a2"]), (int(-1), &["a2", "a1"])],
    ))?;
    let v = ok(integrate(&l, &anti))?;
    ensure(v == int(0), || format!("antisymmetric cocycle {v}"))?;
    within(start, Duration::from_secs(5))
}

fn harrison_ranks() -> Check {
    let s2 = ok(truncated_polynomial(
        "w",
        2,
        2,
        Direction::Cohomological,
        Ring::Q,
    ))?;
    let r2 = ok(ok(harrison_complex(&s2, 5))?.complex().homology(1..=4))?.ranks();
    // pi_2 and pi_3 of S^2 sit in shifted degrees 1 and 2.
    ensure(r2 == vec![1, 1, 0, 0], || format!("S^2: {r2:?}"))?;
    let s3 = ok(exterior("x", 3, Direction::Cohomological, Ring::Q))?;
    let r3 = ok(ok(harrison_complex(&s3, 5))?.complex().homology(1..=4))?.ranks();
    ensure(r3 == vec![0, 1, 0, 0], || format!("S^3: {r3:?}"))
}

fn random_simplicial(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(1..=5);
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    let mut facets: Vec<Vec<usize>> = (0..rng.gen_range(1..=4))
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
        .filter(|f| !f.is_empty())
        .collect();
    facets.extend((0..n).map(|i| vec![i]));
    facets.sort();
    facets.dedup();
    let x = ok(SimplicialComplex::new(vertices, facets))?;
    let top = x.dimension() + 1;
    let c = ok(chains_with_coproduct(&x, top, Ring::Q))?;
    ok(c.complex().check_d_squared())?;
    ok(c.verify())?;
    let small = x.chain_complex(top, Ring::Z);
    let large = x.chain_complex(top + 2, Ring::Z);
    for k in small.valid_degrees() {
        ensure(
            ok(small.homology_in(k))? == ok(large.homology_in(k))?,
            || format!("degree {k} moved"),
        )?;
    }
    Ok(())
}

fn random_cdga(rng: &mut ChaCha8Rng) -> Check {
    let (k, m) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
    let a = ok(free_commutative_algebra(
        &[("x", 2), ("y", 3), ("z", 5)],
        &[("y", &[(int(k), "x^2")]), ("z", &[(int(m), "x^3")])],
        8,
        Direction::Cohomological,
        Ring::Q,
    ))?;
    ok(a.verify())?;
    ok(a.check_commutative())?;
    let b = ok(bar(&a, 4))?;
    let b2 = ok(bar(&a, 6))?;
    ok(b.complex().check_d_squared())?;
    ok(b.coalgebra().verify())?;
    let degrees = b.complex().valid_degrees();
    ensure(
        ok(b.complex().homology(degrees.clone()))? == ok(b2.complex().homology(degrees))?,
        || "bar homology moved with the window".into(),
    )
}

fn random_chain_algebra(rng: &mut ChaCha8Rng) -> Check {
    let degree = rng.gen_range(1..=4);
    let a = if degree % 2 == 1 {
        ok(exterior("x", degree, Direction::Homological, Ring::Q))?
    } else {
        ok(truncated_polynomial(
            "x",
            degree,
            rng.gen_range(2..=4),
            Direction::Homological,
            Ring::Q,
        ))?
    };
    ok(a.verify())?;
    let b = ok(bar(&a, 5))?;
    ok(b.coalgebra().verify())?;
    let om = ok(cobar(b.coalgebra(), 4))?;
    ok(om.algebra().verify())?;
    let r = ok(counit_and_check(&a, 3))?;
    ensure(r.is_quasi_isomorphism(), || format!("{r:?}"))
}

fn random_lie(rng: &mut ChaCha8Rng) -> Check {
    let names = ["x", "y", "z"];
    let gens: Vec<(&str, usize)> = names[..rng.gen_range(1..=2)]
        .iter()
        .map(|s| (*s, rng.gen_range(1..=3)))
        .collect();
    let l = ok(free_lie(&gens, 6))?;
    ok(l.verify())?;
    let small = ok(chevalley_eilenberg(
        &free_lie(&gens, 4).map_err(|e| e.to_string())?,
        5,
    ))?;
    let large = ok(chevalley_eilenberg(&l, 7))?;
    let degrees = small.valid_degrees();
    ensure(
        ok(small.homology(degrees.clone()))? == ok(large.homology(degrees))?,
        || format!("{gens:?}: CE homology moved with the window"),
    )
}

fn random_linking(rng: &mut ChaCha8Rng) -> Check {
    let mut v = || int(rng.gen_range(-3i64..=3));
    let (p, q, r) = (v(), v(), v());
    let l = vec![vec![p, q.clone()], vec![q, r]];
    let w = ok(linking_model(&l))?;
    ok(w.algebra().verify())?;
    let m = w.algebra().complex().module();
    let g = |s: &str| m.find(s).unwrap();
    let pairs = [("a1", "a1"), ("a1", "a2"), ("a2", "a1"), ("a2", "a2")];
    let mut element = BarElement::new();
    let mut expected = Rational::from_integer(0.into());
    for (x, y) in pairs {
        let c = int(rng.gen_range(-3i64..=3));
        expected -= &c * &l[usize::from(x == "a2")][usize::from(y == "a2")];
        element.add_term(vec![g(x), g(y)], c);
    }
    let gamma = ok(BarCocycle::new(w.algebra(), element))?;
    let words = [
        vec!["c1", "a2"],
        vec!["a1", "c2"],
        vec!["c2", "c1", "a1"],
        vec!["a2", "c1", "c2"],
    ];
    let mut beta = BarElement::new();
    for word in &words {
        beta.add_term(
            word.iter().map(|s| g(s)).collect(),
            int(rng.gen_range(-3i64..=3)),
        );
    }
    let shifted = ok(gamma.add_coboundary(&beta))?;
    let (before, after) = (ok(integrate(&w, &gamma))?, ok(integrate(&w, &shifted))?);
    ensure(before == expected && after == expected, || {
        format!("expected {expected}, got {before} and {after} after a coboundary")
    })
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6f737a);
    let kinds: [(&str, fn(&mut ChaCha8Rng) -> Check); 5] = [
        ("simplicial", random_simplicial),
        ("cdga", random_cdga),
        ("chain algebra", random_chain_algebra),
        ("lie", random_lie),
        ("linking", random_linking),
    ];
    let mut failures = Vec::new();
    for i in 0..100 {
        let (name, check) = kinds[i % kinds.len()];
        if let Err(e) = check(&mut rng) {
            failures.push(format!("fixture {i} ({name}): {e}"));
        }
    }
    ensure(failures.is_empty(), || {
        format!("{} violations, first: {}", failures.len(), failures[0])
    })
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("loop space homology of spheres", loop_spaces_of_spheres),
        ("cobar of H(CP^inf)", cobar_of_cp_infinity),
        ("group homology of cyclic groups", group_homology),
        ("bar-cobar counit", counit),
        (
            "group bar equals classifying complex",
            group_bar_is_classifying_complex,
        ),
        ("primitives equal free Lie", primitives_are_free_lie),
        ("Chevalley-Eilenberg homology", chevalley_eilenberg_spheres),
        ("Hopf invariants", hopf_invariants),
        ("Harrison ranks of spheres", harrison_ranks),
        ("property suites over 100 fixtures", property_suites),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let spent = start.elapsed();
        match result {
            Ok(()) => writeln!(out, "criterion {}: PASS  {name} ({spent:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                writeln!(out, "criterion {}: FAIL  {name} ({spent:.2?}): {e}", i + 1)
            }
        }
        .expect("stdout");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
