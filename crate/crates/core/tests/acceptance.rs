//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use lpa_ideals::arith::{is_idempotent, mul, v_h_element, AlgebraElement};
use lpa_ideals::fixtures;
use lpa_ideals::graph::{DirectedGraph, EdgeId, VertexSet};
use lpa_ideals::ideals::{
    classify_prime, enumerate_primes, gr_of, report_for_lattice, IdealDescriptor, MaximalityReport,
};
use lpa_ideals::lattice::{
    admissible_pairs, enumerate_he, leq_prime, maximal_proper_elements, quotient_graph, AdmissiblePair,
    EnumerationLimits, HereditarySaturatedSet, HsLattice,
};
use lpa_ideals::structure::{condition_k, condition_l};

use common::{mask_of, random_element, random_graph, random_monomial, rng, Raw};

/// Wall-clock limits per criterion.
const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const ALGEBRA_LIMIT: Duration = Duration::from_secs(5);

/// Size of the random corpus for the oracle and invariant criteria.
const CORPUS: u64 = 500;
const CORPUS_SEED: u64 = 0x001e_a717;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice(g: &DirectedGraph) -> HsLattice {
    enumerate_he(g, EnumerationLimits::default()).expect("fixture lattice")
}

fn set_names(g: &DirectedGraph, sets: &[HereditarySaturatedSet]) -> Vec<String> {
    sets.iter().map(|h| h.as_set().display(g)).collect()
}

fn hs(g: &DirectedGraph, names: &[&str]) -> HereditarySaturatedSet {
    HereditarySaturatedSet::from_names(g, names).expect("hereditary saturated")
}

fn graded(g: &DirectedGraph, h: &[&str], s: &[&str]) -> IdealDescriptor {
    let s = VertexSet::from_names(g, s).unwrap();
    IdealDescriptor::Graded(AdmissiblePair::new(g, hs(g, h), s).expect("admissible"))
}

fn report(g: &DirectedGraph) -> MaximalityReport {
    report_for_lattice(g, &lattice(g)).expect("report")
}

fn ac1() -> Check {
    let g = fixtures::three_vertex_a();
    let lat = lattice(&g);
    let proper: Vec<String> = lat.proper().map(|h| h.as_set().display(&g)).collect();
    ensure(proper == ["{}", "{v,w}"], || format!("proper H_E = {proper:?}"))?;

    let r = report(&g);
    let unique = r.unique_maximal.as_ref().map(|d| d.display(&g));
    ensure(unique.as_deref() == Some("Graded({v,w}, {})"), || {
        format!("unique maximal = {unique:?}")
    })?;

    let pair = AdmissiblePair::with_all_breaking(&g, hs(&g, &["v", "w"])).unwrap();
    let q = quotient_graph(&g, &pair).unwrap();
    ensure(condition_l(&q).holds, || "quotient at {v,w} fails (L)".into())?;

    let primes: Vec<String> = enumerate_primes(&g, &lat)
        .unwrap()
        .iter()
        .map(|d| d.display(&g))
        .collect();
    let expected = [
        "Graded({}, {})",
        "NonGraded({}, [c], irreducible f in K[x,x^-1])",
        "Graded({v,w}, {})",
    ];
    ensure(primes == expected, || format!("primes = {primes:?}"))
}

fn ac2() -> Check {
    let g = fixtures::three_vertex_b();
    let lat = lattice(&g);
    let maximal = set_names(&g, &maximal_proper_elements(&lat));
    ensure(maximal == ["{u}", "{w}"], || format!("maximal proper = {maximal:?}"))?;

    let r = report(&g);
    let gm: Vec<String> = r.graded_maximals.iter().map(|p| p.display(&g)).collect();
    ensure(gm == ["({w}, {})"], || format!("graded maximals = {gm:?}"))?;
    let fam: Vec<String> = r.nongraded_maximal_families.iter().map(|f| f.display(&g)).collect();
    ensure(
        fam.contains(&"NonGraded({u}, [c], irreducible f in K[x,x^-1])".to_string()),
        || format!("families = {fam:?}"),
    )?;
    ensure(!r.every_maximal_graded, || "every_maximal_graded is true".into())?;
    let bottom = graded(&g, &[], &[]);
    ensure(!classify_prime(&g, &bottom).unwrap(), || {
        "Graded({}, {}) reported prime".into()
    })?;
    let primes = enumerate_primes(&g, &lat).unwrap();
    ensure(!primes.contains(&bottom), || "Graded({}, {}) among primes".into())
}

fn ac3_chain(n: usize, reversed: bool) -> Check {
    let g = fixtures::two_loop_chain(n, reversed);
    ensure(condition_k(&g).holds, || "Condition (K) fails".into())?;
    let lat = lattice(&g);
    let primes = enumerate_primes(&g, &lat).unwrap();
    ensure(primes.iter().all(|d| d.is_graded()), || "non-graded prime".into())?;

    ensure(lat.len() == n + 1, || format!("|H_E| = {}", lat.len()))?;
    let sets = lat.sets();
    ensure(sets.windows(2).all(|w| w[0].as_set().is_subset(w[1].as_set())), || {
        "H_E is not a chain".into()
    })?;

    let names = |range: std::ops::RangeInclusive<usize>| -> Vec<String> { range.map(|i| format!("v{i}")).collect() };
    let expected = if reversed { names(2..=n) } else { names(1..=n - 1) };
    let maximal = maximal_proper_elements(&lat);
    ensure(maximal.len() == 1 && maximal[0].as_set().names(&g) == expected, || {
        format!("maximal proper = {:?}", set_names(&g, &maximal))
    })?;

    if reversed {
        // H_k = {v_k, ..., v_n}: I(H_k) is prime, and for k >= 3 not maximal
        let r = report_for_lattice(&g, &lat).unwrap();
        for k in 3..=n {
            let h = HereditarySaturatedSet::from_names(&g, &names(k..=n)).map_err(|e| e.to_string())?;
            let d = IdealDescriptor::Graded(AdmissiblePair::with_all_breaking(&g, h).unwrap());
            ensure(classify_prime(&g, &d).unwrap(), || format!("I(H_{k}) not prime"))?;
            let IdealDescriptor::Graded(p) = &d else { unreachable!() };
            ensure(!r.graded_maximals.contains(p), || format!("I(H_{k}) maximal"))?;
        }
    }
    Ok(())
}

fn corpus() -> impl Iterator<Item = (u64, DirectedGraph)> {
    (0..CORPUS).map(|i| {
        let seed = CORPUS_SEED.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i);
        (seed, random_graph(seed))
    })
}

fn ac4() -> Check {
    let mut mismatches = Vec::new();
    for (seed, g) in corpus() {
        let raw = Raw::of(&g);
        let lat = lattice(&g);
        let ours: BTreeSet<u64> = lat.sets().iter().map(|h| mask_of(h.as_set())).collect();
        if ours != raw.brute_he() {
            mismatches.push(format!("seed {seed}: H_E"));
        }
        if condition_k(&g).holds != raw.condition_k() {
            mismatches.push(format!("seed {seed}: condition K"));
        }
        if condition_l(&g).holds != raw.condition_l() {
            mismatches.push(format!("seed {seed}: condition L"));
        }
    }
    ensure(mismatches.is_empty(), || {
        format!("{} mismatches: {:?}", mismatches.len(), mismatches)
    })
}

fn ac5_graph(g: &DirectedGraph) -> Check {
    let lat = lattice(g);
    let r = report_for_lattice(g, &lat).unwrap();
    let full = VertexSet::full(g);
    let proper: Vec<AdmissiblePair> = admissible_pairs(g, &lat)
        .unwrap()
        .into_iter()
        .filter(|p| p.h().as_set() != &full)
        .collect();
    let leq_maximal = |p: &AdmissiblePair| proper.iter().all(|q| q == p || !leq_prime(p, q).unwrap());
    let raw = Raw::of(g);

    for p in &r.graded_maximals {
        ensure(classify_prime(g, &IdealDescriptor::Graded(p.clone())).unwrap(), || {
            format!("graded maximal {} not prime", p.display(g))
        })?;
        ensure(raw.downward_directed(mask_of(&p.h().as_set().complement(g))), || {
            format!("complement of {} not downward directed", p.display(g))
        })?;
    }
    for f in &r.nongraded_maximal_families {
        let d = IdealDescriptor::NonGraded(f.clone());
        ensure(classify_prime(g, &d).unwrap(), || format!("{} not prime", f.display(g)))?;
        let gr = gr_of(g, &d).unwrap();
        ensure(leq_maximal(&gr), || format!("gr of {} not maximal", f.display(g)))?;
    }
    if let Some(d) = &r.unique_maximal {
        ensure(d.is_graded(), || "unique maximal is not graded".into())?;
    }
    ensure(
        r.every_maximal_graded == r.nongraded_maximal_families.is_empty(),
        || "every_maximal_graded disagrees with families".into(),
    )
}

fn ac5() -> Check {
    let violations: Vec<String> = corpus()
        .filter_map(|(seed, g)| ac5_graph(&g).err().map(|e| format!("seed {seed}: {e}")))
        .collect();
    ensure(violations.is_empty(), || {
        format!("{} violations: {:?}", violations.len(), violations)
    })
}

fn ac6() -> Check {
    for (seed, g) in corpus().filter(|(_, g)| !g.edges().is_empty()).take(100) {
        let fail = |what: &str| format!("seed {seed}: {what}");
        for (i, e) in g.edges().iter().enumerate() {
            let ghost = AlgebraElement::ghost(&g, EdgeId(i)).unwrap();
            let edge = AlgebraElement::edge(&g, EdgeId(i)).unwrap();
            ensure(mul(&g, &ghost, &edge).unwrap() == AlgebraElement::vertex(e.dst), || {
                fail("e*e != r(e)")
            })?;
            for j in (0..g.edges().len()).filter(|&j| j != i) {
                let other = AlgebraElement::edge(&g, EdgeId(j)).unwrap();
                ensure(mul(&g, &ghost, &other).unwrap().is_zero(), || fail("e*f != 0"))?;
            }
        }
        for v in g.vertex_ids() {
            for w in g.vertex_ids() {
                let p = mul(&g, &AlgebraElement::vertex(v), &AlgebraElement::vertex(w)).unwrap();
                let want = if v == w {
                    AlgebraElement::vertex(v)
                } else {
                    AlgebraElement::zero()
                };
                ensure(p == want, || fail("vertex orthogonality"))?;
            }
        }
        let mut r = rng(seed);
        for _ in 0..20 {
            let x = random_monomial(&g, &mut r);
            let y = random_monomial(&g, &mut r);
            let p = mul(
                &g,
                &AlgebraElement::from_monomial(x.clone()),
                &AlgebraElement::from_monomial(y.clone()),
            )
            .unwrap();
            ensure(p.monomials().all(|m| m.degree() == x.degree() + y.degree()), || {
                fail("degree additivity")
            })?;
        }
        let x = random_element(&g, &mut r);
        let unit = x
            .support_vertices()
            .iter()
            .fold(AlgebraElement::zero(), |acc, v| &acc + &AlgebraElement::vertex(v));
        ensure(
            mul(&g, &unit, &x).unwrap() == x && mul(&g, &x, &unit).unwrap() == x,
            || fail("local unit"),
        )?;
    }

    let g = fixtures::omega_example();
    let x = v_h_element(&g, &hs(&g, &["w"]), g.vertex("v").unwrap()).map_err(|e| e.to_string())?;
    ensure(x.display(&g) == "v - f f*", || format!("v^H = {}", x.display(&g)))?;
    ensure(is_idempotent(&g, &x).unwrap(), || "(v^H)^2 != v^H".into())
}

fn timed(name: &str, limit: Duration, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let result = result.and_then(|()| ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}")));
    match &result {
        Ok(()) => println!("{name}: PASS ({elapsed:.2?} < {limit:?})"),
        Err(e) => println!("{name}: FAIL ({e})"),
    }
    result.is_ok()
}

fn main() {
    let mut ok = true;
    ok &= timed("AC1 first three-vertex fixture", FIXTURE_LIMIT, ac1);
    ok &= timed("AC2 second three-vertex fixture", FIXTURE_LIMIT, ac2);
    let mut chains = true;
    for reversed in [false, true] {
        for n in 3..=6 {
            let orientation = if reversed { "reversed" } else { "forward" };
            chains &= timed(
                &format!("AC3 two-loop chain n={n} {orientation}"),
                FIXTURE_LIMIT,
                || ac3_chain(n, reversed),
            );
        }
    }
    println!("AC3 chain truncations: {}", if chains { "PASS" } else { "FAIL" });
    ok &= chains;
    ok &= timed("AC4 oracle equivalence on 500 random graphs", ORACLE_LIMIT, ac4);
    ok &= timed("AC5 maximal-ideal invariants on 500 random graphs", ORACLE_LIMIT, ac5);
    ok &= timed("AC6 algebra oracle", ALGEBRA_LIMIT, ac6);
    if !ok {
        std::process::exit(1);
    }
}
