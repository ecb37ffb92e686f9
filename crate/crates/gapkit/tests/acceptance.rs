//! Acceptance criteria, one test each. Every test prints a single
//! `AC<n> PASS|FAIL` line before asserting.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gapkit::driver;
use gapkit_core::census::{collect_cell, sample_table, DEFAULT_CAP};
use gapkit_core::families::{
    count_exact_ess, count_g2_plus, count_g2k3, count_gnn, count_gpk, minus_candidates, Family, Mode,
};
use gapkit_core::gap::{classify, gap, minus_structure, minor_profile};
use gapkit_core::scform::{parse_expr, print_sc};
use gapkit_core::KTable;
use num_bigint::BigUint;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Prints the verdict line, then fails the test if any check failed.
fn verdict(id: u32, what: &str, started: Instant, limit: Duration, failures: Vec<String>) {
    let elapsed = started.elapsed();
    let mut failures = failures;
    if elapsed >= limit {
        failures.push(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    if failures.is_empty() {
        println!("AC{id} PASS: {what} ({elapsed:.2?})");
    } else {
        println!("AC{id} FAIL: {what} ({elapsed:.2?}): {}", failures.join("; "));
        panic!("AC{id} failed: {}", failures.join("; "));
    }
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn jobs() -> usize {
    driver::default_jobs()
}

#[test]
fn ac1_boolean_binary_census() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let d = driver::census_exhaustive(2, 2, jobs(), DEFAULT_CAP).unwrap();
    let expected = [((0, None), 2u64), ((1, None), 4), ((2, Some(1)), 4), ((2, Some(2)), 6)];
    check(&mut fails, d.cells.len() == 4, || format!("{} cells", d.cells.len()));
    for (cell, count) in expected {
        check(&mut fails, d.get(cell.0, cell.1) == big(count), || {
            format!("cell {cell:?} = {}", d.get(cell.0, cell.1))
        });
    }
    check(&mut fails, d.total == big(16), || format!("total {}", d.total));
    check(&mut fails, count_gnn(2, 2).unwrap() == big(6), || "count_gnn(2,2) != 6".into());
    verdict(1, "census (2,2) cells 2/4/4/6", t, Duration::from_secs(1), fails);
}

#[test]
fn ac2_ternary_binary_census_matches_generator() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let d = driver::census_exhaustive(3, 2, jobs(), DEFAULT_CAP).unwrap();
    let cell = d.get(2, Some(2));
    check(&mut fails, d.total == big(19683), || format!("total {}", d.total));
    check(&mut fails, cell == big(2184), || format!("cell (2,2) = {cell}"));
    check(&mut fails, cell == count_gnn(3, 2).unwrap(), || "cell differs from count_gnn".into());
    let found: BTreeSet<KTable> = collect_cell(3, 2, (2, Some(2)), DEFAULT_CAP).unwrap().into_iter().collect();
    let generated: BTreeSet<KTable> = Family::Gnn { k: 3, n: 2 }.generate(Mode::All).unwrap().collect();
    check(&mut fails, found == generated, || {
        format!("census set ({}) != generator set ({})", found.len(), generated.len())
    });
    verdict(2, "census (3,2) cell (2,2) = 2184 = generator set", t, Duration::from_secs(10), fails);
}

#[test]
fn ac3_boolean_gap_bound() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let d = driver::census_exhaustive(2, 3, jobs(), DEFAULT_CAP).unwrap();
    let ess3 = d.ess_total(3);
    check(&mut fails, ess3 == big(218), || format!("ess=3 total {ess3}"));
    check(&mut fails, ess3 == count_exact_ess(2, 3, 3).unwrap(), || "differs from count_exact_ess".into());
    let high = |d: &gapkit_core::census::Distribution, n: usize| {
        d.cells.keys().filter(|(e, g)| *e == n && g.is_some_and(|g| g > 2)).count()
    };
    check(&mut fails, high(&d, 3) == 0, || "ess=3 with gap > 2 at (2,3)".into());
    let first = t.elapsed();
    check(&mut fails, first < Duration::from_secs(1), || format!("(2,3) took {first:.2?}"));
    let d4 = driver::census_exhaustive(2, 4, jobs(), DEFAULT_CAP).unwrap();
    check(&mut fails, d4.total == big(65536), || format!("(2,4) total {}", d4.total));
    check(&mut fails, high(&d4, 4) == 0, || "ess=4 with gap > 2 at (2,4)".into());
    verdict(3, "Boolean census (2,3) ess=3 = 218, gap <= 2 at (2,3),(2,4)", t, Duration::from_secs(60), fails);
}

#[test]
fn ac4_gnn_ternary_full_arity() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut seen = BTreeSet::new();
    let mut emitted = 0u64;
    let mut bad = 0u64;
    for f in (Family::Gnn { k: 3, n: 3 }).generate(Mode::All).unwrap() {
        emitted += 1;
        if f.ess() != 3 || gap(&f) != Some(3) {
            bad += 1;
        }
        seen.insert(f);
    }
    check(&mut fails, emitted == 2184, || format!("emitted {emitted}"));
    check(&mut fails, seen.len() == 2184, || format!("distinct {}", seen.len()));
    check(&mut fails, bad == 0, || format!("{bad} tables without ess 3 and gap 3"));
    verdict(4, "gen_gnn(3,3): 2184 distinct tables, ess 3, gap 3", t, Duration::from_secs(10), fails);
}

#[test]
fn ac5_ternary_gap_two_forms() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut seen = BTreeSet::new();
    let mut emitted = 0u64;
    let mut bad = 0u64;
    for f in (Family::G2k3 { k: 3 }).generate(Mode::All).unwrap() {
        emitted += 1;
        let minors_ok = f.nontrivial_minors().iter().all(|(_, m)| m.ess() == 1);
        if gap(&f) != Some(2) || !minors_ok {
            bad += 1;
        }
        seen.insert(f.into_values());
    }
    check(&mut fails, emitted == 139968, || format!("emitted {emitted}"));
    check(&mut fails, seen.len() == 139968, || format!("distinct {}", seen.len()));
    check(&mut fails, count_g2k3(3).unwrap() == big(emitted), || "differs from count_g2k3(3)".into());
    check(&mut fails, bad == 0, || format!("{bad} tables fail gap = 2 with all minors of ess 1"));
    verdict(5, "gen_g2k3: 139968 distinct tables, gap 2, minors of ess 1", t, Duration::from_secs(120), fails);
}

#[test]
fn ac6_gpk_samples_decompose() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut n = 0;
    for f in (Family::Gpk { k: 4, n: 4, p: 3 }).generate(Mode::Sample { count: 1000, seed: 2024 }).unwrap() {
        n += 1;
        let r = classify(&f);
        if r.ess != 4 || r.gap != Some(3) {
            fails.push(format!("sample {n}: ess {} gap {:?}", r.ess, r.gap));
            continue;
        }
        match r.decomposition {
            Some(d) => {
                let ok = d.h.ring_add(&d.g).unwrap() == f && d.h.ess() == 1 && d.g_minors_zero;
                check(&mut fails, ok, || format!("sample {n}: decomposition does not round-trip"));
            }
            None => fails.push(format!("sample {n}: no decomposition")),
        }
    }
    check(&mut fails, n == 1000, || format!("{n} samples"));
    fails.truncate(5);
    verdict(6, "gen_gpk(4,4,3) x1000: ess 4, gap 3, f = h + g", t, Duration::from_secs(60), fails);
}

fn with_fictive(f: &KTable, pos: usize) -> KTable {
    KTable::from_fn(f.k(), f.n(), |x| {
        let mut y = x.to_vec();
        y[pos - 1] = 0;
        f.eval(&y).unwrap() as usize
    })
    .unwrap()
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

/// Violations of the minor and gap identities for one table.
fn identity_violations(f: &KTable, other: &KTable) -> Vec<&'static str> {
    let (k, n) = (f.k(), f.n());
    let mut v = Vec::new();
    let ess = f.essential_set();
    let minors: Vec<((usize, usize), KTable)> = pairs(n).into_iter().map(|(i, j)| ((i, j), f.identify(i, j).unwrap())).collect();
    for ((i, j), m) in &minors {
        // ess never grows and x_i drops out
        if m.ess() > f.ess() || m.is_essential(*i).unwrap() {
            v.push("minor ess bound");
        }
        if ess.contains(*j) && !m.essential_set().is_subset(&ess) {
            v.push("minor essential subset");
        }
        // identifying a fictive variable changes nothing
        if !ess.contains(*i) && m != f {
            v.push("fictive identification");
        }
    }
    for ((u, w), m) in &minors {
        for i in (1..=n).filter(|i| i != u && i != w) {
            if m.is_essential(i).unwrap() {
                continue;
            }
            for j in (1..=n).filter(|&j| j != i) {
                if f.identify(i, j).unwrap().identify(*u, *w).unwrap() != *m {
                    v.push("fictive-in-minor identity");
                }
            }
        }
        if !m.is_essential(*w).unwrap() {
            for j in (1..=n).filter(|j| j != u && j != w) {
                let a = f.identify(*w, j).unwrap().identify(*u, j).unwrap();
                let b = f.identify(*u, j).unwrap().identify(*w, j).unwrap();
                if a != *m || b != *m {
                    v.push("collapsing minor identity");
                }
            }
        }
    }
    let sum = f.ring_add(other).unwrap();
    for i in 1..=n {
        if !f.is_essential(i).unwrap() && !other.is_essential(i).unwrap() && sum.is_essential(i).unwrap() {
            v.push("fictive closure under addition");
        }
    }
    if let Some(p) = gap(f) {
        if p > k {
            v.push("gap above k");
        }
        if (k, n) == (3, 4) && f.ess() == 4 && p > 2 {
            v.push("gap above 2 at full arity beyond k");
        }
    }
    if (k, n) == (2, 3) && f != other && pairs(3).iter().all(|&(i, j)| f.identify(i, j).unwrap() == other.identify(i, j).unwrap()) {
        v.push("distinct Boolean ternary tables with equal minors");
    }
    v
}

#[test]
fn ac7_property_suite() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut cases = 0u64;
    for (shape, (k, n)) in [(2usize, 3usize), (3, 2), (3, 3), (3, 4)].into_iter().enumerate() {
        let seed = 7000 + shape as u64;
        for i in 0..2500u64 {
            let mut f = sample_table(k, n, seed, 2 * i).unwrap();
            let other = sample_table(k, n, seed, 2 * i + 1).unwrap();
            // every other case draws a table with a fictive variable
            if i % 2 == 1 {
                f = with_fictive(&f, (i as usize / 2) % n + 1);
            }
            let other = if i % 4 == 1 { with_fictive(&other, (i as usize / 2) % n + 1) } else { other };
            cases += 1;
            for what in identity_violations(&f, &other) {
                fails.push(format!("({k},{n}) case {i}: {what}"));
            }
        }
    }
    check(&mut fails, cases >= 10_000, || format!("only {cases} cases"));
    fails.truncate(5);
    verdict(7, "property suite, 10^4 seeded cases", t, Duration::from_secs(600), fails);
}

#[test]
fn ac8_minus_family_search() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let search = minus_candidates(4, 4).unwrap();
    let search_time = t.elapsed();
    check(&mut fails, search.points == 65536, || format!("{} candidate points", search.points));
    check(&mut fails, !search.parts.is_empty(), || "no valid symmetric parts".into());
    check(&mut fails, search_time < Duration::from_secs(60), || format!("search took {search_time:.2?}"));
    for (idx, tpart) in search.parts.iter().enumerate() {
        if tpart.oddsupp_determined().is_none() || !tpart.is_totally_symmetric() {
            fails.push(format!("symmetric part {idx} is not oddsupp-determined"));
        }
    }
    // all-mode has 16380 * 4^24 members; each part with the zero completion
    // is checked, and a seeded sample covers the rest
    let mut checked = 0;
    let mut check_member = |f: &KTable, fails: &mut Vec<String>| {
        checked += 1;
        let r = classify(f);
        if !r.minus_member || r.gap != Some(2) {
            fails.push(format!("f #{checked}: minus {} gap {:?}", r.minus_member, r.gap));
            return;
        }
        for info in minor_profile(f) {
            let m = f.identify(info.pair.0, info.pair.1).unwrap();
            if info.essential.contains(info.pair.1) || !m.is_totally_symmetric() {
                fails.push(format!("f #{checked}: minor {:?} not symmetric", info.pair));
            }
        }
        match minus_structure(f) {
            Ok(Some(s)) if s.t.oddsupp_determined().is_some() && s.h_sym.is_totally_symmetric() => {}
            other => fails.push(format!("f #{checked}: structure {:?}", other.map(|o| o.is_some()))),
        }
    };
    for f in &search.parts {
        check_member(f, &mut fails);
    }
    for f in (Family::G2Minus { k: 4, n: 4 }).generate(Mode::Sample { count: 2000, seed: 88 }).unwrap() {
        check_member(&f, &mut fails);
    }
    fails.truncate(5);
    verdict(8, "minus search (4,4): 65536 points, members pass all checks", t, Duration::from_secs(120), fails);
}

#[test]
fn ac9_formula_evaluators() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let four = BigUint::from(4u32);
    let expected = (four.pow(24) - 1u32) * 1008u32;
    check(&mut fails, count_gpk(4, 4, 3).unwrap() == expected, || "count_gpk(4,4,3)".into());
    let g2k3 = count_g2k3(3).unwrap();
    check(&mut fails, g2k3 == big(139968) && g2k3 == big(24 * 8 * 729), || format!("count_g2k3(3) = {g2k3}"));
    let plus = count_g2_plus(4, 4).unwrap();
    // the general gap-p formula evaluated at p = 2
    let mut inner = num_bigint::BigInt::from(0);
    for j in 2..=4u32 {
        let c2 = [0, 0, 1, 3, 6][j as usize];
        let cn = [1, 4, 6, 4, 1][j as usize];
        let term = num_bigint::BigInt::from(c2 * cn) * num_bigint::BigInt::from(4u32).pow(4u32.pow(4 - j));
        inner += if (j - 2) % 2 == 0 { term } else { -term };
    }
    let at_two = (num_bigint::BigInt::from(4u32).pow(24) - 1) * inner;
    check(&mut fails, num_bigint::BigInt::from(plus.clone()) == at_two, || format!("count_g2_plus(4,4) = {plus}"));
    verdict(9, "exact formula values", t, Duration::from_secs(1), fails);
}

fn sc(text: &str) -> KTable {
    parse_expr(text, 3, 3).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn ac10_parser_examples() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let mut minor_is = |name: &str, f: &KTable, i: usize, j: usize, expected: &str| {
        let got = f.identify(i, j).unwrap();
        if got != sc(expected) {
            fails.push(format!("{name}_{{{i}<-{j}}} is {}", print_sc(&got)));
        }
    };
    // two tables over {0,1,2} that agree on every minor
    let e1 = sc("x1^0 x2^0 x3^0 + x1^1 x2^0 x3^2");
    let e2 = sc("x1^0 x2^0 x3^0 + x1^0 x2^1 x3^2");
    for (i, j) in pairs(3) {
        let m = 6 - i - j;
        let expected = format!("x{j}^0 x{m}^0");
        minor_is("e1", &e1, i, j, &expected);
        minor_is("e2", &e2, i, j, &expected);
    }
    let f = sc("x1^0 x2^0 x3^0 + x1^0 x2^0 x3^1 + x1^0 x2^0 x3^2 + x1^0 x2^1 x3^0 + x1^0 x2^2 x3^0 + x1^1 x2^0 x3^0 + x1^2 x2^0 x3^0");
    minor_is("f", &f, 2, 1, "x1^0");
    minor_is("f", &f, 3, 1, "x1^0");
    minor_is("f", &f, 3, 2, "x2^0");
    let g = sc("x1^0 x2^0 x3^0 + x1^0 x2^1 x3^1 + x1^0 x2^2 x3^2 + x1^1 x2^0 x3^1 + x1^1 x2^1 x3^0 + x1^2 x2^0 x3^2 + x1^2 x2^2 x3^0");
    minor_is("g", &g, 2, 1, "x3^0");
    minor_is("g", &g, 3, 1, "x2^0");
    minor_is("g", &g, 3, 2, "x1^0");
    let h = sc("x1^0 x2^0 + x1^0 x2^1 x3^1 + x1^0 x2^2 x3^2 + x1^1 x2^0 x3^1 + x1^2 x2^0 x3^2");
    minor_is("h", &h, 2, 1, "x1^0");
    minor_is("h", &h, 3, 2, "x1^0");
    minor_is("h", &h, 3, 1, "x2^0");
    let r = sc("x2^0 + 2*x1^1 x2^0 x3^2 + 2*x1^2 x2^0 x3^1");
    minor_is("r", &r, 3, 1, "x2^0");
    minor_is("r", &r, 3, 2, "x2^0");
    minor_is("r", &r, 2, 1, "x1^0");
    check(&mut fails, classify(&g).minus_member && classify(&r).plus_member, || "g minus / r plus".into());
    check(&mut fails, e1 != e2, || "two-term examples coincide".into());

    let mut round_trip_failures = 0;
    for (s, (k, n)) in [(2usize, 3usize), (3, 2), (3, 3)].into_iter().enumerate() {
        for i in 0..3334u64 {
            let f = sample_table(k, n, 500 + s as u64, i).unwrap();
            if parse_expr(&print_sc(&f), k, n).ok() != Some(f) {
                round_trip_failures += 1;
            }
        }
    }
    check(&mut fails, round_trip_failures == 0, || format!("{round_trip_failures} round-trip failures"));
    verdict(10, "parser reproduces the worked examples; 10^4 round trips", t, Duration::from_secs(60), fails);
}
