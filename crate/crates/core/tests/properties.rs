//! Algebraic identities of minors and gaps, and round trips of the formats.

use gapkit_core::families::{minus_candidates, Family, Mode};
use gapkit_core::gap::{classify, gap, minus_structure};
use gapkit_core::scform::{parse_expr, print_sc, read_compact, read_table, write_compact, write_table};
use gapkit_core::{KTable, Tuple};
use proptest::prelude::*;

fn table(k: usize, n: usize) -> impl Strategy<Value = KTable> {
    let len = k.pow(n as u32);
    prop::collection::vec(0..k as u8, len).prop_map(move |v| KTable::new(k, n, v).unwrap())
}

/// Random tables, half of them with one randomly chosen variable made
/// fictive so the identities about fictive variables are exercised.
fn shaped(k: usize, n: usize) -> impl Strategy<Value = KTable> {
    (table(k, n), 0..2 * n).prop_map(move |(t, drop)| {
        if drop < n {
            let keep: Vec<usize> = (1..=n).filter(|&p| p != drop + 1).collect();
            let small = t.project(&keep).unwrap();
            KTable::from_fn(k, n, |x| {
                let y: Vec<u8> = keep.iter().map(|&p| x[p - 1]).collect();
                small.eval(&y).unwrap() as usize
            })
            .unwrap()
        } else {
            t
        }
    })
}

fn any_shape() -> impl Strategy<Value = KTable> {
    prop_oneof![shaped(2, 3), shaped(3, 2), shaped(3, 3), shaped(3, 4)]
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 600, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn minors_never_gain_variables(f in any_shape()) {
        let ess = f.essential_set();
        for (i, j) in pairs(f.n()) {
            let m = f.identify(i, j).unwrap();
            prop_assert!(m.ess() <= f.ess());
            prop_assert!(!m.is_essential(i).unwrap());
            if ess.contains(j) {
                prop_assert!(m.essential_set().is_subset(&ess));
            }
        }
    }

    #[test]
    fn fictive_variable_identification_is_identity(f in any_shape()) {
        for i in f.fictive_set().iter() {
            for j in (1..=f.n()).filter(|&j| j != i) {
                prop_assert_eq!(f.identify(i, j).unwrap(), f.clone());
            }
        }
    }

    #[test]
    fn minors_determine_boolean_ternary(f in table(2, 3), g in table(2, 3)) {
        prop_assume!(f != g);
        prop_assert!(pairs(3).any(|(i, j)| f.identify(i, j).unwrap() != g.identify(i, j).unwrap()));
    }

    #[test]
    fn identifying_a_fictive_variable_first(f in any_shape()) {
        let n = f.n();
        prop_assume!(n >= 3);
        for (u, v) in pairs(n) {
            let m = f.identify(u, v).unwrap();
            for i in (1..=n).filter(|i| *i != u && *i != v && !m.is_essential(*i).unwrap()) {
                for j in (1..=n).filter(|&j| j != i) {
                    prop_assert_eq!(&f.identify(i, j).unwrap().identify(u, v).unwrap(), &m);
                }
            }
        }
    }

    #[test]
    fn collapsing_minor_factorises(f in any_shape()) {
        let n = f.n();
        for (u, v) in pairs(n) {
            let m = f.identify(u, v).unwrap();
            if m.is_essential(v).unwrap() {
                continue;
            }
            for j in (1..=n).filter(|&j| j != u && j != v) {
                prop_assert_eq!(&f.identify(v, j).unwrap().identify(u, j).unwrap(), &m);
                prop_assert_eq!(&f.identify(u, j).unwrap().identify(v, j).unwrap(), &m);
            }
        }
    }

    #[test]
    fn fictive_variables_survive_addition(f in any_shape(), seed in any::<u64>()) {
        let (k, n) = (f.k(), f.n());
        let g = gapkit_core::census::sample_table(k, n, seed, 0).unwrap();
        let sum = f.ring_add(&g).unwrap();
        for i in 1..=n {
            if !f.is_essential(i).unwrap() && !g.is_essential(i).unwrap() {
                prop_assert!(!sum.is_essential(i).unwrap());
            }
        }
    }

    #[test]
    fn gap_bounds(f in any_shape()) {
        if let Some(p) = gap(&f) {
            prop_assert!(p >= 1 && p <= f.k());
            prop_assert!(p <= f.ess());
            if f.k() == 2 || f.n() > f.k() {
                prop_assert!(p <= 2);
            }
        }
    }

    #[test]
    fn full_arity_beyond_k_has_small_gap(f in table(3, 4)) {
        if f.ess() == 4 {
            prop_assert!(gap(&f).unwrap() <= 2);
        }
    }

    #[test]
    fn sc_round_trip(f in prop_oneof![table(2, 3), table(3, 2), table(3, 3), table(4, 2)]) {
        let text = print_sc(&f);
        prop_assert_eq!(parse_expr(&text, f.k(), f.n()).unwrap(), f.clone());
        prop_assert_eq!(read_table(&write_table(&f)).unwrap(), f.clone());
        prop_assert_eq!(read_compact(&write_compact(&f)).unwrap(), f);
    }

    #[test]
    fn sc_print_is_injective(f in table(3, 2), g in table(3, 2)) {
        prop_assert_eq!(f == g, print_sc(&f) == print_sc(&g));
    }

    #[test]
    fn tuple_index_round_trip(k in 2usize..6, n in 0usize..5, seed in any::<u64>()) {
        let len = k.pow(n as u32);
        let m = (seed as usize) % len;
        let t = Tuple::from_index(k, n, m).unwrap();
        prop_assert_eq!(t.index(), m);
        prop_assert_eq!(t.entries().len(), n);
    }
}

#[test]
fn minus_family_members_have_symmetric_structure() {
    let search = minus_candidates(4, 4).unwrap();
    for t in &search.parts {
        assert!(t.is_totally_symmetric());
        assert!(t.oddsupp_determined().is_some());
    }
    let fam = Family::G2Minus { k: 4, n: 4 };
    for f in fam.generate(Mode::Sample { count: 200, seed: 42 }).unwrap() {
        let r = classify(&f);
        assert!(r.minus_member && r.gap == Some(2) && r.ess == 4);
        let s = minus_structure(&f).unwrap().expect("member has the structure");
        assert!(s.t.oddsupp_determined().is_some());
        assert!(s.h_sym.is_totally_symmetric());
    }
}

#[test]
fn gpk_samples_decompose() {
    for (k, n, p) in [(4usize, 4usize, 3usize), (4, 4, 2), (3, 3, 2)] {
        let fam = Family::Gpk { k, n, p };
        for f in fam.generate(Mode::Sample { count: 100, seed: 9 }).unwrap() {
            let d = classify(&f).decomposition.expect("collapsing pair");
            assert_eq!(d.h.ring_add(&d.g).unwrap(), f);
            assert_eq!(d.h.ess(), n - p);
            assert!(d.g_minors_zero);
        }
    }
}

#[test]
fn all_mode_streams_are_duplicate_free() {
    use std::collections::HashSet;
    for fam in [
        Family::Gnn { k: 3, n: 3 },
        Family::RepFree { k: 3, n: 3 },
        Family::G2k3 { k: 3 },
    ] {
        let mut seen = HashSet::new();
        let mut count = 0u64;
        for f in fam.generate(Mode::All).unwrap() {
            seen.insert(f.into_values());
            count += 1;
        }
        assert_eq!(seen.len() as u64, count, "{fam}");
        assert_eq!(fam.all_mode_len().unwrap(), count.into());
    }
}
