//! The pruned search against brute-force enumeration.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use helsinki_core::solver::reference;
use helsinki_core::{
    apply_permutation, build_chain, build_h_cell, complete, count_completions, is_admissible,
    reverse_time, Assignment, EdgeId, Flavor, FlavorPermutation, Solver, Structure,
};
use proptest::prelude::*;

/// h-cell brute force written against the edge names alone, sharing no code
/// with the crate's admissibility check.
fn hand_rolled_h_cell() -> Vec<[Flavor; 7]> {
    fn ok(x: Flavor, y: Flavor, z: Flavor) -> bool {
        (x == y && y == z) || (x != y && y != z && x != z)
    }
    fn hom(x: Flavor, y: Flavor, z: Flavor) -> bool {
        x == y && y == z
    }
    let mut out = Vec::new();
    for code in 0..3usize.pow(7) {
        let mut v = [Flavor::A; 7];
        let mut c = code;
        for slot in v.iter_mut().rev() {
            *slot = Flavor::ALL[c % 3];
            c /= 3;
        }
        // edge order: c_in h_left h_right l_in l_out r_in r_out
        let [c_in, hl, hr, l_in, l_out, r_in, r_out] = v;
        let p = (c_in, hl, hr);
        let l = (hl, l_in, l_out);
        let r = (hr, r_in, r_out);
        if !(ok(p.0, p.1, p.2) && ok(l.0, l.1, l.2) && ok(r.0, r.1, r.2)) {
            continue;
        }
        if hom(p.0, p.1, p.2) && (hom(l.0, l.1, l.2) || hom(r.0, r.1, r.2)) {
            continue;
        }
        out.push(v);
    }
    out
}

#[test]
fn h_cell_count_agrees_with_hand_rolled_brute_force() {
    let hand = hand_rolled_h_cell();
    let cell = build_h_cell().structure;
    let solved = complete(&cell, &Assignment::new()).unwrap().solutions;
    assert_eq!(hand.len(), 66);
    assert_eq!(solved.len(), hand.len());
    let as_arrays: Vec<[Flavor; 7]> = solved
        .iter()
        .map(|a| {
            let v: Vec<Flavor> = a.values().copied().collect();
            v.try_into().unwrap()
        })
        .collect();
    assert_eq!(as_arrays, hand);
}

fn naive(s: &'static str) -> &'static (Structure, Vec<Assignment>) {
    static CELL: OnceLock<(Structure, Vec<Assignment>)> = OnceLock::new();
    static CHAIN: OnceLock<(Structure, Vec<Assignment>)> = OnceLock::new();
    let (lock, k) = match s {
        "h_cell" => (&CELL, 1),
        _ => (&CHAIN, 2),
    };
    lock.get_or_init(|| {
        let st = build_chain(k).unwrap().structure;
        let all = reference::naive_admissible(&st).unwrap();
        (st, all)
    })
}

fn filter(all: &[Assignment], partial: &Assignment) -> Vec<Assignment> {
    all.iter()
        .filter(|a| partial.iter().all(|(e, f)| a.get(e) == Some(f)))
        .cloned()
        .collect()
}

fn partial_strategy(edges: Vec<EdgeId>) -> impl Strategy<Value = Assignment> {
    let n = edges.len();
    prop::collection::vec(prop::option::weighted(0.35, 0usize..3), n).prop_map(move |slots| {
        edges
            .iter()
            .zip(slots)
            .filter_map(|(e, s)| s.map(|i| (e.clone(), Flavor::ALL[i])))
            .collect()
    })
}

fn edges_of(k: usize) -> Vec<EdgeId> {
    build_chain(k).unwrap().structure.edges().keys().cloned().collect()
}

#[test]
fn chain2_empty_partial() {
    let (st, all) = naive("chain2");
    assert_eq!(all.len(), 1380);
    assert_eq!(&complete(st, &Assignment::new()).unwrap().solutions, all);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn search_equals_naive_h_cell(partial in partial_strategy(edges_of(1))) {
        let (st, all) = naive("h_cell");
        let r = complete(st, &partial).unwrap();
        prop_assert_eq!(&r.solutions, &filter(all, &partial));
        prop_assert_eq!(count_completions(st, &partial).unwrap(), r.solutions.len() as u64);
    }

    #[test]
    fn search_equals_naive_chain2(partial in partial_strategy(edges_of(2))) {
        let (st, all) = naive("chain2");
        prop_assert_eq!(complete(st, &partial).unwrap().solutions, filter(all, &partial));
    }

    #[test]
    fn adding_a_constraint_never_adds_solutions(
        partial in partial_strategy(edges_of(2)),
        edge in 0usize..13,
        flavor in 0usize..3,
    ) {
        let st = &naive("chain2").0;
        let before: BTreeSet<_> = complete(st, &partial).unwrap().solutions.into_iter().collect();
        let mut tighter = partial.clone();
        tighter.insert(edges_of(2)[edge].clone(), Flavor::ALL[flavor]);
        let after: BTreeSet<_> = complete(st, &tighter).unwrap().solutions.into_iter().collect();
        prop_assert!(after.is_subset(&before) || partial.contains_key(&edges_of(2)[edge]));
    }

    #[test]
    fn permutation_equivariance(partial in partial_strategy(edges_of(2)), p in 0usize..6) {
        let st = &naive("chain2").0;
        let p = FlavorPermutation::all()[p];
        let direct: BTreeSet<_> = complete(st, &apply_permutation(&p, &partial))
            .unwrap()
            .solutions
            .into_iter()
            .collect();
        let mapped: BTreeSet<_> = complete(st, &partial)
            .unwrap()
            .solutions
            .iter()
            .map(|a| apply_permutation(&p, a))
            .collect();
        prop_assert_eq!(direct, mapped);
    }

    #[test]
    fn solutions_are_admissible_and_deterministic(partial in partial_strategy(edges_of(2))) {
        let st = &naive("chain2").0;
        let first = complete(st, &partial).unwrap();
        for a in &first.solutions {
            prop_assert!(is_admissible(st, a).unwrap());
        }
        prop_assert_eq!(first, complete(st, &partial).unwrap());
    }
}

#[test]
fn time_reversal_preserves_admissibility() {
    for k in 1..=2 {
        let s = build_chain(k).unwrap();
        let r = reverse_time(&s);
        let (_, all) = naive(if k == 1 { "h_cell" } else { "chain2" });
        let reversed = Solver::new(&r.structure).unwrap();
        let reversed_all = reversed.complete(&Assignment::new()).unwrap().solutions;
        assert_eq!(&reversed_all, all, "chain({k})");
        for a in all.iter().step_by(37) {
            assert!(is_admissible(&r.structure, a).unwrap());
        }
    }
}
