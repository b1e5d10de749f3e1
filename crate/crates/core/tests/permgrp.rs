use std::collections::HashSet;

use dcover::cover::build_cover;
use dcover::lift::{lifted_generators, max_lifting_group};
use dcover::permgrp::{
    are_isomorphic, canonical_form, full_automorphism_group, Perm, PermGroup, SimpleGraph,
    DEFAULT_AUT_LIMIT,
};
use dcover::DivisorLattice;
use proptest::prelude::*;

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

fn arb_gens() -> impl Strategy<Value = (usize, Vec<Perm>)> {
    (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(arb_perm(n), 1..4)))
}

fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
    (3usize..=9).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = vec![];
            let mut it = bits.into_iter();
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            SimpleGraph::from_edges(n, &edges).unwrap()
        })
    })
}

/// The group generated by `gens`, listed element by element.
fn elements(n: usize, gens: &[Perm]) -> HashSet<Vec<u32>> {
    let id = Perm::identity(n);
    let mut seen = HashSet::from([id.images().to_vec()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.images().to_vec()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn graph(order: usize, edges: &[(u32, u32)]) -> SimpleGraph {
    SimpleGraph::from_edges(order, edges).unwrap()
}

proptest! {
    #[test]
    fn order_matches_enumeration((n, gens) in arb_gens()) {
        let all = elements(n, &gens);
        let g = PermGroup::new(n, gens.clone()).unwrap();
        prop_assert_eq!(g.order(), all.len() as u128);
        prop_assert_eq!(g.basic_orbit_lengths().iter().map(|&x| x as u128).product::<u128>(), g.order());
        for orbit in g.orbits() {
            prop_assert_eq!(g.order() % orbit.len() as u128, 0);
        }
        for x in &all {
            prop_assert!(g.contains(&Perm::new(x.clone()).unwrap()));
        }
    }

    #[test]
    fn adding_a_generator_gives_a_multiple((n, gens) in arb_gens(), extra in 0usize..5040) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let mut v: Vec<u32> = (0..n as u32).collect();
        let mut k = extra;
        for i in (1..n).rev() {
            v.swap(i, k % (i + 1));
            k /= i + 1;
        }
        let h = Perm::new(v).unwrap();
        let mut more = gens;
        more.push(h.clone());
        let big = PermGroup::new(n, more).unwrap();
        prop_assert_eq!(big.order() % g.order(), 0);
        prop_assert!(big.contains(&h));
        prop_assert_eq!(big.order() == g.order(), g.contains(&h));
    }

    #[test]
    fn canonical_form_ignores_labels(gr in arb_graph(), seed in any::<u64>()) {
        let n = gr.order();
        let mut v: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            v.swap(i, (s % (i as u64 + 1)) as usize);
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        }
        let relabelled = gr.relabel(&Perm::new(v).unwrap());
        prop_assert_eq!(canonical_form(&gr, 64).unwrap(), canonical_form(&relabelled, 64).unwrap());
        prop_assert!(are_isomorphic(&gr, &relabelled, 64).unwrap());
    }

    #[test]
    fn automorphism_group_of_small_graphs(gr in arb_graph()) {
        let aut = full_automorphism_group(&gr, 64).unwrap();
        for g in &aut.generators {
            prop_assert!(gr.is_automorphism(g));
        }
        // Brute force over every vertex permutation.
        let n = gr.order();
        prop_assume!(n <= 7);
        let mut count = 0u128;
        let mut v: Vec<u32> = (0..n as u32).collect();
        permutations(&mut v, 0, &mut |p| {
            if gr.is_automorphism(&Perm::new(p.to_vec()).unwrap()) {
                count += 1;
            }
        });
        prop_assert_eq!(aut.order, count);
    }
}

fn permutations(v: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[test]
fn classical_automorphism_groups() {
    let petersen: Vec<(u32, u32)> = (0..5)
        .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
        .collect();
    let cube: Vec<(u32, u32)> =
        (0..8u32).flat_map(|u| (0..3).map(move |b| (u, u ^ 1 << b))).filter(|(u, v)| u < v).collect();
    let k5: Vec<(u32, u32)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    for (g, want) in [
        (graph(10, &petersen), 120u128),
        (graph(8, &cube), 48),
        (graph(5, &k5), 120),
        (SimpleGraph::cycle(9), 18),
    ] {
        assert_eq!(full_automorphism_group(&g, DEFAULT_AUT_LIMIT).unwrap().order, want);
    }
    let big = SimpleGraph::cycle(DEFAULT_AUT_LIMIT + 1);
    assert!(full_automorphism_group(&big, DEFAULT_AUT_LIMIT).is_err());
}

#[test]
fn symmetric_group_orders() {
    for n in 2..=9usize {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let mut swap: Vec<u32> = (0..n as u32).collect();
        swap.swap(0, 1);
        let g = PermGroup::new(n, vec![Perm::new(cycle).unwrap(), Perm::new(swap).unwrap()]).unwrap();
        assert_eq!(g.order(), (1..=n as u128).product());
        assert!(g.is_transitive());
    }
}

#[test]
fn lifted_generators_lie_in_the_automorphism_group() {
    for eps in [0u8, 1] {
        for (p, n) in [(7u64, 3usize), (3, 4), (5, 3)] {
            let lat = DivisorLattice::new(n, eps, p).unwrap();
            for g in lat.divisors() {
                let Ok(gamma) = build_cover(g, n, eps) else { continue };
                if gamma.order() > DEFAULT_AUT_LIMIT {
                    continue;
                }
                let report = max_lifting_group(&lat.info(g).unwrap()).unwrap();
                let aut = full_automorphism_group(&SimpleGraph::from(&gamma), DEFAULT_AUT_LIMIT)
                    .unwrap()
                    .group();
                for h in lifted_generators(&report, &gamma).unwrap() {
                    assert!(aut.contains(&h), "{}", gamma.header());
                }
            }
        }
    }
}
