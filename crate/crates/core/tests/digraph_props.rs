//! Invariants of the digraph model, cross-checked against independent
//! brute-force oracles.

use dicolor_core::digraph::{Acyclicity, Digraph, VertexSet};
use dicolor_core::instances::{gen_random_digraph, SeededRng};
use dicolor_core::structure::transitive_tournament;

use proptest::prelude::*;

fn arb_digraph(max_n: u32) -> impl Strategy<Value = Digraph> {
    (1..=max_n, any::<u64>(), 0..=10u32).prop_map(|(n, seed, p10)| {
        gen_random_digraph(n, f64::from(p10) / 10.0, seed).unwrap()
    })
}

/// Reachability closure by repeated squaring of the adjacency relation;
/// a digraph is cyclic iff some vertex reaches itself. Independent of the
/// source-peeling path used by `acyclicity`.
fn cyclic_by_closure(d: &Digraph) -> bool {
    let n = d.n() as usize;
    let mut reach = vec![vec![false; n]; n];
    for (u, v) in d.arcs() {
        reach[u as usize][v as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n).any(|i| reach[i][i])
}

/// Triple scan written directly from the definition: some rotation of the
/// three cycle arcs must be present.
fn has_triangle_by_triples(d: &Digraph) -> bool {
    let n = d.n();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u != v
                    && v != w
                    && u != w
                    && d.has_arc(u, v)
                    && d.has_arc(v, w)
                    && d.has_arc(w, u)
                {
                    return true;
                }
            }
        }
    }
    false
}

proptest! {
    #[test]
    fn neighborhood_partition_identity(d in arb_digraph(24)) {
        for v in 0..d.n() {
            let (out, inn, non) = d.neighborhoods(v).unwrap();
            prop_assert!(out.is_disjoint(&inn));
            prop_assert!(out.is_disjoint(&non));
            prop_assert!(inn.is_disjoint(&non));
            let mut all = out;
            all.union_with(&inn);
            all.union_with(&non);
            all.insert(v);
            prop_assert_eq!(all, VertexSet::full(d.n()));
        }
    }

    #[test]
    fn complement_of_x_splits_into_common_out_in_non(
        d in arb_digraph(16),
        bits in any::<u64>(),
    ) {
        let x = VertexSet::from_members(d.n(), (0..d.n()).filter(|v| bits >> v & 1 == 1));
        // V \ X = M+(X) | N-(X) | No(X)
        let mut covered = d.common_out(&x);
        for v in x.iter() {
            covered.union_with(d.in_neighbors(v));
            covered.union_with(&d.non_neighbors(v));
        }
        covered.remove_all(&x);
        let mut expected = x.complement();
        expected.remove_all(&x);
        prop_assert_eq!(covered, expected);
    }

    #[test]
    fn acyclicity_matches_closure(d in arb_digraph(6)) {
        prop_assert_eq!(d.is_acyclic(), !cyclic_by_closure(&d));
    }

    #[test]
    fn triangle_search_matches_triple_scan(d in arb_digraph(10)) {
        let found = d.find_directed_triangle();
        prop_assert_eq!(found.is_some(), has_triangle_by_triples(&d));
        if let Some((u, v, w)) = found {
            prop_assert!(d.has_arc(u, v) && d.has_arc(v, w) && d.has_arc(w, u));
        }
    }

    #[test]
    fn reverse_is_involution_and_preserves_cycles(d in arb_digraph(12)) {
        let r = d.reverse();
        prop_assert_eq!(r.reverse(), d.clone());
        prop_assert_eq!(d.is_acyclic(), r.is_acyclic());
    }
}

#[test]
fn every_triple_of_t4_induces_t3() {
    let t4 = transitive_tournament(4).unwrap();
    let t3 = transitive_tournament(3).unwrap();
    let mut triples = 0;
    for a in 0..4u32 {
        for b in (a + 1)..4 {
            for c in (b + 1)..4 {
                let (sub, _) = t4.induced(&VertexSet::from_members(4, [a, b, c]));
                assert_eq!(sub, t3);
                triples += 1;
            }
        }
    }
    assert_eq!(triples, 4);
}

#[test]
fn topological_order_witness_is_consistent() {
    let mut rng = SeededRng::new(404);
    for _ in 0..200 {
        let n = 2 + (rng.below(10) as u32);
        let d = gen_random_digraph(n, 0.4, rng.next_u64()).unwrap();
        match d.acyclicity() {
            Acyclicity::Acyclic { order } => {
                let mut pos = vec![0usize; n as usize];
                for (i, &v) in order.iter().enumerate() {
                    pos[v as usize] = i;
                }
                for (u, v) in d.arcs() {
                    assert!(pos[u as usize] < pos[v as usize]);
                }
            }
            Acyclicity::Cyclic { cycle } => {
                assert!(cycle.len() >= 3);
                for i in 0..cycle.len() {
                    assert!(d.has_arc(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
        }
    }
}
