mod common;

use coordgame::catalogue::{
    all_partitions, candidate_partitions, enumerate_connected_graphs, enumerate_equilibrium_partitions, expand,
    graph_isomorphic, partitions_isomorphic, LabeledPartition,
};
use coordgame::equilibria::{has_singleton_part, is_equilibrium, refine_to_connected};
use coordgame::graph::{complete_bipartite, Graph};

use common::{automorphisms, equivalent_by_automorphism, nash_oracle, push_forward};

fn zero_based(p: &LabeledPartition) -> Vec<usize> {
    p.labels().iter().map(|l| l - 1).collect()
}

fn equilibrium_candidates(g: &Graph) -> Vec<LabeledPartition> {
    candidate_partitions(g)
        .filter(|p| is_equilibrium(g, &p.to_partition()).unwrap())
        .collect()
}

#[test]
fn dedup_agrees_with_automorphism_search() {
    for n in 1..=6 {
        for g in enumerate_connected_graphs(n).unwrap() {
            let auts = automorphisms(&g);
            let eqs = equilibrium_candidates(&g);
            for a in &eqs {
                for b in &eqs {
                    let fast = partitions_isomorphic(&g, a, b);
                    let slow = equivalent_by_automorphism(&auts, &zero_based(a), &zero_based(b));
                    assert_eq!(fast, slow, "{a:?} vs {b:?} on {:?}", g.edge_list());
                }
            }
            // classes by the oracle
            let mut reps: Vec<&LabeledPartition> = Vec::new();
            for p in &eqs {
                if !reps.iter().any(|r| equivalent_by_automorphism(&auts, &zero_based(r), &zero_based(p))) {
                    reps.push(p);
                }
            }
            assert_eq!(enumerate_equilibrium_partitions(&g).len(), reps.len());
        }
    }
}

/// Isomorphic expansions only arise from partitions related by an
/// automorphism that also preserves labels.
#[test]
fn expansion_is_injective_up_to_symmetry() {
    for n in 2..=5 {
        for g in enumerate_connected_graphs(n).unwrap() {
            let auts = automorphisms(&g);
            let cands: Vec<LabeledPartition> = candidate_partitions(&g).collect();
            let expanded: Vec<Graph> = cands.iter().map(|p| expand(&g, p)).collect();
            for i in 0..cands.len() {
                for j in 0..cands.len() {
                    let iso = graph_isomorphic(&expanded[i], &expanded[j]);
                    let a = cands[i].labels();
                    let b = cands[j].labels();
                    let labeled_equiv = auts.iter().any(|s| push_forward(a, s) == b);
                    assert_eq!(iso, labeled_equiv, "{a:?} vs {b:?}");
                    if i != j {
                        assert_ne!(expanded[i], expanded[j]);
                    }
                }
            }
        }
    }
}

#[test]
fn census_partitions_are_well_formed() {
    for n in 2..=6 {
        for g in enumerate_connected_graphs(n).unwrap() {
            for p in enumerate_equilibrium_partitions(&g) {
                let q = p.to_partition();
                assert!(!has_singleton_part(&q));
                assert!(q.parts().iter().all(|s| g.induces_connected(s)));
                assert!(q.num_parts() <= 3);
                assert!(nash_oracle(&g, &zero_based(&p)));
            }
        }
    }
}

/// Singleton-free and refinement lemmas over every partition, not only the
/// candidates.
#[test]
fn lemmas_on_all_partitions() {
    for n in 2..=5 {
        for g in enumerate_connected_graphs(n).unwrap() {
            for p in all_partitions(n) {
                let q = p.to_partition();
                let eq = is_equilibrium(&g, &q).unwrap();
                assert_eq!(eq, nash_oracle(&g, &zero_based(&p)));
                if eq {
                    assert!(!has_singleton_part(&q), "{p:?}");
                    assert!(is_equilibrium(&g, &refine_to_connected(&g, &q)).unwrap());
                }
            }
        }
    }
}

#[test]
fn equilibrium_invariant_under_automorphisms() {
    for g in enumerate_connected_graphs(5).unwrap() {
        let auts = automorphisms(&g);
        for p in all_partitions(5) {
            let eq = is_equilibrium(&g, &p.to_partition()).unwrap();
            for s in &auts {
                let moved = LabeledPartition::new(push_forward(p.labels(), s)).unwrap();
                assert_eq!(is_equilibrium(&g, &moved.to_partition()).unwrap(), eq);
            }
            let reversed: Vec<usize> = p.labels().iter().map(|l| p.num_parts() + 1 - l).collect();
            let reversed = LabeledPartition::new(reversed).unwrap();
            assert_eq!(is_equilibrium(&g, &reversed.to_partition()).unwrap(), eq);
        }
    }
}

/// A d-part equilibrium class of K_{n,m} exists iff d divides both sides.
#[test]
fn complete_bipartite_divisibility() {
    for n in 1..=5 {
        for m in n..=5 {
            let g = complete_bipartite(n, m).unwrap().graph;
            let parts: Vec<usize> = enumerate_equilibrium_partitions(&g).iter().map(|p| p.num_parts()).collect();
            for d in 1..=n + m {
                let expected = n % d == 0 && m % d == 0;
                assert_eq!(parts.contains(&d), expected, "K_{{{n},{m}}} d={d}: {parts:?}");
            }
        }
    }
}
