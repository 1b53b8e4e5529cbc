mod common;

use std::collections::BTreeSet;

use hypermoduli::central::central_walk_from;
use hypermoduli::cover::FiberKind;
use hypermoduli::tree::Vertex;
use hypermoduli::{
    build_cover, canonical_code, classify_stratum, contract_to_form, enumerate, f_g_exponents, find_central, reduce,
    stable_model, validate_stable, CentralResult, ExponentVector, VertexId, WeightedTree,
};
use proptest::prelude::*;

/// Stable tree on up to `max_n` vertices with shuffled, sparse vertex ids.
fn stable_tree(max_n: usize, max_extra: u32) -> impl Strategy<Value = WeightedTree> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec(0..n, n.saturating_sub(2)),
                prop::collection::vec(0..=max_extra, n),
                Just((0..n as u32).map(|i| 3 * i + 1).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, seq, extra, ids)| build(n, &seq, &extra, &ids))
}

fn build(n: usize, seq: &[usize], extra: &[u32], ids: &[u32]) -> WeightedTree {
    let edges = common::prufer_edges(n, seq);
    let mut degree = vec![0u32; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let vertices =
        (0..n).map(|i| Vertex { id: VertexId(ids[i]), weight: 3u32.saturating_sub(degree[i]) + extra[i] }).collect();
    let edges = edges.iter().map(|&(a, b)| (VertexId(ids[a]), VertexId(ids[b]))).collect();
    WeightedTree::new(vertices, edges).unwrap()
}

/// The same tree with vertex ids remapped by `perm`.
fn relabel(t: &WeightedTree, perm: &[u32]) -> WeightedTree {
    let index: Vec<VertexId> = t.vertices().iter().map(|v| v.id).collect();
    let map = |v: VertexId| VertexId(perm[index.iter().position(|&x| x == v).unwrap()]);
    let vertices = t.vertices().iter().map(|v| Vertex { id: map(v.id), weight: v.weight }).collect();
    let edges = t.edges().iter().map(|&(a, b)| (map(a), map(b))).collect();
    WeightedTree::new(vertices, edges).unwrap()
}

fn tree_and_relabeling(max_n: usize, max_extra: u32) -> impl Strategy<Value = (WeightedTree, WeightedTree)> {
    stable_tree(max_n, max_extra).prop_flat_map(|t| {
        let n = t.vertex_count() as u32;
        (Just(t), Just((100..100 + n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|(t, perm)| {
            let r = relabel(&t, &perm);
            (t, r)
        })
    })
}

fn even(t: &WeightedTree) -> bool {
    t.total_weight().is_multiple_of(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_trees_are_stable(t in stable_tree(8, 3)) {
        prop_assert!(validate_stable(&t).stable);
    }

    #[test]
    fn canonical_code_matches_brute_force_isomorphism(a in stable_tree(5, 1), b in stable_tree(5, 1)) {
        prop_assert_eq!(canonical_code(&a) == canonical_code(&b), common::brute_isomorphic(&a, &b));
    }

    #[test]
    fn canonical_code_ignores_labels((t, r) in tree_and_relabeling(7, 2)) {
        prop_assert!(common::brute_isomorphic(&t, &r));
        prop_assert_eq!(canonical_code(&t), canonical_code(&r));
    }

    #[test]
    fn complementary_weights_partition_m(t in stable_tree(8, 3)) {
        let m = t.total_weight();
        for v in t.vertices() {
            let sides = t.complementary_subtree_weights(v.id).unwrap();
            prop_assert_eq!(sides.len(), t.degree(v.id).unwrap());
            prop_assert_eq!(sides.iter().sum::<u32>() + v.weight, m);
        }
        for ((a, b), wa, wb) in common::edge_sides(&t) {
            prop_assert_eq!(t.edge_split(a, b).unwrap(), (wa, wb));
        }
    }

    #[test]
    fn central_vertex_is_unique_and_reached(t in stable_tree(8, 3)) {
        let result = find_central(&t).unwrap();
        let centers = common::central_vertices(&t);
        if common::has_half_weight_edge(&t) {
            prop_assert!(centers.is_empty());
            let is_edge = matches!(result, CentralResult::SemistableEdge { .. });
            prop_assert!(is_edge);
        } else {
            prop_assert_eq!(centers.len(), 1);
            prop_assert_eq!(result, CentralResult::CentralVertex { vertex: centers[0] });
            for v in t.vertices() {
                let walk = central_walk_from(&t, v.id).unwrap();
                prop_assert_eq!(walk.iter().collect::<BTreeSet<_>>().len(), walk.len());
                prop_assert_eq!(walk.last(), Some(&centers[0]));
            }
        }
    }

    #[test]
    fn json_round_trip(t in stable_tree(7, 3)) {
        let back = WeightedTree::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(canonical_code(&back), canonical_code(&t));
    }

    #[test]
    fn constructions_commute_with_relabeling((t, r) in tree_and_relabeling(7, 3)) {
        prop_assert_eq!(contract_to_form(&t).unwrap(), contract_to_form(&r).unwrap());
        if even(&t) {
            prop_assert_eq!(classify_stratum(&t).unwrap(), classify_stratum(&r).unwrap());
            let a = stable_model(&build_cover(&t).unwrap()).unwrap();
            let b = stable_model(&build_cover(&r).unwrap()).unwrap();
            prop_assert_eq!(a.code, b.code);
        }
    }

    #[test]
    fn cover_agrees_with_leaf_stripping(t in stable_tree(8, 3).prop_filter("even m", even)) {
        let cover = build_cover(&t).unwrap();
        let oracle = common::leaf_stripping(&t);
        prop_assert_eq!(cover.arithmetic_genus(), (t.total_weight() as i64 - 2) / 2);
        prop_assert!(cover.is_connected());
        for f in &cover.fibers {
            prop_assert_eq!(oracle.ramified[&f.base_edge], f.kind == FiberKind::Ramified);
            prop_assert_eq!(f.nodes.len(), if f.kind == FiberKind::Ramified { 1 } else { 2 });
        }
        for c in &cover.components {
            prop_assert_eq!(c.branch_count, oracle.branch_count[&c.base_vertex]);
        }
        let model = stable_model(&cover).unwrap();
        prop_assert_eq!(model.arithmetic_genus(), cover.arithmetic_genus());
        if cover.genus >= 2 {
            prop_assert!(model.is_stable());
        }
    }

    #[test]
    fn map_to_forms_commutes(t in stable_tree(8, 3).prop_filter("even m", even)) {
        let f = f_g_exponents(&t).unwrap();
        prop_assert_eq!(&f, &contract_to_form(&t).unwrap());
        prop_assert_eq!(f.sorted_multiplicities(), common::tail_reconstruction(&t));
    }

    #[test]
    fn reduction_ignores_root_order(
        (parts, perm) in prop::collection::vec(1u32..=6, 2..=8)
            .prop_filter("even total of at least 6", |p| p.iter().sum::<u32>() % 2 == 0 && p.iter().sum::<u32>() >= 6)
            .prop_flat_map(|p| { let q = p.clone(); (Just(p), Just(q).prop_shuffle()) })
    ) {
        let a = reduce(&ExponentVector::new(0, parts.clone()).unwrap());
        let b = reduce(&ExponentVector::new(0, perm).unwrap());
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let shape = |o: &hypermoduli::ReductionOutput| {
                    let mut tails: Vec<_> = o.tails.iter().map(|t| (t.exponent, t.genus, t.attachments)).collect();
                    tails.sort_unstable();
                    (o.central.clone(), tails, o.extra_nodes, o.arithmetic_genus)
                };
                prop_assert_eq!(shape(&a), shape(&b));
                prop_assert_eq!(a.arithmetic_genus, a.genus);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }
}

#[test]
fn brute_force_candidates_split_by_stability() {
    for m in 3..=5 {
        let census: BTreeSet<_> = enumerate(m).unwrap().classes.into_iter().map(|c| c.code).collect();
        let mut seen_stable = BTreeSet::new();
        common::prufer_candidates(m, false, |t| {
            let code = canonical_code(&t);
            if validate_stable(&t).stable {
                seen_stable.insert(code);
            } else {
                assert!(!census.contains(&code), "unstable {} in census", t.to_json());
            }
        });
        assert_eq!(seen_stable, census, "m={m}");
    }
}

#[test]
fn blowup_simulation_small_cases() {
    assert_eq!(common::simulate_blowups(2), vec![2]);
    assert_eq!(common::simulate_blowups(3), vec![2, 3, 6]);
    assert_eq!(common::simulate_blowups(4), vec![2, 4]);
    assert_eq!(common::simulate_blowups(5), vec![2, 4, 5, 10]);
}
