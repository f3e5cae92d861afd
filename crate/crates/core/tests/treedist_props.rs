mod common;

use common::{is_proper_ancestor, parents, sim_tree};
use corex::treedist::{
    brute_force_rtdm, brute_force_stm, project_sim, rtdm, simple_tree_matching,
    simple_tree_matching_counted, stm_mapping, stm_normalized, validate_mapping, Mapping, SimTree,
    UnitCosts,
};
use proptest::prelude::*;

/// The three mapping conditions evaluated pair by pair from parent links.
fn mapping_conditions_hold(m: &[(usize, usize)], a: &SimTree, b: &SimTree) -> bool {
    let (pa, pb) = (parents(a), parents(b));
    let left = |p: &[Option<usize>], x: usize, y: usize| x < y && !is_proper_ancestor(p, x, y);
    m.iter().all(|&(i1, j1)| {
        m.iter().all(|&(i2, j2)| {
            (i1 == i2) == (j1 == j2)
                && left(&pa, i1, i2) == left(&pb, j1, j2)
                && is_proper_ancestor(&pa, i1, i2) == is_proper_ancestor(&pb, j1, j2)
        })
    })
}

fn unit() -> UnitCosts {
    UnitCosts::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn stm_self_similarity(a in sim_tree(30, 3)) {
        prop_assert_eq!(simple_tree_matching(&a, &a), a.size());
        prop_assert_eq!(stm_normalized(&a, &a), 1.0);
    }

    #[test]
    fn stm_symmetric_and_bounded(a in sim_tree(30, 3), b in sim_tree(30, 3)) {
        let ab = simple_tree_matching(&a, &b);
        prop_assert_eq!(ab, simple_tree_matching(&b, &a));
        prop_assert!(ab <= a.size().min(b.size()));
        let n = stm_normalized(&a, &b);
        prop_assert!((0.0..=1.0).contains(&n));
    }

    #[test]
    fn stm_call_count_bound(a in sim_tree(30, 2), b in sim_tree(30, 2)) {
        let (value, calls) = simple_tree_matching_counted(&a, &b);
        prop_assert_eq!(value, simple_tree_matching(&a, &b));
        prop_assert!(calls <= ((a.size() + 1) * (b.size() + 1)) as u64);
    }

    #[test]
    fn stm_matches_enumeration(a in sim_tree(8, 3), b in sim_tree(8, 3)) {
        prop_assert_eq!(simple_tree_matching(&a, &b), brute_force_stm(&a, &b).unwrap());
    }

    #[test]
    fn stm_mapping_is_valid_and_optimal(a in sim_tree(12, 3), b in sim_tree(12, 3)) {
        let m = stm_mapping(&a, &b);
        prop_assert!(validate_mapping(&m, &a, &b));
        prop_assert!(mapping_conditions_hold(m.pairs(), &a, &b));
        prop_assert_eq!(m.len(), simple_tree_matching(&a, &b));
        let (la, lb) = (a.preorder(), b.preorder());
        for &(i, j) in m.pairs() {
            prop_assert_eq!(la[i].label(), lb[j].label());
        }
    }

    #[test]
    fn validate_mapping_agrees_with_definition(
        a in sim_tree(6, 2),
        b in sim_tree(6, 2),
        raw in prop::collection::vec((0usize..6, 0usize..6), 0..5),
    ) {
        let pairs: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(i, j)| (i % a.size(), j % b.size()))
            .collect();
        let m = Mapping::new(pairs.clone());
        prop_assert_eq!(validate_mapping(&m, &a, &b), mapping_conditions_hold(&pairs, &a, &b));
    }

    #[test]
    fn rtdm_identity(a in sim_tree(30, 3)) {
        prop_assert_eq!(rtdm(&a, &a, &unit()), 0.0);
        prop_assert_eq!(rtdm(&a, &a.clone(), &UnitCosts::with_epsilon(0.0)), 0.0);
    }

    #[test]
    fn rtdm_symmetric_and_bounded(a in sim_tree(25, 3), b in sim_tree(25, 3)) {
        let ab = rtdm(&a, &b, &unit());
        prop_assert_eq!(ab, rtdm(&b, &a, &unit()));
        prop_assert!(ab >= 0.0);
        prop_assert!(ab <= (a.size() + b.size()) as f64);
    }

    #[test]
    fn rtdm_matches_enumeration(a in sim_tree(6, 3), b in sim_tree(6, 3)) {
        prop_assert_eq!(rtdm(&a, &b, &unit()), brute_force_rtdm(&a, &b, &unit()).unwrap());
    }

    #[test]
    fn pruning_never_lowers_cost(a in sim_tree(15, 3), b in sim_tree(15, 3), eps in 0.0f64..4.0) {
        let free = rtdm(&a, &b, &unit());
        let pruned = rtdm(&a, &b, &UnitCosts::with_epsilon(eps));
        prop_assert!(pruned >= free);
        prop_assert!(pruned.is_finite());
    }

    #[test]
    fn notation_round_trips(a in sim_tree(20, 4)) {
        let back: SimTree = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn projection_drops_text() {
    let tree = corex::parse_html("<div><p>x</p><p>y<br></p></div><script>z</script>", "t");
    let sim = project_sim(&tree);
    assert_eq!(sim.to_string(), "document(div(p,p(br)),script)");
    assert_eq!(sim.size(), 6);
}
