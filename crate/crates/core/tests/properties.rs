use proptest::prelude::*;
use subspace_fp::eval::{nmi_with, pair_scores_from_memberships, NmiNorm};
use subspace_fp::fp::{Item, TieBreak};
use subspace_fp::{build_fp_tree, knee_prune, mine_maximal, nmi, TransactionDb};

fn labels(len: usize) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (prop::collection::vec(0u8..4, len), prop::collection::vec(0u8..4, len))
}

fn brute_pairs(pred: &[Vec<usize>], truth: &[Vec<usize>]) -> (u64, u64, u64) {
    let share = |a: &[usize], b: &[usize]| a.iter().any(|x| b.contains(x));
    let (mut tp, mut fp, mut fn_) = (0, 0, 0);
    for i in 0..pred.len() {
        for j in i + 1..pred.len() {
            match (share(&pred[i], &pred[j]), share(&truth[i], &truth[j])) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_ += 1,
                _ => {}
            }
        }
    }
    (tp, fp, fn_)
}

fn memberships(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0usize..3, 0..3), n)
        .prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn database() -> impl Strategy<Value = Vec<Vec<Item>>> {
    let transaction = prop::collection::btree_set((0u32..3, 0u32..3), 0..6)
        .prop_map(|set| set.into_iter().map(|(s, c)| Item::new(s, c)).collect::<Vec<_>>());
    prop::collection::vec(transaction, 1..30)
}

proptest! {
    #[test]
    fn nmi_is_bounded_and_symmetric((a, b) in (2usize..30).prop_flat_map(labels)) {
        for norm in [NmiNorm::Arithmetic, NmiNorm::Geometric] {
            let ab = nmi_with(&a, &b, norm).unwrap();
            let ba = nmi_with(&b, &a, norm).unwrap();
            prop_assert!((0.0..=1.0).contains(&ab));
            prop_assert_eq!(ab.to_bits(), ba.to_bits());
        }
    }

    #[test]
    fn relabelling_keeps_nmi_at_one(a in prop::collection::vec(0u8..5, 2..40)) {
        let renamed: Vec<u8> = a.iter().map(|x| 9 - x).collect();
        prop_assert!((nmi(&a, &renamed).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pair_scores_match_brute_force((pred, truth) in (2usize..20).prop_flat_map(|n| (memberships(n), memberships(n)))) {
        let s = pair_scores_from_memberships(&pred, &truth).unwrap();
        let (tp, fp, fn_) = brute_pairs(&pred, &truth);
        let p = if tp + fp == 0 { 0.0 } else { tp as f64 / (tp + fp) as f64 };
        let r = if tp + fn_ == 0 { 0.0 } else { tp as f64 / (tp + fn_) as f64 };
        prop_assert!((s.precision - p).abs() < 1e-12);
        prop_assert!((s.recall - r).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&s.f1));
    }

    #[test]
    fn patterns_after_pruning_are_frequent_in_the_data(sets in database(), min_count in 1usize..5, ratio in 1.0f64..4.0) {
        let db = TransactionDb::from_item_sets(sets);
        let tree = build_fp_tree(&db, min_count, &TieBreak::Lexicographic);
        let pruned = knee_prune(&tree, ratio);
        prop_assert!(pruned.node_count() <= tree.node_count());
        for p in mine_maximal(&pruned) {
            let holders = db.containing(&p.items).map_or(0, |v| v.len());
            prop_assert!(p.support >= min_count);
            prop_assert!(holders >= p.support);
        }
    }

    #[test]
    fn infinite_ratio_prunes_nothing(sets in database(), min_count in 1usize..4) {
        let db = TransactionDb::from_item_sets(sets);
        let tree = build_fp_tree(&db, min_count, &TieBreak::Lexicographic);
        prop_assert_eq!(knee_prune(&tree, f64::INFINITY).dump(), tree.dump());
    }
}
