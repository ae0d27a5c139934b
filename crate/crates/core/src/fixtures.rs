//! The five-point running example: a hand-written membership table over six
//! two-dimensional subspaces, the item order of its reference FP-tree
//! drawing, and the two clusters it should produce.
//!
//! Subspaces are the six pairs of a 4-dimensional space, so `S1 = {0,1}`,
//! `S2 = {0,2}`, `S3 = {0,3}`, `S4 = {1,2}`, `S5 = {1,3}`, `S6 = {2,3}`.
//! Cluster ids are stored 0-based; `Item`'s `Display` prints them 1-based.

use crate::base_search::{enumerate_subspaces, MembershipTable, Policy};
use crate::dataset::{GroundTruth, TruthCluster};
use crate::fp::{to_transactions, Item, TieBreak, TransactionDb};

const ROWS: [[u32; 6]; 5] = [
    [1, 1, 1, 0, 0, 1],
    [1, 1, 2, 1, 0, 1],
    [1, 1, 3, 0, 1, 1],
    [2, 2, 4, 2, 1, 1],
    [2, 2, 4, 2, 2, 1],
];

/// `(S<s>,<c>)` in the 1-based notation of the running example.
pub const fn item(s: u32, c: u32) -> Item {
    Item::new(s - 1, c - 1)
}

/// Membership table of the running example; 0 in `ROWS` marks an absent
/// cell.
pub fn running_example_table() -> MembershipTable {
    let subspaces = enumerate_subspaces(4, 2, Policy::All, 0).expect("six pairs of four dims");
    let rows: Vec<Vec<Option<u32>>> = ROWS
        .iter()
        .map(|r| r.iter().map(|&c| c.checked_sub(1)).collect())
        .collect();
    MembershipTable::from_rows(subspaces, &rows)
}

pub fn running_example_transactions() -> TransactionDb {
    to_transactions(&running_example_table())
}

/// Item order of the reference tree drawing: support first, then this
/// order among the support-2 items.
pub fn drawing_rank() -> TieBreak {
    TieBreak::Explicit(vec![
        item(6, 1),
        item(1, 1),
        item(2, 1),
        item(1, 2),
        item(2, 2),
        item(3, 4),
        item(5, 1),
        item(4, 2),
    ])
}

/// The two expected clusters: points `{x1,x2,x3}` and `{x4,x5}` with the
/// dimensions of their patterns' subspaces.
pub fn running_example_truth() -> GroundTruth {
    GroundTruth::from_clusters(
        5,
        vec![
            TruthCluster {
                points: vec![0, 1, 2],
                dims: vec![0, 1, 2, 3],
            },
            TruthCluster {
                points: vec![3, 4],
                dims: vec![0, 1, 2, 3],
            },
        ],
    )
}

/// Patterns of the expected clusters, in tree rank order.
pub fn running_example_patterns() -> [Vec<Item>; 2] {
    [
        vec![item(6, 1), item(1, 1), item(2, 1)],
        vec![item(6, 1), item(1, 2), item(2, 2), item(3, 4)],
    ]
}
