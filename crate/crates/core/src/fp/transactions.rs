use std::collections::BTreeSet;

use super::{Item, ItemId, TieBreak};
use crate::base_search::MembershipTable;
use crate::error::ParamError;

/// Read access to a transaction database, one full pass at a time.
pub trait Transactions {
    fn num_transactions(&self) -> usize;

    /// Item labels, indexed by [`ItemId`] and sorted lexicographically.
    fn catalog(&self) -> &[Item];

    /// Visit every transaction once, in order.
    fn scan(&self, visit: &mut dyn FnMut(&[ItemId]));
}

/// One transaction per point; items are the base clusters covering it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDb {
    catalog: Vec<Item>,
    supports: Vec<usize>,
    transactions: Vec<Vec<ItemId>>,
}

impl TransactionDb {
    /// Build from explicit item sets. Duplicate items within a transaction
    /// are collapsed.
    pub fn from_item_sets<I>(sets: I) -> Self
    where
        I: IntoIterator,
        I::Item: IntoIterator<Item = Item>,
    {
        let sets: Vec<BTreeSet<Item>> = sets
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let catalog: Vec<Item> = sets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut supports = vec![0; catalog.len()];
        let transactions = sets
            .iter()
            .map(|set| {
                set.iter()
                    .map(|item| {
                        let id = catalog.binary_search(item).expect("catalog holds every item");
                        supports[id] += 1;
                        id as ItemId
                    })
                    .collect()
            })
            .collect();
        Self {
            catalog,
            supports,
            transactions,
        }
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn items(&self) -> &[Item] {
        &self.catalog
    }

    pub fn support(&self, id: ItemId) -> usize {
        self.supports[id as usize]
    }

    pub fn id_of(&self, item: &Item) -> Option<ItemId> {
        self.catalog.binary_search(item).ok().map(|i| i as ItemId)
    }

    /// Item ids of transaction `i`, ascending.
    pub fn transaction(&self, i: usize) -> &[ItemId] {
        &self.transactions[i]
    }

    pub fn transaction_items(&self, i: usize) -> impl Iterator<Item = Item> + '_ {
        self.transactions[i].iter().map(|&id| self.catalog[id as usize])
    }

    pub fn iter(&self) -> impl Iterator<Item = &[ItemId]> {
        self.transactions.iter().map(Vec::as_slice)
    }

    /// Item ids with support >= `min_count` in rank order.
    pub fn ranking(&self, min_count: usize, tie_break: &TieBreak) -> Vec<ItemId> {
        rank_items(&self.catalog, &self.supports, min_count, tie_break)
    }

    /// Indices of the transactions containing every item of `items`.
    pub fn containing(&self, items: &[Item]) -> Option<Vec<usize>> {
        let mut ids: Vec<ItemId> = items
            .iter()
            .map(|item| self.id_of(item))
            .collect::<Option<_>>()?;
        ids.sort_unstable();
        Some(
            self.transactions
                .iter()
                .enumerate()
                .filter(|(_, t)| is_sorted_subset(&ids, t))
                .map(|(i, _)| i)
                .collect(),
        )
    }
}

pub(crate) fn is_sorted_subset(needle: &[ItemId], hay: &[ItemId]) -> bool {
    let mut hay = hay.iter();
    needle.iter().all(|x| hay.any(|y| y == x))
}

pub(crate) fn rank_items(
    catalog: &[Item],
    supports: &[usize],
    min_count: usize,
    tie_break: &TieBreak,
) -> Vec<ItemId> {
    let mut ids: Vec<ItemId> = (0..catalog.len() as ItemId)
        .filter(|&id| supports[id as usize] >= min_count)
        .collect();
    ids.sort_by(|&a, &b| {
        tie_break.compare(
            (&catalog[a as usize], supports[a as usize]),
            (&catalog[b as usize], supports[b as usize]),
        )
    });
    ids
}

impl Transactions for TransactionDb {
    fn num_transactions(&self) -> usize {
        self.transactions.len()
    }

    fn catalog(&self) -> &[Item] {
        &self.catalog
    }

    fn scan(&self, visit: &mut dyn FnMut(&[ItemId])) {
        for t in &self.transactions {
            visit(t);
        }
    }
}

/// Row `i` of the table becomes transaction `i`. Rows with no present cell
/// give empty transactions so point indices stay aligned.
pub fn to_transactions(z: &MembershipTable) -> TransactionDb {
    let rows = (0..z.n()).map(|i| {
        z.row(i)
            .map(|(j, c)| Item::new(j as u32, c))
            .collect::<Vec<_>>()
    });
    TransactionDb::from_item_sets(rows)
}

/// Absolute support threshold for a minimum cluster size.
pub fn min_count(min_cluster_size: usize, n: usize) -> Result<usize, ParamError> {
    if min_cluster_size == 0 || min_cluster_size > n {
        return Err(ParamError::MinClusterSize {
            size: min_cluster_size,
            n,
        });
    }
    Ok(min_cluster_size)
}

/// Absolute support threshold `ceil(min_sup * n)` for a fractional support.
pub fn min_count_from_sup(min_sup: f64, n: usize) -> Result<usize, ParamError> {
    if !(min_sup > 0.0 && min_sup <= 1.0) {
        return Err(ParamError::MinSup(min_sup));
    }
    // absorb representation error, e.g. 0.1 * 900 = 90.00000000000001
    let count = (min_sup * n as f64 - 1e-9).ceil().max(1.0) as usize;
    min_count(count, n)
}
