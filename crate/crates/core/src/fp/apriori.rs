//! Level-wise reference miner for small databases. Slow and simple on
//! purpose: supports come from testing every transaction against every
//! candidate.

use std::collections::HashSet;

use super::transactions::rank_items;
use super::{sort_patterns, Pattern, TieBreak, TransactionDb};
use crate::error::OracleError;

pub const APRIORI_MAX_ITEMS: usize = 20;
pub const APRIORI_MAX_TRANSACTIONS: usize = 64;

/// All maximal itemsets with support >= `min_count`, ordered like
/// [`super::mine_maximal`] under the lexicographic tie-break.
pub fn apriori_maximal(db: &TransactionDb, min_count: usize) -> Result<Vec<Pattern>, OracleError> {
    let items = db.items().len();
    if items > APRIORI_MAX_ITEMS || db.len() > APRIORI_MAX_TRANSACTIONS {
        return Err(OracleError::TooLarge {
            items,
            transactions: db.len(),
            max_items: APRIORI_MAX_ITEMS,
            max_transactions: APRIORI_MAX_TRANSACTIONS,
        });
    }
    let min_count = min_count.max(1);
    let masks: Vec<u32> = db
        .iter()
        .map(|t| t.iter().fold(0u32, |m, &id| m | (1 << id)))
        .collect();
    let support = |set: u32| masks.iter().filter(|&&t| t & set == set).count();

    let singles: Vec<u32> = (0..items as u32)
        .map(|i| 1u32 << i)
        .filter(|&s| support(s) >= min_count)
        .collect();
    let mut frequent: HashSet<u32> = singles.iter().copied().collect();
    let mut level = singles.clone();
    while !level.is_empty() {
        let mut next = HashSet::new();
        for &set in &level {
            let top = 31 - set.leading_zeros();
            for &single in &singles {
                if single.trailing_zeros() <= top {
                    continue;
                }
                let candidate = set | single;
                let closed = (0..items)
                    .filter(|&i| candidate & (1 << i) != 0)
                    .all(|i| frequent.contains(&(candidate & !(1 << i))));
                if closed && support(candidate) >= min_count {
                    next.insert(candidate);
                }
            }
        }
        frequent.extend(next.iter().copied());
        level = next.into_iter().collect();
    }

    let supports: Vec<usize> = (0..items).map(|i| support(1 << i)).collect();
    let ranking = rank_items(db.items(), &supports, min_count, &TieBreak::Lexicographic);
    let mut rank_of = vec![0u32; items];
    for (r, &id) in ranking.iter().enumerate() {
        rank_of[id as usize] = r as u32;
    }

    let mut maximal: Vec<(Vec<u32>, usize)> = frequent
        .iter()
        .copied()
        .filter(|&set| {
            singles
                .iter()
                .all(|&s| set & s != 0 || !frequent.contains(&(set | s)))
        })
        .map(|set| {
            let ranks = (0..items)
                .filter(|&i| set & (1 << i) != 0)
                .map(|i| rank_of[i])
                .collect();
            (ranks, support(set))
        })
        .collect();
    sort_patterns(&mut maximal);
    Ok(maximal
        .into_iter()
        .map(|(ranks, support)| Pattern {
            items: ranks
                .iter()
                .map(|&r| db.items()[ranking[r as usize] as usize])
                .collect(),
            support,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Item;

    #[test]
    fn unanimous_items_only() {
        let a = Item::new(0, 0);
        let b = Item::new(1, 0);
        let c = Item::new(2, 0);
        let db = TransactionDb::from_item_sets([vec![a, b], vec![a, c], vec![a, b, c]]);
        let mined = apriori_maximal(&db, 3).unwrap();
        assert_eq!(
            mined,
            vec![Pattern {
                items: vec![a],
                support: 3
            }]
        );
        let none = TransactionDb::from_item_sets([vec![b], vec![c]]);
        assert!(apriori_maximal(&none, 2).unwrap().is_empty());
    }

    #[test]
    fn single_transaction() {
        let items: Vec<Item> = (0..3).map(|s| Item::new(s, 0)).collect();
        let db = TransactionDb::from_item_sets([items.clone()]);
        assert_eq!(
            apriori_maximal(&db, 1).unwrap(),
            vec![Pattern { items, support: 1 }]
        );
    }

    #[test]
    fn refuses_large_inputs() {
        let wide = TransactionDb::from_item_sets([(0..21).map(|s| Item::new(s, 0)).collect::<Vec<_>>()]);
        assert!(apriori_maximal(&wide, 1).is_err());
        let tall = TransactionDb::from_item_sets(vec![vec![Item::new(0, 0)]; 65]);
        assert!(apriori_maximal(&tall, 1).is_err());
    }
}
