//! Second phase: treat the membership table as a transaction database,
//! compress it into an FP-tree, prune weak branches and mine the maximal
//! frequent patterns.

mod apriori;
mod mine;
mod transactions;
mod tree;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParamError;

pub use apriori::{apriori_maximal, APRIORI_MAX_ITEMS, APRIORI_MAX_TRANSACTIONS};
pub use mine::{mine_maximal, mine_maximal_within};
pub use transactions::{min_count, min_count_from_sup, to_transactions, TransactionDb, Transactions};
pub use tree::{build_fp_tree, knee_prune, FpTree, NodeView};

/// Index into a [`TransactionDb`]'s item catalog.
pub type ItemId = u32;

/// A base cluster: cluster `cluster` of subspace `subspace`.
///
/// Ordering is lexicographic by `(subspace, cluster)`. `Display` uses the
/// 1-based `(S<subspace>,<cluster>)` notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Item {
    pub subspace: u32,
    pub cluster: u32,
}

impl Item {
    pub const fn new(subspace: u32, cluster: u32) -> Self {
        Self { subspace, cluster }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(S{},{})", self.subspace + 1, self.cluster + 1)
    }
}

impl FromStr for Item {
    type Err = ParamError;

    /// Parses the 1-based `(S6,1)` form printed by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParamError::Item(s.to_owned());
        let inner = s
            .trim()
            .strip_prefix("(S")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (sub, cluster) = inner.split_once(',').ok_or_else(bad)?;
        let sub: u32 = sub.trim().parse().map_err(|_| bad())?;
        let cluster: u32 = cluster.trim().parse().map_err(|_| bad())?;
        if sub == 0 || cluster == 0 {
            return Err(bad());
        }
        Ok(Item::new(sub - 1, cluster - 1))
    }
}

/// How items with equal support are ordered in the FP-tree.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// By `(subspace, cluster)`.
    #[default]
    Lexicographic,
    /// By position in the list; unlisted items follow, lexicographically.
    Explicit(Vec<Item>),
}

impl TieBreak {
    fn key(&self, item: &Item) -> (usize, Item) {
        match self {
            TieBreak::Lexicographic => (0, *item),
            TieBreak::Explicit(list) => (
                list.iter().position(|x| x == item).unwrap_or(list.len()),
                *item,
            ),
        }
    }

    /// `lexicographic`, or a list of items such as `(S6,1),(S1,1),(S2,1)`.
    pub fn parse(s: &str) -> Result<Self, ParamError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("lexicographic") {
            return Ok(TieBreak::Lexicographic);
        }
        let items = s
            .split_inclusive(')')
            .map(|t| t.trim_start_matches([',', ' ']))
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Item>, _>>()?;
        if items.is_empty() {
            return Err(ParamError::Item(s.to_owned()));
        }
        Ok(TieBreak::Explicit(items))
    }

    /// Strict total order: higher support first, then this rule.
    pub fn compare(&self, a: (&Item, usize), b: (&Item, usize)) -> Ordering {
        b.1.cmp(&a.1)
            .then_with(|| self.key(a.0).cmp(&self.key(b.0)))
    }
}

/// A maximal frequent itemset. Items are listed in tree rank order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub items: Vec<Item>,
    pub support: usize,
}

impl Pattern {
    /// Items sorted lexicographically, for order-independent comparison.
    pub fn sorted_items(&self) -> Vec<Item> {
        let mut items = self.items.clone();
        items.sort_unstable();
        items
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, "}}:{}", self.support)
    }
}

/// Sort patterns by support (descending), then by their rank sequences.
pub(crate) fn sort_patterns(patterns: &mut [(Vec<u32>, usize)]) {
    for (ranks, _) in patterns.iter_mut() {
        ranks.sort_unstable();
    }
    patterns.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
}
