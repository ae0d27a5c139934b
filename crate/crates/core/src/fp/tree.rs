use std::fmt::Write;

use super::transactions::rank_items;
use super::{Item, ItemId, TieBreak, Transactions};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Node {
    /// Local item index; `NONE` for the root.
    pub item: u32,
    pub count: usize,
    pub parent: u32,
    pub children: Vec<u32>,
    /// Next node carrying the same item.
    pub next: u32,
}

/// Prefix tree over local item indices `0..heads.len()`, where a smaller
/// index means a higher rank. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Arena {
    pub nodes: Vec<Node>,
    pub heads: Vec<u32>,
    tails: Vec<u32>,
    /// Sum of node counts per item.
    pub totals: Vec<usize>,
}

impl Arena {
    pub fn new(num_items: usize) -> Self {
        Self {
            nodes: vec![Node {
                item: NONE,
                count: 0,
                parent: NONE,
                children: Vec::new(),
                next: NONE,
            }],
            heads: vec![NONE; num_items],
            tails: vec![NONE; num_items],
            totals: vec![0; num_items],
        }
    }

    fn push_node(&mut self, item: u32, count: usize, parent: u32) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            item,
            count,
            parent,
            children: Vec::new(),
            next: NONE,
        });
        self.nodes[parent as usize].children.push(id);
        let slot = item as usize;
        match self.tails[slot] {
            NONE => self.heads[slot] = id,
            tail => self.nodes[tail as usize].next = id,
        }
        self.tails[slot] = id;
        self.totals[slot] += count;
        id
    }

    /// Insert a path of strictly increasing local items with weight `count`.
    pub fn insert(&mut self, path: &[u32], count: usize) {
        let mut cur = 0u32;
        for &item in path {
            let existing = self.nodes[cur as usize]
                .children
                .iter()
                .copied()
                .find(|&c| self.nodes[c as usize].item == item);
            cur = match existing {
                Some(child) => {
                    self.nodes[child as usize].count += count;
                    self.totals[item as usize] += count;
                    child
                }
                None => self.push_node(item, count, cur),
            };
        }
    }

    /// Nodes of the only root-to-leaf path, or `None` if the tree branches.
    pub fn single_path(&self) -> Option<Vec<u32>> {
        let mut path = Vec::new();
        let mut cur = 0usize;
        loop {
            match self.nodes[cur].children.as_slice() {
                [] => return Some(path),
                [only] => {
                    path.push(*only);
                    cur = *only as usize;
                }
                _ => return None,
            }
        }
    }

    pub fn chain(&self, item: u32) -> impl Iterator<Item = u32> + '_ {
        let mut cur = self.heads[item as usize];
        std::iter::from_fn(move || {
            (cur != NONE).then(|| {
                let id = cur;
                cur = self.nodes[id as usize].next;
                id
            })
        })
    }

    /// Items strictly above `node`, nearest first.
    pub fn ancestors(&self, node: u32) -> impl Iterator<Item = u32> + '_ {
        let mut cur = self.nodes[node as usize].parent;
        std::iter::from_fn(move || {
            (cur != 0 && cur != NONE).then(|| {
                let n = &self.nodes[cur as usize];
                cur = n.parent;
                n.item
            })
        })
    }
}

/// FP-tree over the frequent items of a transaction database.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpTree {
    pub(crate) arena: Arena,
    /// Item label of each local index, in rank order.
    pub(crate) items: Vec<Item>,
    pub(crate) ids: Vec<ItemId>,
    min_count: usize,
}

/// Read-only view of one tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeView {
    pub item: Item,
    /// Position of the item in the header table.
    pub rank: usize,
    pub count: usize,
}

impl FpTree {
    pub fn min_count(&self) -> usize {
        self.min_count
    }

    /// Same tree with a different support threshold. Items already in the
    /// tree are kept even if they fall below the new threshold.
    pub fn with_min_count(mut self, min_count: usize) -> Self {
        self.min_count = min_count.max(1);
        self
    }

    /// Header table items in rank order.
    pub fn header(&self) -> &[Item] {
        &self.items
    }

    /// Catalog ids matching [`FpTree::header`].
    pub fn header_ids(&self) -> &[ItemId] {
        &self.ids
    }

    /// Number of nodes, excluding the root.
    pub fn node_count(&self) -> usize {
        self.arena.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    /// Total count of `item` over its node-link chain.
    pub fn item_count(&self, item: &Item) -> usize {
        self.items
            .iter()
            .position(|x| x == item)
            .map_or(0, |r| self.arena.totals[r])
    }

    /// Node counts along the node-link chain of `item`, in link order.
    pub fn chain_counts(&self, item: &Item) -> Vec<usize> {
        match self.items.iter().position(|x| x == item) {
            Some(r) => self
                .arena
                .chain(r as u32)
                .map(|n| self.arena.nodes[n as usize].count)
                .collect(),
            None => Vec::new(),
        }
    }

    fn view(&self, node: u32) -> NodeView {
        let n = &self.arena.nodes[node as usize];
        NodeView {
            item: self.items[n.item as usize],
            rank: n.item as usize,
            count: n.count,
        }
    }

    /// Every root-to-leaf path, leaves in creation order.
    pub fn leaf_paths(&self) -> Vec<Vec<NodeView>> {
        let nodes = &self.arena.nodes;
        (1..nodes.len() as u32)
            .filter(|&id| nodes[id as usize].children.is_empty())
            .map(|leaf| {
                let mut path = vec![self.view(leaf)];
                let mut cur = nodes[leaf as usize].parent;
                while cur != 0 {
                    path.push(self.view(cur));
                    cur = nodes[cur as usize].parent;
                }
                path.reverse();
                path
            })
            .collect()
    }

    /// The multiset of (filtered) transactions the tree encodes: each prefix
    /// paired with how many transactions end exactly there.
    pub fn transactions(&self) -> Vec<(Vec<Item>, usize)> {
        let nodes = &self.arena.nodes;
        let mut out = Vec::new();
        for id in 1..nodes.len() as u32 {
            let node = &nodes[id as usize];
            let below: usize = node.children.iter().map(|&c| nodes[c as usize].count).sum();
            if node.count > below {
                let mut items = vec![self.items[node.item as usize]];
                items.extend(self.arena.ancestors(id).map(|r| self.items[r as usize]));
                items.reverse();
                out.push((items, node.count - below));
            }
        }
        out
    }

    /// Indented text, one `item:count` node per line, two spaces per level.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack: Vec<(u32, usize)> = self.arena.nodes[0]
            .children
            .iter()
            .rev()
            .map(|&c| (c, 0))
            .collect();
        while let Some((id, depth)) = stack.pop() {
            let node = &self.arena.nodes[id as usize];
            let _ = writeln!(
                out,
                "{:indent$}{}:{}",
                "",
                self.items[node.item as usize],
                node.count,
                indent = depth * 2
            );
            stack.extend(node.children.iter().rev().map(|&c| (c, depth + 1)));
        }
        out
    }
}

/// Two passes over `db`: count supports and rank the frequent items, then
/// insert every transaction's frequent items in rank order.
pub fn build_fp_tree<T: Transactions + ?Sized>(
    db: &T,
    min_count: usize,
    tie_break: &TieBreak,
) -> FpTree {
    let min_count = min_count.max(1);
    let catalog = db.catalog();

    let mut supports = vec![0usize; catalog.len()];
    db.scan(&mut |t| {
        for &id in t {
            supports[id as usize] += 1;
        }
    });
    let ids = rank_items(catalog, &supports, min_count, tie_break);
    let mut rank_of = vec![NONE; catalog.len()];
    for (r, &id) in ids.iter().enumerate() {
        rank_of[id as usize] = r as u32;
    }

    let mut arena = Arena::new(ids.len());
    let mut buf = Vec::new();
    db.scan(&mut |t| {
        buf.clear();
        buf.extend(t.iter().map(|&id| rank_of[id as usize]).filter(|&r| r != NONE));
        if !buf.is_empty() {
            buf.sort_unstable();
            arena.insert(&buf, 1);
        }
    });

    FpTree {
        arena,
        items: ids.iter().map(|&id| catalog[id as usize]).collect(),
        ids,
        min_count,
    }
}

/// Remove the knee node of every branch.
///
/// Each root-to-leaf path of `t` is scored once. Candidate edges enter a node
/// whose count is below the tree's `min_count` and are scored by
/// `count(parent) / count(child)`; edges from the root are not scored. The
/// highest score wins, the deepest edge on ties, and the node it enters is a
/// knee if the score reaches `min_ratio`.
///
/// Knee items are then dropped from the transactions passing through them and
/// the tree is rebuilt from what is left, so items below a knee stay with
/// their transactions and merge back into sibling branches. Items left without
/// nodes drop out of the header table.
pub fn knee_prune(t: &FpTree, min_ratio: f64) -> FpTree {
    let nodes = &t.arena.nodes;
    let mut knee = vec![false; nodes.len()];
    let leaves = (1..nodes.len() as u32).filter(|&id| nodes[id as usize].children.is_empty());
    for leaf in leaves {
        let mut best: Option<(f64, u32)> = None;
        let mut child = leaf;
        loop {
            let parent = nodes[child as usize].parent;
            if parent == 0 {
                break;
            }
            let c = nodes[child as usize].count;
            if c < t.min_count {
                let ratio = nodes[parent as usize].count as f64 / c as f64;
                if best.is_none_or(|(r, _)| ratio > r) {
                    best = Some((ratio, child));
                }
            }
            child = parent;
        }
        if let Some((ratio, cut)) = best {
            if ratio >= min_ratio {
                knee[cut as usize] = true;
            }
        }
    }
    if !knee.contains(&true) {
        return t.clone();
    }

    // every node whose count exceeds its children's is where that many
    // transactions end; replay them without their knee items
    let mut kept: Vec<(Vec<u32>, usize)> = Vec::new();
    let mut used = vec![false; t.items.len()];
    for id in 1..nodes.len() {
        let node = &nodes[id];
        let below: usize = node.children.iter().map(|&c| nodes[c as usize].count).sum();
        if node.count == below {
            continue;
        }
        let mut path = Vec::new();
        let mut cur = id as u32;
        while cur != 0 {
            if !knee[cur as usize] {
                let item = nodes[cur as usize].item;
                used[item as usize] = true;
                path.push(item);
            }
            cur = nodes[cur as usize].parent;
        }
        path.reverse();
        kept.push((path, node.count - below));
    }

    let mut remap = vec![NONE; t.items.len()];
    let mut items = Vec::new();
    let mut ids = Vec::new();
    for r in (0..t.items.len()).filter(|&r| used[r]) {
        remap[r] = items.len() as u32;
        items.push(t.items[r]);
        ids.push(t.ids[r]);
    }
    let mut arena = Arena::new(items.len());
    for (mut path, count) in kept {
        if path.is_empty() {
            continue;
        }
        for item in &mut path {
            *item = remap[*item as usize];
        }
        arena.insert(&path, count);
    }

    FpTree {
        arena,
        items,
        ids,
        min_count: t.min_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{drawing_rank, running_example_transactions};
    use crate::fp::TransactionDb;

    fn it(s: u32, c: u32) -> Item {
        Item::new(s - 1, c - 1)
    }

    const DRAWN_TREE: &str = "\
(S6,1):5
  (S1,1):3
    (S2,1):3
      (S5,1):1
  (S1,2):2
    (S2,2):2
      (S3,4):2
        (S5,1):1
          (S4,2):1
        (S4,2):1
";

    #[test]
    fn drawn_layout() {
        let tree = build_fp_tree(&running_example_transactions(), 2, &drawing_rank());
        assert_eq!(tree.dump(), DRAWN_TREE);
        assert_eq!(tree.chain_counts(&it(5, 1)), vec![1, 1]);
        assert_eq!(tree.chain_counts(&it(4, 2)), vec![1, 1]);
    }

    #[test]
    fn lexicographic_layout() {
        let tree = build_fp_tree(&running_example_transactions(), 2, &TieBreak::Lexicographic);
        let expected = "\
(S6,1):5
  (S1,1):3
    (S2,1):3
      (S5,1):1
  (S1,2):2
    (S2,2):2
      (S3,4):2
        (S4,2):2
          (S5,1):1
";
        assert_eq!(tree.dump(), expected);
    }

    #[test]
    fn single_transaction_path() {
        let a = Item::new(0, 0);
        let b = Item::new(1, 0);
        let db = TransactionDb::from_item_sets([vec![a, b]]);
        let tree = build_fp_tree(&db, 1, &TieBreak::Lexicographic);
        assert_eq!(tree.dump(), "(S1,1):1\n  (S2,1):1\n");
    }

    #[test]
    fn pruned_running_example() {
        let tree = build_fp_tree(&running_example_transactions(), 2, &drawing_rank());
        let pruned = knee_prune(&tree, 2.0);
        let expected = "\
(S6,1):5
  (S1,1):3
    (S2,1):3
  (S1,2):2
    (S2,2):2
      (S3,4):2
        (S4,2):1
";
        // x4 keeps (S4,2) once its knee (S5,1) is gone, x5 loses it, so
        // the item falls below min_count
        assert_eq!(pruned.dump(), expected);
        assert!(pruned.header().iter().all(|i| *i != it(5, 1)));
        assert_eq!(pruned.item_count(&it(4, 2)), 1);
    }

    #[test]
    fn infinite_ratio_is_identity() {
        let tree = build_fp_tree(&running_example_transactions(), 2, &drawing_rank());
        assert_eq!(knee_prune(&tree, f64::INFINITY), tree);
    }

    fn chain_db(counts: &[usize]) -> TransactionDb {
        // transaction i holds the first m items, where m = number of counts
        // that are > i
        let n = counts[0];
        let sets = (0..n).map(|i| {
            counts
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > i)
                .map(|(j, _)| Item::new(j as u32, 0))
                .collect::<Vec<_>>()
        });
        TransactionDb::from_item_sets(sets)
    }

    #[test]
    fn flat_path_untouched() {
        let tree = build_fp_tree(&chain_db(&[4, 4, 4]), 1, &TieBreak::Lexicographic);
        assert_eq!(knee_prune(&tree, 2.0), tree);
    }

    #[test]
    fn knee_at_sharpest_drop() {
        // 8 -> 7 -> 2 -> 1: ratios 8/7, 3.5, 2; the 7 -> 2 edge is the knee
        let tree = build_fp_tree(&chain_db(&[8, 7, 2, 1]), 1, &TieBreak::Lexicographic);
        assert_eq!(tree.dump(), "(S1,1):8\n  (S2,1):7\n    (S3,1):2\n      (S4,1):1\n");
        // at min_count 1 no node is below threshold, so nothing is scored
        assert_eq!(knee_prune(&tree, 2.0), tree);
        let tree3 = tree.with_min_count(3);
        let pruned = knee_prune(&tree3, 2.0);
        assert_eq!(pruned.dump(), "(S1,1):8\n  (S2,1):7\n    (S4,1):1\n");
    }

    #[test]
    fn node_sums_equal_supports() {
        let db = running_example_transactions();
        for min_count in 1..=3 {
            let tree = build_fp_tree(&db, min_count, &TieBreak::Lexicographic);
            for (item, id) in tree.header().iter().zip(tree.header_ids()) {
                assert_eq!(tree.item_count(item), db.support(*id));
            }
        }
    }
}
