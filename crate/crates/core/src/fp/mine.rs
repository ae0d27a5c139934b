//! Maximal frequent itemsets straight from the FP-tree.
//!
//! The recursion follows FP-growth over conditional trees, with two
//! shortcuts that keep it from enumerating every frequent subset: a
//! single-path (conditional) tree yields its one maximal set directly, and a
//! branch whose head plus every frequent tail item is already covered by a
//! known maximal set is skipped. Tail items that occur wherever the head
//! does are folded into the head without branching.
//!
//! Noisy inputs can still have a huge number of maximal sets, so
//! [`mine_maximal_within`] bounds the work: every tree node visited while
//! collecting conditional pattern bases and every known set compared in a
//! coverage check costs one unit.

use fixedbitset::FixedBitSet;

use crate::error::MiningError;

use super::tree::{Arena, FpTree};
use super::{sort_patterns, Pattern};

struct MaximalSets {
    width: usize,
    sets: Vec<(FixedBitSet, Vec<u32>, usize)>,
    /// Sets later found to be subsets of a newer one.
    dead: Vec<bool>,
    work: u64,
    budget: u64,
}

/// The known sets that can still contain a candidate of one recursion
/// level: those holding its head when the level began, plus everything found
/// since (which holds the head by construction).
#[derive(Clone, Copy)]
struct Scope<'a> {
    holding_head: &'a [u32],
    since: usize,
}

impl MaximalSets {
    fn bits(&self, items: &[u32]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.width);
        for &i in items {
            bits.insert(i as usize);
        }
        bits
    }

    fn in_scope<'s>(&'s self, scope: Scope<'s>) -> impl Iterator<Item = usize> + 's {
        scope
            .holding_head
            .iter()
            .map(|&i| i as usize)
            .chain(scope.since..self.sets.len())
            .filter(|&i| !self.dead[i])
    }

    /// Whether a known set in scope contains `bits`; every set compared
    /// costs one unit of work.
    fn covers(&mut self, bits: &FixedBitSet, scope: Scope<'_>) -> bool {
        let mut compared = 0;
        let hit = self.in_scope(scope).any(|i| {
            compared += 1;
            bits.is_subset(&self.sets[i].0)
        });
        self.work += compared;
        hit
    }

    /// Sets in scope that hold every item of `head`.
    fn narrow(&mut self, head: &FixedBitSet, scope: Scope<'_>) -> Vec<u32> {
        let kept: Vec<u32> = self
            .in_scope(scope)
            .filter(|&i| head.is_subset(&self.sets[i].0))
            .map(|i| i as u32)
            .collect();
        self.work += (scope.holding_head.len() + self.sets.len() - scope.since) as u64;
        kept
    }

    fn insert(&mut self, items: Vec<u32>, support: usize, scope: Scope<'_>) {
        let bits = self.bits(&items);
        if self.covers(&bits, scope) {
            return;
        }
        for (i, (s, _, _)) in self.sets.iter().enumerate() {
            if !self.dead[i] && s.is_subset(&bits) {
                self.dead[i] = true;
            }
        }
        self.work += self.sets.len() as u64;
        self.sets.push((bits, items, support));
        self.dead.push(false);
    }
}

fn fpmax(
    tree: &Arena,
    labels: &[u32],
    head: &mut Vec<u32>,
    head_support: usize,
    min_count: usize,
    found: &mut MaximalSets,
    holding_head: &[u32],
) -> Result<(), MiningError> {
    let scope = Scope {
        holding_head,
        since: found.sets.len(),
    };
    if let Some(path) = tree.single_path() {
        let mut pattern = head.clone();
        let mut support = head_support;
        for node in path {
            let node = &tree.nodes[node as usize];
            if node.count < min_count {
                break;
            }
            pattern.push(labels[node.item as usize]);
            support = node.count;
        }
        if !pattern.is_empty() {
            found.insert(pattern, support, scope);
        }
        return Ok(());
    }

    let width = labels.len();
    let mut counts = vec![0usize; width];
    let mut local = vec![u32::MAX; width];
    // prefixes of the current item's nodes, stored back to back
    let mut prefixes: Vec<u32> = Vec::new();
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let mut path = Vec::new();

    for item in (0..width as u32).rev() {
        let support = tree.totals[item as usize];
        if support < min_count {
            continue;
        }

        counts[..item as usize].fill(0);
        prefixes.clear();
        spans.clear();
        for node in tree.chain(item) {
            let weight = tree.nodes[node as usize].count;
            let start = prefixes.len();
            for a in tree.ancestors(node) {
                counts[a as usize] += weight;
                prefixes.push(a);
            }
            if prefixes.len() > start {
                spans.push((start, weight));
            }
        }

        found.work += prefixes.len() as u64 + 1;
        if found.work > found.budget {
            return Err(MiningError::Budget(found.budget));
        }

        // tail items present wherever `item` is go straight into the head
        let depth = head.len();
        head.push(labels[item as usize]);
        let mut tail = Vec::new();
        for a in 0..item {
            let c = counts[a as usize];
            if c == support {
                head.push(labels[a as usize]);
            } else if c >= min_count {
                tail.push(a);
            }
        }
        let mut candidate = head.clone();
        candidate.extend(tail.iter().map(|&a| labels[a as usize]));
        let bits = found.bits(&candidate);
        if found.covers(&bits, scope) {
            head.truncate(depth);
            continue;
        }
        if tail.is_empty() {
            found.insert(head.clone(), support, scope);
            head.truncate(depth);
            continue;
        }

        for (i, &a) in tail.iter().enumerate() {
            local[a as usize] = i as u32;
        }
        // if enough transactions hold the whole tail, head plus tail is
        // maximal here and no branching is needed
        let full: usize = spans
            .iter()
            .enumerate()
            .filter(|&(i, _)| {
                let end = spans.get(i + 1).map_or(prefixes.len(), |s| s.0);
                let hits = prefixes[spans[i].0..end]
                    .iter()
                    .filter(|&&a| local[a as usize] != u32::MAX)
                    .count();
                hits == tail.len()
            })
            .map(|(_, &(_, weight))| weight)
            .sum();
        if full >= min_count {
            for &a in &tail {
                local[a as usize] = u32::MAX;
            }
            found.insert(candidate, full, scope);
            head.truncate(depth);
            continue;
        }

        let mut conditional = Arena::new(tail.len());
        for (i, &(start, weight)) in spans.iter().enumerate() {
            let end = spans.get(i + 1).map_or(prefixes.len(), |s| s.0);
            path.clear();
            path.extend(
                prefixes[start..end]
                    .iter()
                    .rev()
                    .map(|&a| local[a as usize])
                    .filter(|&a| a != u32::MAX),
            );
            if !path.is_empty() {
                conditional.insert(&path, weight);
            }
        }
        for &a in &tail {
            local[a as usize] = u32::MAX;
        }
        let sub_labels: Vec<u32> = tail.iter().map(|&a| labels[a as usize]).collect();
        let head_bits = found.bits(head);
        let narrowed = found.narrow(&head_bits, scope);
        fpmax(&conditional, &sub_labels, head, support, min_count, found, &narrowed)?;
        head.truncate(depth);
    }
    Ok(())
}

/// Maximal itemsets whose support in `t` reaches `t.min_count()`, sorted by
/// support (descending) and then by their items' rank sequences.
pub fn mine_maximal(t: &FpTree) -> Vec<Pattern> {
    mine_maximal_within(t, u64::MAX).expect("an unbounded budget cannot run out")
}

/// [`mine_maximal`], giving up once the search has spent more than `budget`
/// units of work (see the module docs). The count does not depend on timing
/// or thread count.
pub fn mine_maximal_within(t: &FpTree, budget: u64) -> Result<Vec<Pattern>, MiningError> {
    let width = t.items.len();
    let mut found = MaximalSets {
        width,
        sets: Vec::new(),
        dead: Vec::new(),
        work: 0,
        budget,
    };
    let labels: Vec<u32> = (0..width as u32).collect();
    fpmax(&t.arena, &labels, &mut Vec::new(), 0, t.min_count(), &mut found, &[])?;

    let mut ranked: Vec<(Vec<u32>, usize)> = found
        .sets
        .into_iter()
        .zip(found.dead)
        .filter(|(_, dead)| !dead)
        .map(|((_, items, support), _)| (items, support))
        .collect();
    sort_patterns(&mut ranked);
    Ok(ranked
        .into_iter()
        .map(|(ranks, support)| Pattern {
            items: ranks.iter().map(|&r| t.items[r as usize]).collect(),
            support,
        })
        .collect())
}
