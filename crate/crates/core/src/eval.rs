//! Clustering quality: normalized mutual information, pair-counting
//! precision/recall/F1 and per-dimension coherence profiles.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::assembly::{ClusteringResult, SubspaceCluster};
use crate::dataset::{DataMatrix, GroundTruth};
use crate::error::EvalError;

/// Normalizer applied to the mutual information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NmiNorm {
    /// `(H(a) + H(b)) / 2`
    #[default]
    Arithmetic,
    /// `sqrt(H(a) * H(b))`
    Geometric,
}

fn dense<L: Hash + Eq>(labels: &[L]) -> (Vec<usize>, usize) {
    let mut index = HashMap::new();
    let ids = labels
        .iter()
        .map(|l| {
            let next = index.len();
            *index.entry(l).or_insert(next)
        })
        .collect();
    (ids, index.len())
}

fn entropy(counts: &[usize], n: f64) -> f64 {
    let mut terms: Vec<f64> = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .collect();
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

/// NMI with the arithmetic-mean normalizer and natural logarithms.
pub fn nmi<L: Hash + Eq>(a: &[L], b: &[L]) -> Result<f64, EvalError> {
    nmi_with(a, b, NmiNorm::Arithmetic)
}

/// NMI in `[0, 1]`. Two one-block partitions score 1; a one-block partition
/// against anything else scores 0. Symmetric bit for bit.
pub fn nmi_with<L: Hash + Eq>(a: &[L], b: &[L], norm: NmiNorm) -> Result<f64, EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(EvalError::Empty);
    }
    let n = a.len() as f64;
    let (ia, ka) = dense(a);
    let (ib, kb) = dense(b);
    let mut ca = vec![0usize; ka];
    let mut cb = vec![0usize; kb];
    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    for (&x, &y) in ia.iter().zip(&ib) {
        ca[x] += 1;
        cb[y] += 1;
        *joint.entry((x, y)).or_insert(0) += 1;
    }
    let ha = entropy(&ca, n);
    let hb = entropy(&cb, n);
    if ha == 0.0 && hb == 0.0 {
        return Ok(1.0);
    }
    if ha == 0.0 || hb == 0.0 {
        return Ok(0.0);
    }
    // summing sorted terms keeps the result independent of argument order
    let mut terms: Vec<f64> = joint
        .iter()
        .map(|(&(x, y), &c)| {
            let c = c as f64;
            c / n * (n * c / (ca[x] as f64 * cb[y] as f64)).ln()
        })
        .collect();
    terms.sort_by(f64::total_cmp);
    let mi: f64 = terms.iter().sum();
    let denom = match norm {
        NmiNorm::Arithmetic => (ha + hb) / 2.0,
        NmiNorm::Geometric => (ha * hb).sqrt(),
    };
    Ok((mi / denom).clamp(0.0, 1.0))
}

/// Hard labels for NMI: each point takes the id of its containing cluster
/// with the longest pattern (then more points, then lower id); points in no
/// cluster get distinct labels above every cluster id.
pub fn flatten_for_nmi(r: &ClusteringResult, n: usize) -> Vec<usize> {
    let mut best: Vec<Option<&SubspaceCluster>> = vec![None; n];
    for c in &r.clusters {
        for &p in &c.points {
            let slot = &mut best[p];
            let better = match slot {
                None => true,
                Some(cur) => (c.pattern.len(), c.points.len(), std::cmp::Reverse(c.id))
                    > (cur.pattern.len(), cur.points.len(), std::cmp::Reverse(cur.id)),
            };
            if better {
                *slot = Some(c);
            }
        }
    }
    let base = r.clusters.iter().map(|c| c.id + 1).max().unwrap_or(0);
    best.iter()
        .enumerate()
        .map(|(i, c)| c.map_or(base + i, |c| c.id))
        .collect()
}

/// Pair-counting precision, recall and F1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn shares(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Pair scores from per-point sorted membership lists. A pair counts as
/// co-clustered when the two points share at least one cluster.
pub fn pair_scores_from_memberships(
    pred: &[Vec<usize>],
    truth: &[Vec<usize>],
) -> Result<PairScores, EvalError> {
    if pred.len() != truth.len() {
        return Err(EvalError::LengthMismatch(pred.len(), truth.len()));
    }
    let (mut tp, mut fp, mut fn_) = (0u64, 0u64, 0u64);
    for i in 0..pred.len() {
        if pred[i].is_empty() && truth[i].is_empty() {
            continue;
        }
        for j in i + 1..pred.len() {
            match (shares(&pred[i], &pred[j]), shares(&truth[i], &truth[j])) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_ += 1,
                (false, false) => {}
            }
        }
    }
    let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(PairScores {
        precision,
        recall,
        f1,
    })
}

/// Pair scores of a clustering against ground truth point sets.
pub fn pair_scores(pred: &ClusteringResult, truth: &GroundTruth) -> Result<PairScores, EvalError> {
    if pred.n != truth.n {
        return Err(EvalError::LengthMismatch(pred.n, truth.n));
    }
    pair_scores_from_memberships(&pred.memberships(), &truth.memberships())
}

/// Mean and spread of one dimension over a cluster's points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimProfile {
    pub dim: usize,
    pub mean: f64,
    pub std: f64,
    pub in_subspace: bool,
}

/// Per-dimension mean and population standard deviation over the points of
/// `c`, for all dimensions of `x`.
pub fn coherence_profile(c: &SubspaceCluster, x: &DataMatrix) -> Vec<DimProfile> {
    let m = c.points.len().max(1) as f64;
    (0..x.d())
        .map(|j| {
            let mean = c.points.iter().map(|&i| x.get(i, j)).sum::<f64>() / m;
            let var = c
                .points
                .iter()
                .map(|&i| (x.get(i, j) - mean).powi(2))
                .sum::<f64>()
                / m;
            DimProfile {
                dim: j,
                mean,
                std: var.sqrt(),
                in_subspace: c.dims.binary_search(&j).is_ok(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_partitions() {
        assert_eq!(nmi(&[0, 0, 1, 1, 2], &[5, 5, 7, 7, 9]).unwrap(), 1.0);
    }

    #[test]
    fn independent_partitions() {
        assert_eq!(nmi(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn hand_computed_entropies() {
        // a = {3,1}, b = {2,2}; joint cells (0,0)=2, (0,1)=1, (1,1)=1
        let ln = f64::ln;
        let ha = -(0.75 * ln(0.75) + 0.25 * ln(0.25));
        let hb = ln(2.0);
        let mi = 0.5 * ln(0.5 / (0.75 * 0.5)) + 0.25 * ln(0.25 / (0.75 * 0.5)) + 0.25 * ln(0.25 / (0.25 * 0.5));
        let expected = mi / ((ha + hb) / 2.0);
        let got = nmi(&[0, 0, 0, 1], &[0, 0, 1, 1]).unwrap();
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
        let geo = nmi_with(&[0, 0, 0, 1], &[0, 0, 1, 1], NmiNorm::Geometric).unwrap();
        assert!((geo - mi / (ha * hb).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_entropies() {
        assert_eq!(nmi(&[1, 1, 1], &[2, 2, 2]).unwrap(), 1.0);
        assert_eq!(nmi(&[1, 1, 1], &[1, 2, 3]).unwrap(), 0.0);
        assert_eq!(nmi(&[0], &[0]).unwrap(), 1.0);
        assert_eq!(nmi::<u8>(&[0, 1], &[0]), Err(EvalError::LengthMismatch(2, 1)));
    }

    fn result(n: usize, clusters: Vec<(Vec<usize>, usize)>) -> ClusteringResult {
        let clusters: Vec<SubspaceCluster> = clusters
            .into_iter()
            .enumerate()
            .map(|(id, (points, pattern_len))| SubspaceCluster {
                id,
                support: points.len(),
                points,
                dims: vec![0, 1],
                pattern: (0..pattern_len as u32).map(|s| crate::fp::Item::new(s, 0)).collect(),
            })
            .collect();
        let covered: Vec<bool> = (0..n)
            .map(|i| clusters.iter().any(|c| c.points.contains(&i)))
            .collect();
        ClusteringResult {
            params: None,
            n,
            clusters,
            outliers: (0..n).filter(|&i| !covered[i]).collect(),
        }
    }

    #[test]
    fn flatten_running_example() {
        let r = result(5, vec![(vec![0, 1, 2], 3), (vec![3, 4], 4)]);
        assert_eq!(flatten_for_nmi(&r, 5), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn flatten_outliers_are_singletons() {
        let r = result(3, vec![]);
        let labels = flatten_for_nmi(&r, 3);
        assert_eq!(labels.iter().collect::<std::collections::HashSet<_>>().len(), 3);
    }

    #[test]
    fn flatten_prefers_longer_pattern() {
        let r = result(4, vec![(vec![0, 1, 2], 3), (vec![2, 3], 4)]);
        assert_eq!(flatten_for_nmi(&r, 4)[2], 1);
    }

    #[test]
    fn pair_scores_cases() {
        let truth = crate::fixtures::running_example_truth();
        let perfect = result(5, vec![(vec![0, 1, 2], 3), (vec![3, 4], 4)]);
        let s = pair_scores(&perfect, &truth).unwrap();
        assert_eq!((s.precision, s.recall, s.f1), (1.0, 1.0, 1.0));

        // 10 pairs predicted, 3 + 1 true
        let lump = result(5, vec![(vec![0, 1, 2, 3, 4], 1)]);
        let s = pair_scores(&lump, &truth).unwrap();
        assert_eq!((s.precision, s.recall), (0.4, 1.0));

        let empty = result(5, vec![]);
        let s = pair_scores(&empty, &truth).unwrap();
        assert_eq!((s.precision, s.recall, s.f1), (0.0, 0.0, 0.0));
    }

    #[test]
    fn coherence_single_point_and_flags() {
        let x = DataMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 9.0]]).unwrap();
        let c = SubspaceCluster {
            id: 0,
            support: 1,
            points: vec![1],
            dims: vec![0, 1, 2],
            pattern: vec![],
        };
        let profile = coherence_profile(&c, &x);
        assert!(profile.iter().all(|p| p.std == 0.0 && p.in_subspace));
        assert_eq!(profile[2].mean, 9.0);
    }
}
