//! Datasets and matching helpers shared by the integration tests.

#![allow(dead_code)]

use subspace_fp::dataset::{ClusterSpec, SyntheticSpec};
use subspace_fp::{ClusteringResult, GroundTruth, SubspaceCluster};

/// 900 points in 35 dimensions: points 0..300 cluster in dims 0..10, points
/// 300..600 in dims 10..30, the rest is background.
pub fn disjoint_spec(seed: u64) -> SyntheticSpec {
    SyntheticSpec {
        n: 900,
        d: 35,
        seed,
        clusters: vec![
            ClusterSpec::spread(0..300, 0..10, 2.0, 8.0, 0.05),
            ClusterSpec::spread(300..600, 10..30, 2.0, 8.0, 0.05),
        ],
        background: None,
    }
}

/// 1000 points in `d` dimensions: points 0..400 in dims 5..9 and points
/// 400..800 in dims 4..8, so the subspaces share dims 5, 6 and 7.
pub fn non_disjoint_spec(d: usize, seed: u64) -> SyntheticSpec {
    SyntheticSpec {
        n: 1000,
        d,
        seed,
        clusters: vec![
            ClusterSpec::spread(0..400, 5..9, 2.0, 8.0, 0.05),
            ClusterSpec::spread(400..800, 4..8, 8.0, 2.0, 0.05),
        ],
        background: None,
    }
}

fn jaccard(a: &[usize], b: &[usize]) -> f64 {
    let inter = a.iter().filter(|p| b.binary_search(p).is_ok()).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

/// For each planted cluster, the recovered cluster with the most similar
/// point set, if any.
pub fn best_matches<'a>(
    result: &'a ClusteringResult,
    truth: &GroundTruth,
) -> Vec<Option<&'a SubspaceCluster>> {
    truth
        .clusters
        .iter()
        .map(|t| {
            result
                .clusters
                .iter()
                .map(|c| (jaccard(&c.points, &t.points), c))
                .filter(|(j, _)| *j > 0.0)
                .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.id.cmp(&a.1.id)))
                .map(|(_, c)| c)
        })
        .collect()
}

/// Size of the symmetric difference of two sorted dimension lists.
pub fn dim_error(found: &[usize], planted: &[usize]) -> usize {
    let shared = found.iter().filter(|d| planted.contains(d)).count();
    found.len() + planted.len() - 2 * shared
}
