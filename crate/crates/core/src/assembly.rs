//! Turning maximal patterns into subspace clusters.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::base_search::SubspaceSet;
use crate::error::AssemblyError;
use crate::fp::{Item, Pattern, TransactionDb};
use crate::pipeline::ClusterParams;

/// Points sharing every base cluster of `pattern`, living in the union of
/// those base clusters' subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceCluster {
    pub id: usize,
    /// Support of the pattern in the tree it was mined from.
    pub support: usize,
    pub points: Vec<usize>,
    pub dims: Vec<usize>,
    pub pattern: Vec<Item>,
}

/// Output of a clustering run. Clusters may share points and dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    pub params: Option<ClusterParams>,
    pub n: usize,
    pub clusters: Vec<SubspaceCluster>,
    pub outliers: Vec<usize>,
}

impl ClusteringResult {
    /// Fraction of points in at least one cluster.
    pub fn coverage(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (self.n - self.outliers.len()) as f64 / self.n as f64
    }

    /// Cluster ids containing each point, ascending.
    pub fn memberships(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for c in &self.clusters {
            for &p in &c.points {
                out[p].push(c.id);
            }
        }
        for m in &mut out {
            m.sort_unstable();
        }
        out
    }

    /// Keep only the clusters matching `keep` and recompute the outliers.
    pub fn retain_clusters(&mut self, mut keep: impl FnMut(&SubspaceCluster) -> bool) {
        self.clusters.retain(|c| keep(c));
        let mut covered = vec![false; self.n];
        for c in &self.clusters {
            for &p in &c.points {
                covered[p] = true;
            }
        }
        self.outliers = (0..self.n).filter(|&i| !covered[i]).collect();
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("result serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// One cluster per pattern: its points are every transaction containing the
/// whole pattern, its subspace the union of the items' subspaces. Clusters
/// are ordered by size (descending), then id; ids are pattern positions.
pub fn assemble_clusters(
    patterns: &[Pattern],
    db: &TransactionDb,
    subspaces: &SubspaceSet,
) -> Result<ClusteringResult, AssemblyError> {
    let n = db.len();
    let mut clusters = Vec::with_capacity(patterns.len());
    for (id, pattern) in patterns.iter().enumerate() {
        let points = db
            .containing(&pattern.items)
            .filter(|p| !p.is_empty())
            .ok_or(AssemblyError::UnsupportedPattern(id))?;
        let mut dims = BTreeSet::new();
        for item in &pattern.items {
            let s = item.subspace as usize;
            if s >= subspaces.len() {
                return Err(AssemblyError::UnknownSubspace {
                    pattern: id,
                    subspace: s,
                    available: subspaces.len(),
                });
            }
            dims.extend(subspaces.get(s).iter().copied());
        }
        clusters.push(SubspaceCluster {
            id,
            support: pattern.support,
            points,
            dims: dims.into_iter().collect(),
            pattern: pattern.items.clone(),
        });
    }
    clusters.sort_by(|a, b| b.points.len().cmp(&a.points.len()).then(a.id.cmp(&b.id)));

    let mut covered = vec![false; n];
    for c in &clusters {
        for &p in &c.points {
            covered[p] = true;
        }
    }
    Ok(ClusteringResult {
        params: None,
        n,
        clusters,
        outliers: (0..n).filter(|&i| !covered[i]).collect(),
    })
}
