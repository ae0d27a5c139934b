//! End-to-end runs: subspaces, base clusters, FP-tree, pruning, maximal
//! patterns and cluster assembly.

use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::assembly::{assemble_clusters, ClusteringResult};
use crate::base_search::{build_membership, enumerate_subspaces, MembershipTable, Policy};
use crate::dataset::DataMatrix;
use crate::error::{Error, ParamError, Result};
use crate::fp::{build_fp_tree, knee_prune, min_count, mine_maximal_within, to_transactions, TieBreak};

pub const DEFAULT_MIN_RATIO: f64 = 2.0;
/// Default work cap for mining one run (see [`crate::fp::mine_maximal_within`]).
pub const DEFAULT_MINING_BUDGET: u64 = 400_000_000;

/// Parameters of a single clustering run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterParams {
    /// Base clusters per subspace.
    pub k: usize,
    /// Smallest admissible cluster, as an absolute point count.
    pub min_cluster_size: usize,
    /// Base clusters smaller than this are discarded; defaults to
    /// `min_cluster_size`.
    pub min_base_size: Option<usize>,
    /// Knee threshold; `inf` disables pruning.
    #[serde(serialize_with = "ser_ratio", deserialize_with = "de_ratio")]
    pub min_ratio: f64,
    pub tie_break: TieBreak,
    /// Subspace selection; `None` picks all pairs below 100 dimensions and
    /// sampling above.
    pub policy: Option<Policy>,
    /// Dimensionality of the searched subspaces.
    pub p: usize,
    pub seed: u64,
    /// Clusters spanning fewer dimensions are dropped; `None` means `p + 1`,
    /// since a cluster confined to one searched subspace is just a base
    /// cluster.
    #[serde(default)]
    pub min_dims: Option<usize>,
    /// Work cap for the pattern search.
    #[serde(default = "default_budget")]
    pub mining_budget: u64,
}

fn default_budget() -> u64 {
    DEFAULT_MINING_BUDGET
}

impl ClusterParams {
    pub fn new(k: usize, min_cluster_size: usize) -> Self {
        Self {
            k,
            min_cluster_size,
            min_base_size: None,
            min_ratio: DEFAULT_MIN_RATIO,
            tie_break: TieBreak::Lexicographic,
            policy: None,
            p: 2,
            seed: 0,
            min_dims: None,
            mining_budget: DEFAULT_MINING_BUDGET,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_policy(mut self, policy: Policy) -> Self {
        self.policy = Some(policy);
        self
    }

    pub fn with_min_ratio(mut self, min_ratio: f64) -> Self {
        self.min_ratio = min_ratio;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn min_dims(&self) -> usize {
        self.min_dims.unwrap_or(self.p + 1)
    }

    pub fn min_base_size(&self) -> usize {
        self.min_base_size.unwrap_or(self.min_cluster_size)
    }

    fn validate(&self, n: usize) -> Result<(), ParamError> {
        min_count(self.min_cluster_size, n)?;
        if self.min_base_size == Some(0) {
            return Err(ParamError::MinBaseSize);
        }
        if !(self.min_ratio >= 1.0) {
            return Err(ParamError::MinRatio(self.min_ratio));
        }
        if self.k == 0 || self.k > n {
            return Err(ParamError::ClusterCount { k: self.k, n });
        }
        Ok(())
    }
}

fn ser_ratio<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*v)
    }
}

fn de_ratio<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Ratio {
        Num(f64),
        Text(String),
    }
    match Ratio::deserialize(d)? {
        Ratio::Num(v) => Ok(v),
        Ratio::Text(t) => t.parse().map_err(serde::de::Error::custom),
    }
}

/// Wall-clock time and sizes of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub base_search: Duration,
    pub aggregation: Duration,
    pub subspaces: usize,
    pub transactions: usize,
    pub tree_nodes: usize,
    pub pruned_nodes: usize,
}

impl RunStats {
    pub fn total(&self) -> Duration {
        self.base_search + self.aggregation
    }
}

/// Second phase on a ready membership table.
pub fn aggregate(z: &MembershipTable, params: &ClusterParams) -> Result<(ClusteringResult, RunStats)> {
    let start = Instant::now();
    let threshold = min_count(params.min_cluster_size, z.n())?;
    if !(params.min_ratio >= 1.0) {
        return Err(ParamError::MinRatio(params.min_ratio).into());
    }
    let db = to_transactions(z);
    let tree = build_fp_tree(&db, threshold, &params.tie_break);
    let pruned = knee_prune(&tree, params.min_ratio);
    let patterns = mine_maximal_within(&pruned, params.mining_budget)?;
    let mut result = assemble_clusters(&patterns, &db, z.subspaces())?;
    let min_dims = params.min_dims();
    result.retain_clusters(|c| c.dims.len() >= min_dims);
    result.params = Some(params.clone());
    let stats = RunStats {
        aggregation: start.elapsed(),
        subspaces: z.m(),
        transactions: db.iter().filter(|t| !t.is_empty()).count(),
        tree_nodes: tree.node_count(),
        pruned_nodes: pruned.node_count(),
        ..RunStats::default()
    };
    Ok((result, stats))
}

/// Both phases on `x`.
pub fn cluster(x: &DataMatrix, params: &ClusterParams) -> Result<(ClusteringResult, RunStats)> {
    params.validate(x.n())?;
    let start = Instant::now();
    let policy = params.policy.unwrap_or_else(|| Policy::auto(x.d(), params.p));
    let subspaces = enumerate_subspaces(x.d(), params.p, policy, params.seed)?;
    let z = build_membership(x, &subspaces, params.k, params.min_base_size(), params.seed)?;
    let base_search = start.elapsed();
    let mut resolved = params.clone();
    resolved.policy = Some(policy);
    let (result, stats) = aggregate(&z, &resolved)?;
    Ok((result, RunStats { base_search, ..stats }))
}

/// Outcome of one k in a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub k: usize,
    pub clusters: usize,
    pub coverage: f64,
    /// Set when the pattern search ran out of budget for this k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Run once per k and keep the result covering the most points (the first
/// such k on ties). A k whose pattern search exceeds the budget is recorded
/// as skipped; the sweep fails only if every k does.
pub fn sweep(
    x: &DataMatrix,
    params: &ClusterParams,
    ks: &[usize],
) -> Result<(ClusteringResult, Vec<SweepEntry>)> {
    if ks.is_empty() {
        return Err(ParamError::EmptySweep.into());
    }
    let mut best: Option<ClusteringResult> = None;
    let mut first_error = None;
    let mut entries = Vec::with_capacity(ks.len());
    for &k in ks {
        let run_params = ClusterParams { k, ..params.clone() };
        let result = match cluster(x, &run_params) {
            Ok((result, _)) => result,
            Err(Error::Mining(e)) => {
                entries.push(SweepEntry {
                    k,
                    clusters: 0,
                    coverage: 0.0,
                    skipped: Some(e.to_string()),
                });
                first_error.get_or_insert(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        entries.push(SweepEntry {
            k,
            clusters: result.clusters.len(),
            coverage: result.coverage(),
            skipped: None,
        });
        if best.as_ref().is_none_or(|b| result.coverage() > b.coverage()) {
            best = Some(result);
        }
    }
    match best {
        Some(best) => Ok((best, entries)),
        None => Err(first_error.expect("every k failed").into()),
    }
}
