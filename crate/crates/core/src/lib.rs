//! Bottom-up subspace clustering.
//!
//! Points are first clustered in many low-dimensional (by default 2-D)
//! subspaces. Each point then becomes a transaction whose items are the base
//! clusters covering it, and maximal frequent itemsets mined from an FP-tree
//! of those transactions describe the final clusters: the points sharing all
//! of a pattern's base clusters, in the union of their subspaces. Clusters
//! may overlap in both points and dimensions.
//!
//! ```
//! use subspace_fp::{fixtures, pipeline::{aggregate, ClusterParams}};
//!
//! let (result, _) = aggregate(&fixtures::running_example_table(), &ClusterParams::new(1, 2)).unwrap();
//! let points: Vec<_> = result.clusters.iter().map(|c| c.points.clone()).collect();
//! assert_eq!(points, vec![vec![0, 1, 2], vec![3, 4]]);
//! ```

pub mod assembly;
pub mod base_search;
pub mod bench;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod fp;
pub mod pipeline;

pub use assembly::{assemble_clusters, ClusteringResult, SubspaceCluster};
pub use base_search::{build_membership, cluster_base, enumerate_subspaces, MembershipTable, Policy, SubspaceSet};
pub use dataset::{generate_covariant_fixture, generate_synthetic, load_matrix, zscore_normalize, DataMatrix, GroundTruth, SyntheticSpec};
pub use error::{Error, Result};
pub use eval::{coherence_profile, flatten_for_nmi, nmi, pair_scores};
pub use fp::{apriori_maximal, build_fp_tree, knee_prune, mine_maximal, to_transactions, FpTree, Item, Pattern, TieBreak, TransactionDb};
pub use pipeline::{aggregate, cluster, sweep, ClusterParams};
