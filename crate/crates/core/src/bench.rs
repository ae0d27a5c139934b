//! Scalability runs: synthetic data of growing size, phases timed apart.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dataset::{generate_synthetic, ClusterSpec, SyntheticSpec};
use crate::error::{Error, ParamError};
use crate::pipeline::{cluster, ClusterParams};

/// Planted workload for one `(n, d)` size: two clusters of `n / 3` points,
/// one in each half of the dimensions, and `n / 3` background points.
pub fn workload(n: usize, d: usize, seed: u64) -> SyntheticSpec {
    let third = n / 3;
    let half = d / 2;
    SyntheticSpec {
        n,
        d,
        seed,
        clusters: vec![
            ClusterSpec::spread(0..third, 0..half, 2.0, 8.0, 0.05),
            ClusterSpec::spread(third..2 * third, half..d, 8.0, 2.0, 0.05),
        ],
        background: None,
    }
}

/// One benchmark row. Times are wall-clock seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub d: usize,
    pub phase1_s: f64,
    pub phase2_s: f64,
    pub total_s: f64,
    pub subspaces: usize,
    pub transactions: usize,
    pub tree_nodes: usize,
    pub clusters: usize,
    /// `ok`, or why the row failed.
    pub status: String,
}

impl BenchRow {
    fn failed(n: usize, d: usize, why: impl ToString) -> Self {
        Self {
            n,
            d,
            phase1_s: 0.0,
            phase2_s: 0.0,
            total_s: 0.0,
            subspaces: 0,
            transactions: 0,
            tree_nodes: 0,
            clusters: 0,
            status: why.to_string(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Rows sorted by `n`, then `d`, plus the parameters every row used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub params: ClusterParams,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, n: usize, d: usize) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n && r.d == d)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for row in &self.rows {
            writer.serialize(row)?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Bytes the run needs up front: the data matrix plus the membership table.
fn reserve_for(n: usize, d: usize) -> Result<(), String> {
    let cells = n.checked_mul(d).ok_or("size overflows")?;
    let mut probe: Vec<f64> = Vec::new();
    probe
        .try_reserve_exact(cells)
        .map_err(|e| format!("cannot allocate {n}x{d} matrix: {e}"))?;
    drop(probe);
    let pairs = d.saturating_mul(d.saturating_sub(1)) / 2;
    let mut table: Vec<Option<u32>> = Vec::new();
    table
        .try_reserve_exact(n.saturating_mul(pairs.min(10 * d)))
        .map_err(|e| format!("cannot allocate membership table for {n}x{d}: {e}"))?;
    Ok(())
}

/// Generate, cluster and time every size. `min_sup` turns into a per-row
/// `min_cluster_size`. Each row is seeded with `params.seed`, so the
/// workload (not the timing) is reproducible.
pub fn run_bench(
    sizes: &[(usize, usize)],
    params: &ClusterParams,
    min_sup: f64,
) -> Result<BenchReport, Error> {
    if sizes.is_empty() {
        return Err(ParamError::EmptySizes.into());
    }
    if !(min_sup > 0.0 && min_sup <= 1.0) {
        return Err(ParamError::MinSup(min_sup).into());
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let mut rows = Vec::with_capacity(sorted.len());
    for (n, d) in sorted {
        if let Err(why) = reserve_for(n, d) {
            rows.push(BenchRow::failed(n, d, why));
            continue;
        }
        let row = match generate_synthetic(&workload(n, d, params.seed)) {
            Err(e) => BenchRow::failed(n, d, e),
            Ok((x, _)) => {
                let min_cluster_size = crate::fp::min_count_from_sup(min_sup, n)?;
                let run = ClusterParams {
                    min_cluster_size,
                    ..params.clone()
                };
                match cluster(&x, &run) {
                    Ok((result, stats)) => BenchRow {
                        n,
                        d,
                        phase1_s: stats.base_search.as_secs_f64(),
                        phase2_s: stats.aggregation.as_secs_f64(),
                        total_s: stats.total().as_secs_f64(),
                        subspaces: stats.subspaces,
                        transactions: stats.transactions,
                        tree_nodes: stats.tree_nodes,
                        clusters: result.clusters.len(),
                        status: "ok".into(),
                    },
                    Err(e) => BenchRow::failed(n, d, e),
                }
            }
        };
        rows.push(row);
    }
    Ok(BenchReport {
        params: params.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_come_back_sorted() {
        let params = ClusterParams::new(5, 1);
        let report = run_bench(&[(300, 6), (120, 8), (120, 4)], &params, 0.2).unwrap();
        let keys: Vec<_> = report.rows.iter().map(|r| (r.n, r.d)).collect();
        assert_eq!(keys, vec![(120, 4), (120, 8), (300, 6)]);
        assert!(report.rows.iter().all(|r| r.is_ok() && r.total_s >= 0.0));
    }

    #[test]
    fn empty_sizes_rejected() {
        let err = run_bench(&[], &ClusterParams::new(5, 1), 0.2).unwrap_err();
        assert!(matches!(err, Error::Param(ParamError::EmptySizes)));
    }

    #[test]
    fn impossible_size_is_marked_failed() {
        let report = run_bench(&[(usize::MAX / 4, 4)], &ClusterParams::new(5, 1), 0.2).unwrap();
        assert!(!report.rows[0].is_ok());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let report = run_bench(&[(90, 4)], &ClusterParams::new(3, 1), 0.2).unwrap();
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("n,d,phase1_s,phase2_s,total_s,"));
        assert_eq!(text.lines().count(), 2);
    }
}
