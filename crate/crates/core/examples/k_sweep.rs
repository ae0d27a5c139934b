//! Run several k and keep the result covering the most points. Runs whose
//! pattern search exceeds the work budget are reported as skipped.

use subspace_fp::dataset::{ClusterSpec, SyntheticSpec};
use subspace_fp::fp::min_count_from_sup;
use subspace_fp::{generate_synthetic, pair_scores, sweep, ClusterParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SyntheticSpec {
        n: 900,
        d: 35,
        seed: 2,
        clusters: vec![
            ClusterSpec::spread(0..300, 0..10, 2.0, 8.0, 0.05),
            ClusterSpec::spread(300..600, 10..30, 2.0, 8.0, 0.05),
        ],
        background: None,
    };
    let (x, truth) = generate_synthetic(&spec)?;
    let params = ClusterParams::new(10, min_count_from_sup(0.3, x.n())?);
    let (best, entries) = sweep(&x, &params, &[10, 15, 20, 25])?;
    for e in &entries {
        match &e.skipped {
            Some(why) => println!("k={:>2}: skipped ({why})", e.k),
            None => println!("k={:>2}: {} clusters, coverage {:.3}", e.k, e.clusters, e.coverage),
        }
    }
    let k = best.params.as_ref().map_or(0, |p| p.k);
    println!("kept k={k}, F1 {:.3}", pair_scores(&best, &truth)?.f1);
    Ok(())
}
