//! Two clusters whose subspaces share dimensions. Each cluster keeps the
//! shared dimensions in its own subspace.

use subspace_fp::dataset::{ClusterSpec, SyntheticSpec};
use subspace_fp::fp::min_count_from_sup;
use subspace_fp::{cluster, flatten_for_nmi, generate_synthetic, nmi, ClusterParams, SubspaceCluster};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: usize = std::env::args().nth(1).map_or(Ok(20), |s| s.parse())?;
    let spec = SyntheticSpec {
        n: 1000,
        d,
        seed: 1,
        clusters: vec![
            ClusterSpec::spread(0..400, 5..9, 2.0, 8.0, 0.05),
            ClusterSpec::spread(400..800, 4..8, 8.0, 2.0, 0.05),
        ],
        background: None,
    };
    let (x, truth) = generate_synthetic(&spec)?;
    let (result, _) = cluster(&x, &ClusterParams::new(10, min_count_from_sup(0.3, x.n())?))?;
    for planted in &truth.clusters {
        let shared = |c: &&SubspaceCluster| c.points.iter().filter(|p| planted.points.binary_search(p).is_ok()).count();
        println!("planted {} points in dims {:?}", planted.points.len(), planted.dims);
        if let Some(found) = result.clusters.iter().max_by_key(shared) {
            println!("  best match: {} points in dims {:?}", found.points.len(), found.dims);
        }
    }
    let score = nmi(&flatten_for_nmi(&result, x.n()), &truth.labels())?;
    println!("d = {d}: NMI {score:.3}");
    Ok(())
}
