//! Round trip through files: write a dataset as CSV, read it back,
//! normalize, cluster, and save the result and membership table.

use std::fs::File;

use subspace_fp::dataset::{ClusterSpec, SyntheticSpec};
use subspace_fp::{
    build_membership, cluster, enumerate_subspaces, generate_synthetic, load_matrix, zscore_normalize,
    ClusterParams, ClusteringResult, Policy,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("subspace-fp-csv-example");
    std::fs::create_dir_all(&dir)?;
    let spec = SyntheticSpec {
        n: 600,
        d: 8,
        seed: 4,
        clusters: vec![
            ClusterSpec::spread(0..250, 0..4, 10.0, 40.0, 0.5),
            ClusterSpec::spread(250..500, 4..8, 40.0, 10.0, 0.5),
        ],
        background: None,
    };
    let (x, _) = generate_synthetic(&spec)?;
    let data_path = dir.join("data.csv");
    x.write_csv(File::create(&data_path)?, b',')?;

    let loaded = load_matrix(File::open(&data_path)?, true, b',')?;
    assert_eq!(loaded, x);
    let z = zscore_normalize(&loaded);
    let params = ClusterParams::new(6, 150).with_seed(9);
    let (result, _) = cluster(&z, &params)?;

    let result_path = dir.join("result.json");
    std::fs::write(&result_path, result.to_json())?;
    let back = ClusteringResult::from_json(&std::fs::read_to_string(&result_path)?)?;
    assert_eq!(back, result);

    let subspaces = enumerate_subspaces(z.d(), 2, Policy::All, params.seed)?;
    let table = build_membership(&z, &subspaces, params.k, params.min_base_size(), params.seed)?;
    table.write_csv(File::create(dir.join("membership.csv"))?)?;

    println!("wrote {}", dir.display());
    for c in &result.clusters {
        println!("cluster {}: {} points in dims {:?}", c.id, c.points.len(), c.dims);
    }
    Ok(())
}
