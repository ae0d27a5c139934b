//! The five-point worked example: membership table, FP-tree before and
//! after knee pruning, maximal patterns and the final clusters.

use subspace_fp::fixtures::{drawing_rank, running_example_table};
use subspace_fp::fp::min_count_from_sup;
use subspace_fp::{aggregate, build_fp_tree, knee_prune, mine_maximal, to_transactions, ClusterParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = running_example_table();
    println!("membership table:");
    z.write_csv(std::io::stdout())?;

    let min_count = min_count_from_sup(0.4, z.n())?;
    let tree = build_fp_tree(&to_transactions(&z), min_count, &drawing_rank());
    println!("\nFP-tree (min_count {min_count}):\n{}", tree.dump());
    let pruned = knee_prune(&tree, 2.0);
    println!("after knee pruning:\n{}", pruned.dump());

    for p in mine_maximal(&pruned) {
        let items: Vec<_> = p.items.iter().map(ToString::to_string).collect();
        println!("pattern {} support {}", items.join(" "), p.support);
    }

    let params = ClusterParams::new(1, min_count).with_tie_break(drawing_rank());
    let (result, _) = aggregate(&z, &params)?;
    for c in &result.clusters {
        let points: Vec<_> = c.points.iter().map(|p| format!("x{}", p + 1)).collect();
        println!("cluster {}: points {{{}}} dims {:?}", c.id, points.join(","), c.dims);
    }
    Ok(())
}
