//! Time both phases on growing inputs. Sizes default to a quick run; pass
//! `NxD` arguments for others, e.g. `10000x10 100000x10`.

use subspace_fp::bench::run_bench;
use subspace_fp::cli::parse_sizes;
use subspace_fp::ClusterParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let sizes = if args.is_empty() {
        vec![(2_000, 10), (4_000, 10), (8_000, 10)]
    } else {
        parse_sizes(&args.join(","))?
    };
    let report = run_bench(&sizes, &ClusterParams::new(10, 1), 0.2)?;
    println!("{:>8} {:>4} {:>9} {:>9} {:>9} {:>6}", "n", "d", "phase1", "phase2", "total", "nodes");
    for r in &report.rows {
        if r.is_ok() {
            println!(
                "{:>8} {:>4} {:>8.3}s {:>8.3}s {:>8.3}s {:>6}",
                r.n, r.d, r.phase1_s, r.phase2_s, r.total_s, r.tree_nodes
            );
        } else {
            println!("{:>8} {:>4} failed: {}", r.n, r.d, r.status);
        }
    }
    if let (Some(first), Some(last)) = (report.rows.first(), report.rows.last()) {
        println!("time ratio {:.1} for {:.0}x the points", last.total_s / first.total_s, last.n as f64 / first.n as f64);
    }
    Ok(())
}
