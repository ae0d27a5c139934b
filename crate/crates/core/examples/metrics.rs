//! NMI and pair-counting scores, including overlapping memberships and the
//! flattening used to give every point one label.

use subspace_fp::eval::{nmi_with, pair_scores_from_memberships, NmiNorm};
use subspace_fp::fixtures::{running_example_table, running_example_truth};
use subspace_fp::{aggregate, flatten_for_nmi, nmi, pair_scores, ClusterParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = [0, 0, 0, 1];
    let b = [0, 0, 1, 1];
    println!("NMI arithmetic {:.6}", nmi(&a, &b)?);
    println!("NMI geometric  {:.6}", nmi_with(&a, &b, NmiNorm::Geometric)?);

    // point 1 sits in both predicted clusters; point 3 in none
    let pred = vec![vec![0], vec![0, 1], vec![1], vec![]];
    let truth = vec![vec![0], vec![0], vec![1], vec![1]];
    let s = pair_scores_from_memberships(&pred, &truth)?;
    println!("overlapping: precision {:.3} recall {:.3} F1 {:.3}", s.precision, s.recall, s.f1);

    let (result, _) = aggregate(&running_example_table(), &ClusterParams::new(1, 2))?;
    let truth = running_example_truth();
    let labels = flatten_for_nmi(&result, result.n);
    println!("worked example: labels {labels:?}");
    println!("  NMI {:.4}, F1 {:.4}", nmi(&labels, &truth.labels())?, pair_scores(&result, &truth)?.f1);
    Ok(())
}
