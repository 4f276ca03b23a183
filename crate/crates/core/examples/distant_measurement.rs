//! Measuring one half of a twin pair predicts the other with certainty;
//! a non-twin pair does not.

use twinscope::mds::{build_T, classify, BOUNDARY_TOL};
use twinscope::twins::{analytic_edge_twins, distant_correlation};
use twinscope::{ObservablePair, TVector};

fn main() -> twinscope::Result<()> {
    let t = TVector::new(0.4, -0.4, 1.0);
    let rho = build_T(&t);
    let class = classify(&t, BOUNDARY_TOL)?;
    let twins = analytic_edge_twins(&class)?;

    let pair = &twins.basis[1];
    let r = distant_correlation(pair, &rho)?;
    println!("twin pair on {t}:");
    println!("  joint {:?}", r.joint_distribution);
    println!("  mismatch {:.3e}", r.mismatch_probability);

    let control = ObservablePair::from_pauli([0.0, 1.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]);
    let r = distant_correlation(&control, &rho)?;
    println!("(sigma1, sigma1) on {t}:");
    println!("  joint {:?}", r.joint_distribution);
    println!("  mismatch {:.6}", r.mismatch_probability);
    Ok(())
}
