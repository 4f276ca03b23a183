//! Operator Schmidt decomposition of a Bell-diagonal state, computed by SVD
//! and from the closed form, plus the round trip.

use twinscope::mds::build_T;
use twinscope::schmidt::{bell_diagonal_expansion, operator_schmidt, round_trip_residual};
use twinscope::twins::pauli_coords;
use twinscope::TVector;

fn main() -> twinscope::Result<()> {
    let t = TVector::new(0.4, -0.4, 1.0);
    let rho = build_T(&t);
    let os = operator_schmidt(&rho)?;
    let closed = bell_diagonal_expansion(t.0);

    println!("t = {t}");
    println!("svd coefficients    {:?}", os.coefficients);
    println!("closed form         {:?}", closed.coefficients);
    println!("multiplicities      {:?}", os.multiplicities);
    println!("norm of rho         {}", os.norm);
    for (k, (a, b)) in os.left_ops.iter().zip(&os.right_ops).enumerate() {
        println!("  term {k}: A = {:.4?}  B = {:.4?}", pauli_coords(a), pauli_coords(b));
    }
    println!("round-trip residual {:e}", round_trip_residual(&rho)?);
    Ok(())
}
