//! Pure-state machinery on the singlet and on a non-maximally entangled
//! state: Schmidt data, the antiunitary correlation map, and twin partners.

use twinscope::linalg::{c64, pauli, CVector};
use twinscope::mds::bell_state;
use twinscope::schmidt::{correlation_operator, pure_schmidt, pure_twin_partner};
use twinscope::twins::{is_twin_pair, pauli_coords, TWIN_TOL};
use twinscope::ObservablePair;

fn main() -> twinscope::Result<()> {
    let (singlet, rho) = bell_state(0)?;
    let ps = pure_schmidt(&singlet)?;
    let map = correlation_operator(&ps)?;
    println!("singlet Schmidt coefficients {:?}", ps.coefficients);
    let up = CVector::from_vec(vec![c64(1.0, 0.0), c64(0.0, 0.0)]);
    let down = CVector::from_vec(vec![c64(0.0, 0.0), c64(1.0, 0.0)]);
    let show = |v: &CVector| v.iter().map(|z| format!("{:+.3}{:+.3}i", z.re, z.im)).collect::<Vec<_>>().join(", ");
    println!("|0> -> ({})", show(&map.apply(&up)));
    println!("|1> -> ({})", show(&map.apply(&down)));

    // On the singlet every observable has a twin: a2 = -a1 for traceless a1.
    let a1 = pauli(1)? * c64(0.6, 0.0) + pauli(3)? * c64(0.8, 0.0);
    let a2 = pure_twin_partner(&a1, &singlet)?;
    let check = is_twin_pair(&ObservablePair { a1: a1.clone(), a2: a2.clone() }, &rho, TWIN_TOL)?;
    println!("twin of {:?} is {:?} (residual {:e})", pauli_coords(&a1), pauli_coords(&a2), check.residual);

    // Unequal coefficients: only functions of rho1 have twins.
    let phi = CVector::from_vec(vec![c64(0.6, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.8)]);
    let ps = pure_schmidt(&phi)?;
    println!("\n0.6|00> + 0.8i|11>: coefficients {:?}", ps.coefficients);
    let a1 = pauli(3)?;
    println!("twin of sigma3 is {:?}", pauli_coords(&pure_twin_partner(&a1, &phi)?));
    match pure_twin_partner(&pauli(1)?, &phi) {
        Ok(_) => println!("sigma1 unexpectedly has a twin"),
        Err(e) => println!("sigma1 has no twin: {e}"),
    }
    Ok(())
}
