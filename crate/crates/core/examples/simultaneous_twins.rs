//! A mixture of Bell states has exactly the twins its components share.

use twinscope::mds::{bell_mixture, bell_state, BellWeights};
use twinscope::twins::{pauli_coords, simultaneous_twins, twin_space};
use twinscope::RANK_TOL;

fn main() -> twinscope::Result<()> {
    let cases: [&[usize]; 4] = [&[1, 2], &[0, 3], &[0, 1, 2], &[0, 1, 2, 3]];
    for support in cases {
        let projectors = support
            .iter()
            .map(|&k| bell_state(k).map(|(_, p)| p))
            .collect::<twinscope::Result<Vec<_>>>()?;
        let joint = simultaneous_twins(&projectors, RANK_TOL)?;
        let mut w = [0.0; 4];
        for &k in support {
            w[k] = 1.0 / support.len() as f64;
        }
        let mixed = twin_space(&bell_mixture(&BellWeights(w)), RANK_TOL)?;
        println!(
            "support {support:?}: shared twins {}, mixture twins {}, distance {:.1e}",
            joint.dimension,
            mixed.dimension,
            joint.distance(&mixed)
        );
        for pair in joint.basis.iter().skip(1) {
            println!("    {:.3?} ~ {:.3?}", pauli_coords(&pair.a1), pauli_coords(&pair.a2));
        }
    }
    Ok(())
}
