//! Scrambles a Bell-diagonal state with random local unitaries and recovers
//! its canonical t-vector.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twinscope::linalg::tensor;
use twinscope::mds::{build_T, canonicalize, sample_tetrahedron, Region};
use twinscope::random::unitary2;

fn main() -> twinscope::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..5 {
        let t = sample_tetrahedron(seed, Region::Interior)?;
        let local = tensor(&unitary2(&mut rng), &unitary2(&mut rng));
        let scrambled = &local * build_T(&t) * local.adjoint();
        let form = canonicalize(&scrambled, 1e-8)?;
        println!("{t:>36} -> {:>36}  residual {:.1e}", form.t.to_string(), form.residual);
    }
    Ok(())
}
