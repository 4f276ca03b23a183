//! Twin spaces along the tetrahedron: the brute-force solver against the
//! closed-form edge families.

use twinscope::mds::{all_edges, bell_t_vector, build_T, classify, edge_point, sample_tetrahedron, Region, BOUNDARY_TOL};
use twinscope::twins::{analytic_edge_twins, pauli_coords, twin_space};
use twinscope::RANK_TOL;

fn main() -> twinscope::Result<()> {
    for k in 0..4 {
        let space = twin_space(&build_T(&bell_t_vector(k)?), RANK_TOL)?;
        println!("vertex T{k}: dimension {}", space.dimension);
    }
    for (index, case) in all_edges() {
        let t = edge_point(index, case, 0.35)?;
        let space = twin_space(&build_T(&t), RANK_TOL)?;
        let analytic = analytic_edge_twins(&classify(&t, BOUNDARY_TOL)?)?;
        let pair = &analytic.basis[1];
        println!(
            "edge {index}{case} at {t}: dimension {}, gap {:.1e}, closed form {:?} / {:?}, distance {:.1e}",
            space.dimension,
            space.singular_value_gap.unwrap_or(f64::NAN),
            pauli_coords(&pair.a1),
            pauli_coords(&pair.a2),
            analytic.distance(&space)
        );
    }
    let t = sample_tetrahedron(1, Region::Interior)?;
    let space = twin_space(&build_T(&t), RANK_TOL)?;
    println!("interior {t}: dimension {}", space.dimension);
    Ok(())
}
