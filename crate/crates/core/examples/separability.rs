//! Partial-transpose test on Bell states, edges and the two product-state
//! mixtures that sit at edge midpoints.

use twinscope::linalg::max_abs;
use twinscope::mds::{all_edges, bell_state, build_T, edge_point};
use twinscope::twins::{biorthogonal_separable_forms, ppt_separable};

fn main() -> twinscope::Result<()> {
    for k in 0..4 {
        let v = ppt_separable(&bell_state(k)?.1, 1e-9)?;
        println!("T{k}: separable {}, min eigenvalue {:+.6}", v.separable, v.min_eigenvalue);
    }
    for form in biorthogonal_separable_forms() {
        let v = ppt_separable(&form.product_form, 1e-9)?;
        println!(
            "{}: {} | separable {}, |product - bell| = {:.1e}, weights {:?}",
            form.label,
            form.description,
            v.separable,
            max_abs(&(&form.product_form - &form.bell_form)),
            form.bell_weights.0
        );
    }
    for (index, case) in all_edges() {
        let row: Vec<String> = [-0.6, 0.0, 0.6]
            .iter()
            .map(|&s| {
                let t = edge_point(index, case, s).expect("edge");
                let v = ppt_separable(&build_T(&t), 1e-9).expect("4x4");
                format!("{s:+.1}:{}", if v.separable { "sep" } else { "ent" })
            })
            .collect();
        println!("edge {index}{case}: {}", row.join("  "));
    }
    Ok(())
}
