//! Walks a few points of the t-cube through the state test and the
//! vertex / edge / interior classification.

use twinscope::mds::{classify, edge_point, sample_tetrahedron, EdgeCase, Region, BOUNDARY_TOL};
use twinscope::TVector;

fn main() -> twinscope::Result<()> {
    let mut points = vec![
        TVector::new(-1.0, -1.0, -1.0),
        TVector::new(1.0, 1.0, -1.0),
        TVector::new(0.4, -0.4, 1.0),
        TVector::new(-1.0, 0.3, 0.3),
        TVector::new(0.1, 0.2, 0.3),
        TVector::new(1.0, 1.0, 1.0),
    ];
    points.push(edge_point(2, EdgeCase::B, -0.25)?);
    points.push(sample_tetrahedron(7, Region::Interior)?);

    for t in &points {
        let class = classify(t, BOUNDARY_TOL)?;
        println!("{:>40}  {:?}", t.to_string(), class.kind);
        println!("{:>40}  weights {:?}", "", class.weights.0);
        if let Some([(a, wa), (b, wb)]) = class.edge_mixture() {
            println!("{:>40}  {wa:.3}*T{a} + {wb:.3}*T{b}", "");
        }
    }
    Ok(())
}
