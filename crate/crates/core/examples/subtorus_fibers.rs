//! Restricting the roots of A³ to the two-dimensional subtorus whose
//! one-parameter subgroups span (1,1,0) and (0,0,1).
//!
//! Over (c,-1) the fiber has c+1 roots, all on the ray e3, which lies in
//! the hyperplane; elsewhere every fiber has exactly two roots.

use toric_roots::lattice::LatticeVector;
use toric_roots::restriction::{classify, fiber, SubtorusRestriction};
use toric_roots::Cone;

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from(c)
}

fn main() -> toric_roots::Result<()> {
    let a3 = Cone::orthant(3);
    let s = SubtorusRestriction::from_basis(&[v(&[1, 1, 0]), v(&[0, 0, 1])], 3)?;
    println!("m_T = {}", s.m_t().expect("corank one"));

    let report = classify(&s, &a3, 3)?;
    println!("position: {}", report.position.name());
    for r in &report.rays {
        println!("  ray {}: ⟨n, m_T⟩ = {}, π injective on its roots: {}", r.ray, r.pairing_with_m_t, r.injective);
    }

    for t in [[2, 3], [0, 0], [3, -1], [5, -1]] {
        let f = fiber(&s, &a3, &v(&t), 8)?;
        let roots: Vec<String> = f.preimages.iter().map(|r| r.e().to_string()).collect();
        println!("fiber over {}: {:?} = {{{}}}", v(&t), f.cardinality_class, roots.join(", "));
        println!("  root vectors: {:?}, T-homogeneous implies homogeneous: {:?}", f.root_vector_dimension, f.t_homogeneous_implies_homogeneous);
    }
    Ok(())
}
