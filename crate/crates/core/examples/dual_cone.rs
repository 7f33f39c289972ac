//! Dual cone, facets and the position of a hyperplane relative to a cone.
//!
//! ```text
//! cargo run --example dual_cone
//! ```

use toric_roots::lattice::LatticeVector;
use toric_roots::{Cone, Hyperplane};

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from(c)
}

fn main() -> toric_roots::Result<()> {
    // a non-simplicial cone in rank 3, given by redundant generators
    let sigma = Cone::from_generators(3, &[v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1]), v(&[0, 0, 1])])?;
    println!("rays of σ:");
    for r in sigma.rays() {
        println!("  {r}");
    }
    println!("facet normals (rays of the weight cone ω):");
    for f in sigma.facets() {
        println!("  {f}");
    }
    let omega = sigma.dual();
    assert_eq!(omega.dual(), sigma);

    for normal in [[0, 0, 1], [1, 0, 0], [1, 1, 0], [1, 0, -1]] {
        let h = Hyperplane::from_normal(&v(&normal))?;
        println!("hyperplane ⟨·,{}⟩ = 0: {:?}", v(&normal), sigma.relative_position(&h)?);
    }
    Ok(())
}
