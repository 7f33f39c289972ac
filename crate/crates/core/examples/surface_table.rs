//! The restriction picture for toric surfaces with a one-dimensional
//! subtorus: case, table rows, the set Λ of doubly covered T-roots, and
//! the coefficients p1, p2 of the polyhedral divisor.

use toric_roots::lattice::LatticeVector;
use toric_roots::surface::{ah_invariants, classify_surface, lambda_members, normalize_cone, SurfaceData};
use toric_roots::Cone;

fn describe(s: &SurfaceData) -> toric_roots::Result<()> {
    let case = classify_surface(s);
    println!("cone{{(1,0),({},{})}} with line ({},{}): {:?}", s.a, s.b, s.r, s.q, case.tag);
    for row in &case.rows {
        println!(
            "  {:?}: root vectors {:?}, fiber {:?}, all homogeneous {}",
            row.degrees, row.root_vectors, row.fiber, row.all_homogeneous
        );
    }
    if case.lambda.is_some() {
        let m = lambda_members(s, 12)?;
        let shown: Vec<String> = m.members.iter().map(|x| x.to_string()).collect();
        println!("  Λ ∩ [-12, 12] = {{{}}}", shown.join(", "));
        let inv = ah_invariants(s)?;
        println!("  p1 = {}, p2 = {}", inv.p1, inv.p2);
    }
    Ok(())
}

fn main() -> toric_roots::Result<()> {
    for (a, b, r, q) in [(0, 1, 1, 1), (2, 5, 2, 3), (3, 5, 4, 5), (1, 3, -1, 1), (1, 2, 1, 2)] {
        describe(&SurfaceData::from_i64(a, b, r, q)?)?;
    }

    // any plane cone can be brought to normal form first
    let cone = Cone::from_generators(2, &[LatticeVector::from(&[2, 1][..]), LatticeVector::from(&[1, 3][..])])?;
    let nf = normalize_cone(&cone)?;
    println!("cone{{(2,1),(1,3)}} is cone{{(1,0),({},{})}} after the change of basis", nf.a, nf.b);
    describe(&nf.surface_data(&LatticeVector::from(&[1, 1][..]))?)?;
    Ok(())
}
