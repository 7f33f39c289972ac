//! A derivation that is homogeneous for a one-dimensional subtorus but
//! not for the whole torus: ∂ = x2 x3 ∂/∂x1 + ∂/∂x2 with the subtorus
//! (t, t, 1/t).
//!
//! The subtorus has corank two, and this is why the fiber machinery,
//! which needs a hyperplane, says nothing here.

use toric_roots::demazure::BoxPoints;
use toric_roots::lattice::LatticeVector;
use toric_roots::lnd::{decompose, nilpotency_oracle, observed_degree, AlgebraElement, Derivation};
use toric_roots::restriction::{classify, SubtorusRestriction};
use toric_roots::{Cone, LatticeMap};

fn main() -> toric_roots::Result<()> {
    let x = |e: [i64; 3]| AlgebraElement::character(LatticeVector::from(&e[..]));
    let d = Derivation::polynomial(vec![x([0, 1, 1]), x([0, 0, 0]), AlgebraElement::zero()])?;
    let probes: Vec<LatticeVector> = BoxPoints::new(3, 4)
        .filter(|m| m.coords().iter().all(|c| c >= &0.into()))
        .collect();

    let grading = LatticeMap::new(vec![LatticeVector::from(&[1, 1, -1][..])], 3)?;
    println!("degree for the subtorus: {:?}", observed_degree(&d, &probes, Some(&grading))?);
    println!("degrees for the torus:   {:?}", observed_degree(&d, &probes, None)?);

    // x1^m needs 2m + 1 steps: ∂ lowers 2 m1 + m2 by one each time
    for m in 1..=5 {
        let verdict = nilpotency_oracle(&d, &[x([m, 0, 0])], 100)?;
        println!("x1^{m}: {verdict:?}");
    }

    let gens: Vec<LatticeVector> = (0..3).map(|i| LatticeVector::unit(3, i)).collect();
    let dec = decompose(&d, &gens, 20)?;
    let degrees: Vec<String> = dec.degrees().map(|e| e.to_string()).collect();
    println!("homogeneous components: {}", degrees.join(", "));

    let s = SubtorusRestriction::from_basis(&[LatticeVector::from(&[1, 1, -1][..])], 3)?;
    println!("classify on the corank-{} subtorus: {:?}", s.corank(), classify(&s, &Cone::orthant(3), 2).err());
    Ok(())
}
