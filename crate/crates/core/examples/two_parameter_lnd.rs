//! The P¹ family of T-homogeneous LNDs on A² over a doubly covered
//! T-root. With T acting by (t, t), every T-root e >= -1 has two
//! preimages, and the family interpolates between the two root LNDs.

use toric_roots::lattice::{rational, LatticeVector};
use toric_roots::lnd::{nilpotency_oracle, observed_degree, AlgebraElement, Homogeneity};
use toric_roots::surface::{two_parameter_family, SurfaceData};
use toric_roots::LatticeMap;

fn main() -> toric_roots::Result<()> {
    let s = SurfaceData::from_i64(0, 1, 1, 1)?;
    let grading = LatticeMap::new(vec![s.line()], 2)?;
    let e = toric_roots::lattice::int(0);
    for (alpha, beta) in [(1, 0), (0, 1), (1, 1), (2, -3)] {
        let d = two_parameter_family(&s, &e, rational(alpha, 1), rational(beta, 1))?;
        let x = d.on_character(&LatticeVector::from(&[1, 0][..]))?;
        let y = d.on_character(&LatticeVector::from(&[0, 1][..]))?;
        let probes: Vec<LatticeVector> = (0..4).flat_map(|i| (0..4).map(move |j| LatticeVector::from(&[i, j][..]))).collect();
        let t_degree = observed_degree(&d, &probes, Some(&grading))?;
        let full = observed_degree(&d, &probes, None)?;
        let elements: Vec<AlgebraElement> = probes.into_iter().map(AlgebraElement::character).collect();
        println!("(α:β) = ({alpha}:{beta}): ∂x = {}, ∂y = {}", x.to_polynomial_string(), y.to_polynomial_string());
        println!("  T-degree {:?}", t_degree);
        println!("  homogeneous for the big torus: {}", matches!(full, Homogeneity::Homogeneous(_)));
        println!("  {:?}", nilpotency_oracle(&d, &elements, 20)?);
    }
    Ok(())
}
