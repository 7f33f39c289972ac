//! Splitting a triangular derivation of K[x1, x2, x3] into homogeneous
//! pieces. The pieces at the vertices of the Newton polytope are again
//! locally nilpotent.

use toric_roots::lattice::{rational, LatticeVector};
use toric_roots::lnd::{decompose, AlgebraElement, Derivation};

fn main() -> toric_roots::Result<()> {
    let x = |e: [i64; 3], c: i64| AlgebraElement::monomial(LatticeVector::from(&e[..]), rational(c, 1));
    // ∂x1 = x2^2 + 3 x3, ∂x2 = x3^2 - 1, ∂x3 = 2
    let d = Derivation::polynomial(vec![
        x([0, 2, 0], 1).add(&x([0, 0, 1], 3)),
        x([0, 0, 2], 1).add(&x([0, 0, 0], -1)),
        x([0, 0, 0], 2),
    ])?;
    let gens: Vec<LatticeVector> = (0..3).map(|i| LatticeVector::unit(3, i)).collect();
    let dec = decompose(&d, &gens, 50)?;
    for piece in dec.report().pieces {
        let mark = if piece.vertex { "vertex" } else { "      " };
        println!("{mark} degree {:<10} {:?}", piece.degree.to_string(), piece.verdict);
    }
    println!("Newton polytope vertices: {}", dec.newton_polytope.len());
    Ok(())
}
