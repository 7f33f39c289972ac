//! Root vectors of the unimodular Cremona group: the torus of
//! x1 ⋯ xn = 1 acting on A^n. Every root vector is x^α ∂/∂x_i with
//! α_i = 0.

use toric_roots::restriction::cremona_roots;

fn main() -> toric_roots::Result<()> {
    for n in 2..=3 {
        let roots = cremona_roots(n, 2)?;
        println!("n = {n}, |α| <= 2: {} root vectors", roots.len());
        for r in roots {
            println!("  {:<16} character {}", r.derivation, r.character_string);
        }
    }
    Ok(())
}
