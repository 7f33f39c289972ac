//! Demazure roots of a plane cone, listed by distinguished ray and drawn
//! as an SVG diagram.
//!
//! ```text
//! cargo run --example demazure_roots > roots.svg
//! ```

use toric_roots::cli::{run, Command, Format, RunConfig};
use toric_roots::demazure::{is_root, roots_of_ray};
use toric_roots::lattice::LatticeVector;
use toric_roots::Cone;

fn main() -> toric_roots::Result<()> {
    // the cone of the A1 singularity: rays (1,0) and (1,2)
    let cone = Cone::from_generators(2, &[LatticeVector::from(&[1, 0][..]), LatticeVector::from(&[1, 2][..])])?;
    for ray in cone.rays() {
        let roots = roots_of_ray(&cone, ray, 4);
        eprintln!("S for ray {ray}: {} roots in the box of size 4", roots.len());
        for r in &roots {
            debug_assert_eq!(is_root(&cone, r.e()).as_ref(), Some(ray));
            eprintln!("  {}", r.e());
        }
    }

    let dir = std::env::temp_dir().join("toric-roots-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("a1.json");
    std::fs::write(&path, r#"{"rank": 2, "rays": [[1, 0], [1, 2]]}"#).expect("write cone");
    let config = RunConfig {
        seed: 0,
        command: Command::Roots { cone: path, bound: 4, format: Format { json: false, svg: true } },
    };
    print!("{}", run(&config).stdout);
    Ok(())
}
