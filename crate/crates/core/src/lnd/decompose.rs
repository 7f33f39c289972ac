use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::AlgebraElement;
use super::derivation::{Derivation, DescriptorSpec};
use super::oracle::{nilpotency_oracle, NilpotencyVerdict};
use crate::cones::hull_vertices;
use crate::demazure::BoxPoints;
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// Splitting of a derivation into its homogeneous pieces `∂ = Σ ∂_e`,
/// together with the vertices of the Newton polytope `Δ(∂)`.
#[derive(Clone, Debug)]
pub struct HomogeneousDecomposition {
    pub pieces: BTreeMap<LatticeVector, Derivation>,
    pub newton_polytope: Vec<LatticeVector>,
    /// Oracle verdict for the piece at each vertex.
    pub vertex_verdicts: BTreeMap<LatticeVector, NilpotencyVerdict>,
}

impl HomogeneousDecomposition {
    pub fn degrees(&self) -> impl Iterator<Item = &LatticeVector> {
        self.pieces.keys()
    }

    pub fn is_vertex(&self, e: &LatticeVector) -> bool {
        self.newton_polytope.contains(e)
    }

    pub fn report(&self) -> DecompositionReport {
        DecompositionReport {
            pieces: self
                .pieces
                .iter()
                .map(|(e, d)| PieceReport {
                    degree: e.clone(),
                    vertex: self.is_vertex(e),
                    verdict: self.vertex_verdicts.get(e).copied(),
                    derivation: DescriptorSpec::from(d.descriptor()),
                })
                .collect(),
            newton_polytope: self.newton_polytope.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub pieces: Vec<PieceReport>,
    pub newton_polytope: Vec<LatticeVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceReport {
    pub degree: LatticeVector,
    pub vertex: bool,
    pub verdict: Option<NilpotencyVerdict>,
    pub derivation: DescriptorSpec,
}

/// Splits `d` by degree shift on a generating set of the weight monoid.
///
/// Each piece is the Leibniz extension of the degree-`e` part of the
/// images of the generators. The pieces must add back up to `d` on the
/// generators, on their pairwise products and on the small monoid points;
/// otherwise the input is rejected. Vertex pieces are run through the nilpotency
/// oracle with the generators as probes.
pub fn decompose(d: &Derivation, generators: &[LatticeVector], max_iter: usize) -> Result<HomogeneousDecomposition> {
    if generators.is_empty() {
        return Err(Error::Input("decomposition needs a generating set".into()));
    }
    let cone = d.cone();
    let mut buckets: BTreeMap<LatticeVector, Vec<AlgebraElement>> = BTreeMap::new();
    for (i, g) in generators.iter().enumerate() {
        for (k, c) in d.on_character(g)?.terms() {
            let e = k - g;
            let slot = buckets
                .entry(e)
                .or_insert_with(|| vec![AlgebraElement::zero(); generators.len()]);
            slot[i].add_term(k.clone(), c.clone());
        }
    }
    let mut pieces = BTreeMap::new();
    for (e, images) in buckets {
        pieces.insert(e, Derivation::table(cone, generators.to_vec(), images)?);
    }

    let mut probes: Vec<LatticeVector> = generators.to_vec();
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i..] {
            probes.push(a + b);
        }
    }
    // small monoid points catch generating sets that miss part of the monoid
    probes.extend(BoxPoints::new(cone.rank(), 2).filter(|m| cone.dual_contains(m)));
    for m in &probes {
        let whole = d.on_character(m)?;
        let mut summed = AlgebraElement::zero();
        for (e, piece) in &pieces {
            let part = piece.on_character(m)?;
            if let Some(k) = part.characters().find(|k| &(*k - m) != e) {
                return Err(Error::InconsistentDecomposition(format!(
                    "piece of degree {e} sends χ^{m} to χ^{k}"
                )));
            }
            summed.add_assign(&part);
        }
        if summed != whole {
            return Err(Error::InconsistentDecomposition(format!(
                "pieces give {summed} on χ^{m}, the derivation gives {whole}"
            )));
        }
    }

    let degrees: Vec<LatticeVector> = pieces.keys().cloned().collect();
    let newton_polytope = hull_vertices(&degrees)?;
    let gen_probes: Vec<AlgebraElement> = generators.iter().cloned().map(AlgebraElement::character).collect();
    let mut vertex_verdicts = BTreeMap::new();
    for v in &newton_polytope {
        vertex_verdicts.insert(v.clone(), nilpotency_oracle(&pieces[v], &gen_probes, max_iter)?);
    }
    Ok(HomogeneousDecomposition { pieces, newton_polytope, vertex_verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::Cone;
    use crate::demazure::DemazureRoot;
    use crate::lattice::rational;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from(c)
    }

    fn chi(c: &[i64]) -> AlgebraElement {
        AlgebraElement::character(v(c))
    }

    fn units(n: usize) -> Vec<LatticeVector> {
        (0..n).map(|i| LatticeVector::unit(n, i)).collect()
    }

    #[test]
    fn two_piece_lnd() {
        let d = Derivation::polynomial(vec![chi(&[0, 1, 1]), chi(&[0, 0, 0]), AlgebraElement::zero()]).unwrap();
        let dec = decompose(&d, &units(3), 20).unwrap();
        assert_eq!(dec.degrees().cloned().collect::<Vec<_>>(), vec![v(&[-1, 1, 1]), v(&[0, -1, 0])]);
        assert_eq!(dec.newton_polytope.len(), 2);
        assert!(dec.vertex_verdicts.values().all(NilpotencyVerdict::is_nilpotent));
    }

    #[test]
    fn triangular_lnd_gives_a_triangle() {
        let d = Derivation::polynomial(vec![chi(&[0, 2, 0]), chi(&[0, 0, 1]), chi(&[0, 0, 0])]).unwrap();
        let dec = decompose(&d, &units(3), 50).unwrap();
        let degrees: Vec<LatticeVector> = dec.degrees().cloned().collect();
        assert_eq!(degrees, vec![v(&[-1, 2, 0]), v(&[0, -1, 1]), v(&[0, 0, -1])]);
        assert_eq!(dec.newton_polytope.len(), 3);
        assert!(dec.vertex_verdicts.values().all(NilpotencyVerdict::is_nilpotent));
        // the whole derivation is an LND too
        let probes: Vec<AlgebraElement> = units(3).into_iter().map(AlgebraElement::character).collect();
        assert!(nilpotency_oracle(&d, &probes, 50).unwrap().is_nilpotent());
    }

    #[test]
    fn homogeneous_input_is_its_own_piece() {
        let c = Cone::orthant(2);
        let d = Derivation::root(&c, &DemazureRoot::new(&c, v(&[2, -1])).unwrap(), rational(3, 1)).unwrap();
        let dec = decompose(&d, &units(2), 10).unwrap();
        assert_eq!(dec.pieces.len(), 1);
        assert_eq!(dec.newton_polytope, vec![v(&[2, -1])]);
        let piece = &dec.pieces[&v(&[2, -1])];
        for m in [[0, 1], [3, 4]] {
            assert_eq!(piece.on_character(&v(&m)).unwrap(), d.on_character(&v(&m)).unwrap());
        }
    }

    #[test]
    fn interior_degree_is_not_a_vertex() {
        // (1 + x2 + x2^2) d/dx1 has three collinear degrees
        let d = Derivation::polynomial(vec![
            chi(&[0, 0]).add(&chi(&[0, 1])).add(&chi(&[0, 2])),
            AlgebraElement::zero(),
        ])
        .unwrap();
        let dec = decompose(&d, &units(2), 10).unwrap();
        assert_eq!(dec.pieces.len(), 3);
        assert_eq!(dec.newton_polytope, vec![v(&[-1, 0]), v(&[-1, 2])]);
        assert!(!dec.vertex_verdicts.contains_key(&v(&[-1, 1])));
    }

    #[test]
    fn generators_that_miss_the_monoid_are_rejected() {
        let d = Derivation::polynomial(vec![chi(&[0, 1]), AlgebraElement::zero()]).unwrap();
        assert!(matches!(
            decompose(&d, &[v(&[1, 0])], 10),
            Err(Error::NotGenerated(_))
        ));
    }
}
