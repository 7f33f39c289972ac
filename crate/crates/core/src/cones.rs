//! Pointed, full-dimensional rational polyhedral cones.
//!
//! A [`Cone`] is built from any finite generating set. Its facet normals
//! (equivalently, the rays of the dual cone) are computed once with the
//! double description method, after which the extreme rays are read off
//! by facet incidence. Both lists are primitive and sorted
//! lexicographically, so equal cones compare equal.

use std::collections::BTreeSet;

use num_bigint::Sign;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, dot, primitive, rank_of, Int, LatticeVector};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
}

impl Cone {
    pub fn from_generators(rank: usize, generators: &[LatticeVector]) -> Result<Cone> {
        let mut gens: Vec<LatticeVector> = Vec::new();
        for g in generators {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
            if g.is_zero() {
                continue;
            }
            let p = primitive(g)?;
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        if gens.is_empty() {
            return Err(Error::EmptyCone);
        }
        let span = rank_of(&gens);
        if span < rank {
            return Err(Error::NotFullDimensional { rank, span });
        }
        let mut facets = double_description(&gens, rank);
        if rank_of(&facets) < rank {
            return Err(Error::NotPointed);
        }
        facets.sort();
        let mut rays: Vec<LatticeVector> = gens
            .into_iter()
            .filter(|g| {
                let tight: Vec<LatticeVector> =
                    facets.iter().filter(|f| dot(f, g).is_zero()).cloned().collect();
                rank_of(&tight) + 1 == rank
            })
            .collect();
        rays.sort();
        Ok(Cone { rank, rays, facets })
    }

    /// The cone spanned by the standard basis, `Q^d_{>=0}`.
    pub fn orthant(d: usize) -> Cone {
        let rays: Vec<LatticeVector> = (0..d).rev().map(|i| LatticeVector::unit(d, i)).collect();
        Cone { rank: d, facets: rays.clone(), rays }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Primitive generators of the extreme rays, lexicographically sorted.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Primitive inward facet normals, lexicographically sorted.
    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn dual(&self) -> Cone {
        Cone {
            rank: self.rank,
            rays: self.facets.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.rank() == self.rank && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    /// Whether `m` lies in the dual cone, i.e. pairs nonnegatively with
    /// every ray. For the cone `σ` this is membership in the weight monoid.
    pub fn dual_contains(&self, m: &LatticeVector) -> bool {
        m.rank() == self.rank && self.rays.iter().all(|r| !dot(r, m).is_negative())
    }

    pub fn interior_contains(&self, v: &LatticeVector) -> bool {
        v.rank() == self.rank && self.facets.iter().all(|f| dot(f, v).is_positive())
    }

    /// A lattice point in the interior (the sum of the rays).
    pub fn interior_point(&self) -> LatticeVector {
        self.rays.iter().fold(LatticeVector::zero(self.rank), |acc, r| &acc + r)
    }

    pub fn relative_position(&self, h: &Hyperplane) -> Result<RelativePosition> {
        if h.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: h.rank() });
        }
        let signs: Vec<Sign> = self.rays.iter().map(|r| dot(r, h.normal()).sign()).collect();
        let pos = signs.contains(&Sign::Plus);
        let neg = signs.contains(&Sign::Minus);
        let in_plane: Vec<LatticeVector> = self
            .rays
            .iter()
            .zip(&signs)
            .filter(|(_, s)| **s == Sign::NoSign)
            .map(|(r, _)| r.clone())
            .collect();
        Ok(match (pos && neg, in_plane.is_empty()) {
            (false, true) => RelativePosition::ZeroOnly,
            (false, false) => RelativePosition::Face { dim: rank_of(&in_plane), rays: in_plane },
            (true, true) => RelativePosition::InteriorNoRays,
            (true, false) => RelativePosition::InteriorWithRays { rays: in_plane },
        })
    }
}

/// Extreme rays of `{ m : <g, m> >= 0 for all g }` for a generating set of
/// full rank, by incremental double description with the combinatorial
/// adjacency test.
fn double_description(gens: &[LatticeVector], rank: usize) -> Vec<LatticeVector> {
    // greedily pick `rank` independent constraints to seed the iteration
    let mut seed: Vec<usize> = Vec::with_capacity(rank);
    for i in 0..gens.len() {
        let mut trial: Vec<LatticeVector> = seed.iter().map(|&j| gens[j].clone()).collect();
        trial.push(gens[i].clone());
        if rank_of(&trial) == trial.len() {
            seed.push(i);
            if seed.len() == rank {
                break;
            }
        }
    }
    debug_assert_eq!(seed.len(), rank);

    // columns of B^{-1} are the rays of the simplicial seed cone
    let b: Vec<LatticeVector> = seed.iter().map(|&j| gens[j].clone()).collect();
    let det = lattice::determinant(&b);
    let adj = adjugate(&b);
    let mut rays: Vec<(LatticeVector, BTreeSet<usize>)> = (0..rank)
        .map(|col| {
            let c = LatticeVector::new(adj.iter().map(|row| &row[col] * det.signum()).collect());
            let zeros = seed.iter().enumerate().filter(|&(k, _)| k != col).map(|(_, &j)| j).collect();
            (primitive(&c).expect("adjugate column of a nonsingular matrix"), zeros)
        })
        .collect();

    for (gi, g) in gens.iter().enumerate() {
        if seed.contains(&gi) {
            continue;
        }
        let values: Vec<Int> = rays.iter().map(|(r, _)| dot(g, r)).collect();
        let mut next: Vec<(LatticeVector, BTreeSet<usize>)> = Vec::new();
        for ((r, z), val) in rays.iter().zip(&values) {
            if val.is_positive() {
                next.push((r.clone(), z.clone()));
            } else if val.is_zero() {
                let mut z = z.clone();
                z.insert(gi);
                next.push((r.clone(), z));
            }
        }
        for (pi, vp) in values.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (ni, vn) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common: BTreeSet<usize> = rays[pi].1.intersection(&rays[ni].1).copied().collect();
                if common.len() + 2 < rank {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, z))| k == pi || k == ni || !common.is_subset(z));
                if !adjacent {
                    continue;
                }
                let combo = rays[ni].0.scaled(vp).add_scaled(&-vn, &rays[pi].0);
                let mut z = common;
                z.insert(gi);
                next.push((primitive(&combo).expect("adjacent rays are not opposite"), z));
            }
        }
        rays = next;
    }
    let mut out: Vec<LatticeVector> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    out
}

fn adjugate(rows: &[LatticeVector]) -> Vec<Vec<Int>> {
    let n = rows.len();
    if n == 1 {
        return vec![vec![Int::from(1)]];
    }
    let mut adj = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<LatticeVector> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    LatticeVector::new(
                        row.coords()
                            .iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect(),
                    )
                })
                .collect();
            let cof = lattice::determinant(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

/// A rational hyperplane through the origin in `N_Q`, carried both as its
/// primitive normal in `M` and as a basis of its lattice points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperplane {
    normal: LatticeVector,
    basis: Vec<LatticeVector>,
}

impl Hyperplane {
    /// Normal is made primitive with first nonzero coordinate positive.
    pub fn from_normal(normal: &LatticeVector) -> Result<Hyperplane> {
        let normal = lattice::sign_canonical(primitive(normal)?);
        let basis = lattice::orthogonal_basis(&normal)?;
        Ok(Hyperplane { normal, basis })
    }

    /// `basis` must span a saturated corank-1 sublattice.
    pub fn from_basis(basis: &[LatticeVector], rank: usize) -> Result<Hyperplane> {
        let normal = lattice::kernel_generator(basis, rank)?;
        Ok(Hyperplane { normal, basis: basis.to_vec() })
    }

    pub fn normal(&self) -> &LatticeVector {
        &self.normal
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.normal.rank()
    }

    pub fn contains(&self, n: &LatticeVector) -> bool {
        dot(n, &self.normal).is_zero()
    }
}

/// JSON cone descriptor: `{"rank": k, "rays": [[...], ...]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConeSpec {
    pub rank: usize,
    pub rays: Vec<LatticeVector>,
}

impl ConeSpec {
    pub fn build(&self) -> Result<Cone> {
        Cone::from_generators(self.rank, &self.rays)
    }
}

impl From<&Cone> for ConeSpec {
    fn from(c: &Cone) -> Self {
        ConeSpec { rank: c.rank(), rays: c.rays().to_vec() }
    }
}

/// JSON hyperplane descriptor: `{"normal": [...]}` or `{"basis": [[...], ...]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HyperplaneSpec {
    Normal { normal: LatticeVector },
    Basis { basis: Vec<LatticeVector> },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum RelativePosition {
    /// The hyperplane meets the cone only at the origin.
    ZeroOnly,
    /// The intersection is a proper face of dimension `dim`.
    Face { dim: usize, rays: Vec<LatticeVector> },
    InteriorNoRays,
    InteriorWithRays { rays: Vec<LatticeVector> },
}

impl RelativePosition {
    pub fn name(&self) -> &'static str {
        match self {
            RelativePosition::ZeroOnly => "ZeroOnly",
            RelativePosition::Face { .. } => "Face",
            RelativePosition::InteriorNoRays => "InteriorNoRays",
            RelativePosition::InteriorWithRays { .. } => "InteriorWithRays",
        }
    }
}

/// Vertices of the convex hull of a finite point set, in input order.
pub fn hull_vertices(points: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let mut distinct: Vec<LatticeVector> = Vec::new();
    for p in points {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    if distinct.len() <= 1 {
        return Ok(distinct);
    }
    let n = distinct[0].rank();
    let base = distinct[0].clone();
    let diffs: Vec<LatticeVector> = distinct.iter().map(|p| p - &base).collect();
    let dim = rank_of(&diffs);

    // a coordinate projection that is injective on the affine hull
    let mut cols: Vec<usize> = Vec::with_capacity(dim);
    for c in 0..n {
        let mut trial = cols.clone();
        trial.push(c);
        if rank_of(&project(&diffs, &trial)) == trial.len() {
            cols = trial;
            if cols.len() == dim {
                break;
            }
        }
    }
    let lifted: Vec<LatticeVector> = project(&diffs, &cols)
        .into_iter()
        .map(|p| {
            let mut c = p.into_coords();
            c.push(Int::from(1));
            LatticeVector::new(c)
        })
        .collect();
    let cone = Cone::from_generators(dim + 1, &lifted)?;
    Ok(distinct
        .into_iter()
        .zip(&lifted)
        .filter(|(_, l)| cone.rays().contains(l))
        .map(|(p, _)| p)
        .collect())
}

fn project(points: &[LatticeVector], cols: &[usize]) -> Vec<LatticeVector> {
    points
        .iter()
        .map(|p| LatticeVector::new(cols.iter().map(|&c| p.coords()[c].clone()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from(c)
    }

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_generators(rank, &gens.iter().map(|g| v(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        for d in 1..=4 {
            let c = Cone::orthant(d);
            assert_eq!(c.dual(), c);
            let gens: Vec<LatticeVector> = (0..d).map(|i| LatticeVector::unit(d, i)).collect();
            assert_eq!(Cone::from_generators(d, &gens).unwrap(), c);
        }
    }

    #[test]
    fn dual_of_surface_cone() {
        let c = cone(2, &[&[1, 0], &[1, 2]]);
        let d = c.dual();
        assert_eq!(d.rays(), &[v(&[0, 1]), v(&[2, -1])]);
        let mut zeros = 0;
        for r in c.rays() {
            for m in d.rays() {
                let p = dot(r, m);
                assert!(!p.is_negative());
                zeros += p.is_zero() as usize;
            }
        }
        assert_eq!(zeros, 2);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        assert_eq!(cone(2, &[&[1, 0], &[2, 5], &[1, 2]]).rays(), &[v(&[1, 0]), v(&[2, 5])]);
        assert_eq!(cone(2, &[&[1, 0], &[0, 1], &[1, 1]]), Cone::orthant(2));
        assert_eq!(cone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).rays().len(), 3);
        assert_eq!(cone(2, &[&[1, 0], &[1, 2]]).rays(), &[v(&[1, 0]), v(&[1, 2])]);
    }

    #[test]
    fn square_pyramid_has_four_facets() {
        let c = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1], &[0, 0, 1]]);
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        assert!(c.interior_contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn degenerate_cones_are_rejected() {
        assert_eq!(
            Cone::from_generators(2, &[v(&[1, 0]), v(&[2, 0])]),
            Err(Error::NotFullDimensional { rank: 2, span: 1 })
        );
        assert_eq!(
            Cone::from_generators(2, &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])]),
            Err(Error::NotPointed)
        );
        assert_eq!(Cone::from_generators(2, &[v(&[0, 0])]), Err(Error::EmptyCone));
    }

    #[test]
    fn relative_positions() {
        let o3 = Cone::orthant(3);
        let sum = Hyperplane::from_normal(&v(&[1, 1, 1])).unwrap();
        assert_eq!(o3.relative_position(&sum).unwrap(), RelativePosition::ZeroOnly);

        let plane = Hyperplane::from_basis(&[v(&[1, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        assert_eq!(
            o3.relative_position(&plane).unwrap(),
            RelativePosition::InteriorWithRays { rays: vec![v(&[0, 0, 1])] }
        );

        let z3 = Hyperplane::from_normal(&v(&[0, 0, 1])).unwrap();
        assert_eq!(
            o3.relative_position(&z3).unwrap(),
            RelativePosition::Face { dim: 2, rays: vec![v(&[0, 1, 0]), v(&[1, 0, 0])] }
        );

        let generic = Hyperplane::from_normal(&v(&[1, -2, 3])).unwrap();
        assert_eq!(o3.relative_position(&generic).unwrap(), RelativePosition::InteriorNoRays);
    }

    #[test]
    fn hull_vertices_simple() {
        let pts = [v(&[0, 0]), v(&[2, 0]), v(&[0, 2]), v(&[1, 1]), v(&[1, 0])];
        assert_eq!(hull_vertices(&pts).unwrap(), vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2])]);
        // collinear points in 3-space
        let line = [v(&[0, 0, 0]), v(&[1, 1, 1]), v(&[3, 3, 3])];
        assert_eq!(hull_vertices(&line).unwrap(), vec![v(&[0, 0, 0]), v(&[3, 3, 3])]);
        // a triangle in 3-space
        let tri = [v(&[-1, 2, 0]), v(&[0, -1, 1]), v(&[0, 0, -1])];
        assert_eq!(hull_vertices(&tri).unwrap().len(), 3);
        assert_eq!(hull_vertices(&[v(&[4, 4])]).unwrap(), vec![v(&[4, 4])]);
    }

    /// Facets by brute force: every hyperplane through `rank - 1`
    /// independent generators that leaves all generators on one side.
    fn brute_force_facets(rank: usize, gens: &[LatticeVector]) -> Vec<LatticeVector> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            (0..n)
                .flat_map(|last| {
                    subsets(last, k - 1).into_iter().map(move |mut s| {
                        s.push(last);
                        s
                    })
                })
                .collect()
        }
        let mut out = BTreeSet::new();
        for s in subsets(gens.len(), rank - 1) {
            let rows: Vec<LatticeVector> = s.iter().map(|&i| gens[i].clone()).collect();
            let w = lattice::cross_product(&rows, rank);
            if w.is_zero() {
                continue;
            }
            let w = primitive(&w).unwrap();
            for cand in [w.clone(), -&w] {
                if gens.iter().all(|g| !dot(g, &cand).is_negative()) {
                    out.insert(cand);
                }
            }
        }
        out.into_iter().collect()
    }

    fn small_vec(rank: usize) -> impl Strategy<Value = LatticeVector> {
        prop::collection::vec(-4i64..=4, rank).prop_map(LatticeVector::from)
    }

    proptest! {
        #[test]
        fn biduality_and_facets_match_brute_force(
            rank in 2usize..=3,
            seed in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 3..7),
        ) {
            // push generators into a half-space so the cone is pointed
            let gens: Vec<LatticeVector> = seed
                .iter()
                .map(|g| {
                    let mut c = g[..rank].to_vec();
                    c[rank - 1] = c[rank - 1].abs() + 1;
                    LatticeVector::from(c)
                })
                .collect();
            match Cone::from_generators(rank, &gens) {
                Ok(c) => {
                    let prim: Vec<LatticeVector> = gens.iter().map(|g| primitive(g).unwrap()).collect();
                    prop_assert_eq!(c.facets().to_vec(), brute_force_facets(rank, &prim));
                    prop_assert_eq!(c.dual().dual(), c.clone());
                    let rebuilt = Cone::from_generators(rank, c.rays()).unwrap();
                    prop_assert_eq!(&rebuilt, &c);
                    let dual_rebuilt = Cone::from_generators(rank, c.facets()).unwrap();
                    prop_assert_eq!(dual_rebuilt, c.dual());
                    for f in c.facets() {
                        let incident: Vec<LatticeVector> =
                            c.rays().iter().filter(|r| dot(r, f).is_zero()).cloned().collect();
                        prop_assert!(incident.len() + 1 >= rank);
                        for r in c.rays() {
                            prop_assert!(!dot(r, f).is_negative());
                        }
                    }
                }
                Err(Error::NotFullDimensional { .. }) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn zero_only_means_strictly_signed(
            gens in prop::collection::vec(prop::collection::vec(0i64..=4, 3), 3..6),
            normal in small_vec(3),
        ) {
            prop_assume!(!normal.is_zero());
            let gens: Vec<LatticeVector> = gens.into_iter().map(LatticeVector::from).collect();
            let Ok(c) = Cone::from_generators(3, &gens) else { return Ok(()) };
            let h = Hyperplane::from_normal(&normal).unwrap();
            if c.relative_position(&h).unwrap() == RelativePosition::ZeroOnly {
                let sign = dot(&c.rays()[0], h.normal()).signum();
                for r in c.rays() {
                    prop_assert!((dot(r, h.normal()) * &sign).is_positive());
                }
                prop_assert!((dot(&c.interior_point(), h.normal()) * &sign).is_positive());
            }
        }
    }
}
