//! Demazure roots of a cone.
//!
//! A lattice point `e` of `M` is a root with distinguished ray `ρ` when it
//! pairs to `-1` with `n_ρ` and nonnegatively with every other ray. Each
//! `S_ρ` is infinite, so enumeration always takes an explicit sup-norm box
//! and is complete within that box.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{dot, Int, LatticeVector};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct DemazureRoot {
    e: LatticeVector,
    ray: LatticeVector,
}

impl DemazureRoot {
    pub fn new(cone: &Cone, e: LatticeVector) -> Result<DemazureRoot> {
        match is_root(cone, &e) {
            Some(ray) => Ok(DemazureRoot { e, ray }),
            None => Err(Error::NotARoot(e.to_string())),
        }
    }

    pub(crate) fn new_unchecked(e: LatticeVector, ray: LatticeVector) -> DemazureRoot {
        DemazureRoot { e, ray }
    }

    /// The degree `e` in `M`.
    pub fn e(&self) -> &LatticeVector {
        &self.e
    }

    /// The distinguished ray generator `n_ρ`.
    pub fn ray(&self) -> &LatticeVector {
        &self.ray
    }
}

/// Returns the distinguished ray when `e` is a root of `cone`.
///
/// Two rays cannot both pair to `-1` with a root, since every ray other
/// than the distinguished one must pair nonnegatively.
pub fn is_root(cone: &Cone, e: &LatticeVector) -> Option<LatticeVector> {
    if e.rank() != cone.rank() {
        return None;
    }
    let minus_one = -Int::one();
    let mut distinguished = None;
    for r in cone.rays() {
        let p = dot(r, e);
        if p == minus_one {
            if distinguished.is_some() {
                return None;
            }
            distinguished = Some(r);
        } else if p.is_negative() {
            return None;
        }
    }
    distinguished.cloned()
}

/// All roots with sup-norm at most `bound`, grouped by distinguished ray
/// (in the cone's ray order) and sorted lexicographically within a group.
pub fn roots_within(cone: &Cone, bound: u32) -> Vec<DemazureRoot> {
    let mut found: Vec<(usize, DemazureRoot)> = BoxPoints::new(cone.rank(), bound)
        .filter_map(|e| {
            let ray = is_root(cone, &e)?;
            let idx = cone.rays().iter().position(|r| *r == ray)?;
            Some((idx, DemazureRoot { e, ray }))
        })
        .collect();
    found.sort();
    found.into_iter().map(|(_, r)| r).collect()
}

/// Roots of `cone` within the box whose distinguished ray is `ray`.
pub fn roots_of_ray(cone: &Cone, ray: &LatticeVector, bound: u32) -> Vec<DemazureRoot> {
    roots_within(cone, bound).into_iter().filter(|r| r.ray() == ray).collect()
}

/// Lattice points of the box `[-bound, bound]^rank` in lexicographic order.
#[derive(Clone, Debug)]
pub struct BoxPoints {
    current: Option<Vec<i64>>,
    bound: i64,
}

impl BoxPoints {
    pub fn new(rank: usize, bound: u32) -> Self {
        let bound = bound as i64;
        BoxPoints { current: Some(vec![-bound; rank]), bound }
    }
}

impl Iterator for BoxPoints {
    type Item = LatticeVector;

    fn next(&mut self) -> Option<LatticeVector> {
        let cur = self.current.as_mut()?;
        let out = LatticeVector::from(cur.as_slice());
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.bound {
                cur[i] += 1;
                for c in &mut cur[i + 1..] {
                    *c = -self.bound;
                }
                break;
            }
        }
        Some(out)
    }
}
