use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::algebra::AlgebraElement;
use super::derivation::Derivation;
use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticeVector};

/// Outcome of iterating a derivation on probe elements.
///
/// `NotWithin` only says the iteration budget ran out; it is evidence
/// against local nilpotency, never a proof.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum NilpotencyVerdict {
    /// `∂^n` kills every probe, and `n` is the smallest such power.
    NilpotentWithin(usize),
    NotWithin(usize),
}

impl NilpotencyVerdict {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, NilpotencyVerdict::NilpotentWithin(_))
    }
}

pub fn nilpotency_oracle(
    d: &Derivation,
    probes: &[AlgebraElement],
    max_iter: usize,
) -> Result<NilpotencyVerdict> {
    if probes.is_empty() {
        return Err(Error::Input("nilpotency oracle needs at least one probe".into()));
    }
    let mut worst = 0;
    for p in probes {
        let mut cur = p.clone();
        let mut n = 0;
        while !cur.is_zero() {
            if n == max_iter {
                return Ok(NilpotencyVerdict::NotWithin(max_iter));
            }
            cur = d.apply(&cur)?;
            n += 1;
        }
        worst = worst.max(n);
    }
    Ok(NilpotencyVerdict::NilpotentWithin(worst))
}

/// Whether a derivation shifts degrees uniformly, with respect to the full
/// grading or to a coarser one given by a lattice map `M → M'`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Homogeneity {
    /// Every probe was killed, so no degree is visible.
    Vanishing,
    Homogeneous(LatticeVector),
    /// The distinct degree shifts that were observed.
    Inhomogeneous(BTreeSet<LatticeVector>),
}

/// Degree shifts of `d` observed on the characters `probes`.
pub fn observed_degree(d: &Derivation, probes: &[LatticeVector], grading: Option<&LatticeMap>) -> Result<Homogeneity> {
    let grade = |m: &LatticeVector| -> Result<LatticeVector> {
        match grading {
            Some(g) => g.apply(m),
            None => Ok(m.clone()),
        }
    };
    let mut shifts = BTreeSet::new();
    for m in probes {
        let image = d.on_character(m)?;
        let base = grade(m)?;
        for k in image.characters() {
            shifts.insert(&grade(k)? - &base);
        }
    }
    Ok(match shifts.len() {
        0 => Homogeneity::Vanishing,
        1 => Homogeneity::Homogeneous(shifts.into_iter().next().expect("one element")),
        _ => Homogeneity::Inhomogeneous(shifts),
    })
}
