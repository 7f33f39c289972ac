//! Restriction of roots along a subtorus `T ⊂ 𝕋`.
//!
//! A subtorus is given by a saturated sublattice `N_T ⊆ N`. Characters
//! restrict through the dual surjection `π: M → M_T`; `M_T` is identified
//! with `Z^k` through the dual of the chosen basis of `N_T`, so
//! `π(e)_i = <b_i, e>`. In corank one the kernel of `π` is generated by the
//! primitive character `m_T`, and every fiber of `π` restricted to the
//! roots is a set of lattice points `x0 + λ m_T`. Fibers are therefore
//! computed by solving one integer interval per ray, which certifies their
//! size without relying on an enumeration box.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cones::{Cone, Hyperplane, HyperplaneSpec, RelativePosition};
use crate::demazure::{is_root, roots_within, BoxPoints, DemazureRoot};
use crate::error::{Error, Result};
use crate::lattice::{
    ceil_div, dot, floor_div, int, kernel_generator, orthogonal_basis, primitive, sign_canonical, solve_integer,
    ColumnEchelon, Int, LatticeMap, LatticeVector,
};

/// The data of a subtorus: a basis of `N_T`, the matrix of `π` and, in
/// corank one, the kernel generator `m_T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubtorusRestriction {
    pi: LatticeMap,
    m_t: Option<LatticeVector>,
}

impl SubtorusRestriction {
    /// `basis` must be linearly independent and span a saturated sublattice.
    pub fn from_basis(basis: &[LatticeVector], rank: usize) -> Result<SubtorusRestriction> {
        if basis.is_empty() {
            return Err(Error::Input("subtorus basis is empty".into()));
        }
        if basis.len() > rank {
            return Err(Error::DependentBasis);
        }
        for b in basis {
            if b.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: b.rank() });
            }
        }
        let index = ColumnEchelon::compute(basis, rank)?.index();
        if !index.is_one() {
            return Err(Error::NotSaturated(index.to_string()));
        }
        let m_t = if basis.len() + 1 == rank { Some(kernel_generator(basis, rank)?) } else { None };
        Ok(SubtorusRestriction { pi: LatticeMap::new(basis.to_vec(), rank)?, m_t })
    }

    /// The corank-1 subtorus whose one-parameter subgroups are orthogonal
    /// to `normal`.
    pub fn from_normal(normal: &LatticeVector) -> Result<SubtorusRestriction> {
        let m_t = sign_canonical(primitive(normal)?);
        let basis = orthogonal_basis(&m_t)?;
        Ok(SubtorusRestriction { pi: LatticeMap::new(basis, m_t.rank())?, m_t: Some(m_t) })
    }

    pub fn from_spec(spec: &HyperplaneSpec, rank: usize) -> Result<SubtorusRestriction> {
        match spec {
            HyperplaneSpec::Normal { normal } => {
                if normal.rank() != rank {
                    return Err(Error::RankMismatch { expected: rank, found: normal.rank() });
                }
                Self::from_normal(normal)
            }
            HyperplaneSpec::Basis { basis } => Self::from_basis(basis, rank),
        }
    }

    pub fn basis(&self) -> &[LatticeVector] {
        self.pi.rows()
    }

    pub fn pi(&self) -> &LatticeMap {
        &self.pi
    }

    pub fn m_t(&self) -> Option<&LatticeVector> {
        self.m_t.as_ref()
    }

    /// Rank of `N`.
    pub fn rank(&self) -> usize {
        self.pi.rank_in()
    }

    /// `rank N - rank N_T`.
    pub fn corank(&self) -> usize {
        self.pi.rank_in() - self.pi.rank_out()
    }

    /// The hyperplane `Γ_T`, in corank one.
    pub fn hyperplane(&self) -> Result<Hyperplane> {
        match &self.m_t {
            Some(_) => Hyperplane::from_basis(self.pi.rows(), self.rank()),
            None => Err(Error::UnsupportedCorank(self.corank())),
        }
    }

    fn require_m_t(&self) -> Result<&LatticeVector> {
        self.m_t.as_ref().ok_or(Error::UnsupportedCorank(self.corank()))
    }

    pub fn restrict_root(&self, e: &LatticeVector) -> Result<LatticeVector> {
        self.pi.apply(e)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum CardinalityClass {
    ExactlyOne,
    /// Finite, with `k` elements (possibly none).
    Exactly { k: usize },
    /// Infinite; the report carries the progression.
    InfiniteCertified,
    /// Box enumeration only; roots outside the box were not ruled out.
    UnknownBeyondBound { seen: usize },
}

impl CardinalityClass {
    pub fn finite_size(&self) -> Option<usize> {
        match self {
            CardinalityClass::ExactlyOne => Some(1),
            CardinalityClass::Exactly { k } => Some(*k),
            _ => None,
        }
    }

    fn of_count(k: usize) -> Self {
        if k == 1 {
            CardinalityClass::ExactlyOne
        } else {
            CardinalityClass::Exactly { k }
        }
    }
}

/// Dimension of the space of root vectors of a given `T`-degree.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum RootVectorDimension {
    One,
    Dim { k: usize },
    InfiniteDim,
    /// One root vector per point of `P^1`.
    P1Family,
    Unknown,
}

/// The `λ` for which `x0 + λ m_T` is a root distinguished by `ray`.
/// A missing end means the interval is unbounded on that side.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RayInterval {
    pub ray: LatticeVector,
    #[serde(with = "crate::lattice::opt_int_serde")]
    pub lambda_min: Option<Int>,
    #[serde(with = "crate::lattice::opt_int_serde")]
    pub lambda_max: Option<Int>,
}

impl RayInterval {
    pub fn is_empty(&self) -> bool {
        matches!((&self.lambda_min, &self.lambda_max), (Some(lo), Some(hi)) if lo > hi)
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_empty() && (self.lambda_min.is_none() || self.lambda_max.is_none())
    }

    pub fn len(&self) -> Option<usize> {
        match (&self.lambda_min, &self.lambda_max) {
            (Some(lo), Some(hi)) if lo > hi => Some(0),
            (Some(lo), Some(hi)) => usize::try_from(hi - lo + Int::one()).ok(),
            _ => None,
        }
    }
}

/// An infinite family of roots `base + j * step`, `j >= 0`, all with the
/// same distinguished ray and restriction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Progression {
    pub ray: LatticeVector,
    pub base: LatticeVector,
    pub step: LatticeVector,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiberReport {
    pub t_root: LatticeVector,
    /// All preimages of a finite fiber; for an infinite fiber, those in the
    /// sup-norm box of size `bound`.
    pub preimages: Vec<DemazureRoot>,
    pub bound: u32,
    pub cardinality_class: CardinalityClass,
    pub root_vector_dimension: RootVectorDimension,
    /// Whether every `T`-homogeneous LND of this degree is homogeneous for
    /// the big torus; `None` when undecided.
    pub t_homogeneous_implies_homogeneous: Option<bool>,
    /// One interval per ray; empty for box-only reports.
    pub intervals: Vec<RayInterval>,
    pub progressions: Vec<Progression>,
}

impl FiberReport {
    /// Rays distinguishing some preimage, including preimages outside the
    /// box when the intervals are known.
    pub fn rays(&self) -> BTreeSet<&LatticeVector> {
        if self.intervals.is_empty() {
            self.preimages.iter().map(|r| r.ray()).collect()
        } else {
            self.intervals.iter().filter(|iv| !iv.is_empty()).map(|iv| &iv.ray).collect()
        }
    }
}

/// Certified fiber of `π` over `t_root` among the roots of `cone`.
pub fn fiber(s: &SubtorusRestriction, cone: &Cone, t_root: &LatticeVector, bound: u32) -> Result<FiberReport> {
    let m_t = s.require_m_t()?;
    if cone.rank() != s.rank() {
        return Err(Error::RankMismatch { expected: s.rank(), found: cone.rank() });
    }
    let x0 = solve_integer(s.basis(), s.rank(), t_root)?
        .ok_or_else(|| Error::Input(format!("{t_root} has no preimage under π")))?;
    let a: Vec<Int> = cone.rays().iter().map(|n| dot(n, &x0)).collect();
    let sl: Vec<Int> = cone.rays().iter().map(|n| dot(n, m_t)).collect();

    let mut intervals = Vec::with_capacity(a.len());
    for (i, ray) in cone.rays().iter().enumerate() {
        intervals.push(ray_interval(ray.clone(), i, &a, &sl));
    }

    let in_box = box_range(&x0, m_t, bound);
    let mut preimages = Vec::new();
    let mut progressions = Vec::new();
    for iv in &intervals {
        if iv.is_empty() {
            continue;
        }
        let (lo, hi) = if iv.is_infinite() {
            let (step, start) = match (&iv.lambda_min, &iv.lambda_max) {
                (Some(lo), None) => (m_t.clone(), lo.clone()),
                (None, Some(hi)) => (-m_t, hi.clone()),
                _ => unreachable!("rays span N, so some pairing with m_T is nonzero"),
            };
            progressions.push(Progression { ray: iv.ray.clone(), base: x0.add_scaled(&start, m_t), step });
            match &in_box {
                Some((blo, bhi)) => (
                    max_opt(iv.lambda_min.as_ref(), blo),
                    min_opt(iv.lambda_max.as_ref(), bhi),
                ),
                None => continue,
            }
        } else {
            (iv.lambda_min.clone().expect("finite"), iv.lambda_max.clone().expect("finite"))
        };
        let mut l = lo;
        while l <= hi {
            preimages.push(DemazureRoot::new_unchecked(x0.add_scaled(&l, m_t), iv.ray.clone()));
            l += 1;
        }
    }
    preimages.sort();

    let infinite = !progressions.is_empty();
    let cardinality_class = if infinite {
        CardinalityClass::InfiniteCertified
    } else {
        CardinalityClass::of_count(preimages.len())
    };
    let rays: BTreeSet<&LatticeVector> = preimages.iter().map(|r| r.ray()).collect();
    let pairing_of = |ray: &LatticeVector| dot(ray, m_t);
    let root_vector_dimension = if infinite {
        RootVectorDimension::InfiniteDim
    } else {
        match (preimages.len(), rays.len()) {
            (0, _) => RootVectorDimension::Dim { k: 0 },
            (1, _) => RootVectorDimension::One,
            (k, 1) if rays.iter().all(|r| pairing_of(r).is_zero()) => RootVectorDimension::Dim { k },
            _ => RootVectorDimension::Unknown,
        }
    };
    let t_homogeneous_implies_homogeneous = if infinite {
        Some(false)
    } else {
        match (preimages.len(), rays.len()) {
            (0, _) => None,
            (1, _) => Some(true),
            (_, 1) => Some(false),
            // a ray pairing to ±1 with m_T carries the two-parameter family
            _ if rays.iter().any(|r| pairing_of(r).abs().is_one()) => Some(false),
            _ => None,
        }
    };
    Ok(FiberReport {
        t_root: t_root.clone(),
        preimages,
        bound,
        cardinality_class,
        root_vector_dimension,
        t_homogeneous_implies_homogeneous,
        intervals,
        progressions,
    })
}

fn ray_interval(ray: LatticeVector, i: usize, a: &[Int], sl: &[Int]) -> RayInterval {
    let empty = RayInterval { ray: ray.clone(), lambda_min: Some(Int::one()), lambda_max: Some(Int::zero()) };
    let target = -Int::one() - &a[i];
    let (mut lo, mut hi): (Option<Int>, Option<Int>) = if sl[i].is_zero() {
        if !target.is_zero() {
            return empty;
        }
        (None, None)
    } else {
        if !(&target % &sl[i]).is_zero() {
            return empty;
        }
        let l = &target / &sl[i];
        (Some(l.clone()), Some(l))
    };
    for j in (0..a.len()).filter(|&j| j != i) {
        // a_j + λ s_j >= 0
        if sl[j].is_zero() {
            if a[j].is_negative() {
                return empty;
            }
        } else if sl[j].is_positive() {
            let b = ceil_div(&-&a[j], &sl[j]);
            lo = Some(match lo {
                Some(x) if x > b => x,
                _ => b,
            });
        } else {
            let b = floor_div(&-&a[j], &sl[j]);
            hi = Some(match hi {
                Some(x) if x < b => x,
                _ => b,
            });
        }
    }
    let out = RayInterval { ray, lambda_min: lo, lambda_max: hi };
    if out.is_empty() {
        empty
    } else {
        out
    }
}

/// The `λ` with `x0 + λ m` in the sup-norm box, or `None` if there are none.
fn box_range(x0: &LatticeVector, m: &LatticeVector, bound: u32) -> Option<(Int, Int)> {
    let b = int(bound as i64);
    let mut lo: Option<Int> = None;
    let mut hi: Option<Int> = None;
    for (x, mc) in x0.coords().iter().zip(m.coords()) {
        if mc.is_zero() {
            if x.abs() > b {
                return None;
            }
            continue;
        }
        let (l, h) = if mc.is_positive() {
            (ceil_div(&(-&b - x), mc), floor_div(&(&b - x), mc))
        } else {
            (ceil_div(&(&b - x), mc), floor_div(&(-&b - x), mc))
        };
        lo = Some(max_opt(lo.as_ref(), &l));
        hi = Some(min_opt(hi.as_ref(), &h));
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l <= h => Some((l, h)),
        _ => None,
    }
}

fn max_opt(a: Option<&Int>, b: &Int) -> Int {
    match a {
        Some(a) if a > b => a.clone(),
        _ => b.clone(),
    }
}

fn min_opt(a: Option<&Int>, b: &Int) -> Int {
    match a {
        Some(a) if a < b => a.clone(),
        _ => b.clone(),
    }
}

/// Fiber by box enumeration, for subtori of any corank. Nothing outside
/// the box is ruled out, so the class is always `UnknownBeyondBound`.
pub fn fiber_in_box(s: &SubtorusRestriction, cone: &Cone, t_root: &LatticeVector, bound: u32) -> Result<FiberReport> {
    if t_root.rank() != s.pi.rank_out() {
        return Err(Error::RankMismatch { expected: s.pi.rank_out(), found: t_root.rank() });
    }
    let mut preimages = Vec::new();
    for e in BoxPoints::new(cone.rank(), bound) {
        if let Some(ray) = is_root(cone, &e) {
            if &s.restrict_root(&e)? == t_root {
                preimages.push(DemazureRoot::new_unchecked(e, ray));
            }
        }
    }
    preimages.sort();
    Ok(FiberReport {
        t_root: t_root.clone(),
        cardinality_class: CardinalityClass::UnknownBeyondBound { seen: preimages.len() },
        preimages,
        bound,
        root_vector_dimension: RootVectorDimension::Unknown,
        t_homogeneous_implies_homogeneous: None,
        intervals: Vec::new(),
        progressions: Vec::new(),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RayReport {
    pub ray: LatticeVector,
    #[serde(with = "crate::lattice::int_serde")]
    pub pairing_with_m_t: Int,
    /// `π` is injective on `S_ρ` exactly when `ρ` is not in `Γ_T`.
    pub injective: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub position: RelativePosition,
    pub m_t: LatticeVector,
    pub bound: u32,
    pub rays: Vec<RayReport>,
    /// Pairs of ray indices whose images share a `T`-root within the bound.
    pub overlapping_rays: Vec<(usize, usize)>,
    pub t_roots: Vec<LatticeVector>,
    pub fibers: Vec<FiberReport>,
    /// Every fiber over a `T`-root within the bound is a single root.
    pub bijective: bool,
}

impl ClassifyReport {
    pub fn fiber(&self, t_root: &LatticeVector) -> Option<&FiberReport> {
        self.fibers.iter().find(|f| &f.t_root == t_root)
    }

    pub fn images_disjoint(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        !self.overlapping_rays.contains(&key)
    }
}

/// Full restriction analysis of the roots of `cone` within the box.
///
/// The `T`-roots considered are the images of the roots in the box; by
/// surjectivity of restriction these are all `T`-roots there can be.
pub fn classify(s: &SubtorusRestriction, cone: &Cone, bound: u32) -> Result<ClassifyReport> {
    let m_t = s.require_m_t()?.clone();
    let position = cone.relative_position(&s.hyperplane()?)?;
    let rays: Vec<RayReport> = cone
        .rays()
        .iter()
        .map(|n| {
            let p = dot(n, &m_t);
            RayReport { ray: n.clone(), injective: !p.is_zero(), pairing_with_m_t: p }
        })
        .collect();
    let t_roots: Vec<LatticeVector> = roots_within(cone, bound)
        .iter()
        .map(|r| s.restrict_root(r.e()))
        .collect::<Result<BTreeSet<_>>>()?
        .into_iter()
        .collect();
    let fibers: Vec<FiberReport> = t_roots
        .par_iter()
        .map(|t| fiber(s, cone, t, bound))
        .collect::<Result<_>>()?;

    let index: BTreeMap<&LatticeVector, usize> = cone.rays().iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut overlapping = BTreeSet::new();
    for f in &fibers {
        let idx: Vec<usize> = f.rays().into_iter().map(|r| index[r]).collect();
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                overlapping.insert((i.min(j), i.max(j)));
            }
        }
    }
    let bijective = fibers.iter().all(|f| f.cardinality_class == CardinalityClass::ExactlyOne);
    Ok(ClassifyReport {
        position,
        m_t,
        bound,
        rays,
        overlapping_rays: overlapping.into_iter().collect(),
        t_roots,
        fibers,
        bijective,
    })
}

/// A root vector `x^α ∂/∂x_i` of the group of polynomial automorphisms
/// with Jacobian one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CremonaRootVector {
    /// 1-based index of the differentiated variable.
    pub variable: usize,
    pub alpha: LatticeVector,
    /// Exponents of the character `t_i^{-1} ∏ t_j^{α_j}`; this is the root.
    pub character: LatticeVector,
    pub derivation: String,
    pub character_string: String,
}

/// Root vectors of the unimodular automorphism group of `K^n` with
/// `|α| <= bound`, obtained by restricting the roots of `A^n` to the torus
/// `∏ t_i = 1`.
pub fn cremona_roots(n: usize, bound: u32) -> Result<Vec<CremonaRootVector>> {
    if n < 2 {
        return Err(Error::Input(format!("need at least two variables, got {n}")));
    }
    let cone = Cone::orthant(n);
    let s = SubtorusRestriction::from_normal(&LatticeVector::new(vec![Int::one(); n]))?;
    let report = classify(&s, &cone, bound.max(1))?;
    let mut out = Vec::new();
    for f in &report.fibers {
        if f.cardinality_class != CardinalityClass::ExactlyOne {
            return Err(Error::Input(format!("fiber over {} is not a single root", f.t_root)));
        }
        let root = &f.preimages[0];
        let i = root.ray().coords().iter().position(|c| c.is_one()).expect("orthant ray");
        let alpha = root.e() + root.ray();
        let degree: Int = alpha.coords().iter().sum();
        if degree > int(bound as i64) {
            continue;
        }
        out.push(CremonaRootVector {
            variable: i + 1,
            derivation: format!("{}d/dx{}", monomial_string(&alpha, "x", "*"), i + 1),
            character_string: character_string(root.e()),
            alpha,
            character: root.e().clone(),
        });
    }
    out.sort();
    Ok(out)
}

fn monomial_string(alpha: &LatticeVector, var: &str, sep: &str) -> String {
    let mut parts = Vec::new();
    for (j, a) in alpha.coords().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if a.is_one() {
            parts.push(format!("{var}{}", j + 1));
        } else {
            parts.push(format!("{var}{}^{a}", j + 1));
        }
    }
    if parts.is_empty() {
        String::new()
    } else {
        format!("{}{sep}", parts.join("*"))
    }
}

fn character_string(e: &LatticeVector) -> String {
    let s = monomial_string(e, "t", "");
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}
