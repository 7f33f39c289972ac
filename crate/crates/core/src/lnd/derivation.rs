use std::collections::HashSet;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::algebra::AlgebraElement;
use crate::cones::{Cone, ConeSpec};
use crate::demazure::{is_root, DemazureRoot};
use crate::error::{Error, Result};
use crate::lattice::{dot, rational_serde, Int, LatticeMap, LatticeVector, Rational};

/// Largest exponent accepted for the pre-expanded binomial power of the
/// two-parameter family.
const MAX_EXPONENT: u64 = 4096;

/// A derivation of the semigroup algebra `K[ω_M]`, given by its action on
/// characters.
///
/// The cone stored here is `σ` in `N`; the algebra is spanned by the
/// characters of its dual cone.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    cone: Cone,
    descriptor: Descriptor,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Descriptor {
    /// `scalar * <n_ρ, m> χ^{m+e}`.
    Root { root: DemazureRoot, scalar: Rational },
    TwoParameter(TwoParameter),
    Sum(Vec<Descriptor>),
    Table(GeneratorTable),
}

/// The derivation
/// `χ^m ↦ χ^{m+e2} (α<n1,m>χ^{m_T} + β<n2,m>) (αχ^{m_T} - β<n2,m_T>)^{<n1,e2>}`
/// attached to roots `e1 ∈ S_ρ1`, `e2 ∈ S_ρ2` with equal restriction.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoParameter {
    pub e1: DemazureRoot,
    pub e2: DemazureRoot,
    pub m_t: LatticeVector,
    pub alpha: Rational,
    pub beta: Rational,
    /// `<n_ρ1, e2>`.
    pub exponent: u64,
    /// Coefficient of `χ^{j m_T}` in the binomial power, indexed by `j`.
    expansion: Vec<Rational>,
}

/// Images of a generating set of the weight monoid, extended to all
/// characters by the Leibniz rule.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorTable {
    generators: Vec<LatticeVector>,
    images: Vec<AlgebraElement>,
    /// Inverse of the generator matrix when the generators form a lattice
    /// basis; then every character has a unique expression.
    basis_inverse: Option<LatticeMap>,
}

impl GeneratorTable {
    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    /// Nonnegative integer coefficients expressing `m` in the generators.
    fn express(&self, cone: &Cone, m: &LatticeVector) -> Option<Vec<Int>> {
        if let Some(inv) = &self.basis_inverse {
            // columns of the generator matrix are the generators
            let coeffs = inv.apply(m).ok()?;
            return coeffs
                .coords()
                .iter()
                .all(|c| !c.is_negative())
                .then(|| coeffs.into_coords());
        }
        let mut dead: HashSet<LatticeVector> = HashSet::new();
        let mut counts = vec![Int::zero(); self.generators.len()];
        self.search(cone, m, &mut counts, &mut dead).then_some(counts)
    }

    // terminates because every generator is a nonzero point of a pointed
    // cone, so the remainder strictly decreases against an interior functional
    fn search(
        &self,
        cone: &Cone,
        m: &LatticeVector,
        counts: &mut [Int],
        dead: &mut HashSet<LatticeVector>,
    ) -> bool {
        if m.is_zero() {
            return true;
        }
        if dead.contains(m) {
            return false;
        }
        for (i, g) in self.generators.iter().enumerate() {
            let rest = m - g;
            if !cone.dual_contains(&rest) {
                continue;
            }
            counts[i] += 1;
            if self.search(cone, &rest, counts, dead) {
                return true;
            }
            counts[i] -= 1;
        }
        dead.insert(m.clone());
        false
    }
}

impl Derivation {
    pub fn root(cone: &Cone, root: &DemazureRoot, scalar: Rational) -> Result<Derivation> {
        if is_root(cone, root.e()).as_ref() != Some(root.ray()) {
            return Err(Error::NotARoot(root.e().to_string()));
        }
        Ok(Derivation {
            cone: cone.clone(),
            descriptor: Descriptor::Root { root: root.clone(), scalar },
        })
    }

    /// The two-parameter family. Preconditions, each reported separately:
    /// `e1`, `e2` are roots with distinct distinguished rays,
    /// `<n_ρ1, m_T> = -1`, and `e1 - e2 = (<n_ρ1, e2> + 1) m_T`.
    pub fn two_parameter(
        cone: &Cone,
        e1: &LatticeVector,
        e2: &LatticeVector,
        m_t: &LatticeVector,
        alpha: Rational,
        beta: Rational,
    ) -> Result<Derivation> {
        let r1 = DemazureRoot::new(cone, e1.clone())?;
        let r2 = DemazureRoot::new(cone, e2.clone())?;
        if m_t.rank() != cone.rank() {
            return Err(Error::RankMismatch { expected: cone.rank(), found: m_t.rank() });
        }
        if r1.ray() == r2.ray() {
            return Err(Error::Precondition(format!(
                "both roots have distinguished ray {}",
                r1.ray()
            )));
        }
        let n1_mt = dot(r1.ray(), m_t);
        if n1_mt != -Int::one() {
            return Err(Error::Precondition(format!(
                "<n_rho1, m_T> = {n1_mt}, expected -1"
            )));
        }
        let exponent_int = dot(r1.ray(), e2);
        let lambda = &exponent_int + 1;
        if (e1 - e2) != m_t.scaled(&lambda) {
            return Err(Error::Precondition(format!(
                "e1 - e2 = {} is not ({lambda}) * m_T = {}",
                e1 - e2,
                m_t.scaled(&lambda)
            )));
        }
        let exponent = exponent_int
            .to_u64()
            .filter(|&k| k <= MAX_EXPONENT)
            .ok_or_else(|| Error::Precondition(format!("exponent <n_rho1, e2> = {exponent_int} out of range")))?;
        let c2 = Rational::from_integer(dot(r2.ray(), m_t));
        let expansion = binomial_expansion(&alpha, &(-&beta * &c2), exponent);
        Ok(Derivation {
            cone: cone.clone(),
            descriptor: Descriptor::TwoParameter(TwoParameter {
                e1: r1,
                e2: r2,
                m_t: m_t.clone(),
                alpha,
                beta,
                exponent,
                expansion,
            }),
        })
    }

    /// Images of `generators`, extended by the Leibniz rule. Generators and
    /// images must lie in the weight monoid.
    pub fn table(cone: &Cone, generators: Vec<LatticeVector>, images: Vec<AlgebraElement>) -> Result<Derivation> {
        if generators.len() != images.len() {
            return Err(Error::Input(format!(
                "{} generators but {} images",
                generators.len(),
                images.len()
            )));
        }
        for g in &generators {
            if !cone.dual_contains(g) {
                return Err(Error::OutsideMonoid(g.to_string()));
            }
            if g.is_zero() {
                return Err(Error::Input("zero generator".into()));
            }
        }
        for img in &images {
            img.check_in_monoid(cone)?;
        }
        let basis_inverse = if generators.len() == cone.rank() {
            // matrix with the generators as columns
            LatticeMap::new(generators.clone(), cone.rank())
                .ok()
                .map(|m| m.transpose())
                .and_then(|m| m.inverse())
        } else {
            None
        };
        Ok(Derivation {
            cone: cone.clone(),
            descriptor: Descriptor::Table(GeneratorTable { generators, images, basis_inverse }),
        })
    }

    /// A derivation of the polynomial ring `K[x1, ..., xn]` from the images
    /// of the variables.
    pub fn polynomial(images: Vec<AlgebraElement>) -> Result<Derivation> {
        let n = images.len();
        let gens = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        Derivation::table(&Cone::orthant(n), gens, images)
    }

    pub fn sum(cone: &Cone, pieces: Vec<Derivation>) -> Result<Derivation> {
        let mut out = Vec::with_capacity(pieces.len());
        for p in pieces {
            if &p.cone != cone {
                return Err(Error::Input("summands live on different cones".into()));
            }
            out.push(p.descriptor);
        }
        Ok(Derivation { cone: cone.clone(), descriptor: Descriptor::Sum(out) })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    /// Whether local nilpotency is known from the construction (root
    /// derivations and the two-parameter family).
    pub fn known_locally_nilpotent(&self) -> bool {
        matches!(self.descriptor, Descriptor::Root { .. } | Descriptor::TwoParameter(_))
    }

    /// `∂(χ^m)`.
    pub fn on_character(&self, m: &LatticeVector) -> Result<AlgebraElement> {
        if m.rank() != self.cone.rank() {
            return Err(Error::RankMismatch { expected: self.cone.rank(), found: m.rank() });
        }
        if !self.cone.dual_contains(m) {
            return Err(Error::OutsideMonoid(m.to_string()));
        }
        let out = eval(&self.cone, &self.descriptor, m)?;
        out.check_in_monoid(&self.cone)?;
        Ok(out)
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        f.check_in_monoid(&self.cone)?;
        let mut out = AlgebraElement::zero();
        for (m, c) in f.terms() {
            if m.rank() != self.cone.rank() {
                return Err(Error::RankMismatch { expected: self.cone.rank(), found: m.rank() });
            }
            for (k, d) in eval(&self.cone, &self.descriptor, m)?.terms() {
                out.add_term(k.clone(), d * c);
            }
        }
        out.check_in_monoid(&self.cone)?;
        Ok(out)
    }

    /// `∂^k(f)`.
    pub fn apply_power(&self, f: &AlgebraElement, k: usize) -> Result<AlgebraElement> {
        let mut cur = f.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    pub fn to_spec(&self) -> DerivationFile {
        DerivationFile { cone: ConeSpec::from(&self.cone), derivation: DescriptorSpec::from(&self.descriptor) }
    }
}

fn eval(cone: &Cone, d: &Descriptor, m: &LatticeVector) -> Result<AlgebraElement> {
    Ok(match d {
        Descriptor::Root { root, scalar } => {
            let c = Rational::from_integer(dot(root.ray(), m)) * scalar;
            AlgebraElement::monomial(m + root.e(), c)
        }
        Descriptor::TwoParameter(tp) => {
            let a1 = Rational::from_integer(dot(tp.e1.ray(), m));
            let a2 = Rational::from_integer(dot(tp.e2.ray(), m));
            let first = &tp.alpha * &a1;
            let second = &tp.beta * &a2;
            let base = m + tp.e2.e();
            let mut out = AlgebraElement::zero();
            let mut power = base.clone(); // base + j m_T
            for coeff in &tp.expansion {
                let next = &power + &tp.m_t;
                out.add_term(next.clone(), coeff * &first);
                out.add_term(power, coeff * &second);
                power = next;
            }
            out
        }
        Descriptor::Sum(pieces) => {
            let mut out = AlgebraElement::zero();
            for p in pieces {
                out.add_assign(&eval(cone, p, m)?);
            }
            out
        }
        Descriptor::Table(table) => {
            let counts = table
                .express(cone, m)
                .ok_or_else(|| Error::NotGenerated(m.to_string()))?;
            let mut out = AlgebraElement::zero();
            for ((g, img), c) in table.generators.iter().zip(&table.images).zip(&counts) {
                if c.is_zero() {
                    continue;
                }
                let k = Rational::from_integer(c.clone());
                out.add_assign(&img.shift(&(m - g)).scale(&k));
            }
            out
        }
    })
}

/// Coefficients of `(a X + b)^k` by powers of `X`.
fn binomial_expansion(a: &Rational, b: &Rational, k: u64) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for _ in 0..k {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j] += c * b;
            next[j + 1] += c * a;
        }
        coeffs = next;
    }
    coeffs
}

/// JSON form of a derivation together with its cone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivationFile {
    pub cone: ConeSpec,
    pub derivation: DescriptorSpec,
}

impl DerivationFile {
    pub fn build(&self) -> Result<Derivation> {
        let cone = self.cone.build()?;
        self.derivation.build(&cone)
    }
}

fn one() -> Rational {
    Rational::one()
}

/// JSON derivation descriptor, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescriptorSpec {
    Root {
        root: LatticeVector,
        #[serde(with = "rational_serde", default = "one")]
        scalar: Rational,
    },
    TwoParameter {
        e1: LatticeVector,
        e2: LatticeVector,
        m_t: LatticeVector,
        #[serde(with = "rational_serde")]
        alpha: Rational,
        #[serde(with = "rational_serde")]
        beta: Rational,
    },
    Sum {
        pieces: Vec<DescriptorSpec>,
    },
    Table {
        generators: Vec<LatticeVector>,
        images: Vec<AlgebraElement>,
    },
}

impl DescriptorSpec {
    pub fn build(&self, cone: &Cone) -> Result<Derivation> {
        match self {
            DescriptorSpec::Root { root, scalar } => {
                let r = DemazureRoot::new(cone, root.clone())?;
                Derivation::root(cone, &r, scalar.clone())
            }
            DescriptorSpec::TwoParameter { e1, e2, m_t, alpha, beta } => {
                Derivation::two_parameter(cone, e1, e2, m_t, alpha.clone(), beta.clone())
            }
            DescriptorSpec::Sum { pieces } => {
                let built = pieces.iter().map(|p| p.build(cone)).collect::<Result<Vec<_>>>()?;
                Derivation::sum(cone, built)
            }
            DescriptorSpec::Table { generators, images } => {
                Derivation::table(cone, generators.clone(), images.clone())
            }
        }
    }
}

impl From<&Descriptor> for DescriptorSpec {
    fn from(d: &Descriptor) -> Self {
        match d {
            Descriptor::Root { root, scalar } => {
                DescriptorSpec::Root { root: root.e().clone(), scalar: scalar.clone() }
            }
            Descriptor::TwoParameter(tp) => DescriptorSpec::TwoParameter {
                e1: tp.e1.e().clone(),
                e2: tp.e2.e().clone(),
                m_t: tp.m_t.clone(),
                alpha: tp.alpha.clone(),
                beta: tp.beta.clone(),
            },
            Descriptor::Sum(pieces) => DescriptorSpec::Sum { pieces: pieces.iter().map(Self::from).collect() },
            Descriptor::Table(t) => DescriptorSpec::Table {
                generators: t.generators.clone(),
                images: t.images.clone(),
            },
        }
    }
}
