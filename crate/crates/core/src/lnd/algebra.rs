use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{rational_serde, LatticeVector, Rational};

/// A finite `Q`-linear combination of characters `χ^m`.
///
/// Zero coefficients are never stored, so two elements are equal exactly
/// when they are equal as algebra elements.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<LatticeVector, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn character(m: LatticeVector) -> Self {
        Self::monomial(m, Rational::one())
    }

    pub fn monomial(m: LatticeVector, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticeVector, Rational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &LatticeVector) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn characters(&self) -> impl Iterator<Item = &LatticeVector> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, m: LatticeVector, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> AlgebraElement {
        if k.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Multiplication by the character `χ^shift`.
    pub fn shift(&self, shift: &LatticeVector) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|(m, c)| (m + shift, c.clone())).collect() }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    /// Fails with the first character that leaves the weight monoid of `cone`.
    pub fn check_in_monoid(&self, cone: &Cone) -> Result<()> {
        match self.terms.keys().find(|m| !cone.dual_contains(m)) {
            Some(m) => Err(Error::OutsideMonoid(m.to_string())),
            None => Ok(()),
        }
    }

    /// Renders the element as a polynomial in `x1, ..., xn`, assuming all
    /// characters have nonnegative coordinates.
    pub fn to_polynomial_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(k, e)| if e.is_one() { format!("x{}", k + 1) } else { format!("x{}^{}", k + 1, e) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{}*{}", abs, mono.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*χ^{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    character: LatticeVector,
    #[serde(with = "rational_serde")]
    coeff: Rational,
}

/// Serialized as `[{"character": [...], "coeff": "p/q"}, ...]`.
impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            self.terms
                .iter()
                .map(|(m, c)| TermRepr { character: m.clone(), coeff: c.clone() }),
        )
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermRepr>::deserialize(d)?;
        Ok(AlgebraElement::from_terms(raw.into_iter().map(|t| (t.character, t.coeff))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from(c)
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut a = AlgebraElement::monomial(v(&[1, 0]), rational(2, 1));
        a.add_term(v(&[0, 1]), rational(1, 3));
        a.add_term(v(&[1, 0]), rational(-2, 1));
        assert_eq!(a, AlgebraElement::monomial(v(&[0, 1]), rational(1, 3)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn multiplication_adds_exponents() {
        // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
        let s = AlgebraElement::character(v(&[1, 0])).add(&AlgebraElement::character(v(&[0, 1])));
        let sq = s.mul(&s);
        assert_eq!(sq.coefficient(&v(&[1, 1])), rational(2, 1));
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.to_polynomial_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn monoid_check() {
        let c = Cone::orthant(2);
        assert!(AlgebraElement::character(v(&[2, 0])).check_in_monoid(&c).is_ok());
        assert_eq!(
            AlgebraElement::character(v(&[-1, 0])).check_in_monoid(&c),
            Err(Error::OutsideMonoid("(-1,0)".into()))
        );
    }

    #[test]
    fn serde_round_trip() {
        let a = AlgebraElement::from_terms([(v(&[1, 0]), rational(-1, 2)), (v(&[0, 3]), rational(4, 1))]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[{"character":[0,3],"coeff":4},{"character":[1,0],"coeff":"-1/2"}]"#);
        assert_eq!(serde_json::from_str::<AlgebraElement>(&s).unwrap(), a);
    }
}
