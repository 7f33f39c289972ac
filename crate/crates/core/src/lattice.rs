//! Exact lattice arithmetic over arbitrary-precision integers.
//!
//! Everything here is exact: vectors carry [`BigInt`] coordinates, the
//! rational side uses [`BigRational`], and there is no floating point.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// A point of `N` or `M` (the pairing does not care which).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![Int::zero(); rank])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Int::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn scaled(&self, k: &Int) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Int, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// The gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    pub fn sup_norm(&self) -> Int {
        self.0.iter().map(Signed::abs).max().unwrap_or_else(Int::zero)
    }

    pub fn first_nonzero_sign(&self) -> i8 {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }
}

impl From<&[i64]> for LatticeVector {
    fn from(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&c| Int::from(c)).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self::from(v.as_slice())
    }
}

impl<const K: usize> From<[i64; K]> for LatticeVector {
    fn from(v: [i64; K]) -> Self {
        Self::from(&v[..])
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integers serialize as JSON numbers when they fit in an `i64` and as
/// decimal strings otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

pub(crate) fn int_to_repr(v: &Int) -> impl Serialize {
    match v.to_i64() {
        Some(s) => IntRepr::Small(s),
        None => IntRepr::Big(v.to_string()),
    }
}

fn int_from_repr<E: serde::de::Error>(r: IntRepr) -> std::result::Result<Int, E> {
    match r {
        IntRepr::Small(s) => Ok(Int::from(s)),
        IntRepr::Big(s) => s.trim().parse().map_err(E::custom),
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(int_to_repr))
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<IntRepr>::deserialize(d)?;
        raw.into_iter()
            .map(int_from_repr)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(LatticeVector)
    }
}

/// Serde adapter for a single [`Int`].
pub mod int_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
        int_to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
        int_from_repr(IntRepr::deserialize(d)?)
    }
}

/// Serde adapter for `Vec<Int>`.
pub mod int_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(int_to_repr))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Int>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?.into_iter().map(int_from_repr).collect()
    }
}

/// Serde adapter for `Option<Int>`, with `null` for `None`.
pub mod opt_int_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(int_to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Int>, D::Error> {
        Option::<IntRepr>::deserialize(d)?.map(int_from_repr).transpose()
    }
}

/// Serde adapter for [`Rational`]: `"p/q"` strings, or plain integers.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        if v.is_integer() {
            int_to_repr(v.numer()).serialize(s)
        } else {
            s.serialize_str(&v.to_string())
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match IntRepr::deserialize(d)? {
            IntRepr::Small(n) => Ok(Rational::from_integer(Int::from(n))),
            IntRepr::Big(s) => parse_rational(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<Int>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// A point of `N_Q` or `M_Q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// The primitive lattice vector on the ray through `self`.
    pub fn primitive_on_ray(&self) -> Result<LatticeVector> {
        let lcm = self.0.iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
        let scaled = LatticeVector(self.0.iter().map(|c| (c * &lcm).to_integer()).collect());
        primitive(&scaled)
    }
}

impl From<&LatticeVector> for RationalVector {
    fn from(v: &LatticeVector) -> Self {
        RationalVector(v.0.iter().cloned().map(Rational::from_integer).collect())
    }
}

/// Standard pairing between `N` and `M`.
pub fn pairing(n: &LatticeVector, m: &LatticeVector) -> Result<Int> {
    n.check_rank(m)?;
    Ok(dot(n, m))
}

/// Pairing without the rank check, for hot loops over data already
/// validated to have a common rank.
pub(crate) fn dot(n: &LatticeVector, m: &LatticeVector) -> Int {
    debug_assert_eq!(n.rank(), m.rank());
    n.0.iter().zip(&m.0).map(|(a, b)| a * b).sum()
}

pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Canonical Bézout coefficients: `r*u + q*v = 1` with `0 <= v < |r|` when
/// `r != 0`, and `(0, sign q)` when `r == 0`.
pub fn bezout(r: &Int, q: &Int) -> Result<(Int, Int)> {
    if !r.gcd(q).is_one() {
        return Err(Error::NotCoprime(r.to_string(), q.to_string()));
    }
    if r.is_zero() {
        return Ok((Int::zero(), q.signum()));
    }
    let ext = r.extended_gcd(q);
    // gcd is 1 here, but extended_gcd may report -1 for negative inputs
    let (mut u, mut v) = if ext.gcd.is_one() { (ext.x, ext.y) } else { (-ext.x, -ext.y) };
    let ar = r.abs();
    let shift = v.div_floor(&ar);
    // (u, v) -> (u + q k, v - r k) keeps r u + q v fixed
    let k = if r.is_positive() { shift.clone() } else { -shift.clone() };
    v -= r * &k;
    u += q * &k;
    debug_assert!(!v.is_negative() && v < ar);
    debug_assert!((r * &u + q * &v).is_one());
    Ok((u, v))
}

pub fn floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

pub fn ceil_div(a: &Int, b: &Int) -> Int {
    -((-a).div_floor(b))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(rows: &[LatticeVector]) -> Int {
    let n = rows.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of a set of vectors over `Q`.
pub fn rank_of(vectors: &[LatticeVector]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let cols = first.rank();
    let mut a: Vec<Vec<Int>> = vectors.iter().map(|r| r.0.clone()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let (f, g) = (a[i][col].clone(), a[rank][col].clone());
            for j in col..cols {
                let v = &a[i][j] * &g - &a[rank][j] * &f;
                a[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Signed maximal minors of an `(n-1) x n` matrix: the unique (up to
/// scale) vector orthogonal to every row.
pub fn cross_product(rows: &[LatticeVector], rank: usize) -> LatticeVector {
    debug_assert_eq!(rows.len() + 1, rank);
    let coords = (0..rank)
        .map(|skip| {
            let minor: Vec<LatticeVector> = rows
                .iter()
                .map(|r| {
                    LatticeVector(
                        r.0.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != skip)
                            .map(|(_, c)| c.clone())
                            .collect(),
                    )
                })
                .collect();
            let d = determinant(&minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    LatticeVector(coords)
}

/// Flips the sign so that the first nonzero coordinate is positive.
pub fn sign_canonical(v: LatticeVector) -> LatticeVector {
    if v.first_nonzero_sign() < 0 {
        -&v
    } else {
        v
    }
}

/// Primitive generator of the characters vanishing on a saturated
/// corank-1 sublattice of `N`, with first nonzero coordinate positive.
pub fn kernel_generator(basis: &[LatticeVector], rank: usize) -> Result<LatticeVector> {
    if basis.len() + 1 != rank {
        return Err(Error::NotCorankOne {
            rank,
            found: basis.len(),
            needed: rank.saturating_sub(1),
        });
    }
    for b in basis {
        if b.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: b.rank() });
        }
    }
    let w = cross_product(basis, rank);
    let g = w.content();
    if g.is_zero() {
        return Err(Error::DependentBasis);
    }
    if !g.is_one() {
        return Err(Error::NotSaturated(g.to_string()));
    }
    Ok(sign_canonical(w))
}

/// An integer matrix acting on column vectors, stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeMap {
    rows: Vec<LatticeVector>,
    cols: usize,
}

impl LatticeMap {
    pub fn new(rows: Vec<LatticeVector>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.rank() != cols {
                return Err(Error::RankMismatch { expected: cols, found: r.rank() });
            }
        }
        Ok(LatticeMap { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap {
            rows: (0..n).map(|i| LatticeVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn rows(&self) -> &[LatticeVector] {
        &self.rows
    }

    pub fn rank_in(&self) -> usize {
        self.cols
    }

    pub fn rank_out(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.rank() != self.cols {
            return Err(Error::RankMismatch { expected: self.cols, found: v.rank() });
        }
        Ok(LatticeVector(self.rows.iter().map(|r| dot(r, v)).collect()))
    }

    pub fn transpose(&self) -> LatticeMap {
        let rows = (0..self.cols)
            .map(|j| LatticeVector(self.rows.iter().map(|r| r.0[j].clone()).collect()))
            .collect();
        LatticeMap { rows, cols: self.rows.len() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap> {
        if other.rank_out() != self.cols {
            return Err(Error::RankMismatch { expected: self.cols, found: other.rank_out() });
        }
        let ot = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| LatticeVector(ot.rows.iter().map(|c| dot(r, c)).collect()))
            .collect();
        Ok(LatticeMap { rows, cols: other.cols })
    }

    pub fn determinant(&self) -> Option<Int> {
        (self.rows.len() == self.cols).then(|| determinant(&self.rows))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    /// Inverse of a unimodular matrix, via the adjugate.
    pub fn inverse(&self) -> Option<LatticeMap> {
        let n = self.cols;
        let det = self.determinant()?;
        if !det.abs().is_one() {
            return None;
        }
        if n == 1 {
            return Some(LatticeMap { rows: vec![LatticeVector(vec![det])], cols: 1 });
        }
        let mut inv = vec![vec![Int::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<LatticeVector> = self
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, row)| {
                        LatticeVector(
                            row.0.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, x)| x.clone())
                                .collect(),
                        )
                    })
                    .collect();
                let cof = determinant(&minor);
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                inv[j][i] = &cof * &det;
            }
        }
        Some(LatticeMap { rows: inv.into_iter().map(LatticeVector).collect(), cols: n })
    }
}

/// Column echelon form of a full-row-rank integer matrix `B` (`k x n`):
/// a unimodular `U` with `B U = [H | 0]`, `H` lower triangular.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    /// `k x k`, lower triangular.
    pub h: Vec<Vec<Int>>,
    /// `n x n` unimodular; stored by rows.
    pub u: Vec<Vec<Int>>,
}

impl ColumnEchelon {
    pub fn compute(rows: &[LatticeVector], n: usize) -> Result<Self> {
        let k = rows.len();
        let mut b: Vec<Vec<Int>> = rows.iter().map(|r| r.0.clone()).collect();
        let mut u: Vec<Vec<Int>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
        // column op on both B and U: (c_i, c_j) <- (x c_i + y c_j, s c_i + t c_j)
        let col_op = |m: &mut Vec<Vec<Int>>, i: usize, j: usize, x: &Int, y: &Int, s: &Int, t: &Int| {
            for row in m.iter_mut() {
                let (ci, cj) = (row[i].clone(), row[j].clone());
                row[i] = x * &ci + y * &cj;
                row[j] = s * &ci + t * &cj;
            }
        };
        for i in 0..k {
            if i >= n {
                return Err(Error::DependentBasis);
            }
            for j in i + 1..n {
                if b[i][j].is_zero() {
                    continue;
                }
                let (p, q) = (b[i][i].clone(), b[i][j].clone());
                let ext = p.extended_gcd(&q);
                let g = ext.gcd;
                let (pg, qg) = (&p / &g, &q / &g);
                // det [[x, -qg], [y, pg]] = x pg + y qg = 1
                let (x, y, s, t) = (ext.x, ext.y, -qg, pg);
                col_op(&mut b, i, j, &x, &y, &s, &t);
                col_op(&mut u, i, j, &x, &y, &s, &t);
            }
            if b[i][i].is_zero() {
                return Err(Error::DependentBasis);
            }
            if b[i][i].is_negative() {
                for m in [&mut b, &mut u] {
                    for row in m.iter_mut() {
                        row[i] = -&row[i];
                    }
                }
            }
        }
        let h = b.iter().map(|row| row[..k].to_vec()).collect();
        Ok(ColumnEchelon { h, u })
    }

    /// Column `j` of `U`.
    pub fn u_column(&self, j: usize) -> LatticeVector {
        LatticeVector(self.u.iter().map(|row| row[j].clone()).collect())
    }

    /// `|det H|`: the index of the row lattice in its saturation.
    pub fn index(&self) -> Int {
        self.h
            .iter()
            .enumerate()
            .fold(Int::one(), |acc, (i, row)| acc * &row[i])
            .abs()
    }
}

/// Basis of `{ n : <n, m> = 0 }` for a nonzero `m`.
pub fn orthogonal_basis(m: &LatticeVector) -> Result<Vec<LatticeVector>> {
    if m.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = m.rank();
    let ech = ColumnEchelon::compute(std::slice::from_ref(m), n)?;
    Ok((1..n).map(|j| ech.u_column(j)).collect())
}

/// Some integer `x` with `<rows_i, x> = target_i` for all `i`, if one exists.
pub fn solve_integer(rows: &[LatticeVector], n: usize, target: &LatticeVector) -> Result<Option<LatticeVector>> {
    let k = rows.len();
    if target.rank() != k {
        return Err(Error::RankMismatch { expected: k, found: target.rank() });
    }
    let ech = ColumnEchelon::compute(rows, n)?;
    // forward substitution in H y = target
    let mut y: Vec<Int> = Vec::with_capacity(k);
    for i in 0..k {
        let acc: Int = (0..i).map(|j| &ech.h[i][j] * &y[j]).sum();
        let rhs = &target.0[i] - acc;
        let (q, r) = rhs.div_rem(&ech.h[i][i]);
        if !r.is_zero() {
            return Ok(None);
        }
        y.push(q);
    }
    let x = (0..n)
        .map(|row| (0..k).map(|j| &ech.u[row][j] * &y[j]).sum())
        .collect();
    Ok(Some(LatticeVector(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from(c)
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&v(&[1, 0]), &v(&[-1, 2])).unwrap(), int(-1));
        assert_eq!(pairing(&v(&[1, 2]), &v(&[1, -1])).unwrap(), int(-1));
        assert_eq!(pairing(&v(&[3, -7, 2]), &v(&[0, 0, 0])).unwrap(), int(0));
        assert!(matches!(pairing(&v(&[1]), &v(&[1, 2])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&v(&[2, 4])).unwrap(), v(&[1, 2]));
        assert_eq!(primitive(&v(&[-3, 6])).unwrap(), v(&[-1, 2]));
        assert_eq!(primitive(&v(&[0, 0, 5])).unwrap(), v(&[0, 0, 1]));
        assert_eq!(primitive(&v(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout(&int(1), &int(1)).unwrap(), (int(1), int(0)));
        assert_eq!(bezout(&int(4), &int(5)).unwrap(), (int(-1), int(1)));
        assert!(matches!(bezout(&int(2), &int(4)), Err(Error::NotCoprime(..))));
        assert_eq!(bezout(&int(0), &int(-1)).unwrap(), (int(0), int(-1)));
        // negative r: 0 <= v < |r|
        let (u, w) = bezout(&int(-3), &int(5)).unwrap();
        assert_eq!(int(-3) * &u + int(5) * &w, int(1));
        assert!(w >= int(0) && w < int(3));
    }

    #[test]
    fn kernel_generator_examples() {
        let m = kernel_generator(&[v(&[1, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        assert_eq!(m, v(&[1, -1, 0]));

        // sum z_i = 0 in rank 4, spanned by e_i - e_{i+1}
        let basis = [v(&[1, -1, 0, 0]), v(&[0, 1, -1, 0]), v(&[0, 0, 1, -1])];
        assert_eq!(kernel_generator(&basis, 4).unwrap(), v(&[1, 1, 1, 1]));

        assert_eq!(kernel_generator(&[v(&[2, 3])], 2).unwrap(), v(&[3, -2]));
        assert_eq!(kernel_generator(&[v(&[-2, 3])], 2).unwrap(), v(&[3, 2]));
    }

    #[test]
    fn kernel_generator_errors() {
        assert!(matches!(kernel_generator(&[v(&[1, 0, 0])], 3), Err(Error::NotCorankOne { .. })));
        assert_eq!(kernel_generator(&[v(&[2, 4])], 2), Err(Error::NotSaturated("2".into())));
        assert_eq!(
            kernel_generator(&[v(&[1, 1, 0]), v(&[2, 2, 0])], 3),
            Err(Error::DependentBasis)
        );
        // index-2 sublattice of the plane z3 = 0
        assert_eq!(
            kernel_generator(&[v(&[1, 1, 0]), v(&[1, -1, 0])], 3),
            Err(Error::NotSaturated("2".into()))
        );
    }

    #[test]
    fn determinant_and_inverse() {
        let m = LatticeMap::new(vec![v(&[2, 1]), v(&[1, 1])], 2).unwrap();
        assert_eq!(m.determinant(), Some(int(1)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), LatticeMap::identity(2));
        let big = LatticeMap::new(vec![v(&[1, 2, 3]), v(&[0, 1, 4]), v(&[5, 6, 0])], 3).unwrap();
        assert_eq!(big.determinant(), Some(int(1)));
        assert_eq!(big.inverse().unwrap().compose(&big).unwrap(), LatticeMap::identity(3));
        assert_eq!(determinant(&[v(&[1, 2]), v(&[2, 4])]), int(0));
    }

    #[test]
    fn orthogonal_basis_spans_kernel() {
        let m = v(&[1, 1, 1]);
        let basis = orthogonal_basis(&m).unwrap();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert_eq!(dot(b, &m), int(0));
        }
        assert_eq!(kernel_generator(&basis, 3).unwrap(), m);
    }

    #[test]
    fn solve_integer_finds_preimage() {
        let rows = [v(&[1, 1, 0]), v(&[0, 0, 1])];
        let x = solve_integer(&rows, 3, &v(&[3, -1])).unwrap().unwrap();
        assert_eq!(dot(&rows[0], &x), int(3));
        assert_eq!(dot(&rows[1], &x), int(-1));
        // non-saturated row lattice: 2x = 1 has no solution
        assert_eq!(solve_integer(&[v(&[2, 0])], 2, &v(&[1])).unwrap(), None);
    }

    #[test]
    fn rank_and_rational_primitive() {
        assert_eq!(rank_of(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])]), 2);
        let r = RationalVector::new(vec![rational(1, 2), rational(-3, 4)]);
        assert_eq!(r.primitive_on_ray().unwrap(), v(&[2, -3]));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rational(-7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = LatticeVector::new(vec![int(-1), "123456789012345678901234567890".parse().unwrap()]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[-1,"123456789012345678901234567890"]"#);
        assert_eq!(serde_json::from_str::<LatticeVector>(&s).unwrap(), x);
    }
}
