//! Sparse Laurent polynomials with exact integer coefficients.
//!
//! Terms live in a `BTreeMap` keyed by the exponent, so iteration is always in
//! lexicographic exponent order and zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Coefficient ring. Overflow is checked in every build profile of this workspace.
pub type Coeff = i128;

/// Exponent monoid of a Laurent polynomial ring.
pub trait Exponent: Copy + Ord + fmt::Debug {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, d: i32) -> Self;
    fn components(self) -> Vec<i32>;
}

impl Exponent for i32 {
    fn zero() -> Self {
        0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, d: i32) -> Self {
        self * d
    }
    fn components(self) -> Vec<i32> {
        vec![self]
    }
}

impl Exponent for [i32; 2] {
    fn zero() -> Self {
        [0, 0]
    }
    fn add(self, other: Self) -> Self {
        [self[0] + other[0], self[1] + other[1]]
    }
    fn sub(self, other: Self) -> Self {
        [self[0] - other[0], self[1] - other[1]]
    }
    fn scale(self, d: i32) -> Self {
        [self[0] * d, self[1] * d]
    }
    fn components(self) -> Vec<i32> {
        self.to_vec()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: Deserialize<'de>"))]
pub struct Laurent<E: Exponent> {
    #[serde(with = "term_list")]
    terms: BTreeMap<E, Coeff>,
}

impl<E: Exponent> Default for Laurent<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(E::zero(), 1)
    }

    pub fn monomial(exponent: E, coeff: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (E, Coeff)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: E, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: E) -> Coeff {
        self.terms.get(&exponent).copied().unwrap_or(0)
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

    pub fn terms(&self) -> impl Iterator<Item = (E, Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(E, Coeff)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, *c))
    }

    pub fn trailing(&self) -> Option<(E, Coeff)> {
        self.terms.iter().next().map(|(e, c)| (*e, *c))
    }

    /// Sum of all coefficients, i.e. the value at the identity of the torus.
    pub fn augmentation(&self) -> Coeff {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn shift(&self, by: E) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, v)| (e.add(by), *v)).collect(),
        }
    }

    /// Applies an arbitrary exponent map, merging colliding terms.
    pub fn map_exponents<F, T>(&self, f: F) -> Laurent<T>
    where
        T: Exponent,
        F: Fn(E) -> T,
    {
        Laurent::from_terms(self.terms().map(|(e, c)| (f(e), c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division by `t^alpha - 1`, where `alpha` is lexicographically positive.
    ///
    /// Returns `None` when the division leaves a remainder.
    pub fn div_by_binomial(&self, alpha: E) -> Option<Self> {
        debug_assert!(alpha > E::zero());
        // Every quotient exponent q satisfies <q, alpha> >= min over self of <e, alpha>.
        let dir = alpha.components();
        let height = |e: E| -> i64 { e.components().iter().zip(&dir).map(|(x, y)| i64::from(*x) * i64::from(*y)).sum() };
        let floor = match self.terms.keys().map(|e| height(*e)).min() {
            Some(h) => h,
            None => return Some(Self::zero()),
        };
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((lead, c)) = rem.leading() {
            let q = lead.sub(alpha);
            if height(q) < floor {
                return None;
            }
            quotient.add_term(q, c);
            rem.add_term(lead, -c);
            rem.add_term(q, c);
        }
        Some(quotient)
    }
}

impl<E: Exponent> Add for &Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<E: Exponent> Add for Laurent<E> {
    type Output = Laurent<E>;
    fn add(mut self, rhs: Laurent<E>) -> Laurent<E> {
        self += &rhs;
        self
    }
}

impl<E: Exponent> Sub for &Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<E: Exponent> Sub for Laurent<E> {
    type Output = Laurent<E>;
    fn sub(mut self, rhs: Laurent<E>) -> Laurent<E> {
        self -= &rhs;
        self
    }
}

impl<E: Exponent> AddAssign<&Laurent<E>> for Laurent<E> {
    fn add_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl<E: Exponent> SubAssign<&Laurent<E>> for Laurent<E> {
    fn sub_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c);
        }
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        self.scale(-1)
    }
}

impl<E: Exponent> Mul for &Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: &Laurent<E>) -> Laurent<E> {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl<E: Exponent> Mul for Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: Laurent<E>) -> Laurent<E> {
        &self * &rhs
    }
}

impl<E: Exponent> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl fmt::Display for Laurent<[i32; 2]> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(e, c)| {
            let mut mono = String::new();
            for (var, k) in ["t1", "t2"].iter().zip(e.iter()) {
                push_power(&mut mono, var, *k);
            }
            (mono, *c)
        }))
    }
}

impl fmt::Display for Laurent<i32> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(e, c)| {
            let mut mono = String::new();
            push_power(&mut mono, "u", *e);
            (mono, *c)
        }))
    }
}

fn push_power(out: &mut String, var: &str, k: i32) {
    match k {
        0 => {}
        1 => out.push_str(var),
        _ => out.push_str(&format!("{var}^{k}")),
    }
}

fn write_terms<I: Iterator<Item = (String, Coeff)>>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        let abs = c.abs();
        match (mono.is_empty(), abs) {
            (true, _) => write!(f, "{abs}")?,
            (false, 1) => write!(f, "{mono}")?,
            (false, _) => write!(f, "{abs}*{mono}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Serializes the term map as a list of `[exponent, coefficient]` pairs, since
/// JSON object keys must be strings.
mod term_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{Coeff, Exponent};

    pub fn serialize<E, S>(terms: &BTreeMap<E, Coeff>, s: S) -> Result<S::Ok, S::Error>
    where
        E: Exponent + Serialize,
        S: Serializer,
    {
        // i128 is not representable in every serde format; coefficients are
        // emitted as decimal strings.
        let list: Vec<(E, String)> = terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, E, D>(d: D) -> Result<BTreeMap<E, Coeff>, D::Error>
    where
        E: Exponent + Deserialize<'de>,
        D: Deserializer<'de>,
    {
        let list: Vec<(E, String)> = Vec::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (e, c) in list {
            let c: Coeff = c.parse().map_err(serde::de::Error::custom)?;
            if c != 0 {
                *out.entry(e).or_insert(0) += c;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Laurent<[i32; 2]>;

    #[test]
    fn binomial_division_roundtrip() {
        let q = P::from_terms([([1, 0], 3), ([-2, 1], -1), ([0, 0], 5)]);
        let alpha = [1, -1];
        let p = &q * &(P::monomial(alpha, 1) - P::one());
        assert_eq!(p.div_by_binomial(alpha).unwrap(), q);
    }

    #[test]
    fn binomial_division_detects_remainder() {
        let p = P::from_terms([([1, 0], 1), ([0, 0], 1)]);
        assert!(p.div_by_binomial([0, 2]).is_none());
    }

    #[test]
    fn zero_terms_never_stored() {
        let mut p = P::monomial([1, 1], 2);
        p.add_term([1, 1], -2);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = Laurent::<i32>::from_terms([(1, 1), (-1, 1)]);
        let mut direct = Laurent::one();
        for _ in 0..5 {
            direct = &direct * &p;
        }
        assert_eq!(p.pow(5), direct);
        assert_eq!(p.pow(0), Laurent::one());
    }

    #[test]
    fn display_is_readable() {
        let p = Laurent::<i32>::from_terms([(2, 1), (0, -3), (-2, 1)]);
        assert_eq!(p.to_string(), "u^2 - 3 + u^-2");
    }
}
