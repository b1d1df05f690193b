//! Characters of Sp4 and SL2 as Laurent polynomials on the maximal torus.
//!
//! The Sp4 torus is `diag(t1, t2, 1/t1, 1/t2)`; a character is a polynomial in
//! `t1, t2` and their inverses. The irreducible `V_{a+b}` has highest weight
//! `t1^a t2^b`. The SL2 torus is `diag(u, 1/u)` and `H_m = Sym^m H` has
//! character `u^m + u^{m-2} + ... + u^{-m}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{Coeff, Laurent};

pub type SymplecticCharacter = Laurent<[i32; 2]>;
pub type Sl2Character = Laurent<i32>;

/// Positive roots of C2 with simple roots `e1 - e2` (short) and `2 e2` (long).
pub const POSITIVE_ROOTS: [[i32; 2]; 4] = [[1, -1], [1, 1], [2, 0], [0, 2]];

/// Half the sum of the positive roots.
pub const RHO: [i32; 2] = [2, 1];

/// Partition label `(a, b)` with `a >= b >= 0` of the Sp4-irrep `V_{a+b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(u32, u32)")]
pub struct DominantWeight {
    a: u32,
    b: u32,
}

impl DominantWeight {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b < 0 || a < b || a > i64::from(u32::MAX) {
            return Err(Error::InvalidWeight { a, b });
        }
        Ok(DominantWeight { a: a as u32, b: b as u32 })
    }

    pub const TRIVIAL: DominantWeight = DominantWeight { a: 0, b: 0 };

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn b(self) -> u32 {
        self.b
    }

    /// `a + b`, which is also the Hodge weight of the associated variation.
    pub fn size(self) -> u32 {
        self.a + self.b
    }

    /// Coordinates `[a - b, b]` in the basis of fundamental weights.
    pub fn fundamental_coordinates(self) -> [u32; 2] {
        [self.a - self.b, self.b]
    }

    pub fn exponent(self) -> [i32; 2] {
        [self.a as i32, self.b as i32]
    }

    /// Weyl dimension formula for C2.
    pub fn dimension(self) -> u128 {
        let (a, b) = (self.a as u128, self.b as u128);
        (a - b + 1) * (b + 1) * (a + 2) * (a + b + 3) / 6
    }

    /// All dominant weights with `a + b <= max_size`, sorted.
    pub fn all_up_to(max_size: u32) -> Vec<DominantWeight> {
        let mut out = Vec::new();
        for n in 0..=max_size {
            for b in 0..=n / 2 {
                out.push(DominantWeight { a: n - b, b });
            }
        }
        out.sort();
        out
    }

    fn from_exponent(e: [i32; 2]) -> Option<Self> {
        (e[0] >= e[1] && e[1] >= 0).then(|| DominantWeight { a: e[0] as u32, b: e[1] as u32 })
    }
}

impl TryFrom<(i64, i64)> for DominantWeight {
    type Error = Error;
    fn try_from((a, b): (i64, i64)) -> Result<Self> {
        DominantWeight::new(a, b)
    }
}

impl From<DominantWeight> for (u32, u32) {
    fn from(w: DominantWeight) -> (u32, u32) {
        (w.a, w.b)
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V_{{{}+{}}}", self.a, self.b)
    }
}

/// The eight signed permutations of the C2 Weyl group, with their signs.
pub fn weyl_group() -> [(fn([i32; 2]) -> [i32; 2], i32); 8] {
    [
        (|e| [e[0], e[1]], 1),
        (|e| [-e[0], e[1]], -1),
        (|e| [e[0], -e[1]], -1),
        (|e| [-e[0], -e[1]], 1),
        (|e| [e[1], e[0]], -1),
        (|e| [-e[1], e[0]], 1),
        (|e| [e[1], -e[0]], 1),
        (|e| [-e[1], -e[0]], -1),
    ]
}

/// Checks invariance under all eight Weyl group elements.
pub fn is_weyl_invariant(c: &SymplecticCharacter) -> bool {
    weyl_group()
        .iter()
        .all(|(w, _)| c.map_exponents(w) == *c)
}

/// Character of `V_{a+b}` by the Weyl character formula.
///
/// The alternating sum over `w(λ+ρ)` is divided by `t^{-ρ} Π_{α>0} (t^α - 1)`,
/// one binomial factor at a time.
pub fn sp4_irrep_character(w: DominantWeight) -> SymplecticCharacter {
    let shifted = [w.a as i32 + RHO[0], w.b as i32 + RHO[1]];
    let numerator = SymplecticCharacter::from_terms(
        weyl_group().iter().map(|(g, sign)| (g(shifted), Coeff::from(*sign))),
    )
    .shift(RHO);
    POSITIVE_ROOTS.iter().fold(numerator, |acc, alpha| {
        acc.div_by_binomial(*alpha)
            .expect("Weyl numerator is divisible by the Weyl denominator")
    })
}

pub fn sl2_irrep_character(m: u32) -> Sl2Character {
    let m = m as i32;
    Sl2Character::from_terms((0..=m).map(|i| (m - 2 * i, 1)))
}

/// Multiplicity table of an Sp4 character in terms of irreducibles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepDecomposition {
    #[serde(with = "weight_entries")]
    multiplicities: BTreeMap<DominantWeight, u64>,
}

impl IrrepDecomposition {
    pub fn from_map(multiplicities: BTreeMap<DominantWeight, u64>) -> Self {
        let mut multiplicities = multiplicities;
        multiplicities.retain(|_, m| *m > 0);
        IrrepDecomposition { multiplicities }
    }

    pub fn get(&self, w: DominantWeight) -> u64 {
        self.multiplicities.get(&w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (DominantWeight, u64)> + '_ {
        self.multiplicities.iter().map(|(w, m)| (*w, *m))
    }

    pub fn as_map(&self) -> &BTreeMap<DominantWeight, u64> {
        &self.multiplicities
    }

    pub fn dimension(&self) -> u128 {
        self.iter().map(|(w, m)| w.dimension() * m as u128).sum()
    }

    pub fn character(&self) -> SymplecticCharacter {
        let mut out = SymplecticCharacter::zero();
        for (w, m) in self.iter() {
            out += &sp4_irrep_character(w).scale(m as Coeff);
        }
        out
    }

    /// Multiset sum.
    pub fn merge(&self, other: &IrrepDecomposition) -> IrrepDecomposition {
        let mut out = self.multiplicities.clone();
        for (w, m) in other.iter() {
            *out.entry(w).or_insert(0) += m;
        }
        IrrepDecomposition { multiplicities: out }
    }
}

impl fmt::Display for IrrepDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .rev()
            .map(|(w, m)| if *m == 1 { w.to_string() } else { format!("{m}*{w}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Peels off irreducibles, highest dominant exponent first (lexicographic).
///
/// Every positive root is lexicographically positive, so the lexicographically
/// largest dominant exponent of a Weyl-invariant character is a highest weight.
pub fn decompose_sp4(c: &SymplecticCharacter) -> Result<IrrepDecomposition> {
    let mut rest = c.clone();
    let mut cache: HashMap<DominantWeight, SymplecticCharacter> = HashMap::new();
    let mut out = BTreeMap::new();
    loop {
        let top = rest
            .terms()
            .filter_map(|(e, m)| DominantWeight::from_exponent(e).map(|w| (w, e, m)))
            .max_by_key(|(_, e, _)| *e);
        let Some((w, _, m)) = top else {
            if rest.is_zero() {
                return Ok(IrrepDecomposition { multiplicities: out });
            }
            return Err(Error::NotARepresentation(format!(
                "residual character {rest} has no dominant exponent"
            )));
        };
        if m < 0 {
            return Err(Error::NotARepresentation(format!("{w} would occur with multiplicity {m}")));
        }
        let irrep = cache.entry(w).or_insert_with(|| sp4_irrep_character(w));
        rest -= &irrep.scale(m);
        out.insert(w, m as u64);
    }
}

/// Same peeling in one variable: nonnegative multiplicities of `H_m`.
pub fn decompose_sl2(c: &Sl2Character) -> Result<BTreeMap<u32, u64>> {
    let signed = decompose_sl2_virtual(c)?;
    signed
        .into_iter()
        .map(|(m, k)| {
            u64::try_from(k)
                .map(|k| (m, k))
                .map_err(|_| Error::NotARepresentation(format!("H_{m} would occur with multiplicity {k}")))
        })
        .collect()
}

/// Signed decomposition of a virtual SL2 character, `u -> 1/u` invariance required.
pub fn decompose_sl2_virtual(c: &Sl2Character) -> Result<BTreeMap<u32, Coeff>> {
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some((top, k)) = rest.leading() {
        if top < 0 {
            return Err(Error::NotARepresentation(format!(
                "residual character {rest} is not invariant under u -> 1/u"
            )));
        }
        rest -= &sl2_irrep_character(top as u32).scale(k);
        out.insert(top as u32, k);
    }
    Ok(out)
}

mod weight_entries {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::DominantWeight;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        a: u32,
        b: u32,
        multiplicity: u64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<DominantWeight, u64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .rev()
            .map(|(w, k)| Entry { a: w.a(), b: w.b(), multiplicity: *k })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<DominantWeight, u64>, D::Error> {
        let entries: Vec<Entry> = Vec::deserialize(d)?;
        entries
            .into_iter()
            .map(|e| {
                DominantWeight::new(e.a.into(), e.b.into())
                    .map(|w| (w, e.multiplicity))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> DominantWeight {
        DominantWeight::new(a, b).unwrap()
    }

    #[test]
    fn rejects_non_dominant() {
        assert!(matches!(DominantWeight::new(1, 2), Err(Error::InvalidWeight { .. })));
        assert!(DominantWeight::new(0, -1).is_err());
    }

    #[test]
    fn fundamental_coordinates() {
        assert_eq!(w(5, 3).fundamental_coordinates(), [2, 3]);
    }

    #[test]
    fn trivial_character_is_one() {
        assert_eq!(sp4_irrep_character(DominantWeight::TRIVIAL), SymplecticCharacter::one());
    }

    #[test]
    fn standard_character() {
        let expected = SymplecticCharacter::from_terms([([1, 0], 1), ([0, 1], 1), ([-1, 0], 1), ([0, -1], 1)]);
        assert_eq!(sp4_irrep_character(w(1, 0)), expected);
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(sp4_irrep_character(w(2, 2)).augmentation(), 14);
        assert_eq!(sp4_irrep_character(w(1, 1)).augmentation(), 5);
        assert_eq!(sp4_irrep_character(w(2, 0)).augmentation(), 10);
    }

    #[test]
    fn sl2_characters() {
        assert_eq!(sl2_irrep_character(0), Sl2Character::one());
        assert_eq!(sl2_irrep_character(1), Sl2Character::from_terms([(1, 1), (-1, 1)]));
        let h4 = sl2_irrep_character(4);
        assert_eq!(h4, Sl2Character::from_terms([(4, 1), (2, 1), (0, 1), (-2, 1), (-4, 1)]));
        assert_eq!(h4.augmentation(), 5);
    }

    #[test]
    fn decompose_tensor_square_of_standard() {
        let v = sp4_irrep_character(w(1, 0));
        let d = decompose_sp4(&(&v * &v)).unwrap();
        let expected: BTreeMap<_, _> = [(w(2, 0), 1), (w(1, 1), 1), (w(0, 0), 1)].into();
        assert_eq!(d.as_map(), &expected);
        assert_eq!(d.dimension(), 16);
    }

    #[test]
    fn decompose_constant() {
        let d = decompose_sp4(&SymplecticCharacter::one()).unwrap();
        assert_eq!(d.get(DominantWeight::TRIVIAL), 1);
        assert_eq!(d.iter().count(), 1);
    }

    #[test]
    fn decompose_rejects_negative_multiplicity() {
        let c = SymplecticCharacter::one() - sp4_irrep_character(w(1, 0));
        assert!(matches!(decompose_sp4(&c), Err(Error::NotARepresentation(_))));
    }

    #[test]
    fn decompose_rejects_non_invariant() {
        let c = SymplecticCharacter::monomial([0, -1], 1);
        assert!(matches!(decompose_sp4(&c), Err(Error::NotARepresentation(_))));
    }

    #[test]
    fn sl2_decompositions() {
        let h1 = sl2_irrep_character(1);
        assert_eq!(decompose_sl2(&(&h1 * &h1)).unwrap(), [(2, 1), (0, 1)].into());
        assert_eq!(decompose_sl2(&Sl2Character::one()).unwrap(), [(0, 1)].into());
        let h2 = sl2_irrep_character(2);
        assert_eq!(decompose_sl2(&(&h2 * &h2)).unwrap(), [(4, 1), (2, 1), (0, 1)].into());
        assert!(decompose_sl2(&Sl2Character::monomial(1, 1)).is_err());
    }

    #[test]
    fn decomposition_serde_roundtrip() {
        let v = sp4_irrep_character(w(1, 0));
        let d = decompose_sp4(&(&v * &v)).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: IrrepDecomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}
