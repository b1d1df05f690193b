//! Restriction of Sp4 irreps to `SL2 × SL2 ⋊ S2` and the cohomology of the
//! induced local systems on the boundary divisor `D11`.
//!
//! The block embedding puts the first `SL2` on `(e1, f1)` and the second on
//! `(e2, f2)`, so the maximal tori agree: `t1 = u`, `t2 = v`. The swap `σ` is
//! the permutation matrix exchanging `e1 ↔ e2` and `f1 ↔ f2`, which lies in Sp4.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::char_ring::{decompose_sl2_virtual, sl2_irrep_character, sp4_irrep_character, DominantWeight, Sl2Character, SymplecticCharacter};
use crate::error::{Error, Result};
use crate::facts::{keys, sl2z_cohomology};
use crate::laurent::Coeff;
use crate::weights::WeightTable;

/// `V_{a+b}` restricted to `SL2 × SL2`: `(p, q) -> multiplicity of H_p ⊠ H_q`.
pub fn restrict_untwisted(w: DominantWeight) -> BTreeMap<(u32, u32), u64> {
    let virtual_table = decompose_sl2_pair(&sp4_irrep_character(w));
    virtual_table
        .into_iter()
        .map(|(k, m)| (k, u64::try_from(m).expect("restriction of a representation has nonnegative multiplicities")))
        .collect()
}

/// Peels lex-leading terms; the result may have negative entries for virtual input.
fn decompose_sl2_pair(c: &SymplecticCharacter) -> BTreeMap<(u32, u32), Coeff> {
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some(([p, q], m)) = rest.leading() {
        assert!(p >= 0 && q >= 0, "character is not invariant under the sign flips");
        let block = product_character(p as u32, q as u32);
        rest -= &block.scale(m);
        out.insert((p as u32, q as u32), m);
    }
    out
}

fn product_character(p: u32, q: u32) -> SymplecticCharacter {
    let u = sl2_irrep_character(p);
    let v = sl2_irrep_character(q);
    let mut out = SymplecticCharacter::zero();
    for (i, a) in u.terms() {
        for (j, b) in v.terms() {
            out.add_term([i, j], a * b);
        }
    }
    out
}

/// Trace of `σ · diag(x, y, 1/x, 1/y)` as a Laurent polynomial in `w`, `w^2 = xy`.
///
/// On `span(e1, e2)` this element is `[[0, y], [x, 0]]` with eigenvalues `±w`,
/// and on `span(f1, f2)` it has `±1/w`; so it is conjugate to the torus element
/// `(t1, t2) = (w, −w)`, and the trace is the character evaluated there. The
/// choice of square root is immaterial: `w -> −w` fixes the result because only
/// even total degrees occur.
pub fn sigma_twisted_trace(w: DominantWeight) -> Sl2Character {
    let c = sp4_irrep_character(w);
    let mut out = Sl2Character::zero();
    for ([e1, e2], k) in c.terms() {
        let sign = if e2.rem_euclid(2) == 0 { 1 } else { -1 };
        out.add_term(e1 + e2, sign * k);
    }
    out
}

/// `Σ_a (m_a⁺ − m_a⁻) H_a` read off the twisted trace via `w^{2j} -> x^j`.
fn twisted_differences(w: DominantWeight) -> BTreeMap<u32, Coeff> {
    let trace = sigma_twisted_trace(w);
    let mut halved = Sl2Character::zero();
    for (e, k) in trace.terms() {
        assert!(e % 2 == 0, "twisted trace has an odd power of w");
        halved.add_term(e / 2, k);
    }
    decompose_sl2_virtual(&halved).expect("twisted trace is invariant under w -> 1/w")
}

/// Restriction to the wreath product. Off-diagonal keys are normalized to `a > b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WreathDecomposition {
    pub off_diagonal: BTreeMap<(u32, u32), u64>,
    pub diag_plus: BTreeMap<u32, u64>,
    pub diag_minus: BTreeMap<u32, u64>,
}

impl WreathDecomposition {
    pub fn off(&self, a: u32, b: u32) -> u64 {
        let key = if a >= b { (a, b) } else { (b, a) };
        self.off_diagonal.get(&key).copied().unwrap_or(0)
    }

    pub fn plus(&self, a: u32) -> u64 {
        self.diag_plus.get(&a).copied().unwrap_or(0)
    }

    pub fn minus(&self, a: u32) -> u64 {
        self.diag_minus.get(&a).copied().unwrap_or(0)
    }

    /// `dim U_{a,b} = 2(a+1)(b+1)`, `dim U_a^± = (a+1)^2`.
    pub fn dimension(&self) -> u128 {
        let off: u128 = self.off_diagonal.iter().map(|((a, b), m)| u128::from(*m) * 2 * u128::from(a + 1) * u128::from(b + 1)).sum();
        let diag: u128 = self.diag_plus.iter().chain(&self.diag_minus).map(|(a, m)| u128::from(*m) * u128::from(a + 1).pow(2)).sum();
        off + diag
    }

    /// `Σ_a (m_a⁺ − m_a⁻)(a + 1)`, the trace of `σ` itself.
    pub fn sigma_trace(&self) -> i128 {
        let plus: i128 = self.diag_plus.iter().map(|(a, m)| i128::from(*m) * i128::from(a + 1)).sum();
        let minus: i128 = self.diag_minus.iter().map(|(a, m)| i128::from(*m) * i128::from(a + 1)).sum();
        plus - minus
    }
}

#[derive(Serialize)]
struct PairEntry {
    a: u32,
    b: u32,
    multiplicity: u64,
}

#[derive(Serialize)]
struct DiagEntry {
    a: u32,
    multiplicity: u64,
}

impl Serialize for WreathDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            off_diagonal: Vec<PairEntry>,
            diag_plus: Vec<DiagEntry>,
            diag_minus: Vec<DiagEntry>,
        }
        let diag = |m: &BTreeMap<u32, u64>| m.iter().map(|(a, k)| DiagEntry { a: *a, multiplicity: *k }).collect();
        Repr {
            off_diagonal: self.off_diagonal.iter().map(|((a, b), k)| PairEntry { a: *a, b: *b, multiplicity: *k }).collect(),
            diag_plus: diag(&self.diag_plus),
            diag_minus: diag(&self.diag_minus),
        }
        .serialize(s)
    }
}

/// Combines the untwisted restriction (`m⁺ + m⁻` on diagonal blocks) with the
/// twisted trace (`m⁺ − m⁻`).
pub fn restrict_wreath(w: DominantWeight) -> Result<WreathDecomposition> {
    let untwisted = restrict_untwisted(w);
    let differences = twisted_differences(w);
    resolve(&untwisted, &differences)
}

fn resolve(untwisted: &BTreeMap<(u32, u32), u64>, differences: &BTreeMap<u32, Coeff>) -> Result<WreathDecomposition> {
    let mut out = WreathDecomposition::default();
    let mut blocks: Vec<u32> = differences.keys().copied().collect();
    for (&(p, q), &m) in untwisted {
        if p > q {
            out.off_diagonal.insert((p, q), m);
        } else if p == q {
            blocks.push(p);
        }
    }
    blocks.sort_unstable();
    blocks.dedup();
    for a in blocks {
        let sum = i128::from(untwisted.get(&(a, a)).copied().unwrap_or(0));
        let difference = differences.get(&a).copied().unwrap_or(0);
        let bad = || Error::InconsistentTraces { block: a, sum, difference };
        if (sum + difference) % 2 != 0 {
            return Err(bad());
        }
        let plus = u64::try_from((sum + difference) / 2).map_err(|_| bad())?;
        let minus = u64::try_from((sum - difference) / 2).map_err(|_| bad())?;
        if plus > 0 {
            out.diag_plus.insert(a, plus);
        }
        if minus > 0 {
            out.diag_minus.insert(a, minus);
        }
    }
    Ok(out)
}

/// `H^0` and `H^1` of `D11` with coefficients `V_{a+b}(twist)`, by Hodge weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D11Cohomology {
    pub weight: DominantWeight,
    pub twist: i64,
    pub h0: WeightTable,
    pub h1: WeightTable,
    pub facts: Vec<&'static str>,
}

/// Künneth on each wreath component. A component with labels `(c, d)` sits in
/// `V_{a+b}` twisted by `(c + d − a − b)/2`, which shifts its weights by
/// `(a + b) − (c + d)`; the global Tate twist is applied last.
pub fn cohomology_d11(w: DominantWeight, twist: i64) -> Result<D11Cohomology> {
    let mut facts = vec![keys::D11_KUNNETH, keys::EICHLER_SHIMURA];
    let mut h0 = WeightTable::new();
    let mut h1 = WeightTable::new();
    if w.size() % 2 == 1 {
        facts.push(keys::PARITY);
        return Ok(D11Cohomology { weight: w, twist, h0, h1, facts });
    }
    let wreath = restrict_wreath(w)?;
    let size = i64::from(w.size());
    for (&(c, d), &m) in &wreath.off_diagonal {
        let [c0, c1] = sl2z_cohomology(c);
        let [d0, d1] = sl2z_cohomology(d);
        let shift = size - i64::from(c + d);
        let mut deg1 = c1.tensor(&d0);
        deg1.merge(&c0.tensor(&d1));
        h0.merge(&c0.tensor(&d0).shift(shift).scaled(m));
        h1.merge(&deg1.shift(shift).scaled(m));
    }
    for (diag, symmetric) in [(&wreath.diag_plus, true), (&wreath.diag_minus, false)] {
        for (&c, &m) in diag {
            let [c0, c1] = sl2z_cohomology(c);
            let shift = size - 2 * i64::from(c);
            let deg0 = if symmetric { c0.sym2() } else { c0.alt2() };
            h0.merge(&deg0.shift(shift).scaled(m));
            h1.merge(&c0.tensor(&c1).shift(shift).scaled(m));
        }
    }
    Ok(D11Cohomology { weight: w, twist, h0: h0.twist(twist), h1: h1.twist(twist), facts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> DominantWeight {
        DominantWeight::new(a, b).unwrap()
    }

    #[test]
    fn standard_representation() {
        assert_eq!(restrict_untwisted(w(1, 0)), [((1, 0), 1), ((0, 1), 1)].into());
        assert!(sigma_twisted_trace(w(1, 0)).is_zero());
        let r = restrict_wreath(w(1, 0)).unwrap();
        assert_eq!(r.off_diagonal, [((1, 0), 1)].into());
        assert!(r.diag_plus.is_empty() && r.diag_minus.is_empty());
    }

    #[test]
    fn trivial_representation() {
        assert_eq!(restrict_untwisted(DominantWeight::TRIVIAL), [((0, 0), 1)].into());
        assert_eq!(sigma_twisted_trace(DominantWeight::TRIVIAL), Sl2Character::one());
        assert_eq!(restrict_wreath(DominantWeight::TRIVIAL).unwrap().diag_plus, [(0, 1)].into());
    }

    #[test]
    fn five_dimensional_representation() {
        // Λ²(H ⊕ H) minus the symplectic form: the swap negates e1∧e2 and ω1 − ω2.
        let r = restrict_wreath(w(1, 1)).unwrap();
        assert_eq!(r.diag_minus, [(1, 1), (0, 1)].into());
        assert!(r.diag_plus.is_empty() && r.off_diagonal.is_empty());
    }

    #[test]
    fn inconsistent_traces_are_reported() {
        let untwisted = [((0, 0), 1)].into();
        assert!(matches!(resolve(&untwisted, &[(0, 2)].into()), Err(Error::InconsistentTraces { block: 0, .. })));
        assert!(matches!(resolve(&untwisted, &[(0, 0)].into()), Err(Error::InconsistentTraces { block: 0, .. })));
        assert!(matches!(resolve(&BTreeMap::new(), &[(3, 2)].into()), Err(Error::InconsistentTraces { block: 3, .. })));
    }

    #[test]
    fn d11_examples() {
        let c = cohomology_d11(w(2, 2), -1).unwrap();
        assert_eq!(c.h0, WeightTable::single(6, 1));
        let c = cohomology_d11(w(3, 1), -1).unwrap();
        assert!(c.h0.is_zero());
        assert_eq!(c.h1, WeightTable::single(10, 1));
        assert!(c.h1.slots().any(|x| x == 7));
        let c = cohomology_d11(w(3, 3), 0).unwrap();
        assert!(c.h0.is_zero() && c.h1.is_zero());
    }
}
