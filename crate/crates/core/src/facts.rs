//! The versioned table of imported cohomological facts, and the rules that
//! evaluate them.
//!
//! Nothing in here is derived: each rule restates one cited theorem as a
//! function of the coefficient system, and reports carry the citation along.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::char_ring::DominantWeight;
use crate::error::{Error, Result};
use crate::modular::dim_cusp_forms;
use crate::weights::WeightTable;

const BUILTIN: &str = include_str!("../data/facts.toml");

pub mod keys {
    pub const PARITY: &str = "central-involution-parity";
    pub const BOREL_H1: &str = "borel-h1-vanishing";
    pub const MUMFORD: &str = "mumford-abelianization";
    pub const A2_TRIVIAL: &str = "a2-trivial-coefficients";
    pub const A2_H2: &str = "petersen-h2-a2";
    pub const A2_H3: &str = "petersen-h3-a2";
    pub const GYSIN_H0: &str = "petersen-gysin-h0";
    pub const GYSIN_H1: &str = "gysin-h1-tate-summand";
    pub const INJECTIVITY_CONJECTURE: &str = "petersen-injectivity-conjecture";
    pub const EICHLER_SHIMURA: &str = "eichler-shimura";
    pub const PERIOD_PARITY: &str = "period-parity";
    pub const GL2Z_INVARIANTS: &str = "gl2z-invariants";
    pub const D11_KUNNETH: &str = "d11-kunneth";
    pub const HARDER: &str = "harder-boundary-stalks";
    pub const RELATIVE_COMPLETION: &str = "relative-completion-h1";
    pub const MINIMAL_PRESENTATION: &str = "minimal-presentation";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub key: String,
    pub space: String,
    pub coefficient: String,
    pub degree: String,
    pub value: String,
    #[serde(default)]
    pub source: String,
    #[serde(default)]
    pub statement: String,
}

#[derive(Deserialize)]
struct FactsFile {
    version: u32,
    #[serde(rename = "fact")]
    facts: Vec<Fact>,
}

/// What a report prints next to every imported value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub key: String,
    pub source: String,
    pub statement: String,
}

#[derive(Clone, Debug)]
pub struct FactsTable {
    version: u32,
    facts: BTreeMap<String, Fact>,
}

impl FactsTable {
    pub fn parse(text: &str) -> Result<Self> {
        let file: FactsFile = toml::from_str(text).map_err(|e| Error::Facts(e.to_string()))?;
        let mut facts = BTreeMap::new();
        for fact in file.facts {
            let key = fact.key.clone();
            if facts.insert(key.clone(), fact).is_some() {
                return Err(Error::Facts(format!("duplicate key `{key}`")));
            }
        }
        Ok(FactsTable { version: file.version, facts })
    }

    /// The table checked into `data/facts.toml`.
    pub fn builtin() -> &'static FactsTable {
        static TABLE: OnceLock<FactsTable> = OnceLock::new();
        TABLE.get_or_init(|| FactsTable::parse(BUILTIN).expect("built-in facts table parses"))
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn get(&self, key: &str) -> Result<&Fact> {
        self.facts.get(key).ok_or_else(|| Error::Facts(format!("unknown fact `{key}`")))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fact> {
        self.facts.values()
    }

    /// Citation for `key`; fails if the entry lacks a source or statement.
    pub fn cite(&self, key: &str) -> Result<Citation> {
        let fact = self.get(key)?;
        if fact.source.trim().is_empty() || fact.statement.trim().is_empty() {
            return Err(Error::UncitedFact(key.to_string()));
        }
        Ok(Citation { key: fact.key.clone(), source: fact.source.clone(), statement: fact.statement.clone() })
    }
}

/// `H^0` and `H^1` of `SL2(Z)` with coefficients `H_m`, by Hodge weight.
/// Cusp slots are kept even when `s_{m+2} = 0`.
pub fn sl2z_cohomology(m: u32) -> [WeightTable; 2] {
    if m % 2 == 1 {
        return [WeightTable::new(), WeightTable::new()];
    }
    if m == 0 {
        return [WeightTable::single(0, 1), WeightTable::new()];
    }
    let mut h1 = WeightTable::single(i64::from(m) + 1, 2 * dim_cusp_forms(i64::from(m) + 2));
    h1.add(2 * i64::from(m) + 2, 1);
    [WeightTable::new(), h1]
}

/// Dimensions of `H^0` and `H^1` of `GL2(Z)` with coefficients `H_m`, i.e. the
/// `σ`-invariants of the `SL2(Z)` groups.
pub fn gl2z_cohomology_dims(m: u32) -> [u64; 2] {
    match m {
        0 => [1, 0],
        _ if m % 2 == 1 => [0, 0],
        _ => [0, dim_cusp_forms(i64::from(m) + 2) + 1],
    }
}

/// How a dimension in a cited term should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exact,
    AtLeast,
    Possible,
}

/// A cited cohomology group of `A2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitedTerm {
    pub weights: WeightTable,
    pub bound: Bound,
    pub fact: &'static str,
}

fn cited(weights: WeightTable, bound: Bound, fact: &'static str) -> CitedTerm {
    CitedTerm { weights, bound, fact }
}

/// `H^1(A2, V_{a+b})`.
pub fn a2_h1(w: DominantWeight) -> CitedTerm {
    if w.size() % 2 == 1 {
        return cited(WeightTable::new(), Bound::Exact, keys::PARITY);
    }
    cited(WeightTable::new(), Bound::Exact, keys::BOREL_H1)
}

/// `H^2(A2, V_{a+b})`.
pub fn a2_h2(w: DominantWeight) -> CitedTerm {
    if w.size() % 2 == 1 {
        return cited(WeightTable::new(), Bound::Exact, keys::PARITY);
    }
    if w == DominantWeight::TRIVIAL {
        return cited(WeightTable::single(2, 1), Bound::Exact, keys::A2_TRIVIAL);
    }
    let (a, b) = (w.a(), w.b());
    if a == b && a % 2 == 0 {
        // Pure of weight 2a + 2; nonzero exactly when s_{2a+4} > 0.
        return if dim_cusp_forms(i64::from(a + b) + 4) > 0 {
            cited(WeightTable::single(2 * i64::from(a) + 2, 1), Bound::AtLeast, keys::A2_H2)
        } else {
            cited(WeightTable::single(2 * i64::from(a) + 2, 0), Bound::Exact, keys::A2_H2)
        };
    }
    cited(WeightTable::new(), Bound::Exact, keys::A2_H2)
}

/// The part of `H^3(A2, V_{a+b})` the Gysin sequence needs: the Tate summand
/// `s_{a+b+4} Q(−a−2)` for `a > b`. `None` where no cited statement applies.
pub fn a2_h3(w: DominantWeight) -> Option<CitedTerm> {
    if w.size() % 2 == 1 {
        return Some(cited(WeightTable::new(), Bound::Exact, keys::PARITY));
    }
    if w == DominantWeight::TRIVIAL {
        return Some(cited(WeightTable::new(), Bound::Exact, keys::A2_TRIVIAL));
    }
    let (a, b) = (w.a(), w.b());
    if a > b {
        let s = dim_cusp_forms(i64::from(a + b) + 4);
        return Some(cited(WeightTable::single(2 * i64::from(a) + 4, s), Bound::AtLeast, keys::A2_H3));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_is_fully_cited() {
        let t = FactsTable::builtin();
        assert_eq!(t.version(), 1);
        for f in t.iter() {
            t.cite(&f.key).unwrap();
        }
        for key in [keys::EICHLER_SHIMURA, keys::BOREL_H1, keys::A2_H2, keys::A2_H3, keys::GYSIN_H0, keys::GYSIN_H1, keys::MUMFORD] {
            assert!(t.get(key).is_ok(), "{key}");
        }
    }

    #[test]
    fn missing_citation_is_rejected() {
        let t = FactsTable::parse(
            "version = 2\n[[fact]]\nkey = \"x\"\nspace = \"A2\"\ncoefficient = \"Q\"\ndegree = \"0\"\nvalue = \"Q\"\nsource = \"\"\nstatement = \"s\"\n",
        )
        .unwrap();
        assert_eq!(t.cite("x"), Err(Error::UncitedFact("x".into())));
        assert!(matches!(t.cite("y"), Err(Error::Facts(_))));
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let entry = "[[fact]]\nkey = \"x\"\nspace = \"\"\ncoefficient = \"\"\ndegree = \"\"\nvalue = \"\"\n";
        assert!(matches!(FactsTable::parse(&format!("version = 1\n{entry}{entry}")), Err(Error::Facts(_))));
    }

    #[test]
    fn eichler_shimura_rule() {
        assert_eq!(sl2z_cohomology(0)[0], WeightTable::single(0, 1));
        assert!(sl2z_cohomology(3)[1].is_zero());
        let h1 = &sl2z_cohomology(10)[1];
        assert_eq!(h1.nonzero(), [(11, 2), (22, 1)].into());
        let h1 = &sl2z_cohomology(2)[1];
        assert_eq!(h1.slots().collect::<Vec<_>>(), vec![3, 6]);
        assert_eq!(h1.nonzero(), [(6, 1)].into());
        assert_eq!(gl2z_cohomology_dims(10), [0, 2]);
    }

    #[test]
    fn a2_terms() {
        let w = |a, b| DominantWeight::new(a, b).unwrap();
        assert!(a2_h2(w(2, 2)).weights.is_zero());
        assert_eq!(a2_h2(w(2, 2)).weights.slots().collect::<Vec<_>>(), vec![6]);
        assert_eq!(a2_h2(w(3, 3)).weights.slots().count(), 0);
        assert_eq!(a2_h2(w(4, 4)).weights.nonzero(), [(10, 1)].into());
        assert_eq!(a2_h3(w(5, 3)).unwrap().weights.nonzero(), [(14, 1)].into());
        assert!(a2_h3(w(3, 1)).unwrap().weights.is_zero());
        assert!(a2_h3(w(2, 2)).is_none());
    }
}
