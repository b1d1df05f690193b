//! Weight-graded dimension tables and Tate twists.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::char_ring::DominantWeight;

/// Hodge weight -> dimension.
///
/// A zero entry is a structural slot: the weight is allowed by the shape of
/// the computation even though the dimension there happens to vanish (for
/// example the cuspidal part of `H^1(SL2(Z), H_2)`). Equality and emptiness
/// ignore slots.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(from = "Vec<WeightEntry>", into = "Vec<WeightEntry>")]
pub struct WeightTable {
    dims: BTreeMap<i64, u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub w: i64,
    pub dim: u64,
}

impl From<Vec<WeightEntry>> for WeightTable {
    fn from(v: Vec<WeightEntry>) -> Self {
        let mut t = WeightTable::default();
        for e in v {
            t.add(e.w, e.dim);
        }
        t
    }
}

impl From<WeightTable> for Vec<WeightEntry> {
    fn from(t: WeightTable) -> Self {
        t.entries()
    }
}

impl WeightTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: i64, dim: u64) -> Self {
        let mut t = Self::new();
        t.add(w, dim);
        t
    }

    /// Adds `dim` at weight `w`, creating a slot if `dim == 0`.
    pub fn add(&mut self, w: i64, dim: u64) {
        *self.dims.entry(w).or_insert(0) += dim;
    }

    pub fn dim_at(&self, w: i64) -> u64 {
        self.dims.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Every weight slot, including zero-dimensional ones.
    pub fn slots(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn entries(&self) -> Vec<WeightEntry> {
        self.dims.iter().map(|(w, d)| WeightEntry { w: *w, dim: *d }).collect()
    }

    pub fn nonzero(&self) -> BTreeMap<i64, u64> {
        self.dims.iter().filter(|(_, d)| **d > 0).map(|(w, d)| (*w, *d)).collect()
    }

    pub fn shift(&self, by: i64) -> Self {
        WeightTable { dims: self.dims.iter().map(|(w, d)| (w + by, *d)).collect() }
    }

    /// Every dimension multiplied by `n`; slots survive.
    pub fn scaled(&self, n: u64) -> Self {
        WeightTable { dims: self.dims.iter().map(|(w, d)| (*w, d * n)).collect() }
    }

    /// Applies a Tate twist `(m)`, which lowers every weight by `2m`.
    pub fn twist(&self, m: i64) -> Self {
        self.shift(-2 * m)
    }

    pub fn merge(&mut self, other: &WeightTable) {
        for (w, d) in &other.dims {
            self.add(*w, *d);
        }
    }

    /// Tensor product: weights add, dimensions multiply. Slots survive.
    pub fn tensor(&self, other: &WeightTable) -> Self {
        let mut out = Self::new();
        for (w1, d1) in &self.dims {
            for (w2, d2) in &other.dims {
                out.add(w1 + w2, d1 * d2);
            }
        }
        out
    }

    /// Symmetric square of a weight-graded space concentrated in one cohomological degree.
    pub fn sym2(&self) -> Self {
        self.square(|d| d * (d + 1) / 2)
    }

    pub fn alt2(&self) -> Self {
        self.square(|d| d * d.saturating_sub(1) / 2)
    }

    fn square(&self, diagonal: impl Fn(u64) -> u64) -> Self {
        let mut out = Self::new();
        let entries: Vec<(i64, u64)> = self.dims.iter().map(|(w, d)| (*w, *d)).collect();
        for (i, (w1, d1)) in entries.iter().enumerate() {
            let diag = diagonal(*d1);
            if diag > 0 {
                out.add(2 * w1, diag);
            }
            for (w2, d2) in &entries[i + 1..] {
                if d1 * d2 > 0 {
                    out.add(w1 + w2, d1 * d2);
                }
            }
        }
        out
    }
}

impl PartialEq for WeightTable {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero() == other.nonzero()
    }
}

impl Eq for WeightTable {}

impl fmt::Display for WeightTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|(w, d)| format!("w{w}:{d}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}

/// Label of a twisted Hodge structure: an Sp4 irrep or the Tate object `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HodgeLabel {
    Irrep(DominantWeight),
    Tate,
}

/// `V_{a+b}(m)` or `Q(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TateTwisted {
    pub label: HodgeLabel,
    pub twist: i64,
}

impl TateTwisted {
    pub fn irrep(w: DominantWeight, twist: i64) -> Self {
        TateTwisted { label: HodgeLabel::Irrep(w), twist }
    }

    pub fn tate(twist: i64) -> Self {
        TateTwisted { label: HodgeLabel::Tate, twist }
    }

    pub fn hodge_weight(&self) -> i64 {
        let base = match self.label {
            HodgeLabel::Irrep(w) => i64::from(w.size()),
            HodgeLabel::Tate => 0,
        };
        base - 2 * self.twist
    }

    pub fn twisted(&self, m: i64) -> Self {
        TateTwisted { label: self.label, twist: self.twist + m }
    }
}

impl fmt::Display for TateTwisted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            HodgeLabel::Irrep(w) => write!(f, "{w}({})", self.twist),
            HodgeLabel::Tate => write!(f, "Q({})", self.twist),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_survive_tensor_but_not_equality() {
        let mut h1 = WeightTable::single(3, 0);
        h1.add(6, 1);
        let h0 = WeightTable::single(0, 1);
        let t = h1.tensor(&h0);
        assert_eq!(t.slots().collect::<Vec<_>>(), vec![3, 6]);
        assert_eq!(t, WeightTable::single(6, 1));
    }

    #[test]
    fn squares() {
        let mut t = WeightTable::single(0, 2);
        t.add(1, 1);
        assert_eq!(t.sym2(), WeightTable::from(vec![WeightEntry { w: 0, dim: 3 }, WeightEntry { w: 1, dim: 2 }, WeightEntry { w: 2, dim: 1 }]));
        assert_eq!(t.alt2(), WeightTable::from(vec![WeightEntry { w: 0, dim: 1 }, WeightEntry { w: 1, dim: 2 }]));
        assert!(WeightTable::single(0, 1).alt2().is_zero());
    }

    #[test]
    fn tate_twist_weights() {
        let v = TateTwisted::irrep(DominantWeight::new(2, 2).unwrap(), 3);
        assert_eq!(v.hodge_weight(), -2);
        assert_eq!(v.twisted(5).twisted(-5), v);
        assert_eq!(TateTwisted::tate(-3).hodge_weight(), 6);
        assert_eq!(v.to_string(), "V_{2+2}(3)");
    }
}
