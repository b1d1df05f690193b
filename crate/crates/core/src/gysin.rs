//! Gysin-sequence bookkeeping for `D11 ⊂ A2 ⊃ M2` with coefficients `V_{a+b}`,
//! and the generator / relation bounds it yields for the genus-two relative
//! completion.
//!
//! The sequence used is
//!
//! ```text
//! 0 → H¹(A2) → H¹(M2) → H⁰(D11, V(−1)) → H²(A2) → H²(M2) → H¹(D11, V(−1)) → H³(A2)
//! ```
//!
//! `A2` terms come from the facts table, `D11` terms from [`crate::branching`],
//! and the `M2` terms are deduced by exactness.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::branching::cohomology_d11;
use crate::char_ring::{decompose_sp4, sp4_irrep_character, DominantWeight, IrrepDecomposition};
use crate::error::{Error, Result};
use crate::facts::{a2_h1, a2_h2, a2_h3, keys, Bound, Citation, CitedTerm, FactsTable};
use crate::lie_structure::free_lie_graded;
use crate::modular::{dim_cusp_forms, nonvanishing_check, NonvanishingCertificate};
use crate::weights::{HodgeLabel, TateTwisted, WeightTable};

/// Default sweep bound on `a + b`.
pub const DEFAULT_SWEEP: u32 = 30;

/// `H¹(M2, V_{a+b})` as the kernel of `H⁰(D11, V(−1)) → H²(A2, V)`.
pub fn h1_m2(w: DominantWeight) -> Result<WeightTable> {
    Ok(h1_m2_with_reason(w)?.0)
}

fn h1_m2_with_reason(w: DominantWeight) -> Result<(WeightTable, Vec<&'static str>)> {
    if w.size() % 2 == 1 {
        return Ok((WeightTable::new(), vec![keys::PARITY]));
    }
    if w == DominantWeight::TRIVIAL {
        return Ok((WeightTable::new(), vec![keys::MUMFORD]));
    }
    let source = cohomology_d11(w, -1)?.h0;
    let mut facts = vec![keys::BOREL_H1, keys::D11_KUNNETH, keys::EICHLER_SHIMURA];
    if source.is_zero() {
        return Ok((WeightTable::new(), facts));
    }
    let target = a2_h2(w);
    facts.push(target.fact);
    if target.weights.is_zero() {
        return Ok((source, facts));
    }
    if source.total() != 1 {
        return Err(Error::Undetermined(format!("Gysin map out of a {}-dimensional H⁰ for {w}", source.total())));
    }
    facts.push(keys::GYSIN_H0);
    Ok((WeightTable::new(), facts))
}

/// Possible weights of `H²(M2, V_{a+b})`: the weight slots of `H²(A2, V)`
/// (through the cokernel) and of `H¹(D11, V(−1))` (through the kernel).
pub fn h2_m2_weights(w: DominantWeight) -> Result<BTreeSet<i64>> {
    if w.size() % 2 == 1 {
        return Ok(BTreeSet::new());
    }
    let mut out: BTreeSet<i64> = a2_h2(w).weights.slots().collect();
    out.extend(cohomology_d11(w, -1)?.h1.slots());
    Ok(out)
}

// ---- generators -------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub generators: Vec<TateTwisted>,
    pub sweep_bound: u32,
    /// `(a, b)` with `H¹(M2, V_{a+b}) ≠ 0`, and its weight table.
    pub contributions: Vec<(DominantWeight, WeightTable)>,
    pub facts: Vec<&'static str>,
}

/// `H_1(u) = ⊕ H¹(M2, V_λ)^* ⊗ V_λ`: a class of Hodge weight `h` in
/// `H¹(M2, V_λ)` contributes `V_λ(h/2)`.
pub fn generator_sweep(max_weight: u32) -> Result<GeneratorReport> {
    let mut generators = Vec::new();
    let mut contributions = Vec::new();
    for w in DominantWeight::all_up_to(max_weight) {
        let table = h1_m2(w)?;
        if table.is_zero() {
            continue;
        }
        for (h, d) in table.nonzero() {
            if h % 2 != 0 {
                return Err(Error::Undetermined(format!("odd Hodge weight {h} in H¹(M2, {w})")));
            }
            for _ in 0..d {
                generators.push(TateTwisted::irrep(w, h / 2));
            }
        }
        contributions.push((w, table));
    }
    Ok(GeneratorReport { generators, sweep_bound: max_weight, contributions, facts: vec![keys::RELATIVE_COMPLETION] })
}

/// The single irreducible generator module found by the default sweep.
pub fn generator_module() -> Result<TateTwisted> {
    single_generator(&generator_sweep(DEFAULT_SWEEP)?)
}

fn single_generator(report: &GeneratorReport) -> Result<TateTwisted> {
    match report.generators.as_slice() {
        [g] => Ok(*g),
        other => Err(Error::Undetermined(format!("expected one generator module, found {}", other.len()))),
    }
}

// ---- relations ----------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCandidate {
    pub weight: DominantWeight,
    pub twist: i64,
    pub hodge_weight: i64,
    /// Bracket length `m` with Hodge weight `−2m`.
    pub lcs_degree: u32,
    pub free_lie_multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certification {
    /// `L(f, a+3) ≠ 0` checked numerically for the unique eigenform.
    LValue { certificate: NonvanishingCertificate },
    /// Several eigenforms: the exclusion rests on the cited statement alone.
    CitedNotMachineCertified { cusp_dimension: u64 },
    NotRequested,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Exclusion {
    /// The relation module would have odd Hodge weight; the free Lie algebra on
    /// a weight-`−2` generator has even weights only.
    OddWeight { weight: DominantWeight, slot: i64 },
    /// Hodge weight above `−4`: relations live in bracket length at least 2.
    BracketLengthBelowTwo { weight: DominantWeight, slot: i64 },
    /// The class maps injectively under `H¹(D11, V(−1)) → H³(A2, V)`.
    GysinInjective { weight: DominantWeight, slot: i64, cusp_dimension: u64, certification: Certification },
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub generator: TateTwisted,
    pub sweep_bound: u32,
    pub candidates: Vec<RelationCandidate>,
    /// Candidates with `free_lie_multiplicity = 0`; they cannot occur.
    pub absent_from_free_lie: Vec<DominantWeight>,
    pub excluded: Vec<Exclusion>,
    pub degree_range: Option<(u32, u32)>,
    /// `s_k > 0` for every even `k` in `16..=60`, so sweeps beyond 14 add nothing.
    pub stable_beyond_14: bool,
    pub facts: Vec<&'static str>,
}

/// Candidate irreducible summands of `H_2(u)`, each `V_{a+b}(t)` coming from a
/// possible weight `2t` of `H²(M2, V_{a+b})`.
pub fn relation_candidates(certify: bool, max_weight: u32, tolerance: f64) -> Result<RelationReport> {
    let generator = single_generator(&generator_sweep(max_weight)?)?;
    let HodgeLabel::Irrep(generator_irrep) = generator.label else {
        return Err(Error::Undetermined("generator is not an Sp4 irrep".into()));
    };
    let step = -generator.hodge_weight();
    if step <= 0 {
        return Err(Error::Undetermined("generator weight must be negative".into()));
    }
    let mut candidates = Vec::new();
    let mut excluded = Vec::new();
    let mut free_lie: BTreeMap<u32, IrrepDecomposition> = BTreeMap::new();
    for w in DominantWeight::all_up_to(max_weight) {
        if w.size() % 2 == 1 {
            continue;
        }
        let d11 = cohomology_d11(w, -1)?;
        let h3 = a2_h3(w);
        for slot in h2_m2_weights(w)? {
            let hodge = i64::from(w.size()) - slot;
            if hodge % step != 0 || slot % 2 != 0 {
                excluded.push(Exclusion::OddWeight { weight: w, slot });
                continue;
            }
            let m = -hodge / step;
            if m < 2 {
                excluded.push(Exclusion::BracketLengthBelowTwo { weight: w, slot });
                continue;
            }
            let killed = h3.as_ref().is_some_and(|t| t.weights.dim_at(slot) > 0) && d11.h1.dim_at(slot) == 1;
            if killed {
                let s = dim_cusp_forms(i64::from(w.size()) + 4);
                let certification = certify_exclusion(w, s, certify, tolerance)?;
                excluded.push(Exclusion::GysinInjective { weight: w, slot, cusp_dimension: s, certification });
                continue;
            }
            let m = m as u32;
            let decomposition = match free_lie.get(&m) {
                Some(d) => d,
                None => {
                    let piece = free_lie_graded(&sp4_irrep_character(generator_irrep), m)?;
                    free_lie.entry(m).or_insert(decompose_sp4(&piece.character)?)
                }
            };
            let candidate = RelationCandidate {
                weight: w,
                twist: slot / 2,
                hodge_weight: hodge,
                lcs_degree: m,
                free_lie_multiplicity: decomposition.get(w),
            };
            debug_assert_eq!(TateTwisted::irrep(w, candidate.twist).hodge_weight(), -2 * i64::from(m));
            candidates.push(candidate);
        }
    }
    candidates.sort_by_key(|c| (c.weight.size(), Reverse(c.weight.a())));
    let absent_from_free_lie = candidates.iter().filter(|c| c.free_lie_multiplicity == 0).map(|c| c.weight).collect();
    let degree_range = candidates.iter().map(|c| c.lcs_degree).min().zip(candidates.iter().map(|c| c.lcs_degree).max());
    let stable_beyond_14 = (16..=60).step_by(2).all(|k| dim_cusp_forms(k) > 0);
    Ok(RelationReport {
        generator,
        sweep_bound: max_weight,
        candidates,
        absent_from_free_lie,
        excluded,
        degree_range,
        stable_beyond_14,
        facts: vec![keys::RELATIVE_COMPLETION, keys::MINIMAL_PRESENTATION, keys::GYSIN_H1, keys::A2_H3],
    })
}

fn certify_exclusion(w: DominantWeight, s: u64, certify: bool, tolerance: f64) -> Result<Certification> {
    if !certify {
        return Ok(Certification::NotRequested);
    }
    if s >= 2 {
        return Ok(Certification::CitedNotMachineCertified { cusp_dimension: s });
    }
    let certificate = nonvanishing_check(w.a(), w.b(), tolerance)?;
    if !certificate.certified {
        return Err(Error::Undetermined(format!("L-value certificate for {w} failed")));
    }
    Ok(Certification::LValue { certificate })
}

// ---- weight ledger ------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CitedFact,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportWeight {
    pub w: i64,
    pub dim: u64,
    pub bound: Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerTerm {
    pub term: String,
    pub space: &'static str,
    pub degree: u32,
    pub coefficient: String,
    pub twist: i64,
    pub weights: Vec<ReportWeight>,
    pub citation: Vec<Citation>,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LedgerTerm {
    fn dim_at(&self, w: i64) -> u64 {
        self.weights.iter().filter(|e| e.w == w).map(|e| e.dim).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapStatus {
    Zero,
    Injective,
    NontrivialOnTateSummand,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerMap {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub status: MapStatus,
    pub shared_weight: Option<i64>,
    pub citation: Vec<Citation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLedgerReport {
    pub weight: DominantWeight,
    pub facts_version: u32,
    pub terms: Vec<LedgerTerm>,
    pub maps: Vec<LedgerMap>,
}

fn report_weights(t: &WeightTable, bound: Bound) -> Vec<ReportWeight> {
    t.entries().into_iter().map(|e| ReportWeight { w: e.w, dim: e.dim, bound: if e.dim == 0 { Bound::Exact } else { bound } }).collect()
}

fn cite_all(facts: &FactsTable, keys: &[&str]) -> Result<Vec<Citation>> {
    let mut seen = BTreeSet::new();
    keys.iter().filter(|k| seen.insert(**k)).map(|k| facts.cite(k)).collect()
}

pub fn weight_ledger_report(w: DominantWeight) -> Result<WeightLedgerReport> {
    weight_ledger_report_with(w, FactsTable::builtin())
}

/// Every term and map of the sequence, validated: the `D11` terms carry the
/// `(−1)` twist, nontrivial maps share a weight, and every fact is cited.
pub fn weight_ledger_report_with(w: DominantWeight, facts: &FactsTable) -> Result<WeightLedgerReport> {
    if w.size() % 2 == 1 {
        return Err(Error::OddParity(w.size()));
    }
    let coefficient = w.to_string();
    let cited_term = |term: &str, degree: u32, t: &CitedTerm, note: Option<String>| -> Result<LedgerTerm> {
        Ok(LedgerTerm {
            term: term.to_string(),
            space: "A2",
            degree,
            coefficient: coefficient.clone(),
            twist: 0,
            weights: report_weights(&t.weights, t.bound),
            citation: cite_all(facts, &[t.fact])?,
            provenance: Provenance::CitedFact,
            note,
        })
    };
    let d11 = cohomology_d11(w, -1)?;
    let untwisted = cohomology_d11(w, 0)?;
    if d11.twist != -1 || d11.h0 != untwisted.h0.shift(2) || d11.h1 != untwisted.h1.shift(2) {
        return Err(Error::Undetermined("Tate twist not applied to the D11 terms".into()));
    }
    let d11_term = |degree: u32, t: &WeightTable| -> Result<LedgerTerm> {
        Ok(LedgerTerm {
            term: format!("H^{degree}(D11, {coefficient}(-1))"),
            space: "D11",
            degree,
            coefficient: coefficient.clone(),
            twist: -1,
            weights: report_weights(t, Bound::Exact),
            citation: cite_all(facts, &d11.facts)?,
            provenance: Provenance::Computed,
            note: None,
        })
    };
    let (h1, h1_facts) = h1_m2_with_reason(w)?;
    let h2a = a2_h2(w);
    let h2_note = (h2a.weights.is_zero() && w.a() == w.b() && w.a().is_multiple_of(2))
        .then(|| format!("no cusp form of weight {}", w.size() + 4));
    let h3a = a2_h3(w);
    let h2m = h2_m2_weights(w)?;
    let terms = vec![
        cited_term("H^1(A2, V)", 1, &a2_h1(w), None)?,
        LedgerTerm {
            term: "H^1(M2, V)".into(),
            space: "M2",
            degree: 1,
            coefficient: coefficient.clone(),
            twist: 0,
            weights: report_weights(&h1, Bound::Exact),
            citation: cite_all(facts, &h1_facts)?,
            provenance: Provenance::Computed,
            note: None,
        },
        d11_term(0, &d11.h0)?,
        cited_term("H^2(A2, V)", 2, &h2a, h2_note)?,
        LedgerTerm {
            term: "H^2(M2, V)".into(),
            space: "M2",
            degree: 2,
            coefficient: coefficient.clone(),
            twist: 0,
            weights: h2m.iter().map(|&x| ReportWeight { w: x, dim: 0, bound: Bound::Possible }).collect(),
            citation: cite_all(facts, &[keys::A2_H2, keys::D11_KUNNETH, keys::EICHLER_SHIMURA])?,
            provenance: Provenance::Computed,
            note: Some("possible weights only".into()),
        },
        d11_term(1, &d11.h1)?,
        match &h3a {
            Some(t) => cited_term("H^3(A2, V)", 3, t, None)?,
            None => LedgerTerm {
                term: "H^3(A2, V)".into(),
                space: "A2",
                degree: 3,
                coefficient: coefficient.clone(),
                twist: 0,
                weights: Vec::new(),
                citation: Vec::new(),
                provenance: Provenance::CitedFact,
                note: Some("not needed: the incoming map has zero source".into()),
            },
        },
    ];
    if h3a.is_none() && !d11.h1.is_zero() {
        return Err(Error::Undetermined(format!("H^3(A2, {coefficient}) is needed but no fact applies")));
    }

    let mut maps = Vec::new();
    // H⁰(D11, V(−1)) → H²(A2, V)
    let (status, cite): (MapStatus, Vec<&str>) = if d11.h0.is_zero() {
        (MapStatus::Zero, vec![])
    } else if w == DominantWeight::TRIVIAL {
        (MapStatus::Injective, vec![keys::MUMFORD, keys::BOREL_H1])
    } else if h2a.weights.is_zero() {
        (MapStatus::Zero, vec![h2a.fact])
    } else {
        (MapStatus::Injective, vec![keys::GYSIN_H0])
    };
    maps.push(checked_map("gysin H^0(D11) -> H^2(A2)", 2, 3, status, &terms, facts, &cite)?);
    // H¹(D11, V(−1)) → H³(A2, V)
    let (status, cite): (MapStatus, Vec<&str>) = match &h3a {
        _ if d11.h1.is_zero() => (MapStatus::Zero, vec![]),
        Some(t) if t.weights.is_zero() => (MapStatus::Zero, vec![t.fact]),
        Some(_) => (MapStatus::NontrivialOnTateSummand, vec![keys::GYSIN_H1]),
        None => (MapStatus::Undetermined, vec![]),
    };
    maps.push(checked_map("gysin H^1(D11) -> H^3(A2)", 5, 6, status, &terms, facts, &cite)?);
    Ok(WeightLedgerReport { weight: w, facts_version: facts.version(), terms, maps })
}

fn checked_map(
    name: &str,
    source: usize,
    target: usize,
    status: MapStatus,
    terms: &[LedgerTerm],
    facts: &FactsTable,
    cite: &[&str],
) -> Result<LedgerMap> {
    let shared_weight = terms[source].weights.iter().map(|e| e.w).find(|&x| terms[source].dim_at(x) > 0 && terms[target].dim_at(x) > 0);
    if matches!(status, MapStatus::Injective | MapStatus::NontrivialOnTateSummand) && shared_weight.is_none() {
        return Err(Error::Undetermined(format!("{name}: nontrivial map between terms with no common weight")));
    }
    Ok(LedgerMap { name: name.into(), source, target, status, shared_weight, citation: cite_all(facts, cite)? })
}

// ---- main theorem -----------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct TheoremA {
    pub generator: String,
    pub generator_hodge_weight: i64,
    pub sweep_bound: u32,
    pub other_generators: usize,
    pub candidates: Vec<RelationCandidate>,
    pub candidate_pairs: Vec<(u32, u32)>,
    pub absent_from_free_lie: Vec<DominantWeight>,
    pub degree_range: (u32, u32),
    pub excluded_by_certificate: usize,
    pub excluded_cited_only: usize,
    pub stable_beyond_14: bool,
    pub conclusion: String,
}

/// End-to-end: one generator module and relations of bracket length 3 through 7.
pub fn theorem_a(max_weight: u32, certify: bool, tolerance: f64) -> Result<TheoremA> {
    let generators = generator_sweep(max_weight)?;
    let generator = single_generator(&generators)?;
    let relations = relation_candidates(certify, max_weight, tolerance)?;
    let degree_range = relations.degree_range.ok_or_else(|| Error::Undetermined("no relation candidates".into()))?;
    let (mut certified, mut cited_only) = (0, 0);
    for e in &relations.excluded {
        if let Exclusion::GysinInjective { certification, .. } = e {
            match certification {
                Certification::LValue { .. } => certified += 1,
                Certification::CitedNotMachineCertified { .. } => cited_only += 1,
                Certification::NotRequested => {}
            }
        }
    }
    let conclusion = format!(
        "u_2 is generated by {generator} with relations contained in a subrepresentation of the sum of V_{{a+b}}(a+2) over the listed pairs, in bracket lengths {} through {}",
        degree_range.0, degree_range.1
    );
    Ok(TheoremA {
        generator: generator.to_string(),
        generator_hodge_weight: generator.hodge_weight(),
        sweep_bound: max_weight,
        other_generators: generators.generators.len() - 1,
        candidate_pairs: relations.candidates.iter().map(|c| (c.weight.a(), c.weight.b())).collect(),
        candidates: relations.candidates,
        absent_from_free_lie: relations.absent_from_free_lie,
        degree_range,
        excluded_by_certificate: certified,
        excluded_cited_only: cited_only,
        stable_beyond_14: relations.stable_beyond_14,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> DominantWeight {
        DominantWeight::new(a, b).unwrap()
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_m2(w(2, 2)).unwrap(), WeightTable::single(6, 1));
        assert!(h1_m2(w(4, 4)).unwrap().is_zero());
        assert!(h1_m2(w(3, 3)).unwrap().is_zero());
        assert!(h1_m2(w(0, 0)).unwrap().is_zero());
    }

    #[test]
    fn h2_examples() {
        assert!(h2_m2_weights(w(1, 1)).unwrap().is_empty());
        assert_eq!(h2_m2_weights(w(2, 2)).unwrap(), [6].into());
        assert_eq!(h2_m2_weights(w(3, 1)).unwrap(), [7, 10].into());
        assert!(h2_m2_weights(w(2, 1)).unwrap().is_empty());
    }

    #[test]
    fn generator() {
        let g = generator_module().unwrap();
        assert_eq!(g.to_string(), "V_{2+2}(3)");
        assert_eq!(g.hodge_weight(), -2);
    }

    #[test]
    fn odd_ledger_is_rejected() {
        assert_eq!(weight_ledger_report(w(2, 1)), Err(Error::OddParity(3)));
    }
}
