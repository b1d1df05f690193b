use std::collections::BTreeSet;

use genus2_core::char_ring::DominantWeight;
use genus2_core::facts::{keys, FactsTable};
use genus2_core::gysin::*;
use genus2_core::modular::dim_cusp_forms;
use genus2_core::weights::{TateTwisted, WeightTable};
use genus2_core::Error;
use proptest::prelude::*;

fn w(a: i64, b: i64) -> DominantWeight {
    DominantWeight::new(a, b).unwrap()
}

const TOLERANCE: f64 = 1e-12;

#[test]
fn h1_is_nonzero_for_one_weight_only() {
    let nonzero: Vec<DominantWeight> = DominantWeight::all_up_to(30).into_iter().filter(|&x| !h1_m2(x).unwrap().is_zero()).collect();
    assert_eq!(nonzero, vec![w(2, 2)]);
    assert_eq!(h1_m2(w(2, 2)).unwrap(), WeightTable::single(6, 1));
    let report = generator_sweep(30).unwrap();
    assert_eq!(report.generators, vec![TateTwisted::irrep(w(2, 2), 3)]);
    let g = generator_module().unwrap();
    assert_eq!(g.to_string(), "V_{2+2}(3)");
    assert_eq!(g.hodge_weight(), -2);
}

#[test]
fn h2_weight_rule() {
    for weight in DominantWeight::all_up_to(14) {
        let (a, b) = (i64::from(weight.a()), i64::from(weight.b()));
        let expected: BTreeSet<i64> = if (a + b) % 2 == 1 || (a == b && a % 2 == 1) {
            BTreeSet::new()
        } else if weight == DominantWeight::TRIVIAL {
            [2].into()
        } else if a == b {
            [2 * a + 2].into()
        } else {
            [a + b + 3, 2 * a + 4].into()
        };
        assert_eq!(h2_m2_weights(weight).unwrap(), expected, "{weight}");
    }
}

#[test]
fn relation_candidates_reproduce_the_bound() {
    let report = relation_candidates(true, DEFAULT_SWEEP, TOLERANCE).unwrap();
    let pairs: Vec<(u32, u32)> = report.candidates.iter().map(|c| (c.weight.a(), c.weight.b())).collect();
    assert_eq!(pairs, vec![(2, 0), (4, 0), (3, 1), (6, 0), (5, 1), (4, 2), (10, 0), (9, 1), (8, 2), (7, 3), (6, 4)]);
    assert_eq!(report.degree_range, Some((3, 7)));
    let degrees: BTreeSet<u32> = report.candidates.iter().map(|c| c.lcs_degree).collect();
    assert_eq!(degrees, (3..=7).collect());
    for c in &report.candidates {
        let (a, b) = (i64::from(c.weight.a()), i64::from(c.weight.b()));
        assert_eq!(c.twist, a + 2);
        assert_eq!(-2 * i64::from(c.lcs_degree), (a + b) - 2 * (a + 2));
        assert_eq!(i64::from(c.lcs_degree), (a - b + 4) / 2);
        assert_eq!(TateTwisted::irrep(c.weight, c.twist).hodge_weight(), c.hodge_weight);
    }
    // Frozen multiplicities in the free Lie algebra on V_{2+2}.
    let multiplicities: Vec<u64> = report.candidates.iter().map(|c| c.free_lie_multiplicity).collect();
    assert_eq!(multiplicities, vec![1, 4, 1, 22, 5, 2, 306, 76, 18, 2, 1]);
    assert!(report.absent_from_free_lie.is_empty());
}

#[test]
fn eight_is_excluded_by_certificates() {
    let report = relation_candidates(true, 14, TOLERANCE).unwrap();
    let certified: BTreeSet<(u32, u32)> = report
        .excluded
        .iter()
        .filter_map(|e| match e {
            Exclusion::GysinInjective { weight, certification: Certification::LValue { certificate }, .. } => {
                assert!(certificate.certified);
                Some((weight.a(), weight.b()))
            }
            _ => None,
        })
        .collect();
    for pair in [(5, 3), (7, 1), (6, 2), (8, 0)] {
        assert!(certified.contains(&pair), "{pair:?}");
    }
    let uncertified = relation_candidates(false, 14, TOLERANCE).unwrap();
    assert!(uncertified.excluded.iter().all(|e| !matches!(e, Exclusion::GysinInjective { certification: Certification::LValue { .. }, .. })));
    assert_eq!(uncertified.candidates, report.candidates);
}

#[test]
fn multi_dimensional_weights_are_flagged() {
    let report = relation_candidates(true, 22, TOLERANCE).unwrap();
    let flagged = report.excluded.iter().any(|e| {
        matches!(e, Exclusion::GysinInjective { weight, certification: Certification::CitedNotMachineCertified { cusp_dimension: 2 }, .. } if weight.size() == 20)
    });
    assert!(flagged);
}

#[test]
fn candidates_are_stable_beyond_fourteen() {
    assert!((16..=60).step_by(2).all(|k| dim_cusp_forms(k) > 0));
    let base = relation_candidates(false, 16, TOLERANCE).unwrap();
    assert!(base.stable_beyond_14);
    for bound in [20, 26, 30] {
        assert_eq!(relation_candidates(false, bound, TOLERANCE).unwrap().candidates, base.candidates, "bound {bound}");
    }
}

#[test]
fn ledger_is_consistent_for_even_weights() {
    for weight in DominantWeight::all_up_to(14).into_iter().filter(|x| x.size() % 2 == 0) {
        let report = weight_ledger_report(weight).unwrap();
        assert_eq!(report.terms.len(), 7, "{weight}");
        for t in &report.terms {
            if t.space == "D11" {
                assert_eq!(t.twist, -1);
            }
            if !t.weights.is_empty() || t.space != "A2" {
                assert!(!t.citation.is_empty(), "{weight}: {} uncited", t.term);
            }
        }
        for m in &report.maps {
            if m.status != MapStatus::Zero && m.status != MapStatus::Undetermined {
                let x = m.shared_weight.expect("nontrivial map shares a weight");
                assert!(report.terms[m.source].weights.iter().any(|e| e.w == x && e.dim > 0));
                assert!(report.terms[m.target].weights.iter().any(|e| e.w == x && e.dim > 0));
            }
        }
    }
}

#[test]
fn ledger_examples() {
    let r = weight_ledger_report(w(2, 2)).unwrap();
    assert_eq!(r.terms[3].note.as_deref(), Some("no cusp form of weight 8"));
    assert_eq!(r.maps[0].status, MapStatus::Zero);
    assert!(r.terms[1].weights.iter().any(|e| e.w == 6 && e.dim == 1));

    let r = weight_ledger_report(w(3, 1)).unwrap();
    let h1: Vec<(i64, u64)> = r.terms[5].weights.iter().map(|e| (e.w, e.dim)).collect();
    assert_eq!(h1, vec![(7, 0), (10, 1)]);

    let r = weight_ledger_report(w(5, 3)).unwrap();
    assert!(r.terms[6].weights.iter().any(|e| e.w == 14 && e.dim == 1));
    assert_eq!(r.maps[1].status, MapStatus::NontrivialOnTateSummand);
    assert_eq!(r.maps[1].shared_weight, Some(14));

    assert_eq!(weight_ledger_report(w(2, 1)), Err(Error::OddParity(3)));
    let json = serde_json::to_value(weight_ledger_report(w(4, 4)).unwrap()).unwrap();
    assert!(json["terms"][0]["citation"][0]["source"].as_str().is_some_and(|s| !s.is_empty()));
}

#[test]
fn uncited_fact_fails_the_report() {
    let text = include_str!("../data/facts.toml");
    let start = text.find(&format!("key = \"{}\"", keys::A2_H2)).unwrap();
    let source_at = start + text[start..].find("source = ").unwrap();
    let line_end = source_at + text[source_at..].find('\n').unwrap();
    let stripped = format!("{}source = \"\"{}", &text[..source_at], &text[line_end..]);
    let table = FactsTable::parse(&stripped).unwrap();
    assert_eq!(weight_ledger_report_with(w(2, 2), &table), Err(Error::UncitedFact(keys::A2_H2.into())));
    assert!(weight_ledger_report_with(w(2, 1), &table).is_err());
    assert!(weight_ledger_report_with(w(2, 2), FactsTable::builtin()).is_ok());
}

#[test]
fn theorem_a_end_to_end() {
    let t = theorem_a(DEFAULT_SWEEP, true, TOLERANCE).unwrap();
    assert_eq!(t.generator, "V_{2+2}(3)");
    assert_eq!(t.generator_hodge_weight, -2);
    assert_eq!(t.other_generators, 0);
    assert_eq!(t.candidate_pairs.len(), 11);
    assert_eq!(t.degree_range, (3, 7));
    assert!(t.stable_beyond_14);
}

proptest! {
    #[test]
    fn twist_algebra(a in 0i64..=20, b in 0i64..=20, m in -30i64..=30, n in -30i64..=30) {
        let weight = DominantWeight::new(a.max(b), a.min(b)).unwrap();
        let v = TateTwisted::irrep(weight, m);
        prop_assert_eq!(v.hodge_weight(), a + b - 2 * m);
        prop_assert_eq!(v.twisted(n).twisted(-n), v);
        prop_assert_eq!(v.twisted(n).twisted(m), v.twisted(n + m));
        prop_assert_eq!(TateTwisted::tate(m).hodge_weight(), -2 * m);
    }
}
