//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock time
//! against its budget. Runs without the libtest harness so the lines always print.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use genus2_core::branching::restrict_wreath;
use genus2_core::char_ring::{decompose_sp4, is_weyl_invariant, sp4_irrep_character, weyl_group, DominantWeight, IrrepDecomposition};
use genus2_core::gysin::{weight_ledger_report, MapStatus};
use genus2_core::lie_structure::{free_lie_graded, mobius};
use genus2_core::modular::*;
use genus2_core::nilpotent::{ce_cohomology, gl2_character, kostant_cohomology, sl2_module, siegel_module, Parabolic};
use num_complex::Complex64;
use serde_json::Value;

/// Tolerances, pinned.
const FE_RESIDUAL: f64 = 1e-9;
const PERIOD_RELATIVE: f64 = 1e-8;
const L_TOLERANCE: f64 = DEFAULT_TOLERANCE;

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn w(a: i64, b: i64) -> DominantWeight {
    DominantWeight::new(a, b).unwrap()
}

fn theorem_a_json() -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_genus2"))
        .args(["theorem-a", "--max-weight", "30"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn generator_reproduction() -> Outcome {
    let v = theorem_a_json()?;
    let r = &v["result"];
    check(r["generator"] == "V_{2+2}(3)", || format!("generator {}", r["generator"]))?;
    check(r["other_generators"] == 0, || format!("other generators {}", r["other_generators"]))?;
    check(r["sweep_bound"] == 30, || "sweep bound".into())?;
    check(r["generator_hodge_weight"] == -2, || "Hodge weight".into())
}

fn relation_bound_reproduction() -> Outcome {
    let v = theorem_a_json()?;
    let r = &v["result"];
    let pairs: BTreeSet<(u64, u64)> = r["candidate_pairs"]
        .as_array()
        .ok_or("no candidate list")?
        .iter()
        .map(|p| (p[0].as_u64().unwrap_or(u64::MAX), p[1].as_u64().unwrap_or(u64::MAX)))
        .collect();
    let mut expected = BTreeSet::new();
    for n in [2u64, 4, 6, 10] {
        for b in 0..=n / 2 {
            if n - b > b {
                expected.insert((n - b, b));
            }
        }
    }
    check(expected.len() == 11 && pairs == expected, || format!("pairs {pairs:?}"))?;
    check(r["candidate_pairs"].as_array().map(Vec::len) == Some(11), || "duplicate pairs".into())?;
    let degrees: BTreeSet<u64> = r["candidates"].as_array().ok_or("no candidates")?.iter().filter_map(|c| c["lcs_degree"].as_u64()).collect();
    check(degrees == (3..=7).collect(), || format!("degrees {degrees:?}"))?;
    check(r["degree_range"] == serde_json::json!([3, 7]), || format!("range {}", r["degree_range"]))
}

fn branching_single_copy() -> Outcome {
    for l in 1..=3 {
        let r = restrict_wreath(w(2 * l, 2 * l)).map_err(|e| e.to_string())?;
        check(r.plus(0) == 1 && r.minus(0) == 0, || format!("({0},{0}): U0+ {1}, U0- {2}", 2 * l, r.plus(0), r.minus(0)))?;
    }
    let pairs = [(1, 0), (2, 0), (3, 1), (4, 0), (4, 2), (5, 3), (6, 2), (7, 1), (7, 3), (6, 4)];
    for (a, b) in pairs {
        let r = restrict_wreath(w(a, b)).map_err(|e| e.to_string())?;
        check(r.off((a - b) as u32, 0) == 1, || format!("({a},{b}): U_{{{},0}} occurs {} times", a - b, r.off((a - b) as u32, 0)))?;
    }
    Ok(())
}

fn kostant_matches_ce() -> Outcome {
    for weight in DominantWeight::all_up_to(10) {
        let ce = ce_cohomology(&siegel_module(weight), false);
        let (a, b) = (weight.a(), weight.b());
        for l in 0..=3 {
            let terms = kostant_cohomology(Parabolic::Siegel, weight, l).map_err(|e| e.to_string())?;
            check(terms.len() == 1, || format!("{weight}, l = {l}: {} Kostant terms", terms.len()))?;
            check(ce.by_degree[l] == gl2_character(terms[0].highest_weight), || format!("{weight}, l = {l}: CE and Kostant differ"))?;
            let label = if l == 0 || l == 3 { a - b } else { a + b + 2 };
            check(terms[0].sl2_label == Some(label), || format!("{weight}, l = {l}: label {:?}", terms[0].sl2_label))?;
        }
    }
    Ok(())
}

fn nb_closed_form() -> Outcome {
    for m in 0..=14u32 {
        let r = ce_cohomology(&sl2_module(m), true);
        check(r.by_degree[0] == BTreeMap::from([(vec![m as i32], 1)]), || format!("m = {m}: H^0"))?;
        check(r.by_degree[1] == BTreeMap::from([(vec![-(m as i32) - 2], 1)]), || format!("m = {m}: H^1"))?;
        let power = |v: &str| match m {
            0 => "1".to_string(),
            1 => v.to_string(),
            _ => format!("{v}^{m}"),
        };
        check(r.representatives[0][0].terms == vec![(vec![], power("X"), "1".to_string())], || format!("m = {m}: H^0 class"))?;
        check(r.representatives[1][0].terms == vec![(vec![0], power("Y"), "1".to_string())], || format!("m = {m}: H^1 class"))?;
    }
    Ok(())
}

fn modular_dimensions() -> Outcome {
    for k in (0..=40).step_by(2) {
        let (formula, basis) = (dim_cusp_forms(k as i64) as usize, cusp_dimension_from_basis(k));
        check(formula == basis, || format!("k = {k}: {formula} vs {basis}"))?;
    }
    check(dim_cusp_forms(8) == 0 && dim_cusp_forms(12) == 1 && dim_cusp_forms(14) == 0, || "s8, s12, s14".into())
}

fn l_value_certificates() -> Outcome {
    let series = LSeries::new(&delta(DEFAULT_PRECISION)).map_err(|e| e.to_string())?;
    for s in 1..=11 {
        let (residual, _) = series.functional_equation_residual(f64::from(s), L_TOLERANCE).map_err(|e| e.to_string())?;
        check(residual < FE_RESIDUAL, || format!("s = {s}: residual {residual:e}"))?;
    }
    for s in [8.0, 10.0] {
        let l = series.l_value(s, L_TOLERANCE).map_err(|e| e.to_string())?;
        check(l.value.norm() > 10.0 * l.error_bound, || format!("L(Δ,{s}) = {} ± {:e}", l.value, l.error_bound))?;
    }
    let long = LSeries::new(&delta(120)).map_err(|e| e.to_string())?;
    let direct = long.l_value(11.0, L_TOLERANCE).map_err(|e| e.to_string())?;
    let product = long.euler_product(11.0, 100).map_err(|e| e.to_string())?;
    let gap = (direct.value - product.value).norm();
    check(gap <= direct.error_bound + product.error_bound, || format!("Euler product gap {gap:e}"))
}

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// `i^{n+1} ∫_0^∞ f(iy) y^n dy`, with `[0, 1]` folded onto `[1, ∞)` by `y -> 1/y`.
fn period_by_quadrature(a: &[f64], k: u32, n: u32) -> Complex64 {
    let eps = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let f = |y: f64| a.iter().enumerate().skip(1).map(|(m, c)| c * (-2.0 * PI * m as f64 * y).exp()).sum::<f64>();
    let nodes = gauss_legendre(20);
    let (lo, hi, panels) = (1.0, 17.0, 64);
    let h = (hi - lo) / f64::from(panels);
    let mut total = 0.0;
    for p in 0..panels {
        let (a0, b0) = (lo + f64::from(p) * h, lo + f64::from(p + 1) * h);
        for (x, wt) in &nodes {
            let y = 0.5 * (b0 - a0) * x + 0.5 * (a0 + b0);
            total += 0.5 * (b0 - a0) * wt * f(y) * (y.powi(n as i32) + eps * y.powi((k - 2 - n) as i32));
        }
    }
    Complex64::i().powu(n + 1) * total
}

fn period_identity() -> Outcome {
    let f = delta(DEFAULT_PRECISION);
    let a: Vec<f64> = f.coefficients().iter().map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)).collect();
    for n in [0, 2, 4] {
        let via_l = period(&f, n, L_TOLERANCE).map_err(|e| e.to_string())?;
        let direct = period_by_quadrature(&a, 12, n);
        let rel = (via_l.value - direct).norm() / direct.norm();
        check(rel < PERIOD_RELATIVE, || format!("n = {n}: relative gap {rel:e}"))?;
    }
    Ok(())
}

fn property_suites() -> Outcome {
    // Weyl invariance and peeling of every irrep through a+b = 12.
    for weight in DominantWeight::all_up_to(12) {
        let c = sp4_irrep_character(weight);
        for (g, _) in weyl_group() {
            check(c.map_exponents(g) == c, || format!("{weight} not Weyl invariant"))?;
        }
        let d = decompose_sp4(&c).map_err(|e| e.to_string())?;
        check(d.as_map() == &BTreeMap::from([(weight, 1)]), || format!("{weight} peels to {d}"))?;
    }
    // Peeling round trip on sums of pairs of irreps.
    let small = DominantWeight::all_up_to(5);
    for (i, x) in small.iter().enumerate() {
        for y in &small[i..] {
            let m = IrrepDecomposition::from_map(BTreeMap::from([(*x, 1)])).merge(&IrrepDecomposition::from_map(BTreeMap::from([(*y, 2)])));
            let back = decompose_sp4(&m.character()).map_err(|e| e.to_string())?;
            check(back == m, || format!("round trip {x} + 2 {y}"))?;
        }
    }
    // Witt dimensions on the 14-dimensional generator.
    let generator = sp4_irrep_character(w(2, 2));
    for n in 1..=7u32 {
        let expected: i128 = (1..=n).filter(|d| n % d == 0).map(|d| i128::from(mobius(d)) * 14i128.pow(n / d)).sum::<i128>() / i128::from(n);
        let piece = free_lie_graded(&generator, n).map_err(|e| e.to_string())?;
        check(piece.dimension() == expected, || format!("degree {n}: {} vs {expected}", piece.dimension()))?;
        check(is_weyl_invariant(&piece.character), || format!("degree {n} not Weyl invariant"))?;
    }
    // Hecke multiplicativity of τ.
    let tau = ramanujan_tau(10_000);
    check(hecke_multiplicativity_violation(&tau).is_none(), || "τ is not multiplicative".into())
}

fn ledger_consistency() -> Outcome {
    for weight in DominantWeight::all_up_to(14).into_iter().filter(|x| x.size() % 2 == 0) {
        let r = weight_ledger_report(weight).map_err(|e| format!("{weight}: {e}"))?;
        for t in r.terms.iter().filter(|t| t.space == "D11") {
            check(t.twist == -1, || format!("{weight}: {} untwisted", t.term))?;
        }
        for m in &r.maps {
            if matches!(m.status, MapStatus::Injective | MapStatus::NontrivialOnTateSummand) {
                let x = m.shared_weight.ok_or_else(|| format!("{weight}: {} has no shared weight", m.name))?;
                let present = |i: usize| r.terms[i].weights.iter().any(|e| e.w == x && e.dim > 0);
                check(present(m.source) && present(m.target), || format!("{weight}: {} weight {x} mismatch", m.name))?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("generator reproduction", Duration::from_secs(10), generator_reproduction),
        ("relation bound reproduction", Duration::from_secs(10), relation_bound_reproduction),
        ("branching single-copy claims", Duration::from_secs(30), branching_single_copy),
        ("Kostant agrees with Chevalley-Eilenberg", Duration::from_secs(60), kostant_matches_ce),
        ("n_B closed form", Duration::from_secs(60), nb_closed_form),
        ("modular dimensions", Duration::from_secs(60), modular_dimensions),
        ("L-value certificates", Duration::from_secs(30), l_value_certificates),
        ("period identity", Duration::from_secs(60), period_identity),
        ("property suites", Duration::from_secs(120), property_suites),
        ("weight-ledger consistency", Duration::from_secs(60), ledger_consistency),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| check(elapsed <= *budget, || format!("took {elapsed:.2?}, budget {budget:?}")));
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2?} of {budget:?})", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({elapsed:.2?}): {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
