//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see every line.
//! Two checks (6b and 10) pin truncation/tolerance pairs that are
//! numerically unattainable as stated; they fail with a certificate of the
//! discrepancy and are kept red deliberately — see the companion content
//! checks which verify the same mathematics at adequate truncation.

use hallpair::cli::suites::{run_suite, SuiteOptions};
use hallpair::exactalg::{rat, rat_int, LaurentRational, Rat};
use hallpair::identities::check_prop13;
use hallpair::partitions::{iterate, Bounds, Partition};
use hallpair::symfunc::{
    distinct_arrangements, hl_p, hl_p_by_definition, rat_to_f64, skew, MPoly, SkewKind, SymPoly,
};
use serde_json::Value;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] {}: {} — {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
}

fn suite(id: &str, opts: SuiteOptions) -> (usize, usize, Vec<Value>) {
    let outcome = run_suite(id, &opts).expect("suite runs");
    (outcome.passed, outcome.failed, outcome.records)
}

fn failing(records: &[Value]) -> Vec<String> {
    records
        .iter()
        .filter(|r| r.get("pass").and_then(Value::as_bool) == Some(false))
        .map(|r| r.to_string())
        .collect()
}

#[test]
fn criterion_01_classical_hall_isomorphism() {
    let (passed, failed, records) = suite(
        "classical-hall",
        SuiteOptions {
            tmax: Some(4),
            primes: Some(vec![2, 3]),
            ..Default::default()
        },
    );
    report(
        "criterion 1 (classical Hall isomorphism, |mu|+|nu| <= 4, p in {2,3})",
        failed == 0,
        &format!("{passed} exact matches symbolic-vs-brute"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

#[test]
fn criterion_02_alternating_hall_module() {
    let (passed, failed, records) = suite(
        "thm1.1-alt",
        SuiteOptions {
            tmax: Some(3),
            primes: Some(vec![2, 3]),
            ..Default::default()
        },
    );
    report(
        "criterion 2 (alternating Hall module, |mu|+|nu| <= 3, p in {2,3})",
        failed == 0,
        &format!("{passed} exact matches; all entries integer polynomials in q"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

#[test]
fn criterion_03_hermitian_hall_module() {
    let (passed, failed, records) = suite(
        "thm1.1-her",
        SuiteOptions {
            tmax: Some(3),
            primes: Some(vec![3, 5]),
            size_bound: Some(20000),
            ..Default::default()
        },
    );
    report(
        "criterion 3 (Hermitian Hall module, 2|mu|+|nu| <= 3, p in {3,5})",
        failed == 0,
        &format!("{passed} exact matches; all entries integer polynomials in q"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

#[test]
fn criterion_04_sum_of_skew_lemma() {
    let (_, _, records) = suite(
        "lemma5.3",
        SuiteOptions {
            tmax: Some(6),
            ..Default::default()
        },
    );
    let skew_rows: Vec<&Value> = records
        .iter()
        .filter(|r| r.get("id").and_then(Value::as_str) == Some("sum-of-skew"))
        .collect();
    let failed = skew_rows
        .iter()
        .filter(|r| r.get("pass").and_then(Value::as_bool) != Some(true))
        .count();
    report(
        "criterion 4 (sum-of-skew lemma, |lambda|,|nu| <= 6, 4 t-values)",
        failed == 0,
        &format!("{} exact equalities", skew_rows.len()),
    );
    assert!(skew_rows.len() >= 4 * 18 * 18);
    assert_eq!(failed, 0);
}

#[test]
fn criterion_05_appendix_identities() {
    let (passed, failed, records) = suite(
        "appendixA",
        SuiteOptions {
            tmax: Some(6),
            ..Default::default()
        },
    );
    report(
        "criterion 5 (q-binomial lemma grid and conjugate version)",
        failed == 0,
        &format!("{passed} exact equalities"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

fn thm51_records() -> Vec<Value> {
    let (_, _, records) = suite(
        "thm5.1",
        SuiteOptions {
            tmax: Some(6),
            trunc: Some(14),
            tol: Some(1e-6),
            ..Default::default()
        },
    );
    records
}

#[test]
fn criterion_06a_u_probability_two_forms() {
    let records = thm51_records();
    let rows: Vec<&Value> = records
        .iter()
        .filter(|r| r.get("id").and_then(Value::as_str) == Some("u-prob-two-forms"))
        .collect();
    let failed = rows
        .iter()
        .filter(|r| r.get("pass").and_then(Value::as_bool) != Some(true))
        .count();
    report(
        "criterion 6a (Aut-based and HL forms agree exactly, |lambda| <= 6, u in {0,1,2})",
        failed == 0,
        &format!("{} exact two-form agreements", rows.len()),
    );
    assert_eq!(failed, 0);
}

#[test]
fn criterion_06b_truncated_mass_at_l14() {
    let records = thm51_records();
    let rows: Vec<&Value> = records
        .iter()
        .filter(|r| r.get("id").and_then(Value::as_str) == Some("truncated-mass"))
        .collect();
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| r.get("pass").and_then(Value::as_bool) != Some(true))
        .map(|r| {
            format!(
                "{}: box mass in [{:.7}, {:.7}] < 1 - 1e-6",
                r.get("params").and_then(Value::as_str).unwrap_or("?"),
                r.get("lhs").and_then(Value::as_f64).unwrap_or(f64::NAN),
                r.get("mass_upper_bound")
                    .and_then(Value::as_f64)
                    .unwrap_or(f64::NAN),
            )
        })
        .collect();
    report(
        "criterion 6b (truncated masses >= 1 - 1e-6 by L = 14)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("{} mass cells reach the target", rows.len())
        } else {
            format!(
                "{} of {} cells cannot reach the target at any L <= 14; rigorous upper bounds \
                 certify the shortfall: {}",
                failures.len(),
                rows.len(),
                failures.join("; ")
            )
        },
    );
    assert!(failures.is_empty(), "{}", failures.join("; "));
}

#[test]
fn criterion_07_automorphism_counts() {
    let (passed, failed, records) = suite("thm5.4-aut", SuiteOptions::default());
    report(
        "criterion 7 (automorphism formulas vs generator-image brute force)",
        failed == 0,
        &format!("{passed} exact matches across classical/alternating/Hermitian"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

#[test]
fn criterion_08_norm_sphere_counts() {
    let (passed, failed, records) = suite(
        "lemma5.2",
        SuiteOptions {
            tmax: Some(3),
            primes: Some(vec![3]),
            ..Default::default()
        },
    );
    report(
        "criterion 8 (norm-sphere counts, |lambda| <= 3, p = 3)",
        failed == 0,
        &format!("{passed} exact matches with q^(2|lambda|-lambda1)(1-(-q)^-m)"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

#[test]
fn criterion_09_hom_moments() {
    let (passed, failed, records) = suite(
        "thm1.2",
        SuiteOptions {
            tol: Some(1e-5),
            ..Default::default()
        },
    );
    report(
        "criterion 9 (Hom moments: empirical within 1e-5 of closed; E=2 and E=1+q exact)",
        failed == 0,
        &format!("{passed} comparisons"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

#[test]
fn criterion_10_hl_measure_expectation_at_l14() {
    let (_, failed, records) = suite(
        "prop1.3",
        SuiteOptions {
            trunc: Some(14),
            tol: Some(1e-5),
            ..Default::default()
        },
    );
    let failures = failing(&records);
    report(
        "criterion 10 (HL-measure expectation, 1e-5 at truncation weight 14)",
        failed == 0,
        &if failures.is_empty() {
            "all cells within tolerance".to_string()
        } else {
            format!(
                "{} of {} cells off by exactly the truncation tail (reported per row); the \
                 geometric-row tail at weight 14 is 3*2^-15 = 9.2e-5 > 1e-5, so the stated \
                 pairing is unattainable: {}",
                failures.len(),
                records.len(),
                failures.join("; ")
            )
        },
    );
    assert_eq!(failed, 0, "{}", failures.join("; "));
}

#[test]
fn criterion_10_supplement_identity_holds_at_adequate_truncation() {
    // same cells, truncation deep enough that the tail is far below 1e-7
    let t = rat(1, 3);
    let lists: Vec<Vec<Rat>> = vec![vec![rat(1, 2)], vec![rat(1, 2), rat(1, 4)]];
    let nus = [
        Partition::new(vec![1]),
        Partition::new(vec![2]),
        Partition::new(vec![1, 1]),
    ];
    let mut all = true;
    for a in &lists {
        for nu in &nus {
            let c = check_prop13(a, &t, nu, 32, 1e-7).expect("convergent");
            all &= c.pass;
        }
    }
    report(
        "criterion 10 supplement (same identity at truncation weight 32, 1e-7)",
        all,
        "all six cells agree",
    );
    assert!(all);
}

#[test]
fn criterion_11a_definition_vs_branching() {
    let mut checked = 0;
    for lambda in iterate(Bounds::weight(5)) {
        for n in lambda.len().max(1)..=5 {
            let branching = hl_p(&lambda, n, &LaurentRational::param()).unwrap();
            let definition = hl_p_by_definition(&lambda, n).unwrap();
            assert_eq!(branching, definition, "λ={lambda} n={n}");
            checked += 1;
        }
    }
    report(
        "criterion 11a (HL definition vs branching, |lambda| <= 5, n <= 5, symbolic t)",
        true,
        &format!("{checked} symbolic equalities"),
    );
}

#[test]
fn criterion_11b_skew_cauchy_numeric() {
    let (passed, failed, records) = suite(
        "skew-cauchy",
        SuiteOptions {
            trunc: Some(12),
            tol: Some(1e-9),
            ..Default::default()
        },
    );
    report(
        "criterion 11b (skew Cauchy identity to 1e-9 on the stated instance)",
        failed == 0,
        &format!("{passed} instances"),
    );
    assert_eq!(failed, 0, "failing rows: {:?}", failing(&records));
}

#[test]
fn criterion_11c_stability() {
    let t = LaurentRational::param();
    let mut checked = 0;
    for lambda in iterate(Bounds::weight(5)) {
        for n in lambda.len().max(1)..=4 {
            let wide = hl_p(&lambda, n + 1, &t).unwrap();
            let narrow = hl_p(&lambda, n, &t).unwrap();
            assert_eq!(wide.restrict_vars(n), narrow, "λ={lambda} n={n}");
            checked += 1;
        }
    }
    report(
        "criterion 11c (stability P(x_1..x_n, 0) = P(x_1..x_n))",
        true,
        &format!("{checked} instances"),
    );
}

#[test]
fn criterion_11d_skew_consistency() {
    // Σ_μ P_{λ/μ}(x-block)·P_μ(y-block) reassembles P_λ, via raw monomials
    let t = LaurentRational::param();
    let mut checked = 0;
    for lambda in iterate(Bounds::weight(4)) {
        for k in 1..=2usize {
            for n in lambda.len().max(1)..=4 {
                if lambda.len() > k + n {
                    continue;
                }
                let parent = hl_p(&lambda, k + n, &t).unwrap().expand();
                let mut sum = MPoly::zero(k + n);
                for w in 0..=lambda.weight() {
                    for mu in hallpair::partitions::partitions_of_weight(w, None, None) {
                        if mu.len() > n {
                            continue;
                        }
                        let sk = skew(SkewKind::P, &lambda, &mu, k, &t);
                        if sk.is_zero() {
                            continue;
                        }
                        let base = hl_p(&mu, n, &t).unwrap();
                        accumulate_split_product(&mut sum, &sk, &base, k, n);
                    }
                }
                assert_eq!(sum, parent, "λ={lambda} k={k} n={n}");
                checked += 1;
            }
        }
    }
    report(
        "criterion 11d (skew consistency, |lambda| <= 4, k <= 2, n <= 4)",
        true,
        &format!("{checked} reassemblies"),
    );
}

fn accumulate_split_product(sum: &mut MPoly, sk: &SymPoly, base: &SymPoly, k: usize, n: usize) {
    for (ka, ca) in sk.terms() {
        for alpha in distinct_arrangements(ka, k) {
            for (kb, cb) in base.terms() {
                for beta in distinct_arrangements(kb, n) {
                    let mut e = alpha.clone();
                    e.extend_from_slice(&beta);
                    let c = ca.mul(cb);
                    assert!(c.is_laurent_poly());
                    sum.add_term(e, c.num());
                }
            }
        }
    }
}

#[test]
fn criterion_09_exact_values_detail() {
    // the two pinned exact moments, directly from the closed-form path
    use hallpair::measures::{hom_moment_closed, MKind};
    let e = hom_moment_closed(MKind::NoPairing, 0, &Partition::new(vec![1]), &rat_int(3));
    assert_eq!(e, rat_int(2));
    let e = hom_moment_closed(MKind::Alternating, 0, &Partition::new(vec![1]), &rat_int(3));
    assert_eq!(e, rat_int(4));
    report(
        "criterion 9 detail (E = 2 and E = 1+q reproduced exactly)",
        true,
        "closed-form path",
    );
}

#[test]
fn report_tail_bounds_are_small() {
    // sanity on the truncated-mass numerics: at q = 3 every kind reaches
    // the target comfortably inside the box
    let records = thm51_records();
    for r in &records {
        if r.get("id").and_then(Value::as_str) == Some("truncated-mass") {
            let params = r.get("params").and_then(Value::as_str).unwrap_or("");
            if params.contains("q=3") || params.contains("q=5") {
                assert_eq!(
                    r.get("pass").and_then(Value::as_bool),
                    Some(true),
                    "unexpected mass failure: {r}"
                );
            }
        }
    }
    let _ = rat_to_f64(&rat(1, 3));
}
