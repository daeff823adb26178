//! Standalone identity checks: the skew-sum lemma (exact), the q-binomial
//! lemma and its conjugate version (exact), the Hall-Littlewood-measure
//! expectation (truncated with reported tail), the skew Cauchy identity,
//! and the subgroup-count series (exact).
//!
//! Run with: cargo run --example identity_checks

use hallpair::exactalg::rat;
use hallpair::identities::{
    check_appendix_f, check_conjugate_identity, check_prop13, check_remark_series,
    check_skew_cauchy, check_sum_of_skew,
};
use hallpair::partitions::Partition;

fn show(c: &hallpair::identities::IdentityCheck) {
    println!(
        "  [{}] {} : lhs {} = rhs {} ({})",
        if c.pass { "ok" } else { "FAIL" },
        c.params,
        c.lhs,
        c.rhs,
        if c.bound == 0.0 {
            "exact".to_string()
        } else {
            format!("|err| = {:.2e} ≤ {:.0e}", c.abs_error, c.bound)
        }
    );
}

fn main() {
    println!("sum-of-skew lemma:");
    show(&check_sum_of_skew(
        &Partition::new(vec![2, 1]),
        &Partition::new(vec![1, 1]),
        &rat(3, 7),
    ));
    show(&check_sum_of_skew(
        &Partition::new(vec![3, 2]),
        &Partition::new(vec![2, 2, 1]),
        &rat(-2, 5),
    ));

    println!("q-binomial lemma and conjugate version:");
    show(&check_appendix_f(1, 2, 1, &rat(1, 2)));
    show(&check_conjugate_identity(
        &Partition::new(vec![2]),
        &Partition::new(vec![2]),
        &rat(2, 5),
    ));

    println!("Hall-Littlewood measure expectation (truncated at weight 32):");
    show(
        &check_prop13(
            &[rat(1, 2), rat(1, 4)],
            &rat(1, 3),
            &Partition::new(vec![1, 1]),
            32,
            1e-7,
        )
        .unwrap(),
    );

    println!("skew Cauchy identity (x = 1/3, y = 1/4, t = 1/5):");
    show(
        &check_skew_cauchy(
            &[rat(1, 3)],
            &[rat(1, 4)],
            &rat(1, 5),
            &Partition::new(vec![1]),
            &Partition::new(vec![1, 1]),
            12,
            1e-9,
        )
        .unwrap(),
    );

    println!("subgroup-count series:");
    show(&check_remark_series(&Partition::new(vec![2, 1]), 1, 2, 4096).unwrap());
}
