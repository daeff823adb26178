//! The three u-probability measures: each mass computed in its Aut-based
//! and Hall-Littlewood closed forms (which must agree exactly), truncated
//! tables, and reproducible sampling.
//!
//! Run with: cargo run --example u_measures

use hallpair::exactalg::rat_int;
use hallpair::measures::{measure_table, sample, u_prob, MKind, UMeasureSpec};
use hallpair::partitions::Partition;
use hallpair::symfunc::rat_to_f64;
use std::collections::BTreeMap;

fn main() {
    for (kind, q) in [
        (MKind::NoPairing, 3i64),
        (MKind::Alternating, 2),
        (MKind::Hermitian, 3),
    ] {
        let spec = UMeasureSpec {
            kind,
            u: 0,
            q: rat_int(q),
            max_part: 20,
            max_length: 20,
            tol: 1e-8,
        };
        println!("{kind:?} u-measure at u=0, q={q}:");
        for parts in [vec![], vec![1u32], vec![2], vec![1, 1]] {
            let lambda = Partition::new(parts);
            let p = u_prob(&spec, &lambda).unwrap();
            assert_eq!(p.finite_aut, p.finite_hl);
            println!(
                "    P({lambda}) = {:.9}   (finite part {}, both closed forms)",
                rat_to_f64(&p.mass),
                p.finite_aut
            );
        }

        let table = measure_table(&spec);
        println!(
            "    truncated table: {} partitions, mass {:.9} (target reached: {})",
            table.rows.len(),
            rat_to_f64(&table.mass),
            table.reached_target
        );

        let draws = sample(&table, spec.tol, 2024, 10_000).unwrap();
        let mut freq: BTreeMap<u32, usize> = BTreeMap::new();
        for d in &draws {
            *freq.entry(d.weight()).or_insert(0) += 1;
        }
        println!("    10k draws by |λ|: {freq:?}");
        println!();
    }
}
