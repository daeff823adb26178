//! Hom-moments of random modules with pairings: the exact closed forms as
//! ratios of Hall-Littlewood specializations, against truncated empirical
//! sums over the u-measures.
//!
//! Run with: cargo run --example hom_moments

use hallpair::exactalg::rat_int;
use hallpair::measures::{
    hom_moment_closed, hom_moment_empirical, measure_table, MKind, UMeasureSpec,
};
use hallpair::partitions::Partition;
use hallpair::symfunc::rat_to_f64;

fn main() {
    let q = rat_int(3);
    let nus = [
        Partition::new(vec![1]),
        Partition::new(vec![2]),
        Partition::new(vec![1, 1]),
    ];
    for kind in [MKind::NoPairing, MKind::Alternating, MKind::Hermitian] {
        for u in 0..=1u32 {
            let spec = UMeasureSpec {
                kind,
                u,
                q: q.clone(),
                max_part: 40,
                max_length: 40,
                tol: 1e-9,
            };
            let table = measure_table(&spec);
            for nu in &nus {
                let closed = hom_moment_closed(kind, u, nu, &q);
                let (emp, unassigned) = hom_moment_empirical(kind, nu, &q, &table);
                println!(
                    "{kind:?} u={u} ν={nu}: E[#Hom] = {closed} ≈ {:.9} (empirical {:.9}, unassigned mass {:.1e})",
                    rat_to_f64(&closed),
                    rat_to_f64(&emp),
                    unassigned
                );
            }
        }
        println!();
    }

    // the classic values: E = 2 for the Cohen-Lenstra measure and 1+q in
    // the alternating case
    let e = hom_moment_closed(MKind::NoPairing, 0, &Partition::new(vec![1]), &q);
    println!("E[#Hom(M, Z/p)] under the u=0 measure: {e}");
    let e = hom_moment_closed(MKind::Alternating, 0, &Partition::new(vec![1]), &q);
    println!("alternating analogue: {e} = 1 + q");
}
