//! Galois-ring arithmetic: conjugation, norms, unit fibers, and the
//! norm-sphere counts of Hermitian modules.
//!
//! Run with: cargo run --example galois_rings

use hallpair::basering::{make_galois_ring, Ring};
use hallpair::exactalg::{rat_pow, Rat};
use hallpair::modlat::count_norm_sphere;
use hallpair::partitions::Partition;
use std::collections::BTreeMap;

fn main() {
    let g = make_galois_ring(3, 2).unwrap();
    println!("{g}: {} elements, ξ² = {}", g.size(), g.nonresidue());

    let r = Ring::galois(3).unwrap();
    let m = 9u64;
    let x = (2, 5); // 2 + 5ξ mod 9
    let conj = r.conj(m, x);
    println!(
        "x = {}, x* = {}, Nm(x) = x·x* = {}",
        r.format_el(x),
        r.format_el(conj),
        r.norm(m, x)
    );
    println!("v(x) = {}, v(3+3ξ) = {}", r.valuation(2, x), r.valuation(2, (3, 3)));

    // norm fibers over the units: surjective, (q+1)-to-one
    println!();
    for p in [3u64, 5] {
        let r = Ring::galois(p).unwrap();
        let mut fibers: BTreeMap<u64, u32> = BTreeMap::new();
        for x in r.scalars(1) {
            if r.is_unit(x) {
                *fibers.entry(r.norm(p, x)).or_insert(0) += 1;
            }
        }
        println!("GR({p},1) unit norms: {fibers:?} (each fiber has q+1 = {})", p + 1);
    }

    // norm spheres {x : <x,x> = π^{-λ1}} against the closed formula
    println!();
    let p = 3u64;
    let q = Rat::from_integer(p.into());
    for parts in [vec![1u32], vec![2], vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
        let lambda = Partition::new(parts);
        let brute = count_norm_sphere(p, &lambda, 4096).unwrap();
        let m = lambda.multiplicity(lambda.part(1)) as i64;
        let formula = rat_pow(&q, 2 * lambda.weight() as i64 - lambda.part(1) as i64)
            * (Rat::from_integer(1.into()) - rat_pow(&-q.clone(), -m));
        println!("λ = {lambda}: brute {brute}, formula {formula}");
        assert_eq!(formula, Rat::from_integer(brute.into()));
    }
}
