//! Exhaustive submodule lattices of finite modules with pairings: types,
//! quotient types, perps, isotropy, and the paired counting predicate.
//!
//! Run with: cargo run --example submodule_lattices

use hallpair::basering::Ring;
use hallpair::modlat::{
    enumerate_submodules, module_type, paired_scan, quotient_type_pair, FiniteModule, PairKind,
    PairedModule,
};
use hallpair::partitions::Partition;
use std::collections::BTreeMap;

fn main() {
    // plain module lattice: Z/9 ⊕ Z/3
    let lambda = Partition::new(vec![2, 1]);
    let m = FiniteModule::new(Ring::cyclic(3), lambda.clone());
    let subs = enumerate_submodules(&m, 4096).unwrap();
    println!(
        "module of type {lambda} over Z/3^k: {} elements, {} submodules",
        m.size(),
        subs.len()
    );
    let mut by_type: BTreeMap<Partition, usize> = BTreeMap::new();
    for sub in &subs {
        *by_type
            .entry(module_type(&m, &sub.elems).unwrap())
            .or_insert(0) += 1;
    }
    for (typ, count) in &by_type {
        println!("    {count} submodule(s) of type {typ}");
    }

    // a symplectic module: perps and isotropy
    println!();
    let pm = PairedModule::alternating(3, Partition::new(vec![1]));
    let subs = enumerate_submodules(&pm.module, 4096).unwrap();
    println!(
        "alternating module of type (1) at p=3: underlying (Z/3)², {} submodules",
        subs.len()
    );
    for sub in &subs {
        let perp = pm.perp(sub);
        let isotropic = sub.elems.iter().all(|e| perp.binary_search(e).is_ok());
        println!(
            "    |H| = {}, |H^⊥| = {}, H isotropic: {isotropic}",
            sub.size(),
            perp.len(),
        );
        assert_eq!(sub.size() * perp.len() as u64, pm.module.size());
    }

    // the paired counting predicate: quotient type μ, perp isotropic,
    // paired quotient type ν
    println!();
    let lambda = Partition::new(vec![1, 1]);
    let rows = paired_scan(PairKind::Hermitian, 3, &lambda, 4096).unwrap();
    println!("hermitian module of type {lambda} at p=3:");
    let mut counts: BTreeMap<(Partition, Partition), u64> = BTreeMap::new();
    for row in &rows {
        if let Some(paired) = &row.paired {
            *counts
                .entry((row.qtype.clone(), paired.clone()))
                .or_insert(0) += 1;
        }
    }
    for ((mu, nu), count) in &counts {
        println!("    G^her(mu={mu}, nu={nu}) = {count}");
    }

    // quotient types via the exact log-size ladder
    println!();
    let m = FiniteModule::new(Ring::cyclic(2), Partition::new(vec![2, 2]));
    let subs = enumerate_submodules(&m, 4096).unwrap();
    let all: Vec<u32> = (0..m.size() as u32).collect();
    let example = &subs[subs.len() / 2];
    println!(
        "inside Z/4 ⊕ Z/4: a submodule of type {} with quotient type {}",
        module_type(&m, &example.elems).unwrap(),
        quotient_type_pair(&m, &all, &example.elems).unwrap()
    );
}
