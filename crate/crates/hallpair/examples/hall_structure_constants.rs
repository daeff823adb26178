//! Structure constants of the Hall algebra and of the alternating/Hermitian
//! Hall modules: symbolic polynomials in q, cross-checked against submodule
//! counts at small primes.
//!
//! Run with: cargo run --example hall_structure_constants

use hallpair::exactalg::Rat;
use hallpair::hallconst::{bruteforce_constant, symbolic_constants, Kind};
use hallpair::partitions::{partitions_of_weight, Partition};

fn main() {
    let mu = Partition::new(vec![1]);
    let nu_for = |kind: Kind| match kind {
        Kind::Classical => Partition::new(vec![1]),
        _ => Partition::new(vec![1]),
    };

    for kind in [Kind::Classical, Kind::Alternating, Kind::Hermitian] {
        let nu = nu_for(kind);
        let table = symbolic_constants(kind, &mu, &nu, 8).unwrap();
        println!("{kind:?}: u_{mu} · u_{nu} expands as");
        for (lambda, poly) in &table.entries {
            println!("    {poly} · u_{lambda}");
        }

        let primes: &[u64] = if kind == Kind::Hermitian { &[3, 5] } else { &[2, 3] };
        let w = kind.target_weight(&mu, &nu);
        for &p in primes {
            for lambda in partitions_of_weight(w, None, None) {
                let brute = bruteforce_constant(kind, &mu, &nu, &lambda, p, 20000).unwrap();
                let sym = table
                    .entry(&lambda)
                    .eval(&Rat::from_integer(p.into()))
                    .unwrap();
                assert_eq!(sym, Rat::from_integer(brute.into()));
                println!("    λ={lambda} at q={p}: symbolic {sym} = brute {brute}");
            }
        }
        println!();
    }
}
