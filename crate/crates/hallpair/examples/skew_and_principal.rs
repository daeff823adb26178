//! Skew Hall-Littlewood polynomials two ways (defining-identity solve vs
//! single-variable branching) and their principal specializations.
//!
//! Run with: cargo run --example skew_and_principal

use hallpair::exactalg::{rat, LaurentRational};
use hallpair::partitions::{sub_partitions, Partition};
use hallpair::symfunc::{
    principal, principal_skew, skew, skew_via_branching, two_tail_spec, SkewKind,
};

fn main() {
    let t = LaurentRational::param();
    let lambda = Partition::new(vec![3, 1]);

    println!("skew polynomials P_{{{lambda}/mu}}(x1,x2; t):");
    for mu in sub_partitions(&lambda) {
        let by_solve = skew(SkewKind::P, &lambda, &mu, 2, &t);
        let by_branch = skew_via_branching(SkewKind::P, &lambda, &mu, 2, &t);
        assert_eq!(by_solve, by_branch);
        if by_solve.is_zero() {
            continue;
        }
        println!("  mu = {mu}:");
        for (key, coeff) in by_solve.terms() {
            println!("      m_{key} · {coeff}");
        }
    }

    println!();
    println!("principal specializations on u, ut, ut², …:");
    let u = LaurentRational::param_pow(5); // a monomial stand-in for u
    for mu in sub_partitions(&lambda) {
        let p = principal_skew(SkewKind::P, &lambda, &mu, &u, &t);
        let q = principal_skew(SkewKind::Q, &lambda, &mu, &u, &t);
        println!("  P_{{{lambda}/{mu}}} = {p}");
        println!("  Q_{{{lambda}/{mu}}} = {q}");
    }

    // Q_λ(u,ut,…;t) collapses to u^{|λ|}·t^{n(λ)}
    let q_closed = principal(SkewKind::Q, &lambda, &u, &t);
    println!();
    println!(
        "Q_{lambda}(u,ut,…;t) = u^{} t^{} = {q_closed}",
        lambda.weight(),
        lambda.n_lambda()
    );

    // a two-tail evaluation: P_ν on u1·(1,t,…) ∪ u2·(1,t,…)
    let nu = Partition::new(vec![1]);
    let one = LaurentRational::one();
    let v = two_tail_spec(&nu, &one, &one, &t);
    println!("P_{nu}(1,t,…,1,t,…;t) = {v}");
    let at = v.eval(&rat(1, 3)).unwrap();
    println!("  at t = 1/3: {at}");
}
