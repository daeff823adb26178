//! Hall-Littlewood polynomials in the monomial-symmetric basis, computed by
//! branching and by the S_n-symmetrization definition, plus basis change.
//!
//! Run with: cargo run --example hl_expansions

use hallpair::exactalg::LaurentRational;
use hallpair::partitions::Partition;
use hallpair::symfunc::{b_factor, expand_in_hl, hl_p, hl_p_by_definition, SymPoly};

fn show(label: &str, poly: &SymPoly) {
    println!("{label}:");
    for (key, coeff) in poly.terms() {
        println!("    m_{key} · {coeff}");
    }
}

fn main() {
    let t = LaurentRational::param();

    for parts in [vec![2u32], vec![1, 1], vec![2, 1], vec![3, 1]] {
        let lambda = Partition::new(parts);
        let n = 3usize;
        let p = hl_p(&lambda, n, &t).unwrap();
        show(&format!("P_{lambda}(x1..x{n}; t)"), &p);

        // the definition route must agree symbolically
        let by_def = hl_p_by_definition(&lambda, n).unwrap();
        assert_eq!(p, by_def);
        println!("    (antisymmetrization route agrees)");

        let q = p.scale(&b_factor(&lambda, &t));
        show(&format!("Q_{lambda}(x1..x{n}; t)"), &q);
        println!();
    }

    // expand an arbitrary symmetric polynomial in the P basis
    let f = SymPoly::monomial_sym(2, Partition::new(vec![2]), LaurentRational::one());
    let expansion = expand_in_hl(&f, &t);
    println!("m_(2) in two variables expands in the P basis as:");
    for (key, coeff) in &expansion.coeffs {
        println!("    {coeff} · P_{key}");
    }
    assert_eq!(expansion.reconstruct(2), f);
    println!("    (reconstruction is exact)");
}
