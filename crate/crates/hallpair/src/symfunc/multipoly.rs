//! Dense-map multivariate polynomials over Laurent-polynomial coefficients.
//!
//! This is the brute-force engine behind the symmetrization route for
//! Hall-Littlewood polynomials: expand the numerator of the defining sum,
//! antisymmetrize over S_n, and divide out the Vandermonde determinant by
//! repeated exact synthetic division. It is also used by tests to check
//! symmetric-polynomial multiplication against fully expanded products.

use crate::exactalg::LaurentPoly;
use std::collections::HashMap;

/// Polynomial in `n` variables, exponent vector → Laurent-poly coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    pub n: usize,
    pub terms: HashMap<Vec<u32>, LaurentPoly>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly {
            n,
            terms: HashMap::new(),
        }
    }

    pub fn monomial(n: usize, exps: Vec<u32>, c: LaurentPoly) -> Self {
        assert_eq!(exps.len(), n);
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { n, terms }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(exps)
            .or_insert_with(LaurentPoly::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            // cheap to look up again; removal keeps the map tight
            let key: Vec<u32> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &c1.mul(c2));
            }
        }
        out
    }

    /// Apply a variable permutation: new exponent at position σ(i) is old at i.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; self.n];
            for (i, &x) in e.iter().enumerate() {
                ne[sigma[i]] = x;
            }
            out.add_term(ne, c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = MPoly::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &v.mul(c));
        }
        out
    }

    /// Exact division by (x_i − x_j); panics if the division is inexact.
    pub fn divide_by_linear(&self, i: usize, j: usize) -> Self {
        let maxdeg = self
            .terms
            .keys()
            .map(|e| e[i])
            .max()
            .unwrap_or(0) as usize;
        // bucket coefficients by the x_i degree, zeroing slot i
        let mut buckets: Vec<HashMap<Vec<u32>, LaurentPoly>> = vec![HashMap::new(); maxdeg + 1];
        for (e, c) in &self.terms {
            let d = e[i] as usize;
            let mut rest = e.clone();
            rest[i] = 0;
            let entry = buckets[d].entry(rest).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(c);
        }
        // synthetic division: q_{d−1} = c_d + x_j·q_d
        let mut out = MPoly::zero(self.n);
        let mut carry: HashMap<Vec<u32>, LaurentPoly> = HashMap::new();
        for d in (1..=maxdeg).rev() {
            let mut q: HashMap<Vec<u32>, LaurentPoly> = buckets[d].clone();
            for (e, c) in &carry {
                let mut ej = e.clone();
                ej[j] += 1;
                let entry = q.entry(ej).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(c);
            }
            q.retain(|_, c| !c.is_zero());
            for (e, c) in &q {
                let mut full = e.clone();
                full[i] = (d - 1) as u32;
                out.add_term(full, c);
            }
            carry = q;
        }
        // remainder c_0 + x_j·q_0 must vanish
        let mut rem = buckets[0].clone();
        for (e, c) in &carry {
            let mut ej = e.clone();
            ej[j] += 1;
            let entry = rem.entry(ej).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(c);
        }
        rem.retain(|_, c| !c.is_zero());
        assert!(rem.is_empty(), "division by (x_{i} - x_{j}) left a remainder");
        out
    }
}

/// All permutations of 0..n with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_rec(n, &mut cur, &mut out);
    out
}

fn heap_rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
    if k == 1 {
        out.push((cur.clone(), perm_sign(cur)));
        return;
    }
    for i in 0..k {
        heap_rec(k - 1, cur, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}
