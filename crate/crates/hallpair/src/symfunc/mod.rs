//! Symmetric polynomials and Hall-Littlewood calculus.
//!
//! [`SymPoly`] stores a symmetric polynomial in n variables as a sparse map
//! from monomial-symmetric basis indices (partitions) to exact rational
//! functions of the formal parameter. The Hall-Littlewood P polynomials are
//! produced two independent ways: iterated single-variable branching (the
//! workhorse) and the S_n-symmetrization definition (the oracle,
//! [`hl_p_by_definition`]); skew polynomials likewise come from a normative
//! linear solve against the defining variable-split identity
//! ([`skew`]) and a branching fast path ([`skew_via_branching`]).
//! Principal (geometric) specializations use the closed product formulas.
//!
//! Infinite variable lists are supported only when they are unions of at
//! most two geometric tails (the principal and two-tail closed forms);
//! anything else must go through finite truncations with an explicit
//! reported bound, as in [`cauchy_kernel_geometric`].

mod multipoly;

pub use multipoly::MPoly;

use crate::exactalg::{rat_pow, LaurentPoly, LaurentRational, Rat};
use crate::partitions::{sub_partitions, Partition};
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymFuncError {
    #[error("partition length {0} exceeds the variable count {1}")]
    LengthExceedsVars(usize, usize),
    #[error("Cauchy product diverges: |x_i y_j| >= 1")]
    DivergentProduct,
}

/// Symmetric polynomial in the monomial-symmetric basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, LaurentRational>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), LaurentRational::one());
        SymPoly { nvars, terms }
    }

    /// c·m_λ in `nvars` variables.
    pub fn monomial_sym(nvars: usize, lambda: Partition, c: LaurentRational) -> Self {
        assert!(lambda.len() <= nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(lambda, c);
        }
        SymPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Partition, LaurentRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentRational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(LaurentRational::zero)
    }

    fn insert_add(&mut self, key: Partition, c: &LaurentRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(LaurentRational::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentRational::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentRational) -> Self {
        if c.is_zero() {
            return SymPoly::zero(self.nvars);
        }
        SymPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Product via orbit expansion: the coefficient of m_ρ is the number of
    /// ways (with coefficients) to write the monomial x^ρ as x^α·x^β over
    /// distinct rearrangements α, β of the two keys.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = SymPoly::zero(self.nvars);
        let perms_a: HashMap<&Partition, Vec<Vec<u32>>> = self
            .terms
            .keys()
            .map(|k| (k, distinct_arrangements(k, self.nvars)))
            .collect();
        let perms_b: HashMap<&Partition, Vec<Vec<u32>>> = other
            .terms
            .keys()
            .map(|k| (k, distinct_arrangements(k, self.nvars)))
            .collect();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let c = ca.mul(cb);
                for alpha in &perms_a[ka] {
                    'beta: for beta in &perms_b[kb] {
                        let mut sum = vec![0u32; self.nvars];
                        for i in 0..self.nvars {
                            sum[i] = alpha[i] + beta[i];
                            if i > 0 && sum[i] > sum[i - 1] {
                                continue 'beta;
                            }
                        }
                        out.insert_add(Partition::new(sum.clone()), &c);
                    }
                }
            }
        }
        out
    }

    /// Substitute x_i ↦ x_i²: coefficientwise m_λ(x²) = m_{2λ}(x).
    pub fn square_variables(&self) -> Self {
        SymPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.double_parts(), c.clone()))
                .collect(),
        }
    }

    /// Fold 2n variables pairwise: (x_1, x_2, …, x_{2n}) ↦
    /// (y_1, y_1·w, y_2, y_2·w, …). The result is symmetric in the y's.
    pub fn pair_substitute(&self, w: &LaurentRational) -> Self {
        assert!(self.nvars % 2 == 0);
        let n = self.nvars / 2;
        let mut out = SymPoly::zero(n);
        for (k, c) in &self.terms {
            for alpha in distinct_arrangements(k, self.nvars) {
                let mut e = vec![0u32; n];
                let mut wpow = 0i64;
                let mut sorted = true;
                for i in 0..n {
                    e[i] = alpha[2 * i] + alpha[2 * i + 1];
                    wpow += alpha[2 * i + 1] as i64;
                    if i > 0 && e[i] > e[i - 1] {
                        sorted = false;
                        break;
                    }
                }
                if !sorted {
                    continue;
                }
                let coeff = c.mul(&w.pow(wpow));
                out.insert_add(Partition::new(e.clone()), &coeff);
            }
        }
        out
    }

    /// Set variables past `n2` to zero.
    pub fn restrict_vars(&self, n2: usize) -> Self {
        assert!(n2 <= self.nvars);
        SymPoly {
            nvars: n2,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() <= n2)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest key in graded lexicographic order (weight first, then lex).
    fn max_key_graded(&self) -> Option<Partition> {
        self.terms
            .keys()
            .max_by_key(|p| (p.weight(), (*p).clone()))
            .cloned()
    }

    /// Exact evaluation: parameter at `t0`, variables at `xs`.
    pub fn eval(&self, t0: &Rat, xs: &[Rat]) -> Rat {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = Rat::zero();
        for (k, c) in &self.terms {
            let cv = c.eval(t0).expect("parameter evaluation hit a pole");
            let mut msum = Rat::zero();
            for alpha in distinct_arrangements(k, self.nvars) {
                let mut prod = Rat::one();
                for (i, &e) in alpha.iter().enumerate() {
                    if e > 0 {
                        prod *= rat_pow(&xs[i], e as i64);
                    }
                }
                msum += prod;
            }
            acc += cv * msum;
        }
        acc
    }

    /// Fully expanded form, for brute-force cross-checks.
    pub fn expand(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (k, c) in &self.terms {
            assert!(
                c.is_laurent_poly(),
                "expansion requires polynomial coefficients"
            );
            for alpha in distinct_arrangements(k, self.nvars) {
                out.add_term(alpha, c.num());
            }
        }
        out
    }
}

impl Serialize for SymPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            partition: &'a Partition,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(p, c)| Term {
                partition: p,
                coeff: c.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("SymPoly", 2)?;
        st.serialize_field("nvars", &self.nvars)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Distinct rearrangements of the parts of `lambda` padded to length `n`.
pub fn distinct_arrangements(lambda: &Partition, n: usize) -> Vec<Vec<u32>> {
    assert!(lambda.len() <= n);
    let mut counts: Vec<(u32, usize)> = vec![(0, n - lambda.len())];
    for (k, m) in lambda.multiplicities() {
        counts.push((k, m as usize));
    }
    counts.retain(|&(_, m)| m > 0);
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    arrange_rec(&mut counts, 0, n, &mut cur, &mut out);
    out
}

fn arrange_rec(
    counts: &mut Vec<(u32, usize)>,
    pos: usize,
    n: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if pos == n {
        out.push(cur.clone());
        return;
    }
    for i in 0..counts.len() {
        if counts[i].1 == 0 {
            continue;
        }
        counts[i].1 -= 1;
        cur[pos] = counts[i].0;
        arrange_rec(counts, pos + 1, n, cur, out);
        counts[i].1 += 1;
    }
}

/// ψ_{λ/μ}(t) = Π_{i: m_i(μ) = m_i(λ)+1} (1 − t^{m_i(μ)}) for horizontal
/// strips; the coefficient in the P branching rule.
pub fn psi_coeff(lambda: &Partition, mu: &Partition, t: &LaurentRational) -> LaurentRational {
    let one = LaurentRational::one();
    let mut acc = LaurentRational::one();
    for (k, m) in mu.multiplicities() {
        if lambda.multiplicity(k) + 1 == m {
            acc = acc.mul(&one.sub(&t.pow(m as i64)));
        }
    }
    acc
}

/// φ_{λ/μ}(t) = Π_{i: m_i(λ) = m_i(μ)+1} (1 − t^{m_i(λ)}); the Q branching
/// coefficient.
pub fn phi_coeff(lambda: &Partition, mu: &Partition, t: &LaurentRational) -> LaurentRational {
    let one = LaurentRational::one();
    let mut acc = LaurentRational::one();
    for (k, m) in lambda.multiplicities() {
        if mu.multiplicity(k) + 1 == m {
            acc = acc.mul(&one.sub(&t.pow(m as i64)));
        }
    }
    acc
}

fn psi_coeff_rat(lambda: &Partition, mu: &Partition, t: &Rat) -> Rat {
    let mut acc = Rat::one();
    for (k, m) in mu.multiplicities() {
        if lambda.multiplicity(k) + 1 == m {
            acc *= Rat::one() - rat_pow(t, m as i64);
        }
    }
    acc
}

fn phi_coeff_rat(lambda: &Partition, mu: &Partition, t: &Rat) -> Rat {
    let mut acc = Rat::one();
    for (k, m) in lambda.multiplicities() {
        if mu.multiplicity(k) + 1 == m {
            acc *= Rat::one() - rat_pow(t, m as i64);
        }
    }
    acc
}

/// All μ ⊆ λ with λ/μ a horizontal strip (parts interlace).
pub fn horizontal_strips_below(lambda: &Partition) -> Vec<Partition> {
    let l = lambda.len();
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(lambda: &Partition, i: usize, l: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i > l {
            out.push(Partition::new(cur.clone()));
            return;
        }
        let hi = lambda.part(i);
        let lo = lambda.part(i + 1);
        for m in lo..=hi {
            cur.push(m);
            rec(lambda, i + 1, l, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 1, l, &mut cur, &mut out);
    out
}

/// Π_i (t;t)_{m_i(λ)}: the scalar with Q_λ = b_λ(t)·P_λ.
pub fn b_factor(lambda: &Partition, t: &LaurentRational) -> LaurentRational {
    let one = LaurentRational::one();
    let mut acc = LaurentRational::one();
    for (_, m) in lambda.multiplicities() {
        let mut tp = t.clone();
        for _ in 0..m {
            acc = acc.mul(&one.sub(&tp));
            tp = tp.mul(t);
        }
    }
    acc
}

/// Shared memo for Hall-Littlewood branching at a fixed parameter value.
struct HlCtx {
    t: LaurentRational,
    memo: HashMap<(Partition, usize), SymPoly>,
}

impl HlCtx {
    fn new(t: &LaurentRational) -> Self {
        HlCtx {
            t: t.clone(),
            memo: HashMap::new(),
        }
    }

    fn hl_p(&mut self, lambda: &Partition, m: usize) -> SymPoly {
        if lambda.len() > m {
            return SymPoly::zero(m);
        }
        if m == 0 {
            return SymPoly::one(0);
        }
        if let Some(p) = self.memo.get(&(lambda.clone(), m)) {
            return p.clone();
        }
        let mut acc = SymPoly::zero(m);
        for mu in horizontal_strips_below(lambda) {
            let d = lambda.weight() - mu.weight();
            let sub = self.hl_p(&mu, m - 1);
            if sub.is_zero() {
                continue;
            }
            let psi = psi_coeff(lambda, &mu, &self.t);
            for (kappa, c) in sub.terms() {
                let coeff = psi.mul(c);
                if d == 0 {
                    acc.insert_add(kappa.clone(), &coeff);
                } else if kappa.len() == m - 1
                    && kappa.parts().last().map_or(true, |&last| last >= d)
                {
                    acc.insert_add(kappa.push_part(d), &coeff);
                }
            }
        }
        self.memo.insert((lambda.clone(), m), acc.clone());
        acc
    }
}

/// Hall-Littlewood P_λ(x_1,…,x_n;t) via iterated branching; monic in x^λ.
pub fn hl_p(lambda: &Partition, n: usize, t: &LaurentRational) -> Result<SymPoly, SymFuncError> {
    if lambda.len() > n {
        return Err(SymFuncError::LengthExceedsVars(lambda.len(), n));
    }
    Ok(HlCtx::new(t).hl_p(lambda, n))
}

/// Q_λ = Π_i (t;t)_{m_i(λ)} · P_λ.
pub fn hl_q(lambda: &Partition, n: usize, t: &LaurentRational) -> Result<SymPoly, SymFuncError> {
    let p = hl_p(lambda, n, t)?;
    Ok(p.scale(&b_factor(lambda, t)))
}

/// Hall-Littlewood P by its definition: antisymmetrize
/// x^λ·Π_{i<j}(x_i − t x_j) over S_n, divide by the Vandermonde determinant,
/// and normalize monic. Independent of the branching route.
pub fn hl_p_by_definition(lambda: &Partition, n: usize) -> Result<SymPoly, SymFuncError> {
    if lambda.len() > n {
        return Err(SymFuncError::LengthExceedsVars(lambda.len(), n));
    }
    let t = LaurentPoly::param();
    let one = LaurentPoly::one();
    // base = x^{λ} · Π_{i<j} (x_i − t·x_j)
    let mut exps = vec![0u32; n];
    for (i, &p) in lambda.parts().iter().enumerate() {
        exps[i] = p;
    }
    let mut base = MPoly::monomial(n, exps, one.clone());
    for i in 0..n {
        for j in (i + 1)..n {
            let mut factor = MPoly::zero(n);
            let mut ei = vec![0u32; n];
            ei[i] = 1;
            factor.add_term(ei, &one);
            let mut ej = vec![0u32; n];
            ej[j] = 1;
            factor.add_term(ej, &t.neg());
            base = base.mul(&factor);
        }
    }
    // N = Σ_σ sgn(σ)·σ(base)
    let mut num = MPoly::zero(n);
    for (sigma, sign) in multipoly::signed_permutations(n) {
        let term = base.permute(&sigma);
        let term = if sign < 0 {
            term.scale(&one.neg())
        } else {
            term
        };
        num = num.add(&term);
    }
    // divide by Δ = Π_{i<j} (x_i − x_j)
    for i in 0..n {
        for j in (i + 1)..n {
            num = num.divide_by_linear(i, j);
        }
    }
    // collect sorted monomials into the m-basis, then normalize monic
    let mut padded = vec![0u32; n];
    for (i, &p) in lambda.parts().iter().enumerate() {
        padded[i] = p;
    }
    let lead = num
        .terms
        .get(&padded)
        .cloned()
        .expect("leading monomial x^lambda missing from symmetrization");
    let lead = LaurentRational::from_poly(lead);
    let mut out = SymPoly::zero(n);
    for (e, c) in &num.terms {
        if e.windows(2).all(|w| w[0] >= w[1]) {
            let key = Partition::new(e.clone());
            let coeff = LaurentRational::from_poly(c.clone()).div(&lead);
            out.insert_add(key, &coeff);
        }
    }
    Ok(out)
}

/// Expansion of a symmetric polynomial in the Hall-Littlewood P basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HLExpansion {
    pub t: LaurentRational,
    pub coeffs: BTreeMap<Partition, LaurentRational>,
}

impl HLExpansion {
    /// Σ coeffs[λ]·P_λ — must reproduce the expanded polynomial.
    pub fn reconstruct(&self, nvars: usize) -> SymPoly {
        let mut ctx = HlCtx::new(&self.t);
        let mut acc = SymPoly::zero(nvars);
        for (k, c) in &self.coeffs {
            acc = acc.add(&ctx.hl_p(k, nvars).scale(c));
        }
        acc
    }
}

/// Exact expansion in the P basis by triangular back-substitution in graded
/// reverse-lexicographic order.
pub fn expand_in_hl(f: &SymPoly, t: &LaurentRational) -> HLExpansion {
    let mut ctx = HlCtx::new(t);
    let mut rest = f.clone();
    let mut coeffs = BTreeMap::new();
    while let Some(key) = rest.max_key_graded() {
        let c = rest.coeff(&key);
        let p = ctx.hl_p(&key, f.nvars());
        rest = rest.sub(&p.scale(&c));
        coeffs.insert(key, c);
    }
    HLExpansion {
        t: t.clone(),
        coeffs,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewKind {
    P,
    Q,
}

/// Skew Hall-Littlewood polynomial in `k` variables by the normative route:
/// expand the parent polynomial over a variable split with n ≥ |λ| fresh
/// variables and solve the defining identity against the Hall-Littlewood
/// basis on the fresh block.
pub fn skew(
    kind: SkewKind,
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    t: &LaurentRational,
) -> SymPoly {
    if !lambda.contains(mu) {
        return SymPoly::zero(k);
    }
    let n = (lambda.weight() as usize).max(lambda.len()).max(1);
    let total = k + n;
    let parent = match kind {
        SkewKind::P => hl_p(lambda, total, t).expect("variable count covers the length"),
        SkewKind::Q => hl_q(lambda, total, t).expect("variable count covers the length"),
    };
    // split each m_ρ(x,y) into Σ m_α(x)·m_β(y)
    let mut table: BTreeMap<Partition, SymPoly> = BTreeMap::new();
    for (rho, c) in parent.terms() {
        for (alpha, beta) in multiset_splits(rho, k, n) {
            let entry = table.entry(beta).or_insert_with(|| SymPoly::zero(k));
            entry.insert_add(alpha, c);
        }
    }
    // triangular solve on the y block
    let mut ctx = HlCtx::new(t);
    loop {
        let beta = match table
            .keys()
            .max_by_key(|p| (p.weight(), (*p).clone()))
            .cloned()
        {
            Some(b) => b,
            None => return SymPoly::zero(k),
        };
        let a = table.remove(&beta).unwrap();
        if a.is_zero() {
            continue;
        }
        // Q_β is not monic in m_β: its leading coefficient is b_β(t)
        let (basis, lead) = match kind {
            SkewKind::P => (ctx.hl_p(&beta, n), LaurentRational::one()),
            SkewKind::Q => {
                let b = b_factor(&beta, t);
                (ctx.hl_p(&beta, n).scale(&b), b)
            }
        };
        let coeff = a.scale(&lead.inv());
        if beta == *mu {
            return coeff;
        }
        for (gamma, b) in basis.terms() {
            if gamma == &beta {
                continue;
            }
            let entry = table
                .entry(gamma.clone())
                .or_insert_with(|| SymPoly::zero(k));
            *entry = entry.sub(&coeff.scale(b));
            if entry.is_zero() {
                table.remove(gamma);
            }
        }
    }
}

/// Skew polynomial by iterated single-variable branching (fast path).
pub fn skew_via_branching(
    kind: SkewKind,
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    t: &LaurentRational,
) -> SymPoly {
    let mut memo: HashMap<(Partition, usize), SymPoly> = HashMap::new();
    skew_branch_rec(kind, lambda, mu, k, t, &mut memo)
}

fn skew_branch_rec(
    kind: SkewKind,
    lambda: &Partition,
    mu: &Partition,
    k: usize,
    t: &LaurentRational,
    memo: &mut HashMap<(Partition, usize), SymPoly>,
) -> SymPoly {
    if !lambda.contains(mu) {
        return SymPoly::zero(k);
    }
    if k == 0 {
        return if lambda == mu {
            SymPoly::one(0)
        } else {
            SymPoly::zero(0)
        };
    }
    if let Some(p) = memo.get(&(lambda.clone(), k)) {
        return p.clone();
    }
    let mut acc = SymPoly::zero(k);
    for kappa in horizontal_strips_below(lambda) {
        if !kappa.contains(mu) {
            continue;
        }
        let d = lambda.weight() - kappa.weight();
        let sub = skew_branch_rec(kind, &kappa, mu, k - 1, t, memo);
        if sub.is_zero() {
            continue;
        }
        let coeff = match kind {
            SkewKind::P => psi_coeff(lambda, &kappa, t),
            SkewKind::Q => phi_coeff(lambda, &kappa, t),
        };
        for (key, c) in sub.terms() {
            let cc = coeff.mul(c);
            if d == 0 {
                acc.insert_add(key.clone(), &cc);
            } else if key.len() == k - 1 && key.parts().last().map_or(true, |&last| last >= d) {
                acc.insert_add(key.push_part(d), &cc);
            }
        }
    }
    memo.insert((lambda.clone(), k), acc.clone());
    acc
}

/// Ways to split the multiset of parts of `rho` into (α to the first block
/// of ≤ k variables, β to the second block of ≤ n variables).
fn multiset_splits(rho: &Partition, k: usize, n: usize) -> Vec<(Partition, Partition)> {
    let mults = rho.multiplicities();
    let mut out = Vec::new();
    let mut choice = vec![0u32; mults.len()];
    fn rec(
        mults: &[(u32, u32)],
        i: usize,
        choice: &mut Vec<u32>,
        k: usize,
        n: usize,
        out: &mut Vec<(Partition, Partition)>,
    ) {
        if i == mults.len() {
            let mut alpha = Vec::new();
            let mut beta = Vec::new();
            for (j, &(val, m)) in mults.iter().enumerate() {
                for _ in 0..choice[j] {
                    alpha.push(val);
                }
                for _ in 0..(m - choice[j]) {
                    beta.push(val);
                }
            }
            if alpha.len() <= k && beta.len() <= n {
                out.push((Partition::new(alpha), Partition::new(beta)));
            }
            return;
        }
        for c in 0..=mults[i].1 {
            choice[i] = c;
            rec(mults, i + 1, choice, k, n, out);
        }
    }
    rec(&mults, 0, &mut choice, k, n, &mut out);
    out
}

/// n(λ/μ) = Σ_i C(λ'_i − μ'_i, 2).
fn n_skew(lambda: &Partition, mu: &Partition) -> u64 {
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    (1..=lc.len())
        .map(|i| {
            let d = (lc.part(i) - mc.part(i)) as u64;
            d * (d.saturating_sub(1)) / 2
        })
        .sum()
}

/// Principal specialization of a skew polynomial on the geometric sequence
/// u, ut, ut², …:
///
/// P: u^{|λ|−|μ|} t^{n(λ/μ)} Π_i (t^{1+λ'_i−μ'_i};t)_{m_i(μ)} / (t;t)_{m_i(λ)}
/// Q: same numerator with denominator (t;t)_{m_i(μ)}.
///
/// Zero when μ ⊄ λ. `u` and `t` may be formal or constant.
pub fn principal_skew(
    kind: SkewKind,
    lambda: &Partition,
    mu: &Partition,
    u: &LaurentRational,
    t: &LaurentRational,
) -> LaurentRational {
    if !lambda.contains(mu) {
        return LaurentRational::zero();
    }
    let one = LaurentRational::one();
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let mut num = LaurentRational::one();
    for (i, m) in mu.multiplicities() {
        let a = t.pow(1 + lc.part(i as usize) as i64 - mc.part(i as usize) as i64);
        let mut aq = a;
        for _ in 0..m {
            num = num.mul(&one.sub(&aq));
            aq = aq.mul(t);
        }
    }
    let den_src = match kind {
        SkewKind::P => lambda,
        SkewKind::Q => mu,
    };
    let mut den = LaurentRational::one();
    for (_, m) in den_src.multiplicities() {
        let mut tq = t.clone();
        for _ in 0..m {
            den = den.mul(&one.sub(&tq));
            tq = tq.mul(t);
        }
    }
    u.pow((lambda.weight() - mu.weight()) as i64)
        .mul(&t.pow(n_skew(lambda, mu) as i64))
        .mul(&num)
        .div(&den)
}

/// Non-skew principal specialization P_λ(u,ut,…;t) or Q_λ(u,ut,…;t).
pub fn principal(kind: SkewKind, lambda: &Partition, u: &LaurentRational, t: &LaurentRational) -> LaurentRational {
    principal_skew(kind, lambda, &Partition::empty(), u, t)
}

/// P_ν on the union of two geometric tails u1·(1,t,t²,…) ∪ u2·(1,t,t²,…),
/// computed exactly as Σ_{μ⊆ν} P_{ν/μ}(u1-tail)·P_μ(u2-tail).
pub fn two_tail_spec(
    nu: &Partition,
    u1: &LaurentRational,
    u2: &LaurentRational,
    t: &LaurentRational,
) -> LaurentRational {
    let mut acc = LaurentRational::zero();
    for mu in sub_partitions(nu) {
        let a = principal_skew(SkewKind::P, nu, &mu, u1, t);
        if a.is_zero() {
            continue;
        }
        let b = principal(SkewKind::P, &mu, u2, t);
        acc = acc.add(&a.mul(&b));
    }
    acc
}

/// Cauchy kernel Π_{i,j} (1 − t x_i y_j)/(1 − x_i y_j) over finite lists.
pub fn cauchy_kernel(rho1: &[Rat], rho2: &[Rat], t: &Rat) -> Result<Rat, SymFuncError> {
    let mut acc = Rat::one();
    for x in rho1 {
        for y in rho2 {
            let xy = x * y;
            if xy.abs() >= Rat::one() {
                return Err(SymFuncError::DivergentProduct);
            }
            acc *= (Rat::one() - t * &xy) / (Rat::one() - &xy);
        }
    }
    Ok(acc)
}

/// Cauchy kernel for two geometric sequences u1·(1,t,…) and u2·(1,t,…),
/// truncated when the log-factor bound drops below tol/10. Returns the
/// truncated value and an error bound for the omitted tail.
pub fn cauchy_kernel_geometric(
    u1: &Rat,
    u2: &Rat,
    t: &Rat,
    tol: f64,
) -> Result<(Rat, f64), SymFuncError> {
    let c = u1 * u2;
    let t_abs = rat_to_f64(&t.abs());
    let c_abs = rat_to_f64(&c.abs());
    if t_abs >= 1.0 || c_abs >= 1.0 {
        return Err(SymFuncError::DivergentProduct);
    }
    let one_minus_t = rat_to_f64(&(Rat::one() - t).abs());
    let mut acc = Rat::one();
    let mut cts = c.clone(); // c·t^s
    let mut s: u32 = 0;
    loop {
        let cts_abs = rat_to_f64(&cts.abs());
        let log_bound = (s as f64 + 1.0) * one_minus_t * cts_abs / (1.0 - cts_abs).max(1e-12);
        if log_bound < tol / 10.0 {
            // all factors s' ≥ s are omitted:
            // Σ (s'+1)·|1−t|·|c|·r^{s'} ≤ |1−t|·|c|·r^s·[(s+1)/(1−r) + r/(1−r)²]
            let r = t_abs;
            let head = one_minus_t * c_abs * r.powi(s as i32) / (1.0 - r).max(1e-12);
            let tail = head * ((s as f64 + 1.0) + r / (1.0 - r).max(1e-12));
            let bound = 2.0 * tail; // slack for exp(·) vs linear
            return Ok((acc, bound));
        }
        let factor = (Rat::one() - t * &cts) / (Rat::one() - &cts);
        let mut fpow = Rat::one();
        for _ in 0..=s {
            fpow *= &factor;
        }
        acc *= fpow;
        cts *= t;
        s += 1;
        if s > 10_000 {
            return Err(SymFuncError::DivergentProduct);
        }
    }
}

/// Approximate conversion for reporting; exact math never routes through
/// here. Shifts oversized numerator/denominator down together so the ratio
/// survives the f64 range.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let bits = num.bits().max(den.bits());
    if bits > 900 {
        let shift = bits - 900;
        num >>= shift;
        den >>= shift;
        if den.is_zero() {
            return if num.is_zero() {
                0.0
            } else if num.sign() == num_bigint::Sign::Minus {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
    }
    num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
}

/// Numeric skew P on a finite variable list, by branching.
pub fn skew_p_eval(lambda: &Partition, mu: &Partition, xs: &[Rat], t: &Rat) -> Rat {
    let mut memo: HashMap<(Partition, usize), Rat> = HashMap::new();
    skew_eval_rec(true, lambda, mu, xs, xs.len(), t, &mut memo)
}

/// Numeric skew Q on a finite variable list.
pub fn skew_q_eval(lambda: &Partition, mu: &Partition, xs: &[Rat], t: &Rat) -> Rat {
    let mut memo: HashMap<(Partition, usize), Rat> = HashMap::new();
    skew_eval_rec(false, lambda, mu, xs, xs.len(), t, &mut memo)
}

/// Numeric P_λ on a finite variable list.
pub fn hl_p_eval(lambda: &Partition, xs: &[Rat], t: &Rat) -> Rat {
    skew_p_eval(lambda, &Partition::empty(), xs, t)
}

fn skew_eval_rec(
    is_p: bool,
    lambda: &Partition,
    mu: &Partition,
    xs: &[Rat],
    m: usize,
    t: &Rat,
    memo: &mut HashMap<(Partition, usize), Rat>,
) -> Rat {
    if !lambda.contains(mu) {
        return Rat::zero();
    }
    if m == 0 {
        return if lambda == mu { Rat::one() } else { Rat::zero() };
    }
    if let Some(v) = memo.get(&(lambda.clone(), m)) {
        return v.clone();
    }
    let mut acc = Rat::zero();
    for kappa in horizontal_strips_below(lambda) {
        if !kappa.contains(mu) {
            continue;
        }
        let d = (lambda.weight() - kappa.weight()) as i64;
        let sub = skew_eval_rec(is_p, &kappa, mu, xs, m - 1, t, memo);
        if sub.is_zero() {
            continue;
        }
        let coeff = if is_p {
            psi_coeff_rat(lambda, &kappa, t)
        } else {
            phi_coeff_rat(lambda, &kappa, t)
        };
        acc += coeff * rat_pow(&xs[m - 1], d) * sub;
    }
    memo.insert((lambda.clone(), m), acc.clone());
    acc
}
