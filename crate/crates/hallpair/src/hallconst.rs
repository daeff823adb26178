//! Structure constants of the Hall algebra and of the alternating/Hermitian
//! Hall modules, computed symbolically on the symmetric-function side and
//! cross-checked against brute-force submodule counts at small primes.
//!
//! All symbolic work happens over one formal parameter s standing for q^{−1};
//! the three settings differ only in the substitution fed to the
//! Hall-Littlewood machinery (t = s, t = s², t = −s) and in the
//! normalization monomials. Final entries are re-expressed in q = s^{−1} and
//! must come out as integer-coefficient polynomials.

use crate::basering::Ring;
use crate::exactalg::{LaurentRational, Rat};
use crate::modlat::{
    classical_scan, count_g_paired_from_scan, paired_scan, ClassicalScanRow, ModLatError,
    PairKind, PairedScanRow,
};
use crate::partitions::{partitions_of_weight, Partition};
use crate::symfunc::{expand_in_hl, hl_p};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HallConstError {
    #[error("weight {0} exceeds the configured bound {1}")]
    BoundExceeded(u32, u32),
    #[error(transparent)]
    ModLat(#[from] ModLatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Classical,
    Alternating,
    Hermitian,
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "classical" => Some(Kind::Classical),
            "alternating" | "alt" => Some(Kind::Alternating),
            "hermitian" | "her" => Some(Kind::Hermitian),
            _ => None,
        }
    }

    /// Weight of the target partitions λ in u_μ·u_ν^{kind}.
    pub fn target_weight(&self, mu: &Partition, nu: &Partition) -> u32 {
        match self {
            Kind::Classical | Kind::Alternating => mu.weight() + nu.weight(),
            Kind::Hermitian => 2 * mu.weight() + nu.weight(),
        }
    }
}

/// Structure-constant table for one product u_μ·u_ν^{kind}: map λ → g(q),
/// a polynomial in q.
#[derive(Clone, Debug)]
pub struct StructureConstantTable {
    pub kind: Kind,
    pub mu: Partition,
    pub nu: Partition,
    pub entries: BTreeMap<Partition, LaurentRational>,
}

impl StructureConstantTable {
    pub fn entry(&self, lambda: &Partition) -> LaurentRational {
        self.entries
            .get(lambda)
            .cloned()
            .unwrap_or_else(LaurentRational::zero)
    }

    /// Every entry must be a polynomial in q with integer coefficients.
    pub fn all_integral(&self) -> bool {
        self.entries.values().all(|e| e.as_integer_poly().is_some())
    }
}

fn param() -> LaurentRational {
    LaurentRational::param()
}

/// Symbolic structure constants through the symmetric-function maps:
///
/// * classical: ψ(u_λ) = q^{−n(λ)}·P_λ(x; q^{−1});
/// * alternating: φ(u_μ) = q^{−n(μ)+|μ|}·P_μ(x_1, x_1 q^{−1}, …; q^{−1}),
///   φ^alt(u_ν) = q^{−2n(ν)}·P_ν(x; q^{−2});
/// * Hermitian: φ(u_μ) = q^{−2n(μ)}·P_μ(x²; q^{−2}),
///   φ^her(u_ν) = (−1)^{n(ν)}·q^{−n(ν)}·P_ν(x; −q^{−1}).
///
/// The product of the two images is expanded in the image basis and the
/// normalizations divided back out.
pub fn symbolic_constants(
    kind: Kind,
    mu: &Partition,
    nu: &Partition,
    weight_bound: u32,
) -> Result<StructureConstantTable, HallConstError> {
    let w = kind.target_weight(mu, nu);
    if w > weight_bound {
        return Err(HallConstError::BoundExceeded(w, weight_bound));
    }
    let n = (w as usize).max(1);
    let s = param();
    let (product, inner) = match kind {
        Kind::Classical => {
            let a = hl_p(mu, n, &s).expect("n covers the weight");
            let b = hl_p(nu, n, &s).expect("n covers the weight");
            (a.mul(&b), s.clone())
        }
        Kind::Alternating => {
            let s2 = s.pow(2);
            let a = hl_p(mu, 2 * n, &s)
                .expect("2n covers the weight")
                .pair_substitute(&s);
            let b = hl_p(nu, n, &s2).expect("n covers the weight");
            (a.mul(&b), s2)
        }
        Kind::Hermitian => {
            let s2 = s.pow(2);
            let neg_s = s.neg();
            let a = hl_p(mu, n, &s2)
                .expect("n covers the weight")
                .square_variables();
            let b = hl_p(nu, n, &neg_s).expect("n covers the weight");
            (a.mul(&b), neg_s)
        }
    };
    let expansion = expand_in_hl(&product, &inner);
    let mut entries = BTreeMap::new();
    for (lambda, coeff) in &expansion.coeffs {
        if coeff.is_zero() {
            continue;
        }
        // normalization monomials in s, then re-express in q = s^{−1}
        let n_mu = mu.n_lambda() as i64;
        let n_nu = nu.n_lambda() as i64;
        let n_la = lambda.n_lambda() as i64;
        let in_s = match kind {
            Kind::Classical => coeff.mul(&LaurentRational::param_pow(n_mu + n_nu - n_la)),
            Kind::Alternating => coeff.mul(&LaurentRational::param_pow(
                n_mu - mu.weight() as i64 + 2 * n_nu - 2 * n_la,
            )),
            Kind::Hermitian => {
                let sign = if (n_nu - n_la).rem_euclid(2) == 1 { -1 } else { 1 };
                coeff
                    .mul(&LaurentRational::param_pow(2 * n_mu + n_nu - n_la))
                    .scale(&Rat::from_integer(sign.into()))
            }
        };
        entries.insert(lambda.clone(), in_s.scale_exponents(-1));
    }
    Ok(StructureConstantTable {
        kind,
        mu: mu.clone(),
        nu: nu.clone(),
        entries,
    })
}

/// Brute-force count of the same constant at the prime p: submodule counts
/// for the classical kind, paired counts otherwise. For the Hermitian kind
/// the polynomial variable q is the residue size of F_0, i.e. q = p.
pub fn bruteforce_constant(
    kind: Kind,
    mu: &Partition,
    nu: &Partition,
    lambda: &Partition,
    p: u64,
    size_bound: u64,
) -> Result<u64, HallConstError> {
    let v = match kind {
        Kind::Classical => {
            crate::modlat::count_g_classical(Ring::cyclic(p), lambda, mu, nu, size_bound)?
        }
        Kind::Alternating => {
            crate::modlat::count_g_paired(PairKind::Alternating, p, lambda, mu, nu, size_bound)?
        }
        Kind::Hermitian => {
            crate::modlat::count_g_paired(PairKind::Hermitian, p, lambda, mu, nu, size_bound)?
        }
    };
    Ok(v)
}

/// One (μ, ν, λ, p) comparison row of a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub kind: Kind,
    pub mu: Partition,
    pub nu: Partition,
    pub lambda: Partition,
    pub prime: u64,
    pub symbolic: String,
    pub symbolic_at_p: String,
    pub brute: u64,
    pub integral: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub kind: Kind,
    pub weight_bound: u32,
    pub primes: Vec<u64>,
    pub rows: Vec<VerifyRow>,
    pub passed: usize,
    pub failed: usize,
}

enum Scan {
    Classical(Vec<ClassicalScanRow>),
    Paired(Vec<PairedScanRow>),
}

impl Scan {
    fn count(&self, mu: &Partition, nu: &Partition) -> u64 {
        match self {
            Scan::Classical(rows) => rows
                .iter()
                .filter(|r| &r.qtype == mu && &r.htype == nu)
                .count() as u64,
            Scan::Paired(rows) => count_g_paired_from_scan(rows, mu, nu),
        }
    }
}

/// Verify every symbolic constant with target weight ≤ `weight_bound`
/// against brute force at each prime; also asserts polynomiality and
/// integrality, and that constants absent from the symbolic table
/// brute-count to zero.
pub fn verify_kind(
    kind: Kind,
    weight_bound: u32,
    primes: &[u64],
    size_bound: u64,
) -> Result<VerifyReport, HallConstError> {
    // all submodule scans first, in parallel over (λ, p)
    let mut lambda_set = Vec::new();
    for w in 0..=weight_bound {
        lambda_set.extend(partitions_of_weight(w, None, None));
    }
    let scan_keys: Vec<(Partition, u64)> = lambda_set
        .iter()
        .flat_map(|l| primes.iter().map(move |&p| (l.clone(), p)))
        .collect();
    let scans: HashMap<(Partition, u64), Scan> = scan_keys
        .into_par_iter()
        .map(|(lambda, p)| {
            let scan = match kind {
                Kind::Classical => {
                    classical_scan(Ring::cyclic(p), &lambda, size_bound).map(Scan::Classical)
                }
                Kind::Alternating => {
                    paired_scan(PairKind::Alternating, p, &lambda, size_bound).map(Scan::Paired)
                }
                Kind::Hermitian => {
                    paired_scan(PairKind::Hermitian, p, &lambda, size_bound).map(Scan::Paired)
                }
            };
            scan.map(|s| ((lambda, p), s))
        })
        .collect::<Result<_, ModLatError>>()?;

    let mut rows = Vec::new();
    for mu in &lambda_set {
        for nu in &lambda_set {
            let w = kind.target_weight(mu, nu);
            if w > weight_bound {
                continue;
            }
            let table = symbolic_constants(kind, mu, nu, weight_bound)?;
            for lambda in partitions_of_weight(w, None, None) {
                let sym = table.entry(&lambda);
                let integral_poly = sym.as_integer_poly();
                for &p in primes {
                    let brute = scans[&(lambda.clone(), p)].count(mu, nu);
                    let at_p = sym
                        .eval(&Rat::from_integer(p.into()))
                        .expect("structure constants are polynomials");
                    let matches = at_p.is_integer()
                        && at_p.to_integer().to_u64().map_or(false, |v| v == brute);
                    rows.push(VerifyRow {
                        kind,
                        mu: mu.clone(),
                        nu: nu.clone(),
                        lambda: lambda.clone(),
                        prime: p,
                        symbolic: sym.to_string(),
                        symbolic_at_p: at_p.to_string(),
                        brute,
                        integral: integral_poly.is_some(),
                        pass: matches && integral_poly.is_some(),
                    });
                }
            }
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    let failed = rows.len() - passed;
    Ok(VerifyReport {
        kind,
        weight_bound,
        primes: primes.to_vec(),
        rows,
        passed,
        failed,
    })
}

/// Hall-module associativity through the symbolic tables: acting by u_{μ1}
/// then u_{μ2} agrees coefficientwise with acting by their Hall product.
/// For the Hermitian kind the Hall algebra lives over the quadratic
/// extension, whose residue size is q², so the classical table is taken at
/// q ↦ q².
pub fn check_module_associativity(
    kind: Kind,
    mu1: &Partition,
    mu2: &Partition,
    nu: &Partition,
) -> Result<bool, HallConstError> {
    let bound = 2 * (mu1.weight() + mu2.weight() + nu.weight()) + 2;
    // u_{μ1}·(u_{μ2}·u_ν)
    let inner = symbolic_constants(kind, mu2, nu, bound)?;
    let mut lhs: BTreeMap<Partition, LaurentRational> = BTreeMap::new();
    for (kappa, c) in &inner.entries {
        let outer = symbolic_constants(kind, mu1, kappa, bound)?;
        for (lambda, d) in &outer.entries {
            let entry = lhs
                .entry(lambda.clone())
                .or_insert_with(LaurentRational::zero);
            *entry = entry.add(&c.mul(d));
        }
    }
    lhs.retain(|_, v| !v.is_zero());
    // (u_{μ1}·u_{μ2})·u_ν with the Hall product expanded classically
    let hall = symbolic_constants(Kind::Classical, mu1, mu2, bound)?;
    let mut rhs: BTreeMap<Partition, LaurentRational> = BTreeMap::new();
    for (rho, g) in &hall.entries {
        let g = match kind {
            Kind::Hermitian => g.scale_exponents(2),
            _ => g.clone(),
        };
        let outer = symbolic_constants(kind, rho, nu, bound)?;
        for (lambda, d) in &outer.entries {
            let entry = rhs
                .entry(lambda.clone())
                .or_insert_with(LaurentRational::zero);
            *entry = entry.add(&g.mul(d));
        }
    }
    rhs.retain(|_, v| !v.is_zero());
    Ok(lhs == rhs)
}

/// Serialization form: {kind, mu, nu, entries: [{lambda, poly_in_q}]}.
#[derive(Serialize)]
pub struct TableJson {
    pub kind: Kind,
    pub mu: Partition,
    pub nu: Partition,
    pub entries: Vec<EntryJson>,
}

#[derive(Serialize)]
pub struct EntryJson {
    pub lambda: Partition,
    pub poly_in_q: Vec<i64>,
}

impl StructureConstantTable {
    pub fn to_json(&self) -> TableJson {
        let entries = self
            .entries
            .iter()
            .map(|(lambda, poly)| EntryJson {
                lambda: lambda.clone(),
                poly_in_q: poly
                    .as_integer_poly()
                    .map(|cs| {
                        cs.iter()
                            .map(|c| c.to_i64().expect("desk-scale coefficients"))
                            .collect()
                    })
                    .unwrap_or_default(),
            })
            .collect();
        TableJson {
            kind: self.kind,
            mu: self.mu.clone(),
            nu: self.nu.clone(),
            entries,
        }
    }
}
