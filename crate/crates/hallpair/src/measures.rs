//! The three u-probability measures on partitions, their automorphism-count
//! formulas, Hom-moment formulas, and sampling.
//!
//! Each mass has two closed forms that must agree exactly: the Aut-based
//! form q^{−u|λ|}·(#M)^{?}/#Aut^{kind}(M_λ) and the Hall-Littlewood form
//! P_λ(geometric tail)·Q_λ(geometric tail). The common infinite product
//! normalizer telescopes out of the comparison, so equality is checked in
//! exact rational arithmetic; the normalizer itself is truncated numerically
//! with an explicit error bound.

use crate::exactalg::{pochhammer_rat, rat_pow, LaurentRational, Rat};
use crate::partitions::{partitions_of_weight, Partition};
use crate::symfunc::{principal, rat_to_f64, two_tail_spec, SkewKind};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("Aut-based and HL forms disagree at λ={lambda}: {aut} vs {hl}")]
    FormMismatch {
        lambda: Partition,
        aut: String,
        hl: String,
    },
    #[error("truncated support leaves {leftover} mass, more than the tolerance {tol}")]
    InsufficientMass { leftover: f64, tol: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MKind {
    NoPairing,
    Alternating,
    Hermitian,
}

impl MKind {
    pub fn parse(s: &str) -> Option<MKind> {
        match s {
            "nopairing" | "classical" | "none" => Some(MKind::NoPairing),
            "alternating" | "alt" => Some(MKind::Alternating),
            "hermitian" | "her" => Some(MKind::Hermitian),
            _ => None,
        }
    }
}

/// A u-measure configuration: kind, the integer u ≥ 0, numeric q > 1, the
/// truncation box (max part, max length), and the tail tolerance.
#[derive(Clone, Debug)]
pub struct UMeasureSpec {
    pub kind: MKind,
    pub u: u32,
    pub q: Rat,
    pub max_part: u32,
    pub max_length: u32,
    pub tol: f64,
}

/// #Aut as a rational function of formal q:
/// classical q^{2n(λ)+|λ|}·Π(q^{−1};q^{−1})_{m_i},
/// alternating q^{4n(λ)+3|λ|}·Π(q^{−2};q^{−2})_{m_i},
/// Hermitian q^{|λ|+2n(λ)}·Π(−q^{−1};−q^{−1})_{m_i}.
pub fn aut_formula(kind: MKind, lambda: &Partition) -> LaurentRational {
    let w = lambda.weight() as i64;
    let n = lambda.n_lambda() as i64;
    let (lead, a) = match kind {
        MKind::NoPairing => (2 * n + w, LaurentRational::param_pow(-1)),
        MKind::Alternating => (4 * n + 3 * w, LaurentRational::param_pow(-2)),
        MKind::Hermitian => (w + 2 * n, LaurentRational::param_pow(-1).neg()),
    };
    let mut acc = LaurentRational::param_pow(lead);
    for (_, m) in lambda.multiplicities() {
        acc = acc.mul(&crate::exactalg::pochhammer(&a, &a, m));
    }
    acc
}

/// Numeric #Aut at a rational q.
pub fn aut_eval(kind: MKind, lambda: &Partition, q: &Rat) -> Rat {
    let w = lambda.weight() as i64;
    let n = lambda.n_lambda() as i64;
    let (lead, a) = match kind {
        MKind::NoPairing => (2 * n + w, q.recip()),
        MKind::Alternating => (4 * n + 3 * w, rat_pow(q, -2)),
        MKind::Hermitian => (w + 2 * n, -q.recip()),
    };
    let mut acc = rat_pow(q, lead);
    for (_, m) in lambda.multiplicities() {
        acc *= pochhammer_rat(&a, &a, m);
    }
    acc
}

/// The finite (λ-dependent) part of the mass in the Aut-based form; the
/// full mass is this times the kind's infinite product.
pub fn mass_finite(kind: MKind, u: u32, q: &Rat, lambda: &Partition) -> Rat {
    let w = lambda.weight() as i64;
    let aut = aut_eval(kind, lambda, q);
    match kind {
        MKind::NoPairing | MKind::Hermitian => rat_pow(q, -(u as i64) * w) / aut,
        MKind::Alternating => rat_pow(q, (2 - 2 * (u as i64)) * w) / aut,
    }
}

/// The same finite part routed through the Hall-Littlewood principal
/// specializations P_λ(u1, u1·τ, …; τ)·Q_λ(1, τ, …; τ).
pub fn mass_finite_hl(kind: MKind, u: u32, q: &Rat, lambda: &Partition) -> Rat {
    let t = q.recip();
    let (u1, tau) = hl_spec_params(kind, u, &t);
    let u1 = LaurentRational::constant(u1);
    let tau = LaurentRational::constant(tau);
    let p = principal(SkewKind::P, lambda, &u1, &tau);
    let q_ = principal(SkewKind::Q, lambda, &LaurentRational::one(), &tau);
    p.mul(&q_).as_constant().expect("numeric inputs")
}

/// (first value, ratio) of the P-side geometric specialization per kind.
fn hl_spec_params(kind: MKind, u: u32, t: &Rat) -> (Rat, Rat) {
    match kind {
        MKind::NoPairing => (rat_pow(t, 1 + u as i64), t.clone()),
        MKind::Alternating => (rat_pow(t, 1 + 2 * u as i64), t * t),
        MKind::Hermitian => (rat_pow(t, 1 + u as i64), -t.clone()),
    }
}

/// Truncated infinite-product normalizer with an error bound:
/// Π_{j≥1}(1−q^{−u−j}) / Π_{j≥1}(1−q^{−2u−2j+1}) / Π_{j≥1}(1−(−1)^{j−1}q^{−u−j}).
pub fn normalization(kind: MKind, u: u32, q: &Rat, tol: f64) -> (Rat, f64) {
    let t = q.recip();
    let t_abs = rat_to_f64(&t.abs());
    let mut acc = Rat::one();
    let mut j = 1u32;
    loop {
        let factor_term: Rat = match kind {
            MKind::NoPairing => rat_pow(&t, (u + j) as i64),
            MKind::Alternating => rat_pow(&t, (2 * u + 2 * j - 1) as i64),
            MKind::Hermitian => {
                let v = rat_pow(&t, (u + j) as i64);
                if j % 2 == 1 {
                    v
                } else {
                    -v
                }
            }
        };
        let mag = rat_to_f64(&factor_term.abs());
        if mag < tol * (1.0 - t_abs) * 0.1 {
            // |Π_{j'>J}(1−x_{j'}) − 1| ≤ 2·Σ|x_{j'}| for small factors
            let bound = 2.0 * mag / (1.0 - t_abs).max(1e-12);
            return (acc, bound);
        }
        acc *= Rat::one() - factor_term;
        j += 1;
        if j > 100_000 {
            return (acc, f64::INFINITY);
        }
    }
}

/// A mass evaluated both ways, with the truncated normalizer applied.
#[derive(Clone, Debug)]
pub struct UProb {
    pub lambda: Partition,
    pub finite_aut: Rat,
    pub finite_hl: Rat,
    pub mass: Rat,
    pub norm_bound: f64,
}

/// Compute the mass of λ in both closed forms and insist they agree exactly.
pub fn u_prob(spec: &UMeasureSpec, lambda: &Partition) -> Result<UProb, MeasureError> {
    let finite_aut = mass_finite(spec.kind, spec.u, &spec.q, lambda);
    let finite_hl = mass_finite_hl(spec.kind, spec.u, &spec.q, lambda);
    if finite_aut != finite_hl {
        return Err(MeasureError::FormMismatch {
            lambda: lambda.clone(),
            aut: finite_aut.to_string(),
            hl: finite_hl.to_string(),
        });
    }
    let (z, zbound) = normalization(spec.kind, spec.u, &spec.q, spec.tol);
    let mass = &finite_aut * &z;
    let norm_bound = rat_to_f64(&finite_aut) * zbound;
    Ok(UProb {
        lambda: lambda.clone(),
        finite_aut,
        finite_hl,
        mass,
        norm_bound,
    })
}

/// Truncated measure over the (max_part × max_length) box, enumerated by
/// weight. Stops early once the cumulative mass reaches 1 − tol, or when
/// weight slices become negligible relative to the tolerance.
#[derive(Clone, Debug)]
pub struct MeasureTable {
    pub rows: Vec<(Partition, Rat)>,
    pub mass: Rat,
    pub reached_target: bool,
    pub max_weight_scanned: u32,
}

pub fn measure_table(spec: &UMeasureSpec) -> MeasureTable {
    let (z, _) = normalization(spec.kind, spec.u, &spec.q, (spec.tol * 1e-3).max(1e-15));
    let target = 1.0 - spec.tol;
    let box_max_weight = spec.max_part.saturating_mul(spec.max_length);
    let mut rows = Vec::new();
    let mut mass = Rat::zero();
    let mut w = 0u32;
    let mut reached = false;
    while w <= box_max_weight {
        let slice = partitions_of_weight(w, Some(spec.max_part), Some(spec.max_length));
        let mut slice_mass = Rat::zero();
        for lambda in slice {
            let m = mass_finite(spec.kind, spec.u, &spec.q, &lambda) * &z;
            slice_mass += &m;
            rows.push((lambda, m));
        }
        mass += &slice_mass;
        if rat_to_f64(&mass) >= target {
            reached = true;
            break;
        }
        // geometric decay: once a slice is far below the tolerance the rest
        // of the box cannot close the gap
        if w >= 10 && rat_to_f64(&slice_mass) < spec.tol * 1e-4 {
            break;
        }
        w += 1;
    }
    MeasureTable {
        rows,
        mass,
        reached_target: reached,
        max_weight_scanned: w,
    }
}

/// Rigorous bracketing of the full box mass: `lower` sums box slices up to
/// the scanned weight; `upper` adds everything the unconstrained measure
/// still allows beyond what was scanned anywhere.
pub struct MassBracket {
    pub lower: Rat,
    pub upper: Rat,
    pub scanned_to: u32,
}

pub fn box_mass_bracket(spec: &UMeasureSpec, scan_cap: u32) -> MassBracket {
    let (z, _) = normalization(spec.kind, spec.u, &spec.q, 1e-12);
    let target = 1.0 - spec.tol;
    let mut lower = Rat::zero();
    let mut total_all = Rat::zero();
    let mut w = 0u32;
    while w <= scan_cap {
        for lambda in partitions_of_weight(w, None, None) {
            let m = mass_finite(spec.kind, spec.u, &spec.q, &lambda) * &z;
            if lambda.part(1) <= spec.max_part && lambda.len() as u32 <= spec.max_length {
                lower += &m;
            }
            total_all += &m;
        }
        let upper = &lower + (Rat::one() - &total_all).max(Rat::zero());
        if rat_to_f64(&lower) >= target || rat_to_f64(&upper) < target {
            return MassBracket {
                lower,
                upper,
                scanned_to: w,
            };
        }
        w += 1;
    }
    let upper = &lower + (Rat::one() - &total_all).max(Rat::zero());
    MassBracket {
        lower,
        upper,
        scanned_to: scan_cap,
    }
}

/// #Hom(M_λ, M_ν) for a random module of the given kind:
/// q^{Σλ'ν'} / q^{2Σλ'ν'} / (q²)^{Σλ'ν'}.
pub fn hom_count(kind: MKind, lambda: &Partition, nu: &Partition, q: &Rat) -> Rat {
    let cd = lambda.conj_dot(nu) as i64;
    match kind {
        MKind::NoPairing => rat_pow(q, cd),
        MKind::Alternating | MKind::Hermitian => rat_pow(q, 2 * cd),
    }
}

/// Exact closed form of E[#Hom(M, M_ν)] as a ratio of Hall-Littlewood
/// specializations on unions of two geometric tails.
pub fn hom_moment_closed(kind: MKind, u: u32, nu: &Partition, q: &Rat) -> Rat {
    let t = q.recip();
    let one = LaurentRational::one();
    let (target, u1, tau) = match kind {
        MKind::NoPairing => (nu.clone(), rat_pow(&t, u as i64), t.clone()),
        MKind::Alternating => (nu.clone(), rat_pow(&t, 2 * u as i64 - 1), &t * &t),
        MKind::Hermitian => (
            nu.double_interleave(),
            -rat_pow(&t, u as i64),
            -t.clone(),
        ),
    };
    let u1 = LaurentRational::constant(u1);
    let tau_lr = LaurentRational::constant(tau);
    let num = two_tail_spec(&target, &u1, &one, &tau_lr);
    let den = principal(SkewKind::P, &target, &one, &tau_lr);
    num.div(&den).as_constant().expect("numeric inputs")
}

/// Truncated empirical moment Σ_λ mass(λ)·#Hom(M_λ, M_ν) over a measure
/// table, with the unassigned mass reported alongside.
pub fn hom_moment_empirical(
    kind: MKind,
    nu: &Partition,
    q: &Rat,
    table: &MeasureTable,
) -> (Rat, f64) {
    let mut acc = Rat::zero();
    for (lambda, m) in &table.rows {
        acc += m * hom_count(kind, lambda, nu, q);
    }
    let unassigned = 1.0 - rat_to_f64(&table.mass);
    (acc, unassigned)
}

/// I.i.d. draws by inverse CDF over the table's deterministic order.
pub fn sample(
    table: &MeasureTable,
    tol: f64,
    seed: u64,
    count: usize,
) -> Result<Vec<Partition>, MeasureError> {
    let leftover = 1.0 - rat_to_f64(&table.mass);
    if leftover > tol {
        return Err(MeasureError::InsufficientMass { leftover, tol });
    }
    let cums: Vec<f64> = {
        let mut acc = 0.0;
        table
            .rows
            .iter()
            .map(|(_, m)| {
                acc += rat_to_f64(m);
                acc
            })
            .collect()
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let x: f64 = rng.gen();
        let idx = cums.partition_point(|&c| c < x).min(table.rows.len() - 1);
        out.push(table.rows[idx].0.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int};
    use crate::modlat::{count_paired_automorphisms, AutKind};
    use crate::partitions::iterate;
    use crate::partitions::Bounds;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn aut_formula_examples() {
        // classical (1): q−1
        let f = aut_formula(MKind::NoPairing, &part(&[1]));
        assert_eq!(f.eval(&rat_int(3)).unwrap(), rat_int(2));
        // alternating (1): q³−q
        let f = aut_formula(MKind::Alternating, &part(&[1]));
        assert_eq!(f.eval(&rat_int(2)).unwrap(), rat_int(6));
        // hermitian (1): q+1
        let f = aut_formula(MKind::Hermitian, &part(&[1]));
        assert_eq!(f.eval(&rat_int(3)).unwrap(), rat_int(4));
    }

    #[test]
    fn aut_formula_matches_bruteforce() {
        let shapes = [part(&[1]), part(&[2]), part(&[1, 1])];
        for lambda in &shapes {
            for p in [2u64, 3] {
                let f = aut_eval(MKind::NoPairing, lambda, &rat_int(p as i64));
                let b = count_paired_automorphisms(AutKind::Classical, p, lambda, 4096).unwrap();
                assert_eq!(f, rat_int(b as i64), "classical λ={lambda} p={p}");
                let f = aut_eval(MKind::Alternating, lambda, &rat_int(p as i64));
                let b = count_paired_automorphisms(AutKind::Alternating, p, lambda, 4096).unwrap();
                assert_eq!(f, rat_int(b as i64), "alternating λ={lambda} p={p}");
            }
            for p in [3u64] {
                let f = aut_eval(MKind::Hermitian, lambda, &rat_int(p as i64));
                let b = count_paired_automorphisms(AutKind::Hermitian, p, lambda, 4096).unwrap();
                assert_eq!(f, rat_int(b as i64), "hermitian λ={lambda} p={p}");
            }
        }
    }

    #[test]
    fn two_forms_agree_small_grid() {
        for kind in [MKind::NoPairing, MKind::Alternating, MKind::Hermitian] {
            let qs: &[i64] = match kind {
                MKind::Hermitian => &[3, 5],
                _ => &[2, 3],
            };
            for &qv in qs {
                for u in 0..=1u32 {
                    for lambda in iterate(Bounds::weight(4)) {
                        let a = mass_finite(kind, u, &rat_int(qv), &lambda);
                        let h = mass_finite_hl(kind, u, &rat_int(qv), &lambda);
                        assert_eq!(a, h, "{kind:?} q={qv} u={u} λ={lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn u_prob_examples() {
        // nopairing, u=0, λ=∅: mass = Π_{j≥1}(1−q^{−j})
        let spec = UMeasureSpec {
            kind: MKind::NoPairing,
            u: 0,
            q: rat_int(3),
            max_part: 14,
            max_length: 14,
            tol: 1e-9,
        };
        let p = u_prob(&spec, &part(&[])).unwrap();
        assert!(p.finite_aut.is_one());
        let z = rat_to_f64(&p.mass);
        let mut expect = 1.0;
        for j in 1..60 {
            expect *= 1.0 - 3f64.powi(-j);
        }
        assert!((z - expect).abs() < 1e-9);

        // alternating, u=0, λ=(1), q=2: finite part = #M/#Aut^A = 4/6
        let spec = UMeasureSpec {
            kind: MKind::Alternating,
            u: 0,
            q: rat_int(2),
            max_part: 14,
            max_length: 14,
            tol: 1e-9,
        };
        let p = u_prob(&spec, &part(&[1])).unwrap();
        assert_eq!(p.finite_aut, rat(2, 3));

        // hermitian, u=0, λ=(1), q=3: finite part = q^{−1}/(1+q^{−1}) = 1/4
        let spec = UMeasureSpec {
            kind: MKind::Hermitian,
            u: 0,
            q: rat_int(3),
            max_part: 14,
            max_length: 14,
            tol: 1e-9,
        };
        let p = u_prob(&spec, &part(&[1])).unwrap();
        assert_eq!(p.finite_aut, rat(1, 4));
    }

    #[test]
    fn hom_count_examples() {
        for kind in [MKind::NoPairing, MKind::Alternating, MKind::Hermitian] {
            assert!(hom_count(kind, &part(&[]), &part(&[2, 1]), &rat_int(7)).is_one());
        }
        assert_eq!(
            hom_count(MKind::NoPairing, &part(&[2, 1]), &part(&[1, 1]), &rat_int(3)),
            rat_int(81)
        );
        assert_eq!(
            hom_count(MKind::Hermitian, &part(&[1]), &part(&[1]), &rat_int(3)),
            rat_int(9)
        );
    }

    #[test]
    fn hom_moment_closed_examples() {
        // Cohen-Lenstra Hom moment of a cyclic target at u=0 is exactly 2
        for qv in [2i64, 3, 5] {
            assert_eq!(
                hom_moment_closed(MKind::NoPairing, 0, &part(&[1]), &rat_int(qv)),
                rat_int(2)
            );
        }
        // u=1: 1 + q^{−1}
        assert_eq!(
            hom_moment_closed(MKind::NoPairing, 1, &part(&[1]), &rat_int(3)),
            rat_int(1) + rat(1, 3)
        );
        // alternating u=0: 1 + q
        for qv in [2i64, 3] {
            assert_eq!(
                hom_moment_closed(MKind::Alternating, 0, &part(&[1]), &rat_int(qv)),
                rat_int(1 + qv)
            );
        }
        // u → ∞ surrogate: the measure degenerates to the trivial module
        let m = hom_moment_closed(MKind::NoPairing, 30, &part(&[2, 1]), &rat_int(3));
        assert!((rat_to_f64(&m) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn empirical_matches_closed() {
        let spec = UMeasureSpec {
            kind: MKind::NoPairing,
            u: 0,
            q: rat_int(3),
            max_part: 30,
            max_length: 30,
            tol: 1e-9,
        };
        let table = measure_table(&spec);
        assert!(table.reached_target);
        let (emp, unassigned) = hom_moment_empirical(MKind::NoPairing, &part(&[1]), &spec.q, &table);
        assert!(unassigned < 1e-9);
        assert!((rat_to_f64(&emp) - 2.0).abs() < 1e-6);

        // alternating at q=2: the closed moment is 1+q = 3
        let spec = UMeasureSpec {
            kind: MKind::Alternating,
            u: 0,
            q: rat_int(2),
            max_part: 40,
            max_length: 40,
            tol: 1e-10,
        };
        let table = measure_table(&spec);
        let (emp, _) = hom_moment_empirical(MKind::Alternating, &part(&[1]), &spec.q, &table);
        assert!((rat_to_f64(&emp) - 3.0).abs() < 1e-5);

        // hermitian at q=3 against the closed form
        let spec = UMeasureSpec {
            kind: MKind::Hermitian,
            u: 0,
            q: rat_int(3),
            max_part: 30,
            max_length: 30,
            tol: 1e-9,
        };
        let table = measure_table(&spec);
        let closed = hom_moment_closed(MKind::Hermitian, 0, &part(&[1]), &spec.q);
        let (emp, _) = hom_moment_empirical(MKind::Hermitian, &part(&[1]), &spec.q, &table);
        assert!((rat_to_f64(&emp) - rat_to_f64(&closed)).abs() < 1e-5);
    }

    #[test]
    fn sampling_is_deterministic_and_consistent() {
        let spec = UMeasureSpec {
            kind: MKind::NoPairing,
            u: 0,
            q: rat_int(3),
            max_part: 30,
            max_length: 30,
            tol: 1e-6,
        };
        let table = measure_table(&spec);
        let a = sample(&table, spec.tol, 42, 200).unwrap();
        let b = sample(&table, spec.tol, 42, 200).unwrap();
        assert_eq!(a, b);

        // empirical frequency of the empty partition within 3σ
        let n = 10_000usize;
        let draws = sample(&table, spec.tol, 7, n).unwrap();
        let freq = draws.iter().filter(|p| p.is_empty()).count() as f64 / n as f64;
        let z = rat_to_f64(&u_prob(&spec, &part(&[])).unwrap().mass);
        let sigma = (z * (1.0 - z) / n as f64).sqrt();
        assert!(
            (freq - z).abs() < 3.0 * sigma,
            "freq {freq} vs mass {z} (σ = {sigma})"
        );
    }

    #[test]
    fn degenerate_truncation_samples_empty() {
        let spec = UMeasureSpec {
            kind: MKind::NoPairing,
            u: 0,
            q: rat_int(3),
            max_part: 0,
            max_length: 0,
            tol: 0.5, // the empty partition carries ≈ 0.56 at q=3
        };
        let table = measure_table(&spec);
        assert_eq!(table.rows.len(), 1);
        let draws = sample(&table, spec.tol, 1, 50).unwrap();
        assert!(draws.iter().all(|p| p.is_empty()));
    }

    #[test]
    fn insufficient_mass_is_reported() {
        let spec = UMeasureSpec {
            kind: MKind::NoPairing,
            u: 0,
            q: rat_int(3),
            max_part: 1,
            max_length: 1,
            tol: 1e-6,
        };
        let table = measure_table(&spec);
        assert!(matches!(
            sample(&table, spec.tol, 1, 10),
            Err(MeasureError::InsufficientMass { .. })
        ));
    }
}
