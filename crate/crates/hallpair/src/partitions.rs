//! Integer partitions: the universal index type.
//!
//! Partitions index module types, Hall-Littlewood polynomials, and structure
//! constants, so everything else in the crate routes through this module.
//! Partitions are kept in canonical form (weakly decreasing, no zero parts),
//! which makes equality structural.

use serde::de::Deserializer;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    /// `halve_doubled` was applied to a partition with an odd multiplicity.
    #[error("partition {0} is not of doubled form")]
    NotDoubled(String),
}

/// A partition: finite weakly decreasing sequence of positive integers.
///
/// Serializes as a plain JSON array of parts, e.g. `[2,1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Build from arbitrary parts; sorts decreasingly and strips zeros.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut v: Vec<u32> = parts.into();
        v.retain(|&p| p > 0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The i-th part (1-indexed), zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.0.len() {
            self.0[i - 1]
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |λ| = Σ λ_i.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// n(λ) = Σ (i−1) λ_i = Σ_i C(λ'_i, 2).
    pub fn n_lambda(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// m_k(λ): number of parts equal to k.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p == k).count() as u32
    }

    /// All (k, m_k) pairs with m_k > 0, k decreasing.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Conjugate partition: λ'_k = #{i : λ_i ≥ k}.
    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let max = self.0[0];
        let mut parts = Vec::with_capacity(max as usize);
        for k in 1..=max {
            parts.push(self.0.iter().filter(|&&p| p >= k).count() as u32);
        }
        Partition(parts)
    }

    /// Σ_i λ'_i ν'_i, which also equals Σ_{i,j} min(λ_i, ν_j).
    pub fn conj_dot(&self, other: &Partition) -> u64 {
        let a = self.conjugate();
        let b = other.conjugate();
        a.0.iter()
            .zip(b.0.iter())
            .map(|(&x, &y)| x as u64 * y as u64)
            .sum()
    }

    /// Componentwise containment μ ⊆ λ.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.0.iter()
            .enumerate()
            .all(|(i, &m)| self.part(i + 1) >= m)
    }

    /// True when λ ⊇ μ and λ/μ is a horizontal strip (λ'_i − μ'_i ∈ {0,1}),
    /// equivalently the parts interlace: λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ …
    pub fn horizontal_strip_over(&self, mu: &Partition) -> bool {
        let n = self.0.len().max(mu.0.len());
        for i in 1..=n {
            if self.part(i) < mu.part(i) || mu.part(i) < self.part(i + 1) {
                return false;
            }
        }
        true
    }

    /// (λ1, λ1, λ2, λ2, …): each part twice.
    pub fn double_interleave(&self) -> Partition {
        let mut v = Vec::with_capacity(2 * self.0.len());
        for &p in &self.0 {
            v.push(p);
            v.push(p);
        }
        Partition(v)
    }

    /// Double every part: (2λ1, 2λ2, …). Conjugate of the doubled diagram.
    pub fn double_parts(&self) -> Partition {
        Partition(self.0.iter().map(|&p| 2 * p).collect())
    }

    /// Inverse of [`Partition::double_interleave`]; errors unless every
    /// multiplicity is even.
    pub fn halve_doubled(&self) -> Result<Partition, PartitionError> {
        let mut v = Vec::with_capacity(self.0.len() / 2);
        let mut i = 0;
        while i < self.0.len() {
            if i + 1 >= self.0.len() || self.0[i] != self.0[i + 1] {
                return Err(PartitionError::NotDoubled(self.to_string()));
            }
            v.push(self.0[i]);
            i += 2;
        }
        Ok(Partition(v))
    }

    /// Componentwise minimum of two partitions.
    pub fn min_envelope(&self, other: &Partition) -> Partition {
        let n = self.0.len().min(other.0.len());
        Partition((1..=n).map(|i| self.part(i).min(other.part(i))).collect())
    }

    /// Append a part d at the end; caller guarantees d ≤ last part.
    pub(crate) fn push_part(&self, d: u32) -> Partition {
        debug_assert!(d > 0 && self.0.last().map_or(true, |&l| l >= d));
        let mut v = self.0.clone();
        v.push(d);
        Partition(v)
    }

}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(deserializer)?;
        Ok(Partition::new(v))
    }
}

/// Parse a comma-separated part list; the empty string is the empty partition.
pub fn parse_partition(s: &str) -> Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
    parts
        .map(Partition::new)
        .map_err(|e| format!("invalid partition {s:?}: {e}"))
}

/// The spec triple (|λ|, n(λ), multiplicities).
pub fn weight_n_mult(lambda: &Partition) -> (u32, u64, Vec<(u32, u32)>) {
    (lambda.weight(), lambda.n_lambda(), lambda.multiplicities())
}

/// Bounds for [`iterate`]; `max_weight` keeps the stream finite.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub max_weight: u32,
    pub max_part: Option<u32>,
    pub max_length: Option<u32>,
}

impl Bounds {
    pub fn weight(max_weight: u32) -> Self {
        Bounds {
            max_weight,
            max_part: None,
            max_length: None,
        }
    }

    pub fn boxed(max_weight: u32, max_part: u32, max_length: u32) -> Self {
        Bounds {
            max_weight,
            max_part: Some(max_part),
            max_length: Some(max_length),
        }
    }
}

/// Partitions of exact weight `w` under the caps, in decreasing
/// lexicographic order (the order used inside each weight grade).
pub fn partitions_of_weight(w: u32, max_part: Option<u32>, max_length: Option<u32>) -> Vec<Partition> {
    let cap = max_part.unwrap_or(w).min(w);
    let len_cap = max_length.map(|l| l as usize).unwrap_or(w as usize);
    let mut out = Vec::new();
    if w == 0 {
        out.push(Partition::empty());
        return out;
    }
    if len_cap == 0 {
        return out;
    }
    let mut stack: Vec<u32> = Vec::new();
    gen_rec(w, cap, len_cap, &mut stack, &mut out);
    out
}

fn gen_rec(rem: u32, cap: u32, len_left: usize, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition(stack.clone()));
        return;
    }
    if len_left == 0 {
        return;
    }
    let hi = cap.min(rem);
    // first part large → small gives lexicographically decreasing output
    for p in (1..=hi).rev() {
        // remaining parts are ≤ p and at most len_left−1 of them
        if (rem - p) as u64 > p as u64 * (len_left as u64 - 1) {
            continue;
        }
        stack.push(p);
        gen_rec(rem - p, p, len_left - 1, stack, out);
        stack.pop();
    }
}

/// Every partition within the bounds exactly once, in graded lexicographic
/// order: weight ascending, then lexicographically decreasing.
pub fn iterate(bounds: Bounds) -> impl Iterator<Item = Partition> {
    let Bounds {
        max_weight,
        max_part,
        max_length,
    } = bounds;
    (0..=max_weight).flat_map(move |w| partitions_of_weight(w, max_part, max_length))
}

/// All μ ⊆ λ (componentwise), in graded lexicographic order.
pub fn sub_partitions(lambda: &Partition) -> Vec<Partition> {
    let mut out: Vec<Partition> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    sub_rec(lambda, 1, u32::MAX, &mut stack, &mut out);
    out.sort_by_key(|p| (p.weight(), std::cmp::Reverse(p.clone())));
    out
}

fn sub_rec(lambda: &Partition, i: usize, prev: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition(stack.iter().copied().filter(|&p| p > 0).collect()));
    if i > lambda.len() {
        return;
    }
    let hi = lambda.part(i).min(prev);
    for p in (1..=hi).rev() {
        stack.push(p);
        sub_rec(lambda, i + 1, p, stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[]).conjugate(), part(&[]));
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
    }

    #[test]
    fn weight_n_mult_examples() {
        assert_eq!(weight_n_mult(&part(&[])), (0, 0, vec![]));
        assert_eq!(weight_n_mult(&part(&[2, 2, 1])), (5, 4, vec![(2, 2), (1, 1)]));
        assert_eq!(weight_n_mult(&part(&[3, 1])), (4, 1, vec![(3, 1), (1, 1)]));
    }

    #[test]
    fn conj_dot_examples() {
        assert_eq!(part(&[]).conj_dot(&part(&[3, 2])), 0);
        assert_eq!(part(&[2, 1]).conj_dot(&part(&[1, 1])), 4);
        assert_eq!(part(&[3]).conj_dot(&part(&[2])), 2);
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(part(&[2, 1]).double_interleave(), part(&[2, 2, 1, 1]));
        assert_eq!(part(&[2, 2, 1, 1]).halve_doubled().unwrap(), part(&[2, 1]));
        assert!(matches!(
            part(&[2, 1]).halve_doubled(),
            Err(PartitionError::NotDoubled(_))
        ));
    }

    #[test]
    fn iterate_examples() {
        let got: Vec<Partition> = iterate(Bounds::weight(2)).collect();
        assert_eq!(got, vec![part(&[]), part(&[1]), part(&[2]), part(&[1, 1])]);

        let got: Vec<Partition> = iterate(Bounds {
            max_weight: 3,
            max_part: None,
            max_length: Some(1),
        })
        .collect();
        assert_eq!(got, vec![part(&[]), part(&[1]), part(&[2]), part(&[3])]);

        // p(0)+…+p(5) = 1+1+2+3+5+7 = 19
        assert_eq!(iterate(Bounds::weight(5)).count(), 19);
    }

    #[test]
    fn sub_partitions_of_21() {
        let subs = sub_partitions(&part(&[2, 1]));
        assert_eq!(
            subs,
            vec![
                part(&[]),
                part(&[1]),
                part(&[2]),
                part(&[1, 1]),
                part(&[2, 1])
            ]
        );
    }

    #[test]
    fn horizontal_strips() {
        assert!(part(&[2]).horizontal_strip_over(&part(&[1])));
        assert!(part(&[2, 1]).horizontal_strip_over(&part(&[1, 1])));
        assert!(!part(&[1, 1]).horizontal_strip_over(&part(&[])));
        assert!(part(&[3, 1]).horizontal_strip_over(&part(&[2, 1])));
        assert!(!part(&[3, 1]).horizontal_strip_over(&part(&[3, 1, 1])));
    }

    #[test]
    fn serde_roundtrip() {
        let p = part(&[2, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,1]");
        let q: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    proptest! {
        #[test]
        fn involution_and_mults(v in proptest::collection::vec(1u32..6, 0..6)) {
            let lam = Partition::new(v);
            prop_assume!(lam.weight() <= 8);
            let conj = lam.conjugate();
            prop_assert_eq!(conj.conjugate(), lam.clone());
            prop_assert_eq!(lam.weight(), conj.weight());
            // m_i(λ) = λ'_i − λ'_{i+1}
            for i in 1..=lam.part(1) {
                prop_assert_eq!(
                    lam.multiplicity(i),
                    conj.part(i as usize) - conj.part(i as usize + 1)
                );
            }
            // n(λ) = Σ C(λ'_i, 2)
            let n2: u64 = conj.parts().iter().map(|&c| (c as u64) * (c as u64 - 1) / 2).sum();
            prop_assert_eq!(lam.n_lambda(), n2);
        }

        #[test]
        fn conj_dot_is_min_sum(
            a in proptest::collection::vec(1u32..5, 0..5),
            b in proptest::collection::vec(1u32..5, 0..5),
        ) {
            let lam = Partition::new(a);
            let nu = Partition::new(b);
            prop_assume!(lam.weight() <= 6 && nu.weight() <= 6);
            let mins: u64 = lam
                .parts()
                .iter()
                .flat_map(|&x| nu.parts().iter().map(move |&y| x.min(y) as u64))
                .sum();
            prop_assert_eq!(lam.conj_dot(&nu), mins);
            prop_assert_eq!(lam.conj_dot(&nu), nu.conj_dot(&lam));
        }

        #[test]
        fn double_halve_roundtrip(v in proptest::collection::vec(1u32..5, 0..4)) {
            let lam = Partition::new(v);
            prop_assume!(lam.weight() <= 6);
            prop_assert_eq!(lam.double_interleave().halve_doubled().unwrap(), lam);
        }
    }
}
