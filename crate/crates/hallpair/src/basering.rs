//! Coefficient rings of desk-scale modules: Z mod p^k and Galois rings
//! (unramified quadratic extensions) with conjugation and norm.
//!
//! A Galois ring element a+bξ with ξ² = c (c the smallest quadratic
//! nonresidue mod p) has conjugate a−bξ; conjugation reduces to the
//! Frobenius on the residue field and the norm x·x* lands in Z mod p^k.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("Galois rings require an odd prime, got p = 2")]
    EvenPrimeUnsupported,
}

/// Element representation shared by both ring kinds: a + bξ, with b = 0
/// identically over cyclic rings.
pub type El = (u64, u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Cyclic,
    Galois { nonresidue: u64 },
}

/// Base ring descriptor: the prime and the kind. Per-element moduli p^k are
/// supplied by callers, since module coordinates mix precisions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub p: u64,
    pub kind: RingKind,
}

impl Ring {
    pub fn cyclic(p: u64) -> Ring {
        Ring {
            p,
            kind: RingKind::Cyclic,
        }
    }

    /// Galois ring with ξ² = c for the smallest quadratic nonresidue c mod p.
    pub fn galois(p: u64) -> Result<Ring, RingError> {
        if p == 2 {
            return Err(RingError::EvenPrimeUnsupported);
        }
        let c = smallest_nonresidue(p);
        Ok(Ring {
            p,
            kind: RingKind::Galois { nonresidue: c },
        })
    }

    pub fn is_galois(&self) -> bool {
        matches!(self.kind, RingKind::Galois { .. })
    }

    /// Size of the residue field: p (cyclic) or p² (Galois).
    pub fn residue_size(&self) -> u64 {
        match self.kind {
            RingKind::Cyclic => self.p,
            RingKind::Galois { .. } => self.p * self.p,
        }
    }

    /// Number of elements of R mod p^k.
    pub fn quotient_size(&self, k: u32) -> u64 {
        let m = self.p.pow(k);
        match self.kind {
            RingKind::Cyclic => m,
            RingKind::Galois { .. } => m * m,
        }
    }

    pub fn add(&self, m: u64, x: El, y: El) -> El {
        ((x.0 + y.0) % m, (x.1 + y.1) % m)
    }

    pub fn neg(&self, m: u64, x: El) -> El {
        ((m - x.0 % m) % m, (m - x.1 % m) % m)
    }

    pub fn sub(&self, m: u64, x: El, y: El) -> El {
        self.add(m, x, self.neg(m, y))
    }

    pub fn mul(&self, m: u64, x: El, y: El) -> El {
        match self.kind {
            RingKind::Cyclic => ((x.0 * y.0) % m, 0),
            RingKind::Galois { nonresidue } => {
                // (a+bξ)(c+dξ) = ac + c·bd·? — ξ² = nonresidue
                let (a, b) = x;
                let (c, d) = y;
                (
                    (a * c + nonresidue % m * ((b * d) % m)) % m,
                    (a * d + b * c) % m,
                )
            }
        }
    }

    /// Multiply by an ordinary integer scalar.
    pub fn int_mul(&self, m: u64, s: u64, x: El) -> El {
        ((s % m * (x.0 % m)) % m, (s % m * (x.1 % m)) % m)
    }

    /// Conjugation a+bξ ↦ a−bξ; the identity on cyclic rings.
    pub fn conj(&self, m: u64, x: El) -> El {
        match self.kind {
            RingKind::Cyclic => x,
            RingKind::Galois { .. } => (x.0, (m - x.1 % m) % m),
        }
    }

    /// Norm x·x* = a² − c b², an element of Z mod p^k (second slot zero).
    pub fn norm(&self, m: u64, x: El) -> u64 {
        self.mul(m, x, self.conj(m, x)).0
    }

    /// Valuation: max j ≤ k with p^j | x; k for x = 0.
    pub fn valuation(&self, k: u32, x: El) -> u32 {
        let m = self.p.pow(k);
        let (a, b) = (x.0 % m, x.1 % m);
        if a == 0 && b == 0 {
            return k;
        }
        let mut v = 0;
        let mut pj = 1;
        while v < k {
            let next = pj * self.p;
            if a % next == 0 && b % next == 0 {
                v += 1;
                pj = next;
            } else {
                break;
            }
        }
        v
    }

    pub fn is_unit(&self, x: El) -> bool {
        x.0 % self.p != 0 || x.1 % self.p != 0
    }

    /// All scalars of R mod p^k, in a fixed order.
    pub fn scalars(&self, k: u32) -> Vec<El> {
        let m = self.p.pow(k);
        match self.kind {
            RingKind::Cyclic => (0..m).map(|a| (a, 0)).collect(),
            RingKind::Galois { .. } => {
                let mut out = Vec::with_capacity((m * m) as usize);
                for a in 0..m {
                    for b in 0..m {
                        out.push((a, b));
                    }
                }
                out
            }
        }
    }

    pub fn format_el(&self, x: El) -> String {
        match self.kind {
            RingKind::Cyclic => format!("{}", x.0),
            RingKind::Galois { .. } => {
                if x.1 == 0 {
                    format!("{}", x.0)
                } else {
                    format!("{}+{}*x", x.0, x.1)
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Cyclic => write!(f, "Z/p^k with p={}", self.p),
            RingKind::Galois { nonresidue } => write!(f, "GR({},k;{})", self.p, nonresidue),
        }
    }
}

fn smallest_nonresidue(p: u64) -> u64 {
    let residues: std::collections::HashSet<u64> = (1..p).map(|x| (x * x) % p).collect();
    (2..p)
        .find(|c| !residues.contains(c))
        .expect("odd primes have a nonresidue")
}

/// Convenience wrapper matching the descriptor printing `GR(p,k;c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisRing {
    pub ring: Ring,
    pub k: u32,
}

impl GaloisRing {
    pub fn size(&self) -> u64 {
        self.ring.quotient_size(self.k)
    }

    pub fn nonresidue(&self) -> u64 {
        match self.ring.kind {
            RingKind::Galois { nonresidue } => nonresidue,
            RingKind::Cyclic => unreachable!(),
        }
    }
}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({},{};{})", self.ring.p, self.k, self.nonresidue())
    }
}

/// Build GR(p,k): Z[ξ]/(p^k, ξ²−c) with c the smallest nonresidue mod p.
pub fn make_galois_ring(p: u64, k: u32) -> Result<GaloisRing, RingError> {
    Ok(GaloisRing {
        ring: Ring::galois(p)?,
        k,
    })
}
