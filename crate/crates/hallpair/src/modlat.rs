//! Finite modules of a given type over a base ring, exhaustive submodule
//! enumeration, pairings, perps, and the counting predicates behind every
//! brute-force cross-check in the crate.
//!
//! Modules are desk scale (a few thousand elements); submodules are produced
//! by a closure BFS (adjoin one cyclic orbit at a time, deduplicate by the
//! canonical sorted element list) and all type ladders reduce to subgroup
//! size arithmetic |A+B| = |A|·|B|/|A∩B| on bitsets.

use crate::basering::{El, Ring, RingError};
use crate::partitions::Partition;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModLatError {
    #[error("module has {size} elements, over the bound {bound}")]
    SizeBound { size: u64, bound: u64 },
    #[error("element set is not a submodule")]
    NotASubmodule,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Default cap on module sizes for exhaustive work.
pub const DEFAULT_SIZE_BOUND: u64 = 4096;

/// Word-level bitset over element ids.
#[derive(Clone, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: u32) {
        self.words[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    pub fn test(&self, i: u32) -> bool {
        self.words[(i / 64) as usize] & (1u64 << (i % 64)) != 0
    }

    pub fn and_assign(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn intersection_count(&self, other: &BitSet) -> u64 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn ids(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.count() as usize);
        for (wi, w) in self.words.iter().enumerate() {
            let mut bits = *w;
            while bits != 0 {
                let b = bits.trailing_zeros();
                out.push(wi as u32 * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn from_ids(n: usize, ids: &[u32]) -> Self {
        let mut s = BitSet::new(n);
        for &i in ids {
            s.set(i);
        }
        s
    }
}

/// Finite module ⊕_i R/p^{λ_i} with elements indexed 0..size.
pub struct FiniteModule {
    ring: Ring,
    shape: Partition,
    moduli: Vec<u64>,
    strides: Vec<u64>,
    size: u64,
    coords: Vec<Vec<El>>,
}

impl FiniteModule {
    pub fn new(ring: Ring, shape: Partition) -> FiniteModule {
        let moduli: Vec<u64> = shape.parts().iter().map(|&l| ring.p.pow(l)).collect();
        let coordspace: Vec<u64> = moduli
            .iter()
            .map(|&m| if ring.is_galois() { m * m } else { m })
            .collect();
        let mut strides = vec![1u64; coordspace.len()];
        for i in (0..coordspace.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * coordspace[i + 1];
        }
        let size: u64 = coordspace.iter().product();
        let mut coords = Vec::with_capacity(size as usize);
        for id in 0..size {
            let mut e = Vec::with_capacity(moduli.len());
            for (i, (&cs, &m)) in coordspace.iter().zip(&moduli).enumerate() {
                let digit = (id / strides[i]) % cs;
                if ring.is_galois() {
                    e.push((digit / m, digit % m));
                } else {
                    e.push((digit, 0));
                }
            }
            coords.push(e);
        }
        FiniteModule {
            ring,
            shape,
            moduli,
            strides,
            size,
            coords,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn coords_of(&self, id: u32) -> &[El] {
        &self.coords[id as usize]
    }

    pub fn id_of(&self, e: &[El]) -> u32 {
        let mut id = 0u64;
        for (i, &(a, b)) in e.iter().enumerate() {
            let m = self.moduli[i];
            let digit = if self.ring.is_galois() {
                (a % m) * m + (b % m)
            } else {
                a % m
            };
            id += digit * self.strides[i];
        }
        id as u32
    }

    pub fn add_ids(&self, x: u32, y: u32) -> u32 {
        let (ex, ey) = (&self.coords[x as usize], &self.coords[y as usize]);
        let mut id = 0u64;
        for i in 0..self.moduli.len() {
            let m = self.moduli[i];
            let a = (ex[i].0 + ey[i].0) % m;
            let b = (ex[i].1 + ey[i].1) % m;
            let digit = if self.ring.is_galois() { a * m + b } else { a };
            id += digit * self.strides[i];
        }
        id as u32
    }

    /// Multiply by p^j.
    pub fn pmul_id(&self, j: u32, x: u32) -> u32 {
        let pj = self.ring.p.pow(j);
        let e = &self.coords[x as usize];
        let mut id = 0u64;
        for i in 0..self.moduli.len() {
            let m = self.moduli[i];
            let a = (e[i].0 * (pj % m)) % m;
            let b = (e[i].1 * (pj % m)) % m;
            let digit = if self.ring.is_galois() { a * m + b } else { a };
            id += digit * self.strides[i];
        }
        id as u32
    }

    /// Act by a ring scalar (given mod p^{λ1}).
    pub fn scalar_mul_id(&self, s: El, x: u32) -> u32 {
        let e = &self.coords[x as usize];
        let mut id = 0u64;
        for i in 0..self.moduli.len() {
            let m = self.moduli[i];
            let sv = (s.0 % m, s.1 % m);
            let (a, b) = self.ring.mul(m, sv, e[i]);
            let digit = if self.ring.is_galois() { a * m + b } else { a };
            id += digit * self.strides[i];
        }
        id as u32
    }

    /// The cyclic submodule o·x as a sorted deduped id list.
    pub fn cyclic_submodule(&self, x: u32) -> Vec<u32> {
        let k = self.shape.part(1);
        let mut out: Vec<u32> = self
            .ring
            .scalars(k)
            .into_iter()
            .map(|s| self.scalar_mul_id(s, x))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Bitmap of p^j·M.
    pub fn pmul_image(&self, j: u32) -> BitSet {
        let mut s = BitSet::new(self.size as usize);
        for id in 0..self.size as u32 {
            s.set(self.pmul_id(j, id));
        }
        s
    }

    /// Bitmap of p^j·S for a set of ids.
    pub fn pmul_image_of(&self, j: u32, ids: &[u32]) -> BitSet {
        let mut s = BitSet::new(self.size as usize);
        for &id in ids {
            s.set(self.pmul_id(j, id));
        }
        s
    }

    pub fn is_submodule(&self, ids: &[u32]) -> bool {
        let set = BitSet::from_ids(self.size as usize, ids);
        if !set.test(0) {
            return false;
        }
        for &x in ids {
            for &y in ids {
                if !set.test(self.add_ids(x, y)) {
                    return false;
                }
            }
            for &o in &self.cyclic_submodule(x) {
                if !set.test(o) {
                    return false;
                }
            }
        }
        true
    }
}

/// Submodule: canonical sorted element ids plus a generating chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub elems: Vec<u32>,
    pub gens: Vec<u32>,
}

impl Submodule {
    pub fn size(&self) -> u64 {
        self.elems.len() as u64
    }
}

/// Every submodule of M exactly once, by closure BFS.
pub fn enumerate_submodules(
    m: &FiniteModule,
    bound: u64,
) -> Result<Vec<Submodule>, ModLatError> {
    if m.size() > bound {
        return Err(ModLatError::SizeBound {
            size: m.size(),
            bound,
        });
    }
    let size = m.size() as usize;
    let mut subs = vec![Submodule {
        elems: vec![0],
        gens: vec![],
    }];
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    seen.insert(vec![0], 0);
    let mut qi = 0usize;
    let mut visited = vec![false; size];
    while qi < subs.len() {
        let current = subs[qi].clone();
        qi += 1;
        visited.iter_mut().for_each(|v| *v = false);
        for &e in &current.elems {
            visited[e as usize] = true;
        }
        for x in 1..size as u32 {
            if visited[x as usize] {
                continue;
            }
            // the coset x+S produces the same extension; mark it off
            for &s in &current.elems {
                visited[m.add_ids(x, s) as usize] = true;
            }
            let orbit = m.cyclic_submodule(x);
            let elems = sum_set(m, &current.elems, &orbit, size);
            if !seen.contains_key(&elems) {
                let mut gens = current.gens.clone();
                gens.push(x);
                seen.insert(elems.clone(), subs.len());
                subs.push(Submodule { elems, gens });
            }
        }
    }
    Ok(subs)
}

/// Elementwise sum of two submodule id lists, sorted.
fn sum_set(m: &FiniteModule, a: &[u32], b: &[u32], size: usize) -> Vec<u32> {
    if a.len() * b.len() > size / 2 {
        let mut bits = BitSet::new(size);
        for &x in a {
            for &y in b {
                bits.set(m.add_ids(x, y));
            }
        }
        bits.ids()
    } else {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for &x in a {
            for &y in b {
                out.push(m.add_ids(x, y));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn exact_log(residue: u64, ratio: u64) -> Result<u32, ModLatError> {
    let mut k = 0u32;
    let mut acc = 1u64;
    while acc < ratio {
        acc *= residue;
        k += 1;
    }
    if acc != ratio {
        return Err(ModLatError::InternalInconsistency(format!(
            "size ratio {ratio} is not a power of the residue size {residue}"
        )));
    }
    Ok(k)
}

/// Type ladder from sizes |p^0 H| ≥ |p^1 H| ≥ …: conjugate parts are the
/// residue-logs of consecutive ratios.
fn type_from_sizes(residue: u64, sizes: &[u64]) -> Result<Partition, ModLatError> {
    let mut conj_parts = Vec::new();
    for w in sizes.windows(2) {
        if w[1] == 0 || w[0] % w[1] != 0 {
            return Err(ModLatError::InternalInconsistency(
                "non-divisible ladder".into(),
            ));
        }
        conj_parts.push(exact_log(residue, w[0] / w[1])?);
    }
    Ok(Partition::new(conj_parts).conjugate())
}

/// Isomorphism type of a submodule given by its element ids.
pub fn module_type(m: &FiniteModule, ids: &[u32]) -> Result<Partition, ModLatError> {
    let residue = m.ring().residue_size();
    let mut sizes = vec![ids.len() as u64];
    let mut j = 1u32;
    loop {
        let img = m.pmul_image_of(j, ids);
        let c = img.count();
        sizes.push(c);
        if c == 1 {
            break;
        }
        j += 1;
    }
    type_from_sizes(residue, &sizes)
}

/// Type of top/bottom for submodules bottom ⊆ top, via
/// |p^j(top/bottom)| = |p^j top| / |p^j top ∩ bottom|.
pub fn quotient_type_pair(
    m: &FiniteModule,
    top: &[u32],
    bottom: &[u32],
) -> Result<Partition, ModLatError> {
    let residue = m.ring().residue_size();
    let bottom_bits = BitSet::from_ids(m.size() as usize, bottom);
    let mut sizes = Vec::new();
    let mut j = 0u32;
    loop {
        let img = m.pmul_image_of(j, top);
        let inter = img.intersection_count(&bottom_bits);
        if inter == 0 || img.count() % inter != 0 {
            return Err(ModLatError::InternalInconsistency(
                "quotient ladder not divisible".into(),
            ));
        }
        let c = img.count() / inter;
        sizes.push(c);
        if c == 1 {
            break;
        }
        j += 1;
    }
    type_from_sizes(residue, &sizes)
}

/// Type of M/H; errors with NotASubmodule if `ids` is not closed.
pub fn quotient_type(m: &FiniteModule, ids: &[u32]) -> Result<Partition, ModLatError> {
    if !m.is_submodule(ids) {
        return Err(ModLatError::NotASubmodule);
    }
    let all: Vec<u32> = (0..m.size() as u32).collect();
    quotient_type_pair(m, &all, ids)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    Alternating,
    Hermitian,
}

/// Finite module with a regular alternating or Hermitian pairing in the
/// standard block form. Pairing values are carried scaled by π^{λ1}, i.e.
/// as elements of R mod p^{λ1}.
pub struct PairedModule {
    pub kind: PairKind,
    pub lambda: Partition,
    pub module: FiniteModule,
    scale_k: u32,
    scale_m: u64,
}

impl PairedModule {
    pub fn alternating(p: u64, lambda: Partition) -> PairedModule {
        let module = FiniteModule::new(Ring::cyclic(p), lambda.double_interleave());
        let scale_k = lambda.part(1);
        PairedModule {
            kind: PairKind::Alternating,
            scale_m: p.pow(scale_k),
            lambda,
            module,
            scale_k,
        }
    }

    pub fn hermitian(p: u64, lambda: Partition) -> Result<PairedModule, ModLatError> {
        let ring = Ring::galois(p)?;
        let module = FiniteModule::new(ring, lambda.clone());
        let scale_k = lambda.part(1);
        Ok(PairedModule {
            kind: PairKind::Hermitian,
            scale_m: p.pow(scale_k),
            lambda,
            module,
            scale_k,
        })
    }

    pub fn scale_modulus(&self) -> u64 {
        self.scale_m
    }

    /// π^{λ1}·⟨x,y⟩ as an element of R mod p^{λ1}.
    pub fn pairing_scaled(&self, x: u32, y: u32) -> El {
        let m = self.scale_m;
        if m == 1 {
            return (0, 0);
        }
        let p = self.module.ring().p;
        let ex = self.module.coords_of(x);
        let ey = self.module.coords_of(y);
        match self.kind {
            PairKind::Alternating => {
                let mut acc = 0u64;
                for (i, &li) in self.lambda.parts().iter().enumerate() {
                    let w = p.pow(self.scale_k - li) % m;
                    let (a1, a2) = (ex[2 * i].0 % m, ex[2 * i + 1].0 % m);
                    let (b1, b2) = (ey[2 * i].0 % m, ey[2 * i + 1].0 % m);
                    let pos = (a1 * b2) % m;
                    let neg = (a2 * b1) % m;
                    acc = (acc + w * ((pos + m - neg) % m)) % m;
                }
                (acc, 0)
            }
            PairKind::Hermitian => {
                let ring = self.module.ring();
                let mut acc = (0u64, 0u64);
                for (i, _) in self.lambda.parts().iter().enumerate() {
                    let w = p.pow(self.scale_k - self.lambda.part(i + 1)) % m;
                    let xi = (ex[i].0 % m, ex[i].1 % m);
                    let yi = (ey[i].0 % m, ey[i].1 % m);
                    let prod = ring.mul(m, ring.conj(m, xi), yi);
                    acc = ring.add(m, acc, ring.int_mul(m, w, prod));
                }
                acc
            }
        }
    }

    /// Kernel of ⟨·,g⟩ as a bitmap.
    fn pairing_kernel(&self, g: u32) -> BitSet {
        let n = self.module.size() as usize;
        let mut s = BitSet::new(n);
        for x in 0..n as u32 {
            if self.pairing_scaled(x, g) == (0, 0) {
                s.set(x);
            }
        }
        s
    }

    /// Orthogonal submodule of the span of `gens` (everything for no gens).
    pub fn perp_of_gens(&self, gens: &[u32]) -> BitSet {
        let n = self.module.size() as usize;
        let mut acc = BitSet::new(n);
        for id in 0..n as u32 {
            acc.set(id);
        }
        for &g in gens {
            acc.and_assign(&self.pairing_kernel(g));
        }
        acc
    }

    /// Orthogonal submodule of a submodule.
    pub fn perp(&self, sub: &Submodule) -> Vec<u32> {
        self.perp_of_gens(&sub.gens).ids()
    }
}

/// Per-submodule summary of a paired module: quotient type of M/M' and,
/// when M'^⊥ ⊆ M', the paired type of M'/M'^⊥.
pub struct PairedScanRow {
    pub qtype: Partition,
    pub paired: Option<Partition>,
}

pub fn paired_scan(
    kind: PairKind,
    p: u64,
    lambda: &Partition,
    bound: u64,
) -> Result<Vec<PairedScanRow>, ModLatError> {
    let pm = match kind {
        PairKind::Alternating => PairedModule::alternating(p, lambda.clone()),
        PairKind::Hermitian => PairedModule::hermitian(p, lambda.clone())?,
    };
    let m = &pm.module;
    let size = m.size() as usize;
    let subs = enumerate_submodules(m, bound)?;
    let all: Vec<u32> = (0..size as u32).collect();
    let mut kernel_cache: HashMap<u32, BitSet> = HashMap::new();
    let mut rows = Vec::with_capacity(subs.len());
    for sub in &subs {
        let qtype = quotient_type_pair(m, &all, &sub.elems)?;
        let mut perp_bits = BitSet::new(size);
        for id in 0..size as u32 {
            perp_bits.set(id);
        }
        for &g in &sub.gens {
            let kern = kernel_cache
                .entry(g)
                .or_insert_with(|| pm.pairing_kernel(g));
            perp_bits.and_assign(kern);
        }
        // regularity: #H·#H^⊥ = #M
        let perp_count = perp_bits.count();
        if perp_count * sub.size() != m.size() {
            return Err(ModLatError::InternalInconsistency(format!(
                "perp size {} × submodule size {} ≠ module size {}",
                perp_count,
                sub.size(),
                m.size()
            )));
        }
        let sub_bits = BitSet::from_ids(size, &sub.elems);
        let paired = if perp_bits.is_subset_of(&sub_bits) {
            let qt = quotient_type_pair(m, &sub.elems, &perp_bits.ids())?;
            Some(match kind {
                PairKind::Alternating => qt.halve_doubled().map_err(|_| {
                    ModLatError::InternalInconsistency(format!(
                        "alternating quotient type {qt} is not doubled"
                    ))
                })?,
                PairKind::Hermitian => qt,
            })
        } else {
            None
        };
        rows.push(PairedScanRow { qtype, paired });
    }
    Ok(rows)
}

/// G^{kind,λ}_{μ,ν}: submodules M' with M/M' of type μ, M'^⊥ isotropic,
/// and M'/M'^⊥ a paired module of type ν.
pub fn count_g_paired(
    kind: PairKind,
    p: u64,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    bound: u64,
) -> Result<u64, ModLatError> {
    let rows = paired_scan(kind, p, lambda, bound)?;
    Ok(count_g_paired_from_scan(&rows, mu, nu))
}

pub fn count_g_paired_from_scan(rows: &[PairedScanRow], mu: &Partition, nu: &Partition) -> u64 {
    rows.iter()
        .filter(|r| &r.qtype == mu && r.paired.as_ref() == Some(nu))
        .count() as u64
}

/// Per-submodule summary of a plain module: quotient type and own type.
pub struct ClassicalScanRow {
    pub qtype: Partition,
    pub htype: Partition,
}

pub fn classical_scan(
    ring: Ring,
    lambda: &Partition,
    bound: u64,
) -> Result<Vec<ClassicalScanRow>, ModLatError> {
    let m = FiniteModule::new(ring, lambda.clone());
    let subs = enumerate_submodules(&m, bound)?;
    let all: Vec<u32> = (0..m.size() as u32).collect();
    let mut rows = Vec::with_capacity(subs.len());
    for sub in &subs {
        rows.push(ClassicalScanRow {
            qtype: quotient_type_pair(&m, &all, &sub.elems)?,
            htype: module_type(&m, &sub.elems)?,
        });
    }
    Ok(rows)
}

/// G^λ_{μ,ν}: submodules H ⊆ M_λ with M/H of type μ and H of type ν.
pub fn count_g_classical(
    ring: Ring,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    bound: u64,
) -> Result<u64, ModLatError> {
    let rows = classical_scan(ring, lambda, bound)?;
    Ok(rows
        .iter()
        .filter(|r| &r.qtype == mu && &r.htype == nu)
        .count() as u64)
}

/// #{x ∈ M_λ : ⟨x,x⟩ = π^{−λ1}} for a Hermitian module, by exhaustion.
pub fn count_norm_sphere(p: u64, lambda: &Partition, bound: u64) -> Result<u64, ModLatError> {
    let pm = PairedModule::hermitian(p, lambda.clone())?;
    if pm.module.size() > bound {
        return Err(ModLatError::SizeBound {
            size: pm.module.size(),
            bound,
        });
    }
    let target = (1 % pm.scale_m, 0);
    Ok((0..pm.module.size() as u32)
        .filter(|&x| pm.pairing_scaled(x, x) == target)
        .count() as u64)
}

/// Pairing-preserving automorphism counts by generator-image backtracking:
/// count tuples whose scaled Gram matrix matches the standard block form.
/// `Classical` counts all module automorphisms instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutKind {
    Classical,
    Alternating,
    Hermitian,
}

pub fn count_paired_automorphisms(
    kind: AutKind,
    p: u64,
    lambda: &Partition,
    bound: u64,
) -> Result<u64, ModLatError> {
    match kind {
        AutKind::Classical => {
            let m = FiniteModule::new(Ring::cyclic(p), lambda.clone());
            if m.size() > bound {
                return Err(ModLatError::SizeBound {
                    size: m.size(),
                    bound,
                });
            }
            Ok(count_surjections(&m, lambda))
        }
        AutKind::Alternating => {
            let pm = PairedModule::alternating(p, lambda.clone());
            if pm.module.size() > bound {
                return Err(ModLatError::SizeBound {
                    size: pm.module.size(),
                    bound,
                });
            }
            // generators z_1..z_{2n} paired as (z_{2i−1}, z_{2i});
            // required scaled values: ⟨z_{2i−1}, z_{2i}⟩ = p^{λ1−λ_i}, rest 0
            let n = lambda.len();
            let p_ = pm.module.ring().p;
            let req = |i: usize, j: usize| -> El {
                if j == i + 1 && i % 2 == 0 {
                    (p_.pow(pm.scale_k - lambda.part(i / 2 + 1)) % pm.scale_m, 0)
                } else if i == j + 1 && j % 2 == 0 {
                    let v = p_.pow(pm.scale_k - lambda.part(j / 2 + 1)) % pm.scale_m;
                    ((pm.scale_m - v) % pm.scale_m, 0)
                } else {
                    (0, 0)
                }
            };
            Ok(count_gram_tuples(&pm, 2 * n, &req))
        }
        AutKind::Hermitian => {
            let pm = PairedModule::hermitian(p, lambda.clone())?;
            if pm.module.size() > bound {
                return Err(ModLatError::SizeBound {
                    size: pm.module.size(),
                    bound,
                });
            }
            let n = lambda.len();
            let p_ = pm.module.ring().p;
            let req = |i: usize, j: usize| -> El {
                if i == j {
                    (p_.pow(pm.scale_k - lambda.part(i + 1)) % pm.scale_m, 0)
                } else {
                    (0, 0)
                }
            };
            Ok(count_gram_tuples(&pm, n, &req))
        }
    }
}

fn count_gram_tuples(pm: &PairedModule, slots: usize, req: &dyn Fn(usize, usize) -> El) -> u64 {
    let size = pm.module.size() as u32;
    let mut chosen: Vec<u32> = Vec::with_capacity(slots);
    fn rec(
        pm: &PairedModule,
        slots: usize,
        req: &dyn Fn(usize, usize) -> El,
        chosen: &mut Vec<u32>,
        size: u32,
    ) -> u64 {
        if chosen.len() == slots {
            return 1;
        }
        let k = chosen.len();
        let mut acc = 0u64;
        'cand: for x in 0..size {
            for (i, &z) in chosen.iter().enumerate() {
                if pm.pairing_scaled(z, x) != req(i, k) {
                    continue 'cand;
                }
            }
            if pm.kind == PairKind::Hermitian && pm.pairing_scaled(x, x) != req(k, k) {
                continue;
            }
            chosen.push(x);
            acc += rec(pm, slots, req, chosen, size);
            chosen.pop();
        }
        acc
    }
    rec(pm, slots, req, &mut chosen, size)
}

/// Ids of the p^k-torsion {x : p^k·x = 0}.
fn torsion_ids(m: &FiniteModule, k: u32) -> Vec<u32> {
    (0..m.size() as u32)
        .filter(|&x| m.pmul_id(k, x) == 0)
        .collect()
}

/// Homomorphism-count kit: a hom G_source → M is a tuple of images with the
/// order conditions p^{source_i}·y_i = 0; its image is the span of the tuple.
pub struct HomCounts {
    pub hom: u64,
    pub sur: u64,
    pub inj: u64,
    pub by_image_type: HashMap<Partition, u64>,
}

pub fn count_homs(m: &FiniteModule, source: &Partition) -> Result<HomCounts, ModLatError> {
    let torsions: Vec<Vec<u32>> = source
        .parts()
        .iter()
        .map(|&l| torsion_ids(m, l))
        .collect();
    let source_size = m.ring().residue_size().pow(source.weight());
    let mut counts = HomCounts {
        hom: 0,
        sur: 0,
        inj: 0,
        by_image_type: HashMap::new(),
    };
    let mut images: Vec<Vec<u32>> = vec![vec![0]];
    fn rec(
        m: &FiniteModule,
        torsions: &[Vec<u32>],
        level: usize,
        span: &[u32],
        source_size: u64,
        counts: &mut HomCounts,
        images: &mut Vec<Vec<u32>>,
    ) -> Result<(), ModLatError> {
        if level == torsions.len() {
            counts.hom += 1;
            if span.len() as u64 == m.size() {
                counts.sur += 1;
            }
            if span.len() as u64 == source_size {
                counts.inj += 1;
            }
            let t = module_type(m, span)?;
            *counts.by_image_type.entry(t).or_insert(0) += 1;
            return Ok(());
        }
        for &y in &torsions[level] {
            let orbit = m.cyclic_submodule(y);
            let bigger = sum_set(m, span, &orbit, m.size() as usize);
            images.push(bigger);
            let bigger_ref = images.last().unwrap().clone();
            rec(m, torsions, level + 1, &bigger_ref, source_size, counts, images)?;
            images.pop();
        }
        Ok(())
    }
    rec(
        m,
        &torsions,
        0,
        &[0],
        source_size,
        &mut counts,
        &mut images,
    )?;
    Ok(counts)
}

pub fn count_surjections(m: &FiniteModule, source: &Partition) -> u64 {
    count_homs(m, source).map(|c| c.sur).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumerate_examples() {
        // type (1) at p=2 → {0, M}
        let m = FiniteModule::new(Ring::cyclic(2), part(&[1]));
        assert_eq!(enumerate_submodules(&m, 4096).unwrap().len(), 2);

        // type (1,1) at p=2 → 5 (three lines, 0, M)
        let m = FiniteModule::new(Ring::cyclic(2), part(&[1, 1]));
        assert_eq!(enumerate_submodules(&m, 4096).unwrap().len(), 5);

        // type (2) at p=3 → the chain 0 ⊂ pM ⊂ M
        let m = FiniteModule::new(Ring::cyclic(3), part(&[2]));
        assert_eq!(enumerate_submodules(&m, 4096).unwrap().len(), 3);

        // size bound respected
        let m = FiniteModule::new(Ring::cyclic(2), part(&[1; 13]));
        assert!(matches!(
            enumerate_submodules(&m, 4096),
            Err(ModLatError::SizeBound { .. })
        ));
    }

    #[test]
    fn subgroup_counts_match_gaussian_binomials() {
        // (Z/p)^3: 2 + 2(p²+p+1) subgroups
        for p in [2u64, 3] {
            let m = FiniteModule::new(Ring::cyclic(p), part(&[1, 1, 1]));
            let expect = 2 + 2 * (p * p + p + 1);
            assert_eq!(enumerate_submodules(&m, 4096).unwrap().len() as u64, expect);
        }
        // Z/4 ⊕ Z/2 has 8 subgroups
        let m = FiniteModule::new(Ring::cyclic(2), part(&[2, 1]));
        assert_eq!(enumerate_submodules(&m, 4096).unwrap().len(), 8);
    }

    #[test]
    fn module_type_examples() {
        let m = FiniteModule::new(Ring::cyclic(3), part(&[2]));
        assert_eq!(module_type(&m, &[0]).unwrap(), part(&[]));
        // pM inside Z/9
        let pm_ids = m.cyclic_submodule(m.pmul_id(1, m.id_of(&[(1, 0)])));
        assert_eq!(module_type(&m, &pm_ids).unwrap(), part(&[1]));

        // diagonal line in (Z/2)²
        let m = FiniteModule::new(Ring::cyclic(2), part(&[1, 1]));
        let d = m.id_of(&[(1, 0), (1, 0)]);
        let ids = m.cyclic_submodule(d);
        assert_eq!(module_type(&m, &ids).unwrap(), part(&[1]));
    }

    #[test]
    fn quotient_type_examples() {
        let m = FiniteModule::new(Ring::cyclic(3), part(&[2]));
        let all: Vec<u32> = (0..m.size() as u32).collect();
        assert_eq!(quotient_type(&m, &all).unwrap(), part(&[]));
        assert_eq!(quotient_type(&m, &[0]).unwrap(), part(&[2]));
        let pm_ids = m.cyclic_submodule(m.pmul_id(1, m.id_of(&[(1, 0)])));
        assert_eq!(quotient_type(&m, &pm_ids).unwrap(), part(&[1]));
        // not a submodule
        assert_eq!(
            quotient_type(&m, &[0, 1]).unwrap_err(),
            ModLatError::NotASubmodule
        );
    }

    #[test]
    fn pairing_examples() {
        // alternating λ=(1), p=2: ⟨e1,e2⟩ scaled = 1
        let pm = PairedModule::alternating(2, part(&[1]));
        let e1 = pm.module.id_of(&[(1, 0), (0, 0)]);
        let e2 = pm.module.id_of(&[(0, 0), (1, 0)]);
        assert_eq!(pm.pairing_scaled(e1, e2), (1, 0));
        assert_eq!(pm.pairing_scaled(e2, e1), (1, 0)); // −1 ≡ 1 mod 2
        for x in 0..pm.module.size() as u32 {
            assert_eq!(pm.pairing_scaled(x, x), (0, 0));
        }

        // hermitian λ=(1), p=3: ⟨e1,e1⟩ scaled = 1
        let pm = PairedModule::hermitian(3, part(&[1])).unwrap();
        let e1 = pm.module.id_of(&[(1, 0)]);
        assert_eq!(pm.pairing_scaled(e1, e1), (1, 0));
    }

    #[test]
    fn perp_properties() {
        // perps pair sizes and reverse inclusions on alternating modules
        for lambda in [part(&[1]), part(&[2]), part(&[1, 1])] {
            let pm = PairedModule::alternating(2, lambda);
            let subs = enumerate_submodules(&pm.module, 4096).unwrap();
            let size = pm.module.size() as usize;
            for sub in &subs {
                let perp = pm.perp(sub);
                assert_eq!(perp.len() as u64 * sub.size(), pm.module.size());
                // H^⊥⊥ = H: perp of the perp, generated from its elements
                let perp_sub = Submodule {
                    elems: perp.clone(),
                    gens: perp.clone(),
                };
                let perp2 = pm.perp(&perp_sub);
                assert_eq!(perp2, sub.elems);
                // H ⊆ H' ⟺ H'^⊥ ⊆ H^⊥, both directions on every pair
                let sub_bits = BitSet::from_ids(size, &sub.elems);
                let perp_bits = BitSet::from_ids(size, &perp);
                for other in &subs {
                    let other_bits = BitSet::from_ids(size, &other.elems);
                    let operp = BitSet::from_ids(size, &pm.perp(other));
                    assert_eq!(
                        sub_bits.is_subset_of(&other_bits),
                        operp.is_subset_of(&perp_bits)
                    );
                }
            }
        }
    }

    #[test]
    fn perp_trivial_cases() {
        let pm = PairedModule::alternating(3, part(&[1]));
        let zero = Submodule {
            elems: vec![0],
            gens: vec![],
        };
        assert_eq!(pm.perp(&zero).len() as u64, pm.module.size());
        let subs = enumerate_submodules(&pm.module, 4096).unwrap();
        let full = subs.iter().find(|s| s.size() == pm.module.size()).unwrap();
        assert_eq!(pm.perp(full), vec![0]);
    }

    #[test]
    fn isotropic_line_is_its_own_perp() {
        let pm = PairedModule::alternating(2, part(&[1]));
        let e1 = pm.module.id_of(&[(1, 0), (0, 0)]);
        let sub = Submodule {
            elems: pm.module.cyclic_submodule(e1),
            gens: vec![e1],
        };
        assert_eq!(pm.perp(&sub), sub.elems);
    }

    #[test]
    fn count_g_classical_examples() {
        let r = Ring::cyclic(3);
        // H = M is the unique submodule with empty quotient type
        assert_eq!(
            count_g_classical(r, &part(&[2, 1]), &part(&[]), &part(&[2, 1]), 4096).unwrap(),
            1
        );
        // 4 lines in (F_3)²
        assert_eq!(
            count_g_classical(r, &part(&[1, 1]), &part(&[1]), &part(&[1]), 4096).unwrap(),
            4
        );
        // the unique subgroup pM of Z/9
        assert_eq!(
            count_g_classical(r, &part(&[2]), &part(&[1]), &part(&[1]), 4096).unwrap(),
            1
        );
        // weight constraint
        assert_eq!(
            count_g_classical(r, &part(&[2]), &part(&[1]), &part(&[2]), 4096).unwrap(),
            0
        );
    }

    #[test]
    fn count_g_classical_symmetric_in_mu_nu() {
        for p in [2u64, 3] {
            let r = Ring::cyclic(p);
            for lambda in [part(&[2]), part(&[1, 1]), part(&[2, 1]), part(&[1, 1, 1])] {
                let rows = classical_scan(r, &lambda, 4096).unwrap();
                let mut seen: HashMap<(Partition, Partition), i64> = HashMap::new();
                for row in &rows {
                    *seen.entry((row.qtype.clone(), row.htype.clone())).or_insert(0) += 1;
                    *seen.entry((row.htype.clone(), row.qtype.clone())).or_insert(0) -= 1;
                }
                assert!(seen.values().all(|&v| v == 0), "λ={lambda} p={p}");
            }
        }
    }

    #[test]
    fn count_g_paired_examples() {
        // M' = M is the only submodule with μ = ()
        assert_eq!(
            count_g_paired(PairKind::Alternating, 3, &part(&[2]), &part(&[]), &part(&[2]), 4096)
                .unwrap(),
            1
        );
        // Lagrangian lines in symplectic (F_3)²: q+1 = 4
        assert_eq!(
            count_g_paired(PairKind::Alternating, 3, &part(&[1]), &part(&[1]), &part(&[]), 4096)
                .unwrap(),
            4
        );
        // isotropic points of the Hermitian curve in P¹(F_9): q+1 = 4
        assert_eq!(
            count_g_paired(PairKind::Hermitian, 3, &part(&[1, 1]), &part(&[1]), &part(&[]), 4096)
                .unwrap(),
            4
        );
    }

    #[test]
    fn alternating_isotropy_gives_doubled_types() {
        // whenever perp(M') ⊆ M', the quotient type halves cleanly;
        // paired_scan would error otherwise
        for lambda in [part(&[1]), part(&[2]), part(&[1, 1])] {
            let rows = paired_scan(PairKind::Alternating, 2, &lambda, 4096).unwrap();
            assert!(rows.iter().any(|r| r.paired.is_some()));
        }
    }

    #[test]
    fn norm_sphere_examples() {
        // λ=(1), p=3: 4 = q+1
        assert_eq!(count_norm_sphere(3, &part(&[1]), 4096).unwrap(), 4);
        // λ=(1,1), p=3: 3³(1−1/9) = 24
        assert_eq!(count_norm_sphere(3, &part(&[1, 1]), 4096).unwrap(), 24);
        // λ=(2), p=3: 3²(1+1/3) = 12
        assert_eq!(count_norm_sphere(3, &part(&[2]), 4096).unwrap(), 12);
    }

    #[test]
    fn automorphism_counts() {
        // hermitian (1) p=3: q+1 = 4
        assert_eq!(
            count_paired_automorphisms(AutKind::Hermitian, 3, &part(&[1]), 4096).unwrap(),
            4
        );
        // alternating (1) p=2: |SL₂(F_2)| = 6
        assert_eq!(
            count_paired_automorphisms(AutKind::Alternating, 2, &part(&[1]), 4096).unwrap(),
            6
        );
        // classical (1) p=3: units of F_3
        assert_eq!(
            count_paired_automorphisms(AutKind::Classical, 3, &part(&[1]), 4096).unwrap(),
            2
        );
    }

    #[test]
    fn hom_counts_on_cyclic_targets() {
        // Hom(Z/3, Z/9) has 3 elements, 0 surjective, 3 with cyclic image ≤ (1)
        let m = FiniteModule::new(Ring::cyclic(3), part(&[2]));
        let c = count_homs(&m, &part(&[1])).unwrap();
        assert_eq!(c.hom, 3);
        assert_eq!(c.sur, 0);
        assert_eq!(c.inj, 3 - 1); // the two order-3 images are injective
        assert_eq!(c.by_image_type[&part(&[])], 1);
        assert_eq!(c.by_image_type[&part(&[1])], 2);

        // #Hom(G_λ, G_ν) = p^{Σ min} sanity
        let m = FiniteModule::new(Ring::cyclic(2), part(&[2, 1]));
        let c = count_homs(&m, &part(&[2])).unwrap();
        assert_eq!(c.hom, 2u64.pow(part(&[2]).conj_dot(&part(&[2, 1])) as u32));
    }

    #[test]
    fn multi_step_chain_consistency() {
        // Σ_μ G^μ_{μ1,μ2}·G^{alt,λ}_{μ,ν} = direct two-step chain count,
        // one small instance: λ=(1,1), μ1=μ2=(1), ν=() at p=2
        let p = 2u64;
        let lambda = part(&[1, 1]);
        let (mu1, mu2, nu) = (part(&[1]), part(&[1]), part(&[]));
        let pm = PairedModule::alternating(p, lambda.clone());
        let m = &pm.module;
        let size = m.size() as usize;
        let subs = enumerate_submodules(m, 4096).unwrap();
        let all: Vec<u32> = (0..size as u32).collect();

        // direct: chains M ⊃ M1 ⊃ M2 with quotient types μ1, μ2,
        // perp(M2) ⊆ M2 and paired type of M2/perp = ν
        let mut direct = 0u64;
        for m2 in &subs {
            let perp = BitSet::from_ids(size, &pm.perp(m2));
            let m2_bits = BitSet::from_ids(size, &m2.elems);
            if !perp.is_subset_of(&m2_bits) {
                continue;
            }
            let qt = quotient_type_pair(m, &m2.elems, &perp.ids()).unwrap();
            if qt.halve_doubled().ok() != Some(nu.clone()) {
                continue;
            }
            for m1 in &subs {
                let m1_bits = BitSet::from_ids(size, &m1.elems);
                if !m2_bits.is_subset_of(&m1_bits) {
                    continue;
                }
                if quotient_type_pair(m, &all, &m1.elems).unwrap() == mu1
                    && quotient_type_pair(m, &m1.elems, &m2.elems).unwrap() == mu2
                {
                    direct += 1;
                }
            }
        }

        // factored: Σ_μ count_G_classical(μ; μ1, μ2)·count_G_paired(λ; μ, ν)
        let rows = paired_scan(PairKind::Alternating, p, &lambda, 4096).unwrap();
        let mut factored = 0u64;
        for w in 0..=lambda.weight() {
            for mu in crate::partitions::partitions_of_weight(w, None, None) {
                let g_mu = count_g_classical(Ring::cyclic(p), &mu, &mu1, &mu2, 4096).unwrap();
                if g_mu == 0 {
                    continue;
                }
                factored += g_mu * count_g_paired_from_scan(&rows, &mu, &nu);
            }
        }
        assert_eq!(direct, factored);
        assert!(direct > 0);
    }

    #[test]
    fn multi_step_chain_consistency_hermitian() {
        // hermitian instance: λ=(1,1), μ1=(1), μ2=(), ν=() at p=3; the
        // weight constraint forces M1 = M2, so the factored sum collapses
        // to the single classical factor G^{(1)}_{(1),()} = 1
        let p = 3u64;
        let lambda = part(&[1, 1]);
        let (mu1, mu2, nu) = (part(&[1]), part(&[]), part(&[]));
        let pm = PairedModule::hermitian(p, lambda.clone()).unwrap();
        let m = &pm.module;
        let size = m.size() as usize;
        let subs = enumerate_submodules(m, 4096).unwrap();
        let all: Vec<u32> = (0..size as u32).collect();

        let mut direct = 0u64;
        for m2 in &subs {
            let perp = BitSet::from_ids(size, &pm.perp(m2));
            let m2_bits = BitSet::from_ids(size, &m2.elems);
            if !perp.is_subset_of(&m2_bits) {
                continue;
            }
            if quotient_type_pair(m, &m2.elems, &perp.ids()).unwrap() != nu {
                continue;
            }
            for m1 in &subs {
                let m1_bits = BitSet::from_ids(size, &m1.elems);
                if !m2_bits.is_subset_of(&m1_bits) {
                    continue;
                }
                if quotient_type_pair(m, &all, &m1.elems).unwrap() == mu1
                    && quotient_type_pair(m, &m1.elems, &m2.elems).unwrap() == mu2
                {
                    direct += 1;
                }
            }
        }

        let rows = paired_scan(PairKind::Hermitian, p, &lambda, 4096).unwrap();
        let ring = Ring::galois(p).unwrap();
        let mut factored = 0u64;
        for w in 0..=lambda.weight() {
            for mu in crate::partitions::partitions_of_weight(w, None, None) {
                let g_mu = count_g_classical(ring, &mu, &mu1, &mu2, 4096).unwrap();
                if g_mu == 0 {
                    continue;
                }
                factored += g_mu * count_g_paired_from_scan(&rows, &mu, &nu);
            }
        }
        assert_eq!(direct, factored);
        assert_eq!(direct, 4); // the q+1 isotropic points
    }

    #[test]
    fn galois_module_enumeration() {
        // o-submodules of (GR(3)/p)² are F_9-subspaces: 12 of them
        let r = Ring::galois(3).unwrap();
        let m = FiniteModule::new(r, part(&[1, 1]));
        assert_eq!(m.size(), 81);
        let subs = enumerate_submodules(&m, 4096).unwrap();
        assert_eq!(subs.len(), 12); // 0, M, and (9²−1)/(9−1) = 10 lines
    }
}
