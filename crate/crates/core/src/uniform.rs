//! Formal unipotent-character vectors with exact dyadic coefficients.
//!
//! Each `ρ_Λ` is an orthonormal basis vector. `R_Σ` and the projections
//! `ρ♯_Λ` are expanded in that basis, and tensor products are keyed by
//! `(Z, Z′, Λ, Λ′)` so that blocks of different special pairs never mix.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::DomainError;
use crate::par::{self, Execution};
use crate::partition::BiPartition;
use crate::relations::{HowePair, RelationKind, Sign};
use crate::special::{pairing, FamilyKind, SinglesSubset, SpecialSymbol};
use crate::symbol::Symbol;

/// A finitely supported vector with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVector<K: Ord> {
    entries: BTreeMap<K, Dyadic>,
}

impl<K: Ord> Default for SparseVector<K> {
    fn default() -> Self {
        SparseVector { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVector<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, key: K, c: Dyadic) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(key.clone()).or_insert(Dyadic::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVector<K>, c: Dyadic) {
        for (k, &v) in &other.entries {
            self.add_term(k.clone(), v * c);
        }
    }

    /// `self += other`; merging is associative and commutative.
    pub fn merge(&mut self, other: &SparseVector<K>) {
        self.add_scaled(other, Dyadic::ONE);
    }

    pub fn scaled(&self, c: Dyadic) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn difference(&self, other: &SparseVector<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, -Dyadic::ONE);
        out
    }

    pub fn get(&self, key: &K) -> Dyadic {
        self.entries.get(key).copied().unwrap_or(Dyadic::ZERO)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, Dyadic)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn dot(&self, other: &SparseVector<K>) -> Dyadic {
        self.iter().fold(Dyadic::ZERO, |acc, (k, v)| acc + v * other.get(k))
    }

    /// Squared coefficient norm.
    pub fn norm_sq(&self) -> Dyadic {
        self.dot(self)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Dyadic)> for SparseVector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Dyadic)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, v) in iter {
            out.add_term(k, v);
        }
        out
    }
}

/// A vector in the span of `{ρ_Λ}` for one family.
pub type SideVector = SparseVector<Symbol>;

/// The basis element `ρ_Λ ⊗ ρ_Λ′` inside the block of `(Z, Z′)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TensorKey {
    #[serde(rename = "Z")]
    pub z: Symbol,
    #[serde(rename = "Zp")]
    pub zp: Symbol,
    pub lam: Symbol,
    pub lamp: Symbol,
}

pub type UniformVector = SparseVector<TensorKey>;

/// One row of the JSON form of a [`UniformVector`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformEntry {
    #[serde(flatten)]
    pub key: TensorKey,
    pub num: i128,
    pub log2den: u32,
}

impl UniformVector {
    /// Entries sorted by key, ready for serialization.
    pub fn to_entries(&self) -> Vec<UniformEntry> {
        self.iter()
            .map(|(k, v)| UniformEntry {
                key: k.clone(),
                num: v.numerator(),
                log2den: v.log2_den(),
            })
            .collect()
    }
}

fn sign_of(bit: u8) -> bool {
    bit == 1
}

fn not_in(z: &SpecialSymbol, sym: &Symbol) -> DomainError {
    DomainError::NotInFamily {
        sym: sym.to_string(),
        root: z.to_string(),
    }
}

fn member(z: &SpecialSymbol, kind: FamilyKind, sym: &Symbol) -> Result<SinglesSubset, DomainError> {
    z.family_masks(kind)?;
    if !z.contains(kind, sym) {
        return Err(not_in(z, sym));
    }
    z.subset_of(sym)
}

pub(crate) fn r_sp_mask(z: &SpecialSymbol, sigma: SinglesSubset, basis: &[SinglesSubset]) -> SideVector {
    let delta = z.degree();
    basis
        .iter()
        .map(|&m| (z.lambda(m), Dyadic::signed_pow2_inv(sign_of(pairing(sigma, m)), delta)))
        .collect()
}

pub(crate) fn r_orth_mask(zp: &SpecialSymbol, sigma: SinglesSubset, sign: Sign, basis: &[SinglesSubset]) -> SideVector {
    if zp.is_degenerate() {
        return match sign {
            Sign::Plus => std::iter::once((zp.symbol().clone(), Dyadic::ONE)).collect(),
            Sign::Minus => SideVector::new(),
        };
    }
    let e = zp.degree() - 1;
    basis
        .iter()
        .map(|&m| (zp.lambda(m), Dyadic::signed_pow2_inv(sign_of(pairing(sigma, m)), e)))
        .collect()
}

/// `R_Σ = 2^{-δ} Σ_{Λ ∈ S_Z} (-1)^{⟨Σ,Λ⟩} ρ_Λ` for `Σ ∈ S_{Z,1}`.
pub fn r_sigma_sp(z: &SpecialSymbol, sigma: &Symbol) -> Result<SideVector, DomainError> {
    let basis = z.family_masks(FamilyKind::Sp)?;
    let s = member(z, FamilyKind::Exact(1), sigma)?;
    Ok(r_sp_mask(z, s, &basis))
}

/// `R_Σ = 2^{-(δ-1)} Σ_{Λ ∈ Sε_{Z′}} (-1)^{⟨Σ,Λ⟩} ρ_Λ` for `Σ ∈ S_{Z′,0}`;
/// `ρ_{Z′}` (ε = +) or zero (ε = −) when `Z′` has no singles.
pub fn r_sigma_orth(zp: &SpecialSymbol, sigma: &Symbol, sign: Sign) -> Result<SideVector, DomainError> {
    let basis = zp.family_masks(sign.family())?;
    let s = member(zp, FamilyKind::Exact(0), sigma)?;
    Ok(r_orth_mask(zp, s, sign, &basis))
}

/// `ρ♯_Λ = 2^{-δ} Σ_{Σ ∈ S_{Z,1}} (-1)^{⟨Σ,Λ⟩} R_Σ`.
pub fn rho_sharp_sp(z: &SpecialSymbol, lam: &Symbol) -> Result<SideVector, DomainError> {
    let basis = z.family_masks(FamilyKind::Sp)?;
    let m = member(z, FamilyKind::Sp, lam)?;
    Ok(rho_sharp_sp_mask(z, m, &basis))
}

fn rho_sharp_sp_mask(z: &SpecialSymbol, m: SinglesSubset, basis: &[SinglesSubset]) -> SideVector {
    let delta = z.degree();
    let mut out = SideVector::new();
    for sigma in z.family_masks(FamilyKind::Exact(1)).unwrap_or_default() {
        let c = Dyadic::signed_pow2_inv(sign_of(pairing(sigma, m)), delta);
        out.add_scaled(&r_sp_mask(z, sigma, basis), c);
    }
    out
}

/// `ρ♯_Λ = 2^{-(δ+1)} Σ_{Σ ∈ S_{Z′,0}} (-1)^{⟨Σ,Λ⟩} R_Σ`; `ρ_{Z′}` itself when
/// `Z′` has no singles.
pub fn rho_sharp_orth(zp: &SpecialSymbol, lam: &Symbol, sign: Sign) -> Result<SideVector, DomainError> {
    let basis = zp.family_masks(sign.family())?;
    let m = member(zp, sign.family(), lam)?;
    Ok(rho_sharp_orth_mask(zp, m, sign, &basis))
}

fn rho_sharp_orth_mask(zp: &SpecialSymbol, m: SinglesSubset, sign: Sign, basis: &[SinglesSubset]) -> SideVector {
    if zp.is_degenerate() {
        return r_orth_mask(zp, SinglesSubset::EMPTY, sign, basis);
    }
    let e = zp.degree() + 1;
    let mut out = SideVector::new();
    for sigma in zp.family_masks(FamilyKind::Exact(0)).unwrap_or_default() {
        let c = Dyadic::signed_pow2_inv(sign_of(pairing(sigma, m)), e);
        out.add_scaled(&r_orth_mask(zp, sigma, sign, basis), c);
    }
    out
}

/// Linear extension of `ρ_Λ ↦ ρ♯_Λ` on the `Z` side.
pub fn sharp_sp(z: &SpecialSymbol, v: &SideVector) -> Result<SideVector, DomainError> {
    let mut out = SideVector::new();
    for (lam, c) in v.iter() {
        out.add_scaled(&rho_sharp_sp(z, lam)?, c);
    }
    Ok(out)
}

/// Linear extension of `ρ_Λ ↦ ρ♯_Λ` on the `Z′` side.
pub fn sharp_orth(zp: &SpecialSymbol, v: &SideVector, sign: Sign) -> Result<SideVector, DomainError> {
    let mut out = SideVector::new();
    for (lam, c) in v.iter() {
        out.add_scaled(&rho_sharp_orth(zp, lam, sign)?, c);
    }
    Ok(out)
}

/// `Σ a_Λ b_Λ′ ρ_Λ ⊗ ρ_Λ′`, scaled, in the block of `(z, zp)`.
pub fn tensor(z: &Symbol, zp: &Symbol, left: &SideVector, right: &SideVector, scale: Dyadic) -> UniformVector {
    let mut out = UniformVector::new();
    for (lam, a) in left.iter() {
        for (lamp, b) in right.iter() {
            let key = TensorKey {
                z: z.clone(),
                zp: zp.clone(),
                lam: lam.clone(),
                lamp: lamp.clone(),
            };
            out.add_term(key, a * b * scale);
        }
    }
    out
}

/// Weight of one `(Σ, Σ′)` term in the `½ Σ_D` sums. A degenerate `Σ′` is its
/// own transpose, so the two terms `(Σ, Σ′)` and `(Σ, Σ′^t)` coincide and the
/// single surviving term carries both halves.
pub fn d_pair_weight(degenerate: bool) -> Dyadic {
    if degenerate {
        Dyadic::ONE
    } else {
        Dyadic::new(1, 1)
    }
}

/// `½ Σ_{(Σ,Σ′) ∈ D} R_Σ ⊗ R_Σ′`.
pub fn theorem_lhs(p: &HowePair, sign: Sign) -> UniformVector {
    let (z, zp) = (p.z(), p.zp());
    let basis = z.family_masks(FamilyKind::Sp).expect("defect 1");
    let basis_p = zp.family_masks(sign.family()).expect("defect 0");
    let weight = d_pair_weight(zp.is_degenerate());
    let mut out = UniformVector::new();
    for (s, sp) in p.relation_masks(RelationKind::D) {
        let r = r_sp_mask(z, s, &basis);
        let rp = r_orth_mask(zp, sp, sign, &basis_p);
        out.merge(&tensor(z.symbol(), zp.symbol(), &r, &rp, weight));
    }
    out
}

/// `Σ_{(Λ,Λ′) ∈ Bε} ρ♯_Λ ⊗ ρ♯_Λ′`.
pub fn theorem_rhs(p: &HowePair, sign: Sign) -> UniformVector {
    let (z, zp) = (p.z(), p.zp());
    let basis = z.family_masks(FamilyKind::Sp).expect("defect 1");
    let basis_p = zp.family_masks(sign.family()).expect("defect 0");
    let mut out = UniformVector::new();
    for (m, n) in p.relation_masks(RelationKind::B(sign)) {
        let a = rho_sharp_sp_mask(z, m, &basis);
        let b = rho_sharp_orth_mask(zp, n, sign, &basis_p);
        out.merge(&tensor(z.symbol(), zp.symbol(), &a, &b, Dyadic::ONE));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub equal: bool,
    /// Left side minus right side.
    pub diff: UniformVector,
}

impl IdentityCheck {
    fn of(lhs: &UniformVector, rhs: &UniformVector) -> Self {
        let diff = lhs.difference(rhs);
        IdentityCheck { equal: diff.is_empty(), diff }
    }
}

pub fn verify_theorem(p: &HowePair, sign: Sign) -> IdentityCheck {
    IdentityCheck::of(&theorem_lhs(p, sign), &theorem_rhs(p, sign))
}

/// The twist `ε_0`: swap the two halves of a bi-partition.
pub fn epsilon0(b: &BiPartition) -> BiPartition {
    b.swapped()
}

/// Constituents of the induction of `χ_b ⊗ 1` from `W_k × W_{n-k}` to `W_n`.
pub fn induced_bipartitions(b: &BiPartition, n: u32) -> Result<Vec<BiPartition>, DomainError> {
    let k = b.size();
    if k > n {
        return Err(DomainError::InductionTooSmall { k, n });
    }
    Ok(b.top
        .horizontal_extensions(n - k)
        .into_iter()
        .map(|lambda| BiPartition::new(lambda, b.bottom.clone()))
        .collect())
}

/// `½ Σ_k Σ_{χ ⊢ k} R_{I_{n,k}(χ)} ⊗ R_{I_{n′,k}(ε_0 χ)}` expanded into blocks.
pub fn amr_uniform(n: u32, n_prime: u32, sign: Sign) -> UniformVector {
    let mut out = UniformVector::new();
    for k in 0..=n.min(n_prime) {
        for chi in BiPartition::all_of(k) {
            let lefts = induced_bipartitions(&chi, n).expect("k <= n");
            let rights = induced_bipartitions(&epsilon0(&chi), n_prime).expect("k <= n'");
            for l in &lefts {
                let sigma = Symbol::upsilon_inverse(l, 1);
                let z = SpecialSymbol::root_of(&sigma).expect("defect-1 family root");
                let r = r_sigma_sp(&z, &sigma).expect("Σ lies in S_{Z,1}");
                for rp in rights.iter() {
                    let sigma_p = Symbol::upsilon_inverse(rp, 0);
                    let zp = SpecialSymbol::root_of(&sigma_p).expect("defect-0 family root");
                    let r2 = r_sigma_orth(&zp, &sigma_p, sign).expect("Σ′ lies in S_{Z′,0}");
                    out.merge(&tensor(z.symbol(), zp.symbol(), &r, &r2, d_pair_weight(zp.is_degenerate())));
                }
            }
        }
    }
    out
}

/// `Σ theorem_lhs` over every special pair of ranks `(n, n′)`.
pub fn block_sum(n: u32, n_prime: u32, sign: Sign, exec: Execution) -> UniformVector {
    let pairs = special_pairs(n, n_prime);
    let blocks = par::map(exec, &pairs, |p| theorem_lhs(p, sign));
    let mut out = UniformVector::new();
    for b in &blocks {
        out.merge(b);
    }
    out
}

/// All `(Z, Z′)` with `Z` special of rank `n`, defect 1 and `Z′` special of
/// rank `n′`, defect 0.
pub fn special_pairs(n: u32, n_prime: u32) -> Vec<HowePair> {
    let zs = SpecialSymbol::enumerate(n, 1);
    let zps = SpecialSymbol::enumerate(n_prime, 0);
    zs.iter()
        .flat_map(|z| {
            zps.iter()
                .map(move |zp| HowePair::new(z.clone(), zp.clone()).expect("defects 1 and 0"))
        })
        .collect()
}

pub fn verify_amr_consistency(n: u32, n_prime: u32, sign: Sign) -> IdentityCheck {
    IdentityCheck::of(&amr_uniform(n, n_prime, sign), &block_sum(n, n_prime, sign, Execution::Sequential))
}
