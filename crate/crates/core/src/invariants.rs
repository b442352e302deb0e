//! Named invariant checks over single objects, plus seeded random suites
//! built on them. Every check returns its violations; empty means it held.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cores::{core, core_prime, decomposition_check};
use crate::dyadic::Dyadic;
use crate::partition::Partition;
use crate::regular::{iso_h, iso_h_prime, model_symbols, theta, theta_minus, theta_plus, Direction};
use crate::relations::{HowePair, RelationKind, Side, Sign};
use crate::special::{pairing, FamilyKind, SinglesSubset, SpecialSymbol};
use crate::symbol::Symbol;
use crate::uniform::{
    r_sigma_orth, r_sigma_sp, rho_sharp_orth, rho_sharp_sp, sharp_orth, sharp_sp, theorem_lhs, verify_theorem,
    SideVector,
};

pub type Violations = Vec<String>;

macro_rules! ensure {
    ($out:expr, $cond:expr, $($fmt:tt)+) => {
        if !$cond {
            $out.push(format!($($fmt)+));
        }
    };
}

// ---------------------------------------------------------------- partitions

/// Transpose involution, the box criterion for the transpose, the
/// transposed-dominance shortcut and horizontal strips.
pub fn partition_laws(p: &Partition, q: &Partition) -> Violations {
    let mut out = Vec::new();
    let t = p.transpose();
    ensure!(out, t.transpose() == *p, "transpose not an involution at {p}");
    ensure!(out, t.weight() == p.weight(), "transpose changes weight at {p}");
    for i in 1..=p.len() + 1 {
        for j in 1..=p.part(0) as usize + 1 {
            let lhs = j as u32 <= p.part(i - 1);
            let rhs = t.part(j - 1) as usize >= i;
            ensure!(out, lhs == rhs, "transpose box criterion fails at {p}, i={i}, j={j}");
        }
    }
    let fast = p.precedes_transposed(q);
    let slow = t.precedes(&q.transpose());
    ensure!(out, fast == slow, "transposed-dominance shortcut fails at ({p}, {q}): {fast} vs {slow}");
    for boxes in 0..=3 {
        let ext = p.horizontal_extensions(boxes);
        let brute: Vec<Partition> = Partition::all_of(p.weight() + boxes)
            .into_iter()
            .filter(|e| t.precedes(&e.transpose()))
            .collect();
        ensure!(out, ext == brute, "horizontal strips of {p} by {boxes} disagree with brute force");
    }
    out
}

// ------------------------------------------------------------------- symbols

/// Shift equivalence, the Υ bijection and rank bookkeeping.
pub fn symbol_laws(s: &Symbol) -> Violations {
    let mut out = Vec::new();
    for k in 0..3 {
        ensure!(out, s.inflate(k).reduce() == *s, "reduce after inflate by {k} moves {s}");
    }
    let b = s.upsilon();
    let d = s.defect();
    ensure!(out, Symbol::upsilon_inverse(&b, d) == *s, "Υ does not round-trip at {s}");
    let floor_sq = (d * d / 4) as u32;
    ensure!(out, s.rank() == b.size() + floor_sq, "rank of {s} is not |Υ| + ⌊def²/4⌋");
    ensure!(out, s.rank() >= floor_sq, "rank of {s} below the minimum for its defect");
    let t = s.transpose();
    ensure!(out, t.defect() == -d && t.rank() == s.rank(), "transpose of {s} breaks defect or rank");
    ensure!(out, t.transpose() == *s, "transpose not an involution at {s}");
    out
}

// ------------------------------------------------------------------- special

/// Transpose identity, transpose of a sum, the pairing, family bookkeeping and
/// cardinalities for one special symbol.
pub fn special_laws(z: &SpecialSymbol) -> Violations {
    let mut out = Vec::new();
    let k = z.num_singles();
    let full = z.full();
    let all: Vec<SinglesSubset> = (0..1u64 << k).map(SinglesSubset).collect();
    for &m in &all {
        let lam = z.lambda(m);
        ensure!(out, z.subset_of(&lam).ok() == Some(m), "subset_of(Λ_M) ≠ M in {z}");
        ensure!(out, z.defect_of(m) == lam.defect(), "defect_of disagrees with Λ_M in {z}");
        ensure!(
            out,
            lam.transpose() == z.lambda(full.sym_diff(m)),
            "(Λ_M)^t ≠ Λ_(Z_I∖M) for M={} in {z}",
            z.subset_literal(m)
        );
    }
    // transpose of a sum and bilinearity are quadratic and cubic in 2^k
    let pairs_cap = if k <= 6 { all.len() } else { 16 };
    for &m in &all[..pairs_cap] {
        for &n in &all {
            let sum = z.lambda(m.sym_diff(n));
            let lhs = sum.transpose();
            let rhs = z.lambda(full.sym_diff(m).sym_diff(n));
            ensure!(out, lhs == rhs, "transpose of a sum fails in {z}");
            for &w in all.iter().take(if k <= 5 { all.len() } else { 8 }) {
                let lin = pairing(m.sym_diff(n), w) == pairing(m, w) ^ pairing(n, w);
                ensure!(out, lin, "pairing not bilinear in {z}");
            }
        }
    }
    for &m in all.iter().skip(1) {
        ensure!(out, all.iter().any(|&n| pairing(m, n) == 1), "pairing degenerate at {}", z.subset_literal(m));
    }
    let count = |kind| z.family_masks(kind).map(|v| v.len()).unwrap_or(0);
    let delta = z.degree();
    match z.defect() {
        1 => {
            ensure!(out, count(FamilyKind::Sp) == 1 << (2 * delta), "|S_Z| ≠ 2^(2δ) for {z}");
        }
        0 if z.is_degenerate() => {
            ensure!(out, z.family(FamilyKind::Plus).ok() == Some(vec![z.symbol().clone()]), "S+ of degenerate {z}");
            ensure!(out, count(FamilyKind::Minus) == 0, "S− of degenerate {z} is not empty");
        }
        0 => {
            let half = 1 << (2 * delta - 1);
            ensure!(out, count(FamilyKind::Plus) == half, "|S+_Z| ≠ 2^(2δ-1) for {z}");
            ensure!(out, count(FamilyKind::Minus) == half, "|S−_Z| ≠ 2^(2δ-1) for {z}");
        }
        d => out.push(format!("{z} has defect {d}")),
    }
    ensure!(out, count(FamilyKind::Bar) == 1 << k, "|S̄_Z| ≠ 2^|Z_I| for {z}");
    out
}

// ----------------------------------------------------------------- relations

/// The inequality test against the definition, the transpose flip, the
/// base point of `D` and closure into `Bε`.
pub fn relation_laws(p: &HowePair) -> Violations {
    let mut out = Vec::new();
    let label = format!("({}, {})", p.z(), p.zp());
    for sign in Sign::BOTH {
        let bad = p.ineq_mismatches(sign);
        ensure!(out, bad.is_empty(), "inequality test mismatch at {label} {sign}: {} pairs", bad.len());
    }
    let (full, full_p) = (p.z().full(), p.zp().full());
    for m in p.masks(Side::Left, FamilyKind::Bar) {
        for n in p.masks(Side::Right, FamilyKind::Bar) {
            let plus = p.bar(Sign::Plus, m, n);
            let minus = p.bar(Sign::Minus, full.sym_diff(m), full_p.sym_diff(n));
            ensure!(out, plus == minus, "transpose flip fails at {label}");
            if p.z().defect_of(m).rem_euclid(4) == 1 {
                for sign in Sign::BOTH {
                    if p.bar(sign, m, n) {
                        ensure!(
                            out,
                            p.zp().contains(sign.family(), p.lambda_prime(n)),
                            "closure into B{sign} fails at {label}"
                        );
                    }
                }
            }
        }
    }
    let d = p.relation_masks(RelationKind::D);
    if !d.is_empty() {
        ensure!(out, p.size_compatible(), "D nonempty for size-incompatible {label}");
        ensure!(
            out,
            p.related_masks(RelationKind::D, SinglesSubset::EMPTY, SinglesSubset::EMPTY),
            "D nonempty but (Z, Z′) ∉ D at {label}"
        );
    }
    out
}

// --------------------------------------------------------------------- cores

fn bar_fiber(p: &HowePair, sign: Sign, side: Side, fixed: SinglesSubset) -> BTreeSet<SinglesSubset> {
    p.fiber_masks(RelationKind::Bar(sign), side, fixed).into_iter().collect()
}

/// Core fibers and their shapes, translation and splitting of core pairs,
/// uniqueness in `S^{+,Ψ′0}`, the decomposition of `Bε`, and the regular
/// chain laws.
pub fn core_laws(p: &HowePair) -> Violations {
    let mut out = Vec::new();
    let label = format!("({}, {})", p.z(), p.zp());
    let (c, cp) = match (core(p), core_prime(p)) {
        (Ok(c), Ok(cp)) => (c, cp),
        (Err(e), _) | (_, Err(e)) => return vec![format!("core structure falsified: {e}")],
    };
    for sign in Sign::BOTH {
        match decomposition_check(p, sign) {
            Ok(true) => {}
            Ok(false) => out.push(format!("B{sign} does not decompose over the cores at {label}")),
            Err(e) => out.push(e.to_string()),
        }
    }
    if !c.d_nonempty {
        return out;
    }
    let (z, zp) = (p.z(), p.zp());
    let lefts = p.masks(Side::Left, FamilyKind::Bar);
    let rights = p.masks(Side::Right, FamilyKind::Bar);
    let d_z: Vec<SinglesSubset> = p.fiber_masks(RelationKind::D, Side::Left, SinglesSubset::EMPTY);
    let d_zp: Vec<SinglesSubset> = p.fiber_masks(RelationKind::D, Side::Right, SinglesSubset::EMPTY);

    // translating by a core pair preserves B̄+
    for pair in cp.pairs.pairs() {
        let t = pair.mask(zp);
        for &m in &lefts {
            for &n in &rights {
                ensure!(
                    out,
                    p.bar(Sign::Plus, m, n) == p.bar(Sign::Plus, m, n.sym_diff(t)),
                    "core translation (left) fails at {label} for {pair}"
                );
            }
        }
    }
    for pair in c.pairs.pairs() {
        let t = pair.mask(z);
        for &m in &lefts {
            for &n in &rights {
                ensure!(
                    out,
                    p.bar(Sign::Plus, m, n) == p.bar(Sign::Plus, m.sym_diff(t), n),
                    "core translation (right) fails at {label} for {pair}"
                );
            }
        }
    }
    // splitting a core pair kills occurrence
    for &n in &rights {
        let splits = cp.pairs.pairs().iter().any(|pair| n.intersect(pair.mask(zp)).len() == 1);
        if splits {
            ensure!(
                out,
                bar_fiber(p, Sign::Plus, Side::Right, n).is_empty(),
                "core splitting fails at {label}: {} occurs",
                zp.subset_literal(n)
            );
        }
    }
    // the shape of B̄ε fibers, both signs
    for sign in Sign::BOTH {
        for &m in &lefts {
            let fiber = bar_fiber(p, sign, Side::Left, m);
            if let Some(&n0) = fiber.iter().next() {
                let expected: BTreeSet<_> = d_z.iter().map(|&d| n0.sym_diff(d)).collect();
                ensure!(out, fiber == expected, "left fiber shape fails at {label} {sign}");
            }
        }
        for &n in &rights {
            let fiber = bar_fiber(p, sign, Side::Right, n);
            if let Some(&m0) = fiber.iter().next() {
                let expected: BTreeSet<_> = d_zp.iter().map(|&d| m0.sym_diff(d)).collect();
                ensure!(out, fiber == expected, "right fiber shape fails at {label} {sign}");
            }
        }
    }
    // uniqueness inside the core-avoiding family
    let avoid = cp.pairs.mask(zp);
    for m in p.masks(Side::Left, FamilyKind::Sp) {
        let fiber = p.fiber_masks(RelationKind::B(Sign::Plus), Side::Left, m);
        if !fiber.is_empty() {
            let hits = fiber.iter().filter(|n| n.intersect(avoid).is_empty()).count();
            ensure!(out, hits == 1, "|B+_Λ ∩ S^(+,Ψ′0)| = {hits} at {label}");
        }
    }
    out.extend(regular_chain_laws(p, &d_z, &d_zp));
    out
}

fn regular_chain_laws(p: &HowePair, d_z: &[SinglesSubset], d_zp: &[SinglesSubset]) -> Violations {
    let mut out = Vec::new();
    let label = format!("({}, {})", p.z(), p.zp());
    let (z, zp) = (p.z(), p.zp());
    let (a, b) = (z.symbol().top(), z.symbol().bottom());
    let (c, d) = (zp.symbol().top(), zp.symbol().bottom());
    let only_root = |f: &[SinglesSubset]| f == [SinglesSubset::EMPTY];
    let (m, mp) = (p.m(), p.m_prime());
    if mp == m + 1 && zp.is_regular() && only_root(d_z) {
        let ok = a.iter().zip(c).all(|(ai, ci)| ci > ai) && b.iter().zip(d).all(|(bi, di)| di > bi);
        ensure!(out, ok, "entrywise growth (m′ = m + 1) fails at {label}");
        ensure!(out, z.is_regular(), "regularity transfer (m′ = m + 1) fails at {label}");
        ensure!(out, only_root(d_zp), "root-only fiber (m′ = m + 1) fails at {label}");
    }
    if mp == m && z.is_regular() && only_root(d_zp) {
        let ok = a.iter().zip(c).all(|(ai, ci)| ai > ci) && b.iter().zip(d).all(|(bi, di)| bi > di);
        ensure!(out, ok, "entrywise growth (m′ = m) fails at {label}");
        ensure!(out, zp.is_regular(), "regularity transfer (m′ = m) fails at {label}");
        ensure!(out, only_root(d_z), "root-only fiber (m′ = m) fails at {label}");
    }
    let both_regular = z.is_regular() && zp.is_regular();
    let occurs_all = |side: Side, sign: Sign| {
        p.masks(side, FamilyKind::Bar)
            .into_iter()
            .all(|x| !bar_fiber(p, sign, side, x).is_empty())
    };
    // the fiber hypotheses are the ones the growth and root-only laws use;
    // read with D_{Z′} and D_Z exchanged full occurrence already fails at ([1|], [1|0])
    if both_regular && mp == m + 1 && only_root(d_z) {
        for sign in Sign::BOTH {
            ensure!(out, occurs_all(Side::Left, sign), "full occurrence (m′ = m + 1) fails at {label} {sign}");
        }
    }
    if both_regular && mp == m && only_root(d_zp) {
        for sign in Sign::BOTH {
            ensure!(out, occurs_all(Side::Right, sign), "full occurrence (m′ = m) fails at {label} {sign}");
        }
    }
    out
}

// ---------------------------------------------------------------------- maps

/// Whether the θ-map laws apply: both regular and `D` one-to-one.
pub fn maps_apply(p: &HowePair) -> bool {
    p.z().is_regular()
        && p.zp().is_regular()
        && p.size_compatible()
        && crate::cores::is_one_to_one(p).unwrap_or(false)
}

/// θ± graphs against the `B̄±` fibers, the θ± coherence identity, `h`/`h′` pairing
/// preservation and transport of `Bε` to the model pair.
pub fn map_laws(p: &HowePair) -> Violations {
    let mut out = Vec::new();
    if !maps_apply(p) {
        return out;
    }
    let label = format!("({}, {})", p.z(), p.zp());
    let dir = match theta(p) {
        Ok((dir, _)) => dir,
        Err(e) => return vec![format!("θ undefined at {label}: {e}")],
    };
    let (src, dst) = match dir {
        Direction::ZToZp => (p.z(), p.zp()),
        Direction::ZpToZ => (p.zp(), p.z()),
    };
    let src_side = match dir {
        Direction::ZToZp => Side::Left,
        Direction::ZpToZ => Side::Right,
    };
    for sign in Sign::BOTH {
        for s in p.masks(src_side, FamilyKind::Bar) {
            let input = src.lambda(s);
            let image = match sign {
                Sign::Plus => theta_plus(p, &input),
                Sign::Minus => theta_minus(p, &input),
            };
            let image = match image {
                Ok(x) => x,
                Err(e) => {
                    out.push(format!("θ{sign} fails on {input} at {label}: {e}"));
                    continue;
                }
            };
            let fiber: Vec<Symbol> = bar_fiber(p, sign, src_side, s)
                .into_iter()
                .map(|t| dst.lambda(t))
                .collect();
            ensure!(
                out,
                fiber == [image.clone()],
                "graph of θ{sign} differs from B̄{sign} at {label} on {input}"
            );
        }
    }
    for s in p.masks(src_side, FamilyKind::Bar) {
        let lam = src.lambda(s);
        let lhs = theta_plus(p, &lam).map(|x| x.transpose());
        let rhs = theta_minus(p, &lam.transpose());
        ensure!(out, lhs.is_ok() && lhs == rhs, "θ coherence fails on {lam} at {label}");
    }
    let (h, hp) = match (iso_h(p.z()), iso_h_prime(p.zp())) {
        (Ok(h), Ok(hp)) => (h, hp),
        _ => return vec![format!("h or h′ undefined at {label}")],
    };
    let model_z = model_symbols(p.m() as u32).0;
    let model_zp = model_symbols(p.m_prime() as u32).1;
    let model = HowePair::new(model_z.clone(), model_zp.clone()).expect("model defects");
    for (sym, map, target) in [(p.z(), &h, &model_z), (p.zp(), &hp, &model_zp)] {
        let k = sym.num_singles();
        for m1 in (0..1u64 << k).map(SinglesSubset) {
            for m2 in (0..1u64 << k).map(SinglesSubset) {
                let img = |m| map.apply(sym, target, m).expect("regular relabeling");
                let same = m1.intersect(m2).len() == img(m1).intersect(img(m2)).len();
                ensure!(out, same, "relabeling onto {target} does not preserve intersections");
            }
        }
    }
    for sign in Sign::BOTH {
        let kind = RelationKind::B(sign);
        for m in p.masks(Side::Left, FamilyKind::Sp) {
            for n in p.masks(Side::Right, sign.family()) {
                let hm = h.apply(p.z(), &model_z, m).expect("regular");
                let hn = hp.apply(p.zp(), &model_zp, n).expect("regular");
                ensure!(
                    out,
                    p.related_masks(kind, m, n) == model.related_masks(kind, hm, hn),
                    "B{sign} not transported to the model pair at {label}"
                );
            }
        }
    }
    out
}

// ------------------------------------------------------------------- uniform

fn gram_projection(basis: &[(SideVector, Dyadic)], v: &SideVector) -> SideVector {
    // Σ ⟨v, b⟩ b / w over an orthogonal spanning family with weights w = ‖b‖²
    // (each weight here is a power of two, so division stays dyadic)
    let mut out = SideVector::new();
    for (b, w) in basis {
        let inv = Dyadic::new(1, w.numerator().trailing_zeros());
        out.add_scaled(b, v.dot(b) * inv);
    }
    out
}

/// Norms, orthogonality and the projection laws on the `Sp` side.
pub fn uniform_sp_laws(z: &SpecialSymbol) -> Violations {
    let mut out = Vec::new();
    let sigmas = z.family(FamilyKind::Exact(1)).unwrap_or_default();
    let rs: Vec<SideVector> = sigmas.iter().map(|s| r_sigma_sp(z, s).expect("Σ ∈ S_{Z,1}")).collect();
    for (i, r) in rs.iter().enumerate() {
        for (j, r2) in rs.iter().enumerate() {
            let expected = if i == j { Dyadic::ONE } else { Dyadic::ZERO };
            ensure!(out, r.dot(r2) == expected, "R_Σ not orthonormal in {z}");
        }
    }
    let basis: Vec<(SideVector, Dyadic)> = rs.into_iter().map(|r| (r, Dyadic::ONE)).collect();
    let full = z.full();
    for lam_m in z.family_masks(FamilyKind::Sp).unwrap_or_default() {
        let lam = z.lambda(lam_m);
        let sharp = rho_sharp_sp(z, &lam).expect("Λ ∈ S_Z");
        ensure!(out, !sharp.is_empty(), "ρ♯ vanishes at {lam} in {z}");
        let rho: SideVector = [(lam.clone(), Dyadic::ONE)].into_iter().collect();
        ensure!(out, gram_projection(&basis, &rho) == sharp, "ρ♯ is not the projection at {lam} in {z}");
        ensure!(out, sharp_sp(z, &sharp).ok() == Some(sharp.clone()), "♯ not idempotent at {lam} in {z}");
        for s in z.family_masks(FamilyKind::Exact(1)).unwrap_or_default() {
            let a = pairing(s, lam_m);
            let b = pairing(full.sym_diff(s), lam_m);
            ensure!(out, a == b, "Sp pairing not transpose-consistent in {z}");
        }
    }
    out
}

/// Norms, the sign rule, the pairing under transpose and the projection laws on the
/// orthogonal side.
pub fn uniform_orth_laws(zp: &SpecialSymbol, sign: Sign) -> Violations {
    let mut out = Vec::new();
    let sigmas = zp.family(FamilyKind::Exact(0)).unwrap_or_default();
    let mut basis = Vec::new();
    for s in &sigmas {
        let r = r_sigma_orth(zp, s, sign).expect("Σ ∈ S_{Z′,0}");
        let rt = r_sigma_orth(zp, &s.transpose(), sign).expect("Σ^t ∈ S_{Z′,0}");
        let expected = match sign {
            Sign::Plus => r.clone(),
            Sign::Minus => r.scaled(-Dyadic::ONE),
        };
        ensure!(out, rt == expected, "sign rule fails for {s} in {zp} {sign}");
        let norm = r.norm_sq();
        match (zp.is_degenerate(), sign) {
            (true, Sign::Plus) => ensure!(out, norm == Dyadic::ONE, "‖R‖² ≠ 1 for degenerate {zp}"),
            (true, Sign::Minus) => ensure!(out, r.is_empty(), "R− nonzero for degenerate {zp}"),
            (false, _) => ensure!(out, norm == Dyadic::from_int(2), "‖R‖² ≠ 2 for {s} in {zp} {sign}"),
        }
        if !r.is_empty() {
            basis.push((r, norm));
        }
    }
    let full = zp.full();
    for lam_m in zp.family_masks(sign.family()).unwrap_or_default() {
        let lam = zp.lambda(lam_m);
        let sharp = rho_sharp_orth(zp, &lam, sign).expect("Λ ∈ Sε");
        ensure!(out, !sharp.is_empty(), "ρ♯ vanishes at {lam} in {zp} {sign}");
        let flipped = rho_sharp_orth(zp, &lam.transpose(), sign).expect("Λ^t ∈ Sε");
        ensure!(out, flipped == sharp, "ρ♯_Λ ≠ ρ♯_(Λ^t) at {lam} in {zp} {sign}");
        let rho: SideVector = [(lam.clone(), Dyadic::ONE)].into_iter().collect();
        // Σ and Σ^t span the same line, so every line is counted twice
        let projected = if zp.is_degenerate() {
            gram_projection(&basis, &rho)
        } else {
            gram_projection(&basis, &rho).scaled(Dyadic::new(1, 1))
        };
        ensure!(out, projected == sharp, "ρ♯ is not the projection at {lam} in {zp} {sign}");
        ensure!(
            out,
            sharp_orth(zp, &sharp, sign).ok() == Some(sharp.clone()),
            "♯ not idempotent at {lam} in {zp} {sign}"
        );
        for s in zp.family_masks(FamilyKind::Exact(0)).unwrap_or_default() {
            ensure!(out, pairing(s, lam_m) == pairing(s, full.sym_diff(lam_m)), "pairing under Λ^t fails in {zp}");
            let flips = pairing(full.sym_diff(s), lam_m) != pairing(s, lam_m);
            ensure!(out, flips == (sign == Sign::Minus), "pairing under Σ^t fails in {zp} {sign}");
        }
    }
    out
}

/// The main identity for both signs, and the zero-sum corollary.
pub fn theorem_laws(p: &HowePair) -> Violations {
    let mut out = Vec::new();
    let label = format!("({}, {})", p.z(), p.zp());
    for sign in Sign::BOTH {
        let check = verify_theorem(p, sign);
        ensure!(out, check.equal, "main identity fails at {label} {sign}: {} nonzero terms", check.diff.len());
    }
    if let Ok(cp) = core_prime(p) {
        if cp.pairs.mask(p.zp()) == p.zp().full() {
            ensure!(out, theorem_lhs(p, Sign::Minus).is_empty(), "zero-sum corollary fails at {label}");
        }
    }
    out
}

// -------------------------------------------------------------------- suites

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Partitions,
    Symbols,
    Special,
    Relations,
    Cores,
    Maps,
    Uniform,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Partitions,
        Suite::Symbols,
        Suite::Special,
        Suite::Relations,
        Suite::Cores,
        Suite::Maps,
        Suite::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Partitions => "partitions",
            Suite::Symbols => "symbols",
            Suite::Special => "special",
            Suite::Relations => "relations",
            Suite::Cores => "cores",
            Suite::Maps => "maps",
            Suite::Uniform => "uniform",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Outcome of one named check over a batch of random cases.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
    /// The first few violation messages.
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

const MAX_EXAMPLES: usize = 5;

struct Runner {
    rng: ChaCha8Rng,
    checks: Vec<CheckReport>,
}

impl Runner {
    fn record<T>(&mut self, name: &'static str, inputs: &[T], law: impl Fn(&T) -> Violations) {
        let mut report = CheckReport { name, cases: inputs.len(), violations: 0, examples: Vec::new() };
        for x in inputs {
            let v = law(x);
            report.violations += v.len();
            let room = MAX_EXAMPLES.saturating_sub(report.examples.len());
            report.examples.extend(v.into_iter().take(room));
        }
        self.checks.push(report);
    }

    fn pick<T: Clone>(&mut self, pool: &[T], count: usize) -> Vec<T> {
        (0..count).filter_map(|_| pool.choose(&mut self.rng).cloned()).collect()
    }

    fn partitions(&mut self, count: usize) -> Vec<(Partition, Partition)> {
        (0..count)
            .map(|_| {
                let n = self.rng.gen_range(0..=9);
                let a = Partition::all_of(n);
                let p = a.choose(&mut self.rng).expect("nonempty").clone();
                let q = Partition::all_of(n + self.rng.gen_range(0..=3));
                (p, q.choose(&mut self.rng).expect("nonempty").clone())
            })
            .collect()
    }

    fn symbols(&mut self, count: usize) -> Vec<Symbol> {
        (0..count)
            .map(|_| {
                let beta = self.rng.gen_range(-4..=5);
                let n = crate::symbol::min_rank(beta) + self.rng.gen_range(0..=4);
                let all = Symbol::enumerate(n, beta);
                all.choose(&mut self.rng).expect("rank at least the minimum").clone()
            })
            .collect()
    }

    fn specials(&mut self, count: usize, max_rank: u32) -> Vec<SpecialSymbol> {
        let pool: Vec<SpecialSymbol> = (0..=max_rank)
            .flat_map(|n| [0, 1].into_iter().flat_map(move |d| SpecialSymbol::enumerate(n, d)))
            .collect();
        self.pick(&pool, count)
    }

    fn pairs(&mut self, count: usize, max_rank: u32, filter: impl Fn(&HowePair) -> bool) -> Vec<HowePair> {
        let zs: Vec<SpecialSymbol> = (0..=max_rank).flat_map(|n| SpecialSymbol::enumerate(n, 1)).collect();
        let zps: Vec<SpecialSymbol> = (0..=max_rank).flat_map(|n| SpecialSymbol::enumerate(n, 0)).collect();
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < count && attempts < 200 * count {
            attempts += 1;
            let z = zs.choose(&mut self.rng).expect("nonempty").clone();
            let zp = zps.choose(&mut self.rng).expect("nonempty").clone();
            let p = HowePair::new(z, zp).expect("defects 1 and 0");
            if filter(&p) {
                out.push(p);
            }
        }
        out
    }
}

/// Runs a suite on `cases` random inputs per check, deterministically in
/// `seed`.
pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> SuiteReport {
    let mut r = Runner { rng: ChaCha8Rng::seed_from_u64(seed), checks: Vec::new() };
    let parts: &[Suite] = if suite == Suite::All { &Suite::EACH } else { std::slice::from_ref(&suite) };
    for &s in parts {
        match s {
            Suite::Partitions => {
                let xs = r.partitions(cases);
                r.record("partition_laws", &xs, |(p, q)| partition_laws(p, q));
            }
            Suite::Symbols => {
                let xs = r.symbols(cases);
                r.record("symbol_laws", &xs, symbol_laws);
            }
            Suite::Special => {
                let xs = r.specials(cases, 7);
                r.record("special_laws", &xs, special_laws);
            }
            Suite::Relations => {
                let xs = r.pairs(cases, 6, |_| true);
                r.record("relation_laws (inequality test, transpose flip)", &xs, relation_laws);
            }
            Suite::Cores => {
                let xs = r.pairs(cases, 6, HowePair::size_compatible);
                r.record("core_laws", &xs, core_laws);
            }
            Suite::Maps => {
                let xs = r.pairs(cases, 7, maps_apply);
                r.record("map_laws", &xs, map_laws);
            }
            Suite::Uniform => {
                let zs: Vec<SpecialSymbol> = r.specials(cases, 6);
                let (sp, orth): (Vec<_>, Vec<_>) = zs.into_iter().partition(|z| z.defect() == 1);
                r.record("uniform_sp_laws (norms)", &sp, uniform_sp_laws);
                r.record("uniform_orth_laws (norms, sign rule)", &orth, |z| {
                    Sign::BOTH.iter().flat_map(|&s| uniform_orth_laws(z, s)).collect()
                });
                let xs = r.pairs(cases / 2 + 1, 5, |_| true);
                r.record("theorem_laws", &xs, theorem_laws);
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    let passed = r.checks.iter().all(|c| c.violations == 0);
    SuiteReport { suite, seed, checks: r.checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(z: &str, zp: &str) -> HowePair {
        HowePair::parse(z, zp).unwrap()
    }

    #[test]
    fn laws_hold_on_examples() {
        let p: Partition = "2,1".parse().unwrap();
        let q: Partition = "3,1".parse().unwrap();
        assert!(partition_laws(&p, &q).is_empty());
        assert!(symbol_laws(&"[2,0|1]".parse().unwrap()).is_empty());
        for lit in ["[2,0|1]", "[1|0]", "[1|1]", "[3,1|2,0]"] {
            assert!(special_laws(&SpecialSymbol::parse(lit).unwrap()).is_empty(), "{lit}");
        }
        for (z, zp) in [("[1|]", "[1|0]"), ("[2,0|1]", "[1|0]"), ("[1|]", "[1|1]"), ("[4,2,0|3,1]", "[3,1|2,0]")] {
            let p = pair(z, zp);
            assert!(relation_laws(&p).is_empty(), "{z} {zp}");
            assert!(core_laws(&p).is_empty(), "{z} {zp}: {:?}", core_laws(&p));
            assert!(map_laws(&p).is_empty(), "{z} {zp}: {:?}", map_laws(&p));
            assert!(theorem_laws(&p).is_empty(), "{z} {zp}");
        }
        assert!(maps_apply(&pair("[4,2,0|3,1]", "[3,1|2,0]")));
        assert!(uniform_sp_laws(&SpecialSymbol::parse("[2,0|1]").unwrap()).is_empty());
        for s in Sign::BOTH {
            assert!(uniform_orth_laws(&SpecialSymbol::parse("[2,0|1,0]").unwrap(), s).is_empty());
            assert!(uniform_orth_laws(&SpecialSymbol::parse("[1|1]").unwrap(), s).is_empty());
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite(Suite::Relations, 3, 4);
        let b = run_suite(Suite::Relations, 3, 4);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.passed);
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
