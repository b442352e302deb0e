//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact (dyadic equality, zero tolerance); runtime limits are pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use howe_core::cores::core_prime;
use howe_core::invariants::{core_laws, map_laws, maps_apply, relation_laws, uniform_orth_laws, uniform_sp_laws};
use howe_core::par::Execution;
use howe_core::partition::BiPartition;
use howe_core::regular::model_symbols;
use howe_core::relations::{related_ineq, HowePair, Sign};
use howe_core::special::{FamilyKind, SinglesSubset, SpecialSymbol};
use howe_core::sweep::{self, all_pairs, SweepParams};
use howe_core::symbol::Symbol;
use howe_core::uniform::{theorem_lhs, verify_amr_consistency};

const SWEEP_RANK: u32 = 5;
const AMR_RANK: u32 = 4;
const THEOREM_LIMIT: Duration = Duration::from_secs(120);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const AMR_LIMIT: Duration = Duration::from_secs(120);

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn report(id: u32, name: &'static str, pass: bool, detail: String) -> Outcome {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name}: {detail}");
    Outcome { id, name, pass, detail }
}

// --- independent oracle for B̄ε, straight from the definition ------------

fn destaircase(row: &[u32]) -> Vec<u32> {
    let k = row.len() as u32;
    let mut parts: Vec<u32> = row.iter().enumerate().map(|(i, &a)| a - (k - 1 - i as u32)).collect();
    parts.retain(|&x| x > 0);
    parts
}

fn transpose(p: &[u32]) -> Vec<u32> {
    let width = p.first().copied().unwrap_or(0);
    (1..=width).map(|j| p.iter().filter(|&&x| x >= j).count() as u32).collect()
}

/// `p ≼ q`: `p_i ≤ q_i ≤ p_i + 1` for every `i`, zero-padded.
fn preceq(p: &[u32], q: &[u32]) -> bool {
    let at = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
    (0..p.len().max(q.len())).all(|i| at(p, i) <= at(q, i) && at(q, i) <= at(p, i) + 1)
}

fn bar_oracle(lam: &Symbol, lamp: &Symbol, sign: Sign) -> bool {
    let (l, m) = (destaircase(lam.top()), destaircase(lam.bottom()));
    let (x, n) = (destaircase(lamp.top()), destaircase(lamp.bottom()));
    let (lt, mt, xt, nt) = (transpose(&l), transpose(&m), transpose(&x), transpose(&n));
    let def = lam.top().len() as i32 - lam.bottom().len() as i32;
    let defp = lamp.top().len() as i32 - lamp.bottom().len() as i32;
    match sign {
        Sign::Plus => preceq(&mt, &xt) && preceq(&nt, &lt) && defp == -def + 1,
        Sign::Minus => preceq(&xt, &mt) && preceq(&lt, &nt) && defp == -def - 1,
    }
}

// --- criteria ----------------------------------------------------------------

fn criterion_1() -> Outcome {
    let params = SweepParams { nmax: SWEEP_RANK, npmax: SWEEP_RANK, signs: Sign::BOTH.to_vec(), amr: false };
    let start = Instant::now();
    let r = sweep::run(&params, Execution::Sequential);
    let took = start.elapsed();
    let triples = r.verdicts.len();
    let pass = r.failures.is_empty() && triples > 0 && took < THEOREM_LIMIT;
    let mut detail = format!(
        "{}/{} triples (Z, Z′, ε) with ranks ≤ {SWEEP_RANK} satisfy the identity exactly; {:.2?} single-worker (limit {:?})",
        triples - r.failures.len(),
        triples,
        took,
        THEOREM_LIMIT
    );
    if let Some(f) = r.failures.first() {
        detail += &format!("; first failure ({}, {}, {})", f.z, f.zp, f.sign);
    }
    report(1, "main identity", pass, detail)
}

fn criterion_2(pairs: &[HowePair]) -> Outcome {
    let start = Instant::now();
    let (mut checked, mut vs_ineq, mut vs_lib) = (0usize, 0usize, 0usize);
    for p in pairs.iter().filter(|p| p.size_compatible()) {
        let lefts: Vec<Symbol> = p.z().family(FamilyKind::Bar).expect("any defect");
        let rights: Vec<Symbol> = p.zp().family(FamilyKind::Bar).expect("any defect");
        for sign in Sign::BOTH {
            for lam in &lefts {
                let m = p.z().subset_of(lam).expect("member");
                for lamp in &rights {
                    let n = p.zp().subset_of(lamp).expect("member");
                    let truth = bar_oracle(lam, lamp, sign);
                    checked += 1;
                    vs_ineq += usize::from(related_ineq(lam, lamp, sign) != truth);
                    vs_lib += usize::from(p.bar(sign, m, n) != truth);
                }
            }
        }
    }
    let took = start.elapsed();
    let pass = vs_ineq == 0 && vs_lib == 0 && checked > 0 && took < ORACLE_LIMIT;
    report(
        2,
        "inequality test vs definition",
        pass,
        format!(
            "{checked} (Λ, Λ′, ε) checked on size-compatible pairs with ranks ≤ {SWEEP_RANK}; \
             {vs_ineq} inequality-route mismatches, {vs_lib} library-definition mismatches; {took:.2?} (limit {ORACLE_LIMIT:?})"
        ),
    )
}

fn criterion_3(pairs: &[HowePair]) -> Outcome {
    let mut violations = Vec::new();
    let mut with_d = 0;
    for p in pairs {
        if core_prime(p).map(|c| c.d_nonempty).unwrap_or(true) {
            with_d += 1;
        }
        violations.extend(core_laws(p));
    }
    let pass = violations.is_empty();
    let mut detail = format!(
        "{} pairs ({with_d} with D ≠ ∅): core fibers, disjointness, closed forms, core translation and splitting, \
         fiber shapes both signs, uniqueness and B± decomposition; {} violations",
        pairs.len(),
        violations.len()
    );
    if let Some(v) = violations.first() {
        detail += &format!("; first: {v}");
    }
    report(3, "core and fiber structure", pass, detail)
}

fn criterion_4(pairs: &[HowePair]) -> Outcome {
    let regular: Vec<&HowePair> = pairs.iter().filter(|p| maps_apply(p)).collect();
    let mut violations: Vec<String> = regular.iter().flat_map(|p| map_laws(p)).collect();
    // the flip itself is checked on every pair, not only the regular ones
    violations.extend(
        pairs
            .iter()
            .flat_map(relation_laws)
            .filter(|v| v.contains("transpose flip")),
    );
    let pass = violations.is_empty() && !regular.is_empty();
    let mut detail = format!(
        "{} regular one-to-one pairs (θ± graphs, θ coherence, h/h′ transport) and {} pairs for the transpose flip; {} violations",
        regular.len(),
        pairs.len(),
        violations.len()
    );
    if let Some(v) = violations.first() {
        detail += &format!("; first: {v}");
    }
    report(4, "transpose flip and θ± graphs", pass, detail)
}

fn criterion_5() -> Outcome {
    let mut violations = Vec::new();
    let (mut sp, mut orth) = (0, 0);
    for n in 0..=SWEEP_RANK {
        for z in SpecialSymbol::enumerate(n, 1) {
            sp += 1;
            violations.extend(uniform_sp_laws(&z));
        }
        for zp in SpecialSymbol::enumerate(n, 0) {
            orth += 1;
            for sign in Sign::BOTH {
                violations.extend(uniform_orth_laws(&zp, sign));
            }
        }
    }
    let pass = violations.is_empty();
    let mut detail = format!(
        "{sp} defect-1 and {orth} defect-0 special symbols: ‖R‖² = 1 / 2 / 1 (degenerate), R_Σ^t = ε R_Σ, \
         ρ♯ ≠ 0, ρ♯_Λ = ρ♯_Λ^t, ρ♯ = orthogonal projection; {} violations",
        violations.len()
    );
    if let Some(v) = violations.first() {
        detail += &format!("; first: {v}");
    }
    report(5, "character-formula invariants", pass, detail)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 0..=AMR_RANK {
        for np in 0..=AMR_RANK {
            for sign in Sign::BOTH {
                checked += 1;
                if !verify_amr_consistency(n, np, sign).equal {
                    bad.push(format!("({n}, {np}, {sign})"));
                }
            }
        }
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && took < AMR_LIMIT;
    report(
        6,
        "AMR consistency",
        pass,
        format!(
            "{}/{checked} (n, n′, ε) with n, n′ ≤ {AMR_RANK} agree exactly; {took:.2?} (limit {AMR_LIMIT:?}){}",
            checked - bad.len(),
            if bad.is_empty() { String::new() } else { format!("; failing {}", bad.join(" ")) }
        ),
    )
}

/// Coefficients of `Π_k (1 - x^k)^{-2}` up to `x^n`.
fn bipartition_counts(n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        for _ in 0..2 {
            for i in k..=n {
                c[i] += c[i - k];
            }
        }
    }
    c
}

fn rank_by_formula(top: &[u32], bottom: &[u32]) -> u32 {
    let len = (top.len() + bottom.len()) as u32;
    let sum: u32 = top.iter().chain(bottom).sum();
    sum - (len.saturating_sub(1)).pow(2) / 4
}

fn criterion_7() -> Outcome {
    let mut problems = Vec::new();
    let counts = bipartition_counts(8);
    for (n, &want) in counts.iter().enumerate() {
        let got = Symbol::enumerate(n as u32, 1).len() as u64;
        let bip = BiPartition::all_of(n as u32).len() as u64;
        if got != want || bip != want {
            problems.push(format!("|S_({n},1)| = {got}, |P_2({n})| = {bip}, generating function {want}"));
        }
    }
    let mut families = 0;
    for n in 0..=SWEEP_RANK {
        for z in SpecialSymbol::enumerate(n, 1) {
            families += 1;
            let size = z.family(FamilyKind::Sp).expect("defect 1").len();
            if size != 1 << (2 * z.degree()) {
                problems.push(format!("|S_Z| = {size} for {z}"));
            }
        }
        for zp in SpecialSymbol::enumerate(n, 0) {
            families += 1;
            let plus = zp.family(FamilyKind::Plus).expect("defect 0").len();
            let minus = zp.family(FamilyKind::Minus).expect("defect 0").len();
            let want = if zp.is_degenerate() { (1, 0) } else { (1 << (2 * zp.degree() - 1), 1 << (2 * zp.degree() - 1)) };
            if (plus, minus) != want {
                problems.push(format!("|S±_Z| = ({plus}, {minus}) for {zp}"));
            }
        }
    }
    for m in 0..=3u32 {
        let (z, zp) = model_symbols(m);
        let (zs, zps) = (z.symbol(), zp.symbol());
        let ok = z.is_regular()
            && zp.is_regular()
            && zs.size() == (m as usize + 1, m as usize)
            && zps.size() == (m as usize, m as usize)
            && rank_by_formula(zs.top(), zs.bottom()) == m * (m + 1)
            && rank_by_formula(zps.top(), zps.bottom()) == m * m
            && z.rank() == m * (m + 1)
            && zp.rank() == m * m;
        if !ok {
            problems.push(format!("model symbols for m = {m}: {z}, {zp}"));
        }
    }
    let pass = problems.is_empty();
    report(
        7,
        "counting checks",
        pass,
        format!(
            "|S_(n,1)| = |P_2(n)| for n ≤ 8 ({:?}); family sizes for {families} special symbols; model symbols m ≤ 3; {} problems{}",
            counts,
            problems.len(),
            problems.first().map(|p| format!("; first: {p}")).unwrap_or_default()
        ),
    )
}

fn criterion_8(pairs: &[HowePair]) -> Outcome {
    let (mut qualifying, mut nontrivial, mut bad) = (0, 0, Vec::new());
    for p in pairs {
        let Ok(cp) = core_prime(p) else { continue };
        if cp.pairs.mask(p.zp()) != p.zp().full() {
            continue;
        }
        qualifying += 1;
        if cp.d_nonempty && p.zp().full() != SinglesSubset::EMPTY {
            nontrivial += 1;
        }
        if !theorem_lhs(p, Sign::Minus).is_empty() {
            bad.push(format!("({}, {})", p.z(), p.zp()));
        }
    }
    let pass = bad.is_empty() && nontrivial > 0;
    report(
        8,
        "zero-sum corollary",
        pass,
        format!(
            "{qualifying} pairs with Ψ′0 = Z′_I ({nontrivial} with D ≠ ∅ and Z′_I ≠ ∅); {} with nonzero ε = − left side",
            bad.len()
        ),
    )
}

fn main() -> ExitCode {
    let pairs = all_pairs(SWEEP_RANK, SWEEP_RANK);
    let outcomes = [
        criterion_1(),
        criterion_2(&pairs),
        criterion_3(&pairs),
        criterion_4(&pairs),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(&pairs),
    ];
    let failed: Vec<&Outcome> = outcomes.iter().filter(|o| !o.pass).collect();
    println!("acceptance: {}/{} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        for o in failed {
            eprintln!("criterion {} ({}) failed: {}", o.id, o.name, o.detail);
        }
        ExitCode::FAILURE
    }
}
