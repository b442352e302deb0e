//! Consecutive pairs, the cores `Ψ0 ⊆ Z_I` and `Ψ′0 ⊆ Z′_I`, and the
//! product decomposition of `Bε` they induce.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::CoreError;
use crate::relations::{HowePair, RelationKind, Side, Sign};
use crate::special::{Entry, FamilyKind, SinglesSubset, SpecialSymbol};
use crate::symbol::{Row, Symbol};

/// Two singles `(top over bottom)` adjacent in the decreasing list of singles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConsecutivePair {
    pub top: u32,
    pub bottom: u32,
}

impl ConsecutivePair {
    pub fn entries(self) -> [Entry; 2] {
        [Entry::top(self.top), Entry::bottom(self.bottom)]
    }

    /// The subset of `z`'s singles formed by both entries.
    pub fn mask(self, z: &SpecialSymbol) -> SinglesSubset {
        z.subset(&self.entries())
            .expect("consecutive pair entries are singles")
    }
}

impl fmt::Display for ConsecutivePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.top, self.bottom)
    }
}

impl Serialize for ConsecutivePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Adjacent opposite-row singles in the canonical decreasing order.
pub fn consecutive_pairs(z: &SpecialSymbol) -> Vec<ConsecutivePair> {
    z.singles_list()
        .windows(2)
        .filter(|w| w[0].row != w[1].row)
        .map(|w| {
            let (t, b) = if w[0].row == Row::Top { (w[0], w[1]) } else { (w[1], w[0]) };
            ConsecutivePair { top: t.value, bottom: b.value }
        })
        .collect()
}

/// A set of pairwise disjoint consecutive pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct PairSet {
    pairs: Vec<ConsecutivePair>,
}

impl PairSet {
    /// Fails if two pairs share an entry.
    pub fn new(mut pairs: Vec<ConsecutivePair>) -> Option<Self> {
        pairs.sort();
        pairs.dedup();
        let mut seen = BTreeSet::new();
        for p in &pairs {
            for e in p.entries() {
                if !seen.insert(e) {
                    return None;
                }
            }
        }
        Some(PairSet { pairs })
    }

    pub fn pairs(&self) -> &[ConsecutivePair] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Union of all entries.
    pub fn mask(&self, z: &SpecialSymbol) -> SinglesSubset {
        self.pairs
            .iter()
            .fold(SinglesSubset::EMPTY, |acc, p| acc.union(p.mask(z)))
    }

    /// Every `Ψ ≤ self`, i.e. unions of sub-collections, as subsets of `z`'s singles.
    pub fn below(&self, z: &SpecialSymbol) -> Vec<SinglesSubset> {
        let masks: Vec<SinglesSubset> = self.pairs.iter().map(|p| p.mask(z)).collect();
        (0..1u64 << masks.len())
            .map(|pick| {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .fold(SinglesSubset::EMPTY, |acc, (_, &m)| acc.union(m))
            })
            .collect()
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pairs.iter().map(ConsecutivePair::to_string).collect();
        write!(f, "{{{}}}", body.join(", "))
    }
}

/// A core together with whether `D` is nonempty at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Core {
    pub d_nonempty: bool,
    pub pairs: PairSet,
}

/// Row entry with 1-based index, continued past the end by the staircase.
fn entry(row: &[u32], i: usize) -> i64 {
    row.get(i - 1)
        .map(|&v| v as i64)
        .unwrap_or(row.len() as i64 - i as i64)
}

fn position(row: &[u32], v: u32) -> usize {
    row.iter().position(|&x| x == v).expect("entry lies in its row") + 1
}

/// The closed-form test for `(Z, Λ_{Ψ′}) ∈ D` with `Ψ′ = (c_k over d_l)`.
pub fn pair_condition_prime(p: &HowePair, pair: ConsecutivePair) -> bool {
    let (a, b) = (p.z().symbol().top(), p.z().symbol().bottom());
    let (c, d) = (p.zp().symbol().top(), p.zp().symbol().bottom());
    let k = position(c, pair.top);
    let l = position(d, pair.bottom);
    let same = p.m_prime() == p.m();
    if l == k {
        let (ak, bk, ck, dk) = (entry(a, k), entry(b, k), entry(c, k), entry(d, k));
        if same {
            ak > ck && dk >= bk
        } else {
            ak >= ck && dk > bk
        }
    } else if l + 1 == k {
        let (ak, ck, bl, dl) = (entry(a, k), entry(c, k), entry(b, l), entry(d, l));
        if same {
            ck >= ak && bl > dl
        } else {
            ck > ak && bl >= dl
        }
    } else {
        false
    }
}

/// The closed-form test for `(Λ_Ψ, Z′) ∈ D` with `Ψ = (a_k over b_l)`.
pub fn pair_condition(p: &HowePair, pair: ConsecutivePair) -> bool {
    let (a, b) = (p.z().symbol().top(), p.z().symbol().bottom());
    let (c, d) = (p.zp().symbol().top(), p.zp().symbol().bottom());
    let k = position(a, pair.top);
    let l = position(b, pair.bottom);
    let same = p.m_prime() == p.m();
    if l == k {
        let (ak, bk, ck, dk) = (entry(a, k), entry(b, k), entry(c, k), entry(d, k));
        if same {
            ck >= ak && bk > dk
        } else {
            ck > ak && bk >= dk
        }
    } else if l + 1 == k {
        let (ak, ck, bl, dl) = (entry(a, k), entry(c, k), entry(b, l), entry(d, l));
        if same {
            ak > ck && dl >= bl
        } else {
            ak >= ck && dl > bl
        }
    } else {
        false
    }
}

fn d_nonempty(p: &HowePair) -> bool {
    !p.relation_masks(RelationKind::D).is_empty()
}

fn labels(p: &HowePair) -> (String, String) {
    (p.z().to_string(), p.zp().to_string())
}

/// Shared driver: find the pairs `Ψ` of `side`'s singles whose flip stays
/// in the `D`-fiber of the other root, then validate disjointness, the
/// closed-form route and the fiber reconstruction.
fn find_core(p: &HowePair, side: Side) -> Result<Core, CoreError> {
    if !d_nonempty(p) {
        return Ok(Core { d_nonempty: false, pairs: PairSet::default() });
    }
    let (owner, route): (&SpecialSymbol, fn(&HowePair, ConsecutivePair) -> bool) = match side {
        Side::Right => (p.zp(), pair_condition_prime),
        Side::Left => (p.z(), pair_condition),
    };
    let related = |m: SinglesSubset| match side {
        Side::Right => p.related_masks(RelationKind::D, SinglesSubset::EMPTY, m),
        Side::Left => p.related_masks(RelationKind::D, m, SinglesSubset::EMPTY),
    };
    let (z, zp) = labels(p);
    let mut found = Vec::new();
    for pair in consecutive_pairs(owner) {
        let brute = related(pair.mask(owner));
        if brute != route(p, pair) {
            return Err(CoreError::RouteMismatch { z, zp, pair: pair.to_string() });
        }
        if brute {
            found.push(pair);
        }
    }
    let pairs = PairSet::new(found).ok_or_else(|| CoreError::NotDisjoint {
        z: z.clone(),
        zp: zp.clone(),
    })?;
    // the fiber through the opposite root must be exactly {Λ_Ψ : Ψ ≤ core}
    let fixed_side = match side {
        Side::Right => Side::Left,
        Side::Left => Side::Right,
    };
    let fiber: BTreeSet<SinglesSubset> = p
        .fiber_masks(RelationKind::D, fixed_side, SinglesSubset::EMPTY)
        .into_iter()
        .collect();
    let expected: BTreeSet<SinglesSubset> = pairs.below(owner).into_iter().collect();
    if fiber != expected {
        return Err(CoreError::FiberMismatch { z, zp });
    }
    Ok(Core { d_nonempty: true, pairs })
}

/// `Ψ′0 ⊆ Z′_I`: generates the fiber `D_Z`.
pub fn core_prime(p: &HowePair) -> Result<Core, CoreError> {
    find_core(p, Side::Right)
}

/// `Ψ0 ⊆ Z_I`: generates the fiber `D_{Z′}`.
pub fn core(p: &HowePair) -> Result<Core, CoreError> {
    find_core(p, Side::Left)
}

/// `D` nonempty with both cores empty.
pub fn is_one_to_one(p: &HowePair) -> Result<bool, CoreError> {
    let c = core(p)?;
    let cp = core_prime(p)?;
    Ok(c.d_nonempty && c.pairs.is_empty() && cp.pairs.is_empty())
}

/// Members `Λ_M` of the family whose `M` avoids every entry of `psi`.
pub fn restricted_masks(z: &SpecialSymbol, psi: &PairSet, kind: FamilyKind) -> Vec<SinglesSubset> {
    let avoid = psi.mask(z);
    z.family_masks(kind)
        .map(|ms| ms.into_iter().filter(|m| m.intersect(avoid).is_empty()).collect())
        .unwrap_or_default()
}

pub fn restricted_family(z: &SpecialSymbol, psi: &PairSet, kind: FamilyKind) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = restricted_masks(z, psi, kind)
        .into_iter()
        .map(|m| z.lambda(m))
        .collect();
    out.sort();
    out
}

/// Brute-force `Bε` against the reconstruction from the sub-relation over
/// core-avoiding families translated by all `M ≤ Ψ0`, `N ≤ Ψ′0`. Also
/// requires that sub-relation to be one-to-one. With `D` empty the
/// reconstruction is empty, so `Bε` must be too.
pub fn decomposition_check(p: &HowePair, sign: Sign) -> Result<bool, CoreError> {
    let kind = RelationKind::B(sign);
    let actual: BTreeSet<(SinglesSubset, SinglesSubset)> = p.relation_masks(kind).into_iter().collect();
    let c = core(p)?;
    if !c.d_nonempty {
        return Ok(actual.is_empty());
    }
    let cp = core_prime(p)?;
    let avoid = c.pairs.mask(p.z());
    let avoid_p = cp.pairs.mask(p.zp());
    let natural: Vec<(SinglesSubset, SinglesSubset)> = actual
        .iter()
        .copied()
        .filter(|(m, n)| m.intersect(avoid).is_empty() && n.intersect(avoid_p).is_empty())
        .collect();
    let lefts: BTreeSet<SinglesSubset> = natural.iter().map(|x| x.0).collect();
    let rights: BTreeSet<SinglesSubset> = natural.iter().map(|x| x.1).collect();
    if lefts.len() != natural.len() || rights.len() != natural.len() {
        return Ok(false);
    }
    let shifts = c.pairs.below(p.z());
    let shifts_p = cp.pairs.below(p.zp());
    let mut rebuilt = BTreeSet::new();
    for &(m0, n0) in &natural {
        for &m in &shifts {
            for &n in &shifts_p {
                rebuilt.insert((m0.sym_diff(m), n0.sym_diff(n)));
            }
        }
    }
    Ok(rebuilt == actual)
}

/// Machine-readable summary of the core analysis of one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreReport {
    #[serde(rename = "Z")]
    pub z: Symbol,
    #[serde(rename = "Zp")]
    pub zp: Symbol,
    #[serde(rename = "D_nonempty")]
    pub d_nonempty: bool,
    pub psi0: PairSet,
    pub psi0_prime: PairSet,
    pub one_to_one: bool,
}

pub fn core_report(p: &HowePair) -> Result<CoreReport, CoreError> {
    let c = core(p)?;
    let cp = core_prime(p)?;
    Ok(CoreReport {
        z: p.z().symbol().clone(),
        zp: p.zp().symbol().clone(),
        d_nonempty: c.d_nonempty,
        one_to_one: c.d_nonempty && c.pairs.is_empty() && cp.pairs.is_empty(),
        psi0: c.pairs,
        psi0_prime: cp.pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(lit: &str) -> SpecialSymbol {
        SpecialSymbol::parse(lit).unwrap()
    }

    fn pair(a: &str, b: &str) -> HowePair {
        HowePair::parse(a, b).unwrap()
    }

    fn cp(top: u32, bottom: u32) -> ConsecutivePair {
        ConsecutivePair { top, bottom }
    }

    #[test]
    fn consecutive_pair_examples() {
        assert_eq!(consecutive_pairs(&z("[1|0]")), vec![cp(1, 0)]);
        assert!(consecutive_pairs(&z("[1,0|1]")).is_empty());
        assert_eq!(consecutive_pairs(&z("[3,1|2,0]")), vec![cp(3, 2), cp(1, 2), cp(1, 0)]);
    }

    #[test]
    fn core_prime_examples() {
        let c = core_prime(&pair("[1|]", "[1|0]")).unwrap();
        assert!(c.d_nonempty);
        assert_eq!(c.pairs.pairs(), &[cp(1, 0)]);
        assert!(core_prime(&pair("[1,0|1]", "[1|0]")).unwrap().pairs.is_empty());
        assert!(core_prime(&pair("[2,0|1]", "[1|0]")).unwrap().pairs.is_empty());
    }

    #[test]
    fn core_examples() {
        for (a, b) in [("[1|]", "[1|0]"), ("[1,0|1]", "[1|0]"), ("[2,0|1]", "[1|0]")] {
            assert!(core(&pair(a, b)).unwrap().pairs.is_empty());
        }
    }

    #[test]
    fn one_to_one_examples() {
        assert!(is_one_to_one(&pair("[1,0|1]", "[1|0]")).unwrap());
        assert!(!is_one_to_one(&pair("[1|]", "[1|0]")).unwrap());
        assert!(is_one_to_one(&pair("[2,0|1]", "[1|0]")).unwrap());
    }

    #[test]
    fn empty_d_is_flagged_not_an_error() {
        let c = core_prime(&pair("[1|]", "[2,1|1,0]")).unwrap();
        assert!(!c.d_nonempty);
        assert!(c.pairs.is_empty());
    }

    #[test]
    fn restricted_family_examples() {
        let p = pair("[1|]", "[1|0]");
        let psi = core_prime(&p).unwrap().pairs;
        let s = |l: &str| l.parse::<Symbol>().unwrap();
        assert_eq!(restricted_family(p.zp(), &psi, FamilyKind::Plus), vec![s("[1|0]")]);
        assert!(restricted_family(p.zp(), &psi, FamilyKind::Minus).is_empty());
        let empty = PairSet::default();
        assert_eq!(
            restricted_family(p.z(), &empty, FamilyKind::Sp),
            p.z().family(FamilyKind::Sp).unwrap()
        );
    }

    #[test]
    fn decomposition_examples() {
        assert!(decomposition_check(&pair("[1|]", "[1|0]"), Sign::Plus).unwrap());
        assert!(decomposition_check(&pair("[1|]", "[1|0]"), Sign::Minus).unwrap());
        assert!(decomposition_check(&pair("[2,0|1]", "[1|0]"), Sign::Plus).unwrap());
    }

    #[test]
    fn pair_set_rejects_overlap() {
        assert!(PairSet::new(vec![cp(3, 2), cp(1, 2)]).is_none());
        assert_eq!(PairSet::new(vec![cp(1, 0), cp(3, 2)]).unwrap().to_string(), "{(1|0), (3|2)}");
    }

    #[test]
    fn report_json() {
        let r = core_report(&pair("[1|]", "[1|0]")).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"Z":"[1|]","Zp":"[1|0]","D_nonempty":true,"psi0":[],"psi0_prime":["(1|0)"],"one_to_one":false}"#
        );
    }
}
