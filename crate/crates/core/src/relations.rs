//! The relations `B̄±`, `B±` and `D` between the families of a defect-1
//! special symbol `Z` and a defect-0 special symbol `Z′`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{DomainError, ParseError};
use crate::partition::BiPartition;
use crate::special::{FamilyKind, SinglesSubset, SpecialSymbol};
use crate::symbol::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// The orthogonal family this sign selects on the `Z′` side.
    pub fn family(self) -> FamilyKind {
        match self {
            Sign::Plus => FamilyKind::Plus,
            Sign::Minus => FamilyKind::Minus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(ParseError::Malformed(other.to_string())),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `B̄ε` over `S̄_Z × S̄_{Z′}`.
    Bar(Sign),
    /// `Bε` over `S_Z × Sε_{Z′}`.
    B(Sign),
    /// `D` over `S_{Z,1} × S_{Z′,0}`.
    D,
}

impl RelationKind {
    pub fn sign(self) -> Sign {
        match self {
            RelationKind::Bar(s) | RelationKind::B(s) => s,
            RelationKind::D => Sign::Plus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Bar(_) => "bar",
            RelationKind::B(_) => "B",
            RelationKind::D => "D",
        }
    }

    /// Families on the `Z` and `Z′` sides.
    pub fn domain(self) -> (FamilyKind, FamilyKind) {
        match self {
            RelationKind::Bar(_) => (FamilyKind::Bar, FamilyKind::Bar),
            RelationKind::B(s) => (FamilyKind::Sp, s.family()),
            RelationKind::D => (FamilyKind::Exact(1), FamilyKind::Exact(0)),
        }
    }
}

/// The definitional test: dominance of transposed Υ parts plus the defect equation.
pub fn related_bar(lam: &Symbol, lamp: &Symbol, sign: Sign) -> bool {
    bar_on_images(&lam.upsilon(), lam.defect(), &lamp.upsilon(), lamp.defect(), sign)
}

fn bar_on_images(
    u: &BiPartition,
    def: i32,
    up: &BiPartition,
    defp: i32,
    sign: Sign,
) -> bool {
    let (lambda, mu) = (&u.top, &u.bottom);
    let (xi, nu) = (&up.top, &up.bottom);
    match sign {
        Sign::Plus => {
            defp == -def + 1 && mu.precedes_transposed(xi) && nu.precedes_transposed(lambda)
        }
        Sign::Minus => {
            defp == -def - 1 && xi.precedes_transposed(mu) && lambda.precedes_transposed(nu)
        }
    }
}

/// Row entry with 1-based index, continued past the end by the staircase
/// `m - i` so that missing entries behave like zero parts of Υ.
fn entry(row: &[u32], i: usize) -> i64 {
    row.get(i - 1)
        .map(|&v| v as i64)
        .unwrap_or(row.len() as i64 - i as i64)
}

/// The entrywise inequality chains. Only defined when `Λ` has `2m+1`
/// entries and `Λ′` has `2m′` with `m′ ∈ {m, m+1}`; false otherwise.
pub fn related_ineq(lam: &Symbol, lamp: &Symbol, sign: Sign) -> bool {
    if lam.len().is_multiple_of(2) || lamp.len() % 2 == 1 {
        return false;
    }
    let m = (lam.len() - 1) / 2;
    let mp = lamp.len() / 2;
    if mp != m && mp != m + 1 {
        return false;
    }
    let same = mp == m;
    let (a, b) = (lam.top(), lam.bottom());
    let (c, d) = (lamp.top(), lamp.bottom());
    let (m2, mp1) = (b.len() as i64, c.len() as i64);
    let reach = a.len().max(b.len()).max(c.len()).max(d.len()) + 2;
    let length_ok = match (sign, same) {
        (Sign::Plus, true) | (Sign::Minus, false) => mp1 == m2,
        (Sign::Plus, false) => mp1 == m2 + 1,
        (Sign::Minus, true) => mp1 == m2 - 1,
    };
    length_ok
        && (1..=reach).all(|i| {
            let (ai, bi, ci, di) = (entry(a, i), entry(b, i), entry(c, i), entry(d, i));
            let (ai1, bi1, ci1, di1) = (entry(a, i + 1), entry(b, i + 1), entry(c, i + 1), entry(d, i + 1));
            match (sign, same) {
                (Sign::Plus, true) => ai > di && di >= ai1 && ci >= bi && bi > ci1,
                (Sign::Plus, false) => ai >= di && di > ai1 && ci > bi && bi >= ci1,
                (Sign::Minus, true) => di >= ai && ai > di1 && bi > ci && ci >= bi1,
                (Sign::Minus, false) => di > ai && ai >= di1 && bi >= ci && ci > bi1,
            }
        })
}

/// Which coordinate of a relation is held fixed when taking a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Fix `Λ` on the `Z` side, collect `Λ′`.
    Left,
    /// Fix `Λ′` on the `Z′` side, collect `Λ`.
    Right,
}

#[derive(Debug, Clone)]
struct FamilyCache {
    lams: Vec<Symbol>,
    ups: Vec<BiPartition>,
    defs: Vec<i32>,
}

impl FamilyCache {
    fn new(z: &SpecialSymbol) -> Self {
        let lams: Vec<Symbol> = (0..1u64 << z.num_singles())
            .map(|m| z.lambda(SinglesSubset(m)))
            .collect();
        let ups = lams.iter().map(Symbol::upsilon).collect();
        let defs = lams.iter().map(Symbol::defect).collect();
        FamilyCache { lams, ups, defs }
    }
}

/// A defect-1 special symbol `Z` with a defect-0 special symbol `Z′`, with
/// every `Λ_M` and its Υ image cached.
#[derive(Debug, Clone)]
pub struct HowePair {
    z: SpecialSymbol,
    zp: SpecialSymbol,
    left: FamilyCache,
    right: FamilyCache,
}

impl HowePair {
    pub fn new(z: SpecialSymbol, zp: SpecialSymbol) -> Result<Self, DomainError> {
        for (sym, expected) in [(&z, 1), (&zp, 0)] {
            if sym.defect() != expected {
                return Err(DomainError::WrongDefect {
                    sym: sym.to_string(),
                    expected,
                    got: sym.defect(),
                });
            }
        }
        let left = FamilyCache::new(&z);
        let right = FamilyCache::new(&zp);
        Ok(HowePair { z, zp, left, right })
    }

    pub fn parse(z: &str, zp: &str) -> Result<Self, crate::error::Error> {
        Ok(HowePair::new(SpecialSymbol::parse(z)?, SpecialSymbol::parse(zp)?)?)
    }

    pub fn z(&self) -> &SpecialSymbol {
        &self.z
    }

    pub fn zp(&self) -> &SpecialSymbol {
        &self.zp
    }

    /// `m`, where `Z` has size `(m+1, m)`.
    pub fn m(&self) -> usize {
        self.z.symbol().bottom().len()
    }

    /// `m′`, where `Z′` has size `(m′, m′)`.
    pub fn m_prime(&self) -> usize {
        self.zp.symbol().top().len()
    }

    pub fn size_compatible(&self) -> bool {
        let (m, mp) = (self.m(), self.m_prime());
        mp == m || mp == m + 1
    }

    pub fn lambda(&self, m: SinglesSubset) -> &Symbol {
        &self.left.lams[m.0 as usize]
    }

    pub fn lambda_prime(&self, n: SinglesSubset) -> &Symbol {
        &self.right.lams[n.0 as usize]
    }

    /// `(Λ_M, Λ′_N) ∈ B̄ε`.
    pub fn bar(&self, sign: Sign, m: SinglesSubset, n: SinglesSubset) -> bool {
        let (i, j) = (m.0 as usize, n.0 as usize);
        bar_on_images(
            &self.left.ups[i],
            self.left.defs[i],
            &self.right.ups[j],
            self.right.defs[j],
            sign,
        )
    }

    /// `(Λ_M, Λ′_N)` lies in the relation, including its domain restriction.
    pub fn related_masks(&self, kind: RelationKind, m: SinglesSubset, n: SinglesSubset) -> bool {
        let (lk, rk) = kind.domain();
        in_kind(lk, self.left.defs[m.0 as usize])
            && in_kind(rk, self.right.defs[n.0 as usize])
            && self.bar(kind.sign(), m, n)
    }

    /// Membership test for explicit symbols; errors outside `S̄_Z × S̄_{Z′}`.
    pub fn related(&self, kind: RelationKind, lam: &Symbol, lamp: &Symbol) -> Result<bool, DomainError> {
        let m = self.z.subset_of(lam)?;
        let n = self.zp.subset_of(lamp)?;
        Ok(self.related_masks(kind, m, n))
    }

    /// The inequality route on explicit symbols, with the same domain check.
    pub fn related_ineq(&self, lam: &Symbol, lamp: &Symbol, sign: Sign) -> Result<bool, DomainError> {
        self.z.subset_of(lam)?;
        self.zp.subset_of(lamp)?;
        Ok(self.size_compatible() && related_ineq(lam, lamp, sign))
    }

    /// Subsets of one side whose symbol lies in the given family.
    pub fn masks(&self, side: Side, kind: FamilyKind) -> Vec<SinglesSubset> {
        let cache = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        (0..cache.defs.len() as u64)
            .map(SinglesSubset)
            .filter(|m| in_kind(kind, cache.defs[m.0 as usize]))
            .collect()
    }

    /// All pairs of the relation as subset pairs.
    pub fn relation_masks(&self, kind: RelationKind) -> Vec<(SinglesSubset, SinglesSubset)> {
        let (lk, rk) = kind.domain();
        let rights = self.masks(Side::Right, rk);
        self.masks(Side::Left, lk)
            .into_iter()
            .flat_map(|m| rights.iter().map(move |&n| (m, n)))
            .filter(|&(m, n)| self.bar(kind.sign(), m, n))
            .collect()
    }

    /// Fiber of the relation through a fixed subset on one side.
    pub fn fiber_masks(&self, kind: RelationKind, side: Side, fixed: SinglesSubset) -> Vec<SinglesSubset> {
        let (lk, rk) = kind.domain();
        match side {
            Side::Left => self
                .masks(Side::Right, rk)
                .into_iter()
                .filter(|&n| in_kind(lk, self.left.defs[fixed.0 as usize]) && self.bar(kind.sign(), fixed, n))
                .collect(),
            Side::Right => self
                .masks(Side::Left, lk)
                .into_iter()
                .filter(|&m| in_kind(rk, self.right.defs[fixed.0 as usize]) && self.bar(kind.sign(), m, fixed))
                .collect(),
        }
    }

    /// Fiber through an explicit symbol, sorted.
    pub fn fiber(&self, kind: RelationKind, side: Side, fixed: &Symbol) -> Result<Vec<Symbol>, DomainError> {
        let mut out: Vec<Symbol> = match side {
            Side::Left => {
                let m = self.z.subset_of(fixed)?;
                self.fiber_masks(kind, side, m)
                    .into_iter()
                    .map(|n| self.lambda_prime(n).clone())
                    .collect()
            }
            Side::Right => {
                let n = self.zp.subset_of(fixed)?;
                self.fiber_masks(kind, side, n)
                    .into_iter()
                    .map(|m| self.lambda(m).clone())
                    .collect()
            }
        };
        out.sort();
        Ok(out)
    }

    pub fn relation(&self, kind: RelationKind) -> RelationTable {
        let mut pairs: Vec<(Symbol, Symbol)> = self
            .relation_masks(kind)
            .into_iter()
            .map(|(m, n)| (self.lambda(m).clone(), self.lambda_prime(n).clone()))
            .collect();
        pairs.sort();
        RelationTable {
            z: self.z.symbol().clone(),
            zp: self.zp.symbol().clone(),
            sign: kind.sign(),
            kind: kind.name(),
            pairs,
        }
    }

    /// Pairs over `S̄_Z × S̄_{Z′}` on which the two membership tests disagree.
    pub fn ineq_mismatches(&self, sign: Sign) -> Vec<(Symbol, Symbol)> {
        let compatible = self.size_compatible();
        let mut out = Vec::new();
        for (i, lam) in self.left.lams.iter().enumerate() {
            for (j, lamp) in self.right.lams.iter().enumerate() {
                let bar = self.bar(sign, SinglesSubset(i as u64), SinglesSubset(j as u64));
                let ineq = compatible && related_ineq(lam, lamp, sign);
                if bar != ineq {
                    out.push((lam.clone(), lamp.clone()));
                }
            }
        }
        out
    }
}

fn in_kind(kind: FamilyKind, defect: i32) -> bool {
    match kind {
        FamilyKind::Bar => true,
        FamilyKind::Sp => defect.rem_euclid(4) == 1,
        FamilyKind::Plus => defect.rem_euclid(4) == 0,
        FamilyKind::Minus => defect.rem_euclid(4) == 2,
        FamilyKind::Exact(d) => defect == d,
    }
}

/// A relation listed in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationTable {
    #[serde(rename = "Z")]
    pub z: Symbol,
    #[serde(rename = "Zp")]
    pub zp: Symbol,
    pub sign: Sign,
    pub kind: &'static str,
    pub pairs: Vec<(Symbol, Symbol)>,
}
