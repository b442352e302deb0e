//! Special symbols of defect 0 and 1, their singles, and the F2 family `S̄_Z`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{DomainError, ParseError};
use crate::symbol::{Row, Symbol};

/// One entry of a symbol together with the row it sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    pub value: u32,
    pub row: Row,
}

impl Entry {
    pub fn new(value: u32, row: Row) -> Self {
        Entry { value, row }
    }

    pub fn top(value: u32) -> Self {
        Entry::new(value, Row::Top)
    }

    pub fn bottom(value: u32) -> Self {
        Entry::new(value, Row::Bottom)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.row.tag(), self.value)
    }
}

/// A subset `M ⊆ Z_I`, one bit per single in the canonical decreasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SinglesSubset(pub u64);

impl SinglesSubset {
    pub const EMPTY: SinglesSubset = SinglesSubset(0);

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> SinglesSubset {
        SinglesSubset(self.0 | 1 << i)
    }

    pub fn sym_diff(self, other: SinglesSubset) -> SinglesSubset {
        SinglesSubset(self.0 ^ other.0)
    }

    pub fn intersect(self, other: SinglesSubset) -> SinglesSubset {
        SinglesSubset(self.0 & other.0)
    }

    pub fn union(self, other: SinglesSubset) -> SinglesSubset {
        SinglesSubset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: SinglesSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

/// The families of symbols attached to a special symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `S̄_Z`, every `Λ_M`.
    Bar,
    /// `S_Z`: defects ≡ 1 mod 4, for `Z` of defect 1.
    Sp,
    /// `S+_Z`: defects ≡ 0 mod 4, for `Z` of defect 0.
    Plus,
    /// `S−_Z`: defects ≡ 2 mod 4, for `Z` of defect 0.
    Minus,
    /// `S_{Z,δ}`: exactly this defect.
    Exact(i32),
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Bar => f.write_str("bar"),
            FamilyKind::Sp => f.write_str("S"),
            FamilyKind::Plus => f.write_str("S+"),
            FamilyKind::Minus => f.write_str("S-"),
            FamilyKind::Exact(d) => write!(f, "S_{d}"),
        }
    }
}

/// A validated special symbol of defect 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpecialSymbol {
    sym: Symbol,
    singles: Vec<Entry>,
    doubles: Vec<u32>,
}

impl SpecialSymbol {
    pub fn new(sym: Symbol) -> Result<Self, DomainError> {
        if !is_special(&sym) {
            return Err(DomainError::NotSpecial(sym.to_string()));
        }
        let (top, bottom) = (sym.top(), sym.bottom());
        let mut singles: Vec<Entry> = sym
            .entries()
            .filter(|&(v, row)| !sym.row(row.other()).contains(&v))
            .map(|(v, row)| Entry::new(v, row))
            .collect();
        singles.sort_by_key(|e| std::cmp::Reverse(e.value));
        let doubles = top.iter().copied().filter(|v| bottom.contains(v)).collect();
        Ok(SpecialSymbol { sym, singles, doubles })
    }

    /// The family root: all entries of `sym` sorted and dealt alternately
    /// to the top and bottom rows. `sym` lies in `S̄` of the result.
    pub fn root_of(sym: &Symbol) -> Result<Self, DomainError> {
        let mut all: Vec<u32> = sym.entries().map(|(v, _)| v).collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        let top = all.iter().step_by(2).copied().collect();
        let bottom = all.iter().skip(1).step_by(2).copied().collect();
        let root = Symbol::new(top, bottom)
            .map_err(|_| DomainError::NotSpecial(sym.to_string()))?;
        SpecialSymbol::new(root)
    }

    pub fn parse(lit: &str) -> Result<Self, crate::error::Error> {
        let sym: Symbol = lit.parse()?;
        Ok(SpecialSymbol::new(sym)?)
    }

    pub fn symbol(&self) -> &Symbol {
        &self.sym
    }

    pub fn defect(&self) -> i32 {
        self.sym.defect()
    }

    pub fn rank(&self) -> u32 {
        self.sym.rank()
    }

    /// Singles in strictly decreasing order of value.
    pub fn singles_list(&self) -> &[Entry] {
        &self.singles
    }

    pub fn doubles(&self) -> &[u32] {
        &self.doubles
    }

    /// `Z_I` as a symbol.
    pub fn singles(&self) -> Symbol {
        let row = |r: Row| {
            self.singles
                .iter()
                .filter(|e| e.row == r)
                .map(|e| e.value)
                .collect()
        };
        Symbol::from_reduced(row(Row::Top), row(Row::Bottom))
    }

    pub fn num_singles(&self) -> usize {
        self.singles.len()
    }

    /// `δ`: `(|Z_I| - 1)/2` for defect 1, `|Z_I|/2` for defect 0.
    pub fn degree(&self) -> u32 {
        (self.singles.len() as u32) / 2
    }

    pub fn is_regular(&self) -> bool {
        self.doubles.is_empty()
    }

    /// A defect-0 symbol with no singles.
    pub fn is_degenerate(&self) -> bool {
        self.singles.is_empty()
    }

    /// All of `Z_I` as a subset.
    pub fn full(&self) -> SinglesSubset {
        SinglesSubset((1u64 << self.singles.len()) - 1)
    }

    /// Index of a single in the canonical order.
    pub fn index_of(&self, e: Entry) -> Option<usize> {
        self.singles.iter().position(|&s| s == e)
    }

    /// Builds a subset from explicit entries.
    pub fn subset(&self, entries: &[Entry]) -> Result<SinglesSubset, DomainError> {
        entries.iter().try_fold(SinglesSubset::EMPTY, |acc, &e| {
            self.index_of(e)
                .map(|i| acc.with(i))
                .ok_or_else(|| DomainError::NotASingle(e.to_string()))
        })
    }

    pub fn entries_of(&self, m: SinglesSubset) -> Vec<Entry> {
        m.indices().map(|i| self.singles[i]).collect()
    }

    /// `def(Λ_M)`: each moved top single lowers it by 2, each bottom one raises it.
    pub fn defect_of(&self, m: SinglesSubset) -> i32 {
        let (mut up, mut down) = (0, 0);
        for i in m.indices() {
            match self.singles[i].row {
                Row::Top => down += 1,
                Row::Bottom => up += 1,
            }
        }
        self.defect() - 2 * down + 2 * up
    }

    /// `Λ_M`: the singles in `M` switch rows.
    pub fn lambda(&self, m: SinglesSubset) -> Symbol {
        let mut top: Vec<u32> = self.doubles.clone();
        let mut bottom: Vec<u32> = self.doubles.clone();
        for (i, e) in self.singles.iter().enumerate() {
            let row = if m.contains(i) { e.row.other() } else { e.row };
            match row {
                Row::Top => top.push(e.value),
                Row::Bottom => bottom.push(e.value),
            }
        }
        top.sort_unstable_by(|a, b| b.cmp(a));
        bottom.sort_unstable_by(|a, b| b.cmp(a));
        Symbol::from_reduced(top, bottom)
    }

    /// The unique `M` with `Λ_M = lam`.
    pub fn subset_of(&self, lam: &Symbol) -> Result<SinglesSubset, DomainError> {
        let not_in = || DomainError::NotInFamily {
            sym: lam.to_string(),
            root: self.sym.to_string(),
        };
        if lam.len() != self.sym.len() {
            return Err(not_in());
        }
        for &d in &self.doubles {
            if !lam.top().contains(&d) || !lam.bottom().contains(&d) {
                return Err(not_in());
            }
        }
        let mut m = SinglesSubset::EMPTY;
        for (i, e) in self.singles.iter().enumerate() {
            let in_top = lam.top().contains(&e.value);
            let in_bottom = lam.bottom().contains(&e.value);
            match (in_top, in_bottom) {
                (true, false) if e.row == Row::Bottom => m = m.with(i),
                (false, true) if e.row == Row::Top => m = m.with(i),
                (true, false) | (false, true) => {}
                _ => return Err(not_in()),
            }
        }
        Ok(m)
    }

    /// `Λ_M + Λ_N = Λ_{M Δ N}`.
    pub fn add(&self, x: &Symbol, y: &Symbol) -> Result<Symbol, DomainError> {
        let m = self.subset_of(x)?;
        let n = self.subset_of(y)?;
        Ok(self.lambda(m.sym_diff(n)))
    }

    /// `⟨Λ_M, Λ_N⟩ = |M ∩ N| mod 2`.
    pub fn pairing(&self, x: &Symbol, y: &Symbol) -> Result<u8, DomainError> {
        let m = self.subset_of(x)?;
        let n = self.subset_of(y)?;
        Ok(pairing(m, n))
    }

    fn check_kind(&self, kind: FamilyKind) -> Result<(), DomainError> {
        let ok = match kind {
            FamilyKind::Bar => true,
            FamilyKind::Sp => self.defect() == 1,
            FamilyKind::Plus | FamilyKind::Minus => self.defect() == 0,
            FamilyKind::Exact(d) => (d - self.defect()).rem_euclid(2) == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(DomainError::FamilyKind {
                kind: kind.to_string(),
                defect: self.defect(),
            })
        }
    }

    fn in_kind(&self, kind: FamilyKind, m: SinglesSubset) -> bool {
        let d = self.defect_of(m);
        match kind {
            FamilyKind::Bar => true,
            FamilyKind::Sp => d.rem_euclid(4) == 1,
            FamilyKind::Plus => d.rem_euclid(4) == 0,
            FamilyKind::Minus => d.rem_euclid(4) == 2,
            FamilyKind::Exact(e) => d == e,
        }
    }

    /// Subsets `M` whose `Λ_M` belongs to the family, in increasing mask order.
    pub fn family_masks(&self, kind: FamilyKind) -> Result<Vec<SinglesSubset>, DomainError> {
        self.check_kind(kind)?;
        Ok((0..1u64 << self.singles.len())
            .map(SinglesSubset)
            .filter(|&m| self.in_kind(kind, m))
            .collect())
    }

    /// The family as a sorted list of symbols.
    pub fn family(&self, kind: FamilyKind) -> Result<Vec<Symbol>, DomainError> {
        let mut out: Vec<Symbol> = self
            .family_masks(kind)?
            .into_iter()
            .map(|m| self.lambda(m))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Whether `lam` lies in the given family of this symbol.
    pub fn contains(&self, kind: FamilyKind, lam: &Symbol) -> bool {
        self.check_kind(kind).is_ok()
            && self
                .subset_of(lam)
                .map(|m| self.in_kind(kind, m))
                .unwrap_or(false)
    }

    /// Renders a subset as `{t:2, b:1}`.
    pub fn subset_literal(&self, m: SinglesSubset) -> String {
        let body: Vec<String> = self.entries_of(m).iter().map(Entry::to_string).collect();
        format!("{{{}}}", body.join(", "))
    }

    /// Parses `{t:2, b:1}` against this symbol's singles.
    pub fn parse_subset(&self, lit: &str) -> Result<SinglesSubset, crate::error::Error> {
        let inner = lit
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| ParseError::Malformed(lit.to_string()))?;
        let mut entries = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            entries.push(parse_entry(tok)?);
        }
        Ok(self.subset(&entries)?)
    }

    /// All special symbols of rank `n` and defect `d`, sorted.
    pub fn enumerate(n: u32, d: i32) -> Vec<SpecialSymbol> {
        Symbol::enumerate(n, d)
            .into_iter()
            .filter_map(|s| SpecialSymbol::new(s).ok())
            .collect()
    }
}

/// `|M ∩ N| mod 2`.
pub fn pairing(m: SinglesSubset, n: SinglesSubset) -> u8 {
    (m.intersect(n).len() % 2) as u8
}

/// Parses an entry literal `t:2` or `b:1`.
pub fn parse_entry(tok: &str) -> Result<Entry, ParseError> {
    let (tag, value) = tok
        .split_once(':')
        .ok_or_else(|| ParseError::Malformed(tok.to_string()))?;
    let row = match tag.trim() {
        "t" => Row::Top,
        "b" => Row::Bottom,
        _ => return Err(ParseError::Malformed(tok.to_string())),
    };
    let value = value
        .trim()
        .parse()
        .map_err(|_| ParseError::BadInteger(value.trim().to_string()))?;
    Ok(Entry::new(value, row))
}

/// Defect 0 or 1 and `a1 ≥ b1 ≥ a2 ≥ b2 ≥ ⋯`.
pub fn is_special(sym: &Symbol) -> bool {
    let d = sym.defect();
    if d != 0 && d != 1 {
        return false;
    }
    let (top, bottom) = (sym.top(), sym.bottom());
    let merged: Vec<u32> = (0..sym.len())
        .map(|k| if k % 2 == 0 { top[k / 2] } else { bottom[k / 2] })
        .collect();
    merged.windows(2).all(|w| w[0] >= w[1])
}

impl fmt::Display for SpecialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sym.fmt(f)
    }
}

impl Serialize for SpecialSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.sym.serialize(serializer)
    }
}
