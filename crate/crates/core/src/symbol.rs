//! Reduced symbols, their numeric invariants and the Υ bijection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::partition::{parse_list, write_list, BiPartition, Partition};

/// Which row of a symbol an entry sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    Top,
    Bottom,
}

impl Row {
    pub fn other(self) -> Row {
        match self {
            Row::Top => Row::Bottom,
            Row::Bottom => Row::Top,
        }
    }

    pub fn tag(self) -> char {
        match self {
            Row::Top => 't',
            Row::Bottom => 'b',
        }
    }
}

/// A pair of strictly decreasing rows that need not be reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawSymbol {
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
}

impl RawSymbol {
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Self, ParseError> {
        for row in [&top, &bottom] {
            if row.windows(2).any(|w| w[0] <= w[1]) {
                return Err(ParseError::NotStrictlyDecreasing(row.clone()));
            }
        }
        Ok(RawSymbol { top, bottom })
    }

    /// Undo the shift `x ↦ x + 1, append 0` for as long as 0 ends both rows.
    pub fn reduce(&self) -> Symbol {
        let mut top = self.top.clone();
        let mut bottom = self.bottom.clone();
        while top.last() == Some(&0) && bottom.last() == Some(&0) {
            top.pop();
            bottom.pop();
            top.iter_mut().for_each(|x| *x -= 1);
            bottom.iter_mut().for_each(|x| *x -= 1);
        }
        Symbol { top, bottom }
    }
}

impl fmt::Display for RawSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_list(f, &self.top)?;
        f.write_str("|")?;
        write_list(f, &self.bottom)?;
        f.write_str("]")
    }
}

impl FromStr for RawSymbol {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ParseError::Malformed(s.to_string()))?;
        let (top, bottom) = inner
            .split_once('|')
            .ok_or_else(|| ParseError::Malformed(s.to_string()))?;
        if bottom.contains('|') {
            return Err(ParseError::Malformed(s.to_string()));
        }
        RawSymbol::new(parse_list(top)?, parse_list(bottom)?)
    }
}

/// A reduced symbol: two strictly decreasing rows not both containing 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Symbol {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl Symbol {
    /// Validates strictness and reduces.
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Self, ParseError> {
        Ok(RawSymbol::new(top, bottom)?.reduce())
    }

    /// Caller guarantees strict rows and reducedness.
    pub(crate) fn from_reduced(top: Vec<u32>, bottom: Vec<u32>) -> Self {
        debug_assert!(top.windows(2).all(|w| w[0] > w[1]));
        debug_assert!(bottom.windows(2).all(|w| w[0] > w[1]));
        debug_assert!(!(top.last() == Some(&0) && bottom.last() == Some(&0)));
        Symbol { top, bottom }
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn row(&self, row: Row) -> &[u32] {
        match row {
            Row::Top => &self.top,
            Row::Bottom => &self.bottom,
        }
    }

    /// `(m1, m2)`, the row lengths.
    pub fn size(&self) -> (usize, usize) {
        (self.top.len(), self.bottom.len())
    }

    /// Total number of entries `|A| + |B|`.
    pub fn len(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> u32 {
        let sum: u64 = self.top.iter().chain(&self.bottom).map(|&x| x as u64).sum();
        let l = self.len() as i64 - 1;
        (sum as i64 - (l * l) / 4) as u32
    }

    /// `|A| - |B|`, signed.
    pub fn defect(&self) -> i32 {
        self.top.len() as i32 - self.bottom.len() as i32
    }

    pub fn transpose(&self) -> Symbol {
        Symbol {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// `k` applications of the shift `x ↦ x + 1, append 0`.
    pub fn inflate(&self, k: u32) -> RawSymbol {
        let shift = |row: &[u32]| -> Vec<u32> {
            let mut out: Vec<u32> = row.iter().map(|x| x + k).collect();
            out.extend((0..k).rev());
            out
        };
        RawSymbol {
            top: shift(&self.top),
            bottom: shift(&self.bottom),
        }
    }

    /// All entries tagged with their row.
    pub fn entries(&self) -> impl Iterator<Item = (u32, Row)> + '_ {
        self.top
            .iter()
            .map(|&v| (v, Row::Top))
            .chain(self.bottom.iter().map(|&v| (v, Row::Bottom)))
    }

    /// Subtract the staircase from each row.
    pub fn upsilon(&self) -> BiPartition {
        BiPartition::new(destaircase(&self.top), destaircase(&self.bottom))
    }

    /// The unique reduced symbol of the given defect whose Υ image is `b`.
    pub fn upsilon_inverse(b: &BiPartition, defect: i32) -> Symbol {
        let (lt, lb) = (b.top.len() as i64, b.bottom.len() as i64);
        let d = defect as i64;
        let m1 = lt.max(lb + d).max(d);
        let m2 = m1 - d;
        let top = staircase(&b.top, m1 as usize);
        let bottom = staircase(&b.bottom, m2 as usize);
        RawSymbol { top, bottom }.reduce()
    }

    /// `S_{n,β}`, sorted.
    pub fn enumerate(n: u32, beta: i32) -> Vec<Symbol> {
        let offset = min_rank(beta);
        if n < offset {
            return Vec::new();
        }
        let mut out: Vec<Symbol> = BiPartition::all_of(n - offset)
            .iter()
            .map(|b| Symbol::upsilon_inverse(b, beta))
            .collect();
        out.sort();
        out
    }
}

/// `⌊β²/4⌋`, the least rank of a symbol of defect `β`.
pub fn min_rank(beta: i32) -> u32 {
    (beta as i64 * beta as i64 / 4) as u32
}

fn destaircase(row: &[u32]) -> Partition {
    let m = row.len() as u32;
    Partition::from_sorted(
        row.iter()
            .enumerate()
            .map(|(i, &a)| a - (m - 1 - i as u32))
            .collect(),
    )
}

fn staircase(p: &Partition, m: usize) -> Vec<u32> {
    (0..m).map(|i| p.part(i) + (m - 1 - i) as u32).collect()
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_list(f, &self.top)?;
        f.write_str("|")?;
        write_list(f, &self.bottom)?;
        f.write_str("]")
    }
}

impl FromStr for Symbol {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.parse::<RawSymbol>()?.reduce())
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lit: &str) -> Symbol {
        lit.parse().unwrap()
    }

    fn raw(lit: &str) -> RawSymbol {
        lit.parse().unwrap()
    }

    fn bp(lit: &str) -> BiPartition {
        lit.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(s("[|]").rank(), 0);
        assert_eq!(s("[1|0]").rank(), 1);
        assert_eq!(s("[2,0|1]").rank(), 2);
    }

    #[test]
    fn defect_examples() {
        assert_eq!(s("[1|0]").defect(), 0);
        assert_eq!(s("[1|]").defect(), 1);
        assert_eq!(s("[|1,0]").defect(), -2);
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(s("[1|0]").transpose(), s("[0|1]"));
        assert_eq!(s("[2,0|1]").transpose(), s("[1|2,0]"));
        assert_eq!(s("[|]").transpose(), s("[|]"));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(raw("[3,2,0|2,0]").reduce(), s("[2,1|1]"));
        assert_eq!(raw("[1|0]").reduce(), s("[1|0]"));
        assert_eq!(raw("[1,0|2,0]").reduce(), s("[0|1]"));
    }

    #[test]
    fn inflate_examples() {
        assert_eq!(s("[1|0]").inflate(1), raw("[2,0|1,0]"));
        assert_eq!(s("[|]").inflate(1), raw("[0|0]"));
        assert_eq!(s("[1|0]").inflate(0), raw("[1|0]"));
    }

    #[test]
    fn upsilon_examples() {
        assert_eq!(s("[1,0|1]").upsilon(), bp(";1"));
        assert_eq!(s("[2,0|1]").upsilon(), bp("1;1"));
        assert_eq!(s("[|]").upsilon(), bp(";"));
    }

    #[test]
    fn upsilon_inverse_examples() {
        assert_eq!(Symbol::upsilon_inverse(&bp("1;"), 1), s("[1|]"));
        assert_eq!(Symbol::upsilon_inverse(&bp(";1"), 1), s("[1,0|1]"));
        assert_eq!(Symbol::upsilon_inverse(&bp(";"), 0), s("[|]"));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(Symbol::enumerate(1, 1), vec![s("[1|]"), s("[1,0|1]")]);
        assert_eq!(Symbol::enumerate(0, 1), vec![s("[0|]")]);
        assert_eq!(Symbol::enumerate(1, 0), vec![s("[0|1]"), s("[1|0]")]);
        assert!(Symbol::enumerate(1, 3).is_empty());
    }

    #[test]
    fn literals() {
        assert_eq!(s("[2,0|1]").to_string(), "[2,0|1]");
        assert_eq!(s("[|1,0]").to_string(), "[|1,0]");
        assert!("[1,1|]".parse::<Symbol>().is_err());
        assert!("1|0".parse::<Symbol>().is_err());
        assert!("[1|0|2]".parse::<Symbol>().is_err());
        let json = serde_json::to_string(&s("[2,0|1]")).unwrap();
        assert_eq!(json, "\"[2,0|1]\"");
        assert_eq!(serde_json::from_str::<Symbol>(&json).unwrap(), s("[2,0|1]"));
    }

    #[test]
    fn negative_defect_inverse() {
        for beta in -3..=3 {
            for n in 0..5 {
                for sym in Symbol::enumerate(n, beta) {
                    assert_eq!(sym.rank(), n);
                    assert_eq!(sym.defect(), beta);
                    assert_eq!(Symbol::upsilon_inverse(&sym.upsilon(), beta), sym);
                }
            }
        }
    }
}
