//! Integer partitions, bi-partitions and the one-step dominance order.
//!
//! A [`Partition`] is stored in canonical form: weakly decreasing parts with
//! trailing zeros stripped. Every elementwise comparison pads the shorter
//! sequence with zeros.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, rejecting sequences that increase anywhere.
    /// Trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, ParseError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ParseError::NotWeaklyDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `|λ|`, the sum of the parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The conjugate partition: part `j` counts the rows of length at least `j`.
    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// `self ≼ other`: `other_i - 1 <= self_i <= other_i` for every index.
    pub fn precedes(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        (0..len).all(|i| {
            let (p, q) = (self.part(i), other.part(i));
            p <= q && q <= p + 1
        })
    }

    /// `selfᵀ ≼ otherᵀ`, evaluated as `other_{i+1} <= self_i <= other_i`
    /// without building either transpose.
    pub fn precedes_transposed(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        (0..len).all(|i| other.part(i + 1) <= self.part(i) && self.part(i) <= other.part(i))
    }

    /// All partitions obtained by adding a horizontal strip of `boxes` cells,
    /// i.e. every `q` of weight `|self| + boxes` with `selfᵀ ≼ qᵀ`.
    /// Returned in reverse-lexicographic order.
    pub fn horizontal_extensions(&self, boxes: u32) -> Vec<Partition> {
        let rows = self.len() + 1;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(rows);
        self.extend_rows(0, rows, boxes, &mut current, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn extend_rows(
        &self,
        row: usize,
        rows: usize,
        remaining: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if row == rows {
            if remaining == 0 {
                out.push(Partition::from_sorted(current.clone()));
            }
            return;
        }
        let base = self.part(row);
        // row i may grow up to the old length of row i-1
        let cap = if row == 0 { remaining } else { (self.part(row - 1) - base).min(remaining) };
        for extra in 0..=cap {
            current.push(base + extra);
            self.extend_rows(row + 1, rows, remaining - extra, current, out);
            current.pop();
        }
    }

    /// All partitions of `n`, in reverse-lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(n, n, &mut current, &mut out);
        out
    }
}

fn fill_partitions(n: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(n)).rev() {
        current.push(part);
        fill_partitions(n - part, part, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

pub(crate) fn write_list(f: &mut fmt::Formatter<'_>, items: &[u32]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u32>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|_| ParseError::BadInteger(tok.to_string()))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::new(parse_list(s)?)
    }
}

/// An ordered pair of partitions `[top; bottom]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BiPartition {
    pub top: Partition,
    pub bottom: Partition,
}

impl BiPartition {
    pub fn new(top: Partition, bottom: Partition) -> Self {
        BiPartition { top, bottom }
    }

    pub fn size(&self) -> u32 {
        self.top.weight() + self.bottom.weight()
    }

    /// Swaps the two halves.
    pub fn swapped(&self) -> BiPartition {
        BiPartition::new(self.bottom.clone(), self.top.clone())
    }

    /// All bi-partitions of `n`: top partitions in reverse-lexicographic
    /// order, ties broken by the bottom partition in the same order.
    pub fn all_of(n: u32) -> Vec<BiPartition> {
        let mut out: Vec<BiPartition> = (0..=n)
            .flat_map(|k| {
                let bottoms = Partition::all_of(n - k);
                Partition::all_of(k).into_iter().flat_map(move |top| {
                    bottoms
                        .clone()
                        .into_iter()
                        .map(move |bottom| BiPartition::new(top.clone(), bottom))
                })
            })
            .collect();
        out.sort_by_key(|b| (Reverse(b.top.clone()), Reverse(b.bottom.clone())));
        out
    }
}

impl fmt::Display for BiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.top, self.bottom)
    }
}

impl FromStr for BiPartition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (top, bottom) = s
            .split_once(';')
            .ok_or_else(|| ParseError::Malformed(s.to_string()))?;
        Ok(BiPartition::new(top.parse()?, bottom.parse()?))
    }
}
