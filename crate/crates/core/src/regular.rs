//! Maps between families of regular special symbols: θ±, the model symbols
//! `Z_(m)`, `Z′_(m)` and the relabelings `h`, `h′` onto them.

use std::collections::BTreeMap;

use crate::error::DomainError;
use crate::relations::HowePair;
use crate::special::{Entry, SinglesSubset, SpecialSymbol};
use crate::symbol::Symbol;

/// An injective map between entries of two symbols.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EntryMap {
    map: BTreeMap<Entry, Entry>,
}

impl EntryMap {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Entry, Entry)>) -> Self {
        let map: BTreeMap<Entry, Entry> = pairs.into_iter().collect();
        debug_assert_eq!(
            map.values().collect::<std::collections::BTreeSet<_>>().len(),
            map.len(),
            "entry map must be injective"
        );
        EntryMap { map }
    }

    pub fn get(&self, e: Entry) -> Option<Entry> {
        self.map.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Entry, Entry)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Image of a subset of `src`'s singles, as a subset of `dst`'s singles.
    pub fn apply(
        &self,
        src: &SpecialSymbol,
        dst: &SpecialSymbol,
        m: SinglesSubset,
    ) -> Result<SinglesSubset, DomainError> {
        let image: Vec<Entry> = src
            .entries_of(m)
            .into_iter()
            .map(|e| self.get(e).ok_or_else(|| DomainError::NotASingle(e.to_string())))
            .collect::<Result<_, _>>()?;
        dst.subset(&image)
    }

    /// The induced map `Λ_M ↦ Λ_{map(M)}`.
    pub fn induce(&self, src: &SpecialSymbol, dst: &SpecialSymbol, lam: &Symbol) -> Result<Symbol, DomainError> {
        let m = src.subset_of(lam)?;
        Ok(dst.lambda(self.apply(src, dst, m)?))
    }
}

/// `(Z_(m), Z′_(m))`.
pub fn model_symbols(m: u32) -> (SpecialSymbol, SpecialSymbol) {
    let z = Symbol::from_reduced(
        (0..=m).rev().map(|i| 2 * i).collect(),
        (1..=m).rev().map(|i| 2 * i - 1).collect(),
    );
    let zp = Symbol::from_reduced(
        (1..=m).rev().map(|i| 2 * i - 1).collect(),
        (1..=m).rev().map(|i| 2 * i - 2).collect(),
    );
    (
        SpecialSymbol::new(z).expect("model symbol is special"),
        SpecialSymbol::new(zp).expect("model symbol is special"),
    )
}

/// Which family θ starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `m′ = m + 1`: `S̄_Z → S̄_{Z′}`.
    ZToZp,
    /// `m′ = m`: `S̄_{Z′} → S̄_Z`.
    ZpToZ,
}

fn require_regular(p: &HowePair) -> Result<Direction, DomainError> {
    for s in [p.z(), p.zp()] {
        if !s.is_regular() {
            return Err(DomainError::NotRegular(s.to_string()));
        }
    }
    let (m, mp) = (p.m(), p.m_prime());
    if mp == m + 1 {
        Ok(Direction::ZToZp)
    } else if mp == m {
        Ok(Direction::ZpToZ)
    } else {
        Err(DomainError::SizeMismatch {
            z: p.z().to_string(),
            zp: p.zp().to_string(),
        })
    }
}

/// The entry map θ of a regular size-compatible pair and its direction.
pub fn theta(p: &HowePair) -> Result<(Direction, EntryMap), DomainError> {
    let dir = require_regular(p)?;
    let (a, b) = (p.z().symbol().top(), p.z().symbol().bottom());
    let (c, d) = (p.zp().symbol().top(), p.zp().symbol().bottom());
    let map = match dir {
        Direction::ZToZp => EntryMap::from_pairs(
            a.iter()
                .zip(d)
                .map(|(&ai, &di)| (Entry::top(ai), Entry::bottom(di)))
                .chain(b.iter().zip(&c[1..]).map(|(&bi, &ci1)| (Entry::bottom(bi), Entry::top(ci1)))),
        ),
        Direction::ZpToZ => EntryMap::from_pairs(
            c.iter()
                .zip(b)
                .map(|(&ci, &bi)| (Entry::top(ci), Entry::bottom(bi)))
                .chain(d.iter().zip(&a[1..]).map(|(&di, &ai1)| (Entry::bottom(di), Entry::top(ai1)))),
        ),
    };
    Ok((dir, map))
}

fn theta_with(p: &HowePair, input: &Symbol, forced: bool) -> Result<Symbol, DomainError> {
    let (dir, map) = theta(p)?;
    let (src, dst) = match dir {
        Direction::ZToZp => (p.z(), p.zp()),
        Direction::ZpToZ => (p.zp(), p.z()),
    };
    let m = src.subset_of(input)?;
    let mut image = map.apply(src, dst, m)?;
    if forced {
        // the first top entry is never in the image of θ
        let first = dst.symbol().top()[0];
        image = image.with(dst.index_of(Entry::top(first)).expect("regular symbols have only singles"));
    }
    Ok(dst.lambda(image))
}

/// `Λ_M ↦ Λ_{θ(M)}`.
pub fn theta_plus(p: &HowePair, input: &Symbol) -> Result<Symbol, DomainError> {
    theta_with(p, input, false)
}

/// `Λ_M ↦ Λ_{{c_1} ∪ θ(M)}`, or with `a_1` when `m′ = m`.
pub fn theta_minus(p: &HowePair, input: &Symbol) -> Result<Symbol, DomainError> {
    theta_with(p, input, true)
}

/// `h`: relabels a regular defect-1 symbol of size `(m+1, m)` onto `Z_(m)`.
pub fn iso_h(z: &SpecialSymbol) -> Result<EntryMap, DomainError> {
    if !z.is_regular() || z.defect() != 1 {
        return Err(DomainError::NotRegular(z.to_string()));
    }
    let m = z.symbol().bottom().len() as u32;
    let (a, b) = (z.symbol().top(), z.symbol().bottom());
    Ok(EntryMap::from_pairs(
        a.iter()
            .zip(1..)
            .map(|(&ai, i)| (Entry::top(ai), Entry::top(2 * m + 2 - 2 * i)))
            .chain(b.iter().zip(1..).map(|(&bi, i)| (Entry::bottom(bi), Entry::bottom(2 * m + 1 - 2 * i)))),
    ))
}

/// `h′`: relabels a regular defect-0 symbol of size `(m′, m′)` onto `Z′_(m′)`.
pub fn iso_h_prime(zp: &SpecialSymbol) -> Result<EntryMap, DomainError> {
    if !zp.is_regular() || zp.defect() != 0 {
        return Err(DomainError::NotRegular(zp.to_string()));
    }
    let m = zp.symbol().top().len() as u32;
    let (c, d) = (zp.symbol().top(), zp.symbol().bottom());
    Ok(EntryMap::from_pairs(
        c.iter()
            .zip(1..)
            .map(|(&ci, i)| (Entry::top(ci), Entry::top(2 * m + 1 - 2 * i)))
            .chain(d.iter().zip(1..).map(|(&di, i)| (Entry::bottom(di), Entry::bottom(2 * m - 2 * i)))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lit: &str) -> Symbol {
        lit.parse().unwrap()
    }

    fn pair(a: &str, b: &str) -> HowePair {
        HowePair::parse(a, b).unwrap()
    }

    #[test]
    fn model_symbol_examples() {
        let lit = |m| {
            let (z, zp) = model_symbols(m);
            (z.to_string(), zp.to_string())
        };
        assert_eq!(lit(0), ("[0|]".into(), "[|]".into()));
        assert_eq!(lit(1), ("[2,0|1]".into(), "[1|0]".into()));
        assert_eq!(lit(2), ("[4,2,0|3,1]".into(), "[3,1|2,0]".into()));
    }

    #[test]
    fn theta_plus_examples() {
        let p = pair("[2,0|1]", "[1|0]");
        assert_eq!(theta_plus(&p, &s("[1|0]")).unwrap(), s("[2,0|1]"));
        assert_eq!(theta_plus(&p, &s("[0|1]")).unwrap(), s("[2,1|0]"));
        let q = pair("[0|]", "[1|0]");
        assert_eq!(theta_plus(&q, &s("[0|]")).unwrap(), s("[1|0]"));
    }

    #[test]
    fn theta_minus_examples() {
        let q = pair("[0|]", "[1|0]");
        assert_eq!(theta_minus(&q, &s("[0|]")).unwrap(), s("[|1,0]"));
        let p = pair("[2,0|1]", "[1|0]");
        // [|1,0] is Λ′ for {c1}; θ sends c1 to b1 and a1 is forced
        assert_eq!(theta_minus(&p, &s("[|1,0]")).unwrap(), s("[1,0|2]"));
        // [1,0|] is Λ′ for {d1}; θ sends d1 to a2
        assert_eq!(theta_minus(&p, &s("[1,0|]")).unwrap(), s("[|2,1,0]"));
    }

    #[test]
    fn theta_rejects_bad_input() {
        let p = pair("[1,0|1]", "[1|0]");
        assert!(matches!(theta_plus(&p, &s("[1|0]")), Err(DomainError::NotRegular(_))));
        let q = pair("[2,0|1]", "[1|0]");
        // wrong direction: m′ = m takes inputs from the Z′ side
        assert!(theta_plus(&q, &s("[2,0|1]")).is_err());
        let r = pair("[1|]", "[2,1|1,0]");
        assert!(theta_plus(&r, &s("[1|]")).is_err());
    }

    #[test]
    fn iso_h_examples() {
        let z = SpecialSymbol::parse("[3,0|1]").unwrap();
        let h = iso_h(&z).unwrap();
        assert_eq!(h.get(Entry::top(3)), Some(Entry::top(2)));
        assert_eq!(h.get(Entry::top(0)), Some(Entry::top(0)));
        assert_eq!(h.get(Entry::bottom(1)), Some(Entry::bottom(1)));
        let (z2, zp2) = model_symbols(2);
        assert!(iso_h(&z2).unwrap().iter().all(|(k, v)| k == v));
        assert!(iso_h_prime(&zp2).unwrap().iter().all(|(k, v)| k == v));
        assert!(iso_h(&SpecialSymbol::parse("[1,0|1]").unwrap()).is_err());
    }
}
