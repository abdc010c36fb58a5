//! Ascending/descending chains, A- and D-indices, contractions, extensions
//! and delta-indices of word posets of the longest element.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::{bit, mask_elements, Ideal, Mask, WordPoset};
use crate::wiring::chains_from_wires;
use crate::words::Word;

/// Which chain to use: ascending (`A`, columns 1..n) or descending
/// (`D`, columns n..1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    D,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::A, Side::D];

    pub fn as_char(self) -> char {
        match self {
            Side::A => 'A',
            Side::D => 'D',
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::A => Side::D,
            Side::D => Side::A,
        }
    }

    /// Column of the `i`-th chain element (1-based) in a poset of width `n`.
    fn column(self, i: usize, n: usize) -> usize {
        match self {
            Side::A => i,
            Side::D => n + 1 - i,
        }
    }
}

/// A word over `{A, D}`, written `"AADD"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DeltaSeq(Vec<Side>);

impl DeltaSeq {
    pub fn new(sides: Vec<Side>) -> Self {
        DeltaSeq(sides)
    }

    pub fn sides(&self) -> &[Side] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All sequences of the given length, in lexicographic order (`A < D`).
    pub fn all(len: usize) -> impl Iterator<Item = DeltaSeq> {
        (0..1u64 << len).map(move |code| {
            DeltaSeq(
                (0..len)
                    .map(|k| {
                        if code >> (len - 1 - k) & 1 == 0 {
                            Side::A
                        } else {
                            Side::D
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl fmt::Display for DeltaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for DeltaSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'A' | 'a' => Ok(Side::A),
                'D' | 'd' => Ok(Side::D),
                _ => Err(Error::Parse(format!("delta must be over {{A, D}}, got {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(DeltaSeq)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexVector(pub Vec<usize>);

impl IndexVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Chain elements in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn mask(&self) -> Mask {
        self.0.iter().fold(0, |m, &x| m | bit(x))
    }

    /// 1-based labels, as printed.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x + 1).collect()
    }
}

fn require_longest(p: &WordPoset) -> Result<()> {
    if p.width() == 0 || !p.has_longest_shape() {
        return Err(Error::NotLongest(format!("column sizes {:?}", p.column_sizes())));
    }
    Ok(())
}

/// The unique chain of the given side.
///
/// The lowest candidate is built by taking, column by column, the smallest
/// element above the previous one; the highest by the mirror-image scan from
/// the top. Every such chain lies between the two, so it is unique exactly
/// when they agree.
pub fn chain(p: &WordPoset, side: Side) -> Result<Chain> {
    require_longest(p)?;
    let n = p.width();
    let missing = || Error::NotLongest(format!("no {side:?}-chain in {p}"));

    let mut lowest = Vec::with_capacity(n);
    let mut floor: Mask = p.full_mask();
    for i in 1..=n {
        let col = p.column_elements(side.column(i, n));
        let x = *col.iter().find(|&&x| floor & bit(x) != 0).ok_or_else(missing)?;
        lowest.push(x);
        floor = p.above(x);
    }

    let mut highest = vec![0; n];
    let mut ceiling: Mask = p.full_mask();
    for i in (1..=n).rev() {
        let col = p.column_elements(side.column(i, n));
        let x = *col.iter().rev().find(|&&x| ceiling & bit(x) != 0).ok_or_else(missing)?;
        highest[i - 1] = x;
        ceiling = p.below(x);
    }

    if lowest != highest {
        return Err(Error::NotLongest(format!("{side:?}-chain is not unique in {p}")));
    }
    Ok(Chain(lowest))
}

pub fn descending_chain(p: &WordPoset) -> Result<Chain> {
    chain(p, Side::D)
}

pub fn ascending_chain(p: &WordPoset) -> Result<Chain> {
    chain(p, Side::A)
}

/// Chains of a reduced word computed twice: from its word poset and from the
/// wires of its wiring diagram. Returns `(ascending, descending)`; panics if
/// the two disagree.
pub fn word_chains(word: &Word) -> Result<(Chain, Chain)> {
    let (a_rows, d_rows) = chains_from_wires(word)?;
    let p = WordPoset::from_word(word)?;
    let a = ascending_chain(&p)?;
    let d = descending_chain(&p)?;
    assert_eq!(a.labels(), a_rows, "ascending chain disagrees with wire 1 of {word}");
    assert_eq!(d.labels(), d_rows, "descending chain disagrees with the last wire of {word}");
    Ok((a, d))
}

fn above_in_column(p: &WordPoset, c: &Chain) -> usize {
    c.0.iter()
        .map(|&x| (p.above(x) & p.column_mask(p.column(x))).count_ones() as usize)
        .sum()
}

fn below_in_column(p: &WordPoset, c: &Chain) -> Mask {
    c.0.iter()
        .fold(0, |m, &x| m | (p.below(x) & p.column_mask(p.column(x))))
}

/// Number of elements above the chain within its columns.
pub fn index(p: &WordPoset, side: Side) -> Result<usize> {
    Ok(above_in_column(p, &chain(p, side)?))
}

pub fn ind_a(p: &WordPoset) -> Result<usize> {
    index(p, Side::A)
}

pub fn ind_d(p: &WordPoset) -> Result<usize> {
    index(p, Side::D)
}

/// Elements below the chain within its columns.
pub fn contraction_ideal(p: &WordPoset, side: Side) -> Result<Ideal> {
    let c = chain(p, side)?;
    let mask = below_in_column(p, &c);
    if !p.is_ideal(mask) {
        return Err(Error::InvalidPoset(format!("{side:?}-contraction set is not an ideal in {p}")));
    }
    Ok(Ideal::from_mask(mask))
}

fn contract_with(p: &WordPoset, side: Side, c: &Chain) -> Result<WordPoset> {
    let ideal = below_in_column(p, c);
    let keep = p.full_mask() & !c.mask();
    // D: everything outside the ideal moves left. A: the ideal moves left.
    let shifted = match side {
        Side::D => keep & !ideal,
        Side::A => ideal,
    };
    if let Some(x) = mask_elements(shifted).find(|&x| p.column(x) == 1) {
        return Err(Error::NotLongest(format!("element {} would leave column 1", x + 1)));
    }
    Ok(p.induced(keep, p.width() - 1, |x| {
        if shifted & bit(x) != 0 {
            p.columns()[x] - 1
        } else {
            p.columns()[x]
        }
    }))
}

/// Removes the chain of the given side and shifts columns: for `D` the
/// elements outside the contraction ideal, for `A` the ideal itself, move
/// one column left. Survivors keep their relative labels.
pub fn contract(p: &WordPoset, side: Side) -> Result<WordPoset> {
    let c = chain(p, side)?;
    contract_with(p, side, &c)
}

/// Inverse of [`contract`]: inserts a new chain of length `width + 1` over
/// the ideal `ideal` of `p`.
///
/// The order is generated by the covers of `p` inside and outside the ideal,
/// the new chain itself, the top ideal element of each column below the
/// chain elements in adjacent columns, and those chain elements below the
/// bottom complement element of the column. Taking extrema over all of the
/// ideal instead of per column loses relations such as `2 < 4` in
/// `1,2,1,3,2,1` over `1,2,1`. New chain elements get ids
/// `len..len + width + 1`.
pub fn extend(p: &WordPoset, ideal: &Ideal, side: Side) -> Result<WordPoset> {
    let inside = ideal.mask();
    if inside & !p.full_mask() != 0 {
        return Err(Error::InvalidPoset("ideal contains foreign elements".into()));
    }
    if !p.is_ideal(inside) {
        let x = mask_elements(inside)
            .find(|&x| p.below(x) & !inside != 0)
            .expect("some element violates closure");
        let y = mask_elements(p.below(x) & !inside).next().expect("nonempty");
        return Err(Error::NotAnIdeal {
            below: y + 1,
            above: x + 1,
        });
    }
    let n = p.width() + 1;
    let len = p.len();
    let outside = p.full_mask() & !inside;

    let mut columns: Vec<u8> = (0..len)
        .map(|x| {
            let f = p.columns()[x];
            match (side, inside & bit(x) != 0) {
                (Side::D, false) | (Side::A, true) => f + 1,
                _ => f,
            }
        })
        .collect();
    columns.extend((1..=n).map(|i| side.column(i, n) as u8));
    let chain_id = |i: usize| len + i - 1;

    let mut relations = Vec::new();
    for (x, y) in p.covers() {
        let same_side = (inside & bit(x) != 0) == (inside & bit(y) != 0);
        if same_side {
            relations.push((x, y));
        }
    }
    for i in 1..n {
        relations.push((chain_id(i), chain_id(i + 1)));
    }
    let adjacent = |a: usize, b: usize| columns[a].abs_diff(columns[b]) == 1;
    for c in 1..n {
        let column = p.column_mask(c);
        let tops = p.maximal_in(inside & column);
        let bottoms = p.minimal_in(outside & column);
        for i in 1..=n {
            for x in mask_elements(tops) {
                if adjacent(x, chain_id(i)) {
                    relations.push((x, chain_id(i)));
                }
            }
            for y in mask_elements(bottoms) {
                if adjacent(chain_id(i), y) {
                    relations.push((chain_id(i), y));
                }
            }
        }
    }
    WordPoset::from_relations(n, columns, &relations)
}

/// `(I_1, ..., I_{n-1})` with `I_k = ind_{delta_k}` of the poset contracted
/// successively by `delta_{n-1}, ..., delta_{k+1}`.
pub fn delta_index(p: &WordPoset, delta: &DeltaSeq) -> Result<IndexVector> {
    require_longest(p)?;
    let n = p.width();
    if delta.len() + 1 != n {
        return Err(Error::Parse(format!(
            "delta {delta} has length {}, expected {}",
            delta.len(),
            n - 1
        )));
    }
    let mut out = vec![0; n - 1];
    let mut current = p.clone();
    for k in (1..n).rev() {
        let side = delta.sides()[k - 1];
        let c = chain(&current, side)?;
        out[k - 1] = above_in_column(&current, &c);
        if k > 1 {
            current = contract_with(&current, side, &c)?;
        }
    }
    Ok(IndexVector(out))
}

/// All `2^(n-1)` delta-indices, keyed by delta.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile(pub BTreeMap<DeltaSeq, IndexVector>);

impl Profile {
    pub fn get(&self, delta: &DeltaSeq) -> Option<&IndexVector> {
        self.0.get(delta)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DeltaSeq, &IndexVector)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Every delta-index at once. Contractions are shared along common suffixes
/// of delta, so each intermediate poset is built a single time.
pub fn full_profile(p: &WordPoset) -> Result<Profile> {
    require_longest(p)?;
    let mut out = BTreeMap::new();
    if p.width() == 1 {
        out.insert(DeltaSeq::default(), IndexVector::default());
        return Ok(Profile(out));
    }
    let mut suffix = Vec::new();
    let mut values = Vec::new();
    profile_rec(p, &mut suffix, &mut values, &mut out)?;
    Ok(Profile(out))
}

/// `suffix` and `values` hold `delta_{m}, ..., delta_{n-1}` and the matching
/// indices, latest first reversed (i.e. pushed from the top stage down).
fn profile_rec(
    p: &WordPoset,
    suffix: &mut Vec<Side>,
    values: &mut Vec<usize>,
    out: &mut BTreeMap<DeltaSeq, IndexVector>,
) -> Result<()> {
    for side in Side::BOTH {
        let c = chain(p, side)?;
        suffix.push(side);
        values.push(above_in_column(p, &c));
        if p.width() == 2 {
            let delta = DeltaSeq(suffix.iter().rev().copied().collect());
            out.insert(delta, IndexVector(values.iter().rev().copied().collect()));
        } else {
            let next = contract_with(p, side, &c)?;
            profile_rec(&next, suffix, values, out)?;
        }
        suffix.pop();
        values.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{longest_words, standard_word};

    fn poset(s: &str) -> WordPoset {
        WordPoset::from_word(&s.parse().unwrap()).unwrap()
    }

    const FIFTEEN: &str = "4,3,4,2,3,4,1,2,5,4,3,2,1,4,5";

    #[test]
    fn chains_of_examples() {
        let p = poset("1,2,1,3,2,1");
        assert_eq!(descending_chain(&p).unwrap().labels(), [4, 5, 6]);
        assert_eq!(ascending_chain(&p).unwrap().labels(), [1, 2, 4]);
        let q = poset("1,3,2,1,3,2");
        assert_eq!(descending_chain(&q).unwrap().labels(), [2, 3, 4]);
        assert_eq!(ascending_chain(&q).unwrap().labels(), [1, 3, 5]);
        let s = poset("1");
        assert_eq!(descending_chain(&s).unwrap().labels(), [1]);
        assert_eq!(ascending_chain(&s).unwrap().labels(), [1]);
    }

    #[test]
    fn chains_reject_other_posets() {
        let w: Word = "1,2".parse().unwrap();
        let p = WordPoset::from_word(&w).unwrap();
        assert!(matches!(chain(&p, Side::A), Err(Error::NotLongest(_))));
    }

    #[test]
    fn indices_of_examples() {
        let p = poset("1,2,1,3,2,1");
        assert_eq!((ind_d(&p).unwrap(), ind_a(&p).unwrap()), (0, 3));
        let q = poset("1,3,2,1,3,2");
        assert_eq!((ind_d(&q).unwrap(), ind_a(&q).unwrap()), (2, 2));
        assert_eq!(ind_a(&poset("2,1,2")).unwrap(), 0);
        assert_eq!(ind_a(&poset("1,2,1")).unwrap(), 1);
        let r = poset(FIFTEEN);
        assert_eq!((ind_a(&r).unwrap(), ind_d(&r).unwrap()), (2, 2));
    }

    #[test]
    fn contraction_ideals() {
        assert_eq!(contraction_ideal(&poset("1,2,1,3,2,1"), Side::D).unwrap().to_string(), "{1,2,3}");
        assert_eq!(contraction_ideal(&poset("2,1,2"), Side::A).unwrap().to_string(), "{1}");
        assert!(contraction_ideal(&poset("1"), Side::D).unwrap().is_empty());
    }

    #[test]
    fn contractions_of_small_examples() {
        let p = poset("1,2,1,3,2,1");
        assert!(contract(&p, Side::D).unwrap().is_isomorphic(&poset("1,2,1")));
        let q = contract(&poset("2,1,2"), Side::A).unwrap();
        assert!(q.is_isomorphic(&poset("1")));
    }

    /// Hasse diagrams of the contractions of the 15-letter example, read off
    /// the figure: ten elements each, labels inherited from the word.
    #[test]
    fn contractions_of_fifteen_letter_word() {
        let p = poset(FIFTEEN);
        let d = contract(&p, Side::D).unwrap();
        let a = contract(&p, Side::A).unwrap();
        assert_eq!((d.len(), a.len()), (10, 10));
        assert_eq!(d.width(), 4);
        assert_eq!(descending_chain(&p).unwrap().labels(), [9, 10, 11, 12, 13]);
        assert_eq!(ascending_chain(&p).unwrap().labels(), [7, 8, 11, 14, 15]);
        for q in [&d, &a] {
            assert!(q.has_longest_shape());
            let w = q.lexmin_word();
            assert!(w.is_longest_word());
            assert!(WordPoset::from_word(&w).unwrap().is_isomorphic(q));
        }
    }

    #[test]
    fn extensions_invert_small_contractions() {
        let base = poset("1,2,1");
        let full = Ideal::from_mask(base.full_mask());
        assert!(extend(&base, &full, Side::D).unwrap().is_isomorphic(&poset("1,2,1,3,2,1")));
        let single = poset("1");
        let e = extend(&single, &Ideal::from_mask(1), Side::A).unwrap();
        assert!(e.is_isomorphic(&poset("2,1,2")));
    }

    #[test]
    fn extensions_invert_contractions() {
        for n in 2..=4 {
            for word in longest_words(n) {
                let p = WordPoset::from_word(&word).unwrap();
                for side in Side::BOTH {
                    let c = contract(&p, side).unwrap();
                    let ideal = contraction_ideal(&p, side).unwrap();
                    // Survivors keep their relative order, so the ideal
                    // translates by rank among survivors.
                    let chain = chain(&p, side).unwrap().mask();
                    let survivors: Vec<usize> =
                        mask_elements(p.full_mask() & !chain).collect();
                    let relabeled = survivors
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| ideal.contains(x))
                        .fold(0, |m, (k, _)| m | bit(k));
                    let e = extend(&c, &Ideal::from_mask(relabeled), side).unwrap();
                    assert!(e.is_isomorphic(&p), "{word} {side:?}");
                }
            }
        }
    }

    #[test]
    fn extension_rejects_non_ideal() {
        let p = poset("1,2,1");
        // {3} without 1, 2 below it.
        let bad = Ideal::from_mask(0b100);
        assert!(matches!(extend(&p, &bad, Side::D), Err(Error::NotAnIdeal { .. })));
    }

    #[test]
    fn delta_indices() {
        let p = poset(FIFTEEN);
        let v = delta_index(&p, &"AAAA".parse().unwrap()).unwrap();
        assert_eq!(v, IndexVector(vec![1, 2, 3, 2]));
        let s = WordPoset::from_word(&standard_word(3)).unwrap();
        assert_eq!(delta_index(&s, &"DD".parse().unwrap()).unwrap().to_string(), "0,0");
        assert!(delta_index(&poset("1"), &DeltaSeq::default()).unwrap().0.is_empty());
        assert!(delta_index(&s, &"D".parse().unwrap()).is_err());
    }

    #[test]
    fn profile_matches_individual_indices() {
        for word in longest_words(4).step_by(13) {
            let p = WordPoset::from_word(&word).unwrap();
            let profile = full_profile(&p).unwrap();
            assert_eq!(profile.len(), 8);
            for (delta, v) in profile.iter() {
                assert_eq!(&delta_index(&p, delta).unwrap(), v);
            }
        }
        let single = full_profile(&poset("1")).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn profiles_of_the_colliding_pair() {
        let p = poset("3,2,1,2,3,4,3,2,3,1");
        let q = poset("1,3,2,1,4,3,4,2,3,1");
        let (pp, qp) = (full_profile(&p).unwrap(), full_profile(&q).unwrap());
        for delta in DeltaSeq::all(3) {
            if delta.sides()[2] == Side::A {
                assert_eq!(pp.get(&delta), qp.get(&delta), "{delta}");
            }
        }
        assert_eq!(ind_d(&p).unwrap(), 1);
        assert_eq!(ind_d(&q).unwrap(), 2);
        assert!(!p.is_isomorphic(&q));
    }

    #[test]
    fn word_chains_agree_with_wires() {
        for n in 1..=4 {
            for word in longest_words(n) {
                let (a, d) = word_chains(&word).unwrap();
                assert_eq!((a.mask() & d.mask()).count_ones(), 1);
            }
        }
    }

    #[test]
    fn delta_parsing() {
        let d: DeltaSeq = "ADDA".parse().unwrap();
        assert_eq!(d.to_string(), "ADDA");
        assert!("AXD".parse::<DeltaSeq>().is_err());
        let all: Vec<String> = DeltaSeq::all(2).map(|d| d.to_string()).collect();
        assert_eq!(all, ["AA", "AD", "DA", "DD"]);
    }
}
