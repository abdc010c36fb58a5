//! Word posets: a finite poset with a column function whose columns are chains.
//!
//! Elements are identified by 0-based ids `0..len()`; every text rendering
//! prints them 1-based, so id `k` is shown as `k + 1` (the position of the
//! letter in the source word). Columns are 1-based.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::words::Word;

/// Bitset over the ground set.
pub type Mask = u128;

/// Largest ground set supported by [`Mask`] (the triangular number for `n = 15`).
pub const MAX_ELEMENTS: usize = 120;

#[inline]
pub(crate) fn bit(x: usize) -> Mask {
    1 << x
}

/// Iterates the set bits of a mask in increasing order.
pub fn mask_elements(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let x = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(x)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordPoset {
    width: usize,
    columns: Vec<u8>,
    below: Vec<Mask>,
    above: Vec<Mask>,
    /// `column_masks[c]` holds the elements of column `c`; index 0 is unused.
    column_masks: Vec<Mask>,
}

/// Hash key identifying a word poset up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// A downward-closed subset of a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Ideal {
    mask: Mask,
}

impl Ideal {
    pub fn from_mask(mask: Mask) -> Self {
        Ideal { mask }
    }

    pub fn empty() -> Self {
        Ideal { mask: 0 }
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask & bit(x) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.mask).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in mask_elements(self.mask).enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "}}")
    }
}

impl WordPoset {
    /// The word poset of a reduced word: `j < k` whenever `j` precedes `k`
    /// and the letters differ by one, closed transitively.
    pub fn from_word(word: &Word) -> Result<Self> {
        if word.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge(word.len()));
        }
        if !word.is_reduced() {
            return Err(Error::NotReduced(word.to_string()));
        }
        let letters = word.letters();
        let mut below = vec![0 as Mask; letters.len()];
        for k in 0..letters.len() {
            for j in 0..k {
                if letters[j].abs_diff(letters[k]) == 1 {
                    below[k] |= below[j] | bit(j);
                }
            }
        }
        Ok(Self::from_parts(word.rank(), letters.to_vec(), below))
    }

    /// Builds a poset from generating relations `(x, y)` meaning `x < y`,
    /// taking the transitive closure. Fails on cycles or non-chain columns.
    pub fn from_relations(width: usize, columns: Vec<u8>, relations: &[(usize, usize)]) -> Result<Self> {
        let len = columns.len();
        if len > MAX_ELEMENTS {
            return Err(Error::TooLarge(len));
        }
        if let Some(&c) = columns.iter().find(|&&c| c == 0 || c as usize > width) {
            return Err(Error::InvalidPoset(format!("column {c} outside [1, {width}]")));
        }
        let mut below = vec![0 as Mask; len];
        for &(x, y) in relations {
            if x >= len || y >= len {
                return Err(Error::InvalidPoset(format!("relation ({x}, {y}) out of range")));
            }
            below[y] |= bit(x);
        }
        // Warshall over bitsets.
        for k in 0..len {
            let bk = below[k];
            for row in below.iter_mut() {
                if *row & bit(k) != 0 {
                    *row |= bk;
                }
            }
        }
        if let Some(x) = (0..len).find(|&x| below[x] & bit(x) != 0) {
            return Err(Error::InvalidPoset(format!("relations contain a cycle through {}", x + 1)));
        }
        let poset = Self::from_parts(width, columns, below);
        poset.check_chain_columns()?;
        Ok(poset)
    }

    /// Assembles a poset from an already transitive strict-below relation.
    pub(crate) fn from_parts(width: usize, columns: Vec<u8>, below: Vec<Mask>) -> Self {
        let len = columns.len();
        let mut above = vec![0 as Mask; len];
        for (y, &b) in below.iter().enumerate() {
            for x in mask_elements(b) {
                above[x] |= bit(y);
            }
        }
        let mut column_masks = vec![0 as Mask; width + 1];
        for (x, &c) in columns.iter().enumerate() {
            column_masks[c as usize] |= bit(x);
        }
        WordPoset {
            width,
            columns,
            below,
            above,
            column_masks,
        }
    }

    fn check_chain_columns(&self) -> Result<()> {
        for x in 0..self.len() {
            let same = self.column_masks[self.column(x)] & !bit(x);
            let comparable = self.below[x] | self.above[x];
            if same & !comparable != 0 {
                let y = mask_elements(same & !comparable).next().unwrap();
                return Err(Error::InvalidPoset(format!(
                    "elements {} and {} share column {} but are incomparable",
                    x + 1,
                    y + 1,
                    self.column(x)
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Number of columns `n`; for posets of the longest element of `S_{n+1}`
    /// this is the rank.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn full_mask(&self) -> Mask {
        if self.is_empty() {
            0
        } else {
            Mask::MAX >> (Mask::BITS as usize - self.len())
        }
    }

    pub fn column(&self, x: usize) -> usize {
        self.columns[x] as usize
    }

    pub fn columns(&self) -> &[u8] {
        &self.columns
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.below[y] & bit(x) != 0
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.less(x, y) || self.less(y, x)
    }

    /// Strict down-set of `x`.
    pub fn below(&self, x: usize) -> Mask {
        self.below[x]
    }

    /// Strict up-set of `x`.
    pub fn above(&self, x: usize) -> Mask {
        self.above[x]
    }

    pub fn column_mask(&self, column: usize) -> Mask {
        self.column_masks.get(column).copied().unwrap_or(0)
    }

    pub fn column_size(&self, column: usize) -> usize {
        self.column_mask(column).count_ones() as usize
    }

    pub fn column_sizes(&self) -> Vec<usize> {
        (1..=self.width).map(|c| self.column_size(c)).collect()
    }

    /// Position of `x` in its column chain, counted from the bottom (0-based).
    pub fn rank_in_column(&self, x: usize) -> usize {
        (self.below[x] & self.column_masks[self.column(x)]).count_ones() as usize
    }

    /// The elements of a column, bottom to top.
    pub fn column_elements(&self, column: usize) -> Vec<usize> {
        let mut elems: Vec<usize> = mask_elements(self.column_mask(column)).collect();
        elems.sort_by_key(|&x| self.rank_in_column(x));
        elems
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.less(x, y) && self.above[x] & self.below[y] == 0
    }

    pub fn upper_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        mask_elements(self.above[x]).filter(move |&y| self.above[x] & self.below[y] == 0)
    }

    /// Covering pairs `(x, y)` with `x` covered by `y`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            out.extend(self.upper_covers(x).map(|y| (x, y)));
        }
        out.sort_unstable();
        out
    }

    /// Every cover joins adjacent columns.
    pub fn has_adjacent_column_covers(&self) -> bool {
        self.covers()
            .iter()
            .all(|&(x, y)| self.column(x).abs_diff(self.column(y)) == 1)
    }

    /// Size `n(n+1)/2` with no empty column, as for every word poset of the
    /// longest element of `S_{n+1}`.
    pub fn has_longest_shape(&self) -> bool {
        self.len() == crate::words::triangular(self.width)
            && (1..=self.width).all(|c| self.column_size(c) > 0)
    }

    pub fn is_ideal(&self, mask: Mask) -> bool {
        mask_elements(mask).all(|x| self.below[x] & !mask == 0)
    }

    /// Elements of `mask` not below any other element of `mask`.
    pub fn maximal_in(&self, mask: Mask) -> Mask {
        mask_elements(mask)
            .filter(|&x| self.above[x] & mask == 0)
            .fold(0, |m, x| m | bit(x))
    }

    /// Elements of `mask` not above any other element of `mask`.
    pub fn minimal_in(&self, mask: Mask) -> Mask {
        mask_elements(mask)
            .filter(|&x| self.below[x] & mask == 0)
            .fold(0, |m, x| m | bit(x))
    }

    /// Per-column sizes of a subset, columns `1..=width`.
    pub fn column_counts(&self, mask: Mask) -> Vec<usize> {
        (1..=self.width)
            .map(|c| (self.column_masks[c] & mask).count_ones() as usize)
            .collect()
    }

    /// Relabels elements in (column, rank-in-column) order. Since columns are
    /// chains, isomorphic word posets have identical canonical forms.
    pub fn canonical_form(&self) -> WordPoset {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.columns[x], self.rank_in_column(x)));
        let mut new_id = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let columns = order.iter().map(|&old| self.columns[old]).collect();
        let below = order
            .iter()
            .map(|&old| mask_elements(self.below[old]).fold(0, |m, x| m | bit(new_id[x])))
            .collect();
        Self::from_parts(self.width, columns, below)
    }

    /// Width, column sizes, then the sorted cover list over canonical labels.
    pub fn canonical_key(&self) -> CanonicalKey {
        let canon = self.canonical_form();
        let mut bytes = Vec::with_capacity(1 + self.width + 2 * self.len());
        bytes.push(self.width as u8);
        bytes.extend(canon.column_sizes().iter().map(|&s| s as u8));
        for (x, y) in canon.covers() {
            bytes.push(x as u8);
            bytes.push(y as u8);
        }
        CanonicalKey(bytes)
    }

    pub fn is_isomorphic(&self, other: &WordPoset) -> bool {
        self.width == other.width
            && self.len() == other.len()
            && self.canonical_form() == other.canonical_form()
    }

    /// Relabels column `i` as `width + 1 - i`.
    pub fn column_flip(&self) -> WordPoset {
        let w = self.width as u8;
        let columns = self.columns.iter().map(|&c| w + 1 - c).collect();
        Self::from_parts(self.width, columns, self.below.clone())
    }

    /// The sub-poset on `keep` with the induced order, relabeled `0..` in the
    /// order of the old ids, with columns given by `column_of(old_id)`.
    pub(crate) fn induced(&self, keep: Mask, width: usize, column_of: impl Fn(usize) -> u8) -> WordPoset {
        let kept: Vec<usize> = mask_elements(keep).collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (new, &old) in kept.iter().enumerate() {
            new_id[old] = new;
        }
        let columns = kept.iter().map(|&old| column_of(old)).collect();
        let below = kept
            .iter()
            .map(|&old| mask_elements(self.below[old] & keep).fold(0, |m, x| m | bit(new_id[x])))
            .collect();
        Self::from_parts(width, columns, below)
    }

    /// The element that may be added next in `column` to the ideal `mask`,
    /// if any.
    fn next_in_column(&self, mask: Mask, column: usize) -> Option<usize> {
        let rest = self.column_masks[column] & !mask;
        if rest == 0 {
            return None;
        }
        // The minimum of the remaining column chain.
        let x = mask_elements(rest).find(|&x| self.below[x] & rest == 0)?;
        (self.below[x] & !mask == 0).then_some(x)
    }

    /// Greedy linear extension of the ideal `mask` that always adds the
    /// available element in the smallest column.
    fn greedy_extension(&self, start: Mask, target: Mask, out: &mut Vec<usize>) {
        let mut mask = start;
        while mask != target {
            let x = (1..=self.width)
                .filter_map(|c| self.next_in_column(mask, c))
                .find(|&x| target & bit(x) != 0)
                .expect("target is an ideal containing start");
            out.push(x);
            mask |= bit(x);
        }
    }

    /// Streams every linear extension once. Extensions are produced in
    /// lexicographic order of their column sequences.
    pub fn linear_extensions(&self) -> LinearExtensions<'_> {
        LinearExtensions {
            poset: self,
            mask: 0,
            order: Vec::new(),
            next_column: Vec::new(),
            done: false,
        }
    }

    /// Counts linear extensions exactly.
    ///
    /// Forward dynamic program over ideals, keyed by the per-column count
    /// vector as a mixed-radix integer; columns are chains, so the counts
    /// determine the ideal.
    pub fn count_linear_extensions(&self) -> BigUint {
        let sizes = self.column_sizes();
        let mut weights = Vec::with_capacity(self.width);
        let mut w: u128 = 1;
        for &s in &sizes {
            weights.push(w);
            w = w.checked_mul(s as u128 + 1).expect("mixed-radix key fits in u128");
        }
        let mut layer: HashMap<u128, (Mask, BigUint)> = HashMap::new();
        layer.insert(0, (0, BigUint::one()));
        for _ in 0..self.len() {
            let mut next: HashMap<u128, (Mask, BigUint)> = HashMap::with_capacity(layer.len() * 2);
            for (key, (mask, count)) in layer {
                for c in 1..=self.width {
                    if let Some(x) = self.next_in_column(mask, c) {
                        let entry = next
                            .entry(key + weights[c - 1])
                            .or_insert_with(|| (mask | bit(x), BigUint::zero()));
                        entry.1 += &count;
                    }
                }
            }
            layer = next;
        }
        layer.into_values().map(|(_, c)| c).sum()
    }

    /// The words of the commutation class: each linear extension read as its
    /// sequence of columns.
    pub fn words_of_class(&self) -> impl Iterator<Item = Word> + '_ {
        self.linear_extensions().map(move |ext| self.word_of_extension(&ext))
    }

    pub fn word_of_extension(&self, extension: &[usize]) -> Word {
        Word::new_unchecked(self.width, extension.iter().map(|&x| self.columns[x]).collect())
    }

    /// Lexicographically smallest word of the class.
    pub fn lexmin_word(&self) -> Word {
        let mut ext = Vec::with_capacity(self.len());
        self.greedy_extension(0, self.full_mask(), &mut ext);
        self.word_of_extension(&ext)
    }

    /// The ideal consisting of the lowest `counts[i]` elements of column
    /// `i + 1`, if that set is downward closed.
    pub fn ideal_from_counts(&self, counts: &[usize]) -> Result<Ideal> {
        if counts.len() != self.width {
            return Err(Error::InvalidPoset(format!(
                "expected {} column counts, got {}",
                self.width,
                counts.len()
            )));
        }
        let mut mask = 0;
        for (i, &k) in counts.iter().enumerate() {
            let elems = self.column_elements(i + 1);
            if k > elems.len() {
                return Err(Error::CountOutOfRange {
                    column: i + 1,
                    size: elems.len(),
                    requested: k,
                });
            }
            mask |= elems[..k].iter().fold(0, |m, &x| m | bit(x));
        }
        let violators: Mask = mask_elements(mask)
            .filter(|&x| self.below[x] & !mask != 0)
            .fold(0, |m, x| m | bit(x));
        if violators == 0 {
            return Ok(Ideal { mask });
        }
        // A lowest violator x and the highest missing y below it form a cover.
        let x = mask_elements(violators)
            .find(|&x| self.below[x] & violators == 0)
            .expect("finite poset has a minimal violator");
        let missing = self.below[x] & !mask;
        let y = mask_elements(self.maximal_in(missing)).next().expect("missing is nonempty");
        Err(Error::NotAnIdeal {
            below: y + 1,
            above: x + 1,
        })
    }

    /// All ideals, by breadth-first closure from the empty set.
    pub fn ideals(&self) -> Vec<Ideal> {
        let mut seen = HashSet::from([0 as Mask]);
        let mut queue = VecDeque::from([0 as Mask]);
        while let Some(mask) = queue.pop_front() {
            for c in 1..=self.width {
                if let Some(x) = self.next_in_column(mask, c) {
                    let m = mask | bit(x);
                    if seen.insert(m) {
                        queue.push_back(m);
                    }
                }
            }
        }
        let mut out: Vec<Ideal> = seen.into_iter().map(Ideal::from_mask).collect();
        out.sort_by_key(|i| i.mask);
        out
    }

    /// `m_i(P)`: the largest element of each column `1..=width`.
    pub fn top_elements(&self) -> Result<Vec<usize>> {
        (1..=self.width)
            .map(|c| {
                let col = self.column_mask(c);
                mask_elements(col)
                    .find(|&x| self.above[x] & col == 0)
                    .ok_or_else(|| Error::NotLongest(format!("column {c} is empty")))
            })
            .collect()
    }

    /// Posets of the classes reached by one 3-move from this class.
    ///
    /// A 3-move applies to some word of the class exactly when there are
    /// `x < y < z` with `f(x) = f(z)`, `|f(x) - f(y)| = 1` and no other element
    /// strictly between `x` and `z`.
    pub fn three_move_neighbors(&self) -> Vec<WordPoset> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.upper_covers(x) {
                if self.column(x).abs_diff(self.column(y)) != 1 {
                    continue;
                }
                for z in self.upper_covers(y) {
                    if self.columns[z] != self.columns[x] || self.above[x] & self.below[z] != bit(y) {
                        continue;
                    }
                    let prefix = self.below[z] & !bit(x) & !bit(y);
                    let mut ext = Vec::with_capacity(self.len());
                    self.greedy_extension(0, prefix, &mut ext);
                    let at = ext.len();
                    ext.extend([x, y, z]);
                    self.greedy_extension(prefix | bit(x) | bit(y) | bit(z), self.full_mask(), &mut ext);
                    let word = self
                        .word_of_extension(&ext)
                        .apply_3move(at + 1)
                        .expect("consecutive i, j, i");
                    out.push(WordPoset::from_word(&word).expect("braid moves preserve reducedness"));
                }
            }
        }
        out
    }

    /// Graphviz rendering of the Hasse diagram. Node `k` sits at x = column,
    /// y = length of the longest chain below it.
    pub fn to_dot(&self, column_guides: bool) -> String {
        let mut height = vec![0usize; self.len()];
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.below[x].count_ones());
        for &y in &order {
            height[y] = mask_elements(self.below[y])
                .map(|x| height[x] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut s = String::new();
        s.push_str("digraph word_poset {\n");
        s.push_str("  rankdir=BT;\n");
        s.push_str("  node [shape=circle];\n");
        s.push_str("  edge [arrowhead=none];\n");
        for (x, h) in height.iter().enumerate() {
            let _ = writeln!(
                s,
                "  n{id} [label=\"{id}\", pos=\"{c},{h}!\"];",
                id = x + 1,
                c = self.column(x),
            );
        }
        if column_guides {
            for c in 1..=self.width {
                let _ = writeln!(s, "  subgraph cluster_column{c} {{");
                let _ = writeln!(s, "    label=\"{c}\"; style=dotted;");
                for x in self.column_elements(c) {
                    let _ = writeln!(s, "    n{};", x + 1);
                }
                s.push_str("  }\n");
            }
        }
        for (x, y) in self.covers() {
            let _ = writeln!(s, "  n{} -> n{};", x + 1, y + 1);
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for WordPoset {
    /// `columns=1,2,1 covers=1<2,2<3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "columns=")?;
        for (k, c) in self.columns.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " covers=")?;
        for (k, (x, y)) in self.covers().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}<{}", x + 1, y + 1)?;
        }
        Ok(())
    }
}

pub struct LinearExtensions<'a> {
    poset: &'a WordPoset,
    mask: Mask,
    order: Vec<usize>,
    next_column: Vec<usize>,
    done: bool,
}

impl LinearExtensions<'_> {
    fn backtrack(&mut self) {
        match self.order.pop() {
            Some(x) => self.mask &= !bit(x),
            None => self.done = true,
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let p = self.poset;
        loop {
            if self.done {
                return None;
            }
            let depth = self.order.len();
            if depth == p.len() {
                let out = self.order.clone();
                self.backtrack();
                return Some(out);
            }
            if self.next_column.len() == depth {
                self.next_column.push(1);
            }
            let start = self.next_column[depth];
            let found = (start..=p.width).find_map(|c| p.next_in_column(self.mask, c).map(|x| (c, x)));
            match found {
                Some((c, x)) => {
                    self.next_column[depth] = c + 1;
                    self.mask |= bit(x);
                    self.order.push(x);
                }
                None => {
                    self.next_column.pop();
                    self.backtrack();
                }
            }
        }
    }
}
