//! Words over the simple transpositions `s_1, ..., s_n` of `S_{n+1}`.
//!
//! Convention: `s_i` acts on one-line notation by left multiplication, i.e. it
//! swaps the *values* `i` and `i + 1`. A word `(i_1, ..., i_l)` denotes the
//! product `s_{i_1} s_{i_2} ... s_{i_l}`, evaluated right to left. Under this
//! convention `(1,2,1)` is `[3,2,1]`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::{CanonicalKey, WordPoset};

/// A permutation of `{1..m}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let m = one_line.len();
        let mut seen = vec![false; m + 1];
        for &v in &one_line {
            if v == 0 || v > m {
                return Err(Error::InvalidPermutation {
                    degree: m,
                    detail: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::InvalidPermutation {
                    degree: m,
                    detail: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            one_line: (1..=degree).collect(),
        }
    }

    /// The order-reversing permutation `[m, m-1, ..., 1]`.
    pub fn longest_element(degree: usize) -> Self {
        Permutation {
            one_line: (1..=degree).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn inversion_count(&self) -> usize {
        let p = &self.one_line;
        let mut count = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions of each value: `positions()[v] = k` iff `one_line[k] = v`
    /// (0-based positions, index 0 unused).
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.degree() + 1];
        for (k, &v) in self.one_line.iter().enumerate() {
            pos[v] = k;
        }
        pos
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.one_line.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("permutation must be bracketed: {s:?}")))?;
        Permutation::new(parse_list(inner)?)
    }
}

/// A word in the letters `1..=rank`, read as an element of `S_{rank+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(rank: usize, letters: Vec<u8>) -> Result<Self> {
        for (k, &l) in letters.iter().enumerate() {
            if l == 0 || l as usize > rank {
                return Err(Error::LetterOutOfRange {
                    letter: l as usize,
                    position: k + 1,
                    rank,
                });
            }
        }
        Ok(Word { rank, letters })
    }

    /// Builds a word whose rank is its largest letter.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        let rank = letters.iter().copied().max().unwrap_or(0) as usize;
        Word::new(rank, letters)
    }

    pub(crate) fn new_unchecked(rank: usize, letters: Vec<u8>) -> Self {
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The same letters viewed in a different rank.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        Word::new(rank, self.letters.clone())
    }

    /// The product `s_{i_1} ... s_{i_l}` in `S_{rank+1}`.
    pub fn permutation(&self) -> Permutation {
        let mut one_line: Vec<usize> = (1..=self.rank + 1).collect();
        let mut pos: Vec<usize> = (0..=self.rank + 1).map(|v| v.saturating_sub(1)).collect();
        for &l in self.letters.iter().rev() {
            let i = l as usize;
            let (a, b) = (pos[i], pos[i + 1]);
            one_line.swap(a, b);
            pos.swap(i, i + 1);
        }
        Permutation { one_line }
    }

    pub fn is_reduced(&self) -> bool {
        self.len() == self.permutation().inversion_count()
    }

    /// True iff this is a reduced word of the longest element of `S_{rank+1}`.
    pub fn is_longest_word(&self) -> bool {
        self.len() == triangular(self.rank) && self.is_reduced()
    }

    /// Letter-flip involution `i -> rank + 1 - i`.
    pub fn flipped(&self) -> Word {
        let r = self.rank as u8;
        Word {
            rank: self.rank,
            letters: self.letters.iter().map(|&l| r + 1 - l).collect(),
        }
    }

    /// Commutation move at 1-based position `pos`: swaps letters `pos` and
    /// `pos + 1` when they differ by more than one.
    pub fn apply_2move(&self, pos: usize) -> Result<Word> {
        let err = Error::MoveNotApplicable {
            kind: "2-move",
            position: pos,
        };
        if pos == 0 || pos + 1 > self.len() {
            return Err(err);
        }
        let (a, b) = (self.letters[pos - 1], self.letters[pos]);
        if a.abs_diff(b) <= 1 {
            return Err(err);
        }
        let mut letters = self.letters.clone();
        letters.swap(pos - 1, pos);
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    /// Braid move `i, j, i -> j, i, j` (`|i - j| = 1`) starting at 1-based `pos`.
    pub fn apply_3move(&self, pos: usize) -> Result<Word> {
        let err = Error::MoveNotApplicable {
            kind: "3-move",
            position: pos,
        };
        if pos == 0 || pos + 2 > self.len() {
            return Err(err);
        }
        let k = pos - 1;
        let (a, b, c) = (self.letters[k], self.letters[k + 1], self.letters[k + 2]);
        if a != c || a.abs_diff(b) != 1 {
            return Err(err);
        }
        let mut letters = self.letters.clone();
        letters[k] = b;
        letters[k + 1] = a;
        letters[k + 2] = b;
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    /// 1-based positions where a 2-move applies.
    pub fn two_move_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].abs_diff(w[1]) > 1)
            .map(|(k, _)| k + 1)
    }

    /// 1-based positions where a 3-move applies.
    pub fn three_move_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters
            .windows(3)
            .enumerate()
            .filter(|(_, w)| w[0] == w[2] && w[0].abs_diff(w[1]) == 1)
            .map(|(k, _)| k + 1)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"1,2,1"`; the rank is the largest letter.
    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_list(s)?
            .into_iter()
            .map(|v| u8::try_from(v).map_err(|_| Error::Parse(format!("letter {v} too large"))))
            .collect::<Result<Vec<_>>>()?;
        Word::from_letters(letters)
    }
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}")))
        })
        .collect()
}

/// `n(n+1)/2`, the length of the longest element of `S_{n+1}`.
pub fn triangular(n: usize) -> usize {
    n * (n + 1) / 2
}

/// `(1, 2,1, 3,2,1, ..., n,n-1,...,1)`.
pub fn standard_word(n: usize) -> Word {
    let mut letters = Vec::with_capacity(triangular(n));
    for k in 1..=n {
        letters.extend((1..=k).rev().map(|l| l as u8));
    }
    Word { rank: n, letters }
}

/// Streams every reduced word of `p` exactly once, in lexicographic order.
///
/// Descent recursion: the first letter `i` of a reduced word of `p` is a left
/// descent (`i + 1` occurs before `i` in one-line notation), and the rest is a
/// reduced word of `s_i p`.
pub fn reduced_words(p: &Permutation) -> ReducedWords {
    let rank = p.degree().saturating_sub(1);
    ReducedWords {
        rank,
        pos: p.positions(),
        target: p.inversion_count(),
        word: Vec::new(),
        next: Vec::new(),
        done: false,
    }
}

/// All reduced words of the longest element of `S_{n+1}`.
pub fn longest_words(n: usize) -> ReducedWords {
    reduced_words(&Permutation::longest_element(n + 1))
}

#[derive(Debug, Clone)]
pub struct ReducedWords {
    rank: usize,
    pos: Vec<usize>,
    target: usize,
    word: Vec<u8>,
    next: Vec<usize>,
    done: bool,
}

impl ReducedWords {
    fn backtrack(&mut self) {
        match self.word.pop() {
            Some(l) => self.pos.swap(l as usize, l as usize + 1),
            None => self.done = true,
        }
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.word.len();
            if depth == self.target {
                let out = Word {
                    rank: self.rank,
                    letters: self.word.clone(),
                };
                self.backtrack();
                return Some(out);
            }
            if self.next.len() == depth {
                self.next.push(1);
            }
            let found = (self.next[depth]..=self.rank).find(|&i| self.pos[i + 1] < self.pos[i]);
            match found {
                Some(i) => {
                    self.next[depth] = i + 1;
                    self.pos.swap(i, i + 1);
                    self.word.push(i as u8);
                }
                None => {
                    self.next.pop();
                    self.backtrack();
                }
            }
        }
    }
}

/// Streams one canonical word poset per commutation class of the longest
/// element of `S_{n+1}`, in breadth-first order over the graph whose edges
/// are 3-moves. Starts from the class of [`standard_word`].
pub fn commutation_classes(n: usize) -> CommutationClasses {
    let start = WordPoset::from_word(&standard_word(n))
        .expect("standard word is reduced")
        .canonical_form();
    let mut visited = HashSet::new();
    visited.insert(start.canonical_key());
    CommutationClasses {
        visited,
        queue: VecDeque::from([start]),
    }
}

pub struct CommutationClasses {
    visited: HashSet<CanonicalKey>,
    queue: VecDeque<WordPoset>,
}

impl CommutationClasses {
    pub fn visited(&self) -> usize {
        self.visited.len()
    }
}

impl Iterator for CommutationClasses {
    type Item = WordPoset;

    fn next(&mut self) -> Option<WordPoset> {
        let current = self.queue.pop_front()?;
        for neighbor in current.three_move_neighbors() {
            let neighbor = neighbor.canonical_form();
            if self.visited.insert(neighbor.canonical_key()) {
                self.queue.push_back(neighbor);
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn product_convention() {
        assert_eq!(w("1,2,1").permutation().to_string(), "[3,2,1]");
        let empty = Word::new(3, vec![]).unwrap();
        assert_eq!(empty.permutation().to_string(), "[1,2,3,4]");
        assert_eq!(w("1,3,2,1,3,2").permutation(), Permutation::longest_element(4));
    }

    #[test]
    fn right_to_left_value_swaps_match_left_to_right_position_swaps() {
        for word in longest_words(4).chain(reduced_words(&"[2,4,1,3]".parse().unwrap())) {
            let mut p: Vec<usize> = (1..=word.rank() + 1).collect();
            for &l in word.letters() {
                p.swap(l as usize - 1, l as usize);
            }
            assert_eq!(word.permutation().one_line(), &p[..]);
        }
    }

    #[test]
    fn inversions() {
        assert_eq!(Permutation::identity(3).inversion_count(), 0);
        assert_eq!(Permutation::longest_element(3).inversion_count(), 3);
        assert_eq!(Permutation::longest_element(4).inversion_count(), 6);
    }

    #[test]
    fn reducedness() {
        assert!(w("1,2,1").is_reduced());
        assert!(!w("1,1").is_reduced());
        assert!(w("1,3,2,1,3,2").is_reduced());
    }

    #[test]
    fn standard_words() {
        assert_eq!(standard_word(1).to_string(), "1");
        assert_eq!(standard_word(2).to_string(), "1,2,1");
        assert_eq!(standard_word(3).to_string(), "1,2,1,3,2,1");
        for n in 1..=6 {
            assert!(standard_word(n).is_longest_word());
        }
    }

    #[test]
    fn braid_moves() {
        assert_eq!(w("1,3,2").apply_2move(1).unwrap().to_string(), "3,1,2");
        assert_eq!(w("1,2,1").apply_3move(1).unwrap().to_string(), "2,1,2");
        assert_eq!(
            w("1,2,1").apply_2move(1),
            Err(Error::MoveNotApplicable {
                kind: "2-move",
                position: 1
            })
        );
        assert!(w("1,2,1").apply_3move(2).is_err());
        assert!(w("1,3,1").apply_3move(1).is_err());
    }

    #[test]
    fn letter_range_is_checked() {
        assert!(Word::new(2, vec![1, 3]).is_err());
        assert!(Word::new(2, vec![0]).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w(" 1, 2,1 ").to_string(), "1,2,1");
        let p: Permutation = "[4,3,2,1]".parse().unwrap();
        assert_eq!(p.to_string(), "[4,3,2,1]");
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!("1,2".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Word>().is_err());
    }

    /// Independent oracle: all sequences of length l over [n] filtered by
    /// reducedness and product.
    fn brute_force(p: &Permutation) -> Vec<Word> {
        let rank = p.degree() - 1;
        let len = p.inversion_count();
        let mut out = Vec::new();
        let total = rank.pow(len as u32);
        for mut code in 0..total {
            let mut letters = Vec::with_capacity(len);
            for _ in 0..len {
                letters.push((code % rank) as u8 + 1);
                code /= rank;
            }
            letters.reverse();
            let word = Word::new(rank, letters).unwrap();
            if &word.permutation() == p {
                out.push(word);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn reduced_words_match_brute_force() {
        let w3: Vec<_> = longest_words(2).collect();
        assert_eq!(
            w3.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            ["1,2,1", "2,1,2"]
        );
        let w4: Vec<_> = longest_words(3).collect();
        assert_eq!(w4.len(), 16);
        assert_eq!(w4, brute_force(&Permutation::longest_element(4)));
        let p: Permutation = "[3,1,4,2]".parse().unwrap();
        assert_eq!(reduced_words(&p).collect::<Vec<_>>(), brute_force(&p));
        let id: Vec<_> = reduced_words(&Permutation::identity(4)).collect();
        assert_eq!(id.len(), 1);
        assert!(id[0].is_empty());
    }

    /// Stanley's hook-length count for the staircase:
    /// `N! / prod_{i=1..n} (2i - 1)^(n + 1 - i)` with `N = n(n+1)/2`.
    fn staircase_count(n: usize) -> u128 {
        let top: u128 = (1..=triangular(n) as u128).product();
        let bottom: u128 = (1..=n as u32)
            .map(|i| (2 * i as u128 - 1).pow(n as u32 + 1 - i))
            .product();
        top / bottom
    }

    #[test]
    fn reduced_word_counts() {
        assert_eq!(staircase_count(4), 768);
        for n in 1..=5 {
            assert_eq!(longest_words(n).count() as u128, staircase_count(n), "n = {n}");
        }
    }

    #[test]
    fn flip_preserves_longest_words() {
        for n in 1..=4 {
            let all: HashSet<Word> = longest_words(n).collect();
            for word in &all {
                assert!(all.contains(&word.flipped()));
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(commutation_classes(1).count(), 1);
        assert_eq!(commutation_classes(2).count(), 2);
        assert_eq!(commutation_classes(3).count(), 8);
        assert_eq!(commutation_classes(4).count(), 62);
    }
}
