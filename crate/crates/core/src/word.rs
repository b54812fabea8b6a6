//! Words over the alphabet `{1, ..., d}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A finite sequence of letters. Letters are 1-based.
///
/// Words are ordered by length first and lexicographically within a length,
/// which is the canonical iteration order for tensor coefficients. Use
/// [`Word::lex_cmp`] for the plain lexicographic order that defines Lyndon
/// words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(a: u8) -> Self {
        let mut w = SmallVec::new();
        w.push(a);
        Word(w)
    }

    /// Builds a word, checking every letter against the alphabet size.
    pub fn new(letters: &[u8], dim: usize) -> Result<Self> {
        for &a in letters {
            if a == 0 || a as usize > dim {
                return Err(Error::LetterOutOfRange { letter: a, dim });
            }
        }
        Ok(Word(SmallVec::from_slice(letters)))
    }

    /// Builds a word without the alphabet check (letters must still be >= 1).
    pub fn from_letters(letters: &[u8]) -> Self {
        debug_assert!(letters.iter().all(|&a| a >= 1));
        Word(SmallVec::from_slice(letters))
    }

    /// Parses `"e"`/`""` (empty word), digit strings like `"112"`, or dotted
    /// strings like `"1.10.2"` for alphabets larger than 9.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Some(Word::empty());
        }
        let letters: Option<Vec<u8>> = if s.contains('.') {
            s.split('.').map(|p| p.parse::<u8>().ok().filter(|&a| a >= 1)).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|x| x as u8).filter(|&a| a >= 1)).collect()
        };
        letters.map(|l| Word::from_letters(&l))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn push(&mut self, a: u8) {
        self.0.push(a);
    }

    /// Number of occurrences of `a`.
    pub fn count(&self, a: u8) -> usize {
        self.0.iter().filter(|&&b| b == a).count()
    }

    /// Plain lexicographic order, where a proper prefix is smaller.
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.0.as_slice().cmp(other.0.as_slice())
    }

    /// All splittings `w = u v` including the trivial ones.
    pub fn deconcatenations(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.len()).map(move |i| (Word::from_letters(&self.0[..i]), Word::from_letters(&self.0[i..])))
    }

    /// All words of length exactly `k`, lexicographically.
    pub fn all_of_length(dim: usize, k: usize) -> impl Iterator<Item = Word> {
        let total = dim.checked_pow(k as u32).unwrap_or(0);
        (0..total).map(move |mut idx| {
            let mut letters = SmallVec::<[u8; 8]>::from_elem(0, k);
            for slot in letters.iter_mut().rev() {
                *slot = (idx % dim) as u8 + 1;
                idx /= dim;
            }
            Word(letters)
        })
    }

    /// All words of length `<= n`, in canonical (graded) order.
    pub fn all_up_to(dim: usize, n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(move |k| Word::all_of_length(dim, k))
    }

    /// Row-major index of this word among the words of its length.
    pub(crate) fn dense_index(&self, dim: usize) -> usize {
        self.0.iter().fold(0, |acc, &a| acc * dim + (a as usize - 1))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        if self.0.iter().all(|&a| a <= 9) {
            for a in &self.0 {
                write!(f, "{a}")?;
            }
        } else {
            let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
            f.write_str(&parts.join("."))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Shuffle product of two words as a multiset of words with multiplicities.
///
/// Uses the recursion `ua ⧢ vb = (u ⧢ vb)a + (ua ⧢ v)b` over prefixes.
pub fn shuffle(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    let (m, n) = (u.len(), v.len());
    // table[j] holds shuffle(u[..i], v[..j]) for the current row i.
    let mut table: Vec<BTreeMap<Word, u64>> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut row = BTreeMap::new();
        row.insert(Word::from_letters(&v.letters()[..j]), 1);
        table.push(row);
    }
    for i in 1..=m {
        let a = u.letters()[i - 1];
        let mut prev_in_row: BTreeMap<Word, u64> = BTreeMap::new();
        prev_in_row.insert(Word::from_letters(&u.letters()[..i]), 1);
        let mut next = Vec::with_capacity(n + 1);
        next.push(prev_in_row.clone());
        for (&b, above) in v.letters().iter().zip(&table[1..]) {
            let mut cell: BTreeMap<Word, u64> = BTreeMap::new();
            for (w, c) in above {
                let mut w = w.clone();
                w.push(a);
                *cell.entry(w).or_insert(0) += c;
            }
            for (w, c) in &prev_in_row {
                let mut w = w.clone();
                w.push(b);
                *cell.entry(w).or_insert(0) += c;
            }
            prev_in_row = cell.clone();
            next.push(cell);
        }
        table = next;
    }
    table.pop().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    /// Enumerates interleavings directly by choosing the positions of `u`.
    fn brute_shuffle(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
        let n = u.len() + v.len();
        let mut out = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != u.len() {
                continue;
            }
            let (mut iu, mut iv) = (0, 0);
            let mut letters = Vec::new();
            for pos in 0..n {
                if mask & (1 << pos) != 0 {
                    letters.push(u.letters()[iu]);
                    iu += 1;
                } else {
                    letters.push(v.letters()[iv]);
                    iv += 1;
                }
            }
            *out.entry(Word::from_letters(&letters)).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn shuffle_examples() {
        let s = shuffle(&Word::empty(), &w("12"));
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![(w("12"), 1)]);

        let s = shuffle(&w("1"), &w("2"));
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![(w("12"), 1), (w("21"), 1)]);

        let s = shuffle(&w("12"), &w("1"));
        assert_eq!(s, brute_shuffle(&w("12"), &w("1")));
        assert_eq!(s.get(&w("112")), Some(&2));
        assert_eq!(s.get(&w("121")), Some(&1));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn shuffle_matches_enumeration_exhaustively() {
        for d in 1..=3 {
            for a in 0..=3 {
                for b in 0..=(5 - a).min(3) {
                    for u in Word::all_of_length(d, a) {
                        for v in Word::all_of_length(d, b) {
                            assert_eq!(shuffle(&u, &v), brute_shuffle(&u, &v), "{u} ⧢ {v}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shuffle_commutative_and_associative() {
        let d = 2;
        let words: Vec<Word> = Word::all_up_to(d, 2).collect();
        for u in &words {
            for v in &words {
                assert_eq!(shuffle(u, v), shuffle(v, u));
                for x in &words {
                    let mut left: BTreeMap<Word, u64> = BTreeMap::new();
                    for (uv, c) in shuffle(u, v) {
                        for (y, c2) in shuffle(&uv, x) {
                            *left.entry(y).or_insert(0) += c * c2;
                        }
                    }
                    let mut right: BTreeMap<Word, u64> = BTreeMap::new();
                    for (vx, c) in shuffle(v, x) {
                        for (y, c2) in shuffle(u, &vx) {
                            *right.entry(y).or_insert(0) += c * c2;
                        }
                    }
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn word_counts_and_order() {
        for d in 1..=4 {
            for k in 0..=4 {
                assert_eq!(Word::all_of_length(d, k).count(), d.pow(k as u32));
            }
        }
        let all: Vec<Word> = Word::all_up_to(2, 2).collect();
        let names: Vec<String> = all.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["e", "1", "2", "11", "12", "21", "22"]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn letters_are_validated() {
        assert!(Word::new(&[1, 3], 2).is_err());
        assert!(Word::new(&[0], 2).is_err());
        assert!(Word::new(&[2, 1], 2).is_ok());
        assert_eq!(Word::parse("1.10.2").unwrap().letters(), &[1, 10, 2]);
        assert_eq!(Word::parse("1.10.2").unwrap().to_string(), "1.10.2");
        assert!(Word::parse("102").is_none());
    }

    #[test]
    fn dense_index_is_lexicographic_rank() {
        for (i, w) in Word::all_of_length(3, 3).enumerate() {
            assert_eq!(w.dense_index(3), i);
        }
    }
}
