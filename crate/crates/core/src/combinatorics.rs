//! Words, permutations and the descent / peak / valley statistics on them.
//!
//! Positions and letters are 1-based in every public contract: `descent_set`
//! returns positions in `[n-1]`, and a `Permutation` holds the values
//! `w(1) .. w(n)`. Internally the one-line notation is a plain `Vec`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positions `i` (1-based) with `letters[i-1] > letters[i]`.
pub fn descent_set<T: Ord>(letters: &[T]) -> Vec<usize> {
    letters
        .windows(2)
        .enumerate()
        .filter(|(_, pair)| pair[0] > pair[1])
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn descent_count<T: Ord>(letters: &[T]) -> usize {
    letters.windows(2).filter(|pair| pair[0] > pair[1]).count()
}

/// Double / initial / final descent flags of a descent set of a length-`n` object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DescentFlags {
    pub double: bool,
    pub initial: bool,
    #[serde(rename = "final")]
    pub final_: bool,
}

impl DescentFlags {
    pub fn from_set(des: &[usize], n: usize) -> Self {
        let double = des.windows(2).any(|w| w[1] == w[0] + 1);
        let initial = des.first() == Some(&1);
        let final_ = n >= 2 && des.last() == Some(&(n - 1));
        DescentFlags {
            double,
            initial,
            final_,
        }
    }

    /// No double descent and no initial descent.
    pub fn is_tilde(&self) -> bool {
        !self.double && !self.initial
    }

    /// No double descent and no final descent.
    pub fn is_hat(&self) -> bool {
        !self.double && !self.final_
    }
}

pub fn descent_flags<T: Ord>(letters: &[T]) -> DescentFlags {
    DescentFlags::from_set(&descent_set(letters), letters.len())
}

/// Splits a textual word: space/comma separated, or a compact digit string.
pub fn parse_letters(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let separated = text.contains(|c: char| c.is_whitespace() || c == ',');
    if separated {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad letter {s:?}")))
            })
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))
            })
            .collect()
    }
}

fn write_letters<T: fmt::Display>(f: &mut fmt::Formatter<'_>, letters: &[T]) -> fmt::Result {
    for (i, x) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// A finite sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidWord);
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `m_i(v)` for `i = 1 ..= max letter`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let max = self.letters.iter().copied().max().unwrap_or(0);
        let mut m = vec![0; max];
        for &x in &self.letters {
            m[x - 1] += 1;
        }
        m
    }

    pub fn multiplicity(&self, letter: usize) -> usize {
        self.letters.iter().filter(|&&x| x == letter).count()
    }

    pub fn descent_set(&self) -> Vec<usize> {
        descent_set(&self.letters)
    }

    pub fn des(&self) -> usize {
        descent_count(&self.letters)
    }

    pub fn descent_flags(&self) -> DescentFlags {
        descent_flags(&self.letters)
    }
}

impl TryFrom<Vec<usize>> for Word {
    type Error = Error;
    fn try_from(letters: Vec<usize>) -> Result<Self> {
        Word::new(letters)
    }
}

impl From<Word> for Vec<usize> {
    fn from(w: Word) -> Self {
        w.letters
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_letters(s)?)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

/// An element of `S_n` in one-line notation `w(1) .. w(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(image));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { image })
    }

    /// Caller guarantees `image` is a permutation of `1..=n`.
    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(image.clone()).is_ok());
        Permutation { image }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    pub fn longest(n: usize) -> Self {
        Permutation {
            image: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    /// `w(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// `positions()[x]` is the 1-based position of letter `x`; index 0 unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.image.len() + 1];
        for (i, &x) in self.image.iter().enumerate() {
            pos[x] = i + 1;
        }
        pos
    }

    pub fn position_of(&self, letter: usize) -> Option<usize> {
        self.image.iter().position(|&x| x == letter).map(|i| i + 1)
    }

    pub fn to_word(&self) -> Word {
        Word {
            letters: self.image.clone(),
        }
    }

    pub fn descent_set(&self) -> Vec<usize> {
        descent_set(&self.image)
    }

    pub fn des(&self) -> usize {
        descent_count(&self.image)
    }

    pub fn descent_flags(&self) -> DescentFlags {
        descent_flags(&self.image)
    }

    pub fn is_tilde(&self) -> bool {
        self.descent_flags().is_tilde()
    }

    pub fn is_hat(&self) -> bool {
        self.descent_flags().is_hat()
    }

    pub fn peak_count(&self) -> usize {
        classify_positions(self).peak_count()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(image: Vec<usize>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(w: Permutation) -> Self {
        w.image
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_letters(s)?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.image)
    }
}

/// Rearranges `items` into the next lexicographically larger arrangement.
/// Returns `false` (leaving `items` sorted ascending) after the last one.
/// Handles repeated entries, so it also walks multiset permutations.
pub fn next_lex<T: Ord>(items: &mut [T]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Lexicographic iterator over all arrangements of a multiset.
pub struct Arrangements {
    current: Option<Vec<usize>>,
}

impl Arrangements {
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        Arrangements {
            current: Some(items),
        }
    }
}

impl Iterator for Arrangements {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_lex(&mut next) {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    Arrangements::new((1..=n).collect()).map(Permutation::from_vec_unchecked)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Peak,
    Valley,
    FreeUp,
    FreeDown,
}

impl Position {
    pub fn is_free(self) -> bool {
        matches!(self, Position::FreeUp | Position::FreeDown)
    }
}

/// Per-position labels of a permutation, with `w(0) = w(n+1) = +inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionClass {
    labels: Vec<Position>,
    letters: Vec<usize>,
}

impl PositionClass {
    pub fn labels(&self) -> &[Position] {
        &self.labels
    }

    /// Label at 1-based position `i`.
    pub fn at(&self, i: usize) -> Position {
        self.labels[i - 1]
    }

    fn letters_where(&self, pred: impl Fn(Position) -> bool) -> Vec<usize> {
        self.labels
            .iter()
            .zip(&self.letters)
            .filter(|(p, _)| pred(**p))
            .map(|(_, &x)| x)
            .collect()
    }

    /// Peak letters in left-to-right order.
    pub fn peaks(&self) -> Vec<usize> {
        self.letters_where(|p| p == Position::Peak)
    }

    pub fn valleys(&self) -> Vec<usize> {
        self.letters_where(|p| p == Position::Valley)
    }

    pub fn free_letters(&self) -> Vec<usize> {
        self.letters_where(Position::is_free)
    }

    pub fn free_down_letters(&self) -> Vec<usize> {
        self.letters_where(|p| p == Position::FreeDown)
    }

    fn count(&self, label: Position) -> usize {
        self.labels.iter().filter(|&&p| p == label).count()
    }

    pub fn peak_count(&self) -> usize {
        self.count(Position::Peak)
    }

    pub fn valley_count(&self) -> usize {
        self.count(Position::Valley)
    }

    pub fn free_up_count(&self) -> usize {
        self.count(Position::FreeUp)
    }

    pub fn free_down_count(&self) -> usize {
        self.count(Position::FreeDown)
    }
}

pub(crate) const INF: usize = usize::MAX;

/// Value at 0-based index `i` of `w`, reading the +inf sentinels outside `0..n`.
#[inline]
pub(crate) fn sentinel_at(w: &[usize], i: isize) -> usize {
    if i < 0 || i as usize >= w.len() {
        INF
    } else {
        w[i as usize]
    }
}

pub fn classify_positions(w: &Permutation) -> PositionClass {
    let s = w.as_slice();
    let labels = (0..s.len() as isize)
        .map(|i| {
            let (l, x, r) = (sentinel_at(s, i - 1), s[i as usize], sentinel_at(s, i + 1));
            match (l < x, x < r) {
                (true, false) => Position::Peak,
                (false, true) => Position::Valley,
                (true, true) => Position::FreeUp,
                (false, false) => Position::FreeDown,
            }
        })
        .collect();
    PositionClass {
        labels,
        letters: s.to_vec(),
    }
}

/// `w*(i) = n + 1 - w(n + 1 - i)`.
pub fn star(w: &Permutation) -> Permutation {
    let n = w.len();
    Permutation::from_vec_unchecked(w.as_slice().iter().rev().map(|&x| n + 1 - x).collect())
}

/// Number of inversions, which equals the Coxeter length in type A.
pub fn coxeter_length(w: &Permutation) -> usize {
    let s = w.as_slice();
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                count += 1;
            }
        }
    }
    count
}
