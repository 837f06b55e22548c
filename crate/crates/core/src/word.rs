//! Words in the free group on `{a, b}`, cyclic words and their S-sequences.
//!
//! Text form: `a`, `b` for the generators and `A`, `B` for their inverses.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
}

/// A generator with exponent `±1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub positive: bool,
}

impl Letter {
    pub const A: Letter = Letter { generator: Generator::A, positive: true };
    pub const A_INV: Letter = Letter { generator: Generator::A, positive: false };
    pub const B: Letter = Letter { generator: Generator::B, positive: true };
    pub const B_INV: Letter = Letter { generator: Generator::B, positive: false };

    /// All four letters in the enumeration order `a, A, b, B`.
    pub const ALL: [Letter; 4] = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];

    pub fn new(generator: Generator, exponent: i32) -> Letter {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { generator, positive: exponent > 0 }
    }

    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, positive: !self.positive }
    }

    pub fn exponent(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn to_char(self) -> char {
        match (self.generator, self.positive) {
            (Generator::A, true) => 'a',
            (Generator::A, false) => 'A',
            (Generator::B, true) => 'b',
            (Generator::B, false) => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'a' => Letter::A,
            'A' => Letter::A_INV,
            'b' => Letter::B,
            'B' => Letter::B_INV,
            _ => return None,
        })
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(raw: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &x in raw {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    /// Wraps letters that are already freely reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|x| x.inverse()).collect() }
    }

    /// Free product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        free_reduce(&v)
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.letters);
        }
        free_reduce(&v)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Splits `self ≡ c · core · c⁻¹` with `core` cyclically reduced; returns `(c, core)`.
    pub fn cyclic_core(&self) -> (Word, Word) {
        let v = &self.letters;
        if v.is_empty() {
            return (Word::empty(), Word::empty());
        }
        let mut i = 0;
        while i + 1 < v.len() - i && v[i] == v[v.len() - 1 - i].inverse() {
            i += 1;
        }
        (Word { letters: v[..i].to_vec() }, Word { letters: v[i..v.len() - i].to_vec() })
    }

    /// The cyclic permutation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.letters.clone();
        if !v.is_empty() {
            v.rotate_left(k % self.len());
        }
        Word { letters: v }
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word { letters: self.letters[start..end].to_vec() }
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.letters.starts_with(prefix)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.letters {
            write!(f, "{}", x.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "Word(1)")
        } else {
            write!(f, "Word({self})")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses and freely reduces. `1` and the empty string denote the identity.
    fn from_str(s: &str) -> Result<Word> {
        let t = s.trim();
        if t == "1" {
            return Ok(Word::empty());
        }
        let letters = t
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::MalformedWord(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(free_reduce(&letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Booth's least-rotation algorithm.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

fn canonical_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    let k = least_rotation(s);
    s[k..].iter().chain(s[..k].iter()).cloned().collect()
}

/// Whether `b` is a cyclic shift of `a`.
pub fn is_rotation_of<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| (0..a.len()).all(|i| a[(k + i) % a.len()] == b[i]))
}

/// A cyclically reduced word up to cyclic permutation.
#[derive(Clone)]
pub struct CyclicWord {
    representative: Word,
}

impl CyclicWord {
    pub fn new(representative: Word) -> Result<CyclicWord> {
        if !representative.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced);
        }
        Ok(CyclicWord { representative })
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }

    /// The lexicographically least cyclic permutation.
    pub fn canonical(&self) -> Word {
        Word { letters: canonical_rotation(self.representative.letters()) }
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord { representative: self.representative.inverse() }
    }

    /// Letter at cyclic position `i`.
    pub fn at(&self, i: usize) -> Letter {
        self.representative.letters[i % self.len()]
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &CyclicWord) -> bool {
        is_rotation_of(self.representative.letters(), other.representative.letters())
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.representative)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord{self}")
    }
}

/// Run lengths of the maximal constant-sign blocks of a word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct SSequence(pub Vec<usize>);

impl SSequence {
    pub fn runs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A sequence of positive integers compared modulo rotation (not reversal).
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct CyclicSSequence(pub Vec<usize>);

impl CyclicSSequence {
    pub fn runs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn canonical(&self) -> Vec<usize> {
        canonical_rotation(&self.0)
    }

    /// Equality modulo rotation and reversal.
    pub fn eq_up_to_reversal(&self, other: &CyclicSSequence) -> bool {
        let rev: Vec<usize> = other.0.iter().rev().copied().collect();
        self == other || is_rotation_of(&self.0, &rev)
    }

    /// Number of rotations at which `block` occurs as a contiguous subsequence.
    /// Overlapping occurrences are counted separately.
    pub fn occurrences(&self, block: &[usize]) -> usize {
        let t = self.0.len();
        if block.is_empty() || block.len() > t {
            return 0;
        }
        (0..t).filter(|&k| block.iter().enumerate().all(|(i, &x)| self.0[(k + i) % t] == x)).count()
    }
}

impl PartialEq for CyclicSSequence {
    fn eq(&self, other: &CyclicSSequence) -> bool {
        is_rotation_of(&self.0, &other.0)
    }
}

impl Eq for CyclicSSequence {}

impl fmt::Display for CyclicSSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "<<{}>>", s.join(","))
    }
}

fn runs_of(letters: &[Letter]) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut prev: Option<bool> = None;
    for x in letters {
        if prev == Some(x.positive) {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
            prev = Some(x.positive);
        }
    }
    runs
}

pub fn s_sequence(v: &Word) -> Result<SSequence> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(SSequence(runs_of(v.letters())))
}

pub fn cyclic_s_sequence(v: &CyclicWord) -> Result<CyclicSSequence> {
    let letters = v.representative.letters();
    if letters.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = letters.len();
    let start = (0..n).find(|&i| letters[i].positive != letters[(i + n - 1) % n].positive).ok_or(Error::SingleSign)?;
    let rotated: Vec<Letter> = letters[start..].iter().chain(&letters[..start]).copied().collect();
    Ok(CyclicSSequence(runs_of(&rotated)))
}

/// No `a^{±2}` or `b^{±2}` appears.
pub fn is_alternating(v: &Word) -> bool {
    v.letters.windows(2).all(|w| w[0].generator != w[1].generator)
}

/// Every cyclic permutation is alternating.
pub fn is_cyclically_alternating(v: &CyclicWord) -> bool {
    let l = v.representative.letters();
    is_alternating(&v.representative) && (l.len() < 2 || l[0].generator != l[l.len() - 1].generator)
}

/// Whether some rotation of `cs` starts with `pattern`. Patterns longer than the
/// cycle never match.
pub fn contains_subsequence(cs: &CyclicSSequence, pattern: &[usize]) -> bool {
    let t = cs.len();
    if pattern.is_empty() || pattern.len() > t {
        return false;
    }
    (0..t).any(|k| pattern.iter().enumerate().all(|(i, &x)| cs.0[(k + i) % t] == x))
}

pub fn is_symmetric(seq: &[usize]) -> bool {
    seq.iter().eq(seq.iter().rev())
}
