//! Symmetrized relator sets, pieces, the conditions `C(p)` and `T(q)`, and
//! the piece structure of `u_r`.

mod dehn;
mod patterns;

pub use dehn::{bounded_conjugacy_search, dehn_reduce, ConjugacySearch, Dehn, Rewrite};
pub use patterns::{forbidden_pattern_report, PatternLemma, PatternReport, PredicateResult, ZeroConvention};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{riley_word, s1_s2_decomposition, UpperPresentation};
use crate::rational::{to_continued_fraction, Slope};
use crate::word::{free_reduce, Letter, Word};

/// All cyclic permutations of the relators and their inverses, as a sorted
/// set of distinct words.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetrizedRelatorSet {
    elements: Vec<Word>,
}

impl SymmetrizedRelatorSet {
    /// Symmetrizes the cyclic cores of `relators`; empty relators are dropped.
    pub fn from_relators(relators: &[Word]) -> SymmetrizedRelatorSet {
        let mut set = BTreeSet::new();
        for w in relators {
            let core = w.cyclic_core().1;
            if core.is_empty() {
                continue;
            }
            for v in [core.clone(), core.inverse()] {
                for k in 0..v.len() {
                    set.insert(v.rotate(k));
                }
            }
        }
        SymmetrizedRelatorSet { elements: set.into_iter().collect() }
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.elements.binary_search(w).is_ok()
    }

    /// Longest relator length.
    pub fn max_len(&self) -> usize {
        self.elements.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Indices `lo..hi` of the elements beginning with `prefix`.
    fn prefix_range(&self, prefix: &[Letter]) -> (usize, usize) {
        let lo = self.elements.partition_point(|e| e.letters() < prefix);
        let hi = lo + self.elements[lo..].partition_point(|e| e.starts_with(prefix));
        (lo, hi)
    }

    /// Whether `b` begins at least one element.
    pub fn is_prefix(&self, b: &[Letter]) -> bool {
        let (lo, hi) = self.prefix_range(b);
        hi > lo
    }

    /// Whether `b` is a common initial segment of two distinct elements.
    pub fn is_piece(&self, b: &[Letter]) -> bool {
        if b.is_empty() {
            return false;
        }
        let (lo, hi) = self.prefix_range(b);
        hi - lo >= 2
    }

    /// Longest common prefix of `x` with an element, and that element's index.
    pub fn longest_match(&self, x: &[Letter]) -> Option<(usize, usize)> {
        let at = self.elements.partition_point(|e| e.letters() < x);
        [at.checked_sub(1), Some(at)]
            .into_iter()
            .flatten()
            .filter(|&i| i < self.elements.len())
            .map(|i| (lcp(self.elements[i].letters(), x), i))
            .max_by_key(|&(l, i)| (l, std::cmp::Reverse(i)))
    }

    /// Length of the longest piece that is a prefix of `x`.
    pub fn longest_piece_prefix(&self, x: &[Letter]) -> usize {
        // Pieces are prefix-closed, so binary search on the length.
        let (mut lo, mut hi) = (0, x.len());
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.is_piece(&x[..mid]) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }
}

fn lcp(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn symmetrize(pres: &UpperPresentation) -> SymmetrizedRelatorSet {
    SymmetrizedRelatorSet::from_relators(std::slice::from_ref(&pres.relator))
}

/// The pieces of a symmetrized set, stored through the longest piece beginning
/// each element (every piece is a prefix of one of these).
#[derive(Clone, Debug, Serialize)]
pub struct PieceDictionary {
    /// `(element, longest piece prefix of it)` for every element.
    pub maximal: Vec<(Word, usize)>,
    pub max_piece_length: usize,
}

impl PieceDictionary {
    /// The full set of pieces.
    pub fn pieces(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for (e, l) in &self.maximal {
            for k in 1..=*l {
                out.insert(e.subword(0, k));
            }
        }
        out
    }
}

pub fn compute_pieces(set: &SymmetrizedRelatorSet) -> PieceDictionary {
    let n = set.elements.len();
    let maximal: Vec<(Word, usize)> = (0..n)
        .map(|i| {
            let e = set.elements[i].letters();
            let before = if i > 0 { lcp(e, set.elements[i - 1].letters()) } else { 0 };
            let after = if i + 1 < n { lcp(e, set.elements[i + 1].letters()) } else { 0 };
            (set.elements[i].clone(), before.max(after))
        })
        .collect();
    let max_piece_length = maximal.iter().map(|m| m.1).max().unwrap_or(0);
    PieceDictionary { maximal, max_piece_length }
}

/// A shortest factorization of `w` into pieces, or `None` if some letter
/// cannot be covered.
pub fn piece_factorization(w: &[Letter], set: &SymmetrizedRelatorSet) -> Option<Vec<Word>> {
    // Pieces are factor-closed, so the longest piece at each cut is optimal.
    let mut parts = Vec::new();
    let mut i = 0;
    let reach: Vec<usize> = (0..w.len()).map(|j| j + set.longest_piece_prefix(&w[j..])).collect();
    while i < w.len() {
        // Jump-game greedy: choose the next cut that reaches farthest.
        let end = reach[i];
        if end == i {
            return None;
        }
        if end == w.len() {
            parts.push(Word::from_reduced(w[i..].to_vec()));
            break;
        }
        let next = (i + 1..=end).max_by_key(|&j| (reach[j], j)).unwrap();
        parts.push(Word::from_reduced(w[i..next].to_vec()));
        i = next;
    }
    Some(parts)
}

/// Least `t` such that `w` is a product of `t` pieces.
pub fn min_piece_count(w: &Word, set: &SymmetrizedRelatorSet) -> Result<Option<usize>> {
    if w.is_empty() {
        return Ok(Some(0));
    }
    if !set.is_prefix(w.letters()) {
        return Err(Error::NotASubword);
    }
    Ok(piece_factorization(w.letters(), set).map(|p| p.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CWitness {
    pub element: Word,
    pub factorization: Vec<Word>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport<W> {
    pub condition: String,
    pub holds: bool,
    pub witness: Option<W>,
}

/// `C(bound)`: no element is a product of fewer than `bound` pieces.
pub fn verify_c(set: &SymmetrizedRelatorSet, bound: usize) -> ConditionReport<CWitness> {
    let witness = set.elements.iter().find_map(|e| {
        let f = piece_factorization(e.letters(), set)?;
        (f.len() < bound).then(|| CWitness { element: e.clone(), factorization: f })
    });
    ConditionReport { condition: format!("C({bound})"), holds: witness.is_none(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TWitness {
    pub cycle: Vec<Word>,
}

/// `T(4)`: for `3 <= t < 4` elements without successive inverse pairs, some
/// cyclically adjacent product is reduced without cancellation.
pub fn verify_t4(set: &SymmetrizedRelatorSet) -> ConditionReport<TWitness> {
    verify_t(set, 4)
}

/// `T(q)` for `q` up to 4, checking cycles of length `3..q`.
pub fn verify_t(set: &SymmetrizedRelatorSet, q: usize) -> ConditionReport<TWitness> {
    assert!((3..=4).contains(&q), "T(q) is implemented for q in 3..=4");
    let witness = if q == 4 { triple_witness(set) } else { None };
    ConditionReport { condition: format!("T({q})"), holds: witness.is_none(), witness }
}

fn class_of(l: Letter) -> usize {
    Letter::ALL.iter().position(|&x| x == l).unwrap()
}

fn triple_witness(set: &SymmetrizedRelatorSet) -> Option<TWitness> {
    // Bucket elements by (first, last) letter; w_i w_{i+1} cancels iff
    // last(w_i) = first(w_{i+1})⁻¹.
    let mut buckets: Vec<Vec<&Word>> = vec![Vec::new(); 16];
    for e in &set.elements {
        let l = e.letters();
        buckets[4 * class_of(l[0]) + class_of(l[l.len() - 1])].push(e);
    }
    let inv = |c: usize| class_of(Letter::ALL[c].inverse());
    for f1 in 0..4 {
        for l1 in 0..4 {
            let f2 = inv(l1);
            for l2 in 0..4 {
                let f3 = inv(l2);
                let l3 = inv(f1);
                let (b1, b2, b3) = (&buckets[4 * f1 + l1], &buckets[4 * f2 + l2], &buckets[4 * f3 + l3]);
                for w1 in b1 {
                    let i1 = w1.inverse();
                    for w2 in b2.iter().filter(|w| ***w != i1) {
                        let i2 = w2.inverse();
                        if let Some(w3) = b3.iter().find(|w| ***w != i2 && w.inverse() != **w1) {
                            return Some(TWitness { cycle: vec![(*w1).clone(), (*w2).clone(), (*w3).clone()] });
                        }
                    }
                }
            }
        }
    }
    None
}

/// `u_r ≡ v1 v2 v3 v4` with `S(v1) = S(v3) = S1` and `S(v2) = S(v4) = S2`.
pub fn v_split(r: &Slope) -> Result<[Word; 4]> {
    let d = s1_s2_decomposition(r)?;
    let u = riley_word(r)?.word;
    let (l1, l2): (usize, usize) = (d.s1.iter().sum(), d.s2.iter().sum());
    let cuts = [0, l1, l1 + l2, 2 * l1 + l2, 2 * (l1 + l2)];
    Ok(std::array::from_fn(|i| u.subword(cuts[i], cuts[i + 1])))
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalPieceReport {
    pub slope: Slope,
    /// `(item, holds)` for `1a`–`1c` or `2a`–`2c`.
    pub items: Vec<(String, bool)>,
}

impl MaximalPieceReport {
    pub fn holds(&self) -> bool {
        self.items.iter().all(|i| i.1)
    }
}

fn join(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.concat()
}

/// Checks the piece structure of `u_r` against the pieces of `set` (the
/// symmetrization of a power of `u_r`).
pub fn check_maximal_piece(r: &Slope, set: &SymmetrizedRelatorSet) -> Result<MaximalPieceReport> {
    let k = to_continued_fraction(r)?.len();
    let v = v_split(r)?;
    let v: Vec<&[Letter]> = v.iter().map(|w| w.letters()).collect();
    // Nonempty initial and terminal segments, optionally proper.
    let inits = |i: usize, proper: bool| -> Vec<&[Letter]> {
        let max = v[i].len() - usize::from(proper);
        (1..=max).map(|l| &v[i][..l]).collect()
    };
    let terms = |i: usize, proper: bool| -> Vec<&[Letter]> {
        let n = v[i].len();
        (1..=n - usize::from(proper)).map(|l| &v[i][n - l..]).collect()
    };
    let mut items = Vec::new();
    if k == 1 {
        items.push(("1a".into(), !set.is_piece(v[1]) && !set.is_piece(v[3])));
        let b = terms(1, false).iter().all(|e| inits(3, false).iter().all(|s| !set.is_piece(&join(&[e, s]))))
            && terms(3, false).iter().all(|e| inits(1, false).iter().all(|s| !set.is_piece(&join(&[e, s]))));
        items.push(("1b".into(), b));
        let c = [1, 3].iter().all(|&i| inits(i, true).iter().chain(&terms(i, true)).all(|x| set.is_piece(x)));
        items.push(("1c".into(), c));
    } else {
        items.push(("2a".into(), !set.is_piece(v[0]) && !set.is_piece(v[2])));
        let b = terms(0, false).iter().all(|e| inits(2, false).iter().all(|s| !set.is_piece(&join(&[e, v[1], s]))))
            && terms(2, false).iter().all(|e| inits(0, false).iter().all(|s| !set.is_piece(&join(&[e, v[3], s]))));
        items.push(("2b".into(), b));
        let c = terms(0, true).iter().all(|e| set.is_piece(&join(&[e, v[1]])))
            && inits(2, true).iter().all(|s| set.is_piece(&join(&[v[1], s])))
            && terms(2, true).iter().all(|e| set.is_piece(&join(&[e, v[3]])))
            && inits(0, true).iter().all(|s| set.is_piece(&join(&[v[3], s])));
        items.push(("2c".into(), c));
    }
    Ok(MaximalPieceReport { slope: r.clone(), items })
}

/// Whether the run structure of `w` contains a subword `w'` with
/// `S(w') = (X, ℓ)` for `X = (2n-1)<S1, S2>` or `S(w') = (ℓ, Y)` for
/// `Y = (2n-1)<S2, S1>`.
pub fn has_long_block(w: &Word, s1: &[usize], s2: &[usize], n: usize) -> bool {
    let runs = crate::word::s_sequence(w).map(|s| s.0).unwrap_or_default();
    let block = |a: &[usize], b: &[usize]| -> Vec<usize> { [a, b].concat().repeat(2 * n - 1) };
    let x = block(s1, s2);
    let y = block(s2, s1);
    let forward =
        (0..runs.len()).any(|j| j + x.len() < runs.len() && runs[j] >= x[0] && runs[j + 1..j + x.len()] == x[1..]);
    let backward = (1..runs.len()).any(|j| {
        j + y.len() <= runs.len()
            && runs[j..j + y.len() - 1] == y[..y.len() - 1]
            && runs[j + y.len() - 1] >= y[y.len() - 1]
    });
    forward || backward
}

/// Subwords of the cyclic word `(u_r^n)` whose least piece count is exactly
/// `4n - 1`, each paired with whether it contains the long block.
pub fn extremal_subwords(r: &Slope, n: usize, set: &SymmetrizedRelatorSet) -> Result<Vec<(Word, bool)>> {
    let d = s1_s2_decomposition(r)?;
    let u = riley_word(r)?.word;
    let big = u.pow(2 * n);
    let len = u.len() * n;
    let mut out = Vec::new();
    for start in 0..u.len() {
        // Piece counts are monotone in the length; scan until they exceed 4n - 1.
        for l in 1..len {
            let w = Word::from_reduced(big.letters()[start..start + l].to_vec());
            match piece_factorization(w.letters(), set).map(|f| f.len()) {
                Some(c) if c == 4 * n - 1 => {
                    let ok = has_long_block(&w, &d.s1, &d.s2, n);
                    out.push((w, ok));
                }
                Some(c) if c > 4 * n - 1 => break,
                _ => {}
            }
        }
    }
    Ok(out)
}

/// Freely reduces the product of words.
pub fn product(parts: &[&Word]) -> Word {
    let v: Vec<Letter> = parts.iter().flat_map(|w| w.letters().iter().copied()).collect();
    free_reduce(&v)
}
