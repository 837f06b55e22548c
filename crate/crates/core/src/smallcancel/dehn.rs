//! Dehn's algorithm over a symmetrized relator set, and a bounded search for
//! conjugators.

use serde::Serialize;

use super::SymmetrizedRelatorSet;
use crate::error::{Error, Result};
use crate::word::{free_reduce, Letter, Word};

/// One replacement `s ↦ t⁻¹` where `s t` is a relator element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rewrite {
    /// Rotation applied first (cyclic phase only); the rewrite is then at position 0.
    pub rotation: Option<usize>,
    pub position: usize,
    pub element: Word,
    pub replaced: Word,
    pub replacement: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dehn {
    pub input: Word,
    /// Equal to the input in the group; empty iff the input is trivial.
    pub reduced: Word,
    pub trivial: bool,
    pub rewrites: Vec<Rewrite>,
}

/// Longest prefix of `x` that is more than half of an element, if any.
fn majority_prefix(set: &SymmetrizedRelatorSet, x: &[Letter]) -> Option<(usize, usize)> {
    let (l, i) = set.longest_match(x)?;
    (2 * l > set.elements()[i].len()).then_some((l, i))
}

/// Linear phase: leftmost-longest majority replacement until none applies.
fn linear_phase(set: &SymmetrizedRelatorSet, w: &Word, rewrites: &mut Vec<Rewrite>) -> Word {
    let mut cur = w.letters().to_vec();
    let back = 2 * set.max_len();
    let mut i = 0;
    while i < cur.len() {
        if let Some((l, e)) = majority_prefix(set, &cur[i..]) {
            let element = &set.elements()[e];
            let replacement = element.subword(l, element.len()).inverse();
            rewrites.push(Rewrite {
                rotation: None,
                position: i,
                element: element.clone(),
                replaced: Word::from_reduced(cur[i..i + l].to_vec()),
                replacement: replacement.clone(),
            });
            let mut next = cur[..i].to_vec();
            next.extend_from_slice(replacement.letters());
            next.extend_from_slice(&cur[i + l..]);
            cur = free_reduce(&next).letters().to_vec();
            i = i.saturating_sub(back);
        } else {
            i += 1;
        }
    }
    Word::from_reduced(cur)
}

/// Cyclic phase on a cyclically reduced word: rewrites at any rotation.
fn cyclic_phase(set: &SymmetrizedRelatorSet, w: &Word, rewrites: &mut Vec<Rewrite>) -> Word {
    let mut cur = w.cyclic_core().1;
    'outer: loop {
        let n = cur.len();
        for k in 0..n {
            let rotated = cur.rotate(k);
            if let Some((l, e)) = majority_prefix(set, rotated.letters()) {
                let element = &set.elements()[e];
                let replacement = element.subword(l, element.len()).inverse();
                rewrites.push(Rewrite {
                    rotation: Some(k),
                    position: 0,
                    element: element.clone(),
                    replaced: rotated.subword(0, l),
                    replacement: replacement.clone(),
                });
                let rest = rotated.subword(l, n);
                cur = replacement.mul(&rest).cyclic_core().1;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Replaces subwords that are more than half of a relator element by the
/// shorter complement, leftmost-longest first, then repeats on cyclic
/// rotations to decide triviality.
pub fn dehn_reduce(w: &Word, set: &SymmetrizedRelatorSet) -> Dehn {
    let mut rewrites = Vec::new();
    let linear = linear_phase(set, w, &mut rewrites);
    let core = if linear.is_empty() { linear.clone() } else { cyclic_phase(set, &linear, &mut rewrites) };
    let trivial = core.is_empty();
    Dehn { input: w.clone(), reduced: if trivial { Word::empty() } else { linear }, trivial, rewrites }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ConjugacySearch {
    /// `g u g⁻¹ v⁻¹` reduces to the identity.
    Found { conjugator: Word, searched: u64 },
    /// Every conjugator up to the length bound was tried. This is not a proof
    /// of non-conjugacy.
    NotFound { searched: u64 },
}

/// Tries conjugators in length-lexicographic order (`a < A < b < B`) up to
/// length `max_conjugator`, giving up after `budget` candidates.
pub fn bounded_conjugacy_search(
    u: &Word,
    v: &Word,
    set: &SymmetrizedRelatorSet,
    max_conjugator: usize,
    budget: u64,
) -> Result<ConjugacySearch> {
    let vinv = v.inverse();
    let mut searched = 0u64;
    let mut layer = vec![Word::empty()];
    for len in 0..=max_conjugator {
        if len > 0 {
            layer = layer
                .iter()
                .flat_map(|g| {
                    Letter::ALL.iter().filter(move |&&x| g.letters().last() != Some(&x.inverse())).map(move |&x| {
                        let mut l = g.letters().to_vec();
                        l.push(x);
                        Word::from_reduced(l)
                    })
                })
                .collect();
        }
        for g in &layer {
            searched += 1;
            if searched > budget {
                return Err(Error::SearchBudget(budget));
            }
            let x = g.mul(u).mul(&g.inverse()).mul(&vinv);
            if dehn_reduce(&x, set).trivial {
                return Ok(ConjugacySearch::Found { conjugator: g.clone(), searched });
            }
        }
    }
    Ok(ConjugacySearch::NotFound { searched })
}
