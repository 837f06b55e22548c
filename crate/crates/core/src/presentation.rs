//! Riley words `u_r`, the upper presentation `<a, b | u_r^n>` and the
//! slope-level sequence invariants `S(r)`, `CS(r)`, `T(r)`, `CT(r)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{to_continued_fraction, ContinuedFraction, Slope};
use crate::word::{
    cyclic_s_sequence, is_symmetric, s_sequence, CyclicSSequence, CyclicWord, Generator, Letter, SSequence, Word,
};

/// Largest denominator for which words are materialized.
pub const MAX_WORD_DENOMINATOR: i64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeWord {
    pub slope: Slope,
    /// `u_r`
    pub word: Word,
    /// `û_r`
    pub hat_word: Word,
}

/// Riley's word `u_{q/p}` for `0 <= q/p <= 1` or `∞`.
///
/// With `ε_i = (-1)^⌊iq/p⌋`, odd `p` gives `u = a û b^{(-1)^q} û⁻¹` with
/// `û = b^{ε_1} a^{ε_2} ⋯ a^{ε_{p-1}}`; even `p` gives `u = a û a⁻¹ û⁻¹` with
/// `û = b^{ε_1} a^{ε_2} ⋯ b^{ε_{p-1}}`. `u_{1/0}` is empty.
pub fn riley_word(s: &Slope) -> Result<SlopeWord> {
    if s.is_infinite() {
        return Ok(SlopeWord { slope: s.clone(), word: Word::empty(), hat_word: Word::empty() });
    }
    if !s.in_closed_unit() {
        return Err(Error::SlopeOutOfRange { slope: s.to_string(), range: "[0, 1] or inf" });
    }
    let (q, p) = s.to_i64_pair()?;
    if p > MAX_WORD_DENOMINATOR {
        return Err(Error::Overflow(format!("denominator {p} exceeds {MAX_WORD_DENOMINATOR}")));
    }
    let (q, p) = (q as u64, p as u64);
    let hat: Vec<Letter> = (1..p)
        .map(|i| {
            let generator = if i % 2 == 1 { Generator::B } else { Generator::A };
            let exponent = if (i * q / p) % 2 == 0 { 1 } else { -1 };
            Letter::new(generator, exponent)
        })
        .collect();
    let hat_word = Word::from_reduced(hat);
    let middle = if p % 2 == 1 { Letter::new(Generator::B, if q % 2 == 0 { 1 } else { -1 }) } else { Letter::A_INV };
    let mut letters = Vec::with_capacity(2 * p as usize);
    letters.push(Letter::A);
    letters.extend_from_slice(hat_word.letters());
    letters.push(middle);
    letters.extend_from_slice(hat_word.inverse().letters());
    Ok(SlopeWord { slope: s.clone(), word: Word::from_reduced(letters), hat_word })
}

fn require_unit_interval(r: &Slope) -> Result<()> {
    if r.is_infinite() || r.is_zero() || !r.in_closed_unit() {
        return Err(Error::SlopeOutOfRange { slope: r.to_string(), range: "(0, 1]" });
    }
    Ok(())
}

fn require_open_unit(r: &Slope) -> Result<()> {
    if !r.in_open_unit() {
        return Err(Error::SlopeOutOfRange { slope: r.to_string(), range: "(0, 1)" });
    }
    Ok(())
}

/// `S(r) = S(u_r)` for `0 < r <= 1`.
pub fn slope_s_sequence(r: &Slope) -> Result<SSequence> {
    require_unit_interval(r)?;
    s_sequence(&riley_word(r)?.word)
}

/// `CS(r)`, the cyclic S-sequence of `(u_r)` for `0 < r <= 1`.
pub fn slope_cyclic_s_sequence(r: &Slope) -> Result<CyclicSSequence> {
    require_unit_interval(r)?;
    cyclic_s_sequence(&CyclicWord::new(riley_word(r)?.word)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TSequence(pub Vec<usize>);

impl TSequence {
    pub fn cyclic(&self) -> CyclicSSequence {
        CyclicSSequence(self.0.clone())
    }
}

/// Run lengths of `seq` over entries equal to `value`, requiring every gap
/// between runs to be exactly one `other`. `leading` says whether the sequence
/// starts with a run of `value` (otherwise with a single `other`).
fn coarsen(seq: &[usize], value: usize, other: usize, leading: bool) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        if !leading {
            if seq[i] != other {
                return None;
            }
            i += 1;
        }
        let start = i;
        while i < seq.len() && seq[i] == value {
            i += 1;
        }
        if i == start {
            return None;
        }
        out.push(i - start);
        if leading {
            if i >= seq.len() || seq[i] != other {
                return None;
            }
            i += 1;
        }
    }
    Some(out)
}

/// `T(r)` for a slope whose continued fraction has length at least 2.
pub fn t_sequence(r: &Slope) -> Result<TSequence> {
    require_unit_interval(r)?;
    let cf = to_continued_fraction(r)?;
    if cf.len() < 2 {
        return Err(Error::TSequenceUndefined(cf.to_string()));
    }
    let m = cf.first() as usize;
    let s = slope_s_sequence(r)?;
    let t = if cf.terms()[1] == 1 {
        // (t1<m+1>, m, t2<m+1>, m, ..., ts<m+1>, m)
        coarsen(s.runs(), m + 1, m, true)
    } else {
        // (m+1, t1<m>, m+1, t2<m>, ..., m+1, ts<m>)
        coarsen(s.runs(), m, m + 1, false)
    };
    t.map(TSequence).ok_or_else(|| Error::UnexpectedShape {
        slope: r.to_string(),
        detail: format!("S-sequence {:?} does not coarsen for {}", s.runs(), cf),
    })
}

/// `CT(r)`.
pub fn cyclic_t_sequence(r: &Slope) -> Result<CyclicSSequence> {
    Ok(t_sequence(r)?.cyclic())
}

/// The continued fraction of `r̃`: `[m3, ..., mk]` if `m2 = 1`, else `[m2 - 1, m3, ..., mk]`.
pub fn reduced_continued_fraction(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    let t = cf.terms();
    if t.len() < 2 {
        return Err(Error::TSequenceUndefined(cf.to_string()));
    }
    let terms = if t[1] == 1 {
        t[2..].to_vec()
    } else {
        let mut v = vec![t[1] - 1];
        v.extend_from_slice(&t[2..]);
        v
    };
    ContinuedFraction::normalized(terms)
}

/// `r̃`, the slope with `CS(r̃) = CT(r)`.
pub fn reduced_slope(r: &Slope) -> Result<Slope> {
    require_unit_interval(r)?;
    Ok(reduced_continued_fraction(&to_continued_fraction(r)?)?.to_slope())
}

/// `S(r) = (S1, S2, S1, S2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeDecomposition {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

impl SlopeDecomposition {
    /// `(S1, S2, S1, S2)` flattened.
    pub fn expand(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(2 * (self.s1.len() + self.s2.len()));
        for _ in 0..2 {
            v.extend_from_slice(&self.s1);
            v.extend_from_slice(&self.s2);
        }
        v
    }
}

/// Splits `S(r)` directly: the first half must equal the second, and is cut at
/// the first point leaving two symmetric blocks with the boundary values
/// `m+1` (for `S1`) and `m` (for `S2`).
pub fn decomposition_direct(r: &Slope) -> Result<SlopeDecomposition> {
    require_open_unit(r)?;
    let cf = to_continued_fraction(r)?;
    let m = cf.first() as usize;
    let s = slope_s_sequence(r)?.0;
    let shape = |detail: String| Error::UnexpectedShape { slope: r.to_string(), detail };
    if s.len() % 2 != 0 || s[..s.len() / 2] != s[s.len() / 2..] {
        return Err(shape(format!("S-sequence {s:?} is not two equal halves")));
    }
    let half = &s[..s.len() / 2];
    if cf.len() == 1 {
        return Ok(SlopeDecomposition { s1: vec![], s2: half.to_vec() });
    }
    (1..half.len())
        .find(|&j| {
            let (a, b) = half.split_at(j);
            is_symmetric(a)
                && is_symmetric(b)
                && a[0] == m + 1
                && a[a.len() - 1] == m + 1
                && b[0] == m
                && b[b.len() - 1] == m
        })
        .map(|j| SlopeDecomposition { s1: half[..j].to_vec(), s2: half[j..].to_vec() })
        .ok_or_else(|| shape(format!("no symmetric (S1,S2) split of {half:?}")))
}

fn blocks(out: &mut Vec<usize>, counts: &[usize], value: usize, separator: usize) {
    for (i, &t) in counts.iter().enumerate() {
        if i > 0 {
            out.push(separator);
        }
        out.extend(std::iter::repeat_n(value, t));
    }
}

/// Builds `(S1, S2)` from the decomposition of `S(r̃)` by the four-case recursion.
pub fn decomposition_recursive(cf: &ContinuedFraction) -> Result<SlopeDecomposition> {
    let t = cf.terms();
    let m = t[0] as usize;
    let k = t.len();
    if k == 1 {
        return Ok(SlopeDecomposition { s1: vec![], s2: vec![m] });
    }
    if k == 2 {
        return Ok(SlopeDecomposition { s1: vec![m + 1], s2: vec![m; t[1] as usize - 1] });
    }
    if t[1] == 1 && k == 3 {
        return Ok(SlopeDecomposition { s1: vec![m + 1; t[2] as usize], s2: vec![m] });
    }
    let inner = decomposition_recursive(&reduced_continued_fraction(cf)?)?;
    let (t1, t2) = (&inner.s1, &inner.s2);
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    if t[1] == 1 {
        blocks(&mut s1, t1, m + 1, m);
        s2.push(m);
        blocks(&mut s2, t2, m + 1, m);
        s2.push(m);
    } else {
        s1.push(m + 1);
        blocks(&mut s1, t2, m, m + 1);
        s1.push(m + 1);
        blocks(&mut s2, t1, m, m + 1);
    }
    Ok(SlopeDecomposition { s1, s2 })
}

/// `(S1, S2)` for `0 < r < 1`, computed both directly and by recursion; the two
/// must agree.
pub fn s1_s2_decomposition(r: &Slope) -> Result<SlopeDecomposition> {
    let direct = decomposition_direct(r)?;
    let recursive = decomposition_recursive(&to_continued_fraction(r)?)?;
    if direct != recursive {
        return Err(Error::RouteDisagreement(r.to_string()));
    }
    Ok(direct)
}

/// Finds a rotation of `cs` reading `(S1, S2, S1, S2)` with both blocks symmetric.
pub fn split_cyclic(cs: &CyclicSSequence) -> Option<SlopeDecomposition> {
    let v = cs.runs();
    let n = v.len();
    if n == 0 || !n.is_multiple_of(2) {
        return None;
    }
    let h = n / 2;
    for k in 0..n {
        let rot: Vec<usize> = v[k..].iter().chain(&v[..k]).copied().collect();
        if rot[..h] != rot[h..] {
            continue;
        }
        for j in 0..h {
            let (a, b) = rot[..h].split_at(j);
            if is_symmetric(a) && is_symmetric(b) {
                return Some(SlopeDecomposition { s1: a.to_vec(), s2: b.to_vec() });
            }
        }
    }
    None
}

/// Recovers `q/p` from `CS(q/p) = <<S1, S2, S1, S2>>`: `p` is the sum of the terms
/// of `S1` and `S2`, `q` the sum of their lengths.
pub fn recover_slope(cs: &CyclicSSequence) -> Result<Slope> {
    let not = |why: &str| Error::NotDecomposable(format!("{cs}: {why}"));
    let d = split_cyclic(cs).ok_or_else(|| not("no symmetric (S1,S2,S1,S2) rotation"))?;
    let p: usize = d.s1.iter().sum::<usize>() + d.s2.iter().sum::<usize>();
    let q = d.s1.len() + d.s2.len();
    let r = Slope::new(q as i64, p as i64)?;
    if r.denom() != &num_bigint::BigInt::from(p) || !r.in_closed_unit() {
        return Err(not("lengths and sums are not coprime"));
    }
    if slope_cyclic_s_sequence(&r)? != *cs {
        return Err(not("not the cyclic S-sequence of a slope"));
    }
    Ok(r)
}

/// The upper presentation `<a, b | u_r^n>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperPresentation {
    pub r: Slope,
    pub n: usize,
    /// `u_r`
    pub base: Word,
    /// `u_r^n`
    pub relator: Word,
}

pub fn relator(r: &Slope, n: usize) -> Result<UpperPresentation> {
    if n < 2 {
        return Err(Error::InvalidIndex(n.to_string()));
    }
    require_open_unit(r)?;
    let base = riley_word(r)?.word;
    let relator = Word::from_reduced(base.letters().repeat(n));
    Ok(UpperPresentation { r: r.clone(), n, base, relator })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorollaryBranch {
    /// `m2 = 1`: `(m+1, m+1)` appears in `S1`.
    M2One,
    /// `m2 >= 2`, `r != [m, 2]`: `(m, m)` appears in `S2`.
    M2AtLeastTwo,
    /// `r = [m, 2] = 2/(2m+1)`; no pattern claimed.
    Exempt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub slope: Slope,
    pub continued_fraction: ContinuedFraction,
    pub branch: CorollaryBranch,
    pub pattern: Vec<usize>,
    pub holds: bool,
}

pub fn check_corollary_patterns(r: &Slope) -> Result<CorollaryReport> {
    let cf = to_continued_fraction(r)?;
    if cf.len() < 2 {
        return Err(Error::TSequenceUndefined(cf.to_string()));
    }
    let d = s1_s2_decomposition(r)?;
    let m = cf.first() as usize;
    let contains = |seq: &[usize], pat: &[usize]| seq.windows(pat.len()).any(|w| w == pat);
    let (branch, pattern, holds) = if cf.terms()[1] == 1 {
        let pat = vec![m + 1, m + 1];
        let h = contains(&d.s1, &pat);
        (CorollaryBranch::M2One, pat, h)
    } else if cf.terms() == [m as u64, 2] {
        (CorollaryBranch::Exempt, vec![], true)
    } else {
        let pat = vec![m, m];
        let h = contains(&d.s2, &pat);
        (CorollaryBranch::M2AtLeastTwo, pat, h)
    };
    Ok(CorollaryReport { slope: r.clone(), continued_fraction: cf, branch, pattern, holds })
}

/// Everything the CLI reports about a slope.
#[derive(Clone, Debug, Serialize)]
pub struct SlopeSummary {
    pub slope: Slope,
    pub continued_fraction: Option<ContinuedFraction>,
    pub word: Word,
    pub s_sequence: Option<SSequence>,
    pub t_sequence: Option<TSequence>,
    pub reduced_slope: Option<Slope>,
    pub s1: Option<Vec<usize>>,
    pub s2: Option<Vec<usize>>,
}

pub fn summarize(r: &Slope) -> Result<SlopeSummary> {
    let word = riley_word(r)?.word;
    let unit = !r.is_infinite() && !r.is_zero() && r.in_closed_unit();
    let cf = if unit { Some(to_continued_fraction(r)?) } else { None };
    let long = cf.as_ref().is_some_and(|c| c.len() >= 2);
    let d = if r.in_open_unit() { Some(s1_s2_decomposition(r)?) } else { None };
    Ok(SlopeSummary {
        slope: r.clone(),
        s_sequence: if unit { Some(slope_s_sequence(r)?) } else { None },
        t_sequence: if long { Some(t_sequence(r)?) } else { None },
        reduced_slope: if long { Some(reduced_slope(r)?) } else { None },
        s1: d.as_ref().map(|d| d.s1.clone()),
        s2: d.map(|d| d.s2),
        continued_fraction: cf,
        word,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::is_cyclically_alternating;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn riley_word_examples() {
        assert_eq!(riley_word(&sl("0/1")).unwrap().word, w("ab"));
        assert_eq!(riley_word(&sl("1/1")).unwrap().word, w("aB"));
        assert!(riley_word(&Slope::infinity()).unwrap().word.is_empty());
        assert_eq!(riley_word(&sl("1/2")).unwrap().word, w("abAB"));
        assert_eq!(riley_word(&sl("1/3")).unwrap().word, w("abaBAB"));
        assert!(riley_word(&sl("3/2")).is_err());
        assert!(riley_word(&sl("-1/3")).is_err());
    }

    #[test]
    fn s_sequence_examples() {
        assert_eq!(
            slope_s_sequence(&sl("10/37")).unwrap().0,
            vec![4, 4, 4, 3, 4, 4, 3, 4, 4, 3, 4, 4, 4, 3, 4, 4, 3, 4, 4, 3]
        );
        assert_eq!(slope_s_sequence(&sl("8/35")).unwrap().0, vec![5, 4, 5, 4, 4, 5, 4, 4, 5, 4, 5, 4, 4, 5, 4, 4]);
        for m in 2..12 {
            assert_eq!(slope_s_sequence(&Slope::new(1, m).unwrap()).unwrap().0, vec![m as usize; 2]);
        }
        assert_eq!(
            s_sequence(&riley_word(&sl("10/37")).unwrap().hat_word).unwrap().0,
            vec![3, 4, 4, 3, 4, 4, 3, 4, 4, 3]
        );
        assert_eq!(s_sequence(&riley_word(&sl("8/35")).unwrap().hat_word).unwrap().0, vec![4, 4, 5, 4, 4, 5, 4, 4]);
        assert!(slope_s_sequence(&sl("0")).is_err());
    }

    #[test]
    fn cyclic_sequences_of_small_slopes() {
        assert_eq!(slope_cyclic_s_sequence(&sl("1/3")).unwrap(), CyclicSSequence(vec![3, 3]));
        let u0 = CyclicWord::new(riley_word(&sl("0")).unwrap().word).unwrap();
        assert_eq!(cyclic_s_sequence(&u0), Err(Error::SingleSign));
        assert!(is_cyclically_alternating(&CyclicWord::new(riley_word(&sl("2/9")).unwrap().word).unwrap()));
    }

    #[test]
    fn t_sequence_examples() {
        assert_eq!(t_sequence(&sl("10/37")).unwrap().0, vec![3, 2, 2, 3, 2, 2]);
        assert_eq!(t_sequence(&sl("8/35")).unwrap().0, vec![1, 2, 2, 1, 2, 2]);
        assert_eq!(t_sequence(&sl("[2,5]")).unwrap().0, vec![4, 4]);
        assert_eq!(slope_cyclic_s_sequence(&sl("[4]")).unwrap(), cyclic_t_sequence(&sl("[2,5]")).unwrap());
        assert!(matches!(t_sequence(&sl("1/4")), Err(Error::TSequenceUndefined(_))));
    }

    #[test]
    fn reduced_slope_examples() {
        assert_eq!(reduced_slope(&sl("[2,5]")).unwrap(), sl("[4]"));
        assert_eq!(reduced_slope(&sl("[2,1,5]")).unwrap(), sl("[5]"));
        assert_eq!(reduced_slope(&sl("[3,1,2,3]")).unwrap(), sl("[2,3]"));
        assert_eq!(slope_cyclic_s_sequence(&sl("[2,3]")).unwrap(), CyclicSSequence(vec![3, 2, 2, 3, 2, 2]));
        assert_eq!(cyclic_t_sequence(&sl("10/37")).unwrap(), slope_cyclic_s_sequence(&sl("[2,3]")).unwrap());
        assert_eq!(reduced_slope(&sl("[3,2]")).unwrap(), sl("1"));
        assert!(reduced_slope(&sl("1/3")).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let d = s1_s2_decomposition(&sl("10/37")).unwrap();
        assert_eq!(d.s1, vec![4, 4, 4]);
        assert_eq!(d.s2, vec![3, 4, 4, 3, 4, 4, 3]);
        let d = s1_s2_decomposition(&sl("8/35")).unwrap();
        assert_eq!(d.s1, vec![5, 4, 5]);
        assert_eq!(d.s2, vec![4, 4, 5, 4, 4]);
        let d = s1_s2_decomposition(&sl("1/6")).unwrap();
        assert!(d.s1.is_empty());
        assert_eq!(d.s2, vec![6]);
        let d = s1_s2_decomposition(&sl("[2,1,5]")).unwrap();
        assert_eq!(d.s1, vec![3; 5]);
        assert_eq!(d.s2, vec![2]);
        let d = s1_s2_decomposition(&sl("[2,5]")).unwrap();
        assert_eq!(d.s1, vec![3]);
        assert_eq!(d.s2, vec![2; 4]);
        assert!(s1_s2_decomposition(&sl("1")).is_err());
        assert!(s1_s2_decomposition(&sl("0")).is_err());
        assert!(s1_s2_decomposition(&Slope::infinity()).is_err());
    }

    #[test]
    fn recover_slope_examples() {
        for s in ["10/37", "8/35", "1/5", "2/3", "1/1"] {
            let r = sl(s);
            assert_eq!(recover_slope(&slope_cyclic_s_sequence(&r).unwrap()).unwrap(), r);
        }
        let d = split_cyclic(&slope_cyclic_s_sequence(&sl("10/37")).unwrap()).unwrap();
        assert_eq!(d.s1.iter().sum::<usize>() + d.s2.iter().sum::<usize>(), 37);
        assert_eq!(d.s1.len() + d.s2.len(), 10);
        let d = split_cyclic(&slope_cyclic_s_sequence(&sl("8/35")).unwrap()).unwrap();
        assert_eq!(d.s1.iter().sum::<usize>() + d.s2.iter().sum::<usize>(), 35);
        assert_eq!(d.s1.len() + d.s2.len(), 8);
        assert!(recover_slope(&CyclicSSequence(vec![3, 1, 2])).is_err());
        assert!(recover_slope(&CyclicSSequence(vec![2, 2, 2, 2])).is_err());
    }

    #[test]
    fn relator_examples() {
        let pres = relator(&sl("1/2"), 2).unwrap();
        assert_eq!(pres.relator, w("abABabAB"));
        assert_eq!(relator(&sl("1/3"), 2).unwrap().relator.len(), 12);
        assert!(pres.relator.is_cyclically_reduced());
        assert!(relator(&sl("0/1"), 3).is_err());
        assert!(relator(&sl("1/3"), 1).is_err());
    }

    #[test]
    fn corollary_examples() {
        let c = check_corollary_patterns(&sl("[2,1,5]")).unwrap();
        assert_eq!(c.branch, CorollaryBranch::M2One);
        assert_eq!(c.pattern, vec![3, 3]);
        assert!(c.holds);
        let c = check_corollary_patterns(&sl("2/7")).unwrap();
        assert_eq!(c.branch, CorollaryBranch::Exempt);
        let c = check_corollary_patterns(&sl("[2,5]")).unwrap();
        assert_eq!(c.branch, CorollaryBranch::M2AtLeastTwo);
        assert_eq!(c.pattern, vec![2, 2]);
        assert!(c.holds);
    }

    #[test]
    fn presentation_invariants_to_denominator_60() {
        for r in crate::rational::proper_fractions(60) {
            let u = riley_word(&r).unwrap();
            let (_, p) = r.to_i64_pair().unwrap();
            assert_eq!(u.word.len() as i64, 2 * p);
            let c = CyclicWord::new(u.word).unwrap();
            assert!(is_cyclically_alternating(&c));
            let cs = cyclic_s_sequence(&c).unwrap();
            assert_eq!(cs.total() as i64, 2 * p);
        }
    }
}
