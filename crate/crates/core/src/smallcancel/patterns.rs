//! Sequence patterns of `CS(s)` that separate the fundamental intervals of
//! `H(1/p; n)`.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::farey::HeckoidContext;
use crate::presentation::slope_cyclic_s_sequence;
use crate::rational::Slope;
use crate::word::{contains_subsequence, CyclicSSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternLemma {
    /// `s ∈ I1(1/p;n) ∪ I2(1/p;n)`: no `((2n-2)<p>)`.
    Connection,
    /// `s ∈ I1(1/p) ∪ I2(1/p)`, `s ≠ 0`: every term is less than `p`.
    InsideOrbit,
    /// `0 < s < r1`: some `(p+c, d<p>, p+c')` with `c, c' >= 1`, `0 <= d <= 2n-4`.
    OutsideOrbit,
    /// `r2 <= s < 1/(p-1)`: `(p-1, p, p-1)` appears and `(p, p)` does not.
    OutsideOrbit2,
}

/// How `CS(0)` is read. The word `u_0 = ab` has a single exponent sign, so it
/// has no alternating cyclic S-sequence; one convention reads it as `<2>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroConvention {
    /// Predicates at `s = 0` are reported as undefined.
    #[default]
    Undefined,
    /// `CS(0) = <2>`.
    SingleSyllable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub lemma: PatternLemma,
    /// Whether `s` satisfies the hypothesis of the lemma.
    pub applicable: bool,
    /// The conclusion evaluated on `CS(s)`; `None` when `CS(s)` is undefined.
    pub holds: Option<bool>,
}

impl PredicateResult {
    pub fn violated(&self) -> bool {
        self.applicable && self.holds == Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternReport {
    pub s: Slope,
    pub p: u64,
    pub n: u64,
    pub cyclic_s_sequence: Option<Vec<usize>>,
    pub predicates: Vec<PredicateResult>,
}

impl PatternReport {
    pub fn violations(&self) -> impl Iterator<Item = &PredicateResult> {
        self.predicates.iter().filter(|p| p.violated())
    }
}

/// Whether some rotation of `cs` matches the cell predicates in order.
fn cyclic_match(cs: &[usize], cells: &[&dyn Fn(usize) -> bool]) -> bool {
    let t = cs.len();
    cells.len() <= t && (0..t).any(|k| cells.iter().enumerate().all(|(i, f)| f(cs[(k + i) % t])))
}

fn outside_pattern(cs: &[usize], p: usize, n: usize) -> bool {
    let big = |x: usize| x > p;
    let eq = |x: usize| x == p;
    (0..=2 * n - 4).any(|d| {
        let mut cells: Vec<&dyn Fn(usize) -> bool> = vec![&big];
        cells.extend(std::iter::repeat_n(&eq as &dyn Fn(usize) -> bool, d));
        cells.push(&big);
        cyclic_match(cs, &cells)
    })
}

/// Evaluates the four interval predicates for `s ∈ [0, 1]` in a context with `r = 1/p`.
pub fn forbidden_pattern_report(s: &Slope, ctx: &HeckoidContext, zero: ZeroConvention) -> Result<PatternReport> {
    if !ctx.r.numer().is_one() {
        return Err(Error::NotTorusContext(ctx.r.to_string()));
    }
    if !s.in_closed_unit() {
        return Err(Error::SlopeOutOfRange { slope: s.to_string(), range: "[0, 1]" });
    }
    let (_, p) = ctx.r.to_i64_pair()?;
    let (p, n) = (p as usize, ctx.n as usize);
    let (r1, r2) = (&ctx.intervals.r1, &ctx.intervals.r2);
    let orbit_edge = Slope::new(1, p as i64 - 1)?;
    let cs: Option<Vec<usize>> = if s.is_zero() {
        match zero {
            ZeroConvention::Undefined => None,
            ZeroConvention::SingleSyllable => Some(vec![2]),
        }
    } else {
        Some(slope_cyclic_s_sequence(s)?.0)
    };
    let eval = |f: &dyn Fn(&[usize]) -> bool| cs.as_deref().map(f);
    let seq = |v: &[usize]| CyclicSSequence(v.to_vec());
    let predicates = vec![
        PredicateResult {
            lemma: PatternLemma::Connection,
            applicable: s < r1 || s >= r2,
            holds: eval(&|c| !contains_subsequence(&seq(c), &vec![p; 2 * n - 2])),
        },
        PredicateResult {
            lemma: PatternLemma::InsideOrbit,
            applicable: !s.is_zero() && *s >= orbit_edge,
            holds: eval(&|c| c.iter().all(|&x| x < p)),
        },
        PredicateResult {
            lemma: PatternLemma::OutsideOrbit,
            applicable: !s.is_zero() && s < r1,
            holds: eval(&|c| outside_pattern(c, p, n)),
        },
        PredicateResult {
            lemma: PatternLemma::OutsideOrbit2,
            applicable: s >= r2 && *s < orbit_edge,
            holds: eval(&|c| {
                contains_subsequence(&seq(c), &[p - 1, p, p - 1]) && !contains_subsequence(&seq(c), &[p, p])
            }),
        },
    ];
    Ok(PatternReport { s: s.clone(), p: p as u64, n: n as u64, cyclic_s_sequence: cs, predicates })
}
