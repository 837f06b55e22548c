//! Property sweeps over ranges of slopes and contexts, run in parallel and
//! merged in slope order.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::farey::{gamma_infinity_generator, normalize, orbit_search, FareyAutomorphism, HeckoidContext};
use crate::presentation::{
    check_corollary_patterns, cyclic_t_sequence, decomposition_direct, decomposition_recursive, recover_slope,
    reduced_slope, relator, riley_word, slope_cyclic_s_sequence, slope_s_sequence, t_sequence, CorollaryBranch,
};
use crate::rational::{fractions_in, proper_fractions, to_continued_fraction, Slope};
use crate::smallcancel::{
    check_maximal_piece, dehn_reduce, extremal_subwords, forbidden_pattern_report, min_piece_count, symmetrize,
    verify_c, verify_t4, PatternLemma, ZeroConvention,
};
use crate::word::{is_cyclically_alternating, is_symmetric, CyclicWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Properties,
    Induction1,
    Sequence,
    Relation,
    Corollary,
    Connection,
    InsideOrbit,
    OutsideOrbit,
    OutsideOrbit2,
    MaximalPiece,
    SmallCancellation,
    ReformulationCrosscheck,
    Orbit,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Properties,
        Suite::Induction1,
        Suite::Sequence,
        Suite::Relation,
        Suite::Corollary,
        Suite::Connection,
        Suite::InsideOrbit,
        Suite::OutsideOrbit,
        Suite::OutsideOrbit2,
        Suite::MaximalPiece,
        Suite::SmallCancellation,
        Suite::ReformulationCrosscheck,
        Suite::Orbit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Properties => "properties",
            Suite::Induction1 => "induction1",
            Suite::Sequence => "sequence",
            Suite::Relation => "relation",
            Suite::Corollary => "corollary",
            Suite::Connection => "connection",
            Suite::InsideOrbit => "inside-orbit",
            Suite::OutsideOrbit => "outside-orbit",
            Suite::OutsideOrbit2 => "outside-orbit2",
            Suite::MaximalPiece => "maximal-piece",
            Suite::SmallCancellation => "small-cancellation",
            Suite::ReformulationCrosscheck => "reformulation-crosscheck",
            Suite::Orbit => "orbit",
        }
    }

    fn pattern_lemma(self) -> Option<PatternLemma> {
        match self {
            Suite::Connection => Some(PatternLemma::Connection),
            Suite::InsideOrbit => Some(PatternLemma::InsideOrbit),
            Suite::OutsideOrbit => Some(PatternLemma::OutsideOrbit),
            Suite::OutsideOrbit2 => Some(PatternLemma::OutsideOrbit2),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepOptions {
    /// Largest slope denominator in the sweep.
    pub max_denom: u64,
    /// Indices `n` of the contexts.
    pub n_values: Vec<u64>,
    /// Denominators `p` of the contexts `r = 1/p`.
    pub p_values: Vec<u64>,
    /// Contexts for the orbit suite.
    pub contexts: Vec<(Slope, u64)>,
    /// Random trials per context for the orbit suite.
    pub trials: usize,
    /// Largest denominator of random slopes in the orbit suite.
    pub random_max_denom: u64,
    pub seed: u64,
}

impl SweepOptions {
    /// The ranges used by the acceptance sweeps.
    pub fn for_suite(suite: Suite) -> SweepOptions {
        let ctx = |q: i64, p: i64, n: u64| (Slope::new(q, p).expect("nonzero denominator"), n);
        let mut o = SweepOptions {
            max_denom: 200,
            n_values: vec![],
            p_values: vec![],
            contexts: vec![],
            trials: 0,
            random_max_denom: 1_000_000,
            seed: 0,
        };
        match suite {
            Suite::Properties | Suite::Induction1 | Suite::Sequence | Suite::Relation | Suite::Corollary => {}
            Suite::Connection | Suite::InsideOrbit | Suite::OutsideOrbit | Suite::OutsideOrbit2 => {
                o.max_denom = 100;
                o.p_values = (2..=6).collect();
                o.n_values = vec![2, 3];
            }
            Suite::MaximalPiece | Suite::SmallCancellation => {
                o.max_denom = 20;
                o.n_values = vec![2, 3, 4];
            }
            Suite::ReformulationCrosscheck => {
                o.max_denom = 30;
                o.p_values = vec![2, 3, 4];
                o.n_values = vec![2, 3];
            }
            Suite::Orbit => {
                o.max_denom = 20;
                o.contexts = vec![ctx(1, 2, 2), ctx(1, 3, 2), ctx(3, 10, 2), ctx(2, 5, 3)];
                o.trials = 10_000;
            }
        }
        o
    }

    /// Replaces every context index by `n`.
    pub fn with_n(mut self, n: u64) -> SweepOptions {
        if !self.n_values.is_empty() {
            self.n_values = vec![n];
        }
        for c in &mut self.contexts {
            c.1 = n;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub suite: Suite,
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    /// Cases where the checked statement does not apply.
    pub skipped: u64,
    /// The first failures in sweep order.
    pub failures: Vec<CaseFailure>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Failures kept in a report.
pub const MAX_REPORTED_FAILURES: usize = 20;

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn check(items: &[(&str, bool)]) -> Outcome {
    let bad: Vec<&str> = items.iter().filter(|i| !i.1).map(|i| i.0).collect();
    if bad.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(bad.join(", "))
    }
}

fn collect(suite: Suite, results: Vec<(String, Result<Outcome>)>) -> SweepReport {
    let mut rep = SweepReport { suite, cases: 0, passed: 0, failed: 0, skipped: 0, failures: vec![] };
    for (case, res) in results {
        rep.cases += 1;
        let detail = match res {
            Ok(Outcome::Pass) => {
                rep.passed += 1;
                continue;
            }
            Ok(Outcome::Skip) => {
                rep.skipped += 1;
                continue;
            }
            Ok(Outcome::Fail(d)) => d,
            Err(e) => e.to_string(),
        };
        rep.failed += 1;
        if rep.failures.len() < MAX_REPORTED_FAILURES {
            rep.failures.push(CaseFailure { case, detail });
        }
    }
    rep
}

/// Runs `f` over `cases` in parallel, keeping the input order.
fn sweep<T: Sync>(
    suite: Suite,
    cases: &[T],
    label: impl Fn(&T) -> String + Sync,
    f: impl Fn(&T) -> Result<Outcome> + Sync,
) -> SweepReport {
    let results = cases.par_iter().map(|c| (label(c), f(c))).collect();
    collect(suite, results)
}

pub fn run_suite(suite: Suite, opts: &SweepOptions) -> Result<SweepReport> {
    let mut slopes = proper_fractions(opts.max_denom);
    slopes.sort();
    let label = |s: &Slope| s.to_string();
    Ok(match suite {
        Suite::Properties => sweep(suite, &slopes, label, properties_case),
        Suite::Induction1 => sweep(suite, &slopes, label, induction_case),
        Suite::Sequence => sweep(suite, &slopes, label, sequence_case),
        Suite::Relation => sweep(suite, &slopes, label, relation_case),
        Suite::Corollary => sweep(suite, &slopes, label, corollary_case),
        Suite::Connection | Suite::InsideOrbit | Suite::OutsideOrbit | Suite::OutsideOrbit2 => {
            let lemma = suite.pattern_lemma().expect("pattern suite");
            let cases = torus_cases(opts)?;
            sweep(suite, &cases, context_label, |(ctx, s)| pattern_case(lemma, ctx, s))
        }
        Suite::MaximalPiece | Suite::SmallCancellation => {
            let cases: Vec<(Slope, u64)> =
                slopes.iter().flat_map(|s| opts.n_values.iter().map(move |&n| (s.clone(), n))).collect();
            let label = |(s, n): &(Slope, u64)| format!("r={s} n={n}");
            if suite == Suite::MaximalPiece {
                sweep(suite, &cases, label, |(r, n)| maximal_piece_case(r, *n))
            } else {
                sweep(suite, &cases, label, |(r, n)| small_cancellation_case(r, *n))
            }
        }
        Suite::ReformulationCrosscheck => {
            let mut cases = torus_cases(opts)?;
            let contexts: Vec<HeckoidContext> = cases.iter().map(|c| c.0.clone()).collect();
            let mut seen = Vec::new();
            for ctx in contexts {
                if !seen.iter().any(|c: &HeckoidContext| c.r == ctx.r && c.n == ctx.n) {
                    seen.push(ctx);
                }
            }
            cases.extend(seen.into_iter().map(|c| (c, Slope::infinity())));
            sweep(suite, &cases, context_label, |(ctx, s)| reformulation_case(ctx, s))
        }
        Suite::Orbit => orbit_suite(opts)?,
    })
}

fn context_label((ctx, s): &(HeckoidContext, Slope)) -> String {
    format!("r={} n={} s={s}", ctx.r, ctx.n)
}

/// `(ctx, s)` for `r = 1/p` over the option ranges and all `s ∈ [0, 1]`.
fn torus_cases(opts: &SweepOptions) -> Result<Vec<(HeckoidContext, Slope)>> {
    let slopes = fractions_in(&Slope::zero(), &Slope::one(), opts.max_denom);
    let mut out = Vec::new();
    for &p in &opts.p_values {
        for &n in &opts.n_values {
            let ctx = HeckoidContext::new(&Slope::new(1, p as i64)?, n)?;
            out.extend(slopes.iter().map(|s| (ctx.clone(), s.clone())));
        }
    }
    Ok(out)
}

fn properties_case(r: &Slope) -> Result<Outcome> {
    let (q, p) = r.to_i64_pair()?;
    let cf = to_continued_fraction(r)?;
    let m = cf.first() as usize;
    let u = riley_word(r)?.word;
    let s = slope_s_sequence(r)?.0;
    let cs = slope_cyclic_s_sequence(r)?;
    let mut items = vec![
        ("|u_r| = 2p", u.len() as i64 == 2 * p),
        ("u_r cyclically alternating", is_cyclically_alternating(&CyclicWord::new(u)?)),
        ("CS has 2q terms", cs.len() as i64 == 2 * q),
        ("CS sums to 2p", cs.total() as i64 == 2 * p),
    ];
    let has_pair = |v: usize| s.windows(2).any(|w| w == [v, v]);
    if cf.len() == 1 {
        items.push(("S = (m,m)", s == [m, m]));
    } else {
        let m2 = cf.terms()[1];
        items.push(("terms in {m, m+1}", s.iter().all(|&x| x == m || x == m + 1)));
        items.push(("begins with m+1", s[0] == m + 1));
        items.push(("ends with m", s[s.len() - 1] == m));
        if m2 == 1 {
            items.push(("no (m,m)", !has_pair(m)));
        } else {
            items.push(("no (m+1,m+1)", !has_pair(m + 1)));
        }
        items.push(("T-sequence defined", t_sequence(r).is_ok()));
    }
    Ok(check(&items))
}

fn induction_case(r: &Slope) -> Result<Outcome> {
    if to_continued_fraction(r)?.len() < 2 {
        return Ok(Outcome::Skip);
    }
    let lhs = slope_cyclic_s_sequence(&reduced_slope(r)?)?;
    Ok(check(&[("CS(r~) = CT(r)", lhs == cyclic_t_sequence(r)?)]))
}

fn sequence_case(r: &Slope) -> Result<Outcome> {
    let cf = to_continued_fraction(r)?;
    let m = cf.first() as usize;
    let s = slope_s_sequence(r)?.0;
    let cs = slope_cyclic_s_sequence(r)?;
    let d = decomposition_direct(r)?;
    let (s1, s2) = (&d.s1, &d.s2);
    let twice = |b: &[usize]| b.is_empty() || cs.occurrences(b) == 2;
    let items = [
        ("S = (S1,S2,S1,S2)", d.expand() == s),
        ("S1 symmetric", is_symmetric(s1)),
        ("S2 symmetric", is_symmetric(s2)),
        ("S1 empty iff k = 1", s1.is_empty() == (cf.len() == 1)),
        ("S1 occurs twice", twice(s1)),
        ("S2 occurs twice", twice(s2)),
        ("S1 bounded by m+1", s1.is_empty() || (s1[0] == m + 1 && s1[s1.len() - 1] == m + 1)),
        ("S2 bounded by m", !s2.is_empty() && s2[0] == m && s2[s2.len() - 1] == m),
        ("slope recovered", recover_slope(&cs)? == *r),
    ];
    Ok(check(&items))
}

fn relation_case(r: &Slope) -> Result<Outcome> {
    let direct = decomposition_direct(r)?;
    let recursive = decomposition_recursive(&to_continued_fraction(r)?)?;
    Ok(check(&[("recursion matches direct split", direct == recursive)]))
}

fn corollary_case(r: &Slope) -> Result<Outcome> {
    if to_continued_fraction(r)?.len() < 2 {
        return Ok(Outcome::Skip);
    }
    let rep = check_corollary_patterns(r)?;
    if rep.branch == CorollaryBranch::Exempt {
        return Ok(Outcome::Skip);
    }
    Ok(check(&[("pattern present", rep.holds)]))
}

fn pattern_case(lemma: PatternLemma, ctx: &HeckoidContext, s: &Slope) -> Result<Outcome> {
    let rep = forbidden_pattern_report(s, ctx, ZeroConvention::Undefined)?;
    let pred = rep.predicates.iter().find(|p| p.lemma == lemma).expect("every lemma is reported");
    Ok(match (pred.applicable, pred.holds) {
        (true, Some(true)) => Outcome::Pass,
        (true, Some(false)) => Outcome::Fail(format!("CS = {:?}", rep.cyclic_s_sequence.unwrap_or_default())),
        _ => Outcome::Skip,
    })
}

fn small_cancellation_case(r: &Slope, n: u64) -> Result<Outcome> {
    let pres = relator(r, n as usize)?;
    let set = symmetrize(&pres);
    let c = verify_c(&set, 4 * n as usize);
    let t = verify_t4(&set);
    let full = min_piece_count(&pres.relator, &set)?;
    Ok(check(&[
        ("C(4n)", c.holds),
        ("T(4)", t.holds),
        ("relator needs >= 4n pieces", full.is_none_or(|c| c >= 4 * n as usize)),
    ]))
}

fn maximal_piece_case(r: &Slope, n: u64) -> Result<Outcome> {
    let set = symmetrize(&relator(r, n as usize)?);
    let rep = check_maximal_piece(r, &set)?;
    let mut items: Vec<(&str, bool)> = rep.items.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let extremal = extremal_subwords(r, n as usize, &set)?;
    items.push(("4n-1 pieces imply long block", extremal.iter().all(|e| e.1)));
    Ok(check(&items))
}

fn reformulation_case(ctx: &HeckoidContext, s: &Slope) -> Result<Outcome> {
    let set = symmetrize(&relator(&ctx.r, ctx.n as usize)?);
    let dehn = dehn_reduce(&riley_word(s)?.word, &set).trivial;
    let orbit = normalize(s, ctx)?.s0.is_infinite();
    if dehn == orbit {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(format!("dehn trivial = {dehn}, orbit of infinity = {orbit}")))
    }
}

/// The generators `x ↦ -x`, `x ↦ 2 - x`, `P`, `P⁻¹` of the context group.
pub fn context_generators(ctx: &HeckoidContext) -> [FareyAutomorphism; 4] {
    let one = num_bigint::BigInt::one();
    [gamma_infinity_generator(0), gamma_infinity_generator(1), ctx.parabolic_power(&one), ctx.parabolic_power(&-one)]
}

fn random_slope(rng: &mut ChaCha8Rng, max_den: u64) -> Slope {
    let p = rng.gen_range(1..=max_den) as i64;
    let q = rng.gen_range(-2 * p..=3 * p);
    Slope::new(q, p).expect("positive denominator")
}

fn orbit_trial(ctx: &HeckoidContext, s: &Slope, g: &FareyAutomorphism) -> Result<Outcome> {
    let a = normalize(s, ctx)?;
    let b = normalize(&g.apply(s), ctx)?;
    let again = normalize(&a.s0, ctx)?;
    Ok(check(&[
        ("orbit invariant", a.s0 == b.s0),
        ("idempotent", again.s0 == a.s0 && again.witness.is_empty()),
        ("witness maps s to s0", a.composite().apply(s) == a.s0),
        ("result fundamental", ctx.is_fundamental(&a.s0)),
    ]))
}

fn orbit_suite(opts: &SweepOptions) -> Result<SweepReport> {
    let mut results = Vec::new();
    let small = fractions_in(&Slope::zero(), &Slope::one(), opts.max_denom);
    for (i, (r, n)) in opts.contexts.iter().enumerate() {
        let ctx = HeckoidContext::new(r, *n)?;
        let gens = context_generators(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
        let trials: Vec<(Slope, FareyAutomorphism, String)> = (0..opts.trials)
            .map(|_| {
                let s = random_slope(&mut rng, opts.random_max_denom);
                let len = rng.gen_range(1..=6);
                let mut g = FareyAutomorphism::identity();
                let mut word = String::new();
                for _ in 0..len {
                    let k = rng.gen_range(0..4);
                    g = gens[k].compose(&g);
                    word.push(['R', 'S', 'P', 'p'][k]);
                }
                (s, g, word)
            })
            .collect();
        let part: Vec<(String, Result<Outcome>)> =
            trials.par_iter().map(|(s, g, w)| (format!("r={r} n={n} s={s} g={w}"), orbit_trial(&ctx, s, g))).collect();
        results.extend(part);
        let part: Vec<(String, Result<Outcome>)> = small
            .par_iter()
            .map(|s| {
                let res = normalize(s, &ctx).map(|a| match orbit_search(s, &ctx, 20_000) {
                    Some(b) if b.s0 == a.s0 => Outcome::Pass,
                    Some(b) => Outcome::Fail(format!("normalize gives {}, search gives {}", a.s0, b.s0)),
                    None => Outcome::Fail("search found no fundamental point".into()),
                });
                (format!("r={r} n={n} s={s} search"), res)
            })
            .collect();
        results.extend(part);
    }
    Ok(collect(Suite::Orbit, results))
}
