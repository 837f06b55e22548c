//! The Farey-tessellation groups `Γ_∞` and `C_r(2n)`, the fundamental set
//! `I(r;n)`, and normalization of slopes modulo `Γ̂ = <Γ_∞, C_r(2n)>`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{to_continued_fraction, ContinuedFraction, Slope};

/// Default iteration cap of [`normalize`].
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

/// Node budget of the breadth-first fallback used when the iteration cap is hit.
pub const FALLBACK_NODES: usize = 200_000;

/// An integral Möbius map `s ↦ (a s + b)/(c s + d)` with `ad - bc = ±1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FareyAutomorphism {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl FareyAutomorphism {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        let m = FareyAutomorphism { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        assert!(m.determinant().abs().is_one(), "determinant must be ±1");
        m
    }

    pub fn identity() -> Self {
        FareyAutomorphism::new(1, 0, 0, 1)
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// Acts on `Q ∪ {∞}`.
    pub fn apply(&self, s: &Slope) -> Slope {
        let (x, y) = (s.numer(), s.denom());
        Slope::reduce(&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &FareyAutomorphism) -> FareyAutomorphism {
        FareyAutomorphism {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn inverse(&self) -> FareyAutomorphism {
        let det = self.determinant();
        FareyAutomorphism { a: &det * &self.d, b: -&det * &self.b, c: -&det * &self.c, d: &det * &self.a }
    }

    /// `x ↦ x + k`.
    pub fn translation(k: impl Into<BigInt>) -> Self {
        FareyAutomorphism::new(BigInt::one(), k.into(), 0, 1)
    }
}

impl fmt::Debug for FareyAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for FareyAutomorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [[self.a.to_string(), self.b.to_string()], [self.c.to_string(), self.d.to_string()]];
        let mut seq = serializer.serialize_seq(Some(2))?;
        for row in &rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

/// Reflection `x ↦ 2k - x` in the vertical Farey edge at `k`.
pub fn gamma_infinity_generator(k: impl Into<BigInt>) -> FareyAutomorphism {
    let k: BigInt = k.into();
    FareyAutomorphism::new(-1, BigInt::from(2) * k, 0, 1)
}

/// The nilpotent part `(pq, -q²; p², -pq)` of the primitive parabolic at `q/p`.
fn nilpotent(r: &Slope) -> [BigInt; 4] {
    let (q, p) = (r.numer(), r.denom());
    [p * q, -(q * q), p * p, -(p * q)]
}

/// `I + c·N` where `N` is the nilpotent part at `r`.
fn unipotent(r: &Slope, c: &BigInt) -> FareyAutomorphism {
    let [n11, n12, n21, n22] = nilpotent(r);
    FareyAutomorphism { a: BigInt::one() + c * n11, b: c * n12, c: c * n21, d: BigInt::one() + c * n22 }
}

/// Which of the two endpoints joined by the parabolic is left out of `I(r;n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExcludedEndpoint {
    /// Exclude `r1`, the endpoint of the interval containing `0`.
    #[default]
    Lower,
    /// Exclude `r2`, the endpoint of the interval containing `1`.
    Upper,
}

/// `Ī(r;n) = [0, r1] ∪ [r2, 1]` and the half-open `I(r;n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalIntervals {
    pub r1: Slope,
    pub r2: Slope,
    pub r1_continued_fraction: ContinuedFraction,
    pub r2_continued_fraction: ContinuedFraction,
    pub excluded: ExcludedEndpoint,
}

impl FundamentalIntervals {
    pub fn excluded_endpoint(&self) -> &Slope {
        match self.excluded {
            ExcludedEndpoint::Lower => &self.r1,
            ExcludedEndpoint::Upper => &self.r2,
        }
    }

    /// Membership in `Ī(r;n)`.
    pub fn contains_closed(&self, s: &Slope) -> bool {
        s.in_closed_unit() && (*s <= self.r1 || *s >= self.r2)
    }

    /// Membership in `I(r;n)`.
    pub fn contains(&self, s: &Slope) -> bool {
        self.contains_closed(s) && s != self.excluded_endpoint()
    }

    /// Whether `s` lies strictly between `r1` and `r2`.
    pub fn in_gap(&self, s: &Slope) -> bool {
        !s.is_infinite() && *s > self.r1 && *s < self.r2
    }
}

impl fmt::Display for FundamentalIntervals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.excluded {
            ExcludedEndpoint::Lower => write!(f, "[0, {}) ∪ [{}, 1]", self.r1, self.r2),
            ExcludedEndpoint::Upper => write!(f, "[0, {}] ∪ ({}, 1]", self.r1, self.r2),
        }
    }
}

/// The two Farey neighbours of `r = [m1, ..., mk]` joined by the parabolic of
/// order `order = 2n`: `[m1, ..., mk, 2n-2]` and `[m1, ..., mk - 1, 2]`.
fn endpoint_pair(cf: &ContinuedFraction, order: u64) -> Result<(ContinuedFraction, ContinuedFraction)> {
    let t = cf.terms();
    let mut ea = t.to_vec();
    ea.push(order - 2);
    let mut eb = t.to_vec();
    *eb.last_mut().unwrap() -= 1;
    eb.push(2);
    Ok((ContinuedFraction::normalized(ea)?, ContinuedFraction::normalized(eb)?))
}

/// `Ī(r;n)` for `0 < r < 1`, given `order = 2n` (odd orders are accepted for inspection).
pub fn fundamental_intervals_with_order(
    r: &Slope,
    order: u64,
    excluded: ExcludedEndpoint,
) -> Result<FundamentalIntervals> {
    if !r.in_open_unit() {
        return Err(Error::SlopeOutOfRange { slope: r.to_string(), range: "(0, 1)" });
    }
    if order < 3 {
        return Err(Error::InvalidIndex(format!("{}", order as f64 / 2.0)));
    }
    let (ea, eb) = endpoint_pair(&to_continued_fraction(r)?, order)?;
    let (sa, sb) = (ea.to_slope(), eb.to_slope());
    let (r1, r2, c1, c2) = if sa < sb { (sa, sb, ea, eb) } else { (sb, sa, eb, ea) };
    Ok(FundamentalIntervals { r1, r2, r1_continued_fraction: c1, r2_continued_fraction: c2, excluded })
}

pub fn fundamental_intervals(r: &Slope, n: u64) -> Result<FundamentalIntervals> {
    if n < 2 {
        return Err(Error::InvalidIndex(n.to_string()));
    }
    fundamental_intervals_with_order(r, 2 * n, ExcludedEndpoint::Lower)
}

/// Picks the sign of `I ± order·N` so that the map sends `from` to `to`.
fn oriented_parabolic(r: &Slope, order: u64, from: &Slope, to: &Slope) -> Option<FareyAutomorphism> {
    [1i64, -1].into_iter().find_map(|sign| {
        let m = unipotent(r, &BigInt::from(sign * order as i64));
        (m.apply(from) == *to).then_some(m)
    })
}

/// The generator of `C_r(2n)`: the `2n`-th power of the primitive parabolic at
/// `r`, oriented to carry `r1` to `r2`. Any non-integral `r` is accepted; the
/// construction is transported from the fractional part of `r` by translation.
pub fn parabolic_generator(r: &Slope, n: u64) -> Result<FareyAutomorphism> {
    if r.is_infinite() || r.is_integer() {
        return Err(Error::IntegralSlope(r.to_string()));
    }
    let f = r.floor();
    let shift = FareyAutomorphism::translation(f.clone());
    let base = r.add_integer(&-&f);
    let iv = fundamental_intervals(&base, n)?;
    let m =
        oriented_parabolic(&base, 2 * n, &iv.r1, &iv.r2).expect("one orientation of the parabolic joins the endpoints");
    Ok(shift.compose(&m).compose(&shift.inverse()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// `x ↦ 2k - x`
    Reflect {
        #[serde(serialize_with = "ser_display")]
        k: BigInt,
    },
    /// `x ↦ x + by` with `by` even, a product of two reflections.
    Translate {
        #[serde(serialize_with = "ser_display")]
        by: BigInt,
    },
    /// A power of the generator of `C_r(2n)`.
    Parabolic {
        #[serde(serialize_with = "ser_display")]
        power: BigInt,
    },
}

fn ser_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    #[serde(rename = "move")]
    pub kind: Move,
    pub matrix: FareyAutomorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FundamentalPoint {
    Infinity,
    FixedPoint,
    Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub s: Slope,
    pub s0: Slope,
    pub class: FundamentalPoint,
    pub witness: Vec<WitnessStep>,
    pub steps: u64,
}

impl Normalized {
    /// The composite of the witness, mapping `s` to `s0`.
    pub fn composite(&self) -> FareyAutomorphism {
        self.witness.iter().fold(FareyAutomorphism::identity(), |acc, w| w.matrix.compose(&acc))
    }
}

/// An even Heckoid context `(r, n)` with `0 < r < 1`, `n >= 2`.
#[derive(Clone, Debug, Serialize)]
pub struct HeckoidContext {
    pub r: Slope,
    pub n: u64,
    pub parabolic: FareyAutomorphism,
    pub intervals: FundamentalIntervals,
    #[serde(skip)]
    fan: FareyAutomorphism,
    #[serde(skip)]
    fan_inverse: FareyAutomorphism,
    #[serde(skip)]
    t_excluded: Slope,
    #[serde(skip)]
    t_included: Slope,
}

impl HeckoidContext {
    pub fn new(r: &Slope, n: u64) -> Result<HeckoidContext> {
        HeckoidContext::with_excluded(r, n, ExcludedEndpoint::Lower)
    }

    pub fn with_excluded(r: &Slope, n: u64, excluded: ExcludedEndpoint) -> Result<HeckoidContext> {
        if n < 2 {
            return Err(Error::InvalidIndex(n.to_string()));
        }
        if r.is_infinite() || r.is_integer() {
            return Err(Error::IntegralSlope(r.to_string()));
        }
        let intervals = fundamental_intervals_with_order(r, 2 * n, excluded)?;
        let parabolic = parabolic_generator(r, n)?;
        // Fan coordinate: t ↦ (q t + x0)/(p t + y0) sends ∞ to r and the
        // integers to the Farey neighbours of r.
        let (q, p) = (r.numer().clone(), r.denom().clone());
        let e = q.extended_gcd(&p);
        let fan = FareyAutomorphism::new(q, -e.y, p, e.x);
        let fan_inverse = fan.inverse();
        let t1 = fan_inverse.apply(&intervals.r1);
        let t2 = fan_inverse.apply(&intervals.r2);
        let (t_excluded, t_included) = match excluded {
            ExcludedEndpoint::Lower => (t1, t2),
            ExcludedEndpoint::Upper => (t2, t1),
        };
        Ok(HeckoidContext { r: r.clone(), n, parabolic, intervals, fan, fan_inverse, t_excluded, t_included })
    }

    /// Whether `s` is in the fundamental set `I(r;n) ∪ {∞, r}`.
    pub fn is_fundamental(&self, s: &Slope) -> bool {
        s.is_infinite() || *s == self.r || self.intervals.contains(s)
    }

    fn classify(&self, s: &Slope) -> Option<FundamentalPoint> {
        if s.is_infinite() {
            Some(FundamentalPoint::Infinity)
        } else if *s == self.r {
            Some(FundamentalPoint::FixedPoint)
        } else if self.intervals.contains(s) {
            Some(FundamentalPoint::Interval)
        } else {
            None
        }
    }

    /// `P^j` for the context parabolic `P`.
    pub fn parabolic_power(&self, j: &BigInt) -> FareyAutomorphism {
        unipotent(&self.r, &(j * self.order_signed()))
    }

    fn order_signed(&self) -> BigInt {
        // P = I + c N with c = ±2n; recover c from the (2,1) entry c·p².
        let p2 = self.r.denom() * self.r.denom();
        &self.parabolic.c / p2
    }

    /// Γ_∞ move bringing a finite `s` outside `[0, 1]` into `[0, 1]`.
    fn gamma_move(s: &Slope) -> WitnessStep {
        let f = s.floor();
        if f.is_even() {
            let by = -f;
            WitnessStep { matrix: FareyAutomorphism::translation(by.clone()), kind: Move::Translate { by } }
        } else {
            let k: BigInt = (f + 1) / 2;
            WitnessStep { matrix: gamma_infinity_generator(k.clone()), kind: Move::Reflect { k } }
        }
    }

    /// Power of the parabolic moving `s` (in the gap or at the excluded
    /// endpoint) into the window between the endpoints in fan coordinates.
    fn parabolic_move(&self, s: &Slope) -> WitnessStep {
        let t = self.fan_inverse.apply(s);
        let delta = self.t_included.sub(&self.t_excluded);
        let x = t.sub(&self.t_excluded).div(&delta);
        let j = Slope::one().sub(&x).floor();
        let power = match self.intervals.excluded {
            ExcludedEndpoint::Lower => j,
            ExcludedEndpoint::Upper => -j,
        };
        WitnessStep { matrix: self.parabolic_power(&power), kind: Move::Parabolic { power } }
    }

    /// Fan coordinate of `s`, with `r` at `∞` and the Farey neighbours of `r` at the integers.
    pub fn fan_coordinate(&self, s: &Slope) -> Slope {
        self.fan_inverse.apply(s)
    }

    /// Inverse of [`HeckoidContext::fan_coordinate`].
    pub fn from_fan_coordinate(&self, t: &Slope) -> Slope {
        self.fan.apply(t)
    }
}

/// Moves `s` into `I(r;n) ∪ {∞, r}` by `Γ̂`, with the default iteration cap.
pub fn normalize(s: &Slope, ctx: &HeckoidContext) -> Result<Normalized> {
    normalize_with_budget(s, ctx, DEFAULT_MAX_STEPS)
}

pub fn normalize_with_budget(s: &Slope, ctx: &HeckoidContext, max_steps: u64) -> Result<Normalized> {
    let mut cur = s.clone();
    let mut witness = Vec::new();
    let mut steps = 0u64;
    loop {
        if let Some(class) = ctx.classify(&cur) {
            return Ok(Normalized { s: s.clone(), s0: cur, class, witness, steps });
        }
        if steps >= max_steps {
            return orbit_search(s, ctx, FALLBACK_NODES).ok_or(Error::NormalizationBudget(max_steps));
        }
        steps += 1;
        let step = if cur.in_closed_unit() { ctx.parabolic_move(&cur) } else { HeckoidContext::gamma_move(&cur) };
        cur = step.matrix.apply(&cur);
        witness.push(step);
    }
}

/// Breadth-first search over words in `x ↦ -x`, `x ↦ 2 - x`, `P`, `P⁻¹` for a
/// point of the fundamental set, visiting at most `max_nodes` slopes.
pub fn orbit_search(s: &Slope, ctx: &HeckoidContext, max_nodes: usize) -> Option<Normalized> {
    let gens = [
        WitnessStep { kind: Move::Reflect { k: BigInt::zero() }, matrix: gamma_infinity_generator(0) },
        WitnessStep { kind: Move::Reflect { k: BigInt::one() }, matrix: gamma_infinity_generator(1) },
        WitnessStep { kind: Move::Parabolic { power: BigInt::one() }, matrix: ctx.parabolic_power(&BigInt::one()) },
        WitnessStep { kind: Move::Parabolic { power: -BigInt::one() }, matrix: ctx.parabolic_power(&-BigInt::one()) },
    ];
    let mut parent: HashMap<Slope, Option<(Slope, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(s.clone(), None);
    queue.push_back(s.clone());
    while let Some(x) = queue.pop_front() {
        if let Some(class) = ctx.classify(&x) {
            let mut witness = Vec::new();
            let mut at = x.clone();
            while let Some(Some((prev, g))) = parent.get(&at) {
                witness.push(gens[*g].clone());
                at = prev.clone();
            }
            witness.reverse();
            let steps = witness.len() as u64;
            return Some(Normalized { s: s.clone(), s0: x, class, witness, steps });
        }
        if parent.len() >= max_nodes {
            continue;
        }
        for (g, step) in gens.iter().enumerate() {
            let y = step.matrix.apply(&x);
            if !parent.contains_key(&y) {
                parent.insert(y.clone(), Some((x.clone(), g)));
                queue.push_back(y);
            }
        }
    }
    None
}

/// Whether `s` lies in the `Γ̂`-orbit of `∞`.
pub fn in_orbit_of_infinity(s: &Slope, ctx: &HeckoidContext) -> Result<bool> {
    Ok(normalize(s, ctx)?.s0.is_infinite())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn reflections() {
        assert_eq!(gamma_infinity_generator(0).apply(&sl("1/3")), sl("-1/3"));
        assert_eq!(gamma_infinity_generator(1).apply(&sl("1/4")), sl("7/4"));
        let g = gamma_infinity_generator(0);
        assert!(g.compose(&g).is_identity());
        assert_eq!(g.determinant(), BigInt::from(-1));
        assert!(g.apply(&Slope::infinity()).is_infinite());
    }

    #[test]
    fn intervals_examples() {
        let iv = fundamental_intervals(&sl("3/10"), 2).unwrap();
        assert_eq!((iv.r1.clone(), iv.r2.clone()), (sl("5/17"), sl("7/23")));
        assert!(iv.contains(&sl("0")) && iv.contains(&sl("1")) && iv.contains(&sl("7/23")));
        assert!(!iv.contains(&sl("5/17")) && iv.contains_closed(&sl("5/17")));
        let iv = fundamental_intervals(&sl("1/2"), 2).unwrap();
        assert_eq!((iv.r1, iv.r2), (sl("2/5"), sl("2/3")));
        for p in 2..12i64 {
            for n in 2..6u64 {
                let iv = fundamental_intervals(&Slope::new(1, p).unwrap(), n).unwrap();
                assert_eq!(iv.r1_continued_fraction.terms(), [p as u64, 2 * n - 2]);
                assert_eq!(iv.r2, ContinuedFraction::normalized(vec![p as u64 - 1, 2]).unwrap().to_slope());
                assert!(iv.contains(&Slope::zero()));
            }
        }
        assert!(fundamental_intervals(&sl("1/2"), 1).is_err());
        assert!(fundamental_intervals(&sl("1"), 2).is_err());
        let odd = fundamental_intervals_with_order(&sl("1/3"), 3, ExcludedEndpoint::Lower).unwrap();
        assert_eq!(odd.r1, sl("[4]"));
    }

    #[test]
    fn parabolic_examples() {
        let p = parabolic_generator(&sl("3/10"), 2).unwrap();
        assert_eq!(p.apply(&sl("5/17")), sl("7/23"));
        assert_eq!(p.apply(&sl("3/10")), sl("3/10"));
        assert_eq!(p.trace(), BigInt::from(2));
        assert!(!p.is_identity());
        for pp in 2..10u64 {
            for n in 2..5 {
                let r = Slope::new(1, pp).unwrap();
                let g = parabolic_generator(&r, n).unwrap();
                let r1 = ContinuedFraction::new(vec![pp, 2 * n - 2]).unwrap().to_slope();
                let r2 = ContinuedFraction::normalized(vec![pp - 1, 2]).unwrap().to_slope();
                assert_eq!(g.apply(&r1), r2);
            }
        }
        let g = parabolic_generator(&sl("13/10"), 2).unwrap();
        assert_eq!(g.apply(&sl("13/10")), sl("13/10"));
        assert_eq!(g.apply(&sl("22/17")), sl("30/23"));
        assert!(parabolic_generator(&sl("2"), 2).is_err());
    }

    #[test]
    fn normalize_examples() {
        let ctx = HeckoidContext::new(&sl("3/10"), 2).unwrap();
        let n = normalize(&sl("1/4"), &ctx).unwrap();
        assert_eq!(n.s0, sl("1/4"));
        assert!(n.witness.is_empty());
        let n = normalize(&sl("7/4"), &ctx).unwrap();
        assert_eq!(n.s0, sl("1/4"));
        assert_eq!(n.composite().apply(&sl("7/4")), sl("1/4"));
        let n = normalize(&sl("5/17"), &ctx).unwrap();
        assert_eq!(n.s0, sl("7/23"));
        let n = normalize(&sl("3/10"), &ctx).unwrap();
        assert_eq!(n.class, FundamentalPoint::FixedPoint);
        let inf = Slope::infinity();
        let g = ctx.parabolic.compose(&gamma_infinity_generator(3));
        assert!(in_orbit_of_infinity(&g.apply(&inf), &ctx).unwrap());
        assert!(in_orbit_of_infinity(&inf, &ctx).unwrap());
        assert!(!in_orbit_of_infinity(&sl("1/4"), &ctx).unwrap());
    }

    #[test]
    fn upper_exclusion() {
        let ctx = HeckoidContext::with_excluded(&sl("3/10"), 2, ExcludedEndpoint::Upper).unwrap();
        assert_eq!(normalize(&sl("7/23"), &ctx).unwrap().s0, sl("5/17"));
        assert_eq!(normalize(&sl("5/17"), &ctx).unwrap().s0, sl("5/17"));
    }

    #[test]
    fn search_agrees_on_small_cases() {
        let ctx = HeckoidContext::new(&sl("1/3"), 2).unwrap();
        for s in crate::rational::proper_fractions(12) {
            let fast = normalize(&s, &ctx).unwrap();
            let slow = orbit_search(&s, &ctx, 50_000).unwrap();
            assert_eq!(fast.s0, slow.s0, "{s}");
        }
    }

    fn generator_word(ctx: &HeckoidContext, word: &[u8]) -> FareyAutomorphism {
        word.iter().fold(FareyAutomorphism::identity(), |acc, g| {
            let m = match g % 4 {
                0 => gamma_infinity_generator(0),
                1 => gamma_infinity_generator(1),
                2 => ctx.parabolic.clone(),
                _ => ctx.parabolic.inverse(),
            };
            m.compose(&acc)
        })
    }

    proptest! {
        #[test]
        fn orbit_invariance(q in 0i64..200, p in 1i64..200, word in prop::collection::vec(0u8..4, 0..8), r in 0usize..4) {
            let rs = ["1/3", "3/10", "2/5", "5/8"];
            let ctx = HeckoidContext::new(&rs[r].parse().unwrap(), 2 + (r as u64 % 2)).unwrap();
            let s = Slope::new(q, p).unwrap();
            let base = normalize(&s, &ctx).unwrap();
            let moved = generator_word(&ctx, &word).apply(&s);
            let other = normalize(&moved, &ctx).unwrap();
            prop_assert_eq!(&base.s0, &other.s0);
            prop_assert_eq!(other.composite().apply(&moved), other.s0.clone());
            let again = normalize(&base.s0, &ctx).unwrap();
            prop_assert!(again.witness.is_empty());
        }
    }
}
