//! Slopes in `Q ∪ {∞}`, continued fractions and the `s ↦ s+1`, `s ↦ -s`
//! normalization of slopes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `q/p` with `p >= 0`. Infinity is stored as `1/0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Slope> {
        let (num, den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::ZeroOverZero);
        }
        Ok(Slope::reduce(num, den))
    }

    /// Infallible constructor for callers that know `(num, den) != (0, 0)`.
    pub(crate) fn reduce(mut num: BigInt, mut den: BigInt) -> Slope {
        debug_assert!(!(num.is_zero() && den.is_zero()));
        if den.is_zero() {
            return Slope::infinity();
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Slope { num, den }
    }

    pub fn infinity() -> Slope {
        Slope { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn zero() -> Slope {
        Slope::integer(0)
    }

    pub fn one() -> Slope {
        Slope::integer(1)
    }

    pub fn integer(k: impl Into<BigInt>) -> Slope {
        Slope { num: k.into(), den: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// `(q, p)` as machine integers, or an overflow error.
    pub fn to_i64_pair(&self) -> Result<(i64, i64)> {
        match (self.num.to_i64(), self.den.to_i64()) {
            (Some(q), Some(p)) => Ok((q, p)),
            _ => Err(Error::Overflow(self.to_string())),
        }
    }

    /// Floor of a finite slope.
    pub fn floor(&self) -> BigInt {
        assert!(!self.is_infinite(), "floor of infinity");
        self.num.div_floor(&self.den)
    }

    pub fn add_integer(&self, k: &BigInt) -> Slope {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { num: &self.num + k * &self.den, den: self.den.clone() }
    }

    pub fn neg(&self) -> Slope {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { num: -&self.num, den: self.den.clone() }
    }

    // Field operations on finite values.

    pub fn add(&self, other: &Slope) -> Slope {
        assert!(!self.is_infinite() && !other.is_infinite());
        Slope::reduce(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Slope) -> Slope {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Slope) -> Slope {
        assert!(!self.is_infinite() && !other.is_infinite());
        Slope::reduce(&self.num * &other.num, &self.den * &other.den)
    }

    /// Division of finite values; `x / 0` is infinity.
    pub fn div(&self, other: &Slope) -> Slope {
        assert!(!self.is_infinite() && !other.is_infinite());
        assert!(!self.is_zero() || !other.is_zero(), "0/0");
        Slope::reduce(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether `0 < self < 1`.
    pub fn in_open_unit(&self) -> bool {
        !self.is_infinite() && self.num.is_positive() && self.num < self.den
    }

    /// Whether `0 <= self <= 1`.
    pub fn in_closed_unit(&self) -> bool {
        !self.is_infinite() && !self.num.is_negative() && self.num <= self.den
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            return f64::INFINITY;
        }
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(a), Some(b)) => a / b,
            _ => f64::NAN,
        }
    }
}

impl Ord for Slope {
    /// Finite values in numeric order; infinity sorts after every finite value.
    fn cmp(&self, other: &Slope) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Accepts `q/p`, a bare integer, `inf` / `∞`, or a continued fraction `[m1,...,mk]`.
    fn from_str(s: &str) -> Result<Slope> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t.eq_ignore_ascii_case("infinity") {
            return Ok(Slope::infinity());
        }
        if t.starts_with('[') {
            return Ok(t.parse::<ContinuedFraction>()?.to_slope());
        }
        let bad = || Error::MalformedSlope(s.to_string());
        match t.split_once('/') {
            Some((q, p)) => {
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                Slope::new(q, p)
            }
            None => Ok(Slope::integer(t.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `[m1, ..., mk]` with positive terms and `mk >= 2` unless `k = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ContinuedFraction {
    terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>) -> Result<ContinuedFraction> {
        if terms.is_empty() {
            return Err(Error::InvalidContinuedFraction("empty sequence"));
        }
        if terms.contains(&0) {
            return Err(Error::InvalidContinuedFraction("non-positive term"));
        }
        if terms.len() > 1 && *terms.last().unwrap() < 2 {
            return Err(Error::InvalidContinuedFraction("last term must be >= 2 unless k = 1"));
        }
        Ok(ContinuedFraction { terms })
    }

    /// Builds a continued fraction from arbitrary positive terms, folding a
    /// trailing 1 into the previous term (`[.., m, 1] = [.., m+1]`).
    pub fn normalized(mut terms: Vec<u64>) -> Result<ContinuedFraction> {
        if terms.contains(&0) || terms.is_empty() {
            return ContinuedFraction::new(terms);
        }
        while terms.len() > 1 && *terms.last().unwrap() == 1 {
            terms.pop();
            let last = terms.last_mut().unwrap();
            *last = last.checked_add(1).ok_or_else(|| Error::Overflow("continued fraction term".into()))?;
        }
        ContinuedFraction::new(terms)
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `m = m1`.
    pub fn first(&self) -> u64 {
        self.terms[0]
    }

    pub fn to_slope(&self) -> Slope {
        from_continued_fraction(self)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<ContinuedFraction> {
        let bad = || Error::MalformedContinuedFraction(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Err(Error::InvalidContinuedFraction("empty sequence"));
        }
        let mut terms = Vec::new();
        for part in inner.split(',') {
            let v: i128 = part.trim().parse().map_err(|_| bad())?;
            if v <= 0 {
                return Err(Error::InvalidContinuedFraction("non-positive term"));
            }
            terms.push(u64::try_from(v).map_err(|_| Error::Overflow(part.trim().to_string()))?);
        }
        ContinuedFraction::new(terms)
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms.serialize(serializer)
    }
}

/// Expansion of `0 < s <= 1` by the Euclidean algorithm on `p/q`.
pub fn to_continued_fraction(s: &Slope) -> Result<ContinuedFraction> {
    if s.is_infinite() || !s.num.is_positive() || s.num > s.den {
        return Err(Error::SlopeOutOfRange { slope: s.to_string(), range: "(0, 1]" });
    }
    let (mut a, mut b) = (s.den.clone(), s.num.clone());
    let mut terms = Vec::new();
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        terms.push(quot.to_u64().ok_or_else(|| Error::Overflow(quot.to_string()))?);
        a = b;
        b = rem;
    }
    ContinuedFraction::new(terms)
}

pub fn from_continued_fraction(cf: &ContinuedFraction) -> Slope {
    // 1/(m_i + x) evaluated from the innermost term outwards; x = num/den.
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for &m in cf.terms.iter().rev() {
        let next_den = BigInt::from(m) * &den + &num;
        num = den;
        den = next_den;
    }
    Slope::reduce(num, den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeMove {
    /// `s ↦ s + k`
    Translate(#[serde(serialize_with = "ser_bigint")] BigInt),
    /// `s ↦ -s`
    Negate,
}

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl SlopeMove {
    pub fn apply(&self, s: &Slope) -> Slope {
        match self {
            SlopeMove::Translate(k) => s.add_integer(k),
            SlopeMove::Negate => s.neg(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum CanonicalSlope {
    /// The input was `∞`; nothing moves it.
    Infinity,
    /// The input was an integer; it is moved to `0`.
    Integer,
    /// A slope in `(0, 1/2]`.
    Reduced(Slope),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Canonicalized {
    pub input: Slope,
    pub output: Slope,
    pub class: CanonicalSlope,
    pub moves: Vec<SlopeMove>,
}

impl Canonicalized {
    /// Replays the move log on the input.
    pub fn replay(&self) -> Slope {
        self.moves.iter().fold(self.input.clone(), |s, m| m.apply(&s))
    }
}

/// Moves `s` into `(0, 1/2]` using translations and negation.
pub fn canonicalize_slope(s: &Slope) -> Canonicalized {
    let mut moves = Vec::new();
    let class;
    let output;
    if s.is_infinite() {
        class = CanonicalSlope::Infinity;
        output = s.clone();
    } else if s.is_integer() {
        if !s.num.is_zero() {
            moves.push(SlopeMove::Translate(-&s.num));
        }
        class = CanonicalSlope::Integer;
        output = Slope::zero();
    } else {
        let half = Slope::new(1, 2).unwrap();
        let fl = s.floor();
        let frac = s.add_integer(&-&fl);
        if frac <= half {
            if !fl.is_zero() {
                moves.push(SlopeMove::Translate(-fl));
            }
            output = frac;
        } else {
            moves.push(SlopeMove::Negate);
            let neg = s.neg();
            let fl = neg.floor();
            if !fl.is_zero() {
                moves.push(SlopeMove::Translate(-&fl));
            }
            output = neg.add_integer(&-fl);
        }
        class = CanonicalSlope::Reduced(output.clone());
    }
    Canonicalized { input: s.clone(), output, class, moves }
}

/// All reduced `q/p` with `0 < q/p < 1` and `p <= max_den`, ordered by `(p, q)`.
pub fn proper_fractions(max_den: u64) -> Vec<Slope> {
    let mut out = Vec::new();
    for p in 2..=max_den {
        for q in 1..p {
            if q.gcd(&p) == 1 {
                out.push(Slope { num: BigInt::from(q), den: BigInt::from(p) });
            }
        }
    }
    out
}

/// All reduced fractions in the closed interval `[lo, hi]` with denominator `<= max_den`,
/// sorted numerically.
pub fn fractions_in(lo: &Slope, hi: &Slope, max_den: u64) -> Vec<Slope> {
    let mut out = Vec::new();
    for p in 1..=max_den {
        let pb = BigInt::from(p);
        let start = (lo.numer() * &pb).div_ceil(lo.denom());
        let end = (hi.numer() * &pb).div_floor(hi.denom());
        let mut q = start;
        while q <= end {
            if q.gcd(&pb).is_one() {
                out.push(Slope { num: q.clone(), den: pb.clone() });
            }
            q += 1;
        }
    }
    out.sort();
    out
}
