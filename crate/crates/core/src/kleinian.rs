//! Parabolic representations `ρ(a) = (1,1;0,1)`, `ρ(b) = (1,0;ω,1)` of
//! `H(r;n)` and trace certificates refuting conjugacy, peripherality and
//! torsion.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::dd::{Dd, DdComplex, PI};
use crate::error::{Error, Result};
use crate::presentation::riley_word;
use crate::rational::Slope;
use crate::word::{Generator, Word};

/// Default numeric tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Certificates require a margin of this many tolerances.
pub const GUARD_FACTOR: f64 = 10.0;

/// A polynomial in `ω` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Polynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: impl Into<BigInt>) -> Polynomial {
        Polynomial::new(vec![c.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        Polynomial::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    fn neg(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplication by `±ω`.
    fn shift(&self, sign: bool) -> Polynomial {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero()];
        c.extend(self.coeffs.iter().map(|x| if sign { x.clone() } else { -x }));
        Polynomial { coeffs: c }
    }

    pub(crate) fn eval_dd(&self, z: DdComplex) -> (DdComplex, DdComplex) {
        let mut f = DdComplex::default();
        let mut df = DdComplex::default();
        for c in self.coeffs.iter().rev() {
            df = df * z + f;
            f = f * z + DdComplex::real(Dd::from_bigint(c));
        }
        (f, df)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_dd(DdComplex::from_c64(z)).0.to_c64()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "w")?,
                (1, false) => write!(f, "{a}w")?,
                (_, true) => write!(f, "w^{i}")?,
                (_, false) => write!(f, "{a}w^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `ρ(w)` as a matrix of polynomials in `ω`.
pub fn matrix_polynomials(w: &Word) -> [Polynomial; 4] {
    let one = || Polynomial::constant(1);
    let zero = || Polynomial::new(vec![]);
    let [mut m11, mut m12, mut m21, mut m22] = [one(), zero(), zero(), one()];
    for x in w.letters() {
        match x.generator {
            // right multiplication by (1, ±1; 0, 1)
            Generator::A => {
                let (c12, c22) = if x.positive { (m11.clone(), m21.clone()) } else { (m11.neg(), m21.neg()) };
                m12 = m12.add(&c12);
                m22 = m22.add(&c22);
            }
            // right multiplication by (1, 0; ±ω, 1)
            Generator::B => {
                m11 = m11.add(&m12.shift(x.positive));
                m21 = m21.add(&m22.shift(x.positive));
            }
        }
    }
    [m11, m12, m21, m22]
}

/// `tr ρ(w)` as an integer polynomial in `ω`.
pub fn trace_polynomial_of_word(w: &Word) -> Polynomial {
    let [m11, _, _, m22] = matrix_polynomials(w);
    m11.add(&m22)
}

/// `tr ρ(u_r)` for `0 <= r <= 1`.
pub fn trace_polynomial(r: &Slope) -> Result<Polynomial> {
    Ok(trace_polynomial_of_word(&riley_word(r)?.word))
}

type DdMatrix = [DdComplex; 4];

fn dd_mul(x: &DdMatrix, y: &DdMatrix) -> DdMatrix {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

fn dd_identity() -> DdMatrix {
    let one = DdComplex::real(Dd::new(1.0));
    [one, DdComplex::default(), DdComplex::default(), one]
}

/// `ρ(w)` at `ω`, in double-double precision.
fn dd_matrix(w: &Word, omega: DdComplex) -> DdMatrix {
    let one = DdComplex::real(Dd::new(1.0));
    let zero = DdComplex::default();
    let mut m = dd_identity();
    for x in w.letters() {
        let g = match (x.generator, x.positive) {
            (Generator::A, true) => [one, one, zero, one],
            (Generator::A, false) => [one, -one, zero, one],
            (Generator::B, true) => [one, zero, omega, one],
            (Generator::B, false) => [one, zero, -omega, one],
        };
        m = dd_mul(&m, &g);
    }
    m
}

/// `ρ(w)` at `ω` as a 2×2 complex matrix (row-major).
pub fn represent_word(w: &Word, omega: Complex64) -> [Complex64; 4] {
    dd_matrix(w, DdComplex::from_c64(omega)).map(DdComplex::to_c64)
}

fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicRepresentation {
    #[serde(serialize_with = "ser_complex")]
    pub omega: Complex64,
    pub target_trace: f64,
    /// `|tr ρ(u_r) - 2cos(π/n)|`
    pub residual: f64,
    /// Distance of `ρ(u_r)^n` from `±I` (largest entry).
    pub power_residual: f64,
    #[serde(skip)]
    omega_dd: DdComplex,
}

impl ParabolicRepresentation {
    /// `tr ρ(w)` in double-double precision, rounded.
    pub fn trace_of_word(&self, w: &Word) -> Complex64 {
        let m = dd_matrix(w, self.omega_dd);
        (m[0] + m[3]).to_c64()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootFailure {
    #[serde(serialize_with = "ser_complex")]
    pub approximation: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Representations {
    pub r: Slope,
    pub n: u64,
    pub polynomial: Polynomial,
    pub representations: Vec<ParabolicRepresentation>,
    pub failures: Vec<RootFailure>,
}

fn target_trace(n: u64) -> Dd {
    Dd::new(2.0) * PI.div(Dd::new(n as f64)).cos()
}

/// All roots of `tr ρ(u_r) - 2cos(π/n)`, found as companion-matrix eigenvalues
/// and polished by Newton's method in double-double precision.
pub fn solve_representations(r: &Slope, n: u64, tol: f64) -> Result<Representations> {
    if n < 2 {
        return Err(Error::InvalidIndex(n.to_string()));
    }
    if !r.in_open_unit() {
        return Err(Error::SlopeOutOfRange { slope: r.to_string(), range: "(0, 1)" });
    }
    let trace = trace_polynomial(r)?;
    let target = target_trace(n);
    let f = |z: DdComplex| {
        let (v, dv) = trace.eval_dd(z);
        (v - DdComplex::real(target), dv)
    };
    let deg = trace.degree();
    let lead = trace.coeffs()[deg].to_f64().ok_or_else(|| Error::RootFinding("leading coefficient".into()))?;
    let mut shifted: Vec<f64> = trace.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    shifted[0] -= target.to_f64();
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -shifted[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let seeds = companion.complex_eigenvalues();
    let u = riley_word(r)?.word;
    let mut representations = Vec::new();
    let mut failures = Vec::new();
    for seed in seeds.iter() {
        let mut z = DdComplex::from_c64(Complex64::new(seed.re, seed.im));
        for _ in 0..60 {
            let (v, dv) = f(z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v.div(dv);
            z = z - step;
            if step.norm() < 1e-30 * (1.0 + z.norm()) {
                break;
            }
        }
        let residual = f(z).0.norm();
        let m = dd_matrix(&u, z);
        let mut p = dd_identity();
        for _ in 0..n {
            p = dd_mul(&p, &m);
        }
        let id = dd_identity();
        let dist =
            |sign: f64| (0..4).map(|i| (p[i] - DdComplex::real(Dd::new(sign)) * id[i]).norm()).fold(0.0, f64::max);
        let power_residual = dist(1.0).min(dist(-1.0));
        if residual < tol && power_residual < tol {
            representations.push(ParabolicRepresentation {
                omega: z.to_c64(),
                target_trace: target.to_f64(),
                residual,
                power_residual,
                omega_dd: z,
            });
        } else {
            failures.push(RootFailure { approximation: z.to_c64(), residual });
        }
    }
    representations.sort_by(|a, b| (a.omega.re, a.omega.im).partial_cmp(&(b.omega.re, b.omega.im)).unwrap());
    Ok(Representations { r: r.clone(), n, polynomial: trace, representations, failures })
}

/// `tr ρ(u_s)`, defined up to sign in `PSL(2, C)`.
pub fn trace_of_slope(s: &Slope, rep: &ParabolicRepresentation) -> Result<Complex64> {
    Ok(rep.trace_of_word(&riley_word(s)?.word))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    NonConjugate,
    NonPeripheral,
    NonTorsion,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCertificate {
    pub kind: CertificateKind,
    pub slopes: Vec<Slope>,
    /// Index into the representation list of the separating root.
    pub root: usize,
    #[serde(serialize_with = "ser_complex")]
    pub omega: Complex64,
    #[serde(serialize_with = "ser_traces")]
    pub traces: Vec<Complex64>,
    pub margin: f64,
}

fn ser_traces<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Certification {
    Certified(TraceCertificate),
    /// No representation separates by more than the guard band.
    Inconclusive {
        best_margin: f64,
    },
}

impl Certification {
    pub fn certificate(&self) -> Option<&TraceCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Inconclusive { .. } => None,
        }
    }
}

/// Separation of `{t, -t}` from `{t', -t'}`.
pub fn conjugacy_margin(t: Complex64, t2: Complex64) -> f64 {
    (t - t2).norm().min((t + t2).norm())
}

/// Distance of `t` from `{2, -2}`, the traces of nontrivial parabolics and the identity.
pub fn peripheral_margin(t: Complex64) -> f64 {
    (t - 2.0).norm().min((t + 2.0).norm())
}

/// Distance of `t` from `{±2cos(kπ/n) : 0 <= k <= n}`.
pub fn torsion_margin(t: Complex64, n: u64) -> f64 {
    (0..=n)
        .map(|k| {
            let c = 2.0 * (k as f64 * std::f64::consts::PI / n as f64).cos();
            (t - c).norm().min((t + c).norm())
        })
        .fold(f64::INFINITY, f64::min)
}

/// Tries every representation and certifies with the best one if its margin
/// exceeds `GUARD_FACTOR · tol`.
pub fn certify(
    kind: CertificateKind,
    slopes: &[Slope],
    reps: &[ParabolicRepresentation],
    n: u64,
    tol: f64,
) -> Result<Certification> {
    let expected = if kind == CertificateKind::NonConjugate { 2 } else { 1 };
    if slopes.len() != expected {
        return Err(Error::InvalidIndex(format!("{} slopes for {kind:?}", slopes.len())));
    }
    let words = slopes.iter().map(|s| riley_word(s).map(|u| u.word)).collect::<Result<Vec<_>>>()?;
    let mut best: Option<TraceCertificate> = None;
    let mut best_margin = 0.0f64;
    for (i, rep) in reps.iter().enumerate() {
        let traces: Vec<Complex64> = words.iter().map(|w| rep.trace_of_word(w)).collect();
        let margin = match kind {
            CertificateKind::NonConjugate => conjugacy_margin(traces[0], traces[1]),
            CertificateKind::NonPeripheral => peripheral_margin(traces[0]),
            CertificateKind::NonTorsion => torsion_margin(traces[0], n),
        };
        if margin > best_margin {
            best_margin = margin;
            best = Some(TraceCertificate { kind, slopes: slopes.to_vec(), root: i, omega: rep.omega, traces, margin });
        }
    }
    Ok(match best {
        Some(c) if c.margin > GUARD_FACTOR * tol => Certification::Certified(c),
        _ => Certification::Inconclusive { best_margin },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn trace_polynomials() {
        assert_eq!(trace_polynomial(&sl("1/2")).unwrap(), Polynomial::new(vec![2.into(), 0.into(), 1.into()]));
        assert_eq!(trace_polynomial(&sl("0")).unwrap(), Polynomial::new(vec![2.into(), 1.into()]));
        assert_eq!(trace_polynomial_of_word(&"a".parse().unwrap()), Polynomial::constant(2));
        assert_eq!(trace_polynomial(&sl("1/2")).unwrap().to_string(), "w^2 + 2");
        assert_eq!(trace_polynomial(&sl("1/3")).unwrap().degree(), 3);
    }

    #[test]
    fn polynomial_matches_numeric_product() {
        let omega = Complex64::new(0.3, -1.7);
        for s in ["1/3", "2/5", "3/10", "5/13"] {
            let w = riley_word(&sl(s)).unwrap().word;
            let m = represent_word(&w, omega);
            let t = trace_polynomial(&sl(s)).unwrap().eval(omega);
            assert!((m[0] + m[3] - t).norm() < 1e-9 * (1.0 + t.norm()));
        }
    }

    #[test]
    fn roots_for_one_half() {
        let reps = solve_representations(&sl("1/2"), 2, DEFAULT_TOL).unwrap();
        assert_eq!(reps.representations.len(), 2);
        let root = 2f64.sqrt();
        assert!((reps.representations[0].omega - Complex64::new(0.0, -root)).norm() < 1e-10);
        assert!((reps.representations[1].omega - Complex64::new(0.0, root)).norm() < 1e-10);
        let reps = solve_representations(&sl("1/2"), 3, DEFAULT_TOL).unwrap();
        assert!((reps.representations[1].omega - Complex64::new(0.0, 1.0)).norm() < 1e-10);
        let rep = &solve_representations(&sl("1/2"), 2, DEFAULT_TOL).unwrap().representations[1];
        let t0 = trace_of_slope(&sl("0"), rep).unwrap();
        assert!((t0 - Complex64::new(2.0, root)).norm() < 1e-12);
        assert!((trace_of_slope(&Slope::infinity(), rep).unwrap() - 2.0).norm() < 1e-15);
        assert!(trace_of_slope(&sl("1/2"), rep).unwrap().norm() < 1e-12);
    }

    #[test]
    fn residuals_small() {
        for r in crate::rational::proper_fractions(12) {
            for n in 2..=4 {
                let reps = solve_representations(&r, n, DEFAULT_TOL).unwrap();
                assert!(reps.failures.is_empty(), "{r} {n}");
                assert_eq!(reps.representations.len(), reps.polynomial.degree());
                for rep in &reps.representations {
                    assert!(rep.residual < 1e-10 && rep.power_residual < 1e-8);
                }
            }
        }
    }

    #[test]
    fn certificates() {
        let reps = solve_representations(&sl("1/2"), 2, DEFAULT_TOL).unwrap().representations;
        let c = certify(CertificateKind::NonPeripheral, &[sl("0")], &reps, 2, DEFAULT_TOL).unwrap();
        let cert = c.certificate().unwrap();
        assert!((cert.margin - 2f64.sqrt()).abs() < 1e-9);
        let same = certify(CertificateKind::NonConjugate, &[sl("1/3"), sl("1/3")], &reps, 2, DEFAULT_TOL).unwrap();
        assert!(same.certificate().is_none());
        let diff = certify(CertificateKind::NonConjugate, &[sl("0"), sl("1/3")], &reps, 2, DEFAULT_TOL).unwrap();
        assert!(diff.certificate().is_some());
        let torsion = certify(CertificateKind::NonTorsion, &[sl("1/2")], &reps, 2, DEFAULT_TOL).unwrap();
        assert!(torsion.certificate().is_none());
        assert!(certify(CertificateKind::NonConjugate, &[sl("0")], &reps, 2, DEFAULT_TOL).is_err());
    }

    #[test]
    fn homomorphism() {
        let omega = Complex64::new(-0.4, 1.1);
        let words = ["abAAb", "BaBab", "aaBBa", "bA"];
        for x in words {
            for y in words {
                let (w1, w2): (Word, Word) = (x.parse().unwrap(), y.parse().unwrap());
                let m = represent_word(&w1.mul(&w2), omega);
                let (a, b) = (represent_word(&w1, omega), represent_word(&w2, omega));
                let prod = [
                    a[0] * b[0] + a[1] * b[2],
                    a[0] * b[1] + a[1] * b[3],
                    a[2] * b[0] + a[3] * b[2],
                    a[2] * b[1] + a[3] * b[3],
                ];
                for i in 0..4 {
                    assert!((m[i] - prod[i]).norm() < 1e-9);
                }
            }
        }
    }
}
