//! Decisions about simple loops `α_s` in `H(r;n)`: triviality, conjugacy,
//! peripherality and torsion, with supporting evidence.

use std::sync::OnceLock;

use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::farey::{normalize_with_budget, HeckoidContext, Normalized, WitnessStep, DEFAULT_MAX_STEPS};
use crate::kleinian::{
    certify, solve_representations, CertificateKind, Certification, ParabolicRepresentation, DEFAULT_TOL,
};
use crate::presentation::{relator, riley_word};
use crate::rational::Slope;
use crate::smallcancel::{bounded_conjugacy_search, dehn_reduce, symmetrize, ConjugacySearch, SymmetrizedRelatorSet};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    /// `s` is in the orbit of `∞`; `α_s` is null-homotopic.
    Trivial,
    /// `s` is in the orbit of `r`; `α_s` is a nontrivial torsion element.
    TorsionCore,
    /// `s` is equivalent to a point of `I(r;n)`.
    Regular,
}

/// Whether the answer is covered by the proof for `r ≡ ±1/p (mod 1)` or
/// relies on the general statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProvenScope {
    ThisPaper,
    Sequel,
}

pub fn proven_scope(r: &Slope) -> ProvenScope {
    let (q, p) = (r.numer(), r.denom());
    if q.is_one() || (p - q).is_one() {
        ProvenScope::ThisPaper
    } else {
        ProvenScope::Sequel
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DecideOptions {
    pub tol: f64,
    pub max_steps: u64,
    /// Largest denominator of `s` for which `u_s` is run through Dehn's algorithm.
    pub dehn_max_denominator: i64,
    pub certificates: bool,
    pub search_max_conjugator: usize,
    pub search_budget: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            tol: DEFAULT_TOL,
            max_steps: DEFAULT_MAX_STEPS,
            dehn_max_denominator: 200,
            certificates: true,
            search_max_conjugator: 2,
            search_budget: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnCheck {
    pub trivial: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopClass {
    pub input: Slope,
    pub normalized: Slope,
    pub kind: LoopKind,
    pub witness: Vec<WitnessStep>,
    pub steps: u64,
    pub proven_scope: ProvenScope,
    pub dehn_check: Option<DehnCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyVerdict {
    pub s: Slope,
    pub s_prime: Slope,
    pub conjugate: bool,
    pub normalized: [Slope; 2],
    pub witnesses: [Vec<WitnessStep>; 2],
    pub proven_scope: ProvenScope,
    pub certificate: Option<Certification>,
    pub search: Option<ConjugacySearch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyVerdict {
    pub s: Slope,
    pub kind: LoopKind,
    pub normalized: Slope,
    /// `None` when the property does not apply (the trivial loop for peripherality).
    pub holds: Option<bool>,
    pub proven_scope: ProvenScope,
    pub certificate: Option<Certification>,
}

/// Decision procedures for one context, caching the relator set and the
/// parabolic representations.
pub struct Decider {
    ctx: HeckoidContext,
    options: DecideOptions,
    relators: OnceLock<SymmetrizedRelatorSet>,
    reps: OnceLock<Vec<ParabolicRepresentation>>,
}

impl Decider {
    pub fn new(ctx: HeckoidContext, options: DecideOptions) -> Decider {
        Decider { ctx, options, relators: OnceLock::new(), reps: OnceLock::new() }
    }

    pub fn context(&self) -> &HeckoidContext {
        &self.ctx
    }

    pub fn relators(&self) -> &SymmetrizedRelatorSet {
        self.relators
            .get_or_init(|| symmetrize(&relator(&self.ctx.r, self.ctx.n as usize).expect("context slope is in (0,1)")))
    }

    pub fn representations(&self) -> Result<&[ParabolicRepresentation]> {
        if let Some(r) = self.reps.get() {
            return Ok(r);
        }
        let reps = solve_representations(&self.ctx.r, self.ctx.n, self.options.tol)?.representations;
        Ok(self.reps.get_or_init(|| reps))
    }

    fn normalize(&self, s: &Slope) -> Result<Normalized> {
        normalize_with_budget(s, &self.ctx, self.options.max_steps)
    }

    fn kind_of(&self, s0: &Slope) -> LoopKind {
        if s0.is_infinite() {
            LoopKind::Trivial
        } else if *s0 == self.ctx.r {
            LoopKind::TorsionCore
        } else {
            LoopKind::Regular
        }
    }

    pub fn classify(&self, s: &Slope) -> Result<LoopClass> {
        let norm = self.normalize(s)?;
        let kind = self.kind_of(&norm.s0);
        let dehn_check = if self.ctx.r.numer().is_one()
            && s.in_closed_unit()
            && s.denom() <= &self.options.dehn_max_denominator.into()
        {
            let trivial = dehn_reduce(&riley_word(s)?.word, self.relators()).trivial;
            Some(DehnCheck { trivial, agrees: trivial == (kind == LoopKind::Trivial) })
        } else {
            None
        };
        Ok(LoopClass {
            input: s.clone(),
            normalized: norm.s0,
            kind,
            witness: norm.witness,
            steps: norm.steps,
            proven_scope: proven_scope(&self.ctx.r),
            dehn_check,
        })
    }

    fn certify(&self, kind: CertificateKind, slopes: &[Slope]) -> Result<Option<Certification>> {
        if !self.options.certificates {
            return Ok(None);
        }
        let reps = self.representations()?;
        certify(kind, slopes, reps, self.ctx.n, self.options.tol).map(Some)
    }

    pub fn conjugate(&self, s: &Slope, s_prime: &Slope) -> Result<ConjugacyVerdict> {
        let (a, b) = (self.normalize(s)?, self.normalize(s_prime)?);
        let conjugate = a.s0 == b.s0;
        let mut certificate = None;
        let mut search = None;
        if conjugate {
            if self.options.certificates && s.in_closed_unit() && s_prime.in_closed_unit() {
                let (u, v) = (riley_word(s)?.word, riley_word(s_prime)?.word);
                let run = |v: &Word| {
                    bounded_conjugacy_search(
                        &u,
                        v,
                        self.relators(),
                        self.options.search_max_conjugator,
                        self.options.search_budget,
                    )
                };
                search = match run(&v) {
                    Ok(ConjugacySearch::NotFound { .. }) => run(&v.inverse()).ok(),
                    other => other.ok(),
                };
            }
        } else {
            certificate = self.certify(CertificateKind::NonConjugate, &[a.s0.clone(), b.s0.clone()])?;
        }
        Ok(ConjugacyVerdict {
            s: s.clone(),
            s_prime: s_prime.clone(),
            conjugate,
            normalized: [a.s0, b.s0],
            witnesses: [a.witness, b.witness],
            proven_scope: proven_scope(&self.ctx.r),
            certificate,
            search,
        })
    }

    pub fn is_peripheral(&self, s: &Slope) -> Result<PropertyVerdict> {
        let norm = self.normalize(s)?;
        let kind = self.kind_of(&norm.s0);
        let (holds, certificate) = match kind {
            LoopKind::Trivial => (None, None),
            _ => (Some(false), self.certify(CertificateKind::NonPeripheral, std::slice::from_ref(&norm.s0))?),
        };
        Ok(PropertyVerdict {
            s: s.clone(),
            kind,
            normalized: norm.s0,
            holds,
            proven_scope: proven_scope(&self.ctx.r),
            certificate,
        })
    }

    pub fn is_torsion(&self, s: &Slope) -> Result<PropertyVerdict> {
        let norm = self.normalize(s)?;
        let kind = self.kind_of(&norm.s0);
        let certificate = match kind {
            LoopKind::Regular => self.certify(CertificateKind::NonTorsion, std::slice::from_ref(&norm.s0))?,
            _ => None,
        };
        Ok(PropertyVerdict {
            s: s.clone(),
            kind,
            normalized: norm.s0,
            holds: Some(kind == LoopKind::TorsionCore),
            proven_scope: proven_scope(&self.ctx.r),
            certificate,
        })
    }
}

pub fn classify(s: &Slope, ctx: &HeckoidContext) -> Result<LoopClass> {
    Decider::new(ctx.clone(), DecideOptions::default()).classify(s)
}

pub fn conjugate(s: &Slope, s_prime: &Slope, ctx: &HeckoidContext) -> Result<ConjugacyVerdict> {
    Decider::new(ctx.clone(), DecideOptions::default()).conjugate(s, s_prime)
}

pub fn is_peripheral(s: &Slope, ctx: &HeckoidContext) -> Result<PropertyVerdict> {
    Decider::new(ctx.clone(), DecideOptions::default()).is_peripheral(s)
}

pub fn is_torsion(s: &Slope, ctx: &HeckoidContext) -> Result<PropertyVerdict> {
    Decider::new(ctx.clone(), DecideOptions::default()).is_torsion(s)
}
