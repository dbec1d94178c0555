//! Deciding whether a regular language is a `k`-term iterated difference of
//! Π₁ sentences with `d`-variable blocks.
//!
//! The derived chain starts at `D1 = L` and alternates `Ci = ∀x ⌈Di⌉_d` with
//! `D(i+1) = Ci − Di`. Since `Di ⊆ Ci`, each step satisfies
//! `Di = Ci − D(i+1)`, so `L = C1 − (C2 − (… − (Ck − D(k+1))))`; the
//! decomposition exists exactly when `D(k+1)` is empty.

use std::fmt;

use serde::Serialize;

use crate::automata::{AutomataError, Decision, Dfa, Word};
use crate::ceiling::{ceiling_with_predicates, Ceiling, CeilingError};
use crate::structures::{forall_close, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("block size and term count must be at least 1")]
    InvalidParameters,

    #[error("computing ceiling {link}: {source}")]
    AtLink {
        link: usize,
        #[source]
        source: CeilingError,
    },

    #[error(transparent)]
    Automata(#[from] AutomataError),
}

impl DecomposeError {
    pub fn is_resource_limit(&self) -> bool {
        match self {
            DecomposeError::AtLink { source, .. } => source.is_resource_limit(),
            DecomposeError::Automata(e) => matches!(e, AutomataError::StateLimit { .. }),
            DecomposeError::InvalidParameters => false,
        }
    }
}

impl From<StructureError> for DecomposeError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Automata(a) => DecomposeError::Automata(a),
            other => DecomposeError::AtLink {
                link: 0,
                source: other.into(),
            },
        }
    }
}

/// `D1 … D(k+1)` and `C1 … Ck` for a fixed block size. The chain can be
/// extended in place.
#[derive(Debug, Clone)]
pub struct DerivedChain {
    d: usize,
    languages: Vec<Dfa>,
    ceilings: Vec<Dfa>,
    parts: Vec<Ceiling>,
}

impl DerivedChain {
    /// The chain with no ceilings yet: just `D1 = L`.
    pub fn new(language: &Dfa, d: usize) -> Result<Self, DecomposeError> {
        if d == 0 {
            return Err(DecomposeError::InvalidParameters);
        }
        Ok(Self {
            d,
            languages: vec![language.minimize()],
            ceilings: Vec::new(),
            parts: Vec::new(),
        })
    }

    /// Computes ceilings until there are at least `k`.
    pub fn extend_to(&mut self, k: usize) -> Result<(), DecomposeError> {
        while self.ceilings.len() < k {
            let link = self.ceilings.len() + 1;
            let at_link = |source: CeilingError| DecomposeError::AtLink { link, source };
            let current = self.languages.last().expect("D1 is always present");
            let part = ceiling_with_predicates(current, self.d).map_err(at_link)?;
            let ceiling = forall_close(&part.tagged, &part.formula)
                .map_err(|e| at_link(e.into()))?;
            let next = ceiling.diff(current).map_err(|e| at_link(e.into()))?;
            self.ceilings.push(ceiling);
            self.parts.push(part);
            self.languages.push(next);
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of ceilings computed.
    pub fn k(&self) -> usize {
        self.ceilings.len()
    }

    /// `D1, …, D(k+1)`.
    pub fn languages(&self) -> &[Dfa] {
        &self.languages
    }

    /// `C1, …, Ck`.
    pub fn ceilings(&self) -> &[Dfa] {
        &self.ceilings
    }

    /// The ceiling predicates `⌈Di⌉_d` with their `R` components.
    pub fn parts(&self) -> &[Ceiling] {
        &self.parts
    }

    /// `D(k+1)` for the current `k`.
    pub fn residual(&self) -> &Dfa {
        self.languages.last().expect("D1 is always present")
    }

    /// The report for the first `k` ceilings. The chain must have at least
    /// `k` of them.
    pub fn report(&self, k: usize) -> DecompositionReport {
        assert!(k >= 1 && k <= self.k(), "chain has {} ceilings, asked for {k}", self.k());
        let residual = &self.languages[k];
        let success = residual.is_empty();
        let epsilon_note = is_only_empty_word(residual);
        let witness = residual.shortest_word();
        DecompositionReport {
            verdict: if success {
                Verdict::Success
            } else {
                Verdict::Failure
            },
            d: self.d,
            k,
            chain: self.ceilings[..k].to_vec(),
            residual: (!success).then(|| residual.clone()),
            witness,
            epsilon_note,
            skeleton: self.parts[..k].iter().map(TermSkeleton::from_ceiling).collect(),
        }
    }
}

fn is_only_empty_word(l: &Dfa) -> bool {
    let dead = l.dead_states();
    let q = l.initial();
    l.is_accepting(q) && (0..l.alphabet().len()).all(|s| dead[l.step(q, s)])
}

pub fn derived_chain(language: &Dfa, d: usize, k: usize) -> Result<DerivedChain, DecomposeError> {
    if k == 0 {
        return Err(DecomposeError::InvalidParameters);
    }
    let mut chain = DerivedChain::new(language, d)?;
    chain.extend_to(k)?;
    Ok(chain)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Success,
    Failure,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Success => "success",
            Verdict::Failure => "failure",
        })
    }
}

/// A numerical predicate `R_a` attached to one disjunct of a ceiling.
#[derive(Debug, Clone)]
pub struct NamedPredicate {
    pub name: String,
    pub letters: Vec<String>,
    pub automaton: Dfa,
}

/// `∀x ⋁_a (a(x) ∧ R_a(x))` for one term, keeping only nonempty `R_a`.
#[derive(Debug, Clone)]
pub struct TermSkeleton {
    pub template: String,
    pub predicates: Vec<NamedPredicate>,
}

impl TermSkeleton {
    fn from_ceiling(c: &Ceiling) -> Self {
        let base = c.tagged.base();
        let vars = c.tagged.vars().names();
        let mut disjuncts = Vec::new();
        let mut predicates = Vec::new();
        for (tuple, r) in &c.predicates {
            if r.is_empty() {
                continue;
            }
            let letters: Vec<String> = tuple.0.iter().map(|&a| base.name(a).to_string()).collect();
            let name = format!("R_{}", letters.join("_"));
            let mut conj: Vec<String> =
                letters.iter().zip(vars).map(|(a, x)| format!("{a}({x})")).collect();
            conj.push(format!("{name}({})", vars.join(",")));
            disjuncts.push(format!("({})", conj.join(" and ")));
            predicates.push(NamedPredicate {
                name,
                letters,
                automaton: r.clone(),
            });
        }
        let matrix = if disjuncts.is_empty() {
            "false".to_string()
        } else {
            disjuncts.join(" or ")
        };
        TermSkeleton {
            template: format!("forall {}. {matrix}", vars.join(" ")),
            predicates,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub verdict: Verdict,
    pub d: usize,
    pub k: usize,
    /// `C1, …, Ck`; on success `L = C1 − (C2 − (… − Ck))`.
    pub chain: Vec<Dfa>,
    /// `D(k+1)` on failure.
    pub residual: Option<Dfa>,
    /// Shortlex-least word of the residual.
    pub witness: Option<Word>,
    /// The verdict would flip if the empty word were disregarded: the
    /// residual is exactly `{ε}`.
    pub epsilon_note: bool,
    pub skeleton: Vec<TermSkeleton>,
}

#[derive(Serialize)]
struct PredicateJson<'a> {
    name: &'a str,
    letters: &'a [String],
    automaton: String,
}

#[derive(Serialize)]
struct SkeletonJson<'a> {
    template: &'a str,
    predicates: Vec<PredicateJson<'a>>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    verdict: Verdict,
    d: usize,
    k: usize,
    chain: Vec<String>,
    residual: Option<String>,
    witness: Option<String>,
    epsilon_note: bool,
    skeleton: Vec<SkeletonJson<'a>>,
}

impl DecompositionReport {
    pub fn is_success(&self) -> bool {
        self.verdict == Verdict::Success
    }

    /// The witness word rendered over the input alphabet.
    pub fn witness_text(&self) -> Option<String> {
        let alphabet = self.chain.first()?.alphabet();
        self.witness.as_ref().map(|w| alphabet.render_word(w))
    }

    /// JSON with automata embedded in the text format. The chain is listed
    /// only on success.
    pub fn to_json(&self) -> serde_json::Value {
        let report = ReportJson {
            verdict: self.verdict,
            d: self.d,
            k: self.k,
            chain: if self.is_success() {
                self.chain.iter().map(Dfa::to_string).collect()
            } else {
                Vec::new()
            },
            residual: self.residual.as_ref().map(Dfa::to_string),
            witness: self.witness_text(),
            epsilon_note: self.epsilon_note,
            skeleton: self
                .skeleton
                .iter()
                .map(|s| SkeletonJson {
                    template: &s.template,
                    predicates: s
                        .predicates
                        .iter()
                        .map(|p| PredicateJson {
                            name: &p.name,
                            letters: &p.letters,
                            automaton: p.automaton.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(report).expect("report serializes")
    }
}

pub fn decompose(language: &Dfa, d: usize, k: usize) -> Result<DecompositionReport, DecomposeError> {
    Ok(derived_chain(language, d, k)?.report(k))
}

/// Whether `L` equals its Π₁ ceiling language for block size `d`, that is,
/// whether `L` is definable by a universal sentence with `d` variables. The
/// witness lies in the ceiling language but not in `L`.
pub fn pi1_exact_test(language: &Dfa, d: usize) -> Result<Decision, DecomposeError> {
    let chain = derived_chain(language, d, 1)?;
    Ok(chain.residual().decide_empty())
}

/// Whether `L` is definable by an existential sentence with `d` variables,
/// tested on the complement. The witness lies outside the complement's
/// ceiling language but in `L`.
pub fn sigma1_test(language: &Dfa, d: usize) -> Result<Decision, DecomposeError> {
    pi1_exact_test(&language.complement(), d)
}

/// The language `C1 − (C2 − (… − Cm))`; empty for an empty chain.
pub fn chain_language(chain: &[Dfa]) -> Result<Option<Dfa>, AutomataError> {
    let Some(last) = chain.last() else {
        return Ok(None);
    };
    let mut acc = last.clone();
    for c in chain.iter().rev().skip(1) {
        acc = c.diff(&acc)?;
    }
    Ok(Some(acc))
}

/// Whether `C1 − (C2 − (…))` equals `L`.
pub fn verify(chain: &[Dfa], language: &Dfa) -> Result<bool, AutomataError> {
    match chain_language(chain)? {
        Some(l) => l.equivalent(language),
        None => Ok(language.is_empty()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellOutcome {
    Success,
    Failure {
        residual_states: usize,
        witness: Word,
    },
    ResourceLimit(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCell {
    pub d: usize,
    pub k: usize,
    pub outcome: CellOutcome,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// The first `(d, k)` that succeeds, scanning `k` first and then `d`.
    pub found: Option<(usize, usize)>,
    /// Every cell examined, in scan order.
    pub cells: Vec<SearchCell>,
    /// The full report for `found`.
    pub report: Option<DecompositionReport>,
}

impl SearchReport {
    pub fn to_json(&self, alphabet: &crate::automata::Alphabet) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|c| {
                let mut v = serde_json::json!({ "d": c.d, "k": c.k });
                let (outcome, extra) = match &c.outcome {
                    CellOutcome::Success => ("success", None),
                    CellOutcome::Failure {
                        residual_states,
                        witness,
                    } => (
                        "failure",
                        Some(serde_json::json!({
                            "residual_states": residual_states,
                            "witness": alphabet.render_word(witness),
                        })),
                    ),
                    CellOutcome::ResourceLimit(msg) => {
                        ("resource-limit", Some(serde_json::json!({ "error": msg })))
                    }
                };
                v["outcome"] = outcome.into();
                if let Some(serde_json::Value::Object(extra)) = extra {
                    v.as_object_mut().expect("object").extend(extra);
                }
                v
            })
            .collect();
        serde_json::json!({
            "found": self.found.map(|(d, k)| serde_json::json!({ "d": d, "k": k })),
            "cells": cells,
            "report": self.report.as_ref().map(DecompositionReport::to_json),
        })
    }
}

/// Scans `(k, d)` in lexicographic order up to the bounds and stops at the
/// first success. Derived chains are cached per `d`; a resource limit is
/// recorded for the cell and the scan continues.
pub fn search(language: &Dfa, d_max: usize, k_max: usize) -> Result<SearchReport, DecomposeError> {
    if d_max == 0 || k_max == 0 {
        return Err(DecomposeError::InvalidParameters);
    }
    let mut chains: Vec<Result<DerivedChain, DecomposeError>> = (1..=d_max)
        .map(|d| DerivedChain::new(language, d))
        .collect();
    let mut cells = Vec::new();
    for k in 1..=k_max {
        for d in 1..=d_max {
            let slot = &mut chains[d - 1];
            if let Ok(chain) = slot {
                if let Err(e) = chain.extend_to(k) {
                    *slot = Err(e);
                }
            }
            let chain = match slot {
                Ok(chain) => chain,
                Err(e) => {
                    cells.push(SearchCell {
                        d,
                        k,
                        outcome: CellOutcome::ResourceLimit(e.to_string()),
                    });
                    continue;
                }
            };
            let report = chain.report(k);
            if report.is_success() {
                cells.push(SearchCell {
                    d,
                    k,
                    outcome: CellOutcome::Success,
                });
                return Ok(SearchReport {
                    found: Some((d, k)),
                    cells,
                    report: Some(report),
                });
            }
            cells.push(SearchCell {
                d,
                k,
                outcome: CellOutcome::Failure {
                    residual_states: chain.languages()[k].num_states(),
                    witness: report.witness.clone().unwrap_or_default(),
                },
            });
        }
    }
    Ok(SearchReport {
        found: None,
        cells,
        report: None,
    })
}
