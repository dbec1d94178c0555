//! First-order sentences over words with a fixed catalogue of numerical
//! atoms.
//!
//! Positions are 1-based. Every atom except `div(x,y)` denotes a regular
//! numerical predicate and can be compiled to an automaton; `div` is handled
//! by the brute-force evaluator only.

mod chain;
mod classify;
mod compile;
mod eval;
mod parse;

#[cfg(test)]
pub(crate) mod testgen;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::automata::{Alphabet, AutomataError};
use crate::hausdorff::HausdorffError;
use crate::structures::StructureError;

pub use chain::{to_difference_chain, DifferenceChain, MAX_CHAIN_ATOMS};
pub use classify::{classify, nnf, QuantClass};
pub use compile::{compile, compile_sentence};
pub use eval::{eval_sentence, evaluate};
pub use parse::{parse_formula, parse_sentence, parse_sentence_file};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("{line}:{col}: unknown letter `{letter}`")]
    UnknownLetter {
        line: usize,
        col: usize,
        letter: String,
    },

    #[error("{line}:{col}: malformed modulus: {message}")]
    MalformedModulus {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("invalid formula: {0}")]
    Invalid(String),

    #[error("non-regular atom {0}")]
    NonRegularAtom(String),

    #[error("free variables {found:?} do not match the structure's variables {expected:?}")]
    VariableMismatch {
        expected: Vec<String>,
        found: Vec<String>,
    },

    #[error("sentence is not a boolean combination of Σ₁ sentences (classified {0})")]
    NotBooleanSigma1(QuantClass),

    #[error("{count} distinct quantified subsentences exceed the limit of {limit}")]
    TooManyAtoms { count: usize, limit: usize },

    #[error(transparent)]
    Structure(#[from] StructureError),

    #[error(transparent)]
    Hausdorff(#[from] HausdorffError),
}

impl From<AutomataError> for LogicError {
    fn from(e: AutomataError) -> Self {
        LogicError::Structure(e.into())
    }
}

impl LogicError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            LogicError::Structure(StructureError::Automata(AutomataError::StateLimit { .. }))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `a(x)`: position `x` carries letter `a`.
    Letter(String, String),
    Less(String, String),
    EqVar(String, String),
    /// `x % q = r`.
    ModPos { var: String, r: u32, q: u32 },
    /// `len % q = r`.
    ModLen { r: u32, q: u32 },
    /// `div(x,y)`: position `x` divides position `y`. Evaluator only.
    Divides(String, String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn exists<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        Formula::Exists(vars.into_iter().map(Into::into).collect(), Box::new(body))
    }

    pub fn forall<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        Formula::Forall(vars.into_iter().map(Into::into).collect(), Box::new(body))
    }

    pub fn letter(a: &str, x: &str) -> Formula {
        Formula::Letter(a.into(), x.into())
    }

    /// Conjunction of `parts`; `true` when empty.
    pub fn conjunction(parts: Vec<Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Disjunction of `parts`; `false` when empty.
    pub fn disjunction(parts: Vec<Formula>) -> Formula {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut add = |v: &String, bound: &Vec<&str>| {
            if !bound.contains(&v.as_str()) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Letter(_, x) | Formula::ModPos { var: x, .. } => add(x, bound),
            Formula::Less(x, y) | Formula::EqVar(x, y) | Formula::Divides(x, y) => {
                add(x, bound);
                add(y, bound);
            }
            Formula::ModLen { .. } | Formula::True | Formula::False => {}
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                let before = bound.len();
                bound.extend(vs.iter().map(String::as_str));
                body.collect_free(bound, out);
                bound.truncate(before);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Exists(..) | Formula::Forall(..) => true,
            Formula::Not(f) => f.has_quantifier(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.has_quantifier() || r.has_quantifier()
            }
            _ => false,
        }
    }

    /// The first evaluator-only atom in left-to-right order.
    pub fn non_regular_atom(&self) -> Option<&Formula> {
        match self {
            Formula::Divides(..) => Some(self),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.non_regular_atom(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.non_regular_atom().or_else(|| r.non_regular_atom())
            }
            _ => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.non_regular_atom().is_none()
    }

    /// Letters named by `a(x)` atoms.
    pub fn letters(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Letter(a, _) = f {
                out.insert(a.as_str());
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }

    /// Checks moduli, binder lists and that no binder rebinds a variable
    /// already bound by an enclosing quantifier.
    pub fn validate(&self) -> Result<(), LogicError> {
        self.validate_in(&mut Vec::new())
    }

    fn validate_in<'a>(&'a self, bound: &mut Vec<&'a str>) -> Result<(), LogicError> {
        match self {
            Formula::ModPos { r, q, .. } | Formula::ModLen { r, q } if *q == 0 || r >= q => Err(
                LogicError::Invalid(format!("modulus needs q >= 1 and 0 <= r < q in `{self}`")),
            ),
            Formula::Not(f) => f.validate_in(bound),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.validate_in(bound)?;
                r.validate_in(bound)
            }
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                if vs.is_empty() {
                    return Err(LogicError::Invalid("quantifier without variables".into()));
                }
                let before = bound.len();
                for v in vs {
                    if bound.contains(&v.as_str()) {
                        return Err(LogicError::Invalid(format!("variable `{v}` is bound twice")));
                    }
                    bound.push(v);
                }
                let result = body.validate_in(bound);
                bound.truncate(before);
                result
            }
            _ => Ok(()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(..) => 3,
            Formula::Exists(..) | Formula::Forall(..) => 4,
            _ => 5,
        }
    }

    /// Writes `self` as an operand that must bind at least as tightly as
    /// `min`. Quantifiers extend as far right as possible, so as operands
    /// they are always parenthesized.
    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.precedence();
        if p == 4 || p < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Letter(a, x) => write!(f, "{a}({x})"),
            Formula::Less(x, y) => write!(f, "{x} < {y}"),
            Formula::EqVar(x, y) => write!(f, "{x} = {y}"),
            Formula::ModPos { var, r, q } => write!(f, "{var} % {q} = {r}"),
            Formula::ModLen { r, q } => write!(f, "len % {q} = {r}"),
            Formula::Divides(x, y) => write!(f, "div({x},{y})"),
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Not(g) => {
                f.write_str("not ")?;
                g.fmt_operand(f, 3)
            }
            Formula::And(l, r) => {
                l.fmt_operand(f, 2)?;
                f.write_str(" and ")?;
                r.fmt_operand(f, 3)
            }
            Formula::Or(l, r) => {
                l.fmt_operand(f, 1)?;
                f.write_str(" or ")?;
                r.fmt_operand(f, 2)
            }
            Formula::Implies(l, r) => {
                l.fmt_operand(f, 1)?;
                f.write_str(" => ")?;
                r.fmt_operand(f, 0)
            }
            Formula::Exists(vs, body) => write!(f, "exists {}. {body}", vs.join(" ")),
            Formula::Forall(vs, body) => write!(f, "forall {}. {body}", vs.join(" ")),
        }
    }
}

/// A closed formula together with the alphabet it is read over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    alphabet: Arc<Alphabet>,
    formula: Formula,
}

impl Sentence {
    pub fn new(alphabet: Arc<Alphabet>, formula: Formula) -> Result<Self, LogicError> {
        formula.validate()?;
        let free = formula.free_vars();
        if !free.is_empty() {
            return Err(LogicError::Invalid(format!(
                "free variables {}",
                free.into_iter().collect::<Vec<_>>().join(", ")
            )));
        }
        if let Some(a) = formula.letters().into_iter().find(|a| alphabet.index_of(a).is_none()) {
            return Err(LogicError::Invalid(format!("letter `{a}` is not in the alphabet")));
        }
        Ok(Self { alphabet, formula })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    /// The sentence file format: an `alphabet:` line followed by the formula.
    pub fn to_file_string(&self) -> String {
        format!("alphabet: {}\n{}\n", self.alphabet, self.formula)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.formula.fmt(f)
    }
}
