//! Rewriting a boolean combination of Σ₁ sentences as an iterated difference
//! `ψ1 − (ψ2 − (… − ψm))` of Π₁ sentences sharing one block length.
//!
//! The outermost quantified subsentences become propositional atoms (a Σ₁
//! subsentence is the negation of a Π₁ atom), the skeleton's truth table is
//! put in Hausdorff normal form, and each monotone link is collapsed back
//! into a single universal sentence. Conjunctions reuse variables;
//! disjunctions take fresh copies, since `∀x φ ∨ ∀x' ψ ≡ ∀x x' (φ ∨ ψ)` on
//! nonempty words.

use std::fmt;

use super::classify::{block_class, classify_formula, nnf, QuantClass};
use super::{eval_sentence, Formula, LogicError, Sentence};
use crate::automata::Dfa;
use crate::hausdorff::{normal_form, BoolFunc};

/// Upper bound on distinct quantified subsentences; the truth table has
/// `2^n` rows.
pub const MAX_CHAIN_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceChain {
    /// `ψ1, …, ψm`, each `forall x1 … xd.` over a quantifier-free matrix
    /// (just the matrix when `block` is 0).
    pub terms: Vec<Sentence>,
    pub block: usize,
    /// Whether the chain agrees with the source sentence on the empty word.
    /// Padding a quantifier-free term with dummy universal variables makes it
    /// true at the empty word, so this can fail when the source mixes
    /// `len % q = r` atoms with quantified ones.
    pub exact_at_empty_word: bool,
}

impl DifferenceChain {
    /// Evaluates `ψ1 − (ψ2 − (…))` on a word.
    pub fn eval(&self, word: &[usize]) -> bool {
        self.terms
            .iter()
            .rev()
            .fold(false, |inner, t| eval_sentence(t, word) && !inner)
    }

    pub fn languages(&self) -> Result<Vec<Dfa>, LogicError> {
        self.terms.iter().map(super::compile_sentence).collect()
    }
}

impl fmt::Display for DifferenceChain {
    /// `(ψ1) - ((ψ2) - (ψ3))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.terms.len();
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" - ")?;
                if i + 1 < m {
                    f.write_str("(")?;
                }
            }
            write!(f, "({t})")?;
        }
        for _ in 2..m {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A universal sentence `∀x1 … x_block. matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct UniversalAtom {
    block: usize,
    matrix: Formula,
}

fn var(k: usize) -> String {
    format!("x{k}")
}

fn rename(f: &Formula, map: &impl Fn(&str) -> String) -> Formula {
    let r = |g: &Formula| Box::new(rename(g, map));
    match f {
        Formula::Letter(a, x) => Formula::Letter(a.clone(), map(x)),
        Formula::Less(x, y) => Formula::Less(map(x), map(y)),
        Formula::EqVar(x, y) => Formula::EqVar(map(x), map(y)),
        Formula::Divides(x, y) => Formula::Divides(map(x), map(y)),
        Formula::ModPos { var, r: rem, q } => Formula::ModPos {
            var: map(var),
            r: *rem,
            q: *q,
        },
        Formula::Not(g) => Formula::Not(r(g)),
        Formula::And(a, b) => Formula::And(r(a), r(b)),
        Formula::Or(a, b) => Formula::Or(r(a), r(b)),
        Formula::Implies(a, b) => Formula::Implies(r(a), r(b)),
        Formula::Exists(vs, b) => Formula::Exists(vs.iter().map(|v| map(v)).collect(), r(b)),
        Formula::Forall(vs, b) => Formula::Forall(vs.iter().map(|v| map(v)).collect(), r(b)),
        other => other.clone(),
    }
}

/// Pulls every universal quantifier of an NNF formula to the front,
/// renaming binders to `x1, x2, …` in the order they appear.
fn prenex_universal(f: &Formula) -> UniversalAtom {
    fn strip(f: &Formula, scope: &mut Vec<(String, String)>, count: &mut usize) -> Formula {
        let lookup = |scope: &Vec<(String, String)>, v: &str| {
            scope
                .iter()
                .rev()
                .find(|(old, _)| old == v)
                .map(|(_, new)| new.clone())
                .expect("closed formula")
        };
        match f {
            Formula::Forall(vs, body) => {
                let before = scope.len();
                for v in vs {
                    *count += 1;
                    scope.push((v.clone(), var(*count)));
                }
                let out = strip(body, scope, count);
                scope.truncate(before);
                out
            }
            Formula::And(l, r) => {
                let l = strip(l, scope, count);
                Formula::and(l, strip(r, scope, count))
            }
            Formula::Or(l, r) => {
                let l = strip(l, scope, count);
                Formula::or(l, strip(r, scope, count))
            }
            Formula::Not(g) => Formula::not(strip(g, scope, count)),
            Formula::Exists(..) | Formula::Implies(..) => {
                unreachable!("universal negation normal form")
            }
            atom => rename(atom, &|v| lookup(scope, v)),
        }
    }
    let mut count = 0;
    let matrix = strip(f, &mut Vec::new(), &mut count);
    UniversalAtom {
        block: count,
        matrix,
    }
}

/// A skeleton leaf: the atom it refers to and whether it is that atom's
/// negation.
#[derive(Debug, Clone, Copy)]
struct Leaf {
    atom: usize,
    negated: bool,
}

struct Skeleton {
    atoms: Vec<UniversalAtom>,
    leaves: Vec<Leaf>,
}

impl Skeleton {
    fn build(f: &Formula) -> Result<Self, LogicError> {
        let mut sk = Skeleton {
            atoms: Vec::new(),
            leaves: Vec::new(),
        };
        sk.collect(f)?;
        Ok(sk)
    }

    fn is_leaf(f: &Formula) -> bool {
        matches!(f, Formula::Exists(..) | Formula::Forall(..) | Formula::ModLen { .. })
    }

    fn collect(&mut self, f: &Formula) -> Result<(), LogicError> {
        match f {
            Formula::Not(g) => self.collect(g),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                self.collect(l)?;
                self.collect(r)
            }
            leaf if Self::is_leaf(leaf) => {
                let (universal, negated) = match block_class(leaf) {
                    QuantClass::Pi1 | QuantClass::QuantifierFree => (nnf(leaf), false),
                    QuantClass::Sigma1 => (nnf(&Formula::not(leaf.clone())), true),
                    class => return Err(LogicError::NotBooleanSigma1(class)),
                };
                let atom = prenex_universal(&universal);
                let index = match self.atoms.iter().position(|a| *a == atom) {
                    Some(i) => i,
                    None => {
                        self.atoms.push(atom);
                        self.atoms.len() - 1
                    }
                };
                self.leaves.push(Leaf {
                    atom: index,
                    negated,
                });
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Evaluates the skeleton given truth values of the atoms. Leaves are
    /// consumed in the order `collect` produced them.
    fn eval(&self, f: &Formula, atoms: &dyn Fn(usize) -> bool, next: &mut usize) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Not(g) => !self.eval(g, atoms, next),
            Formula::And(l, r) => {
                let a = self.eval(l, atoms, next);
                self.eval(r, atoms, next) && a
            }
            Formula::Or(l, r) => {
                let a = self.eval(l, atoms, next);
                self.eval(r, atoms, next) || a
            }
            Formula::Implies(l, r) => {
                let a = self.eval(l, atoms, next);
                self.eval(r, atoms, next) || !a
            }
            leaf if Self::is_leaf(leaf) => {
                let Leaf { atom, negated } = self.leaves[*next];
                *next += 1;
                atoms(atom) != negated
            }
            other => unreachable!("open atom {other} in a sentence skeleton"),
        }
    }
}

/// Collapses a monotone function of the atoms into one universal sentence:
/// a disjunction over minimal elements of conjunctions of atoms.
fn collapse(link: &BoolFunc, atoms: &[UniversalAtom]) -> UniversalAtom {
    let mut block = 0;
    let mut disjuncts = Vec::new();
    for m in link.minimal_elements() {
        let parts: Vec<&UniversalAtom> = m.ones().map(|j| &atoms[j]).collect();
        let width = parts.iter().map(|a| a.block).max().unwrap_or(0);
        let conj = Formula::conjunction(parts.iter().map(|a| a.matrix.clone()).collect());
        let offset = block;
        disjuncts.push(rename(&conj, &|v| {
            let k: usize = v[1..].parse().expect("canonical variable");
            var(k + offset)
        }));
        block += width;
    }
    UniversalAtom {
        block,
        matrix: Formula::disjunction(disjuncts),
    }
}

/// Rewrites a BΣ₁ sentence (including Σ₁, Π₁ and quantifier-free ones) as an
/// iterated difference of Π₁ sentences with a common block length.
pub fn to_difference_chain(sentence: &Sentence) -> Result<DifferenceChain, LogicError> {
    let f = sentence.formula();
    let class = classify_formula(f);
    if class == QuantClass::Other {
        return Err(LogicError::NotBooleanSigma1(class));
    }
    let skeleton = Skeleton::build(f)?;
    let n = skeleton.atoms.len();
    if n > MAX_CHAIN_ATOMS {
        return Err(LogicError::TooManyAtoms {
            count: n,
            limit: MAX_CHAIN_ATOMS,
        });
    }
    let table = BoolFunc::from_fn(n, |v| skeleton.eval(f, &|j| v.bit(j), &mut 0))?;
    let links = normal_form(&table).links().to_vec();
    let mut collapsed: Vec<UniversalAtom> = links.iter().map(|l| collapse(l, &skeleton.atoms)).collect();
    if table.is_empty() {
        // The empty function: T − T with T trivially true.
        let top = UniversalAtom {
            block: 0,
            matrix: Formula::True,
        };
        collapsed = vec![top.clone(), top];
    }
    let block = collapsed.iter().map(|a| a.block).max().unwrap_or(0);
    let terms = collapsed
        .into_iter()
        .map(|a| {
            let f = if block == 0 {
                a.matrix
            } else {
                Formula::forall((1..=block).map(var), a.matrix)
            };
            Sentence::new(sentence.alphabet().clone(), f)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut chain = DifferenceChain {
        terms,
        block,
        exact_at_empty_word: true,
    };
    chain.exact_at_empty_word = chain.eval(&[]) == eval_sentence(sentence, &[]);
    Ok(chain)
}
