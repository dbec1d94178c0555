//! Syntactic quantifier classes.
//!
//! The rewrite system is fixed: negation normal form, then inspection of the
//! quantifier kinds that remain. A sentence whose negation normal form uses
//! only `exists` is Σ₁ (renaming apart and pulling the quantifiers out gives a
//! single block); only `forall` gives Π₁. A sentence is BΣ₁ when its boolean
//! skeleton, the part above the outermost quantifiers, has only leaves that
//! are themselves Σ₁ or Π₁. Anything else is reported as `Other`, even when
//! it happens to be equivalent to a BΣ₁ sentence.

use std::fmt;

use super::{Formula, Sentence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantClass {
    QuantifierFree,
    Sigma1,
    Pi1,
    BSigma1,
    Other,
}

impl fmt::Display for QuantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuantClass::QuantifierFree => "quantifier-free",
            QuantClass::Sigma1 => "Σ₁",
            QuantClass::Pi1 => "Π₁",
            QuantClass::BSigma1 => "BΣ₁",
            QuantClass::Other => "other",
        })
    }
}

/// Negation normal form: `=>` is eliminated and `not` sits only on atoms.
pub fn nnf(f: &Formula) -> Formula {
    push(f, false)
}

fn push(f: &Formula, negate: bool) -> Formula {
    let wrap = |g: Formula| if negate { Formula::not(g) } else { g };
    match f {
        Formula::True => if negate { Formula::False } else { Formula::True },
        Formula::False => if negate { Formula::True } else { Formula::False },
        Formula::Not(g) => push(g, !negate),
        Formula::And(l, r) if negate => Formula::or(push(l, true), push(r, true)),
        Formula::And(l, r) => Formula::and(push(l, false), push(r, false)),
        Formula::Or(l, r) if negate => Formula::and(push(l, true), push(r, true)),
        Formula::Or(l, r) => Formula::or(push(l, false), push(r, false)),
        Formula::Implies(l, r) if negate => Formula::and(push(l, false), push(r, true)),
        Formula::Implies(l, r) => Formula::or(push(l, true), push(r, false)),
        Formula::Exists(vs, body) if negate => Formula::Forall(vs.clone(), Box::new(push(body, true))),
        Formula::Forall(vs, body) if negate => Formula::Exists(vs.clone(), Box::new(push(body, true))),
        Formula::Exists(vs, body) => Formula::Exists(vs.clone(), Box::new(push(body, false))),
        Formula::Forall(vs, body) => Formula::Forall(vs.clone(), Box::new(push(body, false))),
        atom => wrap(atom.clone()),
    }
}

/// Which quantifier kinds occur: `(exists, forall)`.
fn kinds(f: &Formula) -> (bool, bool) {
    match f {
        Formula::Exists(_, b) => (true, kinds(b).1),
        Formula::Forall(_, b) => (kinds(b).0, true),
        Formula::Not(g) => kinds(g),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            let (a, b) = (kinds(l), kinds(r));
            (a.0 || b.0, a.1 || b.1)
        }
        _ => (false, false),
    }
}

/// Class of a single formula from the quantifier kinds in its NNF.
pub(crate) fn block_class(f: &Formula) -> QuantClass {
    match kinds(&nnf(f)) {
        (false, false) => QuantClass::QuantifierFree,
        (true, false) => QuantClass::Sigma1,
        (false, true) => QuantClass::Pi1,
        (true, true) => QuantClass::Other,
    }
}

/// Calls `leaf` on every maximal subformula below the boolean skeleton,
/// that is every quantified subformula not inside another one.
pub(crate) fn skeleton_leaves<'a>(f: &'a Formula, leaf: &mut impl FnMut(&'a Formula)) {
    match f {
        Formula::Not(g) => skeleton_leaves(g, leaf),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            skeleton_leaves(l, leaf);
            skeleton_leaves(r, leaf);
        }
        Formula::Exists(..) | Formula::Forall(..) => leaf(f),
        _ => {}
    }
}

pub fn classify(sentence: &Sentence) -> QuantClass {
    classify_formula(sentence.formula())
}

pub(crate) fn classify_formula(f: &Formula) -> QuantClass {
    let whole = block_class(f);
    if whole != QuantClass::Other {
        return whole;
    }
    let mut single_block = true;
    skeleton_leaves(f, &mut |leaf| single_block &= block_class(leaf) != QuantClass::Other);
    if single_block {
        QuantClass::BSigma1
    } else {
        QuantClass::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::logic::testgen::arb_regular_sentence;
    use crate::logic::{compile_sentence, parse_sentence};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ab() -> Arc<Alphabet> {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn class_of(text: &str) -> QuantClass {
        classify(&parse_sentence(text, ab()).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(class_of("forall x. b(x)"), QuantClass::Pi1);
        assert_eq!(class_of("(exists x. a(x)) and (forall x. not b(x))"), QuantClass::BSigma1);
        assert_eq!(class_of("forall x. exists y. x < y"), QuantClass::Other);
        assert_eq!(class_of("exists x. x % 3 = 0 and a(x)"), QuantClass::Sigma1);
        assert_eq!(class_of("not exists x. a(x)"), QuantClass::Pi1);
        assert_eq!(class_of("(forall x. a(x)) => forall y. b(y)"), QuantClass::BSigma1);
        assert_eq!(class_of("len % 2 = 0 and true"), QuantClass::QuantifierFree);
        assert_eq!(
            class_of("forall x y. (a(x) and b(y)) => div(x,y)"),
            QuantClass::Pi1
        );
        // Conservative: equivalent to a BΣ₁ sentence, but not syntactically one.
        assert_eq!(class_of("exists x. a(x) and forall y. b(y)"), QuantClass::Other);
    }

    #[test]
    fn nnf_pushes_negations() {
        let s = parse_sentence("not (forall x. a(x) => exists y. x < y)", ab()).unwrap();
        assert_eq!(
            nnf(s.formula()).to_string(),
            "exists x. a(x) and (forall y. not x < y)"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn nnf_preserves_language(f in arb_regular_sentence(4)) {
            let s = Sentence::new(ab(), f).unwrap();
            let n = Sentence::new(ab(), nnf(s.formula())).unwrap();
            let (l, r) = (compile_sentence(&s).unwrap(), compile_sentence(&n).unwrap());
            prop_assert!(l.equivalent(&r).unwrap());
        }
    }
}
