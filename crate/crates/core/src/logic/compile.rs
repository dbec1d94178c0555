//! Formula to automaton. Every intermediate result is a minimal DFA over
//! `A × 2^V`, where `V` is the sorted set of free variables of the
//! subformula, and accepts only legal structures.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Formula, LogicError, Sentence};
use crate::automata::{Alphabet, Dfa};
use crate::structures::{cylindrify, legal_structures, project, TaggedAlphabet, VarSet};

fn tagged_for(base: &Arc<Alphabet>, vars: &BTreeSet<String>) -> Result<TaggedAlphabet, LogicError> {
    Ok(TaggedAlphabet::new(base.clone(), VarSet::new(vars.iter().cloned())?)?)
}

/// Structures over `tagged` accepted by a per-symbol automaton. `step`
/// receives the letter and the tag mask of each symbol.
fn atom<S: Clone + Eq + std::hash::Hash>(
    tagged: &TaggedAlphabet,
    start: S,
    accept: impl Fn(&S) -> bool,
    step: impl Fn(&S, usize, u32) -> Option<S>,
) -> Result<Dfa, LogicError> {
    let raw = Dfa::from_fn(tagged.alphabet().clone(), start, accept, |s, sym| {
        step(s, tagged.letter_of(sym), tagged.mask_of(sym))
    })?;
    Ok(raw.and(&legal_structures(tagged))?)
}

fn bit(tagged: &TaggedAlphabet, var: &str) -> u32 {
    1 << tagged.vars().index_of(var).expect("variable is free in the atom")
}

struct Compiler<'a> {
    base: &'a Arc<Alphabet>,
}

impl Compiler<'_> {
    fn compile(&self, f: &Formula) -> Result<(TaggedAlphabet, Dfa), LogicError> {
        let vars = f.free_vars();
        let tagged = tagged_for(self.base, &vars)?;
        let dfa = match f {
            Formula::Letter(a, x) => {
                let want = self.base.index_of(a).ok_or_else(|| {
                    LogicError::Invalid(format!("letter `{a}` is not in the alphabet"))
                })?;
                let m = bit(&tagged, x);
                atom(&tagged, (), |_| true, |_, letter, mask| {
                    (mask & m == 0 || letter == want).then_some(())
                })?
            }
            Formula::Less(x, y) if x == y => Dfa::empty(tagged.alphabet().clone()),
            Formula::Less(x, y) => {
                let (mx, my) = (bit(&tagged, x), bit(&tagged, y));
                // State: whether x has been seen.
                atom(&tagged, false, |_| true, |&seen, _, mask| {
                    if mask & my != 0 && !seen {
                        None
                    } else {
                        Some(seen || mask & mx != 0)
                    }
                })?
            }
            Formula::EqVar(x, y) => {
                let both = bit(&tagged, x) | bit(&tagged, y);
                atom(&tagged, (), |_| true, |_, _, mask| {
                    (mask & both == 0 || mask & both == both).then_some(())
                })?
            }
            Formula::ModPos { var, r, q } => {
                let (m, r, q) = (bit(&tagged, var), *r, *q);
                // State: number of positions read, mod q.
                atom(&tagged, 0u32, |_| true, |&c, _, mask| {
                    let here = (c + 1) % q;
                    (mask & m == 0 || here == r).then_some(here)
                })?
            }
            Formula::ModLen { r, q } => {
                let (r, q) = (*r, *q);
                atom(&tagged, 0u32, move |&c| c == r, move |&c, _, _| Some((c + 1) % q))?
            }
            Formula::Divides(..) => return Err(LogicError::NonRegularAtom(f.to_string())),
            Formula::True => legal_structures(&tagged),
            Formula::False => Dfa::empty(tagged.alphabet().clone()),
            Formula::Not(g) => {
                let (_, inner) = self.compile(g)?;
                legal_structures(&tagged).diff(&inner)?
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                let (lt, ld) = self.compile(l)?;
                let (rt, rd) = self.compile(r)?;
                let ld = cylindrify(&lt, &ld, &tagged)?;
                let rd = cylindrify(&rt, &rd, &tagged)?;
                let combined = match f {
                    Formula::And(..) => ld.and(&rd)?,
                    Formula::Or(..) => ld.or(&rd)?,
                    _ => ld.complement().or(&rd)?,
                };
                combined.and(&legal_structures(&tagged))?
            }
            Formula::Exists(bound, body) => self.exists(&vars, bound, body, false)?,
            Formula::Forall(bound, body) => {
                let witnesses = self.exists(&vars, bound, body, true)?;
                legal_structures(&tagged).diff(&witnesses)?
            }
        };
        Ok((tagged, dfa))
    }

    /// `∃ bound. body`, or `∃ bound. ¬body` when `negate` is set, over the
    /// free variables `outer`.
    fn exists(
        &self,
        outer: &BTreeSet<String>,
        bound: &[String],
        body: &Formula,
        negate: bool,
    ) -> Result<Dfa, LogicError> {
        let (bt, bd) = self.compile(body)?;
        let mut wide_vars = outer.clone();
        wide_vars.extend(bound.iter().cloned());
        let wide = tagged_for(self.base, &wide_vars)?;
        let mut lifted = cylindrify(&bt, &bd, &wide)?;
        if negate {
            lifted = lifted.complement();
        }
        let erase: Vec<&str> = bound.iter().map(String::as_str).collect();
        let (_, projected) = project(&wide, &lifted, &erase)?;
        Ok(projected)
    }
}

/// Compiles `f` to a minimal automaton over `A × 2^V`, with `V` the free
/// variables of `f` in sorted order. Fails on evaluator-only atoms.
pub fn compile(f: &Formula, alphabet: &Arc<Alphabet>) -> Result<(TaggedAlphabet, Dfa), LogicError> {
    f.validate()?;
    if let Some(atom) = f.non_regular_atom() {
        return Err(LogicError::NonRegularAtom(atom.to_string()));
    }
    Compiler { base: alphabet }.compile(f)
}

/// The language of a sentence, as a minimal automaton over its alphabet.
pub fn compile_sentence(sentence: &Sentence) -> Result<Dfa, LogicError> {
    let (_, dfa) = compile(sentence.formula(), sentence.alphabet())?;
    Ok(dfa.with_alphabet(sentence.alphabet().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::testgen::arb_regular_sentence;
    use crate::logic::{eval_sentence, evaluate, parse_formula, parse_sentence};
    use crate::structures::StructureWord;
    use proptest::prelude::*;

    fn ab() -> Arc<Alphabet> {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn agrees_up_to(sentence: &Sentence, len: usize) {
        let dfa = compile_sentence(sentence).unwrap();
        for w in sentence.alphabet().words_up_to(len) {
            assert_eq!(dfa.accepts(&w), eval_sentence(sentence, &w), "{sentence} on {w:?}");
        }
    }

    #[test]
    fn exists_a_is_two_state() {
        let s = parse_sentence("exists x. a(x)", ab()).unwrap();
        let hand = Dfa::from_fn(ab(), false, |&seen| seen, |&seen, sym| Some(seen || sym == 0))
            .unwrap();
        assert_eq!(hand.num_states(), 2);
        assert!(compile_sentence(&s).unwrap().equivalent(&hand).unwrap());
    }

    #[test]
    fn even_positions_hold_a() {
        let s = parse_sentence("forall x. x % 2 = 0 => a(x)", ab()).unwrap();
        let dfa = compile_sentence(&s).unwrap();
        for w in ab().words_up_to(6) {
            let expected = w.iter().enumerate().all(|(i, &c)| (i + 1) % 2 == 1 || c == 0);
            assert_eq!(dfa.accepts(&w), expected);
        }
    }

    #[test]
    fn rejects_divisibility() {
        let s = parse_sentence("forall x. forall y. (a(x) and b(y)) => div(x,y)", ab()).unwrap();
        assert_eq!(
            compile_sentence(&s).unwrap_err(),
            LogicError::NonRegularAtom("div(x,y)".into())
        );
    }

    #[test]
    fn open_formulas_match_evaluator() {
        let texts = [
            "x < y",
            "x = y",
            "x < x",
            "a(x) and y % 2 = 1",
            "exists z. x < z and z < y and b(z)",
            "forall z. z < x => a(z)",
            "len % 3 = 1 or x = y",
        ];
        for text in texts {
            let f = parse_formula(text, None).unwrap();
            let (t, dfa) = compile(&f, &ab()).unwrap();
            let d = t.arity();
            for n in 1..=4 {
                for w in ab().words_of_length(n) {
                    for code in 0..n.pow(d as u32) {
                        let positions: Vec<usize> =
                            (0..d).map(|j| code / n.pow(j as u32) % n + 1).collect();
                        let s = crate::structures::tag(&w, &positions, &t).unwrap();
                        assert_eq!(
                            dfa.accepts(s.symbols()),
                            evaluate(&f, &s).unwrap(),
                            "{text} on {s}"
                        );
                    }
                }
            }
            // Non-structures are never accepted.
            if d > 0 {
                let untagged = StructureWord::new(t.clone(), vec![t.symbol(0, 0)]);
                assert!(untagged.is_err());
                assert!(!dfa.accepts(&[t.symbol(0, 0)]));
            }
        }
    }

    #[test]
    fn sentence_corpus_matches_evaluator() {
        for text in [
            "forall x. b(x)",
            "forall x y. (b(x) and a(y)) => not x < y",
            "exists x. x % 3 = 0 and a(x)",
            "(exists x. a(x)) and (forall x. not b(x))",
            "forall x. exists y. x < y",
            "exists x. forall y. y < x or y = x",
            "len % 2 = 0 => exists x y. x < y and a(x) and a(y)",
            "forall x. true",
            "exists x. true",
        ] {
            agrees_up_to(&parse_sentence(text, ab()).unwrap(), 6);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_sentences_match_evaluator(f in arb_regular_sentence(4)) {
            let s = Sentence::new(ab(), f).unwrap();
            agrees_up_to(&s, 5);
        }
    }
}
