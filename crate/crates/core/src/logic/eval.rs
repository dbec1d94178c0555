//! Brute-force satisfaction. Quantifiers range over all positions, so this
//! handles every atom, including `div`, and serves as the reference
//! semantics for the compiler.

use std::collections::HashMap;

use super::{Formula, LogicError, Sentence};
use crate::automata::Alphabet;
use crate::structures::StructureWord;

struct Model<'a> {
    alphabet: &'a Alphabet,
    word: &'a [usize],
}

impl Model<'_> {
    fn letter_at(&self, a: &str, pos: usize) -> bool {
        self.alphabet.index_of(a) == Some(self.word[pos - 1])
    }

    fn holds<'f>(&self, f: &'f Formula, env: &mut HashMap<&'f str, usize>) -> bool {
        let n = self.word.len();
        match f {
            Formula::Letter(a, x) => self.letter_at(a, env[x.as_str()]),
            Formula::Less(x, y) => env[x.as_str()] < env[y.as_str()],
            Formula::EqVar(x, y) => env[x.as_str()] == env[y.as_str()],
            Formula::ModPos { var, r, q } => env[var.as_str()] % *q as usize == *r as usize,
            Formula::ModLen { r, q } => n % *q as usize == *r as usize,
            Formula::Divides(x, y) => env[y.as_str()].is_multiple_of(env[x.as_str()]),
            Formula::True => true,
            Formula::False => false,
            Formula::Not(g) => !self.holds(g, env),
            Formula::And(l, r) => self.holds(l, env) && self.holds(r, env),
            Formula::Or(l, r) => self.holds(l, env) || self.holds(r, env),
            Formula::Implies(l, r) => !self.holds(l, env) || self.holds(r, env),
            Formula::Exists(vs, body) => self.quantify(vs, body, env, true),
            Formula::Forall(vs, body) => !self.quantify(vs, body, env, false),
        }
    }

    /// Whether some assignment of `vars` makes `body` evaluate to `want`.
    fn quantify<'f>(
        &self,
        vars: &'f [String],
        body: &'f Formula,
        env: &mut HashMap<&'f str, usize>,
        want: bool,
    ) -> bool {
        let Some((v, rest)) = vars.split_first() else {
            return self.holds(body, env) == want;
        };
        let saved = env.get(v.as_str()).copied();
        let found = (1..=self.word.len()).any(|p| {
            env.insert(v.as_str(), p);
            self.quantify(rest, body, env, want)
        });
        match saved {
            Some(p) => env.insert(v.as_str(), p),
            None => env.remove(v.as_str()),
        };
        found
    }
}

/// Whether the structure satisfies `f`. The free variables of `f` must be
/// exactly the variables of the structure.
pub fn evaluate(f: &Formula, s: &StructureWord) -> Result<bool, LogicError> {
    let tagged = s.tagged_alphabet();
    let expected: Vec<String> = tagged.vars().names().to_vec();
    let found: Vec<String> = f.free_vars().into_iter().collect();
    let mut sorted = expected.clone();
    sorted.sort();
    if sorted != found {
        return Err(LogicError::VariableMismatch { expected, found });
    }
    if let Some(a) = f.letters().into_iter().find(|a| tagged.base().index_of(a).is_none()) {
        return Err(LogicError::Invalid(format!("letter `{a}` is not in the alphabet")));
    }
    let letters = s.letters();
    let model = Model {
        alphabet: tagged.base(),
        word: &letters,
    };
    let mut env: HashMap<&str, usize> = expected
        .iter()
        .map(String::as_str)
        .zip(s.positions())
        .collect();
    Ok(model.holds(f, &mut env))
}

/// Whether `word` (symbol indices over the sentence's alphabet) satisfies
/// the sentence.
pub fn eval_sentence(sentence: &Sentence, word: &[usize]) -> bool {
    let model = Model {
        alphabet: sentence.alphabet(),
        word,
    };
    model.holds(sentence.formula(), &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_sentence;
    use crate::structures::TaggedAlphabet;

    #[test]
    fn structure_satisfies_position_facts() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let t = TaggedAlphabet::canonical(ab, 3).unwrap();
        let s = StructureWord::parse(&t, "a{} b{x1,x3} b{} a{x2} a{}").unwrap();
        let x = |i: usize| format!("x{i}");
        let with_all = |f: Formula| {
            // Mention every variable so free variables match the structure.
            let pad = Formula::and(
                Formula::EqVar(x(1), x(1)),
                Formula::and(Formula::EqVar(x(2), x(2)), Formula::EqVar(x(3), x(3))),
            );
            Formula::and(f, pad)
        };
        for f in [
            Formula::EqVar(x(1), x(3)),
            Formula::Less(x(1), x(2)),
            Formula::letter("b", "x3"),
            Formula::True,
        ] {
            assert!(evaluate(&with_all(f), &s).unwrap());
        }
        assert!(!evaluate(&with_all(Formula::Less(x(2), x(1))), &s).unwrap());
        let e = evaluate(&Formula::letter("a", "x1"), &s).unwrap_err();
        assert!(matches!(e, LogicError::VariableMismatch { .. }));
    }

    #[test]
    fn divisibility_example() {
        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        let s = parse_sentence("forall x. forall y. (a(x) and b(y)) => div(x,y)", abc.clone())
            .unwrap();
        let w = |t: &str| abc.parse_word(t).unwrap();
        assert!(eval_sentence(&s, &w("aacbcbcc")));
        assert!(!eval_sentence(&s, &w("aacbbbcc")));
    }

    #[test]
    fn empty_word_semantics() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let sentence = |t: &str| parse_sentence(t, ab.clone()).unwrap();
        assert!(eval_sentence(&sentence("forall x. false"), &[]));
        assert!(!eval_sentence(&sentence("exists x. true"), &[]));
        assert!(eval_sentence(&sentence("len % 2 = 0"), &[]));
        assert!(!eval_sentence(&sentence("len % 2 = 1"), &[]));
    }

    #[test]
    fn modular_positions_are_one_based() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let s = parse_sentence("forall x. x % 3 = 0 => a(x)", ab.clone()).unwrap();
        let w = |t: &str| ab.parse_word(t).unwrap();
        assert!(eval_sentence(&s, &w("bbabba")));
        assert!(!eval_sentence(&s, &w("bbbbba")));
        assert!(eval_sentence(&s, &w("bb")));
    }
}
