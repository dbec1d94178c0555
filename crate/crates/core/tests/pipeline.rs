//! End-to-end checks: sentences compiled to automata, then decomposed.

use std::sync::Arc;

use bsigma1::automata::random::random_dfa;
use bsigma1::automata::{Alphabet, Dfa};
use bsigma1::ceiling::pi1_ceiling_language;
use bsigma1::decompose::{chain_language, decompose, derived_chain, pi1_exact_test, search, verify};
use bsigma1::logic::{classify, compile_sentence, parse_sentence, to_difference_chain, QuantClass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ab() -> Arc<Alphabet> {
    Alphabet::new(["a", "b"]).unwrap()
}

fn abc() -> Arc<Alphabet> {
    Alphabet::new(["a", "b", "c"]).unwrap()
}

const COMBINATIONS: &[&str] = &[
    "exists x. a(x)",
    "(exists x. a(x)) and not exists y. b(y)",
    "(forall x. x % 2 = 0 => a(x)) or exists y. b(y)",
    "not ((exists x. a(x)) and (exists y. c(y))) and exists z. b(z)",
    "exists x y. x < y and a(x) and c(y)",
    "(forall x. len % 3 = 0 => b(x)) and not forall y. c(y)",
];

#[test]
fn syntactic_chain_parameters_suffice_for_decompose() {
    for text in COMBINATIONS {
        let s = parse_sentence(text, abc()).unwrap();
        assert_ne!(classify(&s), QuantClass::Other, "{text}");
        let chain = to_difference_chain(&s).unwrap();
        let l = compile_sentence(&s).unwrap();
        let report = decompose(&l, chain.block.max(1), chain.terms.len()).unwrap();
        assert!(report.is_success(), "{text}: {chain}");
        assert!(verify(&report.chain, &l).unwrap());
    }
}

#[test]
fn syntactic_chain_matches_sentence_away_from_empty_word() {
    for text in COMBINATIONS {
        let s = parse_sentence(text, abc()).unwrap();
        let chain = to_difference_chain(&s).unwrap();
        let from_chain = chain_language(&chain.languages().unwrap()).unwrap().unwrap();
        let l = compile_sentence(&s).unwrap();
        for w in abc().words_up_to(4) {
            if w.is_empty() && !chain.exact_at_empty_word {
                continue;
            }
            assert_eq!(from_chain.accepts(&w), l.accepts(&w), "{text} on {w:?}");
        }
    }
}

#[test]
fn universal_sentences_are_their_own_ceiling() {
    for (text, d) in [
        ("forall x. a(x) or x % 2 = 1", 1),
        ("forall x y. (a(x) and b(y)) => x < y", 2),
        ("forall x y. x < y => not (b(x) and b(y))", 2),
    ] {
        let s = parse_sentence(text, ab()).unwrap();
        let l = compile_sentence(&s).unwrap();
        assert!(pi1_exact_test(&l, d).unwrap().holds, "{text}");
        assert!(pi1_ceiling_language(&l, d).unwrap().equivalent(&l).unwrap());
    }
}

#[test]
fn two_variable_sentence_needs_two_variables() {
    let s = parse_sentence("forall x y. (b(x) and a(y)) => not x < y", ab()).unwrap();
    let l = compile_sentence(&s).unwrap();
    assert!(!pi1_exact_test(&l, 1).unwrap().holds);
    let r = search(&l, 2, 2).unwrap();
    assert_eq!(r.found, Some((2, 1)));
}

/// Every term is true on the empty word, so the chain contains it exactly
/// when the term count is odd; adding terms is monotone in steps of two.
#[test]
fn success_is_monotone_in_both_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let l: Dfa = random_dfa(&mut rng, ab(), 3);
        let mut ok = [[false; 5]; 3];
        for d in 1..=2 {
            let chain = derived_chain(&l, d, 4).unwrap();
            for k in 1..=4 {
                ok[d][k] = chain.report(k).is_success();
                if ok[d][k] {
                    assert_eq!(l.accepts(&[]), k % 2 == 1);
                }
            }
        }
        for d in 1..=2 {
            for k in 1..=4 {
                if ok[d][k] {
                    if k < 3 {
                        assert!(ok[d][k + 2], "k monotonicity at d={d} k={k}");
                    }
                    if d < 2 {
                        assert!(ok[d + 1][k], "d monotonicity at d={d} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn derived_languages_shrink() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..25 {
        let l = random_dfa(&mut rng, ab(), 4);
        let chain = derived_chain(&l, 1, 4).unwrap();
        for (c, next) in chain.ceilings().iter().zip(&chain.languages()[1..]) {
            assert!(next.is_subset_of(c).unwrap());
        }
        for pair in chain.ceilings().windows(2) {
            assert!(pair[1].is_subset_of(&pair[0]).unwrap());
        }
    }
}
