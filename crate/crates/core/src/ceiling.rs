//! The Π₁-ceiling of a regular language.
//!
//! For a letter tuple `a ∈ A^d`, the numerical predicate `R_a^L` holds of a
//! position tuple `i` in a word of length `n` iff some word of `L` of length
//! `n` carries `a` at `i`. The ceiling `⌈L⌉_d` is the quantifier-free
//! predicate `⋁_a (a(x) ∧ R_a^L(x))`, and `∀x ⌈L⌉_d` is the smallest language
//! above `L` definable by a universal sentence with a `d`-variable block.
//! Every piece is built as an automaton, so all predicates produced here are
//! regular.

use std::fmt;
use std::sync::Arc;

use crate::automata::{Alphabet, AutomataError, Dfa, Nfa};
use crate::structures::{
    forall_close, is_letter_blind, legal_structures, StructureError, TaggedAlphabet,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CeilingError {
    #[error(transparent)]
    Structure(#[from] StructureError),

    #[error("block size must be at least 1")]
    ZeroBlock,

    #[error("letter tuple has {found} letters, expected {expected}")]
    TupleLength { expected: usize, found: usize },
}

impl From<AutomataError> for CeilingError {
    fn from(e: AutomataError) -> Self {
        CeilingError::Structure(e.into())
    }
}

impl CeilingError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            CeilingError::Structure(StructureError::Automata(AutomataError::StateLimit { .. }))
        )
    }
}

/// A `d`-tuple of letters, as indices into the base alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterTuple(pub Vec<usize>);

impl LetterTuple {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let names: Vec<&str> = self.0.iter().map(|&c| alphabet.name(c)).collect();
        format!("({})", names.join(","))
    }
}

impl fmt::Display for LetterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The ceiling predicate together with the numerical predicates it is
/// assembled from.
#[derive(Debug, Clone)]
pub struct Ceiling {
    pub tagged: TaggedAlphabet,
    /// `⌈L⌉_d` over `A × 2^{x1..xd}`.
    pub formula: Dfa,
    /// `R_a^L` for every `a ∈ A^d`, in lexicographic order of `a`.
    pub predicates: Vec<(LetterTuple, Dfa)>,
}

/// `R_a^L` as an automaton over structures. Each edge `q --c--> q'` of `L`'s
/// automaton becomes the edges `q --(b,S)--> q'` for every letter `b` and every
/// `S ⊆ {x_j : a_j = c}`; the result is restricted to legal structures.
pub fn r_predicate(
    language: &Dfa,
    tuple: &LetterTuple,
    tagged: &TaggedAlphabet,
) -> Result<Dfa, CeilingError> {
    if language.alphabet() != tagged.base() {
        return Err(AutomataError::AlphabetMismatch {
            left: language.alphabet().to_string(),
            right: tagged.base().to_string(),
        }
        .into());
    }
    let d = tagged.arity();
    if tuple.0.len() != d {
        return Err(CeilingError::TupleLength {
            expected: d,
            found: tuple.0.len(),
        });
    }
    let letters = tagged.base().len();
    let mut nfa = Nfa::new(tagged.alphabet().clone(), language.num_states());
    nfa.set_initial(language.initial(), true);
    for q in 0..language.num_states() {
        nfa.set_accepting(q, language.is_accepting(q));
        for c in 0..letters {
            let target = language.step(q, c);
            let allowed = (0..d)
                .filter(|&j| tuple.0[j] == c)
                .fold(0u32, |m, j| m | (1 << j));
            for tags in submasks(allowed) {
                for b in 0..letters {
                    nfa.add_transition(q, tagged.symbol(b, tags), target);
                }
            }
        }
    }
    let predicate = nfa
        .determinize()?
        .and(&legal_structures(tagged))?;
    debug_assert!(is_letter_blind(tagged, &predicate));
    Ok(predicate)
}

/// All submasks of `mask`, including `0` and `mask` itself.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        next = (current != 0).then(|| (current - 1) & mask);
        Some(current)
    })
}

/// Structures whose tagged positions carry exactly the letters `tuple`.
pub fn letter_atoms(tuple: &LetterTuple, tagged: &TaggedAlphabet) -> Result<Dfa, CeilingError> {
    let d = tagged.arity();
    if tuple.0.len() != d {
        return Err(CeilingError::TupleLength {
            expected: d,
            found: tuple.0.len(),
        });
    }
    let ok = Dfa::from_fn(tagged.alphabet().clone(), (), |_| true, |_, s| {
        let (letter, mask) = (tagged.letter_of(s), tagged.mask_of(s));
        (0..d)
            .all(|j| mask & (1 << j) == 0 || tuple.0[j] == letter)
            .then_some(())
    })?;
    Ok(ok.and(&legal_structures(tagged))?)
}

/// `⌈L⌉_d` with its component predicates. The disjunction over `A^d` is
/// built as a balanced tree of unions.
pub fn ceiling_with_predicates(language: &Dfa, d: usize) -> Result<Ceiling, CeilingError> {
    if d == 0 {
        return Err(CeilingError::ZeroBlock);
    }
    let base: Arc<Alphabet> = language.alphabet().clone();
    let tagged = TaggedAlphabet::canonical(base.clone(), d)?;
    let mut predicates = Vec::new();
    let mut disjuncts = Vec::new();
    for tuple in base.words_of_length(d).map(LetterTuple) {
        let r = r_predicate(language, &tuple, &tagged)?;
        disjuncts.push(letter_atoms(&tuple, &tagged)?.and(&r)?);
        predicates.push((tuple, r));
    }
    while disjuncts.len() > 1 {
        let mut next = Vec::with_capacity(disjuncts.len().div_ceil(2));
        let mut it = disjuncts.into_iter();
        while let Some(left) = it.next() {
            next.push(match it.next() {
                Some(right) => left.or(&right)?,
                None => left,
            });
        }
        disjuncts = next;
    }
    let formula = disjuncts.pop().expect("A^d is non-empty");
    Ok(Ceiling {
        tagged,
        formula,
        predicates,
    })
}

/// `⌈L⌉_d` as an automaton over `A × 2^{x1..xd}`.
pub fn ceiling(language: &Dfa, d: usize) -> Result<(TaggedAlphabet, Dfa), CeilingError> {
    let c = ceiling_with_predicates(language, d)?;
    Ok((c.tagged, c.formula))
}

/// The language `∀x ⌈L⌉_d`. Always contains `L`.
pub fn pi1_ceiling_language(language: &Dfa, d: usize) -> Result<Dfa, CeilingError> {
    let (tagged, formula) = ceiling(language, d)?;
    Ok(forall_close(&tagged, &formula)?)
}
