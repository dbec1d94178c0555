//! Words with variable tags.
//!
//! A `V`-structure over `A` is a word over `A × 2^V` in which every variable
//! of `V` tags exactly one position. Automata over a [`TaggedAlphabet`] read
//! such words; the functions here build the legal-structure automaton, move
//! between variable sets, and close a predicate on structures under `∀`/`∃`.
//!
//! Variables are canonically named `x1..xd`; symbol names are rendered as
//! `a{}` or `b{x1,x3}`. The display names a [`VarSet`] was built from are kept
//! for lookups by name.

use std::fmt;
use std::sync::Arc;

use crate::automata::{Alphabet, AutomataError, Dfa, LetterMap, Word};

/// Largest supported variable block.
pub const MAX_VARS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Automata(#[from] AutomataError),

    /// A position index outside `1..=|w|`.
    #[error("position {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// Tuple length differs from the number of variables.
    #[error("expected {expected} positions, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    /// A tagged word in which some variable does not occur exactly once.
    #[error("not a structure: {0}")]
    NotAStructure(String),

    #[error("invalid variable set: {0}")]
    InvalidVariables(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// Two tagged alphabets that should share a base alphabet do not.
    #[error("tagged alphabets have different base alphabets")]
    BaseMismatch,
}

/// An ordered set of variables; position `j` is canonically `x{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    /// `{x1, …, xd}`.
    pub fn canonical(d: usize) -> Self {
        Self {
            names: (1..=d).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn new<I, S>(names: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(StructureError::InvalidVariables(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(|c: char| c.is_whitespace() || "{},".contains(c)) {
                return Err(StructureError::InvalidVariables(format!("bad name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(StructureError::InvalidVariables(format!("duplicate `{n}`")));
            }
        }
        Ok(Self { names })
    }

    pub fn empty() -> Self {
        Self { names: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    fn full_mask(&self) -> u32 {
        (1u32 << self.len()) - 1
    }
}

#[derive(Debug, PartialEq, Eq)]
struct TaggedInner {
    base: Arc<Alphabet>,
    vars: VarSet,
    symbols: Arc<Alphabet>,
}

/// The alphabet `A × 2^V`, ordered by base letter and then by tag bitmask
/// (bit `j` stands for variable `x{j+1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedAlphabet(Arc<TaggedInner>);

impl TaggedAlphabet {
    pub fn new(base: Arc<Alphabet>, vars: VarSet) -> Result<Self, StructureError> {
        if base.symbols().iter().any(|s| s.contains(['{', '}', ','])) {
            return Err(StructureError::Automata(AutomataError::InvalidAlphabet(
                "base letters may not contain `{`, `}` or `,`".into(),
            )));
        }
        let d = vars.len();
        let mut names = Vec::with_capacity(base.len() << d);
        for letter in base.symbols() {
            for mask in 0u32..(1 << d) {
                names.push(format!("{letter}{{{}}}", mask_names(mask, d).join(",")));
            }
        }
        let symbols = Alphabet::new(names)?;
        Ok(Self(Arc::new(TaggedInner { base, vars, symbols })))
    }

    /// `A × 2^{x1..xd}`.
    pub fn canonical(base: Arc<Alphabet>, d: usize) -> Result<Self, StructureError> {
        Self::new(base, VarSet::canonical(d))
    }

    pub fn base(&self) -> &Arc<Alphabet> {
        &self.0.base
    }

    pub fn vars(&self) -> &VarSet {
        &self.0.vars
    }

    pub fn arity(&self) -> usize {
        self.0.vars.len()
    }

    /// The flat alphabet automata over this tagged alphabet are built on.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.0.symbols
    }

    pub fn symbol(&self, letter: usize, mask: u32) -> usize {
        (letter << self.arity()) | mask as usize
    }

    pub fn letter_of(&self, symbol: usize) -> usize {
        symbol >> self.arity()
    }

    pub fn mask_of(&self, symbol: usize) -> u32 {
        (symbol & ((1 << self.arity()) - 1)) as u32
    }

    /// The erasing map `(b, S) ↦ b`.
    pub fn untag_map(&self) -> LetterMap {
        LetterMap::from_fn(self.alphabet().clone(), self.base().clone(), |s| self.letter_of(s))
            .expect("letter_of stays inside the base alphabet")
    }

    fn check(&self, phi: &Dfa) -> Result<(), StructureError> {
        if phi.alphabet() != self.alphabet() {
            return Err(AutomataError::AlphabetMismatch {
                left: phi.alphabet().to_string(),
                right: self.alphabet().to_string(),
            }
            .into());
        }
        Ok(())
    }
}

fn mask_names(mask: u32, d: usize) -> Vec<String> {
    (0..d)
        .filter(|j| mask & (1 << j) != 0)
        .map(|j| format!("x{}", j + 1))
        .collect()
}

/// A word over a tagged alphabet in which every variable occurs exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureWord {
    tagged: TaggedAlphabet,
    symbols: Word,
}

impl StructureWord {
    pub fn new(tagged: TaggedAlphabet, symbols: Word) -> Result<Self, StructureError> {
        let mut seen = 0u32;
        for &s in &symbols {
            let mask = tagged.mask_of(s);
            if seen & mask != 0 {
                return Err(StructureError::NotAStructure(format!(
                    "variable x{} occurs twice",
                    (seen & mask).trailing_zeros() + 1
                )));
            }
            seen |= mask;
        }
        let missing = tagged.vars().full_mask() & !seen;
        if missing != 0 {
            return Err(StructureError::NotAStructure(format!(
                "variable x{} does not occur",
                missing.trailing_zeros() + 1
            )));
        }
        Ok(Self { tagged, symbols })
    }

    /// Parses space-separated tagged symbols such as `a{} b{x1,x3}`.
    pub fn parse(tagged: &TaggedAlphabet, text: &str) -> Result<Self, StructureError> {
        let symbols = text
            .split_whitespace()
            .map(|tok| {
                tagged
                    .alphabet()
                    .index_of(tok)
                    .ok_or_else(|| AutomataError::UnknownSymbol(tok.to_string()))
            })
            .collect::<Result<Word, _>>()?;
        Self::new(tagged.clone(), symbols)
    }

    pub fn tagged_alphabet(&self) -> &TaggedAlphabet {
        &self.tagged
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The underlying word over the base alphabet.
    pub fn letters(&self) -> Word {
        self.symbols.iter().map(|&s| self.tagged.letter_of(s)).collect()
    }

    /// 1-based position of each variable, in variable order.
    pub fn positions(&self) -> Vec<usize> {
        (0..self.tagged.arity())
            .map(|j| {
                1 + self
                    .symbols
                    .iter()
                    .position(|&s| self.tagged.mask_of(s) & (1 << j) != 0)
                    .expect("structure invariant: every variable occurs")
            })
            .collect()
    }

    /// The letters carried by the tagged positions, in variable order.
    pub fn tuple(&self) -> Word {
        let letters = self.letters();
        self.positions().into_iter().map(|p| letters[p - 1]).collect()
    }
}

impl fmt::Display for StructureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.tagged.alphabet();
        let parts: Vec<&str> = self.symbols.iter().map(|&s| alphabet.name(s)).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Tags position `positions[j]` (1-based) of `word` with variable `j`.
/// Positions may repeat.
pub fn tag(
    word: &[usize],
    positions: &[usize],
    tagged: &TaggedAlphabet,
) -> Result<StructureWord, StructureError> {
    if positions.len() != tagged.arity() {
        return Err(StructureError::ArityMismatch {
            expected: tagged.arity(),
            found: positions.len(),
        });
    }
    if let Some(&bad) = positions.iter().find(|&&p| p == 0 || p > word.len()) {
        return Err(StructureError::IndexOutOfRange {
            index: bad,
            len: word.len(),
        });
    }
    let symbols = word
        .iter()
        .enumerate()
        .map(|(i, &letter)| {
            let mask = positions
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p == i + 1)
                .fold(0u32, |m, (j, _)| m | (1 << j));
            tagged.symbol(letter, mask)
        })
        .collect();
    StructureWord::new(tagged.clone(), symbols)
}

/// Accepts exactly the structures. States record which variables have been
/// seen.
pub fn legal_structures(tagged: &TaggedAlphabet) -> Dfa {
    let full = tagged.vars().full_mask();
    Dfa::from_fn(
        tagged.alphabet().clone(),
        0u32,
        |&seen| seen == full,
        |&seen, sym| {
            let mask = tagged.mask_of(sym);
            (seen & mask == 0).then_some(seen | mask)
        },
    )
    .expect("legal-structure automaton has 2^d + 1 states")
}

/// Existentially quantifies the variables in `erase`. Returns the tagged
/// alphabet over the remaining variables (original order kept) and the
/// projected automaton, which accepts only legal structures.
pub fn project(
    tagged: &TaggedAlphabet,
    phi: &Dfa,
    erase: &[&str],
) -> Result<(TaggedAlphabet, Dfa), StructureError> {
    tagged.check(phi)?;
    let vars = tagged.vars();
    let mut erase_mask = 0u32;
    for name in erase {
        let j = vars
            .index_of(name)
            .ok_or_else(|| StructureError::UnknownVariable(name.to_string()))?;
        erase_mask |= 1 << j;
    }
    let kept: Vec<usize> = (0..vars.len()).filter(|j| erase_mask & (1 << j) == 0).collect();
    let target = TaggedAlphabet::new(
        tagged.base().clone(),
        VarSet::new(kept.iter().map(|&j| vars.names()[j].clone()))?,
    )?;
    let map = LetterMap::from_fn(tagged.alphabet().clone(), target.alphabet().clone(), |s| {
        let mask = tagged.mask_of(s);
        let new_mask = kept
            .iter()
            .enumerate()
            .filter(|&(_, &j)| mask & (1 << j) != 0)
            .fold(0u32, |m, (k, _)| m | (1 << k));
        target.symbol(tagged.letter_of(s), new_mask)
    })?;
    let restricted = phi.and(&legal_structures(tagged))?;
    let projected = restricted.to_nfa().map_letters(&map)?.determinize()?.minimize();
    Ok((target, projected))
}

/// Reads `phi` over a larger variable set: a word over `to` is accepted iff
/// dropping the tags of the extra variables gives a word accepted by `phi`.
/// Variables are matched by name. Structure validity is not enforced.
pub fn cylindrify(
    from: &TaggedAlphabet,
    phi: &Dfa,
    to: &TaggedAlphabet,
) -> Result<Dfa, StructureError> {
    from.check(phi)?;
    if from.base() != to.base() {
        return Err(StructureError::BaseMismatch);
    }
    let placement: Vec<usize> = from
        .vars()
        .names()
        .iter()
        .map(|n| {
            to.vars()
                .index_of(n)
                .ok_or_else(|| StructureError::UnknownVariable(n.clone()))
        })
        .collect::<Result<_, _>>()?;
    let map = LetterMap::from_fn(to.alphabet().clone(), from.alphabet().clone(), |s| {
        let mask = to.mask_of(s);
        let old_mask = placement
            .iter()
            .enumerate()
            .filter(|&(_, &j)| mask & (1 << j) != 0)
            .fold(0u32, |m, (k, _)| m | (1 << k));
        from.symbol(to.letter_of(s), old_mask)
    })?;
    Ok(phi.preimage(&map)?)
}

/// Words `w` over the base alphabet such that some tagging of `w` is a
/// structure accepted by `phi`.
pub fn exists_close(tagged: &TaggedAlphabet, phi: &Dfa) -> Result<Dfa, StructureError> {
    tagged.check(phi)?;
    let restricted = phi.and(&legal_structures(tagged))?;
    let nfa = restricted.to_nfa().map_letters(&tagged.untag_map())?;
    Ok(nfa.determinize()?.minimize())
}

/// Words `w` over the base alphabet such that every tagging of `w` is
/// accepted by `phi`. With at least one variable the empty word has no
/// taggings and is always accepted.
pub fn forall_close(tagged: &TaggedAlphabet, phi: &Dfa) -> Result<Dfa, StructureError> {
    Ok(exists_close(tagged, &phi.complement())?.complement())
}

/// Whether membership never depends on the letters, only on length and tag
/// placement. `phi` must be minimal: the language is letter-blind iff every
/// state moves identically on `(b, S)` for all letters `b`.
pub fn is_letter_blind(tagged: &TaggedAlphabet, phi: &Dfa) -> bool {
    let letters = tagged.base().len();
    (0..phi.num_states()).all(|q| {
        (0u32..1 << tagged.arity()).all(|mask| {
            let first = phi.step(q, tagged.symbol(0, mask));
            (1..letters).all(|b| phi.step(q, tagged.symbol(b, mask)) == first)
        })
    })
}
