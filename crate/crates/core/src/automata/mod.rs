//! Finite automata over arbitrary finite alphabets.
//!
//! Symbols are identified by their index in an [`Alphabet`]; every automaton
//! carries a shared handle to its alphabet and binary operations require the
//! two alphabets to be identical (same symbols, same order).

mod dfa;
mod dot;
mod minimize;
mod nfa;
mod ops;
pub mod random;
mod text;

use std::fmt;
use std::sync::Arc;

pub use dfa::Dfa;
pub use nfa::Nfa;
pub use ops::{BoolOp, Decision};

/// Upper bound on the number of states any single determinization or product
/// construction may create.
pub const DEFAULT_STATE_CAP: usize = 100_000;

/// A word, as a sequence of symbol indices into some alphabet.
pub type Word = Vec<usize>;

/// Errors raised by automaton construction, parsing and combination.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    /// Binary operation on automata over different alphabets.
    #[error("alphabet mismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    /// A word mentions a symbol that is not in the alphabet.
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    /// Invalid alphabet declaration.
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    /// A construction would exceed the configured state cap.
    #[error("state limit exceeded: more than {limit} states")]
    StateLimit { limit: usize },

    /// Malformed automaton text.
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    /// A letter map that is not total or points outside its target.
    #[error("invalid letter map: {0}")]
    InvalidMap(String),
}

/// An ordered finite set of printable symbol names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet; names must be non-empty, whitespace-free and unique.
    pub fn new<I, S>(symbols: I) -> Result<Arc<Self>, AutomataError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(AutomataError::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(AutomataError::InvalidAlphabet(format!(
                    "symbol {s:?} is empty or contains whitespace"
                )));
            }
            if symbols[..i].contains(s) {
                return Err(AutomataError::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Arc::new(Self { symbols }))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, symbol: usize) -> &str {
        &self.symbols[symbol]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Whitespace-separated tokens are looked up by name; a
    /// token without whitespace over a single-character alphabet is split into
    /// characters. The empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, AutomataError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let lookup = |tok: &str| {
            self.index_of(tok)
                .ok_or_else(|| AutomataError::UnknownSymbol(tok.to_string()))
        };
        if text.contains(char::is_whitespace) {
            return text.split_whitespace().map(lookup).collect();
        }
        if let Some(i) = self.index_of(text) {
            if !self.single_char() {
                return Ok(vec![i]);
            }
        }
        if self.single_char() {
            return text
                .chars()
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect();
        }
        Err(AutomataError::UnknownSymbol(text.to_string()))
    }

    /// Renders a word: concatenated when every symbol is one character,
    /// space-separated otherwise.
    pub fn render_word(&self, word: &[usize]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&s| self.symbols[s].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of exactly `len` letters in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let n = self.len();
        let total = n.checked_pow(len as u32).expect("word enumeration overflow");
        (0..total).map(move |mut code| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            w
        })
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |len| self.words_of_length(len))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{:?}", self.symbols)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbols.join(" "))
    }
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<(), AutomataError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(AutomataError::AlphabetMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

/// A total map from the symbols of one alphabet to the symbols of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterMap {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    image: Vec<usize>,
}

impl LetterMap {
    pub fn new(
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        image: Vec<usize>,
    ) -> Result<Self, AutomataError> {
        if image.len() != source.len() {
            return Err(AutomataError::InvalidMap(format!(
                "map has {} entries for {} source symbols",
                image.len(),
                source.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&t| t >= target.len()) {
            return Err(AutomataError::InvalidMap(format!(
                "image {bad} outside target alphabet of size {}",
                target.len()
            )));
        }
        Ok(Self { source, target, image })
    }

    /// Builds a map from a function on symbol indices.
    pub fn from_fn(
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self, AutomataError> {
        let image = (0..source.len()).map(f).collect();
        Self::new(source, target, image)
    }

    pub fn identity(alphabet: Arc<Alphabet>) -> Self {
        let image = (0..alphabet.len()).collect();
        Self {
            source: alphabet.clone(),
            target: alphabet,
            image,
        }
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn apply(&self, symbol: usize) -> usize {
        self.image[symbol]
    }

    pub fn apply_word(&self, word: &[usize]) -> Word {
        word.iter().map(|&s| self.image[s]).collect()
    }
}
