use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use super::{same_alphabet, Alphabet, AutomataError, LetterMap, Nfa, Word, DEFAULT_STATE_CAP};

/// A complete deterministic automaton. The transition function is total; a
/// rejecting sink is materialized whenever some move has nowhere to go.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Arc<Alphabet>,
    initial: usize,
    accepting: Vec<bool>,
    // delta[state * |alphabet| + symbol]
    delta: Vec<usize>,
}

impl Dfa {
    pub(crate) fn from_parts(
        alphabet: Arc<Alphabet>,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(delta.len(), accepting.len() * alphabet.len());
        debug_assert!(delta.iter().all(|&t| t < accepting.len()));
        Self {
            alphabet,
            initial,
            accepting,
            delta,
        }
    }

    /// Builds the reachable part of an automaton described by a step function
    /// over arbitrary hashable states. `step` returning `None` sends the run
    /// to a rejecting sink. The result is minimized.
    pub fn from_fn<S, F, A>(
        alphabet: Arc<Alphabet>,
        start: S,
        accept: A,
        step: F,
    ) -> Result<Dfa, AutomataError>
    where
        S: Clone + Eq + Hash,
        F: Fn(&S, usize) -> Option<S>,
        A: Fn(&S) -> bool,
    {
        let width = alphabet.len();
        let mut index: HashMap<Option<S>, usize> = HashMap::new();
        let mut states = vec![Some(start.clone())];
        index.insert(Some(start), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let current = states[i].clone();
            for sym in 0..width {
                let next = current.as_ref().and_then(|s| step(s, sym));
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= DEFAULT_STATE_CAP {
                            return Err(AutomataError::StateLimit {
                                limit: DEFAULT_STATE_CAP,
                            });
                        }
                        index.insert(next.clone(), states.len());
                        states.push(next);
                        states.len() - 1
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = states
            .iter()
            .map(|s| s.as_ref().is_some_and(&accept))
            .collect();
        Ok(Dfa::from_parts(alphabet, 0, accepting, delta).minimize())
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: Arc<Alphabet>) -> Dfa {
        let width = alphabet.len();
        Dfa::from_parts(alphabet, 0, vec![true], vec![0; width])
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: Arc<Alphabet>) -> Dfa {
        let width = alphabet.len();
        Dfa::from_parts(alphabet, 0, vec![false], vec![0; width])
    }

    /// The automaton accepting exactly the listed words.
    pub fn from_words(alphabet: Arc<Alphabet>, words: &[Word]) -> Dfa {
        let words: Vec<&Word> = words.iter().collect();
        Dfa::from_fn(
            alphabet,
            Vec::<usize>::new(),
            |prefix| words.iter().any(|w| w.as_slice() == prefix.as_slice()),
            |prefix, sym| {
                let mut next = prefix.clone();
                next.push(sym);
                words.iter().any(|w| w.starts_with(&next)).then_some(next)
            },
        )
        .expect("finite language automaton is small")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.delta[state * self.alphabet.len() + symbol]
    }

    /// Membership of a word given as symbol indices.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let end = word.iter().fold(self.initial, |q, &s| self.step(q, s));
        self.accepting[end]
    }

    /// Membership of a word given as symbol names.
    pub fn run<S: AsRef<str>>(&self, word: &[S]) -> Result<bool, AutomataError> {
        let ids = word
            .iter()
            .map(|s| {
                let s = s.as_ref();
                self.alphabet
                    .index_of(s)
                    .ok_or_else(|| AutomataError::UnknownSymbol(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.accepts(&ids))
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::new(self.alphabet.clone(), self.num_states());
        n.set_initial(self.initial, true);
        for q in 0..self.num_states() {
            n.set_accepting(q, self.accepting[q]);
            for s in 0..self.alphabet.len() {
                n.add_transition(q, s, self.step(q, s));
            }
        }
        n
    }

    /// Accepts `w` over the map's source alphabet iff this automaton accepts
    /// the letterwise image of `w`. No subset construction is involved.
    pub fn preimage(&self, map: &LetterMap) -> Result<Dfa, AutomataError> {
        same_alphabet(&self.alphabet, map.target())?;
        let source = map.source().clone();
        let mut delta = Vec::with_capacity(self.num_states() * source.len());
        for q in 0..self.num_states() {
            for s in 0..source.len() {
                delta.push(self.step(q, map.apply(s)));
            }
        }
        Ok(Dfa::from_parts(source, self.initial, self.accepting.clone(), delta).minimize())
    }

    pub(crate) fn with_acceptance(&self, accepting: Vec<bool>) -> Dfa {
        assert_eq!(accepting.len(), self.num_states());
        Dfa {
            accepting,
            ..self.clone()
        }
    }

    /// Reinterprets the automaton over another alphabet with the same number
    /// of symbols, index for index.
    pub(crate) fn with_alphabet(mut self, alphabet: Arc<Alphabet>) -> Dfa {
        assert_eq!(alphabet.len(), self.alphabet.len());
        self.alphabet = alphabet;
        self
    }

    /// States from which no accepting state is reachable.
    pub fn dead_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let width = self.alphabet.len();
        let mut reverse = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..width {
                reverse[self.step(q, s)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live.into_iter().map(|l| !l).collect()
    }

    /// The shortlex-least accepted word, if any. Breadth-first search in
    /// symbol order reaches every state first along its shortlex-least word.
    pub fn shortest_word(&self) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    word.push(s);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for s in 0..self.alphabet.len() {
                let t = self.step(q, s);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, s));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Accepted words of length at most `max_len`, shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        self.alphabet
            .words_up_to(max_len)
            .filter(|w| self.accepts(w))
            .collect()
    }
}
