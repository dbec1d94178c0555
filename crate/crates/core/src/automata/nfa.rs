use std::collections::HashMap;
use std::sync::Arc;

use super::{same_alphabet, Alphabet, AutomataError, Dfa, LetterMap, DEFAULT_STATE_CAP};

/// A nondeterministic automaton without epsilon moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Arc<Alphabet>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
    // state -> symbol -> sorted, deduplicated successors
    transitions: Vec<Vec<Vec<usize>>>,
}

impl Nfa {
    /// An automaton with `states` states and no transitions.
    pub fn new(alphabet: Arc<Alphabet>, states: usize) -> Self {
        let width = alphabet.len();
        Self {
            alphabet,
            initial: vec![false; states],
            accepting: vec![false; states],
            transitions: vec![vec![Vec::new(); width]; states],
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.initial.len()
    }

    pub fn set_initial(&mut self, state: usize, initial: bool) {
        self.initial[state] = initial;
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn is_initial(&self, state: usize) -> bool {
        self.initial[state]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn add_transition(&mut self, from: usize, symbol: usize, to: usize) {
        let succ = &mut self.transitions[from][symbol];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
    }

    pub fn successors(&self, state: usize, symbol: usize) -> &[usize] {
        &self.transitions[state][symbol]
    }

    /// All transitions as `(from, symbol, to)`, ordered by source, symbol, target.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.transitions.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(s, succ)| succ.iter().map(move |&t| (q, s, t)))
        })
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.iter().filter(|&&b| b).count() == 1
            && self.transitions.iter().flatten().all(|succ| succ.len() <= 1)
    }

    /// Membership by forward simulation of the reachable state set.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current = self.initial.clone();
        for &sym in word {
            let mut next = vec![false; self.num_states()];
            for (q, _) in current.iter().enumerate().filter(|(_, &on)| on) {
                for &t in &self.transitions[q][sym] {
                    next[t] = true;
                }
            }
            current = next;
        }
        current
            .iter()
            .zip(&self.accepting)
            .any(|(&on, &acc)| on && acc)
    }

    /// Relabels every transition through `map`. The result recognizes the
    /// letterwise image of this automaton's language.
    pub fn map_letters(&self, map: &LetterMap) -> Result<Nfa, AutomataError> {
        same_alphabet(&self.alphabet, map.source())?;
        let mut out = Nfa::new(map.target().clone(), self.num_states());
        out.initial = self.initial.clone();
        out.accepting = self.accepting.clone();
        for (q, s, t) in self.transitions() {
            out.add_transition(q, map.apply(s), t);
        }
        Ok(out)
    }

    /// Subset construction; the result is total and not minimized.
    pub fn determinize(&self) -> Result<Dfa, AutomataError> {
        self.determinize_with_cap(DEFAULT_STATE_CAP)
    }

    pub fn determinize_with_cap(&self, cap: usize) -> Result<Dfa, AutomataError> {
        let width = self.alphabet.len();
        let start: Vec<usize> = (0..self.num_states()).filter(|&q| self.initial[q]).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut mark = vec![false; self.num_states()];
        let mut next_id = 0;
        while next_id < subsets.len() {
            let current = subsets[next_id].clone();
            for sym in 0..width {
                let mut target = Vec::new();
                for &q in &current {
                    for &t in &self.transitions[q][sym] {
                        if !mark[t] {
                            mark[t] = true;
                            target.push(t);
                        }
                    }
                }
                for &t in &target {
                    mark[t] = false;
                }
                target.sort_unstable();
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= cap {
                            return Err(AutomataError::StateLimit { limit: cap });
                        }
                        let id = subsets.len();
                        index.insert(target.clone(), id);
                        subsets.push(target);
                        id
                    }
                };
                delta.push(id);
            }
            next_id += 1;
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|&q| self.accepting[q]))
            .collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, accepting, delta))
    }
}
