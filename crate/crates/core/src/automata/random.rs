//! Random automata for property tests and benchmarks.

use std::sync::Arc;

use rand::Rng;

use super::{Alphabet, Dfa};

/// A minimized automaton obtained from a uniformly random complete transition
/// table on `states` states with state 0 initial and each state accepting
/// with probability 1/2.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, alphabet: Arc<Alphabet>, states: usize) -> Dfa {
    assert!(states >= 1);
    let width = alphabet.len();
    let accepting = (0..states).map(|_| rng.gen_bool(0.5)).collect();
    let delta = (0..states * width).map(|_| rng.gen_range(0..states)).collect();
    Dfa::from_parts(alphabet, 0, accepting, delta).minimize()
}
