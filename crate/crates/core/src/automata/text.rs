//! Line-oriented automaton text format.
//!
//! ```text
//! alphabet: a b
//! states: 3
//! initial: 0
//! accepting: 2
//! 0 a -> 1
//! 1 b -> 2
//! 2 a -> 2
//! 2 b -> 2
//! ```
//!
//! A missing `(state, symbol)` pair sends the run to a rejecting sink, which
//! is never written out. `#` starts a comment. Nondeterministic files (several
//! initial states or several targets for one pair) parse as [`Nfa`] only.

use std::fmt;
use std::str::FromStr;

use super::{Alphabet, AutomataError, Dfa, Nfa};

fn format_err(line: usize, message: impl Into<String>) -> AutomataError {
    AutomataError::Format {
        line,
        message: message.into(),
    }
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, &'a str), AutomataError> {
    match lines.next() {
        Some((no, line)) => match line.split_once(':') {
            Some((k, rest)) if k.trim() == key => Ok((no, rest.trim())),
            _ => Err(format_err(no, format!("expected `{key}:`"))),
        },
        None => Err(format_err(0, format!("missing `{key}:` line"))),
    }
}

fn state_list(no: usize, text: &str, states: usize) -> Result<Vec<usize>, AutomataError> {
    text.split_whitespace()
        .map(|tok| {
            let q: usize = tok
                .parse()
                .map_err(|_| format_err(no, format!("invalid state `{tok}`")))?;
            if q >= states {
                return Err(format_err(no, format!("state {q} out of range")));
            }
            Ok(q)
        })
        .collect()
}

impl FromStr for Nfa {
    type Err = AutomataError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (no, symbols) = header(&mut lines, "alphabet")?;
        let alphabet = Alphabet::new(symbols.split_whitespace())
            .map_err(|e| format_err(no, e.to_string()))?;
        let (no, count) = header(&mut lines, "states")?;
        let states: usize = count
            .parse()
            .map_err(|_| format_err(no, format!("invalid state count `{count}`")))?;
        if states == 0 {
            return Err(format_err(no, "an automaton needs at least one state"));
        }
        let mut nfa = Nfa::new(alphabet.clone(), states);
        let (no, initial) = header(&mut lines, "initial")?;
        for q in state_list(no, initial, states)? {
            nfa.set_initial(q, true);
        }
        let (no, accepting) = header(&mut lines, "accepting")?;
        for q in state_list(no, accepting, states)? {
            nfa.set_accepting(q, true);
        }
        for (no, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [from, sym, "->", to] = toks.as_slice() else {
                return Err(format_err(no, "expected `<state> <symbol> -> <state>`"));
            };
            let from = state_list(no, from, states)?[0];
            let to = state_list(no, to, states)?[0];
            let sym = alphabet
                .index_of(sym)
                .ok_or_else(|| format_err(no, format!("unknown symbol `{sym}`")))?;
            nfa.add_transition(from, sym, to);
        }
        Ok(nfa)
    }
}

impl FromStr for Dfa {
    type Err = AutomataError;

    /// Parses a deterministic file, materializing the implicit sink.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let nfa: Nfa = text.parse()?;
        if !nfa.is_deterministic() {
            return Err(format_err(
                0,
                "automaton is nondeterministic; parse it as an Nfa and determinize",
            ));
        }
        nfa.determinize()
    }
}

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |pred: &dyn Fn(usize) -> bool| {
            (0..self.num_states())
                .filter(|&q| pred(q))
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "alphabet: {}", self.alphabet())?;
        writeln!(f, "states: {}", self.num_states())?;
        writeln!(f, "initial: {}", list(&|q| self.is_initial(q)))?;
        writeln!(f, "accepting: {}", list(&|q| self.is_accepting(q)))?;
        for (q, s, t) in self.transitions() {
            writeln!(f, "{q} {} -> {t}", self.alphabet().name(s))?;
        }
        Ok(())
    }
}

impl fmt::Display for Dfa {
    /// Writes the live states in index order; moves into dead states are
    /// omitted. The empty language is written as a single rejecting state.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dead = self.dead_states();
        let alphabet = self.alphabet();
        writeln!(f, "alphabet: {alphabet}")?;
        if dead[self.initial()] {
            writeln!(f, "states: 1")?;
            writeln!(f, "initial: 0")?;
            return writeln!(f, "accepting:");
        }
        // Live states, initial first, then the rest in index order.
        let mut order = vec![self.initial()];
        order.extend((0..self.num_states()).filter(|&q| !dead[q] && q != self.initial()));
        let mut rename = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            rename[q] = i;
        }
        let accepting: Vec<String> = order
            .iter()
            .filter(|&&q| self.is_accepting(q))
            .map(|&q| rename[q].to_string())
            .collect();
        writeln!(f, "states: {}", order.len())?;
        writeln!(f, "initial: 0")?;
        if accepting.is_empty() {
            writeln!(f, "accepting:")?;
        } else {
            writeln!(f, "accepting: {}", accepting.join(" "))?;
        }
        for &q in &order {
            for s in 0..alphabet.len() {
                let t = self.step(q, s);
                if !dead[t] {
                    writeln!(f, "{} {} -> {}", rename[q], alphabet.name(s), rename[t])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::random::random_dfa;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SAMPLE: &str = "\
alphabet: a b
states: 3
initial: 0
accepting: 2
0 a -> 1
1 b -> 2
2 a -> 2
2 b -> 2
";

    #[test]
    fn parse_sample() {
        let d: Dfa = SAMPLE.parse().unwrap();
        assert!(d.run(&["a", "b"]).unwrap());
        assert!(d.run(&["a", "b", "b", "a"]).unwrap());
        assert!(!d.run(&["b"]).unwrap());
        assert_eq!(d.minimize().to_string(), SAMPLE);
    }

    #[test]
    fn empty_language_format() {
        let d = Dfa::empty(Alphabet::new(["a"]).unwrap());
        assert_eq!(d.to_string(), "alphabet: a\nstates: 1\ninitial: 0\naccepting:\n");
        let back: Dfa = d.to_string().parse().unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "alphabet: a\nstates: 2\ninitial: 0\naccepting: 5\n";
        assert_eq!(
            bad.parse::<Nfa>(),
            Err(AutomataError::Format { line: 4, message: "state 5 out of range".into() })
        );
        let bad = "alphabet: a\nstates: 1\ninitial: 0\naccepting:\n0 z -> 0\n";
        assert!(matches!(bad.parse::<Nfa>(), Err(AutomataError::Format { line: 5, .. })));
        let nondet = "alphabet: a\nstates: 2\ninitial: 0\naccepting: 1\n0 a -> 0\n0 a -> 1\n";
        assert!(nondet.parse::<Dfa>().is_err());
        assert!(nondet.parse::<Nfa>().is_ok());
    }

    #[test]
    fn tagged_symbols_round_trip() {
        let text = "alphabet: a{} b{x1,x3}\nstates: 1\ninitial: 0\naccepting: 0\n0 b{x1,x3} -> 0\n";
        let n: Nfa = text.parse().unwrap();
        assert_eq!(n.to_string(), text);
    }

    proptest! {
        #[test]
        fn minimized_text_round_trips(seed in any::<u64>(), states in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ab = Alphabet::new(["a", "b", "c"]).unwrap();
            let d = random_dfa(&mut rng, ab, states);
            let back: Dfa = d.to_string().parse().unwrap();
            prop_assert_eq!(back.minimize(), d.clone());
            let nfa_back: Nfa = d.to_nfa().to_string().parse().unwrap();
            prop_assert_eq!(nfa_back.determinize().unwrap().minimize(), d);
        }
    }
}
