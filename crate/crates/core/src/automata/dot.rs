use std::fmt::Write;

use super::Dfa;

impl Dfa {
    /// Graphviz rendering. Dead states are left out; parallel edges are merged
    /// into one edge whose label lists the symbols verbatim.
    pub fn to_dot(&self) -> String {
        let dead = self.dead_states();
        let alphabet = self.alphabet();
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  start [shape=point];\n");
        writeln!(out, "  start -> {};", self.initial()).unwrap();
        for q in 0..self.num_states() {
            if dead[q] && q != self.initial() {
                continue;
            }
            let shape = if self.is_accepting(q) { "doublecircle" } else { "circle" };
            writeln!(out, "  {q} [shape={shape}];").unwrap();
        }
        for q in (0..self.num_states()).filter(|&q| !dead[q]) {
            let mut targets: Vec<(usize, Vec<&str>)> = Vec::new();
            for s in 0..alphabet.len() {
                let t = self.step(q, s);
                if dead[t] {
                    continue;
                }
                match targets.iter_mut().find(|(u, _)| *u == t) {
                    Some((_, labels)) => labels.push(alphabet.name(s)),
                    None => targets.push((t, vec![alphabet.name(s)])),
                }
            }
            for (t, labels) in targets {
                let label = labels.join(", ").replace('"', "\\\"");
                writeln!(out, "  {q} -> {t} [label=\"{label}\"];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::automata::{Alphabet, Dfa};

    #[test]
    fn merges_labels_and_hides_sink() {
        let ab = Alphabet::new(["a{}", "b{x1,x3}"]).unwrap();
        let d = Dfa::universal(ab);
        let dot = d.to_dot();
        assert!(dot.contains("0 -> 0 [label=\"a{}, b{x1,x3}\"];"));
        assert!(dot.contains("0 [shape=doublecircle];"));
    }
}
