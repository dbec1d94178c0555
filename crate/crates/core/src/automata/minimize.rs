//! Hopcroft partition refinement followed by canonical renumbering.

use std::collections::VecDeque;

use super::Dfa;

impl Dfa {
    /// Minimal complete automaton for the same language. States are numbered
    /// breadth-first from the initial state, visiting successors in alphabet
    /// order, so language-equal inputs yield structurally equal outputs.
    pub fn minimize(&self) -> Dfa {
        let width = self.alphabet().len();

        // Restrict to reachable states.
        let mut compact = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial()];
        compact[self.initial()] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for s in 0..width {
                let t = self.step(q, s);
                if compact[t] == usize::MAX {
                    compact[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        let n = order.len();
        let delta: Vec<usize> = order
            .iter()
            .flat_map(|&q| (0..width).map(move |s| (q, s)))
            .map(|(q, s)| compact[self.step(q, s)])
            .collect();
        let accepting: Vec<bool> = order.iter().map(|&q| self.is_accepting(q)).collect();

        let block_of = refine(n, width, &delta, &accepting);

        // Canonical numbering of the quotient.
        let mut rename = vec![usize::MAX; n];
        let mut representative = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        rename[block_of[0]] = 0;
        representative.push(0);
        while let Some(q) = queue.pop_front() {
            for s in 0..width {
                let t = delta[q * width + s];
                let b = block_of[t];
                if rename[b] == usize::MAX {
                    rename[b] = representative.len();
                    representative.push(t);
                    queue.push_back(t);
                }
            }
        }
        let new_delta = representative
            .iter()
            .flat_map(|&q| (0..width).map(move |s| (q, s)))
            .map(|(q, s)| rename[block_of[delta[q * width + s]]])
            .collect();
        let new_accepting = representative.iter().map(|&q| accepting[q]).collect();
        Dfa::from_parts(self.alphabet().clone(), 0, new_accepting, new_delta)
    }
}

/// Coarsest partition of `0..n` compatible with acceptance and transitions.
fn refine(n: usize, width: usize, delta: &[usize], accepting: &[bool]) -> Vec<usize> {
    // inverse[s] in CSR form: predecessors of t on s are
    // inv_list[s][inv_start[s][t]..inv_start[s][t + 1]]
    let mut inv_start = vec![vec![0usize; n + 1]; width];
    let mut inv_list = vec![vec![0usize; n]; width];
    for s in 0..width {
        for q in 0..n {
            inv_start[s][delta[q * width + s] + 1] += 1;
        }
        for t in 0..n {
            inv_start[s][t + 1] += inv_start[s][t];
        }
        let mut fill = inv_start[s].clone();
        for q in 0..n {
            let t = delta[q * width + s];
            inv_list[s][fill[t]] = q;
            fill[t] += 1;
        }
    }

    let (acc, rej): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| accepting[q]);
    let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
    let mut block_of = vec![0; n];
    for (b, members) in blocks.iter().enumerate() {
        for &q in members {
            block_of[q] = b;
        }
    }
    let mut in_work = vec![true; blocks.len()];
    let mut work: Vec<usize> = (0..blocks.len()).collect();
    let mut marked = vec![false; n];
    let mut count: Vec<usize> = vec![0; blocks.len()];

    while let Some(b) = work.pop() {
        in_work[b] = false;
        let splitter = blocks[b].clone();
        for s in 0..width {
            let mut hit = Vec::new();
            let mut touched = Vec::new();
            for &t in &splitter {
                for &q in &inv_list[s][inv_start[s][t]..inv_start[s][t + 1]] {
                    if !marked[q] {
                        marked[q] = true;
                        hit.push(q);
                        let bl = block_of[q];
                        if count[bl] == 0 {
                            touched.push(bl);
                        }
                        count[bl] += 1;
                    }
                }
            }
            for bl in touched {
                if count[bl] < blocks[bl].len() {
                    let (inside, outside): (Vec<usize>, Vec<usize>) =
                        blocks[bl].iter().partition(|&&q| marked[q]);
                    let new_id = blocks.len();
                    for &q in &inside {
                        block_of[q] = new_id;
                    }
                    let smaller_is_new = inside.len() <= outside.len();
                    blocks[bl] = outside;
                    blocks.push(inside);
                    count.push(0);
                    in_work.push(false);
                    if in_work[bl] {
                        in_work[new_id] = true;
                        work.push(new_id);
                    } else {
                        let pick = if smaller_is_new { new_id } else { bl };
                        in_work[pick] = true;
                        work.push(pick);
                    }
                }
                count[bl] = 0;
            }
            for q in hit {
                marked[q] = false;
            }
        }
    }
    block_of
}
