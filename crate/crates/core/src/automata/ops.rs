use std::collections::HashMap;

use super::{same_alphabet, AutomataError, Dfa, Word, DEFAULT_STATE_CAP};

/// Binary and unary language operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
    /// Words in the left operand and not in the right.
    Diff,
    Xor,
    Not,
}

impl BoolOp {
    fn combine(self, left: bool, right: bool) -> bool {
        match self {
            BoolOp::And => left && right,
            BoolOp::Or => left || right,
            BoolOp::Diff => left && !right,
            BoolOp::Xor => left != right,
            BoolOp::Not => !left,
        }
    }
}

/// Outcome of a decision procedure: the verdict and, when it is negative, a
/// shortlex-least counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Word>,
}

impl Decision {
    fn from_witness(witness: Option<Word>) -> Self {
        Decision {
            holds: witness.is_none(),
            witness,
        }
    }
}

impl Dfa {
    pub fn complement(&self) -> Dfa {
        let flipped = (0..self.num_states()).map(|q| !self.is_accepting(q)).collect();
        self.with_acceptance(flipped).minimize()
    }

    /// Product construction over the reachable pairs, minimized.
    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa, AutomataError> {
        self.product_with_cap(other, op, DEFAULT_STATE_CAP)
    }

    pub fn product_with_cap(
        &self,
        other: &Dfa,
        op: BoolOp,
        cap: usize,
    ) -> Result<Dfa, AutomataError> {
        if op == BoolOp::Not {
            return Ok(self.complement());
        }
        same_alphabet(self.alphabet(), other.alphabet())?;
        let width = self.alphabet().len();
        let start = (self.initial(), other.initial());
        let mut index = HashMap::from([(start, 0usize)]);
        let mut pairs = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for s in 0..width {
                let next = (self.step(p, s), other.step(q, s));
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if pairs.len() >= cap {
                            return Err(AutomataError::StateLimit { limit: cap });
                        }
                        index.insert(next, pairs.len());
                        pairs.push(next);
                        pairs.len() - 1
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| op.combine(self.is_accepting(p), other.is_accepting(q)))
            .collect();
        Ok(Dfa::from_parts(self.alphabet().clone(), 0, accepting, delta).minimize())
    }

    /// Applies `op`; `rhs` is required for every operation except `Not`.
    pub fn boolean(op: BoolOp, lhs: &Dfa, rhs: Option<&Dfa>) -> Result<Dfa, AutomataError> {
        match (op, rhs) {
            (BoolOp::Not, _) => Ok(lhs.complement()),
            (_, Some(rhs)) => lhs.product(rhs, op),
            (_, None) => panic!("binary operation {op:?} needs two operands"),
        }
    }

    pub fn and(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, BoolOp::And)
    }

    pub fn or(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, BoolOp::Or)
    }

    pub fn diff(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, BoolOp::Diff)
    }

    /// Emptiness; the witness is the shortlex-least accepted word.
    pub fn decide_empty(&self) -> Decision {
        Decision::from_witness(self.shortest_word())
    }

    /// Inclusion; the witness is the shortlex-least word of `self - other`.
    pub fn decide_subset(&self, other: &Dfa) -> Result<Decision, AutomataError> {
        Ok(Decision::from_witness(self.diff(other)?.shortest_word()))
    }

    /// Equivalence; the witness is the shortlex-least word of the symmetric
    /// difference.
    pub fn decide_equiv(&self, other: &Dfa) -> Result<Decision, AutomataError> {
        Ok(Decision::from_witness(
            self.product(other, BoolOp::Xor)?.shortest_word(),
        ))
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool, AutomataError> {
        same_alphabet(self.alphabet(), other.alphabet())?;
        Ok(self.minimize() == other.minimize())
    }

    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool, AutomataError> {
        Ok(self.diff(other)?.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::automata::random::random_dfa;
    use crate::automata::Alphabet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ab() -> Arc<Alphabet> {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn a_star() -> Dfa {
        Dfa::from_fn(ab(), (), |_| true, |_, s| (s == 0).then_some(())).unwrap()
    }

    fn a_star_b() -> Dfa {
        Dfa::from_fn(ab(), false, |&done| done, |&done, s| match (done, s) {
            (false, 0) => Some(false),
            (false, 1) => Some(true),
            _ => None,
        })
        .unwrap()
    }

    fn brute_shortest_difference(x: &Dfa, y: &Dfa, symmetric: bool) -> Option<Word> {
        x.alphabet().words_up_to(8).find(|w| {
            let (l, r) = (x.accepts(w), y.accepts(w));
            if symmetric {
                l != r
            } else {
                l && !r
            }
        })
    }

    #[test]
    fn self_difference_is_empty() {
        let l = a_star_b();
        assert!(l.diff(&l).unwrap().is_empty());
        assert_eq!(l.complement().complement(), l);
    }

    #[test]
    fn decisions_with_witnesses() {
        assert_eq!(
            Dfa::empty(ab()).decide_empty(),
            Decision { holds: true, witness: None }
        );
        let all = Dfa::universal(ab());
        assert!(a_star().decide_subset(&all).unwrap().holds);

        // The shortlex-least word on which a*b and a* disagree is the empty word;
        // the least word of a*b outside a* is "b".
        let eq = a_star_b().decide_equiv(&a_star()).unwrap();
        assert_eq!(eq.witness, brute_shortest_difference(&a_star_b(), &a_star(), true));
        assert_eq!(eq, Decision { holds: false, witness: Some(vec![]) });
        let sub = a_star_b().decide_subset(&a_star()).unwrap();
        assert_eq!(sub, Decision { holds: false, witness: Some(vec![1]) });
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        let err = a_star().and(&Dfa::universal(abc)).unwrap_err();
        assert!(matches!(err, AutomataError::AlphabetMismatch { .. }));
    }

    #[test]
    fn intersection_distributes_over_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = random_dfa(&mut rng, ab(), 4);
            let q = random_dfa(&mut rng, ab(), 4);
            let r = random_dfa(&mut rng, ab(), 4);
            let left = p.and(&q.diff(&r).unwrap()).unwrap();
            let right = p.and(&q).unwrap().diff(&r).unwrap();
            assert!(left.decide_equiv(&right).unwrap().holds);
        }
    }

    #[test]
    fn witnesses_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = random_dfa(&mut rng, ab(), 3);
            let y = random_dfa(&mut rng, ab(), 3);
            // Distinct minimal automata with at most 3 states differ on a word
            // of length < 6.
            let eq = x.decide_equiv(&y).unwrap();
            assert_eq!(eq.witness, brute_shortest_difference(&x, &y, true));
            assert_eq!(eq.holds, x.equivalent(&y).unwrap());
            let sub = x.decide_subset(&y).unwrap();
            assert_eq!(sub.witness, brute_shortest_difference(&x, &y, false));
        }
    }

    #[test]
    fn product_cap() {
        let x = a_star_b();
        assert_eq!(
            x.product_with_cap(&a_star(), BoolOp::And, 1),
            Err(AutomataError::StateLimit { limit: 1 })
        );
    }
}
