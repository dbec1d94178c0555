//! Random formulas over the letters `a` and `b` for property tests.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Formula;

const BOUND_POOL: &[&str] = &["x", "y", "z"];
const FREE_POOL: &[&str] = &["u", "v"];

pub(crate) fn random_formula<R: Rng>(
    rng: &mut R,
    depth: usize,
    bound: &mut Vec<String>,
    free_ok: bool,
    allow_div: bool,
) -> Formula {
    let mut vars: Vec<String> = bound.clone();
    if free_ok {
        vars.extend(FREE_POOL.iter().map(|v| v.to_string()));
    }
    let fresh: Vec<&str> = BOUND_POOL
        .iter()
        .copied()
        .filter(|v| !bound.iter().any(|b| b == v))
        .collect();
    if depth == 0 || rng.gen_ratio(1, 4) {
        return random_atom(rng, &vars, allow_div);
    }
    let sub = |rng: &mut R, bound: &mut Vec<String>| {
        random_formula(rng, depth - 1, bound, free_ok, allow_div)
    };
    match rng.gen_range(0..6) {
        0 => Formula::not(sub(rng, bound)),
        1 => Formula::and(sub(rng, bound), sub(rng, bound)),
        2 => Formula::or(sub(rng, bound), sub(rng, bound)),
        3 => Formula::implies(sub(rng, bound), sub(rng, bound)),
        _ if fresh.is_empty() => random_atom(rng, &vars, allow_div),
        k => {
            let count = rng.gen_range(1..=fresh.len().min(2));
            let chosen: Vec<String> = fresh[..count].iter().map(|v| v.to_string()).collect();
            let before = bound.len();
            bound.extend(chosen.iter().cloned());
            let body = sub(rng, bound);
            bound.truncate(before);
            if k == 4 {
                Formula::exists(chosen, body)
            } else {
                Formula::forall(chosen, body)
            }
        }
    }
}

fn random_atom<R: Rng>(rng: &mut R, vars: &[String], allow_div: bool) -> Formula {
    let q = rng.gen_range(1..=3);
    let r = rng.gen_range(0..q);
    if vars.is_empty() {
        return match rng.gen_range(0..3) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::ModLen { r, q },
        };
    }
    let mut pick = || vars[rng.gen_range(0..vars.len())].clone();
    let (x, y) = (pick(), pick());
    let kinds = if allow_div { 8 } else { 7 };
    match rng.gen_range(0..kinds) {
        0 | 1 => Formula::Letter(if rng.gen() { "a" } else { "b" }.into(), x),
        2 => Formula::Less(x, y),
        3 => Formula::EqVar(x, y),
        4 => Formula::ModPos { var: x, r, q },
        5 => Formula::ModLen { r, q },
        6 => {
            if rng.gen() {
                Formula::True
            } else {
                Formula::False
            }
        }
        _ => Formula::Divides(x, y),
    }
}

/// Formulas with free variables drawn from `u`, `v`, including `div`.
pub(crate) fn arb_formula(depth: usize) -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_formula(&mut rng, depth, &mut Vec::new(), true, true)
    })
}

/// Closed formulas without evaluator-only atoms.
pub(crate) fn arb_regular_sentence(depth: usize) -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_formula(&mut rng, depth, &mut Vec::new(), false, false)
    })
}
