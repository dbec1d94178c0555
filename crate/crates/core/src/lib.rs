//! Deciding membership of regular languages in the boolean closure of
//! existential first-order sentences with regular numerical predicates.
//!
//! Given a regular language `L`, a block size `d` and a term count `k`,
//! [`decompose::decompose`] decides whether `L` is `ψ1 − (ψ2 − (… − ψk))` for
//! universal sentences `ψi` with `d` quantified variables each, and on
//! success returns the `ψi` as automata together with the numerical
//! predicates that define them.
//!
//! The modules build on each other:
//!
//! - [`automata`]: finite automata over named alphabets.
//! - [`structures`]: words with tagged positions, closures over them.
//! - [`logic`]: sentences, their compiler to automata and a brute-force
//!   evaluator.
//! - [`ceiling`]: the smallest universal over-approximation of a language.
//! - [`hausdorff`]: boolean functions as iterated differences of monotone
//!   ones.
//! - [`decompose`]: the decision procedure and parameter search.

pub mod automata;
pub mod ceiling;
pub mod decompose;
pub mod hausdorff;
pub mod logic;
pub mod structures;
