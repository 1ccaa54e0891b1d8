//! Boolean-semiring topological theories attached to regular languages and
//! circular regular languages.
//!
//! The crate is organised bottom-up:
//!
//! * [`boolsemi`]: finite semimodules over the Boolean semiring B = {0, 1},
//!   their duals, tensor products, and projectivity tests.
//! * [`lang`]: regular-language machinery (regexes, NFAs, minimal DFAs,
//!   transition monoids, rotation closures, cyclic derivatives).
//! * [`circauto`]: deterministic circular finite automata with commuting
//!   left and right transition actions.
//! * [`theory`]: the state spaces A(+), A(-), A(+-) and A(eps) of an
//!   evaluation (a pair of an ordinary and a circular regular language),
//!   decomposition of the identity, and TQFT detection.
//! * [`pairing`]: theories generated by a single pairing matrix, and the
//!   four dot-free theories over the empty alphabet.
//! * [`measure`]: language-complexity measures derived from state spaces.

pub mod boolsemi;
pub mod circauto;
pub mod error;
pub mod lang;
pub mod limits;
pub mod measure;
pub mod pairing;
pub mod theory;

pub use boolsemi::{Bits, BoolMatrix, Semimodule, TensorSpace};
pub use circauto::{mixed_automaton, CircularDfa, MixedAutomaton, MixedKind, MixedState};
pub use error::Error;

pub use lang::{Alphabet, CircularWord, Dfa, Nfa, Regex, TransitionMonoid, Word};
pub use limits::Limits;

