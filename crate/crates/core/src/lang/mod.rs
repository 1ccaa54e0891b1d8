//! Regular-language toolkit: regexes, automata, minimization, syntactic
//! monoids, rotation closures, and cyclic derivatives.

mod alphabet;
mod circular;
mod dfa;
mod monoid;
mod nfa;
mod regex;

pub use alphabet::{Alphabet, CircularWord, Word};
pub use circular::{
    circular_words_up_to, cyclic_derivative_lang, cyclic_derivative_oracle,
    cyclic_derivative_word, is_rotation_closed, rotation_closure,
};
pub use dfa::Dfa;
pub use monoid::TransitionMonoid;
pub use nfa::Nfa;
pub(crate) use nfa::EpsNfa;
pub use regex::Regex;
