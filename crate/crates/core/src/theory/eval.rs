use crate::error::Error;
use crate::lang::{is_rotation_closed, Alphabet, CircularWord, Dfa, Word};

/// An evaluation: an interval language together with a circular
/// language over the same alphabet. Both automata are stored minimal,
/// and the circular one is certified rotation-closed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub alphabet: Alphabet,
    pub dfa_i: Dfa,
    pub dfa_circ: Dfa,
}

impl Evaluation {
    pub fn new(dfa_i: &Dfa, dfa_circ: &Dfa) -> Result<Evaluation, Error> {
        if dfa_i.alphabet != dfa_circ.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if !is_rotation_closed(dfa_circ) {
            return Err(Error::NotCircular);
        }
        Ok(Evaluation {
            alphabet: dfa_i.alphabet.clone(),
            dfa_i: dfa_i.minimize(),
            dfa_circ: dfa_circ.minimize(),
        })
    }

    pub fn from_regexes(interval: &str, circular: &str, alphabet: &Alphabet) -> Result<Evaluation, Error> {
        let dfa_i = Dfa::from_regex_str(interval, alphabet)?;
        let dfa_circ = Dfa::from_regex_str(circular, alphabet)?;
        Evaluation::new(&dfa_i, &dfa_circ)
    }

    /// Interval evaluation of a word.
    pub fn alpha_i(&self, w: &[u8]) -> bool {
        self.dfa_i.accepts(w)
    }

    /// Circular evaluation of any linearization of a circular word.
    pub fn alpha_circ(&self, w: &[u8]) -> bool {
        self.dfa_circ.accepts(w)
    }

    /// Evaluation of a disjoint union of intervals and circles: the
    /// product (AND) over the components, so the empty configuration
    /// evaluates to 1.
    pub fn alpha_eval(&self, intervals: &[Word], circles: &[CircularWord]) -> bool {
        intervals.iter().all(|w| self.alpha_i(w))
            && circles.iter().all(|c| self.alpha_circ(c.as_word()))
    }
}
