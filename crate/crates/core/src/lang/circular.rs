use std::collections::BTreeSet;

use super::{CircularWord, Dfa, EpsNfa, Nfa, Word};
use crate::error::Error;

/// Minimal DFA of `rot(L) = { yx : xy in L }`.
///
/// The NFA guesses the split state `p = delta(init, x)`: phase 1 reads
/// `y` from `p`, bridges at an accepting state back to the initial
/// state, and phase 2 reads `x`, accepting when the guess is confirmed.
pub fn rotation_closure(dfa: &Dfa) -> Dfa {
    let n = dfa.states;
    let k = dfa.alphabet.len();
    // state encoding: (p, q, phase) -> ((phase * n) + q) * n + p is
    // awkward; use p * 2n + phase * n + q
    let enc = |p: usize, q: usize, phase: usize| (p * 2 + phase) * n + q;
    let mut nfa = EpsNfa::new(dfa.alphabet.clone(), 2 * n * n);
    for p in 0..n {
        nfa.inits.insert(enc(p, p, 0));
        for q in 0..n {
            for phase in 0..2 {
                for a in 0..k {
                    nfa.delta[enc(p, q, phase)][a].insert(enc(p, dfa.delta[q][a], phase));
                }
            }
            if dfa.accepting.contains(&q) {
                nfa.eps[enc(p, q, 0)].insert(enc(p, dfa.init, 1));
            }
        }
        nfa.accepting.insert(enc(p, p, 1));
    }
    nfa.to_nfa().determinize().minimize()
}

/// Whether `L = rot(L)`.
pub fn is_rotation_closed(dfa: &Dfa) -> bool {
    dfa.minimize()
        .equivalent(&rotation_closure(dfa))
        .expect("same alphabet")
}

/// Word-level cyclic derivative: for each occurrence of `a` on the
/// circle, read the rest of the circle starting just after it.
/// Duplicates collapse since coefficients live in B.
pub fn cyclic_derivative_word(w: &CircularWord, a: u8) -> BTreeSet<Word> {
    let v = w.as_word();
    let mut out = BTreeSet::new();
    for i in 0..v.len() {
        if v[i] == a {
            let mut d = v[i + 1..].to_vec();
            d.extend_from_slice(&v[..i]);
            out.insert(d);
        }
    }
    out
}

/// Language-level cyclic derivative of a rotation-closed language,
/// built from two bridged copies of the recognizing automaton.
///
/// A derivative word `d` of a circular word through an occurrence of
/// `a` splits as `d = u v` with `v a u` in the language. The NFA
/// guesses `s = delta(init, v a)`, reads `u` from `s` in the first
/// copy, bridges at an accepting state to the initial state of the
/// second copy, reads `v` there, and accepts at `p` when
/// `delta(p, a) = s` confirms the guess.
pub fn cyclic_derivative_lang(dfa: &Dfa, a: u8) -> Result<Nfa, Error> {
    if !is_rotation_closed(dfa) {
        return Err(Error::NotCircular);
    }
    let dfa = dfa.minimize();
    let n = dfa.states;
    let k = dfa.alphabet.len();
    let enc = |s: usize, q: usize, phase: usize| (s * 2 + phase) * n + q;
    let mut nfa = EpsNfa::new(dfa.alphabet.clone(), 2 * n * n);
    for s in 0..n {
        nfa.inits.insert(enc(s, s, 0));
        for q in 0..n {
            for phase in 0..2 {
                for b in 0..k {
                    nfa.delta[enc(s, q, phase)][b].insert(enc(s, dfa.delta[q][b], phase));
                }
            }
            if dfa.accepting.contains(&q) {
                nfa.eps[enc(s, q, 0)].insert(enc(s, dfa.init, 1));
            }
            if dfa.delta[q][a as usize] == s {
                nfa.accepting.insert(enc(s, q, 1));
            }
        }
    }
    Ok(nfa.to_nfa())
}

/// All circular words of length at most `max_len` accepted by a
/// rotation-closed DFA, canonically rotated and deduplicated.
pub fn circular_words_up_to(dfa: &Dfa, max_len: usize) -> BTreeSet<CircularWord> {
    dfa.accepted_up_to(max_len)
        .into_iter()
        .map(|w| CircularWord::new(&w))
        .collect()
}

/// Brute-force language-level derivative for oracle tests.
pub fn cyclic_derivative_oracle(dfa: &Dfa, a: u8, max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in circular_words_up_to(dfa, max_len) {
        out.extend(cyclic_derivative_word(&w, a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn abc() -> Alphabet {
        Alphabet::new("abc").unwrap()
    }

    #[test]
    fn rotation_closure_contains_language_and_is_idempotent() {
        let d = Dfa::from_regex_str("(a+b)*b(a+b)", &ab()).unwrap();
        let rot = rotation_closure(&d);
        assert!(d.subset_of(&rot).unwrap());
        assert!(rot.equivalent(&rotation_closure(&rot)).unwrap());
        assert!(!is_rotation_closed(&d));
        assert!(is_rotation_closed(&rot));
    }

    #[test]
    fn sigma_star_and_aa_language_rotation_closed() {
        let d = Dfa::from_regex_str("(a+b)*", &ab()).unwrap();
        assert!(is_rotation_closed(&d));
        // all words containing aa, plus the wrap-around a...a words
        let faa = Dfa::from_regex_str("(a+b)*aa(a+b)*+a(a+b)*a", &ab()).unwrap();
        assert!(is_rotation_closed(&faa));
    }

    #[test]
    fn rotation_oracle_on_small_words() {
        let d = Dfa::from_regex_str("ab*", &ab()).unwrap();
        let rot = rotation_closure(&d);
        for w in ab().words_up_to(6) {
            let in_rot = (0..=w.len().max(1) - 1).any(|i| {
                let mut y = w[i..].to_vec();
                y.extend_from_slice(&w[..i]);
                d.accepts(&y)
            }) || (w.is_empty() && d.accepts(&[]));
            assert_eq!(rot.accepts(&w), in_rot, "word {:?}", w);
        }
    }

    #[test]
    fn word_derivative_fixtures() {
        let a = abc();
        let w = CircularWord::new(&a.word_from_str("babbcaa").unwrap());
        let d = cyclic_derivative_word(&w, 0);
        let expect: BTreeSet<Word> = ["bbcaab", "ababbc", "babbca"]
            .iter()
            .map(|s| a.word_from_str(s).unwrap())
            .collect();
        assert_eq!(d, expect);

        let w = CircularWord::new(&ab().word_from_str("baba").unwrap());
        let d = cyclic_derivative_word(&w, 0);
        let expect: BTreeSet<Word> = BTreeSet::from([ab().word_from_str("bab").unwrap()]);
        assert_eq!(d, expect);

        let w = CircularWord::new(&ab().word_from_str("bb").unwrap());
        assert!(cyclic_derivative_word(&w, 0).is_empty());
    }

    #[test]
    fn lang_derivative_agrees_with_word_oracle() {
        let faa = Dfa::from_regex_str("(a+b)*aa(a+b)*+a(a+b)*a", &ab()).unwrap();
        let der = cyclic_derivative_lang(&faa, 0).unwrap();
        let oracle = cyclic_derivative_oracle(&faa, 0, 8);
        for w in ab().words_up_to(7) {
            assert_eq!(der.accepts(&w), oracle.contains(&w), "word {:?}", w);
        }
    }

    #[test]
    fn lang_derivative_rejects_non_circular() {
        let d = Dfa::from_regex_str("ab", &ab()).unwrap();
        assert_eq!(cyclic_derivative_lang(&d, 0).unwrap_err(), Error::NotCircular);
    }

    #[test]
    fn derivative_of_sigma_star_over_a_is_a_star() {
        let a = Alphabet::new("a").unwrap();
        let d = Dfa::from_regex_str("a*", &a).unwrap();
        let der = cyclic_derivative_lang(&d, 0).unwrap();
        let astar = Dfa::from_regex_str("a*", &a).unwrap();
        assert!(der.determinize().minimize().equivalent(&astar).unwrap());
    }

    #[test]
    fn derivative_by_absent_letter_is_empty() {
        let d = Dfa::from_regex_str("a*", &ab()).unwrap();
        let der = cyclic_derivative_lang(&d, 1).unwrap();
        assert!(der.accepted_up_to(6).is_empty());
    }
}
