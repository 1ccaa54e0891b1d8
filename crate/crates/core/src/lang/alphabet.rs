use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A word over an [`Alphabet`], stored as letter indices.
pub type Word = Vec<u8>;

/// An ordered set of distinct lowercase ASCII letters. The empty
/// alphabet is allowed; over it the only word is the empty word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self, Error> {
        let mut seen = Vec::new();
        for c in letters.chars() {
            if !c.is_ascii_lowercase() {
                return Err(Error::UnknownLetter { letter: c });
            }
            if seen.contains(&c) {
                return Err(Error::UnknownLetter { letter: c });
            }
            seen.push(c);
        }
        Ok(Alphabet { letters: seen })
    }

    pub fn empty() -> Self {
        Alphabet { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, i: u8) -> char {
        self.letters[i as usize]
    }

    pub fn index(&self, c: char) -> Option<u8> {
        self.letters.iter().position(|&l| l == c).map(|i| i as u8)
    }

    pub fn word_from_str(&self, s: &str) -> Result<Word, Error> {
        s.chars()
            .map(|c| self.index(c).ok_or(Error::UnknownLetter { letter: c }))
            .collect()
    }

    pub fn format_word(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&i| self.letter(i)).collect()
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for a in 0..self.letters.len() as u8 {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `max_len`, shortest first, then
    /// lexicographic.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|l| self.words_of_len(l)).collect()
    }
}

/// A word up to cyclic rotation, stored in its lexicographically least
/// rotation so that rotations compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CircularWord {
    word: Word,
}

impl CircularWord {
    pub fn new(w: &[u8]) -> Self {
        if w.is_empty() {
            return CircularWord { word: Vec::new() };
        }
        let best = (0..w.len())
            .map(|i| {
                let mut r = w[i..].to_vec();
                r.extend_from_slice(&w[..i]);
                r
            })
            .min()
            .unwrap();
        CircularWord { word: best }
    }

    pub fn as_word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn rotations(&self) -> Vec<Word> {
        if self.word.is_empty() {
            return vec![Vec::new()];
        }
        (0..self.word.len())
            .map(|i| {
                let mut r = self.word[i..].to_vec();
                r.extend_from_slice(&self.word[..i]);
                r
            })
            .collect()
    }
}

impl fmt::Display for CircularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.word {
            write!(f, "{}", i)?;
        }
        Ok(())
    }
}
