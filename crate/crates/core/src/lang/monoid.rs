use std::collections::{BTreeMap, VecDeque};

use super::{Dfa, Word};

/// The transition monoid of a DFA; on a minimal DFA this is the
/// syntactic monoid of its language.
///
/// Elements are the distinct transformations of the state set induced by
/// words. Each carries the shortest representative word, found by BFS
/// with lexicographic tie-breaking, so element 0 is the identity with
/// the empty representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMonoid {
    dfa: Dfa,
    maps: Vec<Vec<usize>>,
    reps: Vec<Word>,
    index: BTreeMap<Vec<usize>, usize>,
    mult: Vec<Vec<usize>>,
}

impl TransitionMonoid {
    /// Builds the transition monoid; minimize the DFA first to get the
    /// syntactic monoid.
    pub fn new(dfa: &Dfa) -> Self {
        let k = dfa.alphabet.len();
        let letter_maps: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..dfa.states).map(|q| dfa.delta[q][a]).collect())
            .collect();
        let identity: Vec<usize> = (0..dfa.states).collect();
        let mut index = BTreeMap::new();
        let mut maps = vec![identity.clone()];
        let mut reps: Vec<Word> = vec![Vec::new()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (a, lm) in letter_maps.iter().enumerate() {
                // representative word followed by the letter a
                let composed: Vec<usize> = maps[i].iter().map(|&q| lm[q]).collect();
                if !index.contains_key(&composed) {
                    let mut w = reps[i].clone();
                    w.push(a as u8);
                    index.insert(composed.clone(), maps.len());
                    maps.push(composed);
                    reps.push(w);
                    queue.push_back(maps.len() - 1);
                }
            }
        }
        let n = maps.len();
        let mut mult = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                // word rep(i)rep(j): apply map i, then map j
                let composed: Vec<usize> = maps[i].iter().map(|&q| maps[j][q]).collect();
                mult[i][j] = index[&composed];
            }
        }
        TransitionMonoid {
            dfa: dfa.clone(),
            maps,
            reps,
            index,
            mult,
        }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn reps(&self) -> &[Word] {
        &self.reps
    }

    pub fn rep(&self, e: usize) -> &Word {
        &self.reps[e]
    }

    pub fn map(&self, e: usize) -> &[usize] {
        &self.maps[e]
    }

    pub fn mul(&self, e1: usize, e2: usize) -> usize {
        self.mult[e1][e2]
    }

    pub fn class_of_word(&self, w: &[u8]) -> usize {
        let map: Vec<usize> = (0..self.dfa.states).map(|q| self.dfa.run(q, w)).collect();
        self.index[&map]
    }

    /// Whether the words of this class belong to the DFA's language.
    pub fn accepts(&self, e: usize) -> bool {
        self.dfa.accepting.contains(&self.maps[e][self.dfa.init])
    }
}
