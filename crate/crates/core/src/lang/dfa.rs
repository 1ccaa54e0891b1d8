use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Alphabet, Nfa, Regex, Word};
use crate::error::Error;

/// A complete deterministic finite automaton: `delta` is total, with an
/// explicit dead state where needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub states: usize,
    pub init: usize,
    pub accepting: BTreeSet<usize>,
    /// `delta[q][a]` is the successor of `q` on letter `a`.
    pub delta: Vec<Vec<usize>>,
}

impl Dfa {
    /// Compiles a regex all the way to the unique minimal complete DFA.
    pub fn from_regex_str(text: &str, alphabet: &Alphabet) -> Result<Dfa, Error> {
        let ast = Regex::parse(text, alphabet)?;
        Ok(Nfa::from_regex(&ast, alphabet).determinize().minimize())
    }

    pub fn step(&self, q: usize, a: u8) -> usize {
        self.delta[q][a as usize]
    }

    pub fn run(&self, from: usize, w: &[u8]) -> usize {
        w.iter().fold(from, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[u8]) -> bool {
        self.accepting.contains(&self.run(self.init, w))
    }

    /// The unique minimal complete DFA, states renumbered in BFS order
    /// (letters in alphabet order) from the initial state so equal
    /// languages give identical structures.
    pub fn minimize(&self) -> Dfa {
        let reachable = self.reachable_states();
        // Moore partition refinement on the reachable part
        let mut class: BTreeMap<usize, usize> = reachable
            .iter()
            .map(|&q| (q, usize::from(self.accepting.contains(&q))))
            .collect();
        loop {
            let mut sig: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next: BTreeMap<usize, usize> = BTreeMap::new();
            for &q in &reachable {
                let mut s = vec![class[&q]];
                for a in 0..self.alphabet.len() {
                    s.push(class[&self.delta[q][a]]);
                }
                let n = sig.len();
                let id = *sig.entry(s).or_insert(n);
                next.insert(q, id);
            }
            if next == class {
                break;
            }
            class = next;
        }
        // canonical BFS numbering of the classes
        let mut order: BTreeMap<usize, usize> = BTreeMap::new();
        let mut rep_of: Vec<usize> = Vec::new();
        let mut queue = VecDeque::new();
        order.insert(class[&self.init], 0);
        rep_of.push(self.init);
        queue.push_back(self.init);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let r = self.delta[q][a];
                if let std::collections::btree_map::Entry::Vacant(e) = order.entry(class[&r]) {
                    e.insert(rep_of.len());
                    rep_of.push(r);
                    queue.push_back(r);
                }
            }
        }
        let states = rep_of.len();
        let delta = rep_of
            .iter()
            .map(|&q| {
                (0..self.alphabet.len())
                    .map(|a| order[&class[&self.delta[q][a]]])
                    .collect()
            })
            .collect();
        let accepting = rep_of
            .iter()
            .enumerate()
            .filter(|(_, &q)| self.accepting.contains(&q))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            states,
            init: 0,
            accepting,
            delta,
        }
    }

    fn reachable_states(&self) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.init]);
        let mut queue = VecDeque::from([self.init]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let r = self.delta[q][a];
                if seen.insert(r) {
                    queue.push_back(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Product automaton with acceptance decided by `accept`.
    fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa, Error> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let n = other.states;
        let states = self.states * n;
        let mut delta = Vec::with_capacity(states);
        let mut accepting = BTreeSet::new();
        for q in 0..self.states {
            for r in 0..n {
                let row = (0..k).map(|a| self.delta[q][a] * n + other.delta[r][a]).collect();
                delta.push(row);
                if accept(self.accepting.contains(&q), other.accepting.contains(&r)) {
                    accepting.insert(q * n + r);
                }
            }
        }
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            states,
            init: self.init * n + other.init,
            accepting,
            delta,
        })
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa, Error> {
        self.product(other, |x, y| x && y)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, Error> {
        self.product(other, |x, y| x || y)
    }

    pub fn complement(&self) -> Dfa {
        let accepting = (0..self.states).filter(|q| !self.accepting.contains(q)).collect();
        Dfa {
            accepting,
            ..self.clone()
        }
    }

    pub fn is_language_empty(&self) -> bool {
        self.reachable_states()
            .iter()
            .all(|q| !self.accepting.contains(q))
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool, Error> {
        let sym = self
            .intersect(&other.complement())?
            .union(&other.intersect(&self.complement())?)?;
        Ok(sym.is_language_empty())
    }

    pub fn subset_of(&self, other: &Dfa) -> Result<bool, Error> {
        Ok(self.intersect(&other.complement())?.is_language_empty())
    }

    /// Minimal DFA of the reversed language.
    pub fn opposite(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut delta = vec![vec![BTreeSet::new(); k]; self.states];
        for q in 0..self.states {
            for a in 0..k {
                delta[self.delta[q][a]][a].insert(q);
            }
        }
        Nfa {
            alphabet: self.alphabet.clone(),
            states: self.states,
            inits: self.accepting.clone(),
            accepting: BTreeSet::from([self.init]),
            delta,
        }
        .determinize()
        .minimize()
    }

    /// Shortest representative word reaching each state, BFS order with
    /// lexicographic tie-breaking; unreachable states get `None`.
    pub fn representatives(&self) -> Vec<Option<Word>> {
        let mut reps: Vec<Option<Word>> = vec![None; self.states];
        let mut queue = VecDeque::new();
        reps[self.init] = Some(Vec::new());
        queue.push_back(self.init);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() as u8 {
                let r = self.step(q, a);
                if reps[r].is_none() {
                    let mut w = reps[q].clone().unwrap();
                    w.push(a);
                    reps[r] = Some(w);
                    queue.push_back(r);
                }
            }
        }
        reps
    }

    /// Words of length at most `max_len` accepted, for oracle tests.
    pub fn accepted_up_to(&self, max_len: usize) -> Vec<Word> {
        self.alphabet
            .words_up_to(max_len)
            .into_iter()
            .filter(|w| self.accepts(w))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n");
        for q in 0..self.states {
            let shape = if self.accepting.contains(&q) {
                "doublecircle"
            } else {
                "circle"
            };
            out.push_str(&format!("  q{} [shape={}];\n", q, shape));
        }
        out.push_str("  start [shape=none,label=\"\"];\n");
        out.push_str(&format!("  start -> q{};\n", self.init));
        for q in 0..self.states {
            for a in 0..self.alphabet.len() {
                out.push_str(&format!(
                    "  q{} -> q{} [label=\"{}\"];\n",
                    q,
                    self.delta[q][a],
                    self.alphabet.letter(a as u8)
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    alphabet: Vec<char>,
    states: usize,
    init: usize,
    accepting: Vec<usize>,
    delta: Vec<Vec<usize>>,
}

impl Serialize for Dfa {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DfaJson {
            alphabet: self.alphabet.letters().to_vec(),
            states: self.states,
            init: self.init,
            accepting: self.accepting.iter().copied().collect(),
            delta: self.delta.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dfa {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = DfaJson::deserialize(d)?;
        let alphabet = Alphabet::new(&j.alphabet.iter().collect::<String>())
            .map_err(|e| D::Error::custom(e.to_string()))?;
        if j.states == 0
            || j.init >= j.states
            || j.delta.len() != j.states
            || j.delta.iter().any(|r| r.len() != alphabet.len())
            || j.accepting.iter().any(|&q| q >= j.states)
            || j.delta.iter().flatten().any(|&q| q >= j.states)
        {
            return Err(D::Error::custom("inconsistent DFA tables"));
        }
        Ok(Dfa {
            alphabet,
            states: j.states,
            init: j.init,
            accepting: j.accepting.into_iter().collect(),
            delta: j.delta,
        })
    }
}
