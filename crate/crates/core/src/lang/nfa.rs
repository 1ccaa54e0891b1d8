use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Alphabet, Dfa, Regex, Word};

/// A nondeterministic finite automaton (without epsilon moves).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub states: usize,
    pub inits: BTreeSet<usize>,
    pub accepting: BTreeSet<usize>,
    /// `delta[q][a]` is the set of successors of `q` on letter `a`.
    pub delta: Vec<Vec<BTreeSet<usize>>>,
}

/// Internal epsilon-NFA used by the Thompson construction and the
/// rotation/derivative constructions; never exposed publicly.
#[derive(Debug, Clone)]
pub(crate) struct EpsNfa {
    pub alphabet: Alphabet,
    pub states: usize,
    pub inits: BTreeSet<usize>,
    pub accepting: BTreeSet<usize>,
    pub delta: Vec<Vec<BTreeSet<usize>>>,
    pub eps: Vec<BTreeSet<usize>>,
}

impl EpsNfa {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        EpsNfa {
            alphabet,
            states,
            inits: BTreeSet::new(),
            accepting: BTreeSet::new(),
            delta: vec![vec![BTreeSet::new(); k]; states],
            eps: vec![BTreeSet::new(); states],
        }
    }

    fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = out.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if out.insert(r) {
                    stack.push(r);
                }
            }
        }
        out
    }

    /// Eliminates epsilon moves.
    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let closures: Vec<BTreeSet<usize>> = (0..self.states)
            .map(|q| self.closure(&BTreeSet::from([q])))
            .collect();
        let mut delta = vec![vec![BTreeSet::new(); k]; self.states];
        for q in 0..self.states {
            for a in 0..k {
                let mut succ = BTreeSet::new();
                for &p in &closures[q] {
                    for &r in &self.delta[p][a] {
                        succ.extend(closures[r].iter().copied());
                    }
                }
                delta[q][a] = succ;
            }
        }
        let accepting = (0..self.states)
            .filter(|&q| closures[q].intersection(&self.accepting).next().is_some())
            .collect();
        Nfa {
            alphabet: self.alphabet.clone(),
            states: self.states,
            inits: self.closure(&self.inits),
            accepting,
            delta,
        }
    }
}

impl Nfa {
    /// Thompson construction followed by epsilon elimination.
    pub fn from_regex(ast: &Regex, alphabet: &Alphabet) -> Nfa {
        let mut b = Builder {
            nfa: EpsNfa::new(alphabet.clone(), 0),
        };
        let (s, t) = b.build(ast);
        b.nfa.inits.insert(s);
        b.nfa.accepting.insert(t);
        b.nfa.to_nfa()
    }

    pub fn accepts(&self, w: &[u8]) -> bool {
        let mut cur = self.inits.clone();
        for &a in w {
            let mut next = BTreeSet::new();
            for &q in &cur {
                next.extend(self.delta[q][a as usize].iter().copied());
            }
            cur = next;
        }
        cur.intersection(&self.accepting).next().is_some()
    }

    /// Subset construction; the result is complete (the empty subset is
    /// the dead state when reachable).
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(self.inits.clone(), 0);
        subsets.push(self.inits.clone());
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut next = BTreeSet::new();
                for &q in &subsets[i] {
                    next.extend(self.delta[q][a].iter().copied());
                }
                let j = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next.clone());
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                row.push(j);
            }
            delta.push(row);
        }
        let accepting = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.intersection(&self.accepting).next().is_some())
            .map(|(i, _)| i)
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            states: subsets.len(),
            init: 0,
            accepting,
            delta,
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nfa {\n  rankdir=LR;\n");
        for q in 0..self.states {
            let shape = if self.accepting.contains(&q) {
                "doublecircle"
            } else {
                "circle"
            };
            out.push_str(&format!("  q{} [shape={}];\n", q, shape));
        }
        for (i, &q) in self.inits.iter().enumerate() {
            out.push_str(&format!("  start{} [shape=none,label=\"\"];\n", i));
            out.push_str(&format!("  start{} -> q{};\n", i, q));
        }
        for q in 0..self.states {
            for a in 0..self.alphabet.len() {
                for &r in &self.delta[q][a] {
                    out.push_str(&format!(
                        "  q{} -> q{} [label=\"{}\"];\n",
                        q,
                        r,
                        self.alphabet.letter(a as u8)
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Words of length at most `max_len` accepted, for oracle tests.
    pub fn accepted_up_to(&self, max_len: usize) -> Vec<Word> {
        self.alphabet
            .words_up_to(max_len)
            .into_iter()
            .filter(|w| self.accepts(w))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct NfaJson {
    alphabet: Vec<char>,
    states: usize,
    inits: Vec<usize>,
    accepting: Vec<usize>,
    delta: Vec<Vec<Vec<usize>>>,
}

impl Serialize for Nfa {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NfaJson {
            alphabet: self.alphabet.letters().to_vec(),
            states: self.states,
            inits: self.inits.iter().copied().collect(),
            accepting: self.accepting.iter().copied().collect(),
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|s| s.iter().copied().collect()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Nfa {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = NfaJson::deserialize(d)?;
        let alphabet = Alphabet::new(&j.alphabet.iter().collect::<String>())
            .map_err(|e| D::Error::custom(e.to_string()))?;
        if j.delta.len() != j.states
            || j.delta.iter().any(|r| r.len() != alphabet.len())
            || j.inits.iter().chain(&j.accepting).any(|&q| q >= j.states)
            || j.delta
                .iter()
                .flatten()
                .flatten()
                .any(|&q| q >= j.states)
        {
            return Err(D::Error::custom("inconsistent NFA tables"));
        }
        Ok(Nfa {
            alphabet,
            states: j.states,
            inits: j.inits.into_iter().collect(),
            accepting: j.accepting.into_iter().collect(),
            delta: j
                .delta
                .into_iter()
                .map(|row| row.into_iter().map(|s| s.into_iter().collect()).collect())
                .collect(),
        })
    }
}

struct Builder {
    nfa: EpsNfa,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        let q = self.nfa.states;
        self.nfa.states += 1;
        self.nfa.delta.push(vec![BTreeSet::new(); self.nfa.alphabet.len()]);
        self.nfa.eps.push(BTreeSet::new());
        q
    }

    /// Returns (start, accept) of a fragment recognizing the AST.
    fn build(&mut self, ast: &Regex) -> (usize, usize) {
        match ast {
            Regex::Empty => {
                let s = self.fresh();
                let t = self.fresh();
                (s, t)
            }
            Regex::Eps => {
                let s = self.fresh();
                let t = self.fresh();
                self.nfa.eps[s].insert(t);
                (s, t)
            }
            Regex::Letter(a) => {
                let s = self.fresh();
                let t = self.fresh();
                self.nfa.delta[s][*a as usize].insert(t);
                (s, t)
            }
            Regex::Union(l, r) => {
                let (ls, lt) = self.build(l);
                let (rs, rt) = self.build(r);
                let s = self.fresh();
                let t = self.fresh();
                self.nfa.eps[s].extend([ls, rs]);
                self.nfa.eps[lt].insert(t);
                self.nfa.eps[rt].insert(t);
                (s, t)
            }
            Regex::Concat(l, r) => {
                let (ls, lt) = self.build(l);
                let (rs, rt) = self.build(r);
                self.nfa.eps[lt].insert(rs);
                (ls, rt)
            }
            Regex::Star(e) => {
                let (es, et) = self.build(e);
                let s = self.fresh();
                let t = self.fresh();
                self.nfa.eps[s].extend([es, t]);
                self.nfa.eps[et].extend([es, t]);
                (s, t)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regex_to_nfa_accepts_expected_words() {
        let ab = Alphabet::new("ab").unwrap();
        let ast = Regex::parse("(a+b)*b(a+b)", &ab).unwrap();
        let nfa = Nfa::from_regex(&ast, &ab);
        assert!(nfa.accepts(&ab.word_from_str("ba").unwrap()));
        assert!(nfa.accepts(&ab.word_from_str("abb").unwrap()));
        assert!(!nfa.accepts(&ab.word_from_str("ab").unwrap()));
        assert!(!nfa.accepts(&[]));
    }

    #[test]
    fn empty_and_eps_regexes() {
        let ab = Alphabet::new("ab").unwrap();
        let empty = Nfa::from_regex(&Regex::parse("0", &ab).unwrap(), &ab);
        assert!(empty.accepted_up_to(3).is_empty());
        let eps = Nfa::from_regex(&Regex::parse("1", &ab).unwrap(), &ab);
        assert_eq!(eps.accepted_up_to(3), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn json_round_trip() {
        let ab = Alphabet::new("ab").unwrap();
        let nfa = Nfa::from_regex(&Regex::parse("ab*", &ab).unwrap(), &ab);
        let j = serde_json::to_string(&nfa).unwrap();
        let back: Nfa = serde_json::from_str(&j).unwrap();
        assert_eq!(back, nfa);
    }
}
