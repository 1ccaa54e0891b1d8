//! Deterministic circular finite automata.
//!
//! A DCFA reads a circular word with two marks that jointly traverse the
//! circle, one through `delta_l` and one through `delta_r`. The three
//! axioms (commutation, initial agreement, acceptance alignment) make
//! the reached state independent of how the traversal is split.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolsemi::Bits;
use crate::error::Error;
use crate::lang::{is_rotation_closed, Alphabet, CircularWord, Dfa, TransitionMonoid};
use crate::theory::{half_state_space, pm_state_space, Evaluation, HalfSide, PmDiagram};

/// A deterministic circular finite automaton.
///
/// `delta_l[q][a]` is the left action (on syntactic classes it prepends
/// the letter) and `delta_r[q][a]` the right action (appending). JSON
/// uses the same field names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularDfa {
    #[serde(with = "alphabet_serde")]
    pub alphabet: Alphabet,
    pub states: usize,
    pub init: usize,
    pub accepting: BTreeSet<usize>,
    pub delta_l: Vec<Vec<usize>>,
    pub delta_r: Vec<Vec<usize>>,
}

mod alphabet_serde {
    use super::Alphabet;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(a: &Alphabet, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(a.letters())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Alphabet, D::Error> {
        let letters: Vec<char> = Vec::deserialize(d)?;
        Alphabet::new(&letters.iter().collect::<String>())
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// A failed DCFA axiom together with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Axiom 1: `delta_l[a]` and `delta_r[b]` disagree at state `q`.
    Commutation { a: char, b: char, q: usize },
    /// Axiom 2: the two actions differ on the initial state.
    InitialAgreement { a: char },
    /// Axiom 3: exactly one of `delta_l[q][a]`, `delta_r[q][a]` accepts.
    AcceptanceAlignment { a: char, q: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Commutation { a, b, q } => {
                write!(f, "axiom 1: delta_l[{}] and delta_r[{}] do not commute at state {}", a, b, q)
            }
            Violation::InitialAgreement { a } => {
                write!(f, "axiom 2: delta_l[{}] differs from delta_r[{}] on the initial state", a, a)
            }
            Violation::AcceptanceAlignment { a, q } => {
                write!(f, "axiom 3: acceptance of delta_l and delta_r differ on letter {} at state {}", a, q)
            }
        }
    }
}

impl CircularDfa {
    /// Checks the three DCFA axioms, returning every violation found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.alphabet.len();
        for a in 0..k {
            for b in 0..k {
                for q in 0..self.states {
                    let lr = self.delta_r[self.delta_l[q][a]][b];
                    let rl = self.delta_l[self.delta_r[q][b]][a];
                    if lr != rl {
                        out.push(Violation::Commutation {
                            a: self.alphabet.letter(a as u8),
                            b: self.alphabet.letter(b as u8),
                            q,
                        });
                    }
                }
            }
        }
        for a in 0..k {
            if self.delta_l[self.init][a] != self.delta_r[self.init][a] {
                out.push(Violation::InitialAgreement {
                    a: self.alphabet.letter(a as u8),
                });
            }
        }
        for a in 0..k {
            for q in 0..self.states {
                let l = self.accepting.contains(&self.delta_l[q][a]);
                let r = self.accepting.contains(&self.delta_r[q][a]);
                if l != r {
                    out.push(Violation::AcceptanceAlignment {
                        a: self.alphabet.letter(a as u8),
                        q,
                    });
                }
            }
        }
        out
    }

    /// State reached when the prefix before index `split` is consumed by
    /// the left mark (fed right-to-left through `delta_l`) and the rest
    /// by the right mark (fed left-to-right through `delta_r`).
    pub fn run_split(&self, w: &[u8], split: usize) -> usize {
        let mut q = self.init;
        for &a in w[..split].iter().rev() {
            q = self.delta_l[q][a as usize];
        }
        for &a in &w[split..] {
            q = self.delta_r[q][a as usize];
        }
        q
    }

    /// Circular acceptance. Evaluates two distinct splits and asserts
    /// they agree, which the axioms guarantee for a valid automaton.
    pub fn accepts(&self, w: &CircularWord) -> Result<bool, Error> {
        if !self.validate().is_empty() {
            return Err(Error::InvalidAutomaton("DCFA axioms fail".into()));
        }
        let v = w.as_word();
        let q1 = self.run_split(v, 0);
        let q2 = self.run_split(v, v.len().div_ceil(2));
        assert_eq!(q1, q2, "split independence must hold on a valid DCFA");
        Ok(self.accepting.contains(&q1))
    }

    /// DCFA on the syntactic monoid of a rotation-closed language:
    /// states are monoid elements, the left action prepends a letter and
    /// the right action appends one.
    pub fn from_language(dfa: &Dfa) -> Result<CircularDfa, Error> {
        if !is_rotation_closed(dfa) {
            return Err(Error::NotCircular);
        }
        let min = dfa.minimize();
        let monoid = TransitionMonoid::new(&min);
        let k = min.alphabet.len();
        let letter_classes: Vec<usize> = (0..k as u8).map(|a| monoid.class_of_word(&[a])).collect();
        let n = monoid.len();
        let delta_l = (0..n)
            .map(|e| (0..k).map(|a| monoid.mul(letter_classes[a], e)).collect())
            .collect();
        let delta_r = (0..n)
            .map(|e| (0..k).map(|a| monoid.mul(e, letter_classes[a])).collect())
            .collect();
        let accepting = (0..n).filter(|&e| monoid.accepts(e)).collect();
        let c = CircularDfa {
            alphabet: min.alphabet.clone(),
            states: n,
            init: monoid.identity(),
            accepting,
            delta_l,
            delta_r,
        };
        debug_assert!(c.validate().is_empty());
        Ok(c)
    }

    /// The minimal DCFA: the syntactic-monoid automaton with states
    /// merged when no nonempty two-sided insertion context
    /// distinguishes them.
    ///
    /// A state is only ever interrogated through the letters still to be
    /// crossed, so classes whose words agree on every nonempty
    /// completion of the circle collapse even when the words themselves
    /// straddle the language boundary; a merged state accepts when any
    /// of its classes does. The accepted circular language can therefore
    /// gain such boundary words (single letters, typically) relative to
    /// the input language.
    pub fn minimal_dcfa(dfa: &Dfa) -> Result<CircularDfa, Error> {
        if !is_rotation_closed(dfa) {
            return Err(Error::NotCircular);
        }
        let min = dfa.minimize();
        let monoid = TransitionMonoid::new(&min);
        let n = monoid.len();
        let k = min.alphabet.len();
        let letter_classes: Vec<usize> = (0..k as u8).map(|a| monoid.class_of_word(&[a])).collect();
        // classes containing a nonempty word: every product (class)(letter)
        let nonempty: BTreeSet<usize> = (0..n)
            .flat_map(|e| letter_classes.iter().map(move |&la| (e, la)))
            .map(|(e, la)| monoid.mul(e, la))
            .collect();
        // contexts (u, v) whose total word u.v is nonempty
        let contexts: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| nonempty.contains(&u) || nonempty.contains(&v))
            .collect();
        let sigs: Vec<Vec<bool>> = (0..n)
            .map(|e| {
                contexts
                    .iter()
                    .map(|&(u, v)| monoid.accepts(monoid.mul(monoid.mul(u, e), v)))
                    .collect()
            })
            .collect();
        let mut class_of: Vec<usize> = Vec::with_capacity(n);
        let mut sig_index: BTreeMap<&Vec<bool>, usize> = BTreeMap::new();
        for sig in &sigs {
            let next = sig_index.len();
            class_of.push(*sig_index.entry(sig).or_insert(next));
        }
        let m = sig_index.len();
        let mut delta_l = vec![vec![usize::MAX; k]; m];
        let mut delta_r = vec![vec![usize::MAX; k]; m];
        let mut accepting = BTreeSet::new();
        for e in 0..n {
            let c = class_of[e];
            for a in 0..k {
                let l = class_of[monoid.mul(letter_classes[a], e)];
                let r = class_of[monoid.mul(e, letter_classes[a])];
                assert!(delta_l[c][a] == usize::MAX || delta_l[c][a] == l);
                assert!(delta_r[c][a] == usize::MAX || delta_r[c][a] == r);
                delta_l[c][a] = l;
                delta_r[c][a] = r;
            }
            if monoid.accepts(e) {
                accepting.insert(c);
            }
        }
        // acceptance must agree on the rotation siblings class(x.w) and
        // class(w.x), so saturate it over the components of that relation
        let mut root: Vec<usize> = (0..m).collect();
        fn find(root: &mut Vec<usize>, mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for e in 0..n {
            for a in 0..k {
                let l = find(&mut root, class_of[monoid.mul(letter_classes[a], e)]);
                let r = find(&mut root, class_of[monoid.mul(e, letter_classes[a])]);
                root[l] = r;
            }
        }
        let marked: Vec<usize> = accepting.iter().map(|&c| find(&mut root, c)).collect();
        for c in 0..m {
            if marked.contains(&find(&mut root, c)) {
                accepting.insert(c);
            }
        }
        let c = CircularDfa {
            alphabet: min.alphabet.clone(),
            states: m,
            init: class_of[monoid.identity()],
            accepting,
            delta_l,
            delta_r,
        };
        debug_assert!(c.validate().is_empty());
        Ok(c)
    }

    /// Forgets the circular structure: the DFA on the same states whose
    /// transitions append letters, accepting the interval language.
    pub fn interval_forget(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            states: self.states,
            init: self.init,
            accepting: self.accepting.clone(),
            delta: self.delta_r.clone(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dcfa {\n  rankdir=LR;\n");
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
                    "  q{} -> q{} [label=\"l:{}\",style=solid];\n",
                    q,
                    self.delta_l[q][a],
                    self.alphabet.letter(a as u8)
                ));
                out.push_str(&format!(
                    "  q{} -> q{} [label=\"r:{}\",style=dashed];\n",
                    q,
                    self.delta_r[q][a],
                    self.alphabet.letter(a as u8)
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Which state set a mixed automaton carries: the first kind uses only
/// the arc elements of the plus-minus space, the second adds the ray
/// pair elements and a shared zero sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedKind {
    First,
    Second,
}

/// One state of a mixed automaton, tagged by which space it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedState {
    /// Shared zero sink (second kind only).
    Zero,
    /// Element of the plus-minus space: an arc class, or in the second
    /// kind possibly a ray pair class.
    Circ(Bits),
    /// Word class in the plus space (a state of the reversed minimal
    /// DFA's language).
    Plus(Bits),
    /// Word class in the minus space (a state of the minimal DFA).
    Minus(Bits),
}

/// A deterministic mixed circular-interval automaton.
///
/// The circular part carries both letter actions; `tau_plus` terminates
/// the minus endpoint of a circular state and hands the run to the
/// suffix automaton, `tau_minus` terminates the plus endpoint and hands
/// it to the prefix automaton. `delta_l` continues on minus states and
/// `delta_r` on plus states, matching the intertwining
/// `tau_minus(delta_l) = delta_l(tau_minus)` and its mirror.
#[derive(Debug, Clone)]
pub struct MixedAutomaton {
    pub kind: MixedKind,
    pub alphabet: Alphabet,
    /// Circular states first, then plus classes, then minus classes,
    /// then the zero sink when present.
    pub states: Vec<MixedState>,
    /// `delta_l[q][a]`, defined on circular, minus and zero states.
    pub delta_l: Vec<Vec<Option<usize>>>,
    /// `delta_r[q][a]`, defined on circular, plus and zero states.
    pub delta_r: Vec<Vec<Option<usize>>>,
    /// Defined on circular and zero states.
    pub tau_plus: Vec<Option<usize>>,
    pub tau_minus: Vec<Option<usize>>,
    /// The empty arc state.
    pub init_circ: usize,
    /// The empty ray pair state (second kind).
    pub init_pair: Option<usize>,
}

/// Builds the mixed automaton of an evaluation.
pub fn mixed_automaton(ev: &Evaluation, kind: MixedKind) -> Result<MixedAutomaton, Error> {
    let pm = pm_state_space(ev)?;
    let minus = half_state_space(&ev.dfa_i, HalfSide::Minus);
    let plus = half_state_space(&ev.dfa_i, HalfSide::Plus);
    let k = ev.alphabet.len();
    let n = pm.spanning.len();
    let profiles: Vec<Bits> = (0..n).map(|i| pm.profile(i)).collect();
    let zero_elem = Bits::zeros(2 * n);
    // termination values of each spanning diagram: an arc class keeps
    // its word as a prefix (minus) or suffix (plus) class; a ray pair
    // keeps one ray and evaluates the other as an interval
    let mut tau_m_diag = Vec::with_capacity(n);
    let mut tau_p_diag = Vec::with_capacity(n);
    for d in &pm.spanning {
        match *d {
            PmDiagram::Arc(e) => {
                let w = pm.monoid.rep(e);
                let rev: Vec<u8> = w.iter().rev().copied().collect();
                tau_m_diag.push(minus.word_class[minus.dfa.run(minus.dfa.init, w)].clone());
                tau_p_diag.push(plus.word_class[plus.op.run(plus.op.init, &rev)].clone());
            }
            PmDiagram::Pair { plus: p, minus: m } => {
                tau_m_diag.push(if ev.alpha_i(&pm.plus_reps[p]) {
                    minus.word_class[m].clone()
                } else {
                    Bits::zeros(minus.matrix.cols)
                });
                tau_p_diag.push(if ev.alpha_i(&pm.minus_reps[m]) {
                    plus.word_class[p].clone()
                } else {
                    Bits::zeros(plus.matrix.rows)
                });
            }
        }
    }
    // multiplication and termination extend from diagrams to elements
    // through joins over the diagrams below an element
    let mul_elem = |x: &Bits, la_diag: usize, append: bool| -> Bits {
        let mut out = zero_elem.clone();
        for i in 0..n {
            if profiles[i].leq(x) {
                let r = if append {
                    pm.mult[i][la_diag]
                } else {
                    pm.mult[la_diag][i]
                };
                if let Some(j) = r {
                    out.or_assign(&profiles[j]);
                }
            }
        }
        out
    };
    let tau_elem = |x: &Bits, diag: &[Bits], ambient: usize| -> Bits {
        let mut out = Bits::zeros(ambient);
        for i in 0..n {
            if profiles[i].leq(x) {
                out.or_assign(&diag[i]);
            }
        }
        out
    };
    let pair_count = n - pm.monoid.len();
    let la_diags: Vec<usize> = (0..k as u8)
        .map(|a| pair_count + pm.monoid.class_of_word(&[a]))
        .collect();
    // assemble the state list
    let mut states = Vec::new();
    let mut circ_idx: BTreeMap<Bits, usize> = BTreeMap::new();
    let mut push_circ = |x: Bits, states: &mut Vec<MixedState>| {
        if kind == MixedKind::Second && x == zero_elem {
            return;
        }
        circ_idx.entry(x.clone()).or_insert_with(|| {
            states.push(MixedState::Circ(x));
            states.len() - 1
        });
    };
    for e in 0..pm.monoid.len() {
        push_circ(profiles[pair_count + e].clone(), &mut states);
    }
    if kind == MixedKind::Second {
        for i in 0..pair_count {
            push_circ(profiles[i].clone(), &mut states);
        }
    }
    let mut plus_idx: BTreeMap<Bits, usize> = BTreeMap::new();
    for v in &plus.word_class {
        if kind == MixedKind::Second && v.is_zero() {
            continue;
        }
        plus_idx.entry(v.clone()).or_insert_with(|| {
            states.push(MixedState::Plus(v.clone()));
            states.len() - 1
        });
    }
    let mut minus_idx: BTreeMap<Bits, usize> = BTreeMap::new();
    for v in &minus.word_class {
        if kind == MixedKind::Second && v.is_zero() {
            continue;
        }
        minus_idx.entry(v.clone()).or_insert_with(|| {
            states.push(MixedState::Minus(v.clone()));
            states.len() - 1
        });
    }
    let zero_idx = if kind == MixedKind::Second {
        states.push(MixedState::Zero);
        Some(states.len() - 1)
    } else {
        None
    };
    let find = |idx: &BTreeMap<Bits, usize>, v: &Bits, what: &str| -> usize {
        if kind == MixedKind::Second && v.is_zero() {
            return zero_idx.unwrap();
        }
        *idx.get(v).unwrap_or_else(|| panic!("{what} must be a state"))
    };
    // transition and termination tables over the full state list
    let total = states.len();
    let mut delta_l = vec![vec![None; k]; total];
    let mut delta_r = vec![vec![None; k]; total];
    let mut tau_plus_t = vec![None; total];
    let mut tau_minus_t = vec![None; total];
    for (q, st) in states.iter().enumerate() {
        match st {
            MixedState::Circ(x) => {
                for a in 0..k {
                    delta_l[q][a] = Some(find(&circ_idx, &mul_elem(x, la_diags[a], true), "circ"));
                    delta_r[q][a] = Some(find(&circ_idx, &mul_elem(x, la_diags[a], false), "circ"));
                }
                tau_plus_t[q] = Some(find(
                    &plus_idx,
                    &tau_elem(x, &tau_p_diag, plus.matrix.rows),
                    "plus class",
                ));
                tau_minus_t[q] = Some(find(
                    &minus_idx,
                    &tau_elem(x, &tau_m_diag, minus.matrix.cols),
                    "minus class",
                ));
            }
            MixedState::Plus(v) => {
                for a in 0..k {
                    delta_r[q][a] = Some(find(&plus_idx, &plus.act(v, a as u8), "plus class"));
                }
            }
            MixedState::Minus(v) => {
                for a in 0..k {
                    delta_l[q][a] = Some(find(&minus_idx, &minus.act(v, a as u8), "minus class"));
                }
            }
            MixedState::Zero => {
                let z = zero_idx;
                for a in 0..k {
                    delta_l[q][a] = z;
                    delta_r[q][a] = z;
                }
                tau_plus_t[q] = z;
                tau_minus_t[q] = z;
            }
        }
    }
    let init_circ = find(&circ_idx, &pm.unit, "circ");
    let init_pair = if kind == MixedKind::Second {
        let d = ev.dfa_i.init * plus.op.states + plus.op.init;
        Some(find(&circ_idx, &profiles[d], "circ"))
    } else {
        None
    };
    let out = MixedAutomaton {
        kind,
        alphabet: ev.alphabet.clone(),
        states,
        delta_l,
        delta_r,
        tau_plus: tau_plus_t,
        tau_minus: tau_minus_t,
        init_circ,
        init_pair,
    };
    debug_assert!(out.check_intertwining());
    Ok(out)
}

impl MixedAutomaton {
    pub fn circ_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&q| matches!(self.states[q], MixedState::Circ(_)))
    }

    pub fn plus_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&q| matches!(self.states[q], MixedState::Plus(_)))
    }

    pub fn minus_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&q| matches!(self.states[q], MixedState::Minus(_)))
    }

    /// Terminating an endpoint commutes with the matching letter
    /// action: `tau_plus` after `delta_r` equals `delta_r` after
    /// `tau_plus`, and likewise for `tau_minus` with `delta_l`; the two
    /// circular actions also commute with each other.
    pub fn check_intertwining(&self) -> bool {
        let k = self.alphabet.len();
        for q in self.circ_states() {
            for a in 0..k {
                let via_circ = self.tau_plus[self.delta_r[q][a].unwrap()].unwrap();
                let via_plus = self.delta_r[self.tau_plus[q].unwrap()][a].unwrap();
                if via_circ != via_plus {
                    return false;
                }
                let via_circ = self.tau_minus[self.delta_l[q][a].unwrap()].unwrap();
                let via_minus = self.delta_l[self.tau_minus[q].unwrap()][a].unwrap();
                if via_circ != via_minus {
                    return false;
                }
                for b in 0..k {
                    let lr = self.delta_r[self.delta_l[q][a].unwrap()][b].unwrap();
                    let rl = self.delta_l[self.delta_r[q][b].unwrap()][a].unwrap();
                    if lr != rl {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    /// Circular words containing `aa`, including across the wrap.
    fn faa() -> Dfa {
        Dfa::from_regex_str("(a+b)*aa(a+b)*+a(a+b)*a", &ab()).unwrap()
    }

    /// Circular words with a, b, a, b as a scattered cyclic
    /// subsequence: the rotation closure of words containing it
    /// linearly.
    fn fabab() -> Dfa {
        let d =
            Dfa::from_regex_str("(a+b)*a(a+b)*b(a+b)*a(a+b)*b(a+b)*", &ab()).unwrap();
        crate::lang::rotation_closure(&d)
    }

    #[test]
    fn trivial_all_accepting_dcfa() {
        let c = CircularDfa {
            alphabet: ab(),
            states: 1,
            init: 0,
            accepting: BTreeSet::from([0]),
            delta_l: vec![vec![0, 0]],
            delta_r: vec![vec![0, 0]],
        };
        assert!(c.validate().is_empty());
        assert!(c.accepts(&CircularWord::new(&[])).unwrap());
        assert!(c.accepts(&CircularWord::new(&[0, 1])).unwrap());
    }

    #[test]
    fn minimal_dcfa_of_faa_has_six_states() {
        let c = CircularDfa::minimal_dcfa(&faa()).unwrap();
        assert_eq!(c.states, 6);
        assert!(c.validate().is_empty());
        assert!(c.accepts(&CircularWord::new(&[1, 0, 0])).unwrap());
        assert!(!c.accepts(&CircularWord::new(&[0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn minimal_dcfa_of_fabab_has_eight_states() {
        let c = CircularDfa::minimal_dcfa(&fabab()).unwrap();
        assert_eq!(c.states, 8);
        assert!(c.validate().is_empty());
        // circular abab equals circular baba
        assert_eq!(
            CircularWord::new(&[0, 1, 0, 1]),
            CircularWord::new(&[1, 0, 1, 0])
        );
        assert!(c.accepts(&CircularWord::new(&[0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn mutation_of_one_edge_breaks_an_axiom() {
        let mut c = CircularDfa::minimal_dcfa(&faa()).unwrap();
        let orig = c.delta_r[2][0];
        c.delta_r[2][0] = (orig + 1) % c.states;
        assert!(!c.validate().is_empty());
    }

    #[test]
    fn split_independence_on_words_up_to_eight() {
        for d in [faa(), fabab()] {
            let c = CircularDfa::minimal_dcfa(&d).unwrap();
            for w in ab().words_up_to(8) {
                let states: BTreeSet<usize> =
                    (0..=w.len()).map(|i| c.run_split(&w, i)).collect();
                assert_eq!(states.len(), 1, "split dependence on {:?}", w);
            }
        }
    }

    #[test]
    fn dcfa_accepts_matches_language_on_rotations() {
        let d = faa();
        let c = CircularDfa::from_language(&d).unwrap();
        let cm = CircularDfa::minimal_dcfa(&d).unwrap();
        for w in ab().words_up_to(8) {
            let cw = CircularWord::new(&w);
            let expected = d.accepts(&w);
            assert_eq!(c.accepts(&cw).unwrap(), expected, "word {:?}", w);
            if w.len() >= 2 {
                assert_eq!(cm.accepts(&cw).unwrap(), expected, "word {:?}", w);
            }
        }
        // minimization absorbs the boundary word: a single a closes up
        // into the same wrap-around pair aa that longer members have
        assert!(!d.accepts(&[0]));
        assert!(cm.accepts(&CircularWord::new(&[0])).unwrap());
    }

    #[test]
    fn interval_forget_round_trip() {
        let d = faa();
        let c = CircularDfa::from_language(&d).unwrap();
        assert!(c.interval_forget().equivalent(&d).unwrap());
        let c2 = CircularDfa::from_language(&c.interval_forget()).unwrap();
        assert!(c2.interval_forget().equivalent(&d).unwrap());
        // the minimal automaton forgets to the language plus the
        // absorbed boundary word
        let cm = CircularDfa::minimal_dcfa(&d).unwrap();
        let saturated =
            Dfa::from_regex_str("(a+b)*aa(a+b)*+a(a+b)*a+a", &ab()).unwrap();
        assert!(cm.interval_forget().equivalent(&saturated).unwrap());
    }

    #[test]
    fn minimal_dcfa_of_sigma_star_is_one_state() {
        let d = Dfa::from_regex_str("(a+b)*", &ab()).unwrap();
        let c = CircularDfa::minimal_dcfa(&d).unwrap();
        assert_eq!(c.states, 1);
    }

    #[test]
    fn minimal_dcfa_is_minimal_by_merging_oracle() {
        // merging any two states of the minimal DCFA changes the
        // accepted circular language on words up to 8
        let d = faa();
        let c = CircularDfa::minimal_dcfa(&d).unwrap();
        let words = ab().words_up_to(8);
        for p in 0..c.states {
            for q in (p + 1)..c.states {
                let merge = |s: usize| if s == q { p } else { s };
                let merged = CircularDfa {
                    alphabet: c.alphabet.clone(),
                    states: c.states,
                    init: merge(c.init),
                    accepting: c.accepting.iter().map(|&s| merge(s)).collect(),
                    delta_l: c
                        .delta_l
                        .iter()
                        .map(|row| row.iter().map(|&s| merge(s)).collect())
                        .collect(),
                    delta_r: c
                        .delta_r
                        .iter()
                        .map(|row| row.iter().map(|&s| merge(s)).collect())
                        .collect(),
                };
                // the merged automaton may be invalid or wrong; either
                // way it must fail to reproduce the language
                let differs = !merged.validate().is_empty()
                    || words.iter().any(|w| {
                        merged.accepting.contains(&merged.run_split(w, 0))
                            != c.accepting.contains(&c.run_split(w, 0))
                    });
                assert!(differs, "merging {} and {} preserved the language", p, q);
            }
        }
    }

    #[test]
    fn parity_first_kind_mixed_automaton_counts() {
        let a = Alphabet::new("a").unwrap();
        let ev = Evaluation::from_regexes("(aa)*", "(aa)*", &a).unwrap();
        let m = mixed_automaton(&ev, MixedKind::First).unwrap();
        assert_eq!(m.circ_states().count(), 2);
        assert_eq!(m.plus_states().count(), 2);
        assert_eq!(m.minus_states().count(), 2);
        assert_eq!(m.states.len(), 6);
        assert!(m.init_pair.is_none());
        assert!(m.check_intertwining());
    }

    #[test]
    fn mixed_automaton_intertwining_holds_on_samples() {
        let a = Alphabet::new("a").unwrap();
        let ev1 = Evaluation::from_regexes("(aa)*", "a(aa)*", &a).unwrap();
        let ev2 = Evaluation::from_regexes("(a+b)*b(a+b)", "(a+b)*", &ab()).unwrap();
        for ev in [ev1, ev2] {
            for kind in [MixedKind::First, MixedKind::Second] {
                let m = mixed_automaton(&ev, kind).unwrap();
                assert!(m.check_intertwining());
            }
        }
    }

    #[test]
    fn empty_alphabet_mixed_automaton_has_one_arc_state() {
        let empty = Alphabet::empty();
        let ev = Evaluation::from_regexes("1", "1", &empty).unwrap();
        let m = mixed_automaton(&ev, MixedKind::First).unwrap();
        assert_eq!(m.circ_states().count(), 1);
    }

    #[test]
    fn termination_maps_agree_with_capping_pairings() {
        // tau_minus caps the plus endpoint with an empty ray: the
        // resulting prefix class, read against a suffix class t, must
        // match the element's pairing with the diagram Pair(t, empty);
        // in particular a ray pair with a rejected suffix terminates to
        // zero while an accepted one keeps its prefix class
        let li = Dfa::from_regex_str("(a+b)*b(aa)*a+(aa)*a", &ab()).unwrap();
        let circ = crate::theory::canonical_circular(&li).unwrap();
        let ev = Evaluation::new(&li, &circ).unwrap();
        let m = mixed_automaton(&ev, MixedKind::Second).unwrap();
        let pm = pm_state_space(&ev).unwrap();
        let nplus = pm.plus_reps.len();
        let init = ev.dfa_i.init;
        let op_init = ev.dfa_i.opposite().init;
        let zero_idx = m.states.len() - 1;
        assert_eq!(m.states[zero_idx], MixedState::Zero);
        assert!(m.init_pair.is_some());
        for q in m.circ_states().collect::<Vec<_>>() {
            let MixedState::Circ(x) = &m.states[q] else { unreachable!() };
            let tm = match &m.states[m.tau_minus[q].unwrap()] {
                MixedState::Minus(v) => v.clone(),
                MixedState::Zero => Bits::zeros(nplus),
                other => panic!("unexpected tau_minus target {other:?}"),
            };
            for t in 0..nplus {
                assert_eq!(tm.get(t), x.get(init * nplus + t));
            }
            let tp = match &m.states[m.tau_plus[q].unwrap()] {
                MixedState::Plus(v) => v.clone(),
                MixedState::Zero => Bits::zeros(pm.minus_reps.len()),
                other => panic!("unexpected tau_plus target {other:?}"),
            };
            for s in 0..pm.minus_reps.len() {
                assert_eq!(tp.get(s), x.get(s * nplus + op_init));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = CircularDfa::minimal_dcfa(&faa()).unwrap();
        let j = serde_json::to_string(&c).unwrap();
        assert!(j.contains("delta_l") && j.contains("delta_r"));
        let back: CircularDfa = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
    }
}
