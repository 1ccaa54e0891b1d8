use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::boolsemi::{Bits, BoolMatrix, Semimodule};
use crate::error::Error;
use crate::lang::{Dfa, Nfa};
use crate::limits::Limits;

/// Which boundary point the space sits on: a minus point collects
/// prefixes (the language grows to the right), a plus point collects
/// suffixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfSide {
    Plus,
    Minus,
}

/// The state space of a single boundary point.
///
/// Both sides are cut out of one Boolean matrix `matrix[s][t] =
/// alpha_I(prefix_s suffix_t)`, rows indexed by the states of the
/// minimal DFA for L and columns by the states of the minimal DFA for
/// the reversed language. The minus space is the row span, the plus
/// space the column span; either way an element is a profile against
/// the classes of the opposite side, so the pairing between the two
/// spaces is nondegenerate by construction.
#[derive(Debug, Clone)]
pub struct HalfSpace {
    pub side: HalfSide,
    /// Minimal DFA for L (its states index the rows).
    pub dfa: Dfa,
    /// Minimal DFA for the reversed language (its states index the
    /// columns).
    pub op: Dfa,
    pub matrix: BoolMatrix,
    pub space: Semimodule,
    /// Element attached to each state of this side's own DFA.
    pub word_class: Vec<Bits>,
    /// Class of the empty word.
    pub init: Bits,
    /// Appending (minus) or prepending (plus) a letter pulls profiles
    /// back along the opposite DFA: `act(v, a)[c] = v[pullback[a][c]]`.
    pullback: Vec<Vec<usize>>,
    /// Coordinate whose entry is the trace (the class of the empty
    /// continuation on the opposite side).
    trace_coord: usize,
}

impl HalfSpace {
    /// Extends the letter action from word classes to the whole space;
    /// it is join-preserving because it only permutes-and-merges
    /// coordinates.
    pub fn act(&self, v: &Bits, a: u8) -> Bits {
        let pb = &self.pullback[a as usize];
        Bits::from_bools(&pb.iter().map(|&c| v.get(c)).collect::<Vec<_>>())
    }

    /// Minus side: `v` then the word appended letter by letter. Plus
    /// side: the word prepended, so it is fed right to left.
    pub fn act_word(&self, v: &Bits, w: &[u8]) -> Bits {
        match self.side {
            HalfSide::Minus => w.iter().fold(v.clone(), |v, &a| self.act(&v, a)),
            HalfSide::Plus => w.iter().rev().fold(v.clone(), |v, &a| self.act(&v, a)),
        }
    }

    /// `trace(class of w) = alpha_I(w)`.
    pub fn trace(&self, v: &Bits) -> bool {
        v.get(self.trace_coord)
    }
}

/// Pairing between a minus element and a plus element over the same
/// language: joins of `alpha_I(prefix suffix)` over their maximal
/// decompositions into word classes.
pub fn half_pairing(matrix: &BoolMatrix, minus: &Bits, plus: &Bits) -> bool {
    (0..matrix.cols).any(|t| matrix.col(t).leq(plus) && minus.get(t))
}

/// Builds the state space of one boundary point of the interval
/// language.
pub fn half_state_space(dfa_i: &Dfa, side: HalfSide) -> HalfSpace {
    let dfa = dfa_i.minimize();
    let op = dfa.opposite();
    let reps: Vec<_> = dfa
        .representatives()
        .into_iter()
        .map(|r| r.expect("minimal DFA states are reachable"))
        .collect();
    let op_reps: Vec<_> = op
        .representatives()
        .into_iter()
        .map(|r| r.expect("minimal DFA states are reachable"))
        .collect();
    let mut matrix = BoolMatrix::zeros(dfa.states, op.states);
    for (s, prefix) in reps.iter().enumerate() {
        for (t, op_rep) in op_reps.iter().enumerate() {
            let mut w = prefix.clone();
            w.extend(op_rep.iter().rev());
            matrix.set(s, t, dfa.accepts(&w));
        }
    }
    let limits = Limits::default();
    let (word_class, pullback, trace_coord, init_state): (Vec<Bits>, Vec<Vec<usize>>, usize, usize) =
        match side {
            HalfSide::Minus => (
                (0..dfa.states).map(|s| matrix.row(s).clone()).collect(),
                (0..dfa.alphabet.len())
                    .map(|a| (0..op.states).map(|t| op.delta[t][a]).collect())
                    .collect(),
                op.init,
                dfa.init,
            ),
            HalfSide::Plus => (
                (0..op.states).map(|t| matrix.col(t)).collect(),
                (0..dfa.alphabet.len())
                    .map(|a| (0..dfa.states).map(|s| dfa.delta[s][a]).collect())
                    .collect(),
                dfa.init,
                op.init,
            ),
        };
    let space = Semimodule::span(
        word_class.first().map(|b| b.len()).unwrap_or(0),
        word_class.clone(),
        &limits,
    )
    .expect("half spaces stay within the span limit");
    let init = word_class[init_state].clone();
    HalfSpace {
        side,
        dfa,
        op,
        matrix,
        space,
        word_class,
        init,
        pullback,
        trace_coord,
    }
}

/// Recovers the minimal DFA of the side's language by running the
/// letter action from the empty-word class.
pub fn minimal_dfa_from_space(h: &HalfSpace) -> Dfa {
    let own = match h.side {
        HalfSide::Minus => &h.dfa,
        HalfSide::Plus => &h.op,
    };
    let k = own.alphabet.len();
    let mut index: BTreeMap<Bits, usize> = BTreeMap::new();
    let mut elems = vec![h.init.clone()];
    index.insert(h.init.clone(), 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k as u8 {
            let next = h.act(&elems[i], a);
            let j = *index.entry(next.clone()).or_insert_with(|| {
                elems.push(next);
                queue.push_back(elems.len() - 1);
                elems.len() - 1
            });
            row.push(j);
        }
        delta.push(row);
    }
    let accepting = (0..elems.len()).filter(|&i| h.trace(&elems[i])).collect();
    Dfa {
        alphabet: own.alphabet.clone(),
        states: elems.len(),
        init: 0,
        accepting,
        delta,
    }
    .minimize()
}

/// The liftings of the letter action to the free cover on the
/// irreducibles, each one a minimal nondeterministic automaton.
#[derive(Debug, Clone)]
pub struct MinimalNfas {
    /// Total number of liftings (product of fiber sizes).
    pub count: u128,
    pub nfas: Vec<Nfa>,
}

/// Enumerates every lifting of the action (and of the initial class)
/// to subsets of the irreducibles. Each lifting is an NFA on
/// `irr(space)` accepting the side's language.
///
/// With `dedup` set, automata equal up to a permutation of states are
/// reported once.
pub fn minimal_nfas(h: &HalfSpace, limit: usize, dedup: bool) -> Result<MinimalNfas, Error> {
    let own = match h.side {
        HalfSide::Minus => &h.dfa,
        HalfSide::Plus => &h.op,
    };
    let k = own.alphabet.len();
    let irr = h.space.irreducibles().to_vec();
    let n = irr.len();
    let join_of = |mask: usize| {
        let mut v = h.space.zero();
        for (j, g) in irr.iter().enumerate() {
            if mask >> j & 1 == 1 {
                v.or_assign(g);
            }
        }
        v
    };
    let fiber = |target: &Bits| -> Vec<usize> {
        (0..1usize << n).filter(|&m| join_of(m) == *target).collect()
    };
    // one fiber per (state, letter) transition plus one for the inits
    let mut fibers: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        for a in 0..k as u8 {
            fibers.push(fiber(&h.act(&irr[j], a)));
        }
    }
    fibers.push(fiber(&h.init));
    let count = fibers
        .iter()
        .map(|f| f.len() as u128)
        .product::<u128>();
    if count > limit as u128 {
        return Err(Error::LimitExceeded {
            what: format!("minimal NFA liftings ({count} of them)"),
            limit,
        });
    }
    let accepting: BTreeSet<usize> = (0..n).filter(|&j| h.trace(&irr[j])).collect();
    let mut nfas = Vec::new();
    let mut choice = vec![0usize; fibers.len()];
    loop {
        let mut delta = vec![vec![BTreeSet::new(); k]; n];
        for j in 0..n {
            for a in 0..k {
                let mask = fibers[j * k + a][choice[j * k + a]];
                delta[j][a] = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            }
        }
        let init_mask = fibers[n * k][choice[n * k]];
        let nfa = Nfa {
            alphabet: own.alphabet.clone(),
            states: n,
            inits: (0..n).filter(|&x| init_mask >> x & 1 == 1).collect(),
            accepting: accepting.clone(),
            delta,
        };
        nfas.push(nfa);
        // odometer over the fiber product
        let mut pos = 0;
        loop {
            if pos == fibers.len() {
                break;
            }
            choice[pos] += 1;
            if choice[pos] < fibers[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == fibers.len() {
            break;
        }
    }
    if dedup {
        nfas = dedup_up_to_iso(nfas);
    }
    Ok(MinimalNfas { count, nfas })
}

fn dedup_up_to_iso(nfas: Vec<Nfa>) -> Vec<Nfa> {
    let mut kept: Vec<Nfa> = Vec::new();
    for nfa in nfas {
        if !kept.iter().any(|k| nfa_isomorphic(k, &nfa)) {
            kept.push(nfa);
        }
    }
    kept
}

fn nfa_isomorphic(x: &Nfa, y: &Nfa) -> bool {
    if x.states != y.states || x.inits.len() != y.inits.len() || x.accepting.len() != y.accepting.len() {
        return false;
    }
    let n = x.states;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        x.inits.iter().all(|&q| y.inits.contains(&p[q]))
            && x.accepting.iter().all(|&q| y.accepting.contains(&p[q]))
            && (0..n).all(|q| {
                (0..x.alphabet.len()).all(|a| {
                    let mapped: BTreeSet<usize> = x.delta[q][a].iter().map(|&r| p[r]).collect();
                    mapped == y.delta[p[q]][a]
                })
            })
    })
}

fn permute(p: &mut Vec<usize>, at: usize, ok: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if at == p.len() {
        return ok(p);
    }
    for i in at..p.len() {
        p.swap(at, i);
        if permute(p, at + 1, ok) {
            p.swap(at, i);
            return true;
        }
        p.swap(at, i);
    }
    false
}
