//! Language-complexity measures derived from the state spaces, and the
//! matrix-of-languages generalization.
//!
//! The complexity of a regular language is the base-two logarithm of the
//! cardinality of its prefix-class span. Cardinalities are the primary
//! data; the logarithm is reported as a decimal alongside and never
//! compared in tests.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::boolsemi::{reduced_tensor, BoolMatrix, Semimodule};
use crate::error::Error;
use crate::lang::{is_rotation_closed, Alphabet, Dfa, Word};
use crate::limits::Limits;
use crate::theory::{half_state_space, pm_state_space, Evaluation, HalfSide};

/// Exact cardinality of a state space with its logarithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Complexity {
    pub cardinality: usize,
    pub log2: f64,
}

impl Complexity {
    fn of_cardinality(card: usize) -> Complexity {
        Complexity {
            cardinality: card,
            log2: (card as f64).log2(),
        }
    }
}

/// `c(L) = log2 |A_L(-)|`.
pub fn complexity(dfa: &Dfa) -> Complexity {
    Complexity::of_cardinality(half_state_space(dfa, HalfSide::Minus).space.len())
}

/// Shortest representative words of the joint prefix classes of several
/// automata: BFS over reachable state tuples with lexicographic
/// tie-breaking.
fn product_prefix_reps(dfas: &[&Dfa]) -> Vec<Word> {
    let k = dfas.first().map(|d| d.alphabet.len()).unwrap_or(0);
    let start: Vec<usize> = dfas.iter().map(|d| d.init).collect();
    let mut seen: BTreeMap<Vec<usize>, Word> = BTreeMap::new();
    seen.insert(start.clone(), Vec::new());
    let mut queue = VecDeque::from([start]);
    let mut reps = vec![Vec::new()];
    while let Some(tuple) = queue.pop_front() {
        let rep = seen[&tuple].clone();
        for a in 0..k {
            let next: Vec<usize> = tuple
                .iter()
                .zip(dfas)
                .map(|(&q, d)| d.delta[q][a])
                .collect();
            if !seen.contains_key(&next) {
                let mut w = rep.clone();
                w.push(a as u8);
                seen.insert(next.clone(), w.clone());
                reps.push(w);
                queue.push_back(next);
            }
        }
    }
    reps
}

/// The joint prefix-class span of several languages over one alphabet:
/// the row span of the block matrix whose row for a joint prefix class
/// concatenates, over each language, its profile against that
/// language's suffix classes.
pub fn joint_space(dfas: &[&Dfa], limits: &Limits) -> Result<Semimodule, Error> {
    let mins: Vec<Dfa> = dfas.iter().map(|d| d.minimize()).collect();
    for d in &mins {
        if d.alphabet != mins[0].alphabet {
            return Err(Error::AlphabetMismatch);
        }
    }
    let prefix_reps = product_prefix_reps(&mins.iter().collect::<Vec<_>>());
    let mut suffixes: Vec<Vec<Word>> = Vec::new();
    for d in &mins {
        let op = d.opposite();
        suffixes.push(
            op.representatives()
                .into_iter()
                .map(|r| {
                    let mut w = r.expect("minimal DFA states are reachable");
                    w.reverse();
                    w
                })
                .collect(),
        );
    }
    let cols: usize = suffixes.iter().map(|s| s.len()).sum();
    let mut b = BoolMatrix::zeros(prefix_reps.len(), cols);
    for (s, prefix) in prefix_reps.iter().enumerate() {
        let mut c = 0;
        for (d, suff) in mins.iter().zip(&suffixes) {
            for t in suff {
                let mut w = prefix.clone();
                w.extend_from_slice(t);
                b.set(s, c, d.accepts(&w));
                c += 1;
            }
        }
    }
    b.row_span(limits)
}

/// Joint and conditional complexity of an ordered pair of languages:
/// `c(L2 | L1) = c(L1, L2) - c(L1)`, reported through the two exact
/// cardinalities whose ratio it is the logarithm of.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelativeComplexity {
    pub joint: Complexity,
    pub first: Complexity,
    pub conditional_log2: f64,
}

pub fn relative_complexity(l1: &Dfa, l2: &Dfa, limits: &Limits) -> Result<RelativeComplexity, Error> {
    let joint = Complexity::of_cardinality(joint_space(&[l1, l2], limits)?.len());
    let first = complexity(l1);
    let conditional_log2 = joint.log2 - first.log2;
    Ok(RelativeComplexity {
        joint,
        first,
        conditional_log2,
    })
}

/// Relative complexity of a circular language given an interval
/// language: how much larger the plus-minus space is than the reduced
/// tensor product of the two half spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircRelative {
    /// `|A(+-)|`.
    pub card_space: usize,
    /// Cardinality of the reduced tensor product of A(+) and A(-).
    pub card_tensor: usize,
    pub log2_ratio: f64,
}

pub fn circ_relative(ev: &Evaluation, limits: &Limits) -> Result<CircRelative, Error> {
    let pm = pm_state_space(ev)?;
    let plus = half_state_space(&ev.dfa_i, HalfSide::Plus);
    let minus = half_state_space(&ev.dfa_i, HalfSide::Minus);
    let tensor = reduced_tensor(&plus.space, &minus.space, limits)?;
    let card_space = pm.space.len();
    let card_tensor = tensor.len();
    Ok(CircRelative {
        card_space,
        card_tensor,
        log2_ratio: (card_space as f64).log2() - (card_tensor as f64).log2(),
    })
}

/// A grid of interval languages indexed by out and in labels, together
/// with a circular language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageMatrix {
    #[serde(rename = "out")]
    pub out_labels: Vec<String>,
    #[serde(rename = "in")]
    pub in_labels: Vec<String>,
    pub grid: Vec<Vec<Dfa>>,
    pub circ: Dfa,
}

impl LanguageMatrix {
    pub fn validate(&self) -> Result<(), Error> {
        if self.grid.len() != self.out_labels.len()
            || self.grid.iter().any(|r| r.len() != self.in_labels.len())
        {
            return Err(Error::InvalidAutomaton(
                "grid shape must match the label lists".into(),
            ));
        }
        let alphabet = &self.circ.alphabet;
        for row in &self.grid {
            for d in row {
                if &d.alphabet != alphabet {
                    return Err(Error::AlphabetMismatch);
                }
            }
        }
        if !is_rotation_closed(&self.circ) {
            return Err(Error::NotCircular);
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.circ.alphabet
    }
}

/// The prefix-class span of a matrix of languages: rows are pairs of a
/// joint prefix class and an out label, columns pairs of an in label and
/// a joint suffix class, with entries through the grid language at that
/// label pair.
pub fn matrix_language_space(lm: &LanguageMatrix, limits: &Limits) -> Result<Semimodule, Error> {
    lm.validate()?;
    let mins: Vec<Vec<Dfa>> = lm
        .grid
        .iter()
        .map(|row| row.iter().map(|d| d.minimize()).collect())
        .collect();
    let all: Vec<&Dfa> = mins.iter().flatten().collect();
    let prefix_reps = product_prefix_reps(&all);
    let ops: Vec<Dfa> = all.iter().map(|d| d.opposite()).collect();
    let suffix_reps: Vec<Word> = product_prefix_reps(&ops.iter().collect::<Vec<_>>())
        .into_iter()
        .map(|mut w| {
            w.reverse();
            w
        })
        .collect();
    let n_out = lm.out_labels.len();
    let n_in = lm.in_labels.len();
    let mut b = BoolMatrix::zeros(prefix_reps.len() * n_out, n_in * suffix_reps.len());
    for (s, prefix) in prefix_reps.iter().enumerate() {
        for i in 0..n_out {
            for j in 0..n_in {
                for (t, suffix) in suffix_reps.iter().enumerate() {
                    let mut w = prefix.clone();
                    w.extend_from_slice(suffix);
                    b.set(s * n_out + i, j * suffix_reps.len() + t, mins[i][j].accepts(&w));
                }
            }
        }
    }
    b.row_span(limits)
}
