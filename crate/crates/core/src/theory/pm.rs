use crate::boolsemi::{Bits, BoolMatrix, Semimodule};
use crate::error::Error;
use crate::lang::{Dfa, TransitionMonoid, Word};
use crate::limits::Limits;

use super::Evaluation;

/// A spanning diagram of the space on a plus point next to a minus
/// point: either an arc joining the two boundary points, labelled by an
/// element of the arc monoid, or a pair of rays leaving through the two
/// points, labelled by a suffix class and a prefix class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmDiagram {
    Arc(usize),
    /// `plus` indexes the suffix classes (states of the reversed
    /// minimal DFA), `minus` the prefix classes (states of the minimal
    /// DFA).
    Pair { plus: usize, minus: usize },
}

/// The state space of the configuration (+,-) with its semiring
/// structure.
///
/// The arc monoid is the transition monoid of the product of the two
/// minimal DFAs, the smallest quotient on which both evaluations are
/// class functions, so every gluing below is well defined on labels.
#[derive(Debug, Clone)]
pub struct PmStateSpace {
    pub ev: Evaluation,
    pub monoid: TransitionMonoid,
    /// Pair diagrams first (prefix class outer, suffix class inner),
    /// then arcs in monoid order; the identity arc is the unit.
    pub spanning: Vec<PmDiagram>,
    pub gram: BoolMatrix,
    /// Span of the two-sided profiles (row and column of the Gram
    /// matrix concatenated; the form is symmetric here, but quotients
    /// elsewhere are taken two-sided, so the shape is kept uniform).
    pub space: Semimodule,
    pub unit: Bits,
    /// `mult[i][j]` is the spanning diagram of the product, or `None`
    /// when the gluing evaluates to zero.
    pub mult: Vec<Vec<Option<usize>>>,
    /// Prefix words for the minus classes.
    pub minus_reps: Vec<Word>,
    /// Suffix words for the plus classes.
    pub plus_reps: Vec<Word>,
}

impl PmStateSpace {
    pub fn profile(&self, d: usize) -> Bits {
        let mut row = self.gram.row(d).clone();
        let mut two = Bits::zeros(2 * self.gram.cols);
        for t in row.iter_ones() {
            two.set(t, true);
        }
        row = self.gram.col(d);
        for t in row.iter_ones() {
            two.set(self.gram.cols + t, true);
        }
        two
    }

    /// The semimodule element represented by a spanning diagram.
    pub fn element_of(&self, d: usize) -> Bits {
        self.profile(d)
    }

    /// Multiplies two spanning diagrams.
    pub fn mul(&self, i: usize, j: usize) -> Option<usize> {
        self.mult[i][j]
    }
}

/// Arc monoid and boundary labels shared by the diagram spaces: the
/// transition monoid of the product DFA, the reversed minimal DFA, and
/// representative words for the prefix and suffix classes.
pub(super) struct ArcCtx {
    pub monoid: TransitionMonoid,
    pub op: Dfa,
    pub minus_reps: Vec<Word>,
    pub plus_reps: Vec<Word>,
}

pub(super) fn arc_ctx(ev: &Evaluation) -> Result<ArcCtx, Error> {
    let product = product_dfa(&ev.dfa_i, &ev.dfa_circ)?;
    let monoid = TransitionMonoid::new(&product);
    let op = ev.dfa_i.opposite();
    let minus_reps: Vec<Word> = ev
        .dfa_i
        .representatives()
        .into_iter()
        .map(|r| r.expect("minimal DFA states are reachable"))
        .collect();
    let plus_reps: Vec<Word> = op
        .representatives()
        .into_iter()
        .map(|r| {
            let mut w = r.expect("minimal DFA states are reachable");
            w.reverse();
            w
        })
        .collect();
    Ok(ArcCtx {
        monoid,
        op,
        minus_reps,
        plus_reps,
    })
}

/// Builds the space on (+,-) together with its Gram matrix and
/// concatenation product.
pub fn pm_state_space(ev: &Evaluation) -> Result<PmStateSpace, Error> {
    let ArcCtx {
        monoid,
        op,
        minus_reps,
        plus_reps,
    } = arc_ctx(ev)?;
    let mut spanning = Vec::new();
    for minus in 0..ev.dfa_i.states {
        for plus in 0..op.states {
            spanning.push(PmDiagram::Pair { plus, minus });
        }
    }
    for e in 0..monoid.len() {
        spanning.push(PmDiagram::Arc(e));
    }
    let n = spanning.len();
    let word = |d: &PmDiagram| -> (Option<Word>, Option<(usize, usize)>) {
        match d {
            PmDiagram::Arc(e) => (Some(monoid.rep(*e).clone()), None),
            PmDiagram::Pair { plus, minus } => (None, Some((*plus, *minus))),
        }
    };
    let alpha_i = |parts: &[&[u8]]| -> bool {
        let w: Word = parts.iter().flat_map(|p| p.iter().copied()).collect();
        ev.alpha_i(&w)
    };
    let mut gram = BoolMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = match (word(&spanning[i]), word(&spanning[j])) {
                ((Some(w1), _), (Some(w2), _)) => {
                    let mut w = w1.clone();
                    w.extend_from_slice(&w2);
                    ev.alpha_circ(&w)
                }
                ((Some(w1), _), (_, Some((p, m)))) | ((_, Some((p, m))), (Some(w1), _)) => {
                    alpha_i(&[&minus_reps[m], &w1, &plus_reps[p]])
                }
                ((_, Some((p1, m1))), (_, Some((p2, m2)))) => {
                    alpha_i(&[&minus_reps[m1], &plus_reps[p2]])
                        && alpha_i(&[&minus_reps[m2], &plus_reps[p1]])
                }
                _ => unreachable!(),
            };
            gram.set(i, j, v);
        }
    }
    let pair_count = ev.dfa_i.states * op.states;
    let arc_index = move |e: usize| pair_count + e;
    let pair_index = |plus: usize, minus: usize| minus * op.states + plus;
    // prepending a word to a suffix class runs the reversed DFA on the
    // reversed word; appending to a prefix class runs the DFA forward
    let prepend = |plus: usize, w: &[u8]| {
        let rev: Word = w.iter().rev().copied().collect();
        op.run(plus, &rev)
    };
    let mut mult = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            mult[i][j] = match (&spanning[i], &spanning[j]) {
                (PmDiagram::Arc(e), PmDiagram::Arc(f)) => Some(arc_index(monoid.mul(*e, *f))),
                (PmDiagram::Arc(e), PmDiagram::Pair { plus, minus }) => {
                    Some(pair_index(prepend(*plus, monoid.rep(*e)), *minus))
                }
                (PmDiagram::Pair { plus, minus }, PmDiagram::Arc(e)) => {
                    Some(pair_index(*plus, ev.dfa_i.run(*minus, monoid.rep(*e))))
                }
                (
                    PmDiagram::Pair { plus: p1, minus: m1 },
                    PmDiagram::Pair { plus: p2, minus: m2 },
                ) => {
                    if alpha_i(&[&minus_reps[*m1], &plus_reps[*p2]]) {
                        Some(pair_index(*p1, *m2))
                    } else {
                        None
                    }
                }
            };
        }
    }
    let mut out = PmStateSpace {
        ev: ev.clone(),
        monoid,
        spanning,
        gram,
        space: Semimodule::span(0, Vec::new(), &Limits::default())?,
        unit: Bits::zeros(0),
        mult,
        minus_reps,
        plus_reps,
    };
    let profiles: Vec<Bits> = (0..n).map(|d| out.profile(d)).collect();
    out.space = Semimodule::span(2 * n, profiles, &Limits::from_env())?;
    out.unit = out.profile(arc_index(out.monoid.identity()));
    Ok(out)
}

/// Full product automaton (all state pairs) so that transformation
/// equality refines both syntactic congruences.
fn product_dfa(d1: &Dfa, d2: &Dfa) -> Result<Dfa, Error> {
    if d1.alphabet != d2.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let k = d1.alphabet.len();
    let n = d2.states;
    let mut delta = Vec::with_capacity(d1.states * n);
    for q in 0..d1.states {
        for r in 0..n {
            delta.push((0..k).map(|a| d1.delta[q][a] * n + d2.delta[r][a]).collect());
        }
    }
    Ok(Dfa {
        alphabet: d1.alphabet.clone(),
        states: d1.states * n,
        init: d1.init * n + d2.init,
        accepting: std::collections::BTreeSet::new(),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Alphabet;

    fn even_with(circ: &str) -> PmStateSpace {
        let a = Alphabet::new("a").unwrap();
        let ev = Evaluation::from_regexes("(aa)*", circ, &a).unwrap();
        pm_state_space(&ev).unwrap()
    }

    fn rows(m: &BoolMatrix) -> Vec<String> {
        m.data.iter().map(|r| r.to_bit_string()).collect()
    }

    #[test]
    fn even_even_gram_and_free_rank_four() {
        let pm = even_with("(aa)*");
        assert_eq!(pm.spanning.len(), 6);
        assert_eq!(
            rows(&pm.gram),
            vec!["100010", "001001", "010001", "000110", "100110", "011001"]
        );
        assert!(pm.gram.is_symmetric());
        assert_eq!(pm.space.irreducibles().len(), 4);
        assert_eq!(pm.space.len(), 16);
        // the identity arc is the sum of the two matched pairs
        let arc0 = pm.element_of(4);
        assert_eq!(arc0, pm.element_of(0).or(&pm.element_of(3)));
        assert_eq!(pm.unit, arc0);
    }

    #[test]
    fn even_odd_gram_and_relations() {
        let pm = even_with("a(aa)*");
        assert_eq!(
            rows(&pm.gram),
            vec!["100010", "001001", "010001", "000110", "100101", "011010"]
        );
        assert!(pm.gram.is_symmetric());
        assert_eq!(pm.space.irreducibles().len(), 6);
        let x = |i: usize| pm.element_of(i - 1);
        // the four defining relations among the six spanning elements
        assert_eq!(x(1).or(&x(5)), x(4).or(&x(5)));
        assert_eq!(x(2).or(&x(6)), x(3).or(&x(6)));
        assert_eq!(
            x(1).or(&x(2)).or(&x(3)).or(&x(4)),
            x(5).or(&x(6))
        );
        assert_eq!(
            x(1).or(&x(2)).or(&x(3)).or(&x(5)),
            x(5).or(&x(6))
        );
    }

    #[test]
    fn even_all_gram_and_relations() {
        let pm = even_with("a*");
        assert_eq!(
            rows(&pm.gram),
            vec!["100010", "001001", "010001", "000110", "100111", "011011"]
        );
        assert!(pm.gram.is_symmetric());
        let x = |i: usize| pm.element_of(i - 1);
        assert_eq!(x(5), x(5).or(&x(4)));
        assert_eq!(x(5), x(5).or(&x(1)));
        assert_eq!(x(6), x(6).or(&x(2)));
        assert_eq!(x(6), x(6).or(&x(3)));
        assert_eq!(
            x(5).or(&x(6)),
            x(1).or(&x(2)).or(&x(3)).or(&x(4))
        );
        assert_eq!(
            x(5).or(&x(3)).or(&x(2)),
            x(6).or(&x(4)).or(&x(1))
        );
    }

    #[test]
    fn semiring_laws_on_spanning_classes() {
        for circ in ["(aa)*", "a(aa)*", "a*"] {
            let pm = even_with(circ);
            let n = pm.spanning.len();
            let unit = pm.spanning.len() - pm.monoid.len();
            // unit element is the identity arc
            for i in 0..n {
                assert_eq!(pm.mul(unit, i), Some(i));
                assert_eq!(pm.mul(i, unit), Some(i));
            }
            // associativity with zero absorption
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let left = pm.mul(i, j).and_then(|x| pm.mul(x, l));
                        let right = pm.mul(j, l).and_then(|x| pm.mul(i, x));
                        assert_eq!(left, right);
                    }
                }
            }
            // pair diagrams form a two-sided ideal, arcs a subsemiring
            let is_pair = |d: usize| matches!(pm.spanning[d], PmDiagram::Pair { .. });
            for i in 0..n {
                for j in 0..n {
                    if let Some(x) = pm.mul(i, j) {
                        if is_pair(i) || is_pair(j) {
                            assert!(is_pair(x));
                        } else {
                            assert!(!is_pair(x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_letter_language_pm_space_is_consistent() {
        let ab = Alphabet::new("ab").unwrap();
        let ev = Evaluation::from_regexes("(a+b)*b(a+b)", "(a+b)*", &ab).unwrap();
        let pm = pm_state_space(&ev).unwrap();
        assert!(pm.gram.is_symmetric());
        // nondegeneracy of the span: distinct elements differ as profiles
        assert_eq!(
            pm.space.elements().len(),
            pm.space
                .elements()
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len()
        );
    }
}
