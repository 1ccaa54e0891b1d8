use std::collections::BTreeMap;

use crate::boolsemi::Bits;
use crate::error::Error;
use crate::lang::{is_rotation_closed, Dfa};
use crate::limits::Limits;

use super::general::{general_state_space, tensor_compare_spaces, Sign, SignSeq, TensorCompare};
use super::half::{half_pairing, half_state_space, HalfSide, HalfSpace};
use super::Evaluation;

/// A decomposition of the identity of A(-) as a join of pure tensors
/// `u_i (x) v_i` with `u_i` in A(+) and `v_i` in A(-). One exists
/// exactly when A(-) is distributive; the `v_i` are its irreducibles
/// and each `u_i` pairs as the membership functional of `v_i`.
#[derive(Debug, Clone)]
pub struct IdDecomposition {
    pub minus: HalfSpace,
    pub plus: HalfSpace,
    /// Pairs `(v_i, u_i)`.
    pub pairs: Vec<(Bits, Bits)>,
}

/// Computes the decomposition of the identity for the state spaces of a
/// regular language, or reports that the language is not cuttable.
pub fn id_decomposition(dfa_i: &Dfa) -> Result<IdDecomposition, Error> {
    let minus = half_state_space(dfa_i, HalfSide::Minus);
    let plus = half_state_space(dfa_i, HalfSide::Plus);
    if !minus.space.is_distributive() {
        return Err(Error::NotCuttable);
    }
    let mut pairs = Vec::new();
    for x in minus.space.irreducibles() {
        let u = plus
            .space
            .elements()
            .iter()
            .find(|u| {
                minus
                    .space
                    .elements()
                    .iter()
                    .all(|v| half_pairing(&minus.matrix, v, u) == x.leq(v))
            })
            .expect("distributive A(-) has a coevaluation in A(+)");
        pairs.push((x.clone(), u.clone()));
    }
    // interval evaluations factor through the decomposition: for every
    // prefix class s and suffix class t,
    // alpha(s t) = join_i alpha(s u_i) alpha(v_i t)
    for s in 0..minus.matrix.rows {
        for t in 0..minus.matrix.cols {
            let direct = minus.matrix.get(s, t);
            let via = pairs.iter().any(|(v, u)| {
                half_pairing(&minus.matrix, minus.matrix.row(s), u) && v.get(t)
            });
            assert_eq!(direct, via, "decomposition fails at ({s}, {t})");
        }
    }
    Ok(IdDecomposition { minus, plus, pairs })
}

/// Whether a decomposition of the identity exists for the language.
pub fn is_cuttable(dfa_i: &Dfa) -> bool {
    id_decomposition(dfa_i).is_ok()
}

/// The canonical circular language of a cuttable regular language:
/// a circle evaluates by cutting it open at every decomposition pair,
/// `alpha_circ(w) = join_i alpha_i(v_i w u_i)`. The result is certified
/// rotation closed and returned minimal.
pub fn canonical_circular(dfa_i: &Dfa) -> Result<Dfa, Error> {
    let d = id_decomposition(dfa_i)?;
    let k = d.minus.dfa.alphabet.len();
    let start: Vec<Bits> = d.pairs.iter().map(|(v, _)| v.clone()).collect();
    let mut index: BTreeMap<Vec<Bits>, usize> = BTreeMap::new();
    index.insert(start.clone(), 0);
    let mut queue = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut accepting = std::collections::BTreeSet::new();
    let mut qi = 0;
    while qi < queue.len() {
        let tuple = queue[qi].clone();
        if tuple
            .iter()
            .zip(&d.pairs)
            .any(|(v, (_, u))| half_pairing(&d.minus.matrix, v, u))
        {
            accepting.insert(qi);
        }
        let mut row = Vec::with_capacity(k);
        for a in 0..k as u8 {
            let next: Vec<Bits> = tuple.iter().map(|v| d.minus.act(v, a)).collect();
            let n = index.len();
            let id = *index.entry(next.clone()).or_insert(n);
            if id == n {
                queue.push(next);
            }
            row.push(id);
        }
        delta.push(row);
        qi += 1;
    }
    let dfa = Dfa {
        alphabet: d.minus.dfa.alphabet.clone(),
        states: queue.len(),
        init: 0,
        accepting,
        delta,
    };
    assert!(is_rotation_closed(&dfa), "canonical circle is cyclic");
    Ok(dfa.minimize())
}

/// Outcome of testing whether an evaluation is a topological theory:
/// whether every side-by-side gluing map between the bounded-size
/// configuration spaces is an isomorphism, alongside the cut-based
/// characterisation.
#[derive(Debug, Clone)]
pub struct TqftReport {
    pub cuttable: bool,
    /// Whether the circular language equals the canonical one attached
    /// to the interval language (false when not cuttable).
    pub canonical_matches: bool,
    pub comparisons: Vec<(SignSeq, SignSeq, TensorCompare)>,
    /// All gluing maps up to the size bound are isomorphisms.
    pub is_tqft: bool,
}

/// Compares tensor products with concatenated configuration spaces for
/// every pair of sign sequences of total length at most `max_len`.
pub fn tqft_check(ev: &Evaluation, max_len: usize, limits: &Limits) -> Result<TqftReport, Error> {
    let cuttable = is_cuttable(&ev.dfa_i);
    let canonical_matches = if cuttable {
        canonical_circular(&ev.dfa_i)?.equivalent(&ev.dfa_circ)?
    } else {
        false
    };
    // every factor and every concatenation stays within max_len, so
    // build each configuration space once up front
    let mut spaces = std::collections::BTreeMap::new();
    for l in 0..=max_len {
        for eps in sign_seqs(l) {
            let g = general_state_space(ev, &eps, limits)?;
            spaces.insert(eps, g);
        }
    }
    let mut comparisons = Vec::new();
    let mut is_tqft = true;
    for l1 in 0..=max_len {
        for l2 in 0..=max_len - l1 {
            for e1 in sign_seqs(l1) {
                for e2 in sign_seqs(l2) {
                    let c = tensor_compare_spaces(
                        &spaces[&e1],
                        &spaces[&e2],
                        &spaces[&e1.concat(&e2)],
                        limits,
                    )?;
                    is_tqft &= c.is_isomorphism();
                    comparisons.push((e1.clone(), e2, c));
                }
            }
        }
    }
    Ok(TqftReport {
        cuttable,
        canonical_matches,
        comparisons,
        is_tqft,
    })
}

fn sign_seqs(n: usize) -> Vec<SignSeq> {
    let mut out = vec![SignSeq(Vec::new())];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                [Sign::Plus, Sign::Minus].into_iter().map(move |x| {
                    let mut v = s.0.clone();
                    v.push(x);
                    SignSeq(v)
                })
            })
            .collect();
    }
    out
}
