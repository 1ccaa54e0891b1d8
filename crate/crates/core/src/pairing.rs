//! Theories generated by a single Boolean pairing matrix, and the four
//! theories over the empty alphabet.
//!
//! A pairing theory evaluates a labelled interval `I(a, b)` to a matrix
//! entry `M(a, b)` and the unlabelled circle to a chosen value `lambda`.
//! Its plus-minus space is spanned by the pure label pairs together with
//! an adjoined cup (the unlabelled arc), whose pairings close up into a
//! square Gram matrix.

use serde::{Deserialize, Serialize};

use crate::boolsemi::{BoolMatrix, Semimodule};
use crate::error::Error;
use crate::lang::Alphabet;
use crate::limits::Limits;
use crate::theory::Evaluation;

/// A pairing matrix with a circle value. Rows are the out labels (minus
/// side), columns the in labels (plus side).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingTheory {
    pub matrix: BoolMatrix,
    #[serde(with = "bit_serde")]
    pub lambda: bool,
}

mod bit_serde {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(*b))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            n => Err(D::Error::custom(format!("lambda must be 0 or 1, got {n}"))),
        }
    }
}

/// The Gram matrix of the plus-minus space of a pairing theory: one row
/// per label pair `(v, u)` (out label major, in label fastest), plus a
/// final row for the cup.
///
/// Gluing `(v, u)` against `(v', u')` closes two intervals, giving
/// `M(v, u') M(v', u)`; gluing a pair against the cup closes the single
/// interval `M(v, u)`; two cups close into the circle `lambda`.
pub fn extended_gram(t: &PairingTheory) -> BoolMatrix {
    let rows = t.matrix.rows;
    let cols = t.matrix.cols;
    let n = rows * cols;
    let mut g = BoolMatrix::zeros(n + 1, n + 1);
    let label = |i: usize| (i / cols, i % cols);
    for i in 0..n {
        let (vi, ui) = label(i);
        for j in 0..n {
            let (vj, uj) = label(j);
            g.set(i, j, t.matrix.get(vi, uj) && t.matrix.get(vj, ui));
        }
        g.set(i, n, t.matrix.get(vi, ui));
        g.set(n, i, t.matrix.get(vi, ui));
    }
    g.set(n, n, t.lambda);
    g
}

/// The plus-minus space of a pairing theory: the row span of the
/// extended Gram matrix. The last generator is the cup.
pub fn pairing_state_space(t: &PairingTheory, limits: &Limits) -> Result<Semimodule, Error> {
    extended_gram(t).row_span(limits)
}

/// The four evaluations over the empty alphabet, numbered by which of
/// the two languages contain the empty word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotlessCase {
    /// 1: both languages empty.
    BothEmpty,
    /// 2: intervals evaluate to 0, the circle to 1.
    CircleOnly,
    /// 3: both evaluate to 1.
    Both,
    /// 4: intervals evaluate to 1, the circle to 0.
    IntervalOnly,
}

impl DotlessCase {
    pub fn from_number(n: u8) -> Option<DotlessCase> {
        match n {
            1 => Some(DotlessCase::BothEmpty),
            2 => Some(DotlessCase::CircleOnly),
            3 => Some(DotlessCase::Both),
            4 => Some(DotlessCase::IntervalOnly),
            _ => None,
        }
    }
}

/// The evaluation over the empty alphabet realizing a dotless case; the
/// only word is empty, so each language is empty or the singleton.
pub fn dotless_theory(case: DotlessCase) -> Evaluation {
    let empty = Alphabet::empty();
    let (interval, circle) = match case {
        DotlessCase::BothEmpty => ("0", "0"),
        DotlessCase::CircleOnly => ("0", "1"),
        DotlessCase::Both => ("1", "1"),
        DotlessCase::IntervalOnly => ("1", "0"),
    };
    Evaluation::from_regexes(interval, circle, &empty)
        .expect("dotless languages are rotation closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolsemi::Bits;
    use crate::theory::{general_state_space, GenDiagram, SignSeq};

    fn fpair() -> PairingTheory {
        PairingTheory {
            matrix: BoolMatrix::from_rows(&["01", "11"]),
            lambda: true,
        }
    }

    fn rows(m: &BoolMatrix) -> Vec<String> {
        m.data.iter().map(|r| r.to_bit_string()).collect()
    }

    #[test]
    fn extended_gram_with_circle_one() {
        let g = extended_gram(&fpair());
        assert_eq!(
            rows(&g),
            vec!["00010", "01011", "00111", "11111", "01111"]
        );
        // the cup column is the sum of the xy' and yx' columns
        assert_eq!(g.col(4), g.col(1).or(&g.col(2)));
    }

    #[test]
    fn extended_gram_with_circle_zero() {
        let mut t = fpair();
        t.lambda = false;
        let g = extended_gram(&t);
        assert_eq!(
            rows(&g),
            vec!["00010", "01011", "00111", "11111", "01110"]
        );
        // without the circle value the cup column is independent
        let cols: Vec<Bits> = (0..4).map(|c| g.col(c)).collect();
        let cup = g.col(4);
        for mask in 0u32..16 {
            let mut join = Bits::zeros(5);
            for (c, col) in cols.iter().enumerate() {
                if mask & (1 << c) != 0 {
                    join.or_assign(col);
                }
            }
            assert_ne!(join, cup);
        }
    }

    #[test]
    fn trivial_one_by_one_theory() {
        let t = PairingTheory {
            matrix: BoolMatrix::from_rows(&["1"]),
            lambda: true,
        };
        assert_eq!(rows(&extended_gram(&t)), vec!["11", "11"]);
    }

    #[test]
    fn cup_relations_in_the_state_space() {
        let g1 = extended_gram(&fpair());
        // with the circle value 1 the cup is the join of the two mixed
        // pairs
        assert_eq!(g1.row(4), &g1.row(1).or(g1.row(2)));
        let mut t = fpair();
        t.lambda = false;
        let g0 = extended_gram(&t);
        let row = |i: usize| g0.row(i).clone();
        assert_eq!(row(4).or(&row(3)), row(3));
        assert_eq!(row(4).or(&row(0)), row(4));
        assert_eq!(row(4).or(&row(1)), row(4).or(&row(2)));
    }

    #[test]
    fn diagonal_pairing_absorbs_the_cup_at_rank_four() {
        let t = PairingTheory {
            matrix: BoolMatrix::from_rows(&["10", "01"]),
            lambda: true,
        };
        let g = extended_gram(&t);
        assert_eq!(g.row(4), &g.row(0).or(g.row(3)));
        let space = pairing_state_space(&t, &Limits::default()).unwrap();
        assert_eq!(space.irreducibles().len(), 4);
        assert_eq!(space.len(), 16);
    }

    #[test]
    fn json_round_trip() {
        let t = fpair();
        let j = serde_json::to_string(&t).unwrap();
        assert!(j.contains("\"lambda\":1"));
        let back: PairingTheory = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
    }

    fn seqs(max: usize) -> Vec<SignSeq> {
        let mut out = vec![SignSeq(Vec::new())];
        let mut layer = out.clone();
        for _ in 0..max {
            layer = layer
                .iter()
                .flat_map(|s| {
                    ["+", "-"].iter().map(move |c| {
                        SignSeq::parse(&format!("{s}{c}")).unwrap()
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn dotless_closed_forms_up_to_four_points() {
        let limits = Limits::default();
        for eps in seqs(4) {
            let n = eps.len();
            let balance_zero = {
                let plus = eps.0.iter().filter(|s| **s == crate::theory::Sign::Plus).count();
                2 * plus == n
            };
            // case 1: everything evaluates to zero, only the empty
            // configuration keeps its unit
            let g1 = general_state_space(&dotless_theory(DotlessCase::BothEmpty), &eps, &limits)
                .unwrap();
            assert_eq!(g1.space.len(), if n == 0 { 2 } else { 1 }, "case 1 at {eps}");
            // case 2: a configuration survives exactly when it can be
            // closed into circles alone
            let g2 = general_state_space(&dotless_theory(DotlessCase::CircleOnly), &eps, &limits)
                .unwrap();
            assert_eq!(g2.space.len(), if balance_zero { 2 } else { 1 }, "case 2 at {eps}");
            // case 3: every diagram evaluates to one
            let g3 =
                general_state_space(&dotless_theory(DotlessCase::Both), &eps, &limits).unwrap();
            assert_eq!(g3.space.len(), 2, "case 3 at {eps}");
        }
    }

    fn profile_of(
        g: &crate::theory::GeneralSpace,
        arcs: Vec<(usize, usize, usize)>,
        labels: Vec<(usize, usize)>,
    ) -> Bits {
        let d = GenDiagram { arcs, labels };
        let i = g.spanning.iter().position(|x| *x == d).expect("diagram");
        g.profile(i).clone()
    }

    #[test]
    fn interval_only_case_relations() {
        let limits = Limits::default();
        let ev = dotless_theory(DotlessCase::IntervalOnly);
        // on (+,-): the arc is below the ray pair
        let pm = general_state_space(&ev, &SignSeq::parse("+-").unwrap(), &limits).unwrap();
        let arc = profile_of(&pm, vec![(0, 1, 0)], vec![]);
        let pair = profile_of(&pm, vec![], vec![(0, 0), (1, 0)]);
        assert_eq!(pair.or(&arc), pair);
        assert_ne!(arc, pair);
        // on (+,-,-): capping either minus point of the full ray
        // diagram and joining gives the full ray diagram
        let pmm = general_state_space(&ev, &SignSeq::parse("+--").unwrap(), &limits).unwrap();
        let cup13 = profile_of(&pmm, vec![(0, 2, 0)], vec![(1, 0)]);
        let cup12 = profile_of(&pmm, vec![(0, 1, 0)], vec![(2, 0)]);
        let rays = profile_of(&pmm, vec![], vec![(0, 0), (1, 0), (2, 0)]);
        assert_eq!(cup13.or(&cup12), rays);
        // mirror on (+,+,-)
        let ppm = general_state_space(&ev, &SignSeq::parse("++-").unwrap(), &limits).unwrap();
        let m13 = profile_of(&ppm, vec![(0, 2, 0)], vec![(1, 0)]);
        let m23 = profile_of(&ppm, vec![(1, 2, 0)], vec![(0, 0)]);
        let rays3 = profile_of(&ppm, vec![], vec![(0, 0), (1, 0), (2, 0)]);
        assert_eq!(m13.or(&m23), rays3);
        // on (+,+,-,-): exchanging which endpoints the two arcs use
        // balances against the nested closure
        let g4 = general_state_space(&ev, &SignSeq::parse("++--").unwrap(), &limits).unwrap();
        let a = profile_of(&g4, vec![(0, 2, 0)], vec![(1, 0), (3, 0)]);
        let b = profile_of(&g4, vec![(1, 3, 0)], vec![(0, 0), (2, 0)]);
        let nested = profile_of(&g4, vec![(0, 3, 0), (1, 2, 0)], vec![]);
        assert_eq!(a.or(&b), a.or(&nested));
    }
}
