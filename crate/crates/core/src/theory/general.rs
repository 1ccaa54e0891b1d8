use std::collections::BTreeMap;
use std::fmt;

use crate::boolsemi::{Bits, BoolMatrix, Semimodule, TensorSpace};
use crate::error::Error;
use crate::limits::Limits;

use super::pm::{arc_ctx, ArcCtx};
use super::Evaluation;

/// Orientation of a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A boundary configuration: a finite sequence of oriented points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignSeq(pub Vec<Sign>);

impl SignSeq {
    pub fn parse(text: &str) -> Result<SignSeq, Error> {
        let mut signs = Vec::new();
        for (offset, c) in text.char_indices() {
            match c {
                '+' => signs.push(Sign::Plus),
                '-' => signs.push(Sign::Minus),
                _ => {
                    return Err(Error::Syntax {
                        offset,
                        message: format!("expected '+' or '-', found {c:?}"),
                    })
                }
            }
        }
        Ok(SignSeq(signs))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The configuration glued against this one: reversed order with
    /// all orientations flipped.
    pub fn dual(&self) -> SignSeq {
        SignSeq(self.0.iter().rev().map(|s| s.flip()).collect())
    }

    pub fn concat(&self, other: &SignSeq) -> SignSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignSeq(v)
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// A spanning diagram on a boundary configuration: a partial matching of
/// plus points to minus points by labelled arcs, with class labels on the
/// unmatched points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenDiagram {
    /// `(plus point, minus point, arc monoid element)`, sorted by plus
    /// point.
    pub arcs: Vec<(usize, usize, usize)>,
    /// `(point, class)` for unmatched points, sorted by point: suffix
    /// classes on plus points, prefix classes on minus points.
    pub labels: Vec<(usize, usize)>,
}

/// The state space of an arbitrary boundary configuration, presented by
/// its spanning diagrams and their pairings with the diagrams of the
/// dual configuration.
#[derive(Debug, Clone)]
pub struct GeneralSpace {
    pub ev: Evaluation,
    pub eps: SignSeq,
    pub spanning: Vec<GenDiagram>,
    /// Spanning diagrams of the dual configuration, indexing the Gram
    /// columns.
    pub dual_spanning: Vec<GenDiagram>,
    pub gram: BoolMatrix,
    /// Row span of the Gram matrix: two diagrams are identified exactly
    /// when they pair equally against every dual diagram.
    pub space: Semimodule,
}

impl GeneralSpace {
    pub fn profile(&self, d: usize) -> &Bits {
        self.gram.row(d)
    }
}

/// The spanning diagrams of a sign sequence, the diagrams of its dual,
/// and the pairing matrix between them, without closing the row span.
/// Useful when the closure would be too large to enumerate but the
/// pairing profiles already answer the question at hand.
pub fn general_gram(
    ev: &Evaluation,
    eps: &SignSeq,
    limits: &Limits,
) -> Result<(Vec<GenDiagram>, Vec<GenDiagram>, BoolMatrix), Error> {
    if eps.len() > limits.max_sign_len {
        return Err(Error::LimitExceeded {
            what: format!("boundary configuration of {} points", eps.len()),
            limit: limits.max_sign_len,
        });
    }
    let ctx = arc_ctx(ev)?;
    let spanning = diagrams(eps, &ctx, limits)?;
    let dual = eps.dual();
    let dual_spanning = diagrams(&dual, &ctx, limits)?;
    let mut gram = BoolMatrix::zeros(spanning.len(), dual_spanning.len());
    for (i, d) in spanning.iter().enumerate() {
        for (j, d2) in dual_spanning.iter().enumerate() {
            gram.set(i, j, glue_value(ev, &ctx, eps, d, d2));
        }
    }
    Ok((spanning, dual_spanning, gram))
}

/// Builds the state space of a sign sequence for an evaluation.
pub fn general_state_space(
    ev: &Evaluation,
    eps: &SignSeq,
    limits: &Limits,
) -> Result<GeneralSpace, Error> {
    let (spanning, dual_spanning, gram) = general_gram(ev, eps, limits)?;
    let space = gram.row_span(limits)?;
    Ok(GeneralSpace {
        ev: ev.clone(),
        eps: eps.clone(),
        spanning,
        dual_spanning,
        gram,
        space,
    })
}

/// All spanning diagrams of a configuration, in a fixed deterministic
/// order: matchings are chosen plus point by plus point (free first,
/// then minus partners in increasing order), then labels cycle with the
/// last point fastest.
fn diagrams(eps: &SignSeq, ctx: &ArcCtx, limits: &Limits) -> Result<Vec<GenDiagram>, Error> {
    let plus_pts: Vec<usize> = (0..eps.len()).filter(|&i| eps.0[i] == Sign::Plus).collect();
    let minus_pts: Vec<usize> = (0..eps.len()).filter(|&i| eps.0[i] == Sign::Minus).collect();
    let mut matchings: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut partial: Vec<(usize, usize)> = Vec::new();
    fn rec(
        k: usize,
        plus_pts: &[usize],
        minus_pts: &[usize],
        used: &mut Vec<bool>,
        partial: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if k == plus_pts.len() {
            out.push(partial.clone());
            return;
        }
        rec(k + 1, plus_pts, minus_pts, used, partial, out);
        for (mi, &m) in minus_pts.iter().enumerate() {
            if !used[mi] {
                used[mi] = true;
                partial.push((plus_pts[k], m));
                rec(k + 1, plus_pts, minus_pts, used, partial, out);
                partial.pop();
                used[mi] = false;
            }
        }
    }
    let mut used = vec![false; minus_pts.len()];
    rec(0, &plus_pts, &minus_pts, &mut used, &mut partial, &mut matchings);
    let mut out = Vec::new();
    for matching in matchings {
        let matched: Vec<usize> = matching.iter().flat_map(|&(p, m)| [p, m]).collect();
        let free: Vec<usize> = (0..eps.len()).filter(|i| !matched.contains(i)).collect();
        // odometer over arc labels then free-point labels
        let mut choices: Vec<usize> = Vec::new();
        let mut radices: Vec<usize> = Vec::new();
        for _ in &matching {
            radices.push(ctx.monoid.len());
        }
        for &pt in &free {
            radices.push(match eps.0[pt] {
                Sign::Plus => ctx.plus_reps.len(),
                Sign::Minus => ctx.minus_reps.len(),
            });
        }
        choices.resize(radices.len(), 0);
        loop {
            let arcs: Vec<(usize, usize, usize)> = matching
                .iter()
                .zip(&choices)
                .map(|(&(p, m), &e)| (p, m, e))
                .collect();
            let labels: Vec<(usize, usize)> = free
                .iter()
                .zip(choices[matching.len()..].iter())
                .map(|(&pt, &c)| (pt, c))
                .collect();
            out.push(GenDiagram { arcs, labels });
            if out.len() > limits.max_elements {
                return Err(Error::LimitExceeded {
                    what: "spanning diagram enumeration".to_string(),
                    limit: limits.max_elements,
                });
            }
            let mut i = radices.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choices[i] += 1;
                if choices[i] < radices[i] {
                    break;
                }
                choices[i] = 0;
            }
            if choices.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// Evaluates the closed configuration obtained by gluing a diagram on
/// `eps` with a diagram on the dual configuration, point `i` against
/// point `n - 1 - i`. Every glued component is either a chain from a
/// prefix label through arcs to a suffix label, contributing an interval
/// evaluation, or a closed loop of arcs, contributing a circular one.
fn glue_value(ev: &Evaluation, ctx: &ArcCtx, eps: &SignSeq, d: &GenDiagram, d2: &GenDiagram) -> bool {
    let n = eps.len();
    let sides = [d, d2];
    let sign_at = |s: usize, i: usize| {
        if s == 0 {
            eps.0[i]
        } else {
            eps.0[n - 1 - i].flip()
        }
    };
    let partner = |s: usize, i: usize| (1 - s, n - 1 - i);
    let mut arc_at: [BTreeMap<usize, usize>; 2] = [BTreeMap::new(), BTreeMap::new()];
    let mut label_at: [BTreeMap<usize, usize>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for s in 0..2 {
        for (ai, &(p, m, _)) in sides[s].arcs.iter().enumerate() {
            arc_at[s].insert(p, ai);
            arc_at[s].insert(m, ai);
        }
        for &(pt, c) in &sides[s].labels {
            label_at[s].insert(pt, c);
        }
    }
    let mut used = [vec![false; d.arcs.len()], vec![false; d2.arcs.len()]];
    let mut value = true;
    // chains, one per free minus point
    for s in 0..2 {
        for &(pt, c) in &sides[s].labels {
            if sign_at(s, pt) != Sign::Minus {
                continue;
            }
            let mut w = ctx.minus_reps[c].clone();
            let (mut cs, mut ci) = partner(s, pt);
            loop {
                debug_assert_eq!(sign_at(cs, ci), Sign::Plus);
                if let Some(&ai) = arc_at[cs].get(&ci) {
                    used[cs][ai] = true;
                    let (_, m, e) = sides[cs].arcs[ai];
                    w.extend_from_slice(ctx.monoid.rep(e));
                    let next = partner(cs, m);
                    cs = next.0;
                    ci = next.1;
                } else {
                    w.extend_from_slice(&ctx.plus_reps[label_at[cs][&ci]]);
                    value &= ev.alpha_i(&w);
                    break;
                }
            }
        }
    }
    // closed loops of the remaining arcs
    for s in 0..2 {
        for ai in 0..sides[s].arcs.len() {
            if used[s][ai] {
                continue;
            }
            let mut w = Vec::new();
            let (mut cs, mut ci) = (s, sides[s].arcs[ai].0);
            loop {
                let aj = arc_at[cs][&ci];
                if used[cs][aj] {
                    break;
                }
                used[cs][aj] = true;
                let (_, m, e) = sides[cs].arcs[aj];
                w.extend_from_slice(ctx.monoid.rep(e));
                let next = partner(cs, m);
                cs = next.0;
                ci = next.1;
            }
            value &= ev.alpha_circ(&w);
        }
    }
    value
}

/// Result of comparing the tensor product of two state spaces with the
/// space of the concatenated configuration through the gluing map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorCompare {
    /// Cardinality of the tensor product of the two spaces.
    pub tensor_card: usize,
    /// Cardinality of the reduced tensor product (image in double-dual
    /// coordinates).
    pub reduced_card: usize,
    /// Cardinality of the space of the concatenated configuration.
    pub target_card: usize,
    /// Number of distinct images of tensor elements.
    pub image_card: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl TensorCompare {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Compares `A(eps1) (x) A(eps2)` with `A(eps1 eps2)` under the map that
/// places diagrams side by side.
pub fn tensor_compare(
    ev: &Evaluation,
    eps1: &SignSeq,
    eps2: &SignSeq,
    limits: &Limits,
) -> Result<TensorCompare, Error> {
    let left = general_state_space(ev, eps1, limits)?;
    let right = general_state_space(ev, eps2, limits)?;
    let cat = general_state_space(ev, &eps1.concat(eps2), limits)?;
    tensor_compare_spaces(&left, &right, &cat, limits)
}

/// The comparison itself, on spaces the caller has already built (so a
/// batch of comparisons can share them).
pub(crate) fn tensor_compare_spaces(
    left: &GeneralSpace,
    right: &GeneralSpace,
    cat: &GeneralSpace,
    limits: &Limits,
) -> Result<TensorCompare, Error> {
    let eps1 = &left.eps;
    let tensor = TensorSpace::new(&left.space, &right.space, limits)?;
    let reduced = crate::boolsemi::reduced_tensor(&left.space, &right.space, limits)?;
    debug_assert_eq!(cat.eps, eps1.concat(&right.eps));
    let mut by_diagram: BTreeMap<&GenDiagram, usize> = BTreeMap::new();
    for (i, d) in cat.spanning.iter().enumerate() {
        by_diagram.insert(d, i);
    }
    let combined = |di: &GenDiagram, dj: &GenDiagram| -> GenDiagram {
        let n1 = eps1.len();
        let mut arcs = di.arcs.clone();
        arcs.extend(dj.arcs.iter().map(|&(p, m, e)| (p + n1, m + n1, e)));
        arcs.sort_unstable();
        let mut labels = di.labels.clone();
        labels.extend(dj.labels.iter().map(|&(pt, c)| (pt + n1, c)));
        labels.sort_unstable();
        GenDiagram { arcs, labels }
    };
    // image of each pure tensor: all side-by-side placements of spanning
    // diagrams lying below the two factors. The placement row depends
    // only on the diagram pair, and whether a diagram lies below an
    // element only on its profile, so aggregate the placements per
    // profile pair first.
    let distinct = |g: &GeneralSpace| -> (Vec<Bits>, Vec<usize>) {
        let mut profiles: Vec<Bits> = Vec::new();
        let mut of_row = Vec::with_capacity(g.spanning.len());
        for i in 0..g.spanning.len() {
            let p = g.gram.row(i);
            let k = profiles.iter().position(|q| q == p).unwrap_or_else(|| {
                profiles.push(p.clone());
                profiles.len() - 1
            });
            of_row.push(k);
        }
        (profiles, of_row)
    };
    let (lp, lp_of_row) = distinct(left);
    let (rp, rp_of_row) = distinct(right);
    let mut placed = vec![vec![Bits::zeros(cat.gram.cols); rp.len()]; lp.len()];
    for (i, di) in left.spanning.iter().enumerate() {
        for (j, dj) in right.spanning.iter().enumerate() {
            let k = by_diagram[&combined(di, dj)];
            placed[lp_of_row[i]][rp_of_row[j]].or_assign(cat.gram.row(k));
        }
    }
    let below = |profiles: &[Bits], m: &Semimodule| -> Vec<Vec<usize>> {
        m.elements()
            .iter()
            .map(|a| {
                (0..profiles.len())
                    .filter(|&k| profiles[k].leq(a))
                    .collect()
            })
            .collect()
    };
    let lp_below = below(&lp, &left.space);
    let rp_below = below(&rp, &right.space);
    let mut pure_images =
        vec![vec![Bits::zeros(cat.gram.cols); right.space.len()]; left.space.len()];
    for (ia, lks) in lp_below.iter().enumerate() {
        for (ib, rks) in rp_below.iter().enumerate() {
            let img = &mut pure_images[ia][ib];
            for &lk in lks {
                for &rk in rks {
                    img.or_assign(&placed[lk][rk]);
                }
            }
        }
    }
    let mut images = std::collections::BTreeSet::new();
    for x in tensor.space.elements() {
        let mut img = Bits::zeros(cat.gram.cols);
        for (ia, ib) in tensor.pair_indices_of(x) {
            img.or_assign(&pure_images[ia][ib]);
        }
        debug_assert!(cat.space.contains(&img));
        images.insert(img);
    }
    Ok(TensorCompare {
        tensor_card: tensor.space.len(),
        reduced_card: reduced.len(),
        target_card: cat.space.len(),
        image_card: images.len(),
        injective: images.len() == tensor.space.len(),
        surjective: images.len() == cat.space.len(),
    })
}
