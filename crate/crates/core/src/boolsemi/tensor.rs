use std::collections::BTreeMap;
use std::collections::BTreeSet;

use super::{Bits, Semimodule};
use crate::error::Error;
use crate::limits::Limits;

/// The tensor product of two finite B-semimodules.
///
/// Elements are realised as bi-ideals of `s x t`: down-closed subsets
/// containing `s x {0}` and `{0} x t` and closed under joins in either
/// coordinate while the other is fixed. The pure tensor `a (x) b` is the
/// principal bi-ideal below `(a, b)`, and the tensor product is the
/// closure of the pure tensors on irreducibles under bi-ideal join.
///
/// Since bi-ideal join is a closure and not a bitwise OR, the resulting
/// lattice is re-embedded through its dual functionals into an OR-based
/// ambient, giving the [`Semimodule`] in `space`.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    left: Semimodule,
    right: Semimodule,
    /// All elements as bi-ideals over `left.len() * right.len()` coords.
    biideals: Vec<Bits>,
    /// Index of each bi-ideal by its OR-embedded profile.
    by_profile: BTreeMap<Bits, usize>,
    /// The tensor product as an OR-based semimodule; ambient coordinate
    /// `k` is the dual functional of `biideals[k]`.
    pub space: Semimodule,
}

struct Ctx {
    nl: usize,
    nr: usize,
    leq_l: Vec<Bits>,
    leq_r: Vec<Bits>,
    join_l: Vec<Vec<usize>>,
    join_r: Vec<Vec<usize>>,
    irr_l: Bits,
    irr_r: Bits,
    zero_l: usize,
    zero_r: usize,
    bottom: Bits,
}

impl Ctx {
    fn new(left: &Semimodule, right: &Semimodule) -> Self {
        let nl = left.len();
        let nr = right.len();
        let table = |m: &Semimodule| -> (Vec<Bits>, Vec<Vec<usize>>, Bits) {
            let els = m.elements();
            let leq = els
                .iter()
                .map(|x| Bits::from_bools(&els.iter().map(|y| y.leq(x)).collect::<Vec<_>>()))
                .collect();
            let join = els
                .iter()
                .map(|x| {
                    els.iter()
                        .map(|y| m.index_of(&x.or(y)).expect("closed"))
                        .collect()
                })
                .collect();
            let mut irr = Bits::zeros(els.len());
            for g in m.irreducibles() {
                irr.set(m.index_of(g).unwrap(), true);
            }
            (leq, join, irr)
        };
        let (leq_l, join_l, irr_l) = table(left);
        let (leq_r, join_r, irr_r) = table(right);
        let zero_l = left.index_of(&left.zero()).unwrap();
        let zero_r = right.index_of(&right.zero()).unwrap();
        let mut bottom = Bits::zeros(nl * nr);
        for i in 0..nl {
            bottom.set(i * nr + zero_r, true);
        }
        for j in 0..nr {
            bottom.set(zero_l * nr + j, true);
        }
        Ctx {
            nl,
            nr,
            leq_l,
            leq_r,
            join_l,
            join_r,
            irr_l,
            irr_r,
            zero_l,
            zero_r,
            bottom,
        }
    }

    /// Smallest bi-ideal containing `x`. The input must be down closed
    /// in both coordinates (a union of bi-ideals is, and that is the only
    /// way this is called); every addition is immediately down
    /// propagated, so the join-closure passes can use the irreducible
    /// characterisation and the cost scales with the sides times the
    /// irreducible counts rather than the occupied cells squared.
    fn close(&self, x: &Bits) -> Bits {
        let with_bottom = x.or(&self.bottom);
        let mut rows: Vec<Bits> = (0..self.nl)
            .map(|i| {
                let mut b = Bits::zeros(self.nr);
                for j in 0..self.nr {
                    if with_bottom.get(i * self.nr + j) {
                        b.set(j, true);
                    }
                }
                b
            })
            .collect();
        // pending column additions awaiting down propagation, per row
        let mut dirty: Vec<Bits> = vec![Bits::zeros(self.nr); self.nl];
        let mut any_dirty = false;
        loop {
            let mut changed = false;
            if any_dirty {
                for i in 0..self.nl {
                    if dirty[i].is_zero() {
                        continue;
                    }
                    let mut dd = Bits::zeros(self.nr);
                    for j in dirty[i].iter_ones() {
                        dd.or_assign(&self.leq_r[j]);
                    }
                    dirty[i] = Bits::zeros(self.nr);
                    for i2 in self.leq_l[i].iter_ones() {
                        rows[i2].or_assign(&dd);
                    }
                }
                any_dirty = false;
            }
            // join closure within each row; the new cells get down
            // propagated on the spot so the rows stay mutually down
            // closed for the column pass
            for i in 0..self.nl {
                let mut row = rows[i].clone();
                let delta = join_close_down(&mut row, &self.leq_r, &self.irr_r, &self.join_r, self.zero_r);
                if !delta.is_zero() {
                    changed = true;
                    let mut dd = Bits::zeros(self.nr);
                    for j in delta.iter_ones() {
                        dd.or_assign(&self.leq_r[j]);
                    }
                    for i2 in self.leq_l[i].iter_ones() {
                        rows[i2].or_assign(&dd);
                    }
                }
                rows[i].or_assign(&row);
            }
            // join closure within each column; additions are deferred to
            // the down-propagation pass of the next round
            for j in 0..self.nr {
                let mut col = Bits::zeros(self.nl);
                for (i, r) in rows.iter().enumerate() {
                    if r.get(j) {
                        col.set(i, true);
                    }
                }
                let delta = join_close_down(&mut col, &self.leq_l, &self.irr_l, &self.join_l, self.zero_l);
                if !delta.is_zero() {
                    changed = true;
                    any_dirty = true;
                    for i in delta.iter_ones() {
                        rows[i].set(j, true);
                        dirty[i].set(j, true);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = Bits::zeros(self.nl * self.nr);
        for (i, r) in rows.iter().enumerate() {
            for j in r.iter_ones() {
                out.set(i * self.nr + j, true);
            }
        }
        out
    }

    fn pure(&self, i: usize, j: usize) -> Bits {
        // principal down-set of (i, j): already join closed

        let mut b = Bits::zeros(self.nl * self.nr);
        for i2 in self.leq_l[i].iter_ones() {
            for j2 in self.leq_r[j].iter_ones() {
                b.set(i2 * self.nr + j2, true);
            }
        }
        b.or(&self.bottom)
    }
}

/// Closes a down-closed index set under joins, returning the added
/// indices. A down-closed set's join closure is exactly the elements
/// equal to the join of the set's irreducibles below them, so one pass
/// over the candidates suffices.
fn join_close_down(
    s: &mut Bits,
    leq: &[Bits],
    irr: &Bits,
    join: &[Vec<usize>],
    zero: usize,
) -> Bits {
    let t = s.and(irr);
    let mut delta = Bits::zeros(s.len());
    for x in 0..s.len() {
        if s.get(x) {
            continue;
        }
        let mut acc = zero;
        for g in leq[x].and(&t).iter_ones() {
            acc = join[acc][g];
        }
        if acc == x {
            s.set(x, true);
            delta.set(x, true);
        }
    }
    delta
}

impl TensorSpace {
    pub fn new(left: &Semimodule, right: &Semimodule, limits: &Limits) -> Result<Self, Error> {
        if left.len() * right.len() > limits.max_elements {
            return Err(Error::LimitExceeded {
                what: "tensor ambient".into(),
                limit: limits.max_elements,
            });
        }
        let ctx = Ctx::new(left, right);
        let mut all: BTreeSet<Bits> = BTreeSet::new();
        all.insert(ctx.bottom.clone());
        // a two-element factor is a copy of B and tensoring with B
        // changes nothing: the bi-ideals are exactly bottom together
        // with a principal down-set at the nonzero level
        if right.len() == 2 || left.len() == 2 {
            if right.len() == 2 {
                let one_r = 1 - ctx.zero_r;
                for i in 0..ctx.nl {
                    let mut bi = ctx.bottom.clone();
                    for i2 in ctx.leq_l[i].iter_ones() {
                        bi.set(i2 * ctx.nr + one_r, true);
                    }
                    all.insert(bi);
                }
            } else {
                let one_l = 1 - ctx.zero_l;
                for j in 0..ctx.nr {
                    let mut bi = ctx.bottom.clone();
                    for j2 in ctx.leq_r[j].iter_ones() {
                        bi.set(one_l * ctx.nr + j2, true);
                    }
                    all.insert(bi);
                }
            }
            return Self::from_biideals(left, right, all);
        }
        let mut frontier: Vec<Bits> = Vec::new();
        let mut pures: Vec<Bits> = Vec::new();
        for a in left.irreducibles() {
            let i = left.index_of(a).unwrap();
            for b in right.irreducibles() {
                let j = right.index_of(b).unwrap();
                let p = ctx.pure(i, j);
                pures.push(p.clone());
                if all.insert(p.clone()) {
                    frontier.push(p);
                }
            }
        }
        // joining against the pure tensors on irreducibles reaches the
        // full closure: every bi-ideal is a bi-ideal join of them
        while let Some(x) = frontier.pop() {
            for y in &pures {
                let u = ctx.close(&x.or(y));
                if !all.contains(&u) {
                    all.insert(u.clone());
                    frontier.push(u);
                }
            }
            if all.len() > limits.max_elements {
                return Err(Error::LimitExceeded {
                    what: "tensor closure".into(),
                    limit: limits.max_elements,
                });
            }
        }
        Self::from_biideals(left, right, all)
    }

    /// Re-embeds a complete set of bi-ideals: coordinate `k` of a
    /// profile is the dual functional of `biideals[k]`, which sends `x`
    /// to 0 iff `x` is contained in it.
    fn from_biideals(
        left: &Semimodule,
        right: &Semimodule,
        all: BTreeSet<Bits>,
    ) -> Result<Self, Error> {
        let biideals: Vec<Bits> = all.into_iter().collect();
        let n = biideals.len();
        let mut profiles: BTreeSet<Bits> = BTreeSet::new();
        let mut by_profile = BTreeMap::new();
        for (idx, x) in biideals.iter().enumerate() {
            let p = Bits::from_bools(&biideals.iter().map(|a| !x.leq(a)).collect::<Vec<_>>());
            by_profile.insert(p.clone(), idx);
            profiles.insert(p);
        }
        assert_eq!(profiles.len(), n, "dual embedding must be injective");
        let space = Semimodule::from_closed_elements(n, profiles);
        Ok(TensorSpace {
            left: left.clone(),
            right: right.clone(),
            biideals,
            by_profile,
            space,
        })
    }

    pub fn left(&self) -> &Semimodule {
        &self.left
    }

    pub fn right(&self) -> &Semimodule {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.biideals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The pure tensor `a (x) b` as an element of `space`.
    pub fn pure(&self, a: &Bits, b: &Bits) -> Bits {
        let ctx = Ctx::new(&self.left, &self.right);
        let i = self.left.index_of(a).expect("left element");
        let j = self.right.index_of(b).expect("right element");
        let bi = ctx.pure(i, j);
        self.profile_of(&bi)
    }

    /// Join of elements in the tensor product (bi-ideal closure of the
    /// union, not bitwise OR of profiles in general; on profiles produced
    /// by this space the two agree because the embedding is a hom).
    pub fn join(&self, x: &Bits, y: &Bits) -> Bits {
        x.or(y)
    }

    /// The bi-ideal of pairs `(a, b)` whose joins of pure tensors give
    /// the element with this profile.
    pub fn pairs_of(&self, profile: &Bits) -> Vec<(Bits, Bits)> {
        let nr = self.right.len();
        self.pair_indices_of(profile)
            .into_iter()
            .map(|(i, j)| {
                debug_assert!(j < nr);
                (
                    self.left.elements()[i].clone(),
                    self.right.elements()[j].clone(),
                )
            })
            .collect()
    }

    /// Like [`pairs_of`](Self::pairs_of), but as element indices into the
    /// factors.
    pub fn pair_indices_of(&self, profile: &Bits) -> Vec<(usize, usize)> {
        let idx = *self.by_profile.get(profile).expect("tensor element");
        let bi = &self.biideals[idx];
        let nr = self.right.len();
        bi.iter_ones().map(|k| (k / nr, k % nr)).collect()
    }

    fn profile_of(&self, bi: &Bits) -> Bits {
        Bits::from_bools(&self.biideals.iter().map(|a| !bi.leq(a)).collect::<Vec<_>>())
    }
}

/// Outcome of the two concrete flatness probes: injectivity of
/// `iota (x) id_s` for the standard embeddings of the diamond M3 and the
/// pentagon N5 into `B^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatnessReport {
    pub m3_injective: bool,
    pub n5_injective: bool,
}

/// Flatness of a finite B-semimodule coincides with distributivity.
pub fn is_flat(s: &Semimodule) -> bool {
    s.is_distributive()
}

/// Runs both probe maps and reports their injectivity. A flat module
/// passes both; M3 fails its own probe and N5 fails the other.
pub fn flatness_probes(s: &Semimodule, limits: &Limits) -> Result<FlatnessReport, Error> {
    let m3 = probe_module(&["110", "101", "011"], limits)?;
    let n5 = probe_module(&["101", "010", "110"], limits)?;
    Ok(FlatnessReport {
        m3_injective: probe_injective(&m3, s, limits)?,
        n5_injective: probe_injective(&n5, s, limits)?,
    })
}

fn probe_module(rows: &[&str], limits: &Limits) -> Result<Semimodule, Error> {
    let gens = rows.iter().map(|r| Bits::parse(r).unwrap()).collect();
    Semimodule::span(3, gens, limits)
}

/// Injectivity of `iota (x) id_s : P (x) s -> B^3 (x) s` where `iota` is
/// the inclusion of `P` into its ambient `B^3`. The codomain is `s^3`,
/// and a tensor element maps to the coordinate-wise join of its pairs.
fn probe_injective(p: &Semimodule, s: &Semimodule, limits: &Limits) -> Result<bool, Error> {
    let t = TensorSpace::new(p, s, limits)?;
    let mut images = BTreeSet::new();
    for x in t.space.elements() {
        let mut comps = vec![Bits::zeros(s.ambient()); 3];
        for (a, b) in t.pairs_of(x) {
            for k in a.iter_ones() {
                comps[k].or_assign(&b);
            }
        }
        let mut img = Bits::zeros(3 * s.ambient());
        for (k, c) in comps.iter().enumerate() {
            for i in c.iter_ones() {
                img.set(k * s.ambient() + i, true);
            }
        }
        images.insert(img);
    }
    Ok(images.len() == t.space.len())
}

/// The reduced tensor product: the image of the tensor product in the
/// double-dual coordinates. `x (x) y` maps to the Kronecker product of
/// the profiles of `x` and `y` over the irreducible functionals of the
/// respective duals, and the reduced tensor is the span of those images.
pub fn reduced_tensor(
    left: &Semimodule,
    right: &Semimodule,
    limits: &Limits,
) -> Result<Semimodule, Error> {
    let dl = left.dual();
    let dr = right.dual();
    let wl = dl.irreducibles().len();
    let wr = dr.irreducibles().len();
    let embed_l: Vec<Bits> = left
        .irreducibles()
        .iter()
        .map(|x| left.double_dual_image_via(&dl, x))
        .collect();
    let embed_r: Vec<Bits> = right
        .irreducibles()
        .iter()
        .map(|x| right.double_dual_image_via(&dr, x))
        .collect();
    let mut gens = Vec::new();
    for a in &embed_l {
        for b in &embed_r {
            let mut g = Bits::zeros(wl * wr);
            for i in a.iter_ones() {
                for j in b.iter_ones() {
                    g.set(i * wr + j, true);
                }
            }
            gens.push(g);
        }
    }
    Semimodule::span(wl * wr, gens, limits)
}
