use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use super::Bits;
use crate::error::Error;
use crate::limits::Limits;

/// A finite B-semimodule presented inside an ambient `B^n`.
///
/// `elements` is the full join closure (always containing zero) and
/// `generators` is the unique minimal generating set, the join
/// irreducibles. Elements are kept sorted, so equality of semimodules
/// inside the same ambient is structural equality.
///
/// The JSON form is `{"ambient": n, "generators": [bit-strings]}`; the
/// element closure is reconstructed on deserialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semimodule {
    ambient: usize,
    elements: Vec<Bits>,
    generators: Vec<Bits>,
}

#[derive(Serialize, Deserialize)]
struct SemimoduleJson {
    ambient: usize,
    generators: Vec<Bits>,
}

impl Serialize for Semimodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SemimoduleJson {
            ambient: self.ambient,
            generators: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Semimodule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SemimoduleJson::deserialize(d)?;
        if j.generators.iter().any(|g| g.len() != j.ambient) {
            return Err(D::Error::custom("generator width differs from ambient"));
        }
        let limits = Limits {
            max_elements: usize::MAX,
            ..Limits::default()
        };
        Semimodule::span(j.ambient, j.generators, &limits).map_err(D::Error::custom)
    }
}

/// Witness that a semimodule fails distributivity: the functional dual to
/// the irreducible `x` is not join-preserving, because `x <= u v v` while
/// `x` is below neither `u` nor `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeObstruction {
    pub x: Bits,
    pub u: Bits,
    pub v: Bits,
}

/// Coevaluation data of a projective semimodule `p`.
///
/// For each irreducible `x` the functional `f_x(u) = [x <= u]` is
/// join-preserving exactly when `p` is distributive; the pairs `(x, f_x)`
/// then satisfy the snake identities against the evaluation pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coevaluation {
    /// The irreducibles of `p`, in sorted order.
    pub irr: Vec<Bits>,
    /// Profile of each `f_x` over the irreducibles of `p`; entry `j` is
    /// `f_x(irr[j])`.
    pub functionals: Vec<Bits>,
}

impl Semimodule {
    /// Join closure of `generators` inside `B^ambient`.
    pub fn span(ambient: usize, generators: Vec<Bits>, limits: &Limits) -> Result<Self, Error> {
        for g in &generators {
            assert_eq!(g.len(), ambient, "generator width mismatch");
        }
        let mut elements: BTreeSet<Bits> = BTreeSet::new();
        elements.insert(Bits::zeros(ambient));
        let mut frontier: Vec<Bits> = Vec::new();
        for g in &generators {
            if elements.insert(g.clone()) {
                frontier.push(g.clone());
            }
        }
        // joining against the generators alone reaches the full closure,
        // since every element is itself a join of generators
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let j = x.or(g);
                if !elements.contains(&j) {
                    elements.insert(j.clone());
                    frontier.push(j);
                }
            }
            if elements.len() > limits.max_elements {
                return Err(Error::LimitExceeded {
                    what: "semimodule closure".into(),
                    limit: limits.max_elements,
                });
            }
        }
        let elements: Vec<Bits> = elements.into_iter().collect();
        let generators = irreducibles_of(&elements);
        Ok(Semimodule {
            ambient,
            elements,
            generators,
        })
    }

    /// Wraps a set of elements already known to be join-closed.
    pub fn from_closed_elements(ambient: usize, elements: BTreeSet<Bits>) -> Self {
        let mut elements = elements;
        elements.insert(Bits::zeros(ambient));
        let elements: Vec<Bits> = elements.into_iter().collect();
        debug_assert!(elements
            .iter()
            .all(|x| elements.iter().all(|y| elements.binary_search(&x.or(y)).is_ok())));
        let generators = irreducibles_of(&elements);
        Semimodule {
            ambient,
            elements,
            generators,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when the only element is zero.
    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Bits] {
        &self.elements
    }

    pub fn zero(&self) -> Bits {
        Bits::zeros(self.ambient)
    }

    pub fn contains(&self, x: &Bits) -> bool {
        x.len() == self.ambient && self.elements.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &Bits) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    /// The unique minimal generating set: the join irreducibles.
    pub fn irreducibles(&self) -> &[Bits] {
        &self.generators
    }

    /// Greatest element of the semimodule below `x` coordinate-wise, the
    /// meet of `x` with the whole module.
    pub fn floor(&self, x: &Bits) -> Bits {
        let mut out = self.zero();
        for e in &self.elements {
            if e.leq(x) {
                out.or_assign(e);
            }
        }
        out
    }

    /// Meet in the lattice of elements: the largest element below both.
    pub fn meet(&self, a: &Bits, b: &Bits) -> Bits {
        self.floor(&a.and(b))
    }

    /// Join of all elements.
    pub fn top(&self) -> Bits {
        let mut t = self.zero();
        for e in &self.elements {
            t.or_assign(e);
        }
        t
    }

    /// Dual together with the full pairing table: `pairing[a][b] =
    /// f_a(b)`, rows and columns indexed by the sorted elements.
    pub fn dual_with_pairing(&self) -> (Semimodule, super::BoolMatrix) {
        let n = self.elements.len();
        let mut pairing = super::BoolMatrix::zeros(n, n);
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                pairing.set(i, j, !b.leq(a));
            }
        }
        (self.dual(), pairing)
    }

    /// A semimodule is distributive exactly when each join irreducible is
    /// join prime.
    pub fn is_distributive(&self) -> bool {
        self.snake_obstruction().is_none()
    }

    /// Projectivity, injectivity, distributivity, and being a retract of
    /// a free module all coincide for finite B-semimodules.
    pub fn is_projective(&self) -> bool {
        self.is_distributive()
    }

    /// Searches for an irreducible whose dual functional fails to
    /// preserve joins. `None` means the semimodule is distributive.
    pub fn snake_obstruction(&self) -> Option<SnakeObstruction> {
        for x in &self.generators {
            for u in &self.elements {
                if x.leq(u) {
                    continue;
                }
                for v in &self.elements {
                    if !x.leq(v) && x.leq(&u.or(v)) {
                        return Some(SnakeObstruction {
                            x: x.clone(),
                            u: u.clone(),
                            v: v.clone(),
                        });
                    }
                }
            }
        }
        None
    }

    /// Profile of the dual functional `f_a` over the irreducibles:
    /// `f_a(x) = 0` iff `x <= a`.
    pub fn dual_functional(&self, a: &Bits) -> Bits {
        Bits::from_bools(
            &self
                .generators
                .iter()
                .map(|x| !x.leq(a))
                .collect::<Vec<_>>(),
        )
    }

    /// The dual semimodule: all join-preserving maps to B, each recorded
    /// by its profile over the irreducibles of `self`. Every such map is
    /// `f_a` for a unique element `a`, so `|M*| = |M|`.
    pub fn dual(&self) -> Semimodule {
        let elems: BTreeSet<Bits> = self.elements.iter().map(|a| self.dual_functional(a)).collect();
        Semimodule::from_closed_elements(self.generators.len(), elems)
    }

    /// Profile of an element over the irreducibles of the dual: the image
    /// of `x` under the canonical map into the double dual.
    pub fn double_dual_image(&self, x: &Bits) -> Bits {
        self.double_dual_image_via(&self.dual(), x)
    }

    /// Like [`double_dual_image`](Self::double_dual_image) with the dual
    /// already computed, so a batch of images shares it.
    pub fn double_dual_image_via(&self, dual: &Semimodule, x: &Bits) -> Bits {
        let irr_dual = dual.irreducibles();
        // an irreducible of the dual is the profile of some f_a; evaluate
        // it at x by recovering a as the join of the irreducibles it kills
        Bits::from_bools(
            &irr_dual
                .iter()
                .map(|g| {
                    let mut a = self.zero();
                    for (j, irr_j) in self.generators.iter().enumerate() {
                        if !g.get(j) {
                            a.or_assign(irr_j);
                        }
                    }
                    !x.leq(&a)
                })
                .collect::<Vec<_>>(),
        )
    }

    /// Coevaluation pairs of a projective semimodule.
    pub fn coevaluation(&self) -> Result<Coevaluation, Error> {
        if !self.is_distributive() {
            return Err(Error::NotProjective);
        }
        let irr = self.generators.clone();
        let functionals = irr
            .iter()
            .map(|x| Bits::from_bools(&irr.iter().map(|j| x.leq(j)).collect::<Vec<_>>()))
            .collect();
        Ok(Coevaluation {
            irr,
            functionals,
        })
    }

    /// Section of the projection from the free module on the
    /// irreducibles: `x` maps to the indicator of the irreducibles below
    /// it. The composite with coordinate-wise projection is the identity;
    /// the section is a semimodule map exactly when `self` is projective.
    pub fn free_retract(&self) -> Result<Vec<(Bits, Bits)>, Error> {
        if !self.is_distributive() {
            return Err(Error::NotProjective);
        }
        Ok(self
            .elements
            .iter()
            .map(|x| {
                let iota = Bits::from_bools(
                    &self.generators.iter().map(|y| y.leq(x)).collect::<Vec<_>>(),
                );
                (x.clone(), iota)
            })
            .collect())
    }

    /// Abstract isomorphism test. An isomorphism must match join
    /// irreducibles as a poset and extend join-compatibly, so search the
    /// bijections of irreducibles.
    pub fn is_isomorphic(&self, other: &Semimodule) -> bool {
        if self.elements.len() != other.elements.len()
            || self.generators.len() != other.generators.len()
        {
            return false;
        }
        let n = self.generators.len();
        let mut perm: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        self.search_iso(other, 0, &mut perm, &mut used)
    }

    fn search_iso(
        &self,
        other: &Semimodule,
        i: usize,
        perm: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = self.generators.len();
        if i == n {
            return self.iso_extends(other, perm);
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            // order-compatibility with choices already made
            let ok = (0..i).all(|k| {
                let pk = perm[k].unwrap();
                self.generators[i].leq(&self.generators[k]) == other.generators[j].leq(&other.generators[pk])
                    && self.generators[k].leq(&self.generators[i])
                        == other.generators[pk].leq(&other.generators[j])
            });
            if !ok {
                continue;
            }
            perm[i] = Some(j);
            used[j] = true;
            if self.search_iso(other, i + 1, perm, used) {
                return true;
            }
            perm[i] = None;
            used[j] = false;
        }
        false
    }

    fn iso_extends(&self, other: &Semimodule, perm: &[Option<usize>]) -> bool {
        // extend by joins and check the result is a bijective hom
        let mut images: Vec<Bits> = Vec::with_capacity(self.elements.len());
        for x in &self.elements {
            let mut img = other.zero();
            for (k, g) in self.generators.iter().enumerate() {
                if g.leq(x) {
                    img.or_assign(&other.generators[perm[k].unwrap()]);
                }
            }
            images.push(img);
        }
        let distinct: BTreeSet<&Bits> = images.iter().collect();
        if distinct.len() != other.elements.len() {
            return false;
        }
        for (a, x) in self.elements.iter().enumerate() {
            for (b, y) in self.elements.iter().enumerate() {
                let j = x.or(y);
                let ji = self.index_of(&j).unwrap();
                if images[a].or(&images[b]) != images[ji] {
                    return false;
                }
            }
        }
        true
    }
}

/// Join irreducibles of a join-closed element list: the nonzero elements
/// that are not the join of the elements strictly below them.
fn irreducibles_of(elements: &[Bits]) -> Vec<Bits> {
    elements
        .iter()
        .filter(|x| {
            if x.is_zero() {
                return false;
            }
            let mut below = Bits::zeros(x.len());
            for y in elements {
                if y.leq(x) && *y != **x {
                    below.or_assign(y);
                }
            }
            below != **x
        })
        .cloned()
        .collect()
}
