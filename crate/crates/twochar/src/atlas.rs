//! Per-group cache of subgroups, their conjugacy classes and Schur classes.
//!
//! A pair `(P, μ)` is brought to canonical form by conjugating `P` to its class
//! representative `P₀ = y⁻¹Py`, pulling `μ` back along `γ_y`, identifying the
//! Schur class and taking the least index in its orbit under `N(P₀)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cochain::{conjugate_pullback_into, Cochain, SchurClasses};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// A subgroup class together with a Schur class of its representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub class: usize,
    pub schur: usize,
}

pub struct Atlas {
    group: Arc<FiniteGroup>,
    level: u64,
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<Elem>, usize>,
    locals: Vec<Arc<FiniteGroup>>,
    class_of: Vec<usize>,
    /// `y` with `y P₀ y⁻¹ = P`.
    conjugator: Vec<Elem>,
    reps: Vec<usize>,
    normalizers: Vec<Subgroup>,
    schur: Vec<OnceLock<Result<SchurClasses>>>,
    /// `perm[c][k][i]`: class of the pullback of representative `i` along the `k`-th normalizer element.
    perms: Vec<OnceLock<Result<Vec<Vec<usize>>>>>,
}

impl fmt::Debug for Atlas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Atlas")
            .field("group", &self.group.name())
            .field("level", &self.level)
            .field("classes", &self.reps.len())
            .finish()
    }
}

impl Atlas {
    /// Atlas at level `|G|`.
    pub fn new(group: Arc<FiniteGroup>) -> Arc<Self> {
        let n = group.order() as u64;
        Self::with_level(group, n).expect("|G| divides |G|")
    }

    /// Atlas whose cocycles take values in `μ_level`; `|G|` must divide `level`.
    pub fn with_level(group: Arc<FiniteGroup>, level: u64) -> Result<Arc<Self>> {
        let n = group.order() as u64;
        if level == 0 || level % n != 0 {
            return Err(Error::NotAMultiple { old: n, new: level });
        }
        let subgroups = group.all_subgroups();
        let index: HashMap<Vec<Elem>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, p)| (p.elements().to_vec(), i))
            .collect();
        let locals = subgroups
            .iter()
            .map(|p| Arc::new(group.subgroup_as_group(p)))
            .collect();
        let classes = group.subgroup_conjugacy_classes();
        let mut class_of = vec![0; subgroups.len()];
        let mut conjugator = vec![0; subgroups.len()];
        let mut reps = Vec::with_capacity(classes.len());
        let mut normalizers = Vec::with_capacity(classes.len());
        for (c, cl) in classes.iter().enumerate() {
            let p0 = &cl.representative;
            reps.push(index[p0.elements()]);
            normalizers.push(group.normalizer(p0));
            for q in &cl.orbit {
                let qi = index[q.elements()];
                class_of[qi] = c;
                conjugator[qi] = (0..group.order())
                    .find(|&y| group.conjugate_subgroup(y, p0) == *q)
                    .expect("orbit member is conjugate");
            }
        }
        let k = reps.len();
        Ok(Arc::new(Atlas {
            group,
            level,
            subgroups,
            index,
            locals,
            class_of,
            conjugator,
            reps,
            normalizers,
            schur: (0..k).map(|_| OnceLock::new()).collect(),
            perms: (0..k).map(|_| OnceLock::new()).collect(),
        }))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Same group and level.
    pub fn same_as(&self, other: &Atlas) -> bool {
        self.level == other.level && *self.group == *other.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup_index(&self, p: &Subgroup) -> Result<usize> {
        self.index
            .get(p.elements())
            .copied()
            .ok_or_else(|| Error::NotASubgroup(p.to_string()))
    }

    /// The group structure of a subgroup, shared by every cochain the atlas produces.
    pub fn local(&self, p: &Subgroup) -> Result<&Arc<FiniteGroup>> {
        Ok(&self.locals[self.subgroup_index(p)?])
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_rep(&self, c: usize) -> &Subgroup {
        &self.subgroups[self.reps[c]]
    }

    pub fn class_local(&self, c: usize) -> &Arc<FiniteGroup> {
        &self.locals[self.reps[c]]
    }

    pub fn class_of(&self, p: &Subgroup) -> Result<usize> {
        Ok(self.class_of[self.subgroup_index(p)?])
    }

    /// `y` with `y P₀ y⁻¹ = P` for the class representative `P₀` of `P`.
    pub fn conjugator(&self, p: &Subgroup) -> Result<Elem> {
        Ok(self.conjugator[self.subgroup_index(p)?])
    }

    pub fn normalizer(&self, c: usize) -> &Subgroup {
        &self.normalizers[c]
    }

    pub fn schur(&self, c: usize) -> Result<&SchurClasses> {
        self.schur[c]
            .get_or_init(|| SchurClasses::new(self.class_local(c).clone(), self.level))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Action of the normalizer of `P₀` on its Schur classes, one row per normalizer element.
    pub fn normalizer_action(&self, c: usize) -> Result<&[Vec<usize>]> {
        self.perms[c]
            .get_or_init(|| {
                let schur = self.schur(c)?;
                let p0 = self.class_rep(c);
                self.normalizers[c]
                    .elements()
                    .iter()
                    .map(|&x| {
                        (0..schur.len())
                            .map(|i| {
                                let pulled = conjugate_pullback_into(
                                    &self.group,
                                    schur.representative(i),
                                    p0,
                                    x,
                                    p0,
                                    self.class_local(c).clone(),
                                )?;
                                schur.identify(&pulled)
                            })
                            .collect()
                    })
                    .collect()
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Least class index in the normalizer orbit of Schur class `i` of `P₀`.
    pub fn orbit_min(&self, c: usize, i: usize) -> Result<usize> {
        Ok(self
            .normalizer_action(c)?
            .iter()
            .map(|row| row[i])
            .min()
            .unwrap_or(i))
    }

    /// Moves a 2-cocycle on `P` to the class representative `P₀`.
    pub fn transport(&self, p: &Subgroup, mu: &Cochain) -> Result<(usize, Cochain)> {
        let pi = self.subgroup_index(p)?;
        if mu.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: mu.degree(),
            });
        }
        if mu.group().order() != p.order() {
            return Err(Error::GroupMismatch);
        }
        if self.level % mu.level() != 0 {
            return Err(Error::LevelMismatch(mu.level(), self.level));
        }
        let c = self.class_of[pi];
        let mu0 = conjugate_pullback_into(
            &self.group,
            mu,
            p,
            self.conjugator[pi],
            self.class_rep(c),
            self.class_local(c).clone(),
        )?;
        Ok((c, mu0))
    }

    /// Schur class index on `P₀` of the transported cocycle, without the normalizer reduction.
    pub fn identify(&self, p: &Subgroup, mu: &Cochain) -> Result<(usize, usize)> {
        let (c, mu0) = self.transport(p, mu)?;
        Ok((c, self.schur(c)?.identify(&mu0)?))
    }

    pub fn canonicalize(&self, p: &Subgroup, mu: &Cochain) -> Result<BasisKey> {
        let (c, i) = self.identify(p, mu)?;
        Ok(BasisKey {
            class: c,
            schur: self.orbit_min(c, i)?,
        })
    }

    /// Canonical subgroup and cocycle of a key.
    pub fn orbit(&self, key: BasisKey) -> Result<(&Subgroup, &Cochain)> {
        Ok((
            self.class_rep(key.class),
            self.schur(key.class)?.representative(key.schur),
        ))
    }

    /// All canonical keys, ordered by subgroup class then Schur index.
    pub fn basis(&self) -> Result<Vec<BasisKey>> {
        let mut out = Vec::new();
        for c in 0..self.class_count() {
            for i in 0..self.schur(c)?.len() {
                if self.orbit_min(c, i)? == i {
                    out.push(BasisKey { class: c, schur: i });
                }
            }
        }
        Ok(out)
    }

    /// `|G : P₀|` for the class of a key.
    pub fn index_of(&self, key: BasisKey) -> usize {
        self.group.order() / self.class_rep(key.class).order()
    }
}
