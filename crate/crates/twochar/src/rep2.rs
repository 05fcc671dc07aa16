//! 2-representations of a finite group stored as decorated G-sets.
//!
//! A [`Rep2`] is a sorted multiset of canonical orbits `(P₀, [μ])`. Two
//! representations are equivalent exactly when their orbit lists agree.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rand::Rng;

use crate::atlas::{Atlas, BasisKey};
use crate::cochain::{conjugate_pullback_into, Cochain, GModule};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::shapiro::Shapiro;

#[derive(Clone)]
pub struct Rep2 {
    atlas: Arc<Atlas>,
    keys: Vec<BasisKey>,
}

impl fmt::Debug for Rep2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rep2")
            .field("group", &self.atlas.group().name())
            .field("keys", &self.keys)
            .finish()
    }
}

impl PartialEq for Rep2 {
    fn eq(&self, other: &Self) -> bool {
        self.atlas.same_as(&other.atlas) && self.keys == other.keys
    }
}

impl Eq for Rep2 {}

/// A cocycle with values in the permutation module of a finite G-set.
#[derive(Clone, Debug, PartialEq)]
pub struct PermCocycleRep {
    theta: Cochain,
}

impl PermCocycleRep {
    pub fn new(theta: Cochain) -> Result<Self> {
        if theta.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: theta.degree(),
            });
        }
        if let Some(t) = theta.cocycle_violation() {
            return Err(Error::NotACocycle(t));
        }
        Ok(PermCocycleRep { theta })
    }

    pub fn theta(&self) -> &Cochain {
        &self.theta
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.theta.group()
    }

    /// `|X|`.
    pub fn size(&self) -> usize {
        self.theta.module().dim()
    }

    /// `g·x`.
    pub fn act(&self, g: Elem, x: usize) -> usize {
        self.theta.module().point_action(g, x)
    }

    /// The component `θ^x(g₁, g₂)`.
    pub fn component(&self, g1: Elem, g2: Elem, x: usize) -> i64 {
        self.theta.at(&[g1, g2])[x]
    }

    /// Orbits of `X`, each listed in increasing order.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.group().order();
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 0..self.size() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n).map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }
}

impl Rep2 {
    /// The empty G-set.
    pub fn zero(atlas: Arc<Atlas>) -> Self {
        Rep2 {
            atlas,
            keys: Vec::new(),
        }
    }

    /// A single canonical orbit.
    pub fn from_key(atlas: Arc<Atlas>, key: BasisKey) -> Result<Self> {
        if key.class >= atlas.class_count()
            || key.schur >= atlas.schur(key.class)?.len()
            || atlas.orbit_min(key.class, key.schur)? != key.schur
        {
            return Err(Error::CrossCheckFailed(format!("{key:?} is not canonical")));
        }
        Ok(Rep2 {
            atlas,
            keys: vec![key],
        })
    }

    /// `⟨triv, P⟩`.
    pub fn permutation(atlas: Arc<Atlas>, p: &Subgroup) -> Result<Self> {
        let class = atlas.class_of(p)?;
        Ok(Rep2 {
            atlas,
            keys: vec![BasisKey { class, schur: 0 }],
        })
    }

    /// `⟨triv, G⟩`, the unit for `⊠`.
    pub fn unit(atlas: Arc<Atlas>) -> Self {
        let whole = atlas.group().whole();
        Self::permutation(atlas, &whole).expect("G is a subgroup of itself")
    }

    /// `⟨triv, 1⟩`, the regular G-set.
    pub fn regular(atlas: Arc<Atlas>) -> Self {
        let one = atlas.group().trivial_subgroup();
        Self::permutation(atlas, &one).expect("1 is a subgroup")
    }

    /// The linear 2-representation `⟨μ, G⟩`.
    pub fn linear(atlas: Arc<Atlas>, mu: &Cochain) -> Result<Self> {
        let whole = atlas.group().whole();
        Self::from_orbits(atlas, &[(whole, mu.clone())])
    }

    /// Canonicalizes arbitrary orbits `(P, μ)`; each `μ` lives over `P` as a group in its own right.
    pub fn from_orbits(atlas: Arc<Atlas>, orbits: &[(Subgroup, Cochain)]) -> Result<Self> {
        let mut keys = orbits
            .iter()
            .map(|(p, mu)| atlas.canonicalize(p, mu))
            .collect::<Result<Vec<_>>>()?;
        keys.sort_unstable();
        Ok(Rep2 { atlas, keys })
    }

    pub fn atlas(&self) -> &Arc<Atlas> {
        &self.atlas
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.atlas.group()
    }

    pub fn level(&self) -> u64 {
        self.atlas.level()
    }

    pub fn keys(&self) -> &[BasisKey] {
        &self.keys
    }

    pub fn is_zero(&self) -> bool {
        self.keys.is_empty()
    }

    /// Canonical orbits in order.
    pub fn orbits(&self) -> Result<Vec<(Subgroup, Cochain)>> {
        self.keys
            .iter()
            .map(|&k| self.atlas.orbit(k).map(|(p, mu)| (p.clone(), mu.clone())))
            .collect()
    }

    /// `Σ |G : P_i|`.
    pub fn degree(&self) -> usize {
        self.keys.iter().map(|&k| self.atlas.index_of(k)).sum()
    }

    /// The same representation over an atlas of the same group at a multiple level.
    pub fn at_level(&self, target: &Arc<Atlas>) -> Result<Rep2> {
        if self.atlas.same_as(target) {
            return Ok(Rep2 {
                atlas: target.clone(),
                keys: self.keys.clone(),
            });
        }
        if **self.atlas.group() != **target.group() {
            return Err(Error::AmbientMismatch);
        }
        let orbits = self
            .orbits()?
            .into_iter()
            .map(|(p, mu)| Ok((p, mu.raise_level(target.level())?)))
            .collect::<Result<Vec<_>>>()?;
        Rep2::from_orbits(target.clone(), &orbits)
    }

    /// Brings two representations of the same group to a common atlas.
    pub fn unify(&self, other: &Rep2) -> Result<(Rep2, Rep2)> {
        if self.atlas.same_as(&other.atlas) {
            return Ok((self.clone(), other.at_level(&self.atlas)?));
        }
        if **self.group() != **other.group() {
            return Err(Error::AmbientMismatch);
        }
        let atlas = Atlas::with_level(self.group().clone(), self.level().lcm(&other.level()))?;
        Ok((self.at_level(&atlas)?, other.at_level(&atlas)?))
    }

    pub fn equivalent(&self, other: &Rep2) -> Result<bool> {
        let (a, b) = self.unify(other)?;
        Ok(a.keys == b.keys)
    }

    /// `r ⊞ s`.
    pub fn direct_sum(&self, other: &Rep2) -> Result<Rep2> {
        let (a, b) = self.unify(other)?;
        let mut keys = a.keys;
        keys.extend(b.keys);
        keys.sort_unstable();
        Ok(Rep2 {
            atlas: a.atlas,
            keys,
        })
    }

    /// `r ⊠ s`, one orbit per orbit pair and double coset.
    pub fn tensor(&self, other: &Rep2) -> Result<Rep2> {
        let (a, b) = self.unify(other)?;
        let atlas = a.atlas.clone();
        let g = atlas.group().clone();
        let mut keys = Vec::new();
        for &ka in &a.keys {
            let (p, mu) = atlas.orbit(ka)?;
            let p_local = atlas.local(p)?.clone();
            for &kb in &b.keys {
                let (q, nu) = atlas.orbit(kb)?;
                for (x, _) in g.double_cosets(p, q) {
                    let xi = g.inv(x);
                    let s = intersect_conjugate(&g, p, q, x)?;
                    let target = atlas.local(&s)?.clone();
                    let s_in_p = local_subgroup(&p_local, p, &s)?;
                    let restricted = mu.restrict_into(&s_in_p, target.clone())?;
                    let pulled = conjugate_pullback_into(&g, nu, q, xi, &s, target)?;
                    keys.push(atlas.canonicalize(&s, &restricted.add(&pulled)?)?);
                }
            }
        }
        keys.sort_unstable();
        Ok(Rep2 { atlas, keys })
    }

    /// Inverts every decorating class.
    pub fn contragradient(&self) -> Result<Rep2> {
        let orbits = self
            .orbits()?
            .into_iter()
            .map(|(p, mu)| (p, mu.neg()))
            .collect::<Vec<_>>();
        Rep2::from_orbits(self.atlas.clone(), &orbits)
    }

    /// Induction from `P̂ = embedding` to the group of `target`.
    ///
    /// The group of `self` must be `P̂` as a group in its own right.
    pub fn induce(&self, embedding: &Subgroup, target: &Arc<Atlas>) -> Result<Rep2> {
        let g = target.group();
        g.subgroup(embedding.elements())?;
        if g.subgroup_as_group(embedding) != **self.group() {
            return Err(Error::AmbientMismatch);
        }
        if target.level() % self.level() != 0 {
            return Err(Error::LevelMismatch(self.level(), target.level()));
        }
        let els = embedding.elements();
        let orbits = self
            .orbits()?
            .into_iter()
            .map(|(q, mu)| {
                let qg = g.subgroup(&q.elements().iter().map(|&i| els[i]).collect::<Vec<_>>())?;
                let local = target.local(&qg)?.clone();
                let mu = Cochain::from_values(local, mu.module().clone(), 2, mu.values().to_vec())?;
                Ok((qg, mu))
            })
            .collect::<Result<Vec<_>>>()?;
        Rep2::from_orbits(target.clone(), &orbits)
    }

    /// Restriction to `P`, with `target` an atlas over `P` as a group in its own right.
    pub fn mackey_restrict(&self, p: &Subgroup, target: &Arc<Atlas>) -> Result<Rep2> {
        let g = self.group().clone();
        g.subgroup(p.elements())?;
        if g.subgroup_as_group(p) != **target.group() {
            return Err(Error::GroupMismatch);
        }
        if target.level() % self.level() != 0 {
            return Err(Error::LevelMismatch(self.level(), target.level()));
        }
        let p_group = target.group().clone();
        let mut orbits = Vec::new();
        for &k in &self.keys {
            let (q, mu) = self.atlas.orbit(k)?;
            for (x, _) in g.double_cosets(p, q) {
                let s = intersect_conjugate(&g, p, q, x)?;
                let s_local = local_subgroup(&p_group, p, &s)?;
                let target_local = target.local(&s_local)?.clone();
                let pulled = conjugate_pullback_into(&g, mu, q, g.inv(x), &s, target_local)?;
                orbits.push((s_local, pulled));
            }
        }
        Rep2::from_orbits(target.clone(), &orbits)
    }

    /// The G-set `⊔ P_i\G` with the cocycle assembled from the Shapiro maps.
    pub fn to_perm_cocycle(&self) -> Result<PermCocycleRep> {
        let g = self.group().clone();
        let n = g.order();
        let level = self.level();
        let mut parts = Vec::with_capacity(self.keys.len());
        for (p, mu) in self.orbits()? {
            let local = self.atlas.local(&p)?.clone();
            let sh = Shapiro::with_local(g.clone(), &p, local, GModule::trivial(level))?;
            parts.push((sh.psi(&mu)?, sh.coinduced().clone()));
        }
        let size: usize = parts.iter().map(|(_, m)| m.dim()).sum();
        let mut action = vec![vec![0; size]; n];
        let mut offset = 0;
        for (_, m) in &parts {
            for (x, row) in action.iter_mut().enumerate() {
                for t in 0..m.dim() {
                    row[offset + t] = offset + m.point_action(x, t);
                }
            }
            offset += m.dim();
        }
        let module = GModule::permutation(&g, level, action)?;
        let mut values = Vec::with_capacity(n * n * size);
        for i in 0..n * n {
            let pair = [i / n, i % n];
            for (theta, _) in &parts {
                values.extend_from_slice(theta.at(&pair));
            }
        }
        PermCocycleRep::new(Cochain::from_values(g, module, 2, values)?)
    }

    /// Stabilizers of least orbit points, decorated by the cocycle evaluated there.
    pub fn from_perm_cocycle(atlas: Arc<Atlas>, p: &PermCocycleRep) -> Result<Rep2> {
        let g = atlas.group().clone();
        if **p.group() != *g {
            return Err(Error::GroupMismatch);
        }
        if let Some(t) = p.theta().cocycle_violation() {
            return Err(Error::NotACocycle(t));
        }
        let level = p.theta().level();
        let mut orbits = Vec::new();
        for orbit in p.orbits() {
            let x0 = orbit[0];
            let stab: Vec<Elem> = (0..g.order()).filter(|&h| p.act(h, x0) == x0).collect();
            let s = g.subgroup(&stab)?;
            let local = atlas.local(&s)?.clone();
            let m = stab.len();
            let values = (0..m * m)
                .map(|i| p.component(stab[i / m], stab[i % m], x0))
                .collect();
            orbits.push((
                s,
                Cochain::from_values(local, GModule::trivial(level), 2, values)?,
            ));
        }
        Rep2::from_orbits(atlas, &orbits)
    }

    /// Random orbits with arbitrary subgroups in each class, conjugated and shifted by coboundaries.
    pub fn random_orbits<R: Rng + ?Sized>(
        atlas: &Atlas,
        rng: &mut R,
        max_orbits: usize,
    ) -> Result<Vec<(Subgroup, Cochain)>> {
        let g = atlas.group();
        let level = atlas.level();
        let count = rng.gen_range(1..=max_orbits.max(1));
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let c = rng.gen_range(0..atlas.class_count());
            let schur = atlas.schur(c)?;
            let i = rng.gen_range(0..schur.len());
            let y = rng.gen_range(0..g.order());
            let p0 = atlas.class_rep(c);
            let p = g.conjugate_subgroup(y, p0);
            let local = atlas.local(&p)?.clone();
            let mu = conjugate_pullback_into(
                g,
                schur.representative(i),
                p0,
                g.inv(y),
                &p,
                local.clone(),
            )?;
            let pi_values = (0..p.order())
                .map(|_| rng.gen_range(0..level as i64))
                .collect();
            let pi = Cochain::from_values(local, GModule::trivial(level), 1, pi_values)?;
            out.push((p, mu.add(&pi.differential())?));
        }
        Ok(out)
    }

    pub fn random<R: Rng + ?Sized>(
        atlas: &Arc<Atlas>,
        rng: &mut R,
        max_orbits: usize,
    ) -> Result<Rep2> {
        let orbits = Self::random_orbits(atlas, rng, max_orbits)?;
        Rep2::from_orbits(atlas.clone(), &orbits)
    }
}

/// `P ∩ xQx⁻¹`.
pub fn intersect_conjugate(
    g: &FiniteGroup,
    p: &Subgroup,
    q: &Subgroup,
    x: Elem,
) -> Result<Subgroup> {
    let xi = g.inv(x);
    let els: Vec<Elem> = p
        .elements()
        .iter()
        .copied()
        .filter(|&e| q.contains(g.conj(xi, e)))
        .collect();
    g.subgroup(&els)
}

/// `S ⊆ P`, renumbered as a subgroup of `P` as a group in its own right.
fn local_subgroup(p_group: &FiniteGroup, p: &Subgroup, s: &Subgroup) -> Result<Subgroup> {
    let idx = s
        .elements()
        .iter()
        .map(|&e| {
            p.local_index(e)
                .ok_or_else(|| Error::NotASubgroup(format!("{s} is not inside {p}")))
        })
        .collect::<Result<Vec<_>>>()?;
    p_group.subgroup(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutation_generators(3, vec![vec![1, 0, 2], vec![1, 2, 0]], "S3")
                .unwrap(),
        )
    }

    fn v4() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_cayley_table(
                vec![
                    vec![0, 1, 2, 3],
                    vec![1, 0, 3, 2],
                    vec![2, 3, 0, 1],
                    vec![3, 2, 1, 0],
                ],
                "V4",
            )
            .unwrap(),
        )
    }

    #[test]
    fn regular_squared() {
        let atlas = Atlas::new(s3());
        let reg = Rep2::regular(atlas.clone());
        let sq = reg.tensor(&reg).unwrap();
        assert_eq!(sq.keys().len(), 6);
        assert!(sq.keys().iter().all(|&k| k == reg.keys()[0]));
        assert_eq!(sq.degree(), 36);
    }

    #[test]
    fn unit_and_degrees() {
        let atlas = Atlas::new(s3());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let unit = Rep2::unit(atlas.clone());
        for _ in 0..10 {
            let r = Rep2::random(&atlas, &mut rng, 3).unwrap();
            let s = Rep2::random(&atlas, &mut rng, 3).unwrap();
            assert_eq!(unit.tensor(&r).unwrap(), r);
            assert_eq!(r.tensor(&s).unwrap().degree(), r.degree() * s.degree());
            assert_eq!(r.direct_sum(&s).unwrap().degree(), r.degree() + s.degree());
            assert_eq!(r.direct_sum(&Rep2::zero(atlas.clone())).unwrap(), r);
        }
    }

    #[test]
    fn linear_group_under_tensor() {
        let g = v4();
        let atlas = Atlas::new(g.clone());
        let beta = Cochain::from_fn(g.clone(), 4, 2, |t| {
            if t[0] >= 2 && t[1] % 2 == 1 {
                2
            } else {
                0
            }
        });
        let r = Rep2::linear(atlas.clone(), &beta).unwrap();
        assert_ne!(r, Rep2::unit(atlas.clone()));
        assert_eq!(
            r.tensor(&r.contragradient().unwrap()).unwrap(),
            Rep2::unit(atlas.clone())
        );
        assert_eq!(r.tensor(&r).unwrap(), Rep2::unit(atlas.clone()));
        assert!(!Rep2::regular(atlas.clone()).equivalent(&r).unwrap());
    }

    #[test]
    fn roundtrip_through_permutation_module() {
        let atlas = Atlas::new(s3());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let r = Rep2::random(&atlas, &mut rng, 3).unwrap();
            let p = r.to_perm_cocycle().unwrap();
            assert_eq!(p.size(), r.degree());
            assert_eq!(Rep2::from_perm_cocycle(atlas.clone(), &p).unwrap(), r);
        }
    }

    #[test]
    fn restriction_and_induction() {
        let g = s3();
        let atlas = Atlas::new(g.clone());
        let a3 = g
            .all_subgroups()
            .into_iter()
            .find(|p| p.order() == 3)
            .unwrap();
        let c2 = g
            .all_subgroups()
            .into_iter()
            .find(|p| p.order() == 2)
            .unwrap();
        let c2_atlas = Atlas::with_level(Arc::new(g.subgroup_as_group(&c2)), 6).unwrap();
        let r = Rep2::permutation(atlas.clone(), &a3).unwrap();
        let res = r.mackey_restrict(&c2, &c2_atlas).unwrap();
        assert_eq!(res, Rep2::regular(c2_atlas.clone()));
        assert_eq!(res.degree(), r.degree());
        let back = Rep2::regular(c2_atlas.clone()).induce(&c2, &atlas).unwrap();
        assert_eq!(back, Rep2::regular(atlas.clone()));
        let whole = g.whole();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = Rep2::random(&atlas, &mut rng, 3).unwrap();
        assert_eq!(
            r.mackey_restrict(&whole, &Atlas::new(Arc::new(g.subgroup_as_group(&whole))))
                .unwrap()
                .keys(),
            r.keys()
        );
    }
}
