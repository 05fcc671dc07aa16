//! Finite crossed modules `∂: H → G` and the strict 2-group they present.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Largest `|G|·|H|` for which triples are enumerated.
pub const MAX_TRIPLE_SIZE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    h: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    boundary: Vec<Elem>,
    /// `action[g][h] = ^g h`.
    action: Vec<Vec<Elem>>,
}

/// A 2-morphism `source ⇒ target` labelled by `label` with `target = ∂(label)·source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoMorphism {
    pub source: Elem,
    pub target: Elem,
    pub label: Elem,
}

/// `(a, b, h)` with `∂(h)ab = ba`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GKTriple {
    pub a: Elem,
    pub b: Elem,
    pub h: Elem,
}

/// A quotient group with the projection onto it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<Elem>,
    /// Least element of each coset, indexed by quotient element.
    pub reps: Vec<Elem>,
}

impl CrossedModule {
    /// Checks every axiom and reports the first violation with a witness.
    pub fn validate(
        h: Arc<FiniteGroup>,
        g: Arc<FiniteGroup>,
        boundary: Vec<Elem>,
        action: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        let (nh, ng) = (h.order(), g.order());
        if boundary.len() != nh {
            return Err(Error::NotAGroup(format!(
                "boundary has {} entries for |H| = {nh}",
                boundary.len()
            )));
        }
        if let Some(&x) = boundary.iter().find(|&&x| x >= ng) {
            return Err(Error::OutOfRange(x));
        }
        if action.len() != ng || action.iter().any(|r| r.len() != nh) {
            return Err(Error::NotAnAction(
                "action table has the wrong shape".into(),
            ));
        }
        if let Some(&x) = action.iter().flatten().find(|&&x| x >= nh) {
            return Err(Error::OutOfRange(x));
        }
        for a in 0..nh {
            for b in 0..nh {
                if boundary[h.mul(a, b)] != g.mul(boundary[a], boundary[b]) {
                    return Err(Error::NotAHomomorphism(a, b));
                }
            }
        }
        for x in 0..ng {
            let mut seen = vec![false; nh];
            for &y in &action[x] {
                if seen[y] {
                    return Err(Error::NotAnAction(format!("g={x} is not a bijection of H")));
                }
                seen[y] = true;
            }
            for a in 0..nh {
                for b in 0..nh {
                    if action[x][h.mul(a, b)] != h.mul(action[x][a], action[x][b]) {
                        return Err(Error::NotAnAction(format!(
                            "g={x} is not multiplicative on ({a}, {b})"
                        )));
                    }
                }
            }
        }
        if let Some(a) = (0..nh).find(|&a| action[0][a] != a) {
            return Err(Error::NotAnAction(format!("identity moves h={a}")));
        }
        for x in 0..ng {
            for y in 0..ng {
                let xy = g.mul(x, y);
                if let Some(a) = (0..nh).find(|&a| action[xy][a] != action[x][action[y][a]]) {
                    return Err(Error::NotAnAction(format!(
                        "not a homomorphism at ({x}, {y}) on h={a}"
                    )));
                }
            }
        }
        for x in 0..ng {
            for a in 0..nh {
                if boundary[action[x][a]] != g.conj(x, boundary[a]) {
                    return Err(Error::EquivarianceFailure { g: x, h: a });
                }
            }
        }
        for a in 0..nh {
            for b in 0..nh {
                if action[boundary[a]][b] != h.conj(a, b) {
                    return Err(Error::PeifferFailure { h1: a, h2: b });
                }
            }
        }
        Ok(CrossedModule {
            h,
            g,
            boundary,
            action,
        })
    }

    /// `G → G` by the identity, acting by conjugation.
    pub fn inner(g: Arc<FiniteGroup>) -> Self {
        let n = g.order();
        let action = (0..n)
            .map(|x| (0..n).map(|y| g.conj(x, y)).collect())
            .collect();
        Self::validate(g.clone(), g, (0..n).collect(), action).expect("inner crossed module")
    }

    /// `1 → G`.
    pub fn from_group(g: Arc<FiniteGroup>) -> Self {
        let n = g.order();
        let one = Arc::new(FiniteGroup::trivial());
        Self::validate(one, g, vec![0], vec![vec![0]; n]).expect("trivial crossed module")
    }

    pub fn h(&self) -> &Arc<FiniteGroup> {
        &self.h
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn boundary(&self) -> &[Elem] {
        &self.boundary
    }

    pub fn action_table(&self) -> &[Vec<Elem>] {
        &self.action
    }

    #[inline]
    pub fn act(&self, g: Elem, h: Elem) -> Elem {
        self.action[g][h]
    }

    /// `∂(H)`, a normal subgroup of `G`.
    pub fn image(&self) -> Subgroup {
        self.g
            .subgroup(&self.boundary)
            .expect("image of a homomorphism")
    }

    /// `π₁ = G/∂(H)` with cosets numbered by their least elements.
    pub fn pi1(&self) -> Quotient {
        let n = self.g.order();
        let img = self.image();
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            for &k in img.elements() {
                projection[self.g.mul(x, k)] = reps.len();
            }
            reps.push(x);
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.g.mul(a, b)]).collect())
            .collect();
        let name = format!("pi1({})", self.g.name());
        let group = FiniteGroup::from_cayley_table(table, &name).expect("quotient is a group");
        Quotient {
            group,
            projection,
            reps,
        }
    }

    /// `π₂ = ker ∂` as a subgroup of `H`.
    pub fn pi2(&self) -> Subgroup {
        let ker: Vec<Elem> = (0..self.h.order())
            .filter(|&a| self.boundary[a] == 0)
            .collect();
        self.h.subgroup(&ker).expect("kernel of a homomorphism")
    }

    /// `H → P̄` for a subgroup `P` of `π₁`, with `P̄` its preimage in `G`.
    pub fn restrict(&self, p: &Subgroup) -> Result<(CrossedModule, Subgroup)> {
        let q = self.pi1();
        q.group.subgroup(p.elements())?;
        let pre: Vec<Elem> = (0..self.g.order())
            .filter(|&x| p.contains(q.projection[x]))
            .collect();
        let pbar = self.g.subgroup(&pre)?;
        let local = Arc::new(self.g.subgroup_as_group(&pbar));
        let boundary = self
            .boundary
            .iter()
            .map(|&x| pbar.local_index(x).expect("image lies in P̄"))
            .collect();
        let action = pbar
            .elements()
            .iter()
            .map(|&x| self.action[x].clone())
            .collect();
        Ok((
            CrossedModule::validate(self.h.clone(), local, boundary, action)?,
            pbar,
        ))
    }

    pub fn two_morphism(&self, source: Elem, label: Elem) -> TwoMorphism {
        TwoMorphism {
            source,
            target: self.g.mul(self.boundary[label], source),
            label,
        }
    }

    pub fn is_well_formed(&self, f: &TwoMorphism) -> bool {
        f.source < self.g.order()
            && f.label < self.h.order()
            && f.target == self.g.mul(self.boundary[f.label], f.source)
    }

    /// `f ∘ e`: first `e`, then `f`.
    pub fn vertical_compose(&self, f: &TwoMorphism, e: &TwoMorphism) -> Result<TwoMorphism> {
        if e.target != f.source {
            return Err(Error::NotComposable);
        }
        Ok(TwoMorphism {
            source: e.source,
            target: f.target,
            label: self.h.mul(f.label, e.label),
        })
    }

    /// `f ⋄ f₁` with label `h · ^{f.source} h₁`.
    pub fn horizontal_compose(&self, f: &TwoMorphism, f1: &TwoMorphism) -> TwoMorphism {
        TwoMorphism {
            source: self.g.mul(f.source, f1.source),
            target: self.g.mul(f.target, f1.target),
            label: self.h.mul(f.label, self.act(f.source, f1.label)),
        }
    }

    /// First composable quadruple `(e, f, e₁, f₁)` violating the interchange law, if any.
    pub fn interchange_violation(&self) -> Option<[TwoMorphism; 4]> {
        let (ng, nh) = (self.g.order(), self.h.order());
        for g1 in 0..ng {
            for he in 0..nh {
                let e = self.two_morphism(g1, he);
                for hf in 0..nh {
                    let f = self.two_morphism(e.target, hf);
                    let fe = self.vertical_compose(&f, &e).unwrap();
                    for k1 in 0..ng {
                        for he1 in 0..nh {
                            let e1 = self.two_morphism(k1, he1);
                            for hf1 in 0..nh {
                                let f1 = self.two_morphism(e1.target, hf1);
                                let lhs = self
                                    .vertical_compose(
                                        &self.horizontal_compose(&f, &f1),
                                        &self.horizontal_compose(&e, &e1),
                                    )
                                    .unwrap();
                                let rhs = self.horizontal_compose(
                                    &fe,
                                    &self.vertical_compose(&f1, &e1).unwrap(),
                                );
                                if lhs != rhs {
                                    return Some([e, f, e1, f1]);
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_triple(&self, t: &GKTriple) -> bool {
        let g = &self.g;
        g.mul(self.boundary[t.h], g.mul(t.a, t.b)) == g.mul(t.b, t.a)
    }

    /// `𝔾 = {(a, b, h) : ∂(h)ab = ba}` in lexicographic order.
    pub fn triples(&self) -> Result<Vec<GKTriple>> {
        let (ng, nh) = (self.g.order(), self.h.order());
        if ng * nh > MAX_TRIPLE_SIZE {
            return Err(Error::TooLarge(format!(
                "|G|·|H| = {} exceeds {MAX_TRIPLE_SIZE}",
                ng * nh
            )));
        }
        let mut out = Vec::new();
        for a in 0..ng {
            for b in 0..ng {
                for h in 0..nh {
                    let t = GKTriple { a, b, h };
                    if self.is_triple(&t) {
                        out.push(t);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `x·(a, b, h) = (xax⁻¹, xbx⁻¹, ^x h)`.
    pub fn conjugate_triple(&self, x: Elem, t: &GKTriple) -> GKTriple {
        GKTriple {
            a: self.g.conj(x, t.a),
            b: self.g.conj(x, t.b),
            h: self.act(x, t.h),
        }
    }

    /// Orbits of `𝔾` under conjugation, each sorted with its least member first.
    pub fn triple_classes(&self) -> Result<Vec<Vec<GKTriple>>> {
        let all = self.triples()?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for t in all {
            if seen.contains(&t) {
                continue;
            }
            let orbit: BTreeSet<GKTriple> = (0..self.g.order())
                .map(|x| self.conjugate_triple(x, &t))
                .collect();
            seen.extend(orbit.iter().copied());
            out.push(orbit.into_iter().collect());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_z4() -> CrossedModule {
        let h = Arc::new(FiniteGroup::cyclic(2));
        let g = Arc::new(FiniteGroup::cyclic(4));
        CrossedModule::validate(h, g, vec![0, 2], vec![vec![0, 1]; 4]).unwrap()
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutation_generators(3, vec![vec![1, 0, 2], vec![1, 2, 0]], "S3")
                .unwrap(),
        )
    }

    #[test]
    fn accepts_examples() {
        let k = z2_z4();
        assert_eq!(k.pi1().group.order(), 2);
        assert_eq!(k.pi2().order(), 1);
        let inner = CrossedModule::inner(s3());
        assert_eq!(inner.pi1().group.order(), 1);
        assert_eq!(inner.pi2().order(), 1);
    }

    #[test]
    fn rejects_bad_action() {
        let g = s3();
        let n = g.order();
        let mut action: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| g.conj(x, y)).collect())
            .collect();
        action[1] = vec![0, 2, 1, 3, 4, 5];
        let err = CrossedModule::validate(g.clone(), g, (0..n).collect(), action).unwrap_err();
        assert!(matches!(err, Error::NotAnAction(_)), "{err:?}");
    }

    #[test]
    fn rejects_peiffer() {
        let h = s3();
        let one = Arc::new(FiniteGroup::trivial());
        let err = CrossedModule::validate(h, one, vec![0; 6], vec![(0..6).collect()]).unwrap_err();
        assert!(matches!(err, Error::PeifferFailure { .. }));
    }

    #[test]
    fn restriction() {
        let k = z2_z4();
        let q = k.pi1();
        let (r, pbar) = k.restrict(&q.group.trivial_subgroup()).unwrap();
        assert_eq!(pbar.elements(), &[0, 2]);
        assert_eq!(r.g().order(), 2);
        let (r, _) = k.restrict(&q.group.whole()).unwrap();
        assert_eq!(r, k);
    }

    #[test]
    fn compositions() {
        let k = z2_z4();
        let e = k.two_morphism(0, 1);
        assert_eq!(e.target, 2);
        let f = k.two_morphism(2, 1);
        assert_eq!(f.target, 0);
        assert_eq!(
            k.vertical_compose(&f, &e).unwrap(),
            TwoMorphism {
                source: 0,
                target: 0,
                label: 0
            }
        );
        assert_eq!(k.vertical_compose(&e, &e), Err(Error::NotComposable));
        let id = k.two_morphism(3, 0);
        let x = k.two_morphism(3, 1);
        assert_eq!(k.vertical_compose(&x, &id).unwrap(), x);
        let h = k.horizontal_compose(&k.two_morphism(1, 0), &k.two_morphism(2, 0));
        assert_eq!(h, k.two_morphism(3, 0));
    }

    #[test]
    fn interchange_and_triples() {
        let k = z2_z4();
        assert!(k.interchange_violation().is_none());
        assert_eq!(k.triples().unwrap().len(), 16);
        let inner = CrossedModule::inner(s3());
        assert!(inner.interchange_violation().is_none());
        assert_eq!(inner.triples().unwrap().len(), 36);
        let classes = inner.triple_classes().unwrap();
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 36);
        let trivial_h = CrossedModule::from_group(s3());
        assert_eq!(trivial_h.triples().unwrap().len(), 18);
    }
}
