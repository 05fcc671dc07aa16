//! The generalized Burnside ring over `ℚ(ζ_L)` and its mark homomorphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::atlas::{Atlas, BasisKey};
use crate::cochain::{conjugate_pullback_into, Cochain};
use crate::cyclo::{determinant, CycloInt, CycloRat, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::rep2::{intersect_conjugate, Rep2};

/// A finite `ℚ(ζ_L)`-combination of basis pairs.
#[derive(Clone)]
pub struct BurnsideElement {
    atlas: Arc<Atlas>,
    coeffs: BTreeMap<BasisKey, CycloRat>,
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| format!("{c}·{k:?}"))
            .collect();
        write!(
            f,
            "BurnsideElement({}: {})",
            self.atlas.group().name(),
            terms.join(" + ")
        )
    }
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.atlas.same_as(&other.atlas) && self.coeffs == other.coeffs
    }
}

impl BurnsideElement {
    pub fn zero(atlas: Arc<Atlas>) -> Self {
        BurnsideElement {
            atlas,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(atlas: Arc<Atlas>, key: BasisKey) -> Self {
        let one = CycloRat::one(atlas.level());
        BurnsideElement {
            atlas,
            coeffs: BTreeMap::from([(key, one)]),
        }
    }

    /// `⟨triv, G⟩`.
    pub fn one(atlas: Arc<Atlas>) -> Self {
        let key = Rep2::unit(atlas.clone()).keys()[0];
        Self::basis_element(atlas, key)
    }

    /// One basis pair per orbit.
    pub fn from_rep2(r: &Rep2) -> Self {
        let mut out = Self::zero(r.atlas().clone());
        for &k in r.keys() {
            out.add_term(k, &CycloRat::one(r.level()));
        }
        out
    }

    pub fn atlas(&self) -> &Arc<Atlas> {
        &self.atlas
    }

    pub fn coefficients(&self) -> &BTreeMap<BasisKey, CycloRat> {
        &self.coeffs
    }

    pub fn coefficient(&self, key: BasisKey) -> CycloRat {
        self.coeffs
            .get(&key)
            .cloned()
            .unwrap_or_else(|| CycloRat::zero(self.atlas.level()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, key: BasisKey, c: &CycloRat) {
        let sum = &self.coefficient(key) + c;
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.atlas.same_as(&other.atlas) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloRat) -> Self {
        let mut out = Self::zero(self.atlas.clone());
        for (&k, v) in &self.coeffs {
            out.add_term(k, &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.atlas.clone());
        for (&ka, ca) in &self.coeffs {
            for (&kb, cb) in &other.coeffs {
                let c = ca * cb;
                for (k, m) in basis_product(&self.atlas, ka, kb)? {
                    out.add_term(k, &(&c * &CycloRat::from_int(self.atlas.level(), m as i64)));
                }
            }
        }
        Ok(out)
    }
}

/// `⟨μ, P⟩·⟨ν, Q⟩` as multiplicities of basis pairs, computed in the Schur class groups.
pub fn basis_product(
    atlas: &Atlas,
    ka: BasisKey,
    kb: BasisKey,
) -> Result<BTreeMap<BasisKey, usize>> {
    let g = atlas.group();
    let (p, mu) = atlas.orbit(ka)?;
    let (q, nu) = atlas.orbit(kb)?;
    let p_local = atlas.local(p)?.clone();
    let mut out = BTreeMap::new();
    for (x, _) in g.double_cosets(p, q) {
        let s = intersect_conjugate(g, p, q, x)?;
        let target = atlas.local(&s)?.clone();
        let s_in_p = p_local.subgroup(
            &s.elements()
                .iter()
                .map(|&e| p.local_index(e).expect("S ⊆ P"))
                .collect::<Vec<_>>(),
        )?;
        let (c, i) = atlas.identify(&s, &mu.restrict_into(&s_in_p, target.clone())?)?;
        let (_, j) = atlas.identify(
            &s,
            &conjugate_pullback_into(g, nu, q, g.inv(x), &s, target)?,
        )?;
        let k = atlas.schur(c)?.add(i, j);
        *out.entry(BasisKey {
            class: c,
            schur: atlas.orbit_min(c, k)?,
        })
        .or_insert(0) += 1;
    }
    Ok(out)
}

/// `f_P(u) = Σ_⟨Θ,Q⟩ (1/|Q|) Σ_{g : gPg⁻¹ ⊆ Q} α(Θ∘γ_g)` for an arbitrary subgroup `P`.
///
/// `alpha` receives the pulled-back cocycle over `P` as a group in its own right.
pub fn mark_with(
    atlas: &Atlas,
    p: &Subgroup,
    alpha: &mut dyn FnMut(&Cochain) -> Result<CycloInt>,
    u: &BurnsideElement,
) -> Result<CycloRat> {
    let g = atlas.group();
    let level = atlas.level();
    let local = atlas.local(p)?.clone();
    let mut total = CycloRat::zero(level);
    for (&key, coeff) in &u.coeffs {
        let (q, theta) = atlas.orbit(key)?;
        let mut acc = CycloInt::zero(level);
        for x in 0..g.order() {
            if p.elements().iter().all(|&e| q.contains(g.conj(x, e))) {
                let pulled = conjugate_pullback_into(g, theta, q, x, p, local.clone())?;
                acc = &acc + &alpha(&pulled)?;
            }
        }
        let term = CycloRat::new(acc, BigInt::from(q.order()))?;
        total = &total + &(coeff * &term);
    }
    Ok(total)
}

/// The mark `f_{P₀}^α` for the class representative `P₀` of subgroup class `class`.
///
/// `alpha[i]` is the value on Schur class `i` of `P₀`.
pub fn mark(
    atlas: &Atlas,
    class: usize,
    alpha: &[RootOfUnity],
    u: &BurnsideElement,
) -> Result<CycloRat> {
    let schur = atlas.schur(class)?;
    let level = atlas.level();
    if alpha.len() != schur.len() {
        return Err(Error::AlphaNotHomomorphism);
    }
    let values = alpha
        .iter()
        .map(|a| a.raise_level(level))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..schur.len() {
        for j in 0..schur.len() {
            if values[schur.add(i, j)] != values[i].mul(&values[j])? {
                return Err(Error::AlphaNotHomomorphism);
            }
        }
    }
    let p0 = atlas.class_rep(class).clone();
    mark_with(
        atlas,
        &p0,
        &mut |c| Ok(values[schur.identify(c)?].to_cyclo()),
        u,
    )
}

/// All homomorphisms from the Schur classes of `P₀` to `μ_L`, as value lists.
pub fn dual_characters(atlas: &Atlas, class: usize) -> Result<Vec<Vec<RootOfUnity>>> {
    let schur = atlas.schur(class)?;
    let level = atlas.level();
    let k = schur.len();
    let order_of = |i: usize| {
        let (mut x, mut m) = (i, 1u64);
        while x != 0 {
            x = schur.add(x, i);
            m += 1;
        }
        m
    };
    // greedy generating set
    let mut gens = Vec::new();
    let mut span = vec![false; k];
    span[0] = true;
    for i in 0..k {
        if span[i] {
            continue;
        }
        gens.push(i);
        let mut frontier: Vec<usize> = (0..k).filter(|&x| span[x]).collect();
        while let Some(x) = frontier.pop() {
            for &gen in &gens {
                let y = schur.add(x, gen);
                if !span[y] {
                    span[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
    let orders: Vec<u64> = gens.iter().map(|&g| order_of(g)).collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let total: u64 = orders.iter().product();
    'assign: for code in 0..total {
        let mut rest = code;
        let mut vals = Vec::with_capacity(gens.len());
        for &o in &orders {
            vals.push((rest % o) * (level / o));
            rest /= o;
        }
        let mut alpha: Vec<Option<u64>> = vec![None; k];
        alpha[0] = Some(0);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            let ax = alpha[x].unwrap();
            for (&gen, &v) in gens.iter().zip(&vals) {
                let y = schur.add(x, gen);
                let ay = (ax + v) % level;
                match alpha[y] {
                    None => {
                        alpha[y] = Some(ay);
                        stack.push(y);
                    }
                    Some(e) if e != ay => continue 'assign,
                    _ => {}
                }
            }
        }
        let alpha: Vec<u64> = alpha
            .into_iter()
            .map(|a| a.expect("generators span"))
            .collect();
        let hom =
            (0..k).all(|i| (0..k).all(|j| alpha[schur.add(i, j)] == (alpha[i] + alpha[j]) % level));
        if hom {
            out.push(alpha);
        }
    }
    out.sort();
    out.dedup();
    Ok(out
        .into_iter()
        .map(|a| {
            a.into_iter()
                .map(|e| RootOfUnity::new(level, e as i64))
                .collect()
        })
        .collect())
}

/// A mark homomorphism: a subgroup class and a character of its Schur classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkRow {
    pub class: usize,
    pub alpha: Vec<RootOfUnity>,
}

#[derive(Clone, Debug)]
pub struct MarkTable {
    pub rows: Vec<MarkRow>,
    pub columns: Vec<BasisKey>,
    pub entries: Vec<Vec<CycloRat>>,
    pub level: u64,
}

impl MarkTable {
    pub fn determinant(&self) -> Result<CycloRat> {
        determinant(&self.entries, self.level)
    }
}

/// One row per normalizer orbit of dual characters, least exponent vector first.
pub fn mark_rows(atlas: &Atlas) -> Result<Vec<MarkRow>> {
    let mut rows = Vec::new();
    for c in 0..atlas.class_count() {
        let perms = atlas.normalizer_action(c)?;
        let duals = dual_characters(atlas, c)?;
        let exps = |a: &[RootOfUnity]| a.iter().map(|r| r.exp()).collect::<Vec<_>>();
        let mut reps: Vec<Vec<RootOfUnity>> = Vec::new();
        for alpha in &duals {
            let best = perms
                .iter()
                .map(|perm| perm.iter().map(|&i| alpha[i]).collect::<Vec<_>>())
                .min_by_key(|a| exps(a))
                .unwrap_or_else(|| alpha.clone());
            if !reps.iter().any(|r| exps(r) == exps(&best)) {
                reps.push(best);
            }
        }
        reps.sort_by_key(|a| exps(a));
        rows.extend(reps.into_iter().map(|alpha| MarkRow { class: c, alpha }));
    }
    Ok(rows)
}

pub fn mark_matrix(atlas: &Arc<Atlas>) -> Result<MarkTable> {
    let rows = mark_rows(atlas)?;
    let columns = atlas.basis()?;
    let entries = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|&k| {
                    mark(
                        atlas,
                        row.class,
                        &row.alpha,
                        &BurnsideElement::basis_element(atlas.clone(), k),
                    )
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MarkTable {
        rows,
        columns,
        entries,
        level: atlas.level(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

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

    fn int(atlas: &Atlas, n: i64) -> CycloRat {
        CycloRat::from_int(atlas.level(), n)
    }

    #[test]
    fn s3_table_of_marks() {
        let atlas = Atlas::new(s3());
        let t = mark_matrix(&atlas).unwrap();
        let expected = [[6, 3, 2, 1], [0, 1, 0, 1], [0, 0, 2, 1], [0, 0, 0, 1]];
        for (row, exp) in t.entries.iter().zip(expected) {
            for (v, e) in row.iter().zip(exp) {
                assert_eq!(*v, int(&atlas, e));
            }
        }
        assert_eq!(t.determinant().unwrap(), int(&atlas, 12));
    }

    #[test]
    fn v4_marks_invertible() {
        let atlas = Atlas::new(v4());
        let t = mark_matrix(&atlas).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert_eq!(t.columns.len(), 6);
        assert!(!t.determinant().unwrap().is_zero());
    }

    #[test]
    fn regular_square_and_unit() {
        for g in [s3(), v4()] {
            let atlas = Atlas::new(g.clone());
            let reg = BurnsideElement::from_rep2(&Rep2::regular(atlas.clone()));
            let n = g.order() as i64;
            assert_eq!(reg.mul(&reg).unwrap(), reg.scale(&int(&atlas, n)));
            let one = BurnsideElement::one(atlas.clone());
            for k in atlas.basis().unwrap() {
                let b = BurnsideElement::basis_element(atlas.clone(), k);
                assert_eq!(one.mul(&b).unwrap(), b);
                assert_eq!(b.mul(&one).unwrap(), b);
            }
        }
    }

    #[test]
    fn v4_distinct_order_two() {
        let g = v4();
        let atlas = Atlas::new(g.clone());
        let p = g.subgroup(&[0, 1]).unwrap();
        let q = g.subgroup(&[0, 2]).unwrap();
        let a = BurnsideElement::from_rep2(&Rep2::permutation(atlas.clone(), &p).unwrap());
        let b = BurnsideElement::from_rep2(&Rep2::permutation(atlas.clone(), &q).unwrap());
        let reg = BurnsideElement::from_rep2(&Rep2::regular(atlas.clone()));
        assert_eq!(a.mul(&b).unwrap(), reg);
    }

    #[test]
    fn alpha_must_be_homomorphism() {
        let atlas = Atlas::new(v4());
        let c = atlas.class_count() - 1;
        assert_eq!(atlas.schur(c).unwrap().len(), 2);
        let bad = vec![RootOfUnity::new(4, 1), RootOfUnity::new(4, 1)];
        let u = BurnsideElement::one(atlas.clone());
        assert_eq!(mark(&atlas, c, &bad, &u), Err(Error::AlphaNotHomomorphism));
        assert_eq!(dual_characters(&atlas, c).unwrap().len(), 2);
    }
}
