//! 2-characters on commuting pairs: closed formulas, the mark formula and matrix oracles.

use std::collections::HashMap;
use std::sync::Arc;

use crate::atlas::{Atlas, BasisKey};
use crate::burnside::{mark_with, BurnsideElement};
use crate::cochain::{cohomologous_over_cx, Cochain, GModule};
use crate::crossed::{CrossedModule, GKTriple};
use crate::cyclo::{CycloInt, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::rep2::{PermCocycleRep, Rep2};

fn check_commuting(g: &FiniteGroup, a: Elem, b: Elem) -> Result<()> {
    g.check_elem(a)?;
    g.check_elem(b)?;
    if g.commute(a, b) {
        Ok(())
    } else {
        Err(Error::NotCommuting(a, b))
    }
}

/// `μ(b, a⁻¹) − μ(a⁻¹, b)` for a normalized 2-cocycle and commuting `a, b`.
pub fn gk_linear(mu: &Cochain, a: Elem, b: Elem) -> Result<RootOfUnity> {
    if mu.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: mu.degree(),
        });
    }
    if !mu.module().is_trivial() {
        return Err(Error::UnsupportedModule(
            "2-characters need a trivial module".into(),
        ));
    }
    let g = mu.group();
    check_commuting(g, a, b)?;
    if let Some(t) = mu.normalization_violation() {
        return Err(Error::NotNormalized(t));
    }
    let ai = g.inv(a);
    Ok(RootOfUnity::new(
        mu.level(),
        mu.value(&[b, ai]) - mu.value(&[ai, b]),
    ))
}

/// Sum over orbits and over transversal points `t` with `ᵗa, ᵗb ∈ P`.
pub fn gk_rep(r: &Rep2, a: Elem, b: Elem) -> Result<CycloInt> {
    let g = r.group();
    check_commuting(g, a, b)?;
    let level = r.level();
    let mut exps = Vec::new();
    for (p, mu) in r.orbits()? {
        for t in g.right_transversal(&p) {
            let (ta, tb) = (g.conj(t, a), g.conj(t, b));
            if let (Some(la), Some(lb)) = (p.local_index(ta), p.local_index(tb)) {
                let lai = mu.group().inv(la);
                exps.push(mu.value(&[lb, lai]) - mu.value(&[lai, lb]));
            }
        }
    }
    Ok(CycloInt::sum_of_roots(level, exps))
}

/// Sum over common fixed points `x` of `θ^x(b, a⁻¹) − θ^x(a⁻¹, b)`.
pub fn gk_osorno(p: &PermCocycleRep, a: Elem, b: Elem) -> Result<CycloInt> {
    let g = p.group();
    check_commuting(g, a, b)?;
    let ai = g.inv(a);
    let exps = (0..p.size())
        .filter(|&x| p.act(a, x) == x && p.act(b, x) == x)
        .map(|x| p.component(b, ai, x) - p.component(ai, b, x));
    Ok(CycloInt::sum_of_roots(p.theta().level(), exps))
}

/// The mark `f_P^α` with `P = ⟨a, b⟩` and `α` the linear 2-character at `(a, b)`.
///
/// `α` is evaluated on every pulled-back cocycle; two cocycles in the same
/// Schur class with different values give [`Error::AlphaIllDefined`].
pub fn gk_as_mark(a: Elem, b: Elem, u: &BurnsideElement) -> Result<CycloInt> {
    let atlas = u.atlas();
    let g = atlas.group();
    check_commuting(g, a, b)?;
    let p = g.generated_subgroup(&[a, b]);
    let (la, lb) = (p.local_index(a).unwrap(), p.local_index(b).unwrap());
    let level = atlas.level();
    let mut seen: HashMap<usize, RootOfUnity> = HashMap::new();
    let mut alpha = |c: &Cochain| -> Result<CycloInt> {
        let value = gk_linear(c, la, lb)?.raise_level(level)?;
        let (_, class) = atlas.identify(&p, c)?;
        match seen.get(&class) {
            Some(v) if *v != value => return Err(Error::AlphaIllDefined),
            Some(_) => {}
            None => {
                seen.insert(class, value);
            }
        }
        Ok(value.to_cyclo())
    };
    mark_with(atlas, &p, &mut alpha, u)?.to_cyclo_int()
}

/// A `d×d` matrix with one nonzero entry per column: `weights[j]` at `(perm[j], j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    weights: Vec<RootOfUnity>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, weights: Vec<RootOfUnity>) -> Result<Self> {
        let d = perm.len();
        if weights.len() != d {
            return Err(Error::ShapeMismatch(format!(
                "{d} columns but {} weights",
                weights.len()
            )));
        }
        let mut seen = vec![false; d];
        for &i in &perm {
            if i >= d || seen[i] {
                return Err(Error::ShapeMismatch("not a permutation".into()));
            }
            seen[i] = true;
        }
        if weights.windows(2).any(|w| w[0].level() != w[1].level()) {
            return Err(Error::ShapeMismatch("weights at different levels".into()));
        }
        Ok(MonomialMatrix { perm, weights })
    }

    pub fn identity(dim: usize, level: u64) -> Self {
        MonomialMatrix {
            perm: (0..dim).collect(),
            weights: vec![RootOfUnity::one(level); dim],
        }
    }

    /// `ζ·I`.
    pub fn scalar(dim: usize, z: RootOfUnity) -> Self {
        MonomialMatrix {
            perm: (0..dim).collect(),
            weights: vec![z; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn weights(&self) -> &[RootOfUnity] {
        &self.weights
    }

    pub fn mul(&self, rhs: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.dim() != rhs.dim() {
            return Err(Error::ShapeMismatch("dimension mismatch".into()));
        }
        let perm = rhs.perm.iter().map(|&j| self.perm[j]).collect();
        let weights = rhs
            .perm
            .iter()
            .zip(&rhs.weights)
            .map(|(&j, w)| w.mul(&self.weights[j]))
            .collect::<Result<_>>()?;
        Ok(MonomialMatrix { perm, weights })
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut weights = vec![RootOfUnity::one(self.weights.first().map_or(1, |w| w.level())); d];
        for j in 0..d {
            perm[self.perm[j]] = j;
            weights[self.perm[j]] = self.weights[j].inv();
        }
        MonomialMatrix { perm, weights }
    }

    pub fn scale(&self, z: &RootOfUnity) -> Result<MonomialMatrix> {
        let weights = self
            .weights
            .iter()
            .map(|w| w.mul(z))
            .collect::<Result<_>>()?;
        Ok(MonomialMatrix {
            perm: self.perm.clone(),
            weights,
        })
    }

    /// `λ` with `self = λ·other`, if there is one.
    pub fn scalar_ratio(&self, other: &MonomialMatrix) -> Option<RootOfUnity> {
        if self.perm != other.perm {
            return None;
        }
        let mut ratios = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| a.mul(&b.inv()).ok());
        let first = ratios.next()??;
        ratios.all(|r| r == Some(first)).then_some(first)
    }
}

/// Left multiplication in the twisted group algebra: `ρ(g)u_h = μ(g,h)⁻¹ u_{gh}`.
pub fn twisted_regular(mu: &Cochain) -> Vec<MonomialMatrix> {
    let g = mu.group();
    let n = g.order();
    (0..n)
        .map(|x| MonomialMatrix {
            perm: (0..n).map(|h| g.mul(x, h)).collect(),
            weights: (0..n)
                .map(|h| RootOfUnity::new(mu.level(), -mu.value(&[x, h])))
                .collect(),
        })
        .collect()
}

/// The cocycle `ν` with `ρ(gh) = ν(g,h)ρ(g)ρ(h)`.
pub fn projective_cocycle(
    group: &Arc<FiniteGroup>,
    rho: &[MonomialMatrix],
    level: u64,
) -> Result<Cochain> {
    let n = group.order();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let prod = rho[x].mul(&rho[y])?;
            let nu = rho[group.mul(x, y)]
                .scalar_ratio(&prod)
                .ok_or(Error::NotScalarMultiple)?;
            values.push(nu.raise_level(level)?.exp() as i64);
        }
    }
    Cochain::from_values(group.clone(), GModule::trivial(level), 2, values)
}

/// `λ` with `ρ(a⁻¹)ρ(b)ρ(a⁻¹)⁻¹ = λ·ρ(b)` in the twisted regular representation.
pub fn oracle_twisted_regular(mu: &Cochain, a: Elem, b: Elem) -> Result<RootOfUnity> {
    let g = mu.group().clone();
    check_commuting(&g, a, b)?;
    if let Some(t) = mu.normalization_violation() {
        return Err(Error::NotNormalized(t));
    }
    let rho = twisted_regular(mu);
    let nu = projective_cocycle(&g, &rho, mu.level())?;
    if !cohomologous_over_cx(&nu, mu)? {
        return Err(Error::CrossCheckFailed(
            "left multiplication has the wrong cocycle class".into(),
        ));
    }
    let ai = g.inv(a);
    let m = rho[ai].mul(&rho[b])?.mul(&rho[ai].inverse())?;
    m.scalar_ratio(&rho[b]).ok_or(Error::NotScalarMultiple)
}

/// Monomial data `(ρ, ω₂, ω₃)` realizing a linear 2-representation of a crossed module.
#[derive(Clone, Debug)]
pub struct CrossedLinearData {
    k: CrossedModule,
    rho: Vec<MonomialMatrix>,
    omega2: Vec<MonomialMatrix>,
    omega3: Cochain,
}

impl CrossedLinearData {
    pub fn new(
        k: CrossedModule,
        rho: Vec<MonomialMatrix>,
        omega2: Vec<MonomialMatrix>,
        omega3: Cochain,
    ) -> Result<Self> {
        let g = k.g().clone();
        let h = k.h().clone();
        if rho.len() != g.order() || omega2.len() != h.order() || *omega3.group() != g {
            return Err(Error::ShapeMismatch(
                "data does not match the crossed module".into(),
            ));
        }
        let d = rho.first().map_or(0, |m| m.dim());
        if rho.iter().chain(&omega2).any(|m| m.dim() != d) {
            return Err(Error::ShapeMismatch("matrices of different sizes".into()));
        }
        let level = omega3.level();
        let w = |x: Elem, y: Elem| RootOfUnity::new(level, omega3.value(&[x, y]));
        for x in 0..g.order() {
            for y in 0..g.order() {
                let rhs = rho[x].mul(&rho[y])?.scale(&w(x, y))?;
                if rho[g.mul(x, y)] != rhs {
                    return Err(Error::CrossCheckFailed(format!(
                        "projective law fails at ({x}, {y})"
                    )));
                }
            }
        }
        let del = k.boundary();
        for x in 0..h.order() {
            for y in 0..h.order() {
                let rhs = omega2[x].mul(&omega2[y])?.scale(&w(del[x], del[y]))?;
                if omega2[h.mul(x, y)] != rhs {
                    return Err(Error::CrossCheckFailed(format!(
                        "ω₂ law fails at ({x}, {y})"
                    )));
                }
            }
        }
        for x in 0..h.order() {
            let a = &omega2[x];
            let b = &rho[del[x]];
            for (z, r) in rho.iter().enumerate() {
                let lhs = a.mul(r)?.mul(&a.inverse())?;
                let rhs = b.mul(r)?.mul(&b.inverse())?;
                if lhs != rhs {
                    return Err(Error::CrossCheckFailed(format!(
                        "ω₂({x}) and ρ(∂{x}) conjugate ρ({z}) differently"
                    )));
                }
            }
        }
        Ok(CrossedLinearData {
            k,
            rho,
            omega2,
            omega3,
        })
    }

    /// `ρ` from the twisted group algebra of `μ` and `ω₂(x) = χ(x)·ρ(∂x)`.
    ///
    /// `chi` must be a homomorphism `H → μ_L`.
    pub fn twisted(k: CrossedModule, mu: &Cochain, chi: &[RootOfUnity]) -> Result<Self> {
        let rho = twisted_regular(mu);
        let omega2 = k
            .boundary()
            .iter()
            .zip(chi)
            .map(|(&d, c)| rho[d].scale(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, rho, omega2, mu.clone())
    }

    pub fn crossed_module(&self) -> &CrossedModule {
        &self.k
    }

    pub fn rho(&self) -> &[MonomialMatrix] {
        &self.rho
    }

    pub fn omega2(&self) -> &[MonomialMatrix] {
        &self.omega2
    }

    pub fn omega3(&self) -> &Cochain {
        &self.omega3
    }
}

/// `λ` with `ρ(a⁻¹)·ω₂(h)⁻¹ρ(b)·ρ(a⁻¹)⁻¹ = λ·ρ(b)`.
pub fn oracle_crossed_linear(
    data: &CrossedLinearData,
    a: Elem,
    b: Elem,
    h: Elem,
) -> Result<RootOfUnity> {
    let k = &data.k;
    k.g().check_elem(a)?;
    k.g().check_elem(b)?;
    k.h().check_elem(h)?;
    if !k.is_triple(&GKTriple { a, b, h }) {
        return Err(Error::TripleNotInG { a, b, h });
    }
    let ai = k.g().inv(a);
    let rho = &data.rho;
    let m = rho[ai]
        .mul(&data.omega2[h].inverse())?
        .mul(&rho[b])?
        .mul(&rho[ai].inverse())?;
    m.scalar_ratio(&rho[b]).ok_or(Error::NotScalarMultiple)
}

/// Rows are commuting pair classes, columns are Burnside basis pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct CharTable {
    pub group: String,
    pub level: u64,
    pub rows: Vec<(Elem, Elem)>,
    pub columns: Vec<BasisKey>,
    pub entries: Vec<Vec<CycloInt>>,
}

/// The table by the mark formula, checked entry by entry against the other two formulas.
pub fn char_table(atlas: &Arc<Atlas>) -> Result<CharTable> {
    let g = atlas.group();
    let rows: Vec<(Elem, Elem)> = g
        .commuting_pair_classes()
        .into_iter()
        .map(|c| c.representative)
        .collect();
    let columns = atlas.basis()?;
    let mut entries = vec![Vec::with_capacity(columns.len()); rows.len()];
    for &key in &columns {
        let r = Rep2::from_key(atlas.clone(), key)?;
        let u = BurnsideElement::from_rep2(&r);
        let perm = r.to_perm_cocycle()?;
        for (row, &(a, b)) in entries.iter_mut().zip(&rows) {
            let v = gk_as_mark(a, b, &u)?;
            if gk_rep(&r, a, b)? != v || gk_osorno(&perm, a, b)? != v {
                return Err(Error::CrossCheckFailed(format!(
                    "formulas disagree at ({a}, {b}) on {key:?}"
                )));
            }
            row.push(v);
        }
    }
    Ok(CharTable {
        group: g.name().to_string(),
        level: atlas.level(),
        rows,
        columns,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutation_generators(3, vec![vec![1, 0, 2], vec![1, 2, 0]], "S3")
                .unwrap(),
        )
    }

    fn bimodular(g: &Arc<FiniteGroup>) -> Cochain {
        Cochain::from_fn(g.clone(), 4, 2, |t| {
            if t[0] >= 2 && t[1] % 2 == 1 {
                2
            } else {
                0
            }
        })
    }

    #[test]
    fn v4_pinned_value() {
        let g = v4();
        let beta = bimodular(&g);
        // a = 1, b = 2
        assert_eq!(gk_linear(&beta, 1, 2).unwrap(), RootOfUnity::new(4, 2));
        assert_eq!(
            oracle_twisted_regular(&beta, 1, 2).unwrap(),
            RootOfUnity::new(4, 2)
        );
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    gk_linear(&beta, a, b).unwrap(),
                    oracle_twisted_regular(&beta, a, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn rejects_non_commuting() {
        let g = s3();
        let z = Cochain::zero(g.clone(), GModule::trivial(6), 2);
        let (a, b) = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .find(|&(a, b)| !g.commute(a, b))
            .unwrap();
        assert_eq!(gk_linear(&z, a, b), Err(Error::NotCommuting(a, b)));
    }

    #[test]
    fn s3_regular_column() {
        let atlas = Atlas::new(s3());
        let t = char_table(&atlas).unwrap();
        assert_eq!((t.rows.len(), t.columns.len()), (8, 4));
        let reg = Rep2::regular(atlas.clone()).keys()[0];
        let col = t.columns.iter().position(|&k| k == reg).unwrap();
        assert_eq!(t.rows[0], (0, 0));
        assert_eq!(t.entries[0][col], CycloInt::from_int(6, 6));
        assert!(t.entries[1..].iter().all(|r| r[col].is_zero()));
    }

    #[test]
    fn v4_table_shape() {
        let atlas = Atlas::new(v4());
        let t = char_table(&atlas).unwrap();
        assert_eq!((t.rows.len(), t.columns.len()), (16, 6));
        let unit = Rep2::unit(atlas.clone()).keys()[0];
        let col = t.columns.iter().position(|&k| k == unit).unwrap();
        assert!(t.entries.iter().all(|r| r[col] == CycloInt::one(4)));
    }

    #[test]
    fn crossed_anchor_and_scalar() {
        let g = v4();
        let beta = bimodular(&g);
        let trivial_h = CrossedModule::from_group(g.clone());
        let data = CrossedLinearData::twisted(trivial_h, &beta, &[RootOfUnity::one(4)]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    oracle_crossed_linear(&data, a, b, 0).unwrap(),
                    oracle_twisted_regular(&beta, a, b).unwrap()
                );
            }
        }
        // H = Z/4 with trivial boundary; ω₂(h) = iʰ·I
        let h = Arc::new(FiniteGroup::cyclic(4));
        let k =
            CrossedModule::validate(h, g.clone(), vec![0; 4], vec![(0..4).collect(); 4]).unwrap();
        let chi: Vec<RootOfUnity> = (0..4).map(|e| RootOfUnity::new(4, e)).collect();
        let data = CrossedLinearData::twisted(k, &beta, &chi).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for x in 0..4 {
                    let expected = chi[x].inv().mul(&gk_linear(&beta, a, b).unwrap()).unwrap();
                    assert_eq!(oracle_crossed_linear(&data, a, b, x).unwrap(), expected);
                }
            }
        }
    }
}
