//! Explicit Shapiro maps between `C^n(Q, M)` and `C^n(G, Coind_Q^G M)`.
//!
//! The coinduced module is realized as the permutation module on `T × Y`
//! where `T` is the pinned right transversal of `Q` (identity first) and `Y`
//! indexes the coordinates of `M`. A point `(t, y)` stands for the value at
//! `t` of a `Q`-equivariant function `G → M`, so `g⁻¹·(t, y) = (s, h⁻¹·y)`
//! where `tg = hs`.

use std::sync::Arc;

use crate::cochain::{index_tuple, tuple_index, Cochain, GModule};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, RightTransversal, Subgroup};

/// The chain `s_{k-1} g_k = h_k s_k` with `s_0 = t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// `h_1..h_n` as elements of the ambient group.
    pub hs: Vec<Elem>,
    /// `s_0..s_n` as indices into the transversal.
    pub ss: Vec<usize>,
}

/// Factors `t·g_1⋯g_n` left to right through the transversal.
pub fn factorize(
    group: &FiniteGroup,
    transversal: &RightTransversal,
    t: usize,
    gs: &[Elem],
) -> Factorization {
    let mut hs = Vec::with_capacity(gs.len());
    let mut ss = Vec::with_capacity(gs.len() + 1);
    ss.push(t);
    let mut s = transversal.reps[t];
    for &g in gs {
        let x = group.mul(s, g);
        let k = transversal.coset_of[x];
        let next = transversal.reps[k];
        hs.push(group.mul(x, group.inv(next)));
        ss.push(k);
        s = next;
    }
    Factorization { hs, ss }
}

#[derive(Clone, Debug)]
pub struct Shapiro {
    ambient: Arc<FiniteGroup>,
    subgroup: Subgroup,
    local: Arc<FiniteGroup>,
    transversal: RightTransversal,
    base: GModule,
    coinduced: GModule,
}

impl Shapiro {
    /// `base` is a module over `q` viewed as a group ([`FiniteGroup::subgroup_as_group`]).
    pub fn new(ambient: Arc<FiniteGroup>, q: &Subgroup, base: GModule) -> Result<Self> {
        let local = Arc::new(ambient.subgroup_as_group(q));
        Self::with_local(ambient, q, local, base)
    }

    pub fn with_local(
        ambient: Arc<FiniteGroup>,
        q: &Subgroup,
        local: Arc<FiniteGroup>,
        base: GModule,
    ) -> Result<Self> {
        if local.order() != q.order() {
            return Err(Error::GroupMismatch);
        }
        let transversal = ambient.right_cosets(q);
        let dim = base.dim();
        let n = ambient.order();
        let points = transversal.reps.len() * dim;
        let mut action = vec![vec![0; points]; n];
        for g in 0..n {
            let row = &mut action[ambient.inv(g)];
            for (ti, &t) in transversal.reps.iter().enumerate() {
                let tg = ambient.mul(t, g);
                let si = transversal.coset_of[tg];
                let h = ambient.mul(tg, ambient.inv(transversal.reps[si]));
                let h_inv = q.local_index(ambient.inv(h)).expect("h lies in Q");
                for y in 0..dim {
                    row[ti * dim + y] = si * dim + base.point_action(h_inv, y);
                }
            }
        }
        let coinduced = GModule::permutation(&ambient, base.level(), action)?;
        Ok(Shapiro {
            ambient,
            subgroup: q.clone(),
            local,
            transversal,
            base,
            coinduced,
        })
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// `Q` as a group in its own right.
    pub fn local(&self) -> &Arc<FiniteGroup> {
        &self.local
    }

    pub fn transversal(&self) -> &RightTransversal {
        &self.transversal
    }

    pub fn base(&self) -> &GModule {
        &self.base
    }

    pub fn coinduced(&self) -> &GModule {
        &self.coinduced
    }

    pub fn factorize(&self, t: usize, gs: &[Elem]) -> Factorization {
        factorize(&self.ambient, &self.transversal, t, gs)
    }

    fn local_index(&self, g: Elem) -> usize {
        self.subgroup.local_index(g).expect("element of Q")
    }

    /// `ψ(μ)(g⃗)(t) = μ(h⃗)`.
    pub fn psi(&self, mu: &Cochain) -> Result<Cochain> {
        if mu.group() != &self.local || mu.module() != &self.base {
            return Err(Error::ShapeMismatch(
                "cochain is not over Q with the base module".into(),
            ));
        }
        let deg = mu.degree();
        let n = self.ambient.order();
        let dim = self.base.dim();
        let tn = self.transversal.reps.len();
        let mut values = vec![0; n.pow(deg as u32) * tn * dim];
        let mut local = vec![0; deg];
        for idx in 0..n.pow(deg as u32) {
            let gs = index_tuple(n, deg, idx);
            for t in 0..tn {
                let f = self.factorize(t, &gs);
                for (k, &h) in f.hs.iter().enumerate() {
                    local[k] = self.local_index(h);
                }
                let src = mu.at(&local);
                let dst = (idx * tn + t) * dim;
                values[dst..dst + dim].copy_from_slice(src);
            }
        }
        Cochain::from_values(self.ambient.clone(), self.coinduced.clone(), deg, values)
    }

    /// `φ(θ)(h⃗) = θ(h⃗)(1)`.
    pub fn phi(&self, theta: &Cochain) -> Result<Cochain> {
        self.check_coinduced(theta)?;
        let deg = theta.degree();
        let m = self.subgroup.order();
        let dim = self.base.dim();
        let els = self.subgroup.elements();
        let mut values = Vec::with_capacity(m.pow(deg as u32) * dim);
        let mut global = vec![0; deg];
        for idx in 0..m.pow(deg as u32) {
            for (k, &a) in index_tuple(m, deg, idx).iter().enumerate() {
                global[k] = els[a];
            }
            values.extend_from_slice(&theta.at(&global)[..dim]);
        }
        Cochain::from_values(self.local.clone(), self.base.clone(), deg, values)
    }

    /// The homotopy `ϖ: C^m → C^{m-1}` with `ψφ − 1 = dϖ + ϖd`:
    ///
    /// `ϖ(θ)(g_1..g_n)(t) = Σ_{j=0}^{n} (-1)^{j+1} θ(h_1..h_j, s_j, g_{j+1}..g_n)(1)`.
    pub fn varpi(&self, theta: &Cochain) -> Result<Cochain> {
        self.check_coinduced(theta)?;
        if theta.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        let deg = theta.degree() - 1;
        let n = self.ambient.order();
        let dim = self.base.dim();
        let tn = self.transversal.reps.len();
        let l = self.base.level() as i64;
        let mut values = vec![0i64; n.pow(deg as u32) * tn * dim];
        let mut args = Vec::with_capacity(deg + 1);
        for idx in 0..n.pow(deg as u32) {
            let gs = index_tuple(n, deg, idx);
            for t in 0..tn {
                let f = self.factorize(t, &gs);
                let dst = (idx * tn + t) * dim;
                for j in 0..=deg {
                    args.clear();
                    args.extend_from_slice(&f.hs[..j]);
                    args.push(self.transversal.reps[f.ss[j]]);
                    args.extend_from_slice(&gs[j..]);
                    let base = tuple_index(n, &args) * tn * dim;
                    for y in 0..dim {
                        let v = theta.values()[base + y];
                        if j % 2 == 0 {
                            values[dst + y] -= v;
                        } else {
                            values[dst + y] += v;
                        }
                    }
                }
                for v in &mut values[dst..dst + dim] {
                    *v = v.rem_euclid(l);
                }
            }
        }
        Cochain::from_values(self.ambient.clone(), self.coinduced.clone(), deg, values)
    }

    fn check_coinduced(&self, theta: &Cochain) -> Result<()> {
        if theta.group() != &self.ambient || theta.module() != &self.coinduced {
            return Err(Error::ShapeMismatch(
                "cochain is not over G with the coinduced module".into(),
            ));
        }
        Ok(())
    }
}

/// The regular permutation module `(ℤ/L)[G]`.
pub fn regular_module(group: &FiniteGroup, level: u64) -> GModule {
    let n = group.order();
    let action = (0..n)
        .map(|g| (0..n).map(|x| group.mul(g, x)).collect())
        .collect();
    GModule::permutation(group, level, action).expect("left multiplication is an action")
}
