use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twochar::atlas::Atlas;
use twochar::burnside::BurnsideElement;
use twochar::cochain::{
    cohomologous_over_cx, conjugate_pullback, h2, schur_classes, Cochain, GModule, SchurClasses,
};
use twochar::corpus;
use twochar::crossed::CrossedModule;
use twochar::cyclo::{CycloInt, RootOfUnity};
use twochar::error::Error;
use twochar::gkchar::{gk_linear, gk_rep};
use twochar::group::{FiniteGroup, Subgroup};
use twochar::rep2::Rep2;
use twochar::shapiro::{regular_module, Shapiro};
use twochar::verify::{random_cochain, shapiro_pairs};

const SMALL: &[&str] = &["Z1", "Z2", "Z3", "Z4", "Z6", "V4", "S3", "D4", "Q8"];
const REP_GROUPS: &[&str] = &["V4", "Z4", "S3", "D4"];

fn group(name: &str) -> Arc<FiniteGroup> {
    corpus::group_arc(name).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subgroup(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Subgroup {
    let subs = g.all_subgroups();
    subs[rng.gen_range(0..subs.len())].clone()
}

fn permutation_module(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> GModule {
    let q = random_subgroup(g, rng);
    let cosets = g.right_cosets(&q);
    // g acts on right cosets Qh by Qh ↦ Q h g⁻¹
    let action = (0..g.order())
        .map(|x| {
            cosets
                .reps
                .iter()
                .map(|&h| cosets.coset_of[g.mul(h, g.inv(x))])
                .collect()
        })
        .collect();
    GModule::permutation(g, g.order() as u64, action).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn double_cosets_partition(gi in 0..SMALL.len(), seed in any::<u64>()) {
        let g = group(SMALL[gi]);
        let mut r = rng(seed);
        let (p, q) = (random_subgroup(&g, &mut r), random_subgroup(&g, &mut r));
        let dcs = g.double_cosets(&p, &q);
        let mut seen = BTreeSet::new();
        for (_, coset) in &dcs {
            for &x in coset {
                prop_assert!(seen.insert(x));
            }
        }
        prop_assert_eq!(seen.len(), g.order());
        prop_assert_eq!(g.right_transversal(&q).len() * q.order(), g.order());
    }

    #[test]
    fn cochain_differential_squares_to_zero(gi in 0..SMALL.len(), degree in 0usize..=3, perm in any::<bool>(), seed in any::<u64>()) {
        let g = group(SMALL[gi]);
        let mut r = rng(seed);
        let module = if perm { permutation_module(&g, &mut r) } else { GModule::trivial(g.order() as u64) };
        let c = random_cochain(&g, &module, degree, &mut r);
        prop_assert!(c.differential().differential().is_zero());
    }

    #[test]
    fn coboundary_witness_verifies(gi in 0..SMALL.len(), degree in 0usize..=2, perm in any::<bool>(), seed in any::<u64>()) {
        let g = group(SMALL[gi]);
        let mut r = rng(seed);
        let module = if perm { permutation_module(&g, &mut r) } else { GModule::trivial(g.order() as u64) };
        let c = random_cochain(&g, &module, degree, &mut r).differential();
        let found = c.is_coboundary();
        // bar complexes past the size bound are refused by design
        prop_assume!(!matches!(found, Err(Error::TooLarge(_))));
        let w = found.unwrap().expect("image of d is a coboundary");
        prop_assert_eq!(w.differential(), c);
    }

    #[test]
    fn inner_pullback_keeps_schur_class(gi in 0..SMALL.len(), seed in any::<u64>()) {
        let g = group(SMALL[gi]);
        let schur = schur_classes(g.clone()).unwrap();
        let mut r = rng(seed);
        let mu = schur.representative(r.gen_range(0..schur.len()));
        let x = r.gen_range(0..g.order());
        let whole = g.whole();
        let pulled = conjugate_pullback(&g, mu, &whole, x, &whole).unwrap();
        prop_assert!(cohomologous_over_cx(&pulled, mu).unwrap());
    }

    #[test]
    fn shapiro_phi_psi_identity_to_degree_three(pi in 0usize..4, degree in 0usize..=3, perm in any::<bool>(), seed in any::<u64>()) {
        let (g, q, _) = shapiro_pairs().unwrap().swap_remove(pi);
        let level = g.order() as u64;
        let local = Arc::new(g.subgroup_as_group(&q));
        let base = if perm { regular_module(&local, level) } else { GModule::trivial(level) };
        let sh = Shapiro::with_local(g, &q, local.clone(), base.clone()).unwrap();
        let mu = random_cochain(&local, &base, degree, &mut rng(seed));
        prop_assert_eq!(sh.phi(&sh.psi(&mu).unwrap()).unwrap(), mu);
    }

    #[test]
    fn crossed_compositions_stay_well_formed(ki in 0usize..2, seed in any::<u64>()) {
        let k = corpus::crossed(["z2_z4", "inner_s3"][ki]).unwrap();
        let mut r = rng(seed);
        let (ng, nh) = (k.g().order(), k.h().order());
        let e = k.two_morphism(r.gen_range(0..ng), r.gen_range(0..nh));
        let f = k.two_morphism(e.target, r.gen_range(0..nh));
        let f1 = k.two_morphism(r.gen_range(0..ng), r.gen_range(0..nh));
        let v = k.vertical_compose(&f, &e).unwrap();
        let h = k.horizontal_compose(&f, &f1);
        prop_assert!(k.is_well_formed(&v));
        prop_assert!(k.is_well_formed(&h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rep2_ring_laws(gi in 0..REP_GROUPS.len(), seed in any::<u64>()) {
        let atlas = Atlas::new(group(REP_GROUPS[gi]));
        let mut r = rng(seed);
        let a = Rep2::random(&atlas, &mut r, 2).unwrap();
        let b = Rep2::random(&atlas, &mut r, 2).unwrap();
        let c = Rep2::random(&atlas, &mut r, 2).unwrap();
        prop_assert!(a.tensor(&b).unwrap().equivalent(&b.tensor(&a).unwrap()).unwrap());
        prop_assert!(a.tensor(&b).unwrap().tensor(&c).unwrap().equivalent(&a.tensor(&b.tensor(&c).unwrap()).unwrap()).unwrap());
        prop_assert!(a.direct_sum(&b).unwrap().equivalent(&b.direct_sum(&a).unwrap()).unwrap());
        prop_assert!(a.direct_sum(&b).unwrap().direct_sum(&c).unwrap().equivalent(&a.direct_sum(&b.direct_sum(&c).unwrap()).unwrap()).unwrap());
        let left = a.tensor(&b.direct_sum(&c).unwrap()).unwrap();
        let right = a.tensor(&b).unwrap().direct_sum(&a.tensor(&c).unwrap()).unwrap();
        prop_assert!(left.equivalent(&right).unwrap());
        prop_assert!(a.tensor(&Rep2::unit(atlas.clone())).unwrap().equivalent(&a).unwrap());
        prop_assert_eq!(a.tensor(&b).unwrap().degree(), a.degree() * b.degree());
        prop_assert_eq!(a.to_perm_cocycle().unwrap().size(), a.degree());
    }

    #[test]
    fn from_rep2_is_a_ring_homomorphism(gi in 0..REP_GROUPS.len(), seed in any::<u64>()) {
        let atlas = Atlas::new(group(REP_GROUPS[gi]));
        let mut r = rng(seed);
        let a = Rep2::random(&atlas, &mut r, 3).unwrap();
        let b = Rep2::random(&atlas, &mut r, 3).unwrap();
        let (ua, ub) = (BurnsideElement::from_rep2(&a), BurnsideElement::from_rep2(&b));
        prop_assert_eq!(BurnsideElement::from_rep2(&a.tensor(&b).unwrap()), ua.mul(&ub).unwrap());
        prop_assert_eq!(BurnsideElement::from_rep2(&a.direct_sum(&b).unwrap()), ua.add(&ub).unwrap());
    }

    #[test]
    fn gk_multiplicative_additive_and_conjugation_invariant(gi in 0..REP_GROUPS.len(), seed in any::<u64>()) {
        let atlas = Atlas::new(group(REP_GROUPS[gi]));
        let g = atlas.group().clone();
        let mut r = rng(seed);
        let a = Rep2::random(&atlas, &mut r, 3).unwrap();
        let b = Rep2::random(&atlas, &mut r, 3).unwrap();
        let (t, s) = (a.tensor(&b).unwrap(), a.direct_sum(&b).unwrap());
        for (x, y) in g.commuting_pairs() {
            let (va, vb) = (gk_rep(&a, x, y).unwrap(), gk_rep(&b, x, y).unwrap());
            prop_assert_eq!(gk_rep(&t, x, y).unwrap(), &va * &vb);
            prop_assert_eq!(gk_rep(&s, x, y).unwrap(), &va + &vb);
            for z in 0..g.order() {
                prop_assert_eq!(gk_rep(&a, g.conj(z, x), g.conj(z, y)).unwrap(), va.clone());
            }
        }
    }

    #[test]
    fn gk_linear_ignores_coboundary_shifts(gi in 0..SMALL.len(), seed in any::<u64>()) {
        let g = group(SMALL[gi]);
        let schur = schur_classes(g.clone()).unwrap();
        let mut r = rng(seed);
        let mu = schur.representative(r.gen_range(0..schur.len()));
        let pi = random_cochain(&g, mu.module(), 1, &mut r);
        let pi = Cochain::from_fn(g.clone(), mu.level(), 1, |t| if t[0] == 0 { 0 } else { pi.value(t) });
        let shifted = mu.add(&pi.differential()).unwrap();
        for (a, b) in g.commuting_pairs() {
            prop_assert_eq!(gk_linear(&shifted, a, b).unwrap(), gk_linear(mu, a, b).unwrap());
        }
    }
}

#[test]
fn roots_to_cyclotomics_are_multiplicative() {
    for l in 1..=24u64 {
        for i in 0..l as i64 {
            for j in 0..l as i64 {
                let (r, s) = (RootOfUnity::new(l, i), RootOfUnity::new(l, j));
                assert_eq!(
                    r.mul(&s).unwrap().to_cyclo(),
                    &r.to_cyclo() * &s.to_cyclo(),
                    "L={l} {i} {j}"
                );
            }
        }
        if l > 1 {
            assert!(CycloInt::sum_of_roots(l, 0..l as i64).is_zero(), "L={l}");
        }
    }
}

proptest! {
    #[test]
    fn raise_level_commutes_with_products(l in 1u64..13, m in 1u64..4, xs in prop::collection::vec(-5i64..5, 12), ys in prop::collection::vec(-5i64..5, 12), k in 0i64..12) {
        let x = CycloInt::from_coeffs(l, &xs.iter().map(|&v| v.into()).collect::<Vec<_>>());
        let y = CycloInt::from_coeffs(l, &ys.iter().map(|&v| v.into()).collect::<Vec<_>>());
        let big = l * m;
        prop_assert_eq!((&x * &y).raise_level(big).unwrap(), &x.raise_level(big).unwrap() * &y.raise_level(big).unwrap());
        let r = RootOfUnity::new(l, k);
        prop_assert_eq!(r.to_cyclo().raise_level(big).unwrap(), r.raise_level(big).unwrap().to_cyclo());
    }
}

#[test]
fn commuting_classes_and_subgroup_classes_partition() {
    for name in SMALL {
        let g = group(name);
        let total: usize = (0..g.order()).map(|a| g.centralizer(a).order()).sum();
        let orbits: usize = g
            .commuting_pair_classes()
            .iter()
            .map(|c| c.orbit.len())
            .sum();
        assert_eq!(orbits, total, "{name}");
        let mut from_classes: Vec<Subgroup> = g
            .subgroup_conjugacy_classes()
            .into_iter()
            .flat_map(|c| c.orbit)
            .collect();
        from_classes.sort();
        let mut all = g.all_subgroups();
        all.sort();
        assert_eq!(from_classes, all, "{name}");
    }
}

#[test]
fn h2_representatives_are_pairwise_distinct() {
    for name in SMALL {
        let g = group(name);
        let set = h2(g.clone(), GModule::trivial(g.order() as u64)).unwrap();
        assert_eq!(
            set.order() as u64,
            set.invariant_factors.iter().product::<u64>(),
            "{name}"
        );
        if set.order() <= 8 {
            for i in 0..set.order() {
                for j in 0..i {
                    let diff = set.representatives[i].sub(&set.representatives[j]).unwrap();
                    assert!(diff.is_coboundary().unwrap().is_none(), "{name}: {i} ~ {j}");
                }
            }
        }
    }
}

#[test]
fn schur_classes_form_a_group() {
    for name in SMALL {
        let g = group(name);
        let s = SchurClasses::new(g.clone(), g.order() as u64).unwrap();
        for i in 0..s.len() {
            assert_eq!(s.add(i, s.neg(i)), 0);
            for j in 0..s.len() {
                let sum = s.representative(i).add(s.representative(j)).unwrap();
                assert_eq!(s.identify(&sum).unwrap(), s.add(i, j), "{name}");
            }
        }
    }
}

#[test]
fn linear_reps_form_the_schur_group() {
    for name in REP_GROUPS.iter().chain(&["Q8"]) {
        let atlas = Atlas::new(group(name));
        let s = schur_classes(atlas.group().clone()).unwrap();
        let lin: Vec<Rep2> = (0..s.len())
            .map(|i| Rep2::linear(atlas.clone(), s.representative(i)).unwrap())
            .collect();
        let distinct: BTreeSet<_> = lin.iter().map(|r| r.keys().to_vec()).collect();
        assert_eq!(distinct.len(), s.len(), "{name}");
        for a in &lin {
            assert_eq!(a.degree(), 1);
            for b in &lin {
                let t = a.tensor(b).unwrap();
                assert!(distinct.contains(t.keys()), "{name}");
            }
            assert!(a
                .tensor(&a.contragradient().unwrap())
                .unwrap()
                .equivalent(&Rep2::unit(atlas.clone()))
                .unwrap());
        }
    }
}

#[test]
fn shapiro_psi_is_injective_on_classes() {
    for (g, q, label) in shapiro_pairs().unwrap() {
        let level = g.order() as u64;
        let local = Arc::new(g.subgroup_as_group(&q));
        let sh =
            Shapiro::with_local(g.clone(), &q, local.clone(), GModule::trivial(level)).unwrap();
        let reps = h2(local.clone(), GModule::trivial(level))
            .unwrap()
            .representatives;
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                let diff = sh.psi(&reps[i].sub(&reps[j]).unwrap()).unwrap();
                assert_eq!(
                    diff.is_coboundary().unwrap().is_some(),
                    i == j,
                    "{label}: {i} {j}"
                );
            }
        }
    }
}

#[test]
fn crossed_pi1_and_triple_classes() {
    for name in ["z2_z4", "inner_s3"] {
        let k = corpus::crossed(name).unwrap();
        let q = k.pi1();
        let g = k.g();
        let image = k.image();
        for x in 0..g.order() {
            for y in 0..g.order() {
                assert_eq!(
                    q.projection[g.mul(x, y)],
                    q.group.mul(q.projection[x], q.projection[y])
                );
            }
            assert_eq!(q.projection[x] == 0, image.contains(x));
        }
        let hit: BTreeSet<_> = q.projection.iter().collect();
        assert_eq!(hit.len(), q.group.order());
        let classes = k.triple_classes().unwrap();
        assert_eq!(
            classes.iter().map(|c| c.len()).sum::<usize>(),
            k.triples().unwrap().len()
        );
        assert!(classes.iter().flatten().all(|t| k.is_triple(t)));
        assert!(k.interchange_violation().is_none());
    }
}

// Oracle: count G-orbits on pairs (P, class of H²(P, ℂ^×)) by union-find over conjugations.
fn basis_count_by_orbits(g: &Arc<FiniteGroup>) -> usize {
    let level = g.order() as u64;
    let subs = g.all_subgroups();
    let schur: Vec<SchurClasses> = subs
        .iter()
        .map(|p| SchurClasses::new(Arc::new(g.subgroup_as_group(p)), level).unwrap())
        .collect();
    let offsets: Vec<usize> = schur
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.len();
            Some(o)
        })
        .collect();
    let total = offsets.last().unwrap() + schur.last().unwrap().len();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (pi, p) in subs.iter().enumerate() {
        for x in 0..g.order() {
            // (P, μ) ↦ (xPx⁻¹, μ∘γ_{x⁻¹})
            let q = g.conjugate_subgroup(x, p);
            let qi = subs.iter().position(|s| *s == q).unwrap();
            for c in 0..schur[pi].len() {
                let pulled =
                    conjugate_pullback(g, schur[pi].representative(c), p, g.inv(x), &q).unwrap();
                let d = schur[qi].identify(&pulled).unwrap();
                let (a, b) = (
                    find(&mut parent, offsets[pi] + c),
                    find(&mut parent, offsets[qi] + d),
                );
                parent[a] = b;
            }
        }
    }
    (0..total).filter(|&i| find(&mut parent, i) == i).count()
}

#[test]
fn basis_count_matches_orbit_count() {
    for name in ["Z1", "Z4", "V4", "S3", "D4", "Q8"] {
        let g = group(name);
        assert_eq!(
            Atlas::new(g.clone()).basis().unwrap().len(),
            basis_count_by_orbits(&g),
            "{name}"
        );
    }
}

// Oracle: Res_P Ind_H^G r = ⊕_{x ∈ P\G/H} Ind^P (conjugate of Res_{H ∩ x⁻¹Px} r by x).
fn mackey_by_double_cosets(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    r: &Rep2,
    p: &Subgroup,
    target: &Arc<Atlas>,
) -> Rep2 {
    let level = r.level();
    let hg = r.group().clone();
    let mut orbits = Vec::new();
    for (x, _) in g.double_cosets(p, h) {
        let xi = g.inv(x);
        let k_global: Vec<usize> = h
            .elements()
            .iter()
            .copied()
            .filter(|&y| p.contains(g.conj(x, y)))
            .collect();
        let k_local = hg
            .subgroup(
                &k_global
                    .iter()
                    .map(|&y| h.local_index(y).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
        let k_atlas = Atlas::with_level(Arc::new(hg.subgroup_as_group(&k_local)), level).unwrap();
        for (s, nu) in r
            .mackey_restrict(&k_local, &k_atlas)
            .unwrap()
            .orbits()
            .unwrap()
        {
            let s_global = g
                .subgroup(
                    &s.elements()
                        .iter()
                        .map(|&i| k_global[i])
                        .collect::<Vec<_>>(),
                )
                .unwrap();
            let s_conj = g.conjugate_subgroup(x, &s_global);
            let pulled = conjugate_pullback(g, &nu, &s_global, xi, &s_conj).unwrap();
            let s_in_p = target
                .group()
                .subgroup(
                    &s_conj
                        .elements()
                        .iter()
                        .map(|&y| p.local_index(y).unwrap())
                        .collect::<Vec<_>>(),
                )
                .unwrap();
            let local = target.local(&s_in_p).unwrap().clone();
            orbits.push((
                s_in_p,
                Cochain::from_values(local, pulled.module().clone(), 2, pulled.values().to_vec())
                    .unwrap(),
            ));
        }
    }
    Rep2::from_orbits(target.clone(), &orbits).unwrap()
}

#[test]
fn mackey_restriction_of_induction() {
    let mut r = rng(11);
    for name in ["S3", "D4"] {
        let g = group(name);
        let level = g.order() as u64;
        let atlas = Atlas::new(g.clone());
        for h in g.all_subgroups() {
            let h_atlas = Atlas::with_level(Arc::new(g.subgroup_as_group(&h)), level).unwrap();
            for p in g.all_subgroups() {
                let p_atlas = Atlas::with_level(Arc::new(g.subgroup_as_group(&p)), level).unwrap();
                for _ in 0..3 {
                    let rep = Rep2::random(&h_atlas, &mut r, 2).unwrap();
                    let via_g = rep
                        .induce(&h, &atlas)
                        .unwrap()
                        .mackey_restrict(&p, &p_atlas)
                        .unwrap();
                    let direct = mackey_by_double_cosets(&g, &h, &rep, &p, &p_atlas);
                    assert_eq!(via_g.keys(), direct.keys(), "{name}: H = {h}, P = {p}");
                }
            }
        }
    }
}

// λ(x·t) against λ(t)·s(x, ∂h)^e, with s(x, d) defined by ρ(x)ρ(d)ρ(x)⁻¹ = s(x, d)·ρ(xdx⁻¹).
fn crossed_conjugation_exponents(
    k: CrossedModule,
    mu: &Cochain,
    chi: &[RootOfUnity],
) -> BTreeSet<i64> {
    use twochar::gkchar::{oracle_crossed_linear, CrossedLinearData};
    let data = CrossedLinearData::twisted(k.clone(), mu, chi).unwrap();
    let g = k.g().clone();
    let rho = data.rho();
    let s = |x: usize, d: usize| {
        rho[x]
            .mul(&rho[d])
            .unwrap()
            .mul(&rho[x].inverse())
            .unwrap()
            .scalar_ratio(&rho[g.conj(x, d)])
            .unwrap()
    };
    let mut exps = BTreeSet::new();
    for t in k.triples().unwrap() {
        let before = oracle_crossed_linear(&data, t.a, t.b, t.h).unwrap();
        for x in 0..g.order() {
            let u = k.conjugate_triple(x, &t);
            let after = oracle_crossed_linear(&data, u.a, u.b, u.h).unwrap();
            let sx = s(x, k.boundary()[t.h]);
            let fits: Vec<i64> = [1i64, -1]
                .into_iter()
                .filter(|&e| after == before.mul(&sx.pow(e)).unwrap())
                .collect();
            assert!(!fits.is_empty(), "no exponent fits at {t:?} under {x}");
            if fits.len() == 1 {
                exps.insert(fits[0]);
            }
        }
    }
    exps
}

#[test]
fn crossed_oracle_conjugation_law() {
    use twochar::crossed::CrossedModule as K;
    // trivial μ on inner S3 with the sign character: plain invariance
    let s3 = group("S3");
    let sign: Vec<RootOfUnity> = (0..6)
        .map(|x| RootOfUnity::new(6, if s3.element_order(x) == 2 { 3 } else { 0 }))
        .collect();
    let zero = Cochain::zero(s3.clone(), GModule::trivial(6), 2);
    assert!(crossed_conjugation_exponents(K::inner(s3), &zero, &sign).is_empty());
    // nontrivial class on inner V4 and D4
    let mut exps = BTreeSet::new();
    for g in [group("V4"), group("D4")] {
        let s = schur_classes(g.clone()).unwrap();
        let chi = vec![RootOfUnity::one(g.order() as u64); g.order()];
        exps.extend(crossed_conjugation_exponents(
            K::inner(g),
            s.representative(1),
            &chi,
        ));
    }
    // a coboundary shift on S3 makes s(x, d) take values of order 3 and 6
    let g = group("S3");
    let pi = Cochain::from_fn(g.clone(), 6, 1, |t| [0, 1, 4, 2, 5, 3][t[0]]);
    exps.extend(crossed_conjugation_exponents(
        K::inner(g),
        &pi.differential(),
        &sign,
    ));
    // order-2 classes fit both exponents; the shifted S3 cocycle separates them
    assert_eq!(exps, BTreeSet::from([1]));
}
