//! Seeded verification suites behind `twochar verify`.
//!
//! With `poison` set, each suite corrupts one table entry before checking and
//! is expected to report a failure with a witness.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atlas::Atlas;
use crate::burnside::{basis_product, mark_matrix};
use crate::cochain::{index_tuple, schur_classes, Cochain, GModule};
use crate::corpus;
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::gkchar::{gk_linear, oracle_twisted_regular, twisted_regular};
use crate::group::{FiniteGroup, Subgroup};
use crate::io::{crossed_data_from_json, Bounds};
use crate::shapiro::{regular_module, Shapiro};

pub const SUITES: &[&str] = &["shapiro", "oracle", "burnside", "crossed"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub iters: usize,
    pub poison: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            iters: 50,
            poison: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "suite: {}\nseed: {}\niters: {}\npoison: {}\n",
            self.suite, c.seed, c.iters, c.poison
        );
        for check in &self.checks {
            let tag = if check.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {}: {}", check.name, check.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            out,
            "{}: {} checks, {failed} failed",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.checks.len()
        );
        out
    }
}

pub fn run_suite(name: &str, config: VerifyConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let checks = match name {
        "shapiro" => shapiro_suite(&config, &mut rng)?,
        "oracle" => oracle_suite(&config)?,
        "burnside" => burnside_suite(&config)?,
        "crossed" => crossed_suite(&config)?,
        other => {
            return Err(Error::Parse(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        config,
        checks,
    })
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn random_cochain<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    module: &GModule,
    degree: usize,
    rng: &mut R,
) -> Cochain {
    let size = group.order().pow(degree as u32) * module.dim();
    let level = module.level() as i64;
    let values = (0..size).map(|_| rng.gen_range(0..level)).collect();
    Cochain::from_values(group.clone(), module.clone(), degree, values).expect("shape matches")
}

/// First `(tuple, point)` where two cochains of the same shape differ.
pub fn first_difference(a: &Cochain, b: &Cochain) -> Option<(Vec<usize>, usize)> {
    let dim = a.module().dim().max(1);
    let n = a.group().order();
    a.values()
        .iter()
        .zip(b.values())
        .position(|(x, y)| x != y)
        .map(|i| (index_tuple(n, a.degree(), i / dim), i % dim))
}

/// The four `(G, Q)` pairs of the Shapiro suite.
pub fn shapiro_pairs() -> Result<Vec<(Arc<FiniteGroup>, Subgroup, String)>> {
    let s3 = corpus::group_arc("S3")?;
    let d4 = corpus::group_arc("D4")?;
    let z4 = corpus::group_arc("Z4")?;
    let find = |g: &FiniteGroup, order: usize, cyclic: bool| {
        g.all_subgroups()
            .into_iter()
            .find(|p| {
                p.order() == order
                    && (!cyclic || p.elements().iter().any(|&x| g.element_order(x) == order))
            })
            .expect("subgroup exists")
    };
    Ok(vec![
        (s3.clone(), find(&s3, 3, true), "S3>A3".into()),
        (s3.clone(), find(&s3, 2, true), "S3>Z2".into()),
        (d4.clone(), find(&d4, 4, true), "D4>Z4".into()),
        (z4.clone(), find(&z4, 2, true), "Z4>Z2".into()),
    ])
}

fn shapiro_suite(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut poison = config.poison;
    for (g, q, label) in shapiro_pairs()? {
        let level = g.order() as u64;
        let local = Arc::new(g.subgroup_as_group(&q));
        for (mname, base) in [
            ("trivial", GModule::trivial(level)),
            ("permutation", regular_module(&local, level)),
        ] {
            let sh = Shapiro::with_local(g.clone(), &q, local.clone(), base.clone())?;
            let mut failure: Option<String> = None;
            'outer: for degree in 1..=2 {
                for _ in 0..config.iters {
                    let mu = random_cochain(&local, &base, degree, rng);
                    let mut psi = sh.psi(&mu)?;
                    if poison {
                        psi.values_mut()[0] = (psi.values()[0] + 1) % level as i64;
                        poison = false;
                    }
                    let back = sh.phi(&psi)?;
                    if let Some(w) = first_difference(&back, &mu) {
                        failure = Some(format!("φψ ≠ id in degree {degree} at {w:?}"));
                        break 'outer;
                    }
                    if let Some(w) =
                        first_difference(&psi.differential(), &sh.psi(&mu.differential())?)
                    {
                        failure = Some(format!("dψ ≠ ψd in degree {degree} at {w:?}"));
                        break 'outer;
                    }
                    let theta = random_cochain(&g, sh.coinduced(), degree, rng);
                    if let Some(w) = first_difference(
                        &sh.phi(&theta)?.differential(),
                        &sh.phi(&theta.differential())?,
                    ) {
                        failure = Some(format!("dφ ≠ φd in degree {degree} at {w:?}"));
                        break 'outer;
                    }
                    let lhs = sh.psi(&sh.phi(&theta)?)?.sub(&theta)?;
                    let rhs = sh
                        .varpi(&theta)?
                        .differential()
                        .add(&sh.varpi(&theta.differential())?)?;
                    if let Some(w) = first_difference(&lhs, &rhs) {
                        failure = Some(format!("ψφ − 1 ≠ dϖ + ϖd in degree {degree} at {w:?}"));
                        break 'outer;
                    }
                }
            }
            let name = format!("shapiro {label} {mname}");
            checks.push(match failure {
                None => check(
                    name,
                    true,
                    format!(
                        "max degree 2, {} cochains per degree and side",
                        config.iters
                    ),
                ),
                Some(w) => check(name, false, w),
            });
        }
    }
    Ok(checks)
}

pub const ORACLE_GROUPS: &[&str] = &["V4", "Z4", "D4", "Q8"];

fn oracle_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut poison = config.poison;
    for name in ORACLE_GROUPS {
        let g = corpus::group_arc(name)?;
        let schur = schur_classes(g.clone())?;
        let pairs = g.commuting_pairs();
        let mut failure = None;
        let mut count = 0;
        'classes: for i in 0..schur.len() {
            let mu = schur.representative(i);
            for &(a, b) in &pairs {
                let expected = gk_linear(mu, a, b)?;
                let got = if poison && a != 0 && b != 0 {
                    poison = false;
                    let mut rho = twisted_regular(mu);
                    let clean = rho.clone();
                    let w = rho[b].weights()[0].mul(&RootOfUnity::new(mu.level(), 1))?;
                    let mut weights = rho[b].weights().to_vec();
                    weights[0] = w;
                    rho[b] = crate::gkchar::MonomialMatrix::new(rho[b].perm().to_vec(), weights)?;
                    let ai = g.inv(a);
                    let m = clean[ai].mul(&rho[b])?.mul(&clean[ai].inverse())?;
                    m.scalar_ratio(&rho[b]).ok_or(Error::NotScalarMultiple)
                } else {
                    oracle_twisted_regular(mu, a, b)
                };
                count += 1;
                match got {
                    Ok(v) if v == expected => {}
                    Ok(v) => {
                        failure = Some(format!(
                            "class {i}, (a,b) = ({a},{b}): oracle {v}, formula {expected}"
                        ));
                        break 'classes;
                    }
                    Err(e) => {
                        failure = Some(format!("class {i}, (a,b) = ({a},{b}): {e}"));
                        break 'classes;
                    }
                }
            }
        }
        let label = format!("oracle {name}");
        checks.push(match failure {
            None => check(
                label,
                true,
                format!("{} classes, {} class-pair evaluations", schur.len(), count),
            ),
            Some(w) => check(label, false, w),
        });
    }
    let v4 = corpus::group_arc("V4")?;
    let schur = schur_classes(v4)?;
    let pinned = gk_linear(schur.representative(1), 1, 2)?;
    checks.push(check(
        "oracle V4 pinned",
        pinned == RootOfUnity::new(4, 2),
        format!("nontrivial class at (a,b) = (1,2) gives {pinned}"),
    ));
    Ok(checks)
}

pub const BURNSIDE_GROUPS: &[&str] = &["V4", "Z4", "S3", "D4", "Q8"];

type Table = Vec<Vec<BTreeMap<usize, i64>>>;

fn lin_mul(t: &Table, u: &BTreeMap<usize, i64>, v: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for (&i, &x) in u {
        for (&j, &y) in v {
            for (&k, &z) in &t[i][j] {
                *out.entry(k).or_insert(0) += x * y * z;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn burnside_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut poison = config.poison;
    for name in BURNSIDE_GROUPS {
        let g = corpus::group_arc(name)?;
        let atlas = Atlas::new(g.clone());
        let basis = atlas.basis()?;
        let pos: BTreeMap<_, _> = basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let k = basis.len();
        let mut table: Table = basis
            .iter()
            .map(|&a| {
                basis
                    .iter()
                    .map(|&b| {
                        Ok(basis_product(&atlas, a, b)?
                            .into_iter()
                            .map(|(key, m)| (pos[&key], m as i64))
                            .collect())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let unit = pos[&crate::rep2::Rep2::unit(atlas.clone()).keys()[0]];
        let regular = pos[&crate::rep2::Rep2::regular(atlas.clone()).keys()[0]];
        if poison {
            *table[unit][regular].entry(regular).or_insert(0) += 1;
            poison = false;
        }
        let e = |i: usize| BTreeMap::from([(i, 1i64)]);
        let expected_count = match *name {
            "V4" => Some(6),
            "S3" => Some(4),
            _ => None,
        };
        checks.push(check(
            format!("burnside {name} basis"),
            expected_count.map_or(true, |c| c == k),
            format!("{k} basis pairs"),
        ));
        let comm = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .find(|&(i, j)| table[i][j] != table[j][i]);
        checks.push(check(
            format!("burnside {name} commutative"),
            comm.is_none(),
            comm.map_or(format!("{} products", k * k), |w| {
                format!("differs at {w:?}")
            }),
        ));
        let mut assoc = None;
        'a: for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let left = lin_mul(&table, &table[i][j], &e(l));
                    let right = lin_mul(&table, &e(i), &table[j][l]);
                    if left != right {
                        assoc = Some((i, j, l));
                        break 'a;
                    }
                }
            }
        }
        checks.push(check(
            format!("burnside {name} associative"),
            assoc.is_none(),
            assoc.map_or(format!("{} triples", k * k * k), |w| {
                format!("differs at {w:?}")
            }),
        ));
        let unit_fail = (0..k).find(|&i| table[unit][i] != e(i) || table[i][unit] != e(i));
        checks.push(check(
            format!("burnside {name} unit"),
            unit_fail.is_none(),
            unit_fail.map_or("<triv,G> is a two-sided identity".into(), |i| {
                format!("fails on basis {i}")
            }),
        ));
        let sq_ok = table[regular][regular] == BTreeMap::from([(regular, g.order() as i64)]);
        checks.push(check(
            format!("burnside {name} regular square"),
            sq_ok,
            format!("<triv,1>^2 = {:?}", table[regular][regular]),
        ));
        let det = mark_matrix(&atlas)?.determinant()?;
        checks.push(check(
            format!("burnside {name} marks"),
            !det.is_zero(),
            format!("determinant {det}"),
        ));
    }
    Ok(checks)
}

fn crossed_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let expectations = [("z2_z4", 2usize, 1usize, 16usize), ("inner_s3", 1, 1, 36)];
    for (i, (name, pi1, pi2, triples)) in expectations.into_iter().enumerate() {
        let src = corpus::crossed_source(name).expect("bundled");
        let mut data = crossed_data_from_json(src, Bounds::default())?;
        if config.poison && i == 1 {
            data.action[1][1] = data.action[1][2];
        }
        let k = match data.validate() {
            Ok(k) => k,
            Err(e) => {
                checks.push(check(
                    format!("crossed {name} valid"),
                    false,
                    format!("rejected: {e}"),
                ));
                continue;
            }
        };
        checks.push(check(
            format!("crossed {name} valid"),
            true,
            "all axioms hold",
        ));
        let (p1, p2) = (k.pi1().group.order(), k.pi2().order());
        checks.push(check(
            format!("crossed {name} homotopy groups"),
            p1 == pi1 && p2 == pi2,
            format!("|π₁| = {p1}, |π₂| = {p2}"),
        ));
        let t = k.triples()?;
        let classes = k.triple_classes()?;
        let sum: usize = classes.iter().map(|c| c.len()).sum();
        checks.push(check(
            format!("crossed {name} triples"),
            t.len() == triples && sum == t.len(),
            format!("|𝔾| = {}, {} classes", t.len(), classes.len()),
        ));
        let size = k.g().order() * k.h().order();
        let inter = k.interchange_violation();
        checks.push(check(
            format!("crossed {name} interchange"),
            inter.is_none(),
            inter.map_or(format!("exhaustive, |G|·|H| = {size}"), |w| {
                format!("fails at {w:?}")
            }),
        ));
    }
    let src = corpus::crossed_source("broken_peiffer").expect("bundled");
    let verdict = crossed_data_from_json(src, Bounds::default())?.validate();
    checks.push(match verdict {
        Err(e @ Error::PeifferFailure { .. }) => {
            check("crossed broken_peiffer rejected", true, e.to_string())
        }
        Err(e) => check(
            "crossed broken_peiffer rejected",
            false,
            format!("wrong error: {e}"),
        ),
        Ok(_) => check("crossed broken_peiffer rejected", false, "accepted"),
    });
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_poison_fails() {
        for suite in SUITES {
            let cfg = VerifyConfig {
                seed: 1,
                iters: 3,
                poison: false,
            };
            let report = run_suite(suite, cfg).unwrap();
            assert!(report.passed(), "{}", report.render());
            let report = run_suite(
                suite,
                VerifyConfig {
                    poison: true,
                    ..cfg
                },
            )
            .unwrap();
            assert!(!report.passed(), "{}", report.render());
        }
    }
}
