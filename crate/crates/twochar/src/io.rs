//! JSON and CSV formats.
//!
//! Every `*_to_json` function emits compact JSON; parsing and re-emitting an
//! input that was itself produced this way gives back the same bytes.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::atlas::{Atlas, BasisKey};
use crate::burnside::{BurnsideElement, MarkTable};
use crate::cochain::{h2, Cochain, CohomologyClassSet, GModule, SchurClasses};
use crate::crossed::CrossedModule;
use crate::cyclo::{CycloInt, CycloRat, RootOfUnity};
use crate::error::{Error, Result};
use crate::gkchar::CharTable;
use crate::group::{FiniteGroup, GroupSource, MAX_CLOSURE};
use crate::rep2::Rep2;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GroupJson {
    Cayley {
        name: String,
        order: usize,
        cayley: Vec<Vec<usize>>,
    },
    Permutations {
        name: String,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

/// Limits applied while reading input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_order: usize,
    pub max_closure: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_order: 24,
            max_closure: MAX_CLOSURE,
        }
    }
}

fn group_from_repr(g: GroupJson, bounds: Bounds) -> Result<FiniteGroup> {
    let group = match g {
        GroupJson::Cayley {
            name,
            order,
            cayley,
        } => {
            if cayley.len() != order {
                return Err(Error::Parse(format!(
                    "order {order} but {} table rows",
                    cayley.len()
                )));
            }
            if order > bounds.max_order {
                return Err(Error::TooLarge(format!(
                    "group order {order} exceeds {}",
                    bounds.max_order
                )));
            }
            FiniteGroup::from_cayley_table(cayley, &name)?
        }
        GroupJson::Permutations {
            name,
            degree,
            generators,
        } => FiniteGroup::from_permutation_generators_bounded(
            degree,
            generators,
            &name,
            bounds.max_closure,
        )?,
    };
    if group.order() > bounds.max_order {
        return Err(Error::TooLarge(format!(
            "group order {} exceeds {}",
            group.order(),
            bounds.max_order
        )));
    }
    Ok(group)
}

fn group_repr(g: &FiniteGroup) -> GroupJson {
    match g.source() {
        GroupSource::Cayley(rows) => GroupJson::Cayley {
            name: g.name().to_string(),
            order: g.order(),
            cayley: rows.clone(),
        },
        GroupSource::Permutations { degree, generators } => GroupJson::Permutations {
            name: g.name().to_string(),
            degree: *degree,
            generators: generators.clone(),
        },
    }
}

pub fn group_from_json(s: &str) -> Result<FiniteGroup> {
    group_from_json_bounded(s, Bounds::default())
}

pub fn group_from_json_bounded(s: &str, bounds: Bounds) -> Result<FiniteGroup> {
    group_from_repr(serde_json::from_str(s)?, bounds)
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    serde_json::to_string(&group_repr(g)).expect("serializable")
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ModuleJson {
    Named(String),
    Set { set: usize, action: Vec<Vec<usize>> },
}

#[derive(Serialize, Deserialize)]
struct CochainJson {
    group: String,
    level: u64,
    module: ModuleJson,
    degree: usize,
    values: Vec<i64>,
}

fn cochain_repr(c: &Cochain) -> CochainJson {
    let module = match c.module() {
        GModule::Trivial { .. } => ModuleJson::Named("trivial".into()),
        GModule::Permutation { action, .. } => ModuleJson::Set {
            set: c.module().dim(),
            action: action.to_vec(),
        },
    };
    CochainJson {
        group: c.group().name().to_string(),
        level: c.level(),
        module,
        degree: c.degree(),
        values: c.values().to_vec(),
    }
}

fn cochain_from_repr(j: CochainJson, group: Arc<FiniteGroup>) -> Result<Cochain> {
    if j.group != group.name() {
        return Err(Error::Parse(format!(
            "cocycle is over {}, expected {}",
            j.group,
            group.name()
        )));
    }
    if j.level == 0 {
        return Err(Error::InvalidLevel(0));
    }
    let module = match j.module {
        ModuleJson::Named(s) if s == "trivial" => GModule::trivial(j.level),
        ModuleJson::Named(s) => return Err(Error::Parse(format!("unknown module {s:?}"))),
        ModuleJson::Set { set, action } => {
            if action.iter().any(|r| r.len() != set) {
                return Err(Error::Parse(format!("action rows must have length {set}")));
            }
            GModule::permutation(&group, j.level, action)?
        }
    };
    Cochain::from_values(group, module, j.degree, j.values)
}

pub fn cochain_to_json(c: &Cochain) -> String {
    serde_json::to_string(&cochain_repr(c)).expect("serializable")
}

/// Reads a cochain over `group`; the recorded group name must match.
pub fn cochain_from_json(s: &str, group: Arc<FiniteGroup>) -> Result<Cochain> {
    cochain_from_repr(serde_json::from_str(s)?, group)
}

#[derive(Serialize, Deserialize)]
struct OrbitJson {
    subgroup: Vec<usize>,
    cocycle: CochainJson,
}

#[derive(Serialize, Deserialize)]
struct Rep2Json {
    group: String,
    orbits: Vec<OrbitJson>,
}

/// The canonical orbits of a 2-representation.
pub fn rep2_to_json(r: &Rep2) -> Result<String> {
    let orbits = r
        .orbits()?
        .iter()
        .map(|(p, mu)| OrbitJson {
            subgroup: p.elements().to_vec(),
            cocycle: cochain_repr(mu),
        })
        .collect();
    Ok(serde_json::to_string(&Rep2Json {
        group: r.group().name().to_string(),
        orbits,
    })?)
}

/// Reads a 2-representation, choosing the atlas level `lcm(|G|, levels)`.
pub fn rep2_from_json(s: &str, group: Arc<FiniteGroup>) -> Result<Rep2> {
    let j: Rep2Json = serde_json::from_str(s)?;
    if j.group != group.name() {
        return Err(Error::Parse(format!(
            "representation is over {}, expected {}",
            j.group,
            group.name()
        )));
    }
    let level = j.orbits.iter().fold(group.order() as u64, |l, o| {
        if o.cocycle.level == 0 {
            l
        } else {
            l.lcm(&o.cocycle.level)
        }
    });
    let atlas = Atlas::with_level(group.clone(), level)?;
    let orbits = j
        .orbits
        .into_iter()
        .map(|o| {
            let p = group.subgroup(&o.subgroup)?;
            let local = atlas.local(&p)?.clone();
            Ok((p, cochain_from_repr(o.cocycle, local)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Rep2::from_orbits(atlas, &orbits)
}

#[derive(Serialize, Deserialize)]
struct CrossedJson {
    #[serde(rename = "H")]
    h: GroupJson,
    #[serde(rename = "G")]
    g: GroupJson,
    boundary: Vec<usize>,
    action: Vec<Vec<usize>>,
}

/// Raw crossed-module tables, before validation.
#[derive(Clone, Debug)]
pub struct CrossedData {
    pub h: Arc<FiniteGroup>,
    pub g: Arc<FiniteGroup>,
    pub boundary: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

impl CrossedData {
    pub fn validate(self) -> Result<CrossedModule> {
        CrossedModule::validate(self.h, self.g, self.boundary, self.action)
    }
}

pub fn crossed_data_from_json(s: &str, bounds: Bounds) -> Result<CrossedData> {
    let j: CrossedJson = serde_json::from_str(s)?;
    Ok(CrossedData {
        h: Arc::new(group_from_repr(j.h, bounds)?),
        g: Arc::new(group_from_repr(j.g, bounds)?),
        boundary: j.boundary,
        action: j.action,
    })
}

pub fn crossed_from_json(s: &str) -> Result<CrossedModule> {
    crossed_data_from_json(s, Bounds::default())?.validate()
}

pub fn crossed_to_json(k: &CrossedModule) -> String {
    let j = CrossedJson {
        h: group_repr(k.h()),
        g: group_repr(k.g()),
        boundary: k.boundary().to_vec(),
        action: k.action_table().to_vec(),
    };
    serde_json::to_string(&j).expect("serializable")
}

pub fn root_to_value(r: &RootOfUnity) -> Value {
    json!({"level": r.level(), "exp": r.exp()})
}

/// `{"level": L, "coeffs": [...]}`; coefficients outside the `i64` range are written as strings.
pub fn cyclo_to_value(c: &CycloInt) -> Value {
    let coeffs: Vec<Value> = c
        .coeffs()
        .iter()
        .map(|x| {
            x.to_i64()
                .map_or_else(|| Value::String(x.to_string()), Value::from)
        })
        .collect();
    json!({"level": c.level(), "coeffs": coeffs})
}

pub fn cyclo_rat_to_value(c: &CycloRat) -> Value {
    let den = c
        .denominator()
        .to_i64()
        .map_or_else(|| Value::String(c.denominator().to_string()), Value::from);
    json!({"num": cyclo_to_value(c.numerator()), "den": den})
}

/// Decimal approximation `x+yi`, for display only.
pub fn numeric(z: (f64, f64)) -> String {
    let clean = |v: f64| if v.abs() < 5e-10 { 0.0 } else { v };
    let (x, y) = (clean(z.0), clean(z.1));
    if y == 0.0 {
        format!("{x:.6}")
    } else {
        format!("{x:.6}{y:+.6}i")
    }
}

pub fn show_cyclo(c: &CycloInt, as_numeric: bool) -> String {
    if as_numeric {
        numeric(c.to_complex_approx())
    } else {
        c.to_string()
    }
}

pub fn show_cyclo_rat(c: &CycloRat, as_numeric: bool) -> String {
    if as_numeric {
        numeric(c.to_complex_approx())
    } else {
        c.to_string()
    }
}

/// `<triv,{0,1}>` or `<μ1,{0,1,2,3}>`.
pub fn key_label(atlas: &Atlas, key: BasisKey) -> String {
    let p = atlas.class_rep(key.class);
    if key.schur == 0 {
        format!("<triv,{p}>")
    } else {
        format!("<μ{},{p}>", key.schur)
    }
}

pub fn element_label(u: &BurnsideElement, as_numeric: bool) -> String {
    if u.is_zero() {
        return "0".into();
    }
    u.coefficients()
        .iter()
        .map(|(&k, c)| {
            let label = key_label(u.atlas(), k);
            if *c == CycloRat::one(c.level()) {
                label
            } else if c.denominator() == &1.into() && c.numerator().as_integer().is_some() {
                format!("{}{label}", c.numerator())
            } else {
                format!("({}){label}", show_cyclo_rat(c, as_numeric))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

pub fn char_table_csv(t: &CharTable, atlas: &Atlas, as_numeric: bool) -> String {
    let mut header = vec!["a".to_string(), "b".to_string()];
    header.extend(t.columns.iter().map(|&k| key_label(atlas, k)));
    let mut out = csv_line(&header);
    for (&(a, b), row) in t.rows.iter().zip(&t.entries) {
        let mut fields = vec![a.to_string(), b.to_string()];
        fields.extend(row.iter().map(|v| show_cyclo(v, as_numeric)));
        out.push_str(&csv_line(&fields));
    }
    out
}

pub fn char_table_json(t: &CharTable, atlas: &Atlas) -> String {
    let v = json!({
        "group": t.group,
        "level": t.level,
        "rows": t.rows.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "columns": t.columns.iter().map(|&k| key_label(atlas, k)).collect::<Vec<_>>(),
        "entries": t.entries.iter().map(|r| r.iter().map(cyclo_to_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    serde_json::to_string(&v).expect("serializable")
}

/// Basis listing, multiplication table and marks of the Burnside ring.
pub struct BurnsideReport {
    pub atlas: Arc<Atlas>,
    pub basis: Vec<BasisKey>,
    pub products: Vec<Vec<BurnsideElement>>,
    pub marks: MarkTable,
    pub determinant: CycloRat,
}

impl BurnsideReport {
    pub fn new(atlas: Arc<Atlas>) -> Result<Self> {
        let basis = atlas.basis()?;
        let elems: Vec<BurnsideElement> = basis
            .iter()
            .map(|&k| BurnsideElement::basis_element(atlas.clone(), k))
            .collect();
        let products = elems
            .iter()
            .map(|a| elems.iter().map(|b| a.mul(b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let marks = crate::burnside::mark_matrix(&atlas)?;
        let determinant = marks.determinant()?;
        Ok(BurnsideReport {
            atlas,
            basis,
            products,
            marks,
            determinant,
        })
    }

    fn row_label(&self, i: usize) -> String {
        let row = &self.marks.rows[i];
        let alpha: Vec<String> = row.alpha.iter().map(|a| a.to_string()).collect();
        format!(
            "f[{},({})]",
            self.atlas.class_rep(row.class),
            alpha.join(" ")
        )
    }

    pub fn to_json(&self) -> String {
        let a = &self.atlas;
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|&k| {
                let p = a.class_rep(k.class);
                json!({"label": key_label(a, k), "subgroup": p.elements(), "schur": k.schur, "index": a.index_of(k)})
            })
            .collect();
        let products: Vec<Vec<Value>> = self
            .products
            .iter()
            .map(|row| {
                row.iter()
                    .map(|u| {
                        Value::Array(
                            u.coefficients()
                                .iter()
                                .map(|(&k, c)| json!({"basis": key_label(a, k), "coeff": cyclo_rat_to_value(c)}))
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<Value> = self
            .marks
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                json!({
                    "label": self.row_label(i),
                    "subgroup": a.class_rep(r.class).elements(),
                    "alpha": r.alpha.iter().map(root_to_value).collect::<Vec<_>>(),
                })
            })
            .collect();
        let marks: Vec<Vec<Value>> = self
            .marks
            .entries
            .iter()
            .map(|r| r.iter().map(cyclo_rat_to_value).collect())
            .collect();
        let v = json!({
            "group": a.group().name(),
            "level": a.level(),
            "basis": basis,
            "multiplication": products,
            "mark_rows": rows,
            "marks": marks,
            "determinant": cyclo_rat_to_value(&self.determinant),
        });
        serde_json::to_string(&v).expect("serializable")
    }

    pub fn to_csv(&self, as_numeric: bool) -> String {
        let a = &self.atlas;
        let labels: Vec<String> = self.basis.iter().map(|&k| key_label(a, k)).collect();
        let mut out = String::from("# basis\n");
        out.push_str(&csv_line(&[
            "label".into(),
            "subgroup".into(),
            "schur".into(),
            "index".into(),
        ]));
        for &k in &self.basis {
            out.push_str(&csv_line(&[
                key_label(a, k),
                a.class_rep(k.class).to_string(),
                k.schur.to_string(),
                a.index_of(k).to_string(),
            ]));
        }
        out.push_str("\n# multiplication\n");
        let mut header = vec![String::new()];
        header.extend(labels.iter().cloned());
        out.push_str(&csv_line(&header));
        for (label, row) in labels.iter().zip(&self.products) {
            let mut fields = vec![label.clone()];
            fields.extend(row.iter().map(|u| element_label(u, as_numeric)));
            out.push_str(&csv_line(&fields));
        }
        out.push_str("\n# marks\n");
        out.push_str(&csv_line(&header));
        for (i, row) in self.marks.entries.iter().enumerate() {
            let mut fields = vec![self.row_label(i)];
            fields.extend(row.iter().map(|v| show_cyclo_rat(v, as_numeric)));
            out.push_str(&csv_line(&fields));
        }
        out.push_str("\n# determinant\n");
        out.push_str(&csv_line(&[show_cyclo_rat(&self.determinant, as_numeric)]));
        out
    }

    pub fn to_text(&self, as_numeric: bool) -> String {
        let a = &self.atlas;
        let mut out = format!(
            "group: {} (order {})\n",
            a.group().name(),
            a.group().order()
        );
        out.push_str(&format!("coefficients: Q(ζ{})\n", a.level()));
        out.push_str(&format!("basis pairs: {}\n", self.basis.len()));
        for (i, &k) in self.basis.iter().enumerate() {
            out.push_str(&format!(
                "  [{i}] {}  index {}\n",
                key_label(a, k),
                a.index_of(k)
            ));
        }
        out.push_str("multiplication:\n");
        for (i, row) in self.products.iter().enumerate() {
            for (j, u) in row.iter().enumerate() {
                if j >= i {
                    out.push_str(&format!(
                        "  [{i}]*[{j}] = {}\n",
                        element_label(u, as_numeric)
                    ));
                }
            }
        }
        out.push_str("marks:\n");
        for (i, row) in self.marks.entries.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|v| show_cyclo_rat(v, as_numeric)).collect();
            out.push_str(&format!("  {}: {}\n", self.row_label(i), vals.join(", ")));
        }
        let nonzero = if self.determinant.is_zero() {
            "zero"
        } else {
            "nonzero"
        };
        out.push_str(&format!(
            "determinant: {} ({nonzero})\n",
            show_cyclo_rat(&self.determinant, as_numeric)
        ));
        out
    }
}

/// `Z/2 x Z/2`, or `1` for the trivial group.
pub fn structure_label(factors: &[u64]) -> String {
    let parts: Vec<String> = factors
        .iter()
        .filter(|&&f| f > 1)
        .map(|f| format!("Z/{f}"))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" x ")
    }
}

/// Structure of a finite group for display: invariant factors if abelian, the order otherwise.
pub fn group_structure_label(g: &FiniteGroup) -> String {
    match g.abelian_invariants() {
        Some(f) => structure_label(&f),
        None => format!("nonabelian of order {}", g.order()),
    }
}

/// `H²(G, ℤ/L)` together with the Schur classes of `G`.
pub struct H2Report {
    pub level: u64,
    pub h2: CohomologyClassSet,
    pub schur: SchurClasses,
}

impl H2Report {
    pub fn new(group: Arc<FiniteGroup>, level: Option<u64>) -> Result<Self> {
        let n = group.order() as u64;
        let level = level.unwrap_or(n);
        if level == 0 {
            return Err(Error::InvalidLevel(0));
        }
        let h2 = h2(group.clone(), GModule::trivial(level))?;
        let schur = SchurClasses::new(group, n)?;
        Ok(H2Report { level, h2, schur })
    }

    fn schur_structure(&self) -> String {
        structure_label(self.schur.invariant_factors())
    }

    pub fn to_text(&self) -> String {
        let g = &self.h2.group;
        let mut out = format!("group: {} (order {})\n", g.name(), g.order());
        out.push_str(&format!(
            "H2(G, Z/{}): {} ({} classes)\n",
            self.level,
            structure_label(&self.h2.invariant_factors),
            self.h2.order()
        ));
        out.push_str(&format!(
            "Schur classes: {}, structure: {}\n",
            self.schur.len(),
            self.schur_structure()
        ));
        out.push_str(&format!(
            "Schur representatives (values mod {}):\n",
            self.schur.level()
        ));
        for i in 0..self.schur.len() {
            out.push_str(&format!(
                "  [{i}] {:?}\n",
                self.schur.representative(i).values()
            ));
        }
        out.push_str(&format!(
            "H2 representatives (values mod {}):\n",
            self.level
        ));
        for (i, c) in self.h2.representatives.iter().enumerate() {
            out.push_str(&format!("  [{i}] {:?}\n", c.values()));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let g = &self.h2.group;
        let v = json!({
            "group": g.name(),
            "order": g.order(),
            "level": self.level,
            "h2": {
                "invariant_factors": self.h2.invariant_factors,
                "classes": self.h2.order(),
                "representatives": self.h2.representatives.iter().map(|c| c.values().to_vec()).collect::<Vec<_>>(),
            },
            "schur": {
                "level": self.schur.level(),
                "invariant_factors": self.schur.invariant_factors(),
                "classes": self.schur.len(),
                "representatives": (0..self.schur.len()).map(|i| self.schur.representative(i).values().to_vec()).collect::<Vec<_>>(),
            },
        });
        serde_json::to_string(&v).expect("serializable")
    }
}

pub fn char_table_text(t: &CharTable, atlas: &Atlas, as_numeric: bool) -> String {
    let mut cells = vec![{
        let mut h = vec!["(a,b)".to_string()];
        h.extend(t.columns.iter().map(|&k| key_label(atlas, k)));
        h
    }];
    for (&(a, b), row) in t.rows.iter().zip(&t.entries) {
        let mut r = vec![format!("({a},{b})")];
        r.extend(row.iter().map(|v| show_cyclo(v, as_numeric)));
        cells.push(r);
    }
    let widths: Vec<usize> = (0..cells[0].len())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = format!(
        "group: {}, {}x{} table over Q(ζ{})\n",
        t.group,
        t.rows.len(),
        t.columns.len(),
        t.level
    );
    for r in &cells {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn crossed_validate_text(k: &CrossedModule) -> String {
    format!(
        "valid: yes\nH: {} (order {})\nG: {} (order {})\n",
        k.h().name(),
        k.h().order(),
        k.g().name(),
        k.g().order()
    )
}

pub fn crossed_pi_text(k: &CrossedModule) -> String {
    let pi1 = k.pi1();
    let pi2 = k.h().subgroup_as_group(&k.pi2());
    format!(
        "π₁ = {} (order {})\nπ₂ = {} (order {})\n",
        group_structure_label(&pi1.group),
        pi1.group.order(),
        group_structure_label(&pi2),
        pi2.order()
    )
}

pub fn crossed_triples_text(k: &CrossedModule) -> Result<String> {
    let all = k.triples()?;
    let classes = k.triple_classes()?;
    let mut out = format!(
        "|𝔾| = {}\nconjugacy classes: {}\n",
        all.len(),
        classes.len()
    );
    for c in &classes {
        let t = c[0];
        out.push_str(&format!(
            "  (a,b,h) = ({},{},{})  size {}\n",
            t.a,
            t.b,
            t.h,
            c.len()
        ));
    }
    Ok(out)
}
