//! Finite groups stored as Cayley tables.
//!
//! Elements are the integers `0..order` and the identity is always `0`.
//! Groups built from permutations number their elements in breadth-first
//! order from the identity, multiplying by generators on the left.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Element index.
pub type Elem = usize;

/// Default bound on the order of a permutation closure.
pub const MAX_CLOSURE: usize = 10000;

/// What the group was built from, kept so that serialization reproduces the input.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Cayley(Vec<Vec<usize>>),
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    source: GroupSource,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

/// A subgroup, as the strictly ascending list of its elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` in the element list, which is its index in [`FiniteGroup::subgroup_as_group`].
    pub fn local_index(&self, g: Elem) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// A conjugacy class of subgroups with its least member as representative.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub orbit: Vec<Subgroup>,
}

/// A simultaneous-conjugacy class of commuting pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingPairClass {
    pub representative: (Elem, Elem),
    pub orbit: Vec<(Elem, Elem)>,
}

/// Right cosets `Qg` with their least elements as representatives.
#[derive(Clone, Debug)]
pub struct RightTransversal {
    pub subgroup: Subgroup,
    /// Representatives in ascending order, so `reps[0] == 0`.
    pub reps: Vec<Elem>,
    /// For each group element, the index into `reps` of its coset.
    pub coset_of: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table and relabels the identity to `0` if needed.
    pub fn from_cayley_table(table: Vec<Vec<usize>>, name: &str) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::NotAGroup(format!(
                    "entry {v} in row {i} is out of range"
                )));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for i in 0..n {
            if !(0..n).any(|j| table[i][j] == e && table[j][i] == e) {
                return Err(Error::NotAGroup(format!("element {i} has no inverse")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        // swap labels e and 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut flat = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[relabel(i) * n + relabel(j)] = relabel(table[i][j]);
            }
        }
        Ok(Self::from_flat(
            name.to_string(),
            n,
            flat,
            GroupSource::Cayley(table),
        ))
    }

    /// Closes a set of permutations (image arrays) under composition.
    pub fn from_permutation_generators(
        degree: usize,
        generators: Vec<Vec<usize>>,
        name: &str,
    ) -> Result<Self> {
        Self::from_permutation_generators_bounded(degree, generators, name, MAX_CLOSURE)
    }

    /// Like [`FiniteGroup::from_permutation_generators`] with an explicit closure bound.
    pub fn from_permutation_generators_bounded(
        degree: usize,
        generators: Vec<Vec<usize>>,
        name: &str,
        max_order: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::NotAGroup("degree must be positive".into()));
        }
        for (i, p) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree {
                return Err(Error::NotAPermutation(format!(
                    "generator {i} has wrong length"
                )));
            }
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::NotAPermutation(format!(
                        "generator {i} is not a bijection"
                    )));
                }
                seen[x] = true;
            }
        }
        let perms = permutation_closure(degree, &generators, max_order)?;
        let n = perms.len();
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut flat = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let c: Vec<usize> = (0..degree).map(|x| perms[i][perms[j][x]]).collect();
                flat[i * n + j] = index[&c];
            }
        }
        Ok(Self::from_flat(
            name.to_string(),
            n,
            flat,
            GroupSource::Permutations { degree, generators },
        ))
    }

    fn from_flat(name: String, order: usize, table: Vec<Elem>, source: GroupSource) -> Self {
        let mut inverse = vec![0; order];
        for i in 0..order {
            inverse[i] = (0..order).find(|&j| table[i * order + j] == 0).unwrap();
        }
        FiniteGroup {
            name,
            order,
            table,
            inverse,
            source,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Self::from_cayley_table(table, &format!("Z{n}")).unwrap()
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &GroupSource {
        &self.source
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, g: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Product of a list of elements, left to right.
    pub fn product(&self, gs: &[Elem]) -> Elem {
        gs.iter().fold(0, |acc, &g| self.mul(acc, g))
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Invariant factors (each dividing the next) of an abelian group, `None` if nonabelian.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let mut powers = Vec::new();
        let mut rest = self.order;
        let mut p = 2;
        while rest > 1 {
            if rest % p != 0 {
                p += 1;
                continue;
            }
            while rest % p == 0 {
                rest /= p;
            }
            // log_p #{x : x^(p^k) = 1}, for k = 0, 1, ... until it stabilizes
            let mut logs = vec![0usize];
            let mut pk = 1;
            loop {
                pk *= p;
                let mut count = (0..self.order).filter(|&x| self.pow(x, pk) == 0).count();
                let mut l = 0;
                while count > 1 {
                    count /= p;
                    l += 1;
                }
                if l == *logs.last().unwrap() {
                    break;
                }
                logs.push(l);
            }
            let ranks: Vec<usize> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            for i in 0..ranks[0] {
                let e = ranks.iter().filter(|&&r| r > i).count();
                powers.push((p as u64).pow(e as u32));
            }
        }
        Some(crate::cochain::invariant_factors_of_product(&powers))
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn check_elem(&self, g: Elem) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::OutOfRange(g))
        }
    }

    /// Checks that `elements` form a subgroup and returns it in canonical form.
    pub fn subgroup(&self, elements: &[Elem]) -> Result<Subgroup> {
        let set: BTreeSet<Elem> = elements.iter().copied().collect();
        if let Some(&g) = set.iter().find(|&&g| g >= self.order) {
            return Err(Error::OutOfRange(g));
        }
        if !set.contains(&0) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("{a}*{b} not in set")));
                }
            }
        }
        Ok(Subgroup {
            elements: set.into_iter().collect(),
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn generated_subgroup(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            elements: (0..self.order).filter(|&g| seen[g]).collect(),
        }
    }

    fn join(&self, p: &Subgroup, g: Elem) -> Subgroup {
        let mut gens = p.elements.clone();
        gens.push(g);
        self.generated_subgroup(&gens)
    }

    /// Every subgroup, sorted by order and then lexicographically.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut frontier: Vec<Subgroup> = Vec::new();
        for g in 0..self.order {
            let c = self.generated_subgroup(&[g]);
            if found.insert(c.clone()) {
                frontier.push(c);
            }
        }
        while let Some(p) = frontier.pop() {
            for g in 0..self.order {
                if p.contains(g) {
                    continue;
                }
                let k = self.join(&p, g);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        all
    }

    /// `g P g⁻¹`.
    pub fn conjugate_subgroup(&self, g: Elem, p: &Subgroup) -> Subgroup {
        let mut elements: Vec<Elem> = p.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn subgroup_conjugacy_classes(&self) -> Vec<SubgroupClass> {
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let mut seen: HashSet<Subgroup> = HashSet::new();
        for p in self.all_subgroups() {
            if seen.contains(&p) {
                continue;
            }
            let orbit: BTreeSet<Subgroup> = (0..self.order)
                .map(|g| self.conjugate_subgroup(g, &p))
                .collect();
            seen.extend(orbit.iter().cloned());
            classes.push(SubgroupClass {
                representative: p,
                orbit: orbit.into_iter().collect(),
            });
        }
        classes
    }

    pub fn normalizer(&self, p: &Subgroup) -> Subgroup {
        let elements = (0..self.order)
            .filter(|&g| self.conjugate_subgroup(g, p) == *p)
            .collect();
        Subgroup { elements }
    }

    pub fn centralizer(&self, a: Elem) -> Subgroup {
        Subgroup {
            elements: (0..self.order).filter(|&g| self.commute(g, a)).collect(),
        }
    }

    /// Conjugacy classes in order of their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let class: BTreeSet<Elem> = (0..self.order).map(|g| self.conj(g, x)).collect();
            for &y in &class {
                seen[y] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    /// Double cosets `PxQ`, each with its least element as representative.
    pub fn double_cosets(&self, p: &Subgroup, q: &Subgroup) -> Vec<(Elem, Vec<Elem>)> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut coset = BTreeSet::new();
            for &a in &p.elements {
                let ax = self.mul(a, x);
                for &b in &q.elements {
                    coset.insert(self.mul(ax, b));
                }
            }
            for &y in &coset {
                seen[y] = true;
            }
            out.push((x, coset.into_iter().collect()));
        }
        out
    }

    pub fn right_cosets(&self, q: &Subgroup) -> RightTransversal {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &h in &q.elements {
                coset_of[self.mul(h, g)] = reps.len();
            }
            reps.push(g);
        }
        RightTransversal {
            subgroup: q.clone(),
            reps,
            coset_of,
        }
    }

    /// Least representatives of the right cosets `Qg`, identity first.
    pub fn right_transversal(&self, q: &Subgroup) -> Vec<Elem> {
        self.right_cosets(q).reps
    }

    pub fn commuting_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                if self.commute(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn commuting_pair_classes(&self) -> Vec<CommutingPairClass> {
        let n = self.order;
        let mut seen = vec![false; n * n];
        let mut out = Vec::new();
        for (a, b) in self.commuting_pairs() {
            if seen[a * n + b] {
                continue;
            }
            let orbit: BTreeSet<(Elem, Elem)> =
                (0..n).map(|g| (self.conj(g, a), self.conj(g, b))).collect();
            for &(x, y) in &orbit {
                seen[x * n + y] = true;
            }
            out.push(CommutingPairClass {
                representative: (a, b),
                orbit: orbit.into_iter().collect(),
            });
        }
        out
    }

    /// The subgroup as a group in its own right; local index `i` is `p.elements()[i]`.
    pub fn subgroup_as_group(&self, p: &Subgroup) -> FiniteGroup {
        let m = p.order();
        let mut flat = vec![0; m * m];
        for (i, &a) in p.elements.iter().enumerate() {
            for (j, &b) in p.elements.iter().enumerate() {
                flat[i * m + j] = p.local_index(self.mul(a, b)).expect("subgroup is closed");
            }
        }
        let rows = flat.chunks(m).map(|r| r.to_vec()).collect();
        let name = format!("{}{}", self.name, p);
        Self::from_flat(name, m, flat, GroupSource::Cayley(rows))
    }

    /// Renames the group, keeping everything else.
    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

fn permutation_closure(
    degree: usize,
    generators: &[Vec<usize>],
    max_order: usize,
) -> Result<Vec<Vec<usize>>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut perms = vec![id.clone()];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id]);
    let mut i = 0;
    while i < perms.len() {
        for s in generators {
            let p: Vec<usize> = (0..degree).map(|x| s[perms[i][x]]).collect();
            if seen.insert(p.clone()) {
                if perms.len() == max_order {
                    return Err(Error::ClosureTooLarge(max_order));
                }
                perms.push(p);
            }
        }
        i += 1;
    }
    Ok(perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(3, vec![vec![1, 0, 2], vec![1, 2, 0]], "S3")
            .unwrap()
    }

    fn v4() -> FiniteGroup {
        let t = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        FiniteGroup::from_cayley_table(t, "V4").unwrap()
    }

    // Oracle: brute-force every subset and keep the closed ones.
    fn subgroup_count_by_subsets(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|mask| {
                let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                set.contains(&0)
                    && set
                        .iter()
                        .all(|&a| set.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1))
            })
            .count()
    }

    // Oracle: Burnside's lemma on the conjugation action on commuting pairs.
    fn commuting_class_count_by_burnside(g: &FiniteGroup) -> usize {
        let pairs = g.commuting_pairs();
        let fixed: usize = (0..g.order())
            .map(|x| {
                pairs
                    .iter()
                    .filter(|&&(a, b)| g.conj(x, a) == a && g.conj(x, b) == b)
                    .count()
            })
            .sum();
        fixed / g.order()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_cayley_table(vec![vec![0]], "1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.all_subgroups().len(), 1);
    }

    #[test]
    fn cyclic_four() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.inv(1), 3);
        let p = FiniteGroup::from_permutation_generators(4, vec![vec![1, 2, 3, 0]], "Z4").unwrap();
        assert_eq!(p.order(), 4);
    }

    #[test]
    fn rejects_non_associative() {
        // Latin square with identity 0 that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_cayley_table(t, "bad"),
            Err(Error::NotAGroup(_))
        ));
        let t = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_cayley_table(t, "bad").is_err());
    }

    #[test]
    fn identity_is_relabeled() {
        // Z/3 with identity stored at label 2.
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_cayley_table(t, "Z3").unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 2);
    }

    #[test]
    fn permutation_groups() {
        assert_eq!(s3().order(), 6);
        let g = FiniteGroup::from_permutation_generators(2, vec![], "1").unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(v4().all_subgroups().len(), 5);
        assert_eq!(s3().all_subgroups().len(), 6);
        assert_eq!(subgroup_count_by_subsets(&v4()), 5);
        assert_eq!(subgroup_count_by_subsets(&s3()), 6);
        let d4 = FiniteGroup::from_permutation_generators(
            4,
            vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
            "D4",
        )
        .unwrap();
        assert_eq!(d4.all_subgroups().len(), subgroup_count_by_subsets(&d4));
    }

    #[test]
    fn subgroup_classes() {
        assert_eq!(v4().subgroup_conjugacy_classes().len(), 5);
        let cls = s3().subgroup_conjugacy_classes();
        assert_eq!(cls.len(), 4);
        assert_eq!(
            cls.iter().map(|c| c.orbit.len()).collect::<Vec<_>>(),
            vec![1, 3, 1, 1]
        );
    }

    #[test]
    fn cosets_and_transversals() {
        let g = s3();
        let a3 = g
            .subgroup(
                &g.all_subgroups()
                    .iter()
                    .find(|p| p.order() == 3)
                    .unwrap()
                    .elements,
            )
            .unwrap();
        assert_eq!(g.double_cosets(&a3, &a3).len(), 2);
        assert_eq!(g.double_cosets(&g.whole(), &g.whole()).len(), 1);
        let one = g.trivial_subgroup();
        assert_eq!(g.double_cosets(&one, &one).len(), 6);
        let t = g.right_transversal(&a3);
        assert_eq!(t.len(), 2);
        assert_eq!(t[0], 0);
        assert_eq!(g.right_transversal(&g.whole()), vec![0]);
        assert_eq!(g.right_transversal(&one), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn commuting_classes() {
        assert_eq!(FiniteGroup::cyclic(5).commuting_pair_classes().len(), 25);
        assert_eq!(v4().commuting_pair_classes().len(), 16);
        assert_eq!(s3().commuting_pair_classes().len(), 8);
        assert_eq!(commuting_class_count_by_burnside(&s3()), 8);
    }

    #[test]
    fn subgroup_as_group_keeps_structure() {
        let g = s3();
        for p in g.all_subgroups() {
            let h = g.subgroup_as_group(&p);
            assert_eq!(h.order(), p.order());
            for i in 0..h.order() {
                for j in 0..h.order() {
                    assert_eq!(
                        p.elements()[h.mul(i, j)],
                        g.mul(p.elements()[i], p.elements()[j])
                    );
                }
            }
        }
    }

    #[test]
    fn abelian_invariants_of_small_groups() {
        assert_eq!(v4().abelian_invariants(), Some(vec![2, 2]));
        assert_eq!(FiniteGroup::cyclic(6).abelian_invariants(), Some(vec![6]));
        assert_eq!(FiniteGroup::cyclic(8).abelian_invariants(), Some(vec![8]));
        assert_eq!(FiniteGroup::trivial().abelian_invariants(), Some(vec![]));
        assert_eq!(s3().abelian_invariants(), None);
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        let t = (0..8)
            .map(|i: usize| {
                (0..8)
                    .map(|j: usize| z2.mul(i / 4, j / 4) * 4 + z4.mul(i % 4, j % 4))
                    .collect()
            })
            .collect();
        let g = FiniteGroup::from_cayley_table(t, "Z2xZ4").unwrap();
        assert_eq!(g.abelian_invariants(), Some(vec![2, 4]));
    }
}
