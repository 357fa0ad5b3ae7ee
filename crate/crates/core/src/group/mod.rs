//! Finite groups by multiplication table, subgroups, and the group-law trait
//! shared with lazily enumerated groups.

mod action;
mod build;
mod free;
mod hom;

pub use action::{orbit, ActionOnSet, Orbit, Side, DEFAULT_ORBIT_BOUND};
pub use build::{
    build_finite, build_group, cycle_notation, cyclic, dihedral, direct_sum, direct_sum_coords,
    direct_sum_id, quaternion, semidirect_product, symmetric, trivial_group, BuiltGroup,
    GroupDescriptor, SemidirectProduct,
};
pub use free::{FreeProduct, Syllable, Word};
pub use hom::{automorphisms, cyclic_shift_embedding, AutAction, GroupHom};

use crate::{Error, Result};
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

/// Multiplication, inversion and identity for a group whose elements are values of `Elem`.
pub trait GroupLaw: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn describe(&self, a: &Self::Elem) -> String;
    /// A generating set, used for invariance checks.
    fn generators(&self) -> Vec<Self::Elem>;
    /// All elements when the group is finite.
    fn finite_elements(&self) -> Option<Vec<Self::Elem>>;
}

/// A group with a word metric and enumerable balls.
pub trait EnumerableGroup: GroupLaw {
    fn word_length(&self, a: &Self::Elem) -> usize;
    /// All elements of word length at most `radius`, sorted.
    fn ball(&self, radius: usize) -> Result<Vec<Self::Elem>>;
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Build and audit a group from its table, `table[a][b] = a*b`.
    ///
    /// Element 0 must be the identity.
    pub fn from_table(
        label: impl Into<String>,
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {a} has length {}", row.len())));
            }
            for &c in row {
                if c >= n {
                    return Err(Error::InvalidTable(format!("entry {c} out of range in row {a}")));
                }
                flat.push(c);
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(Error::InvalidTable(format!(
                    "{} names for {n} elements",
                    v.len()
                )))
            }
            None => (0..n).map(|i| if i == 0 { "e".into() } else { format!("g{i}") }).collect(),
        };
        let g = Self::from_flat(label.into(), n, flat, names)?;
        g.audit()?;
        Ok(g)
    }

    pub(crate) fn from_flat(
        label: String,
        order: usize,
        table: Vec<usize>,
        names: Vec<String>,
    ) -> Result<Self> {
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b;
                    break;
                }
            }
            if inverse[a] == usize::MAX {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        Ok(FiniteGroup {
            label,
            order,
            table,
            inverse,
            names,
        })
    }

    /// Full associativity, identity, inverse and Latin-square audit.
    pub fn audit(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidTable(format!("element 0 is not an identity for {a}")));
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.iter().chain(col.iter()).any(|&x| !x) {
                return Err(Error::InvalidTable(format!("row/column {a} is not a permutation")));
            }
            if self.mul(self.inverse[a], a) != 0 {
                return Err(Error::InvalidTable(format!("left inverse law fails at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `a b a⁻¹`
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements commuting with `g`.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order).filter(|&r| self.mul(g, r) == self.mul(r, g)).collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// A small generating set chosen greedily, preferring elements of large order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&a| {
                set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b)))
            })
    }

    /// Left cosets `gH` as sorted lists, ordered by their least element.
    pub fn left_cosets(&self, sub: &[usize]) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = sub.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            for &c in &coset {
                assigned[c] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Partition into conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut out = Vec::new();
        for g in 0..self.order {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|a| self.conjugate(a, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c] = true;
            }
            out.push(class);
        }
        out
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }
}

impl GroupLaw for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::mul(self, *a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        FiniteGroup::inv(self, *a)
    }
    fn describe(&self, a: &usize) -> String {
        self.names[*a].clone()
    }
    fn generators(&self) -> Vec<usize> {
        self.generating_set()
    }
    fn finite_elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order).collect())
    }
}

/// A subgroup of a finite group, carried with its own local table.
///
/// Local id `i` corresponds to parent id `elements[i]`; the parent ids are
/// sorted so local id 0 is the identity.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    position: Vec<usize>,
    local: Arc<FiniteGroup>,
}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, elements: &[usize]) -> Result<Self> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&e| e >= parent.order()) || !parent.is_subgroup(&elems) {
            return Err(Error::NotSubgroup(format!(
                "{elems:?} in {}",
                parent.label()
            )));
        }
        let mut position = vec![usize::MAX; parent.order()];
        for (i, &e) in elems.iter().enumerate() {
            position[e] = i;
        }
        let m = elems.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &elems {
            for &b in &elems {
                table.push(position[parent.mul(a, b)]);
            }
        }
        let names = elems.iter().map(|&e| parent.name(e).to_string()).collect();
        let local = FiniteGroup::from_flat(
            format!("subgroup of {}", parent.label()),
            m,
            table,
            names,
        )?;
        Ok(Subgroup {
            parent,
            elements: elems,
            position,
            local: Arc::new(local),
        })
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let all: Vec<usize> = parent.elements().collect();
        Subgroup::new(parent, &all).expect("whole group is a subgroup")
    }

    pub fn generated_by(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let elems = parent.generated(gens);
        Subgroup::new(parent, &elems).expect("generated set is a subgroup")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn local(&self) -> &Arc<FiniteGroup> {
        &self.local
    }

    pub fn contains(&self, g: usize) -> bool {
        self.position.get(g).is_some_and(|&p| p != usize::MAX)
    }

    /// Local id of a parent element, if it lies in the subgroup.
    pub fn local_id(&self, g: usize) -> Option<usize> {
        match self.position.get(g) {
            Some(&p) if p != usize::MAX => Some(p),
            _ => None,
        }
    }

    pub fn parent_id(&self, local: usize) -> usize {
        self.elements[local]
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Least element of each left coset `gH`, in increasing order.
    pub fn left_coset_reps(&self) -> Vec<usize> {
        self.parent
            .left_cosets(&self.elements)
            .into_iter()
            .map(|c| c[0])
            .collect()
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        let elems: Vec<usize> = self
            .elements
            .iter()
            .copied()
            .filter(|&g| other.contains(g))
            .collect();
        Subgroup::new(self.parent.clone(), &elems)
    }

    /// `r H r⁻¹`
    pub fn conjugated(&self, r: usize) -> Subgroup {
        let elems: Vec<usize> = self
            .elements
            .iter()
            .map(|&h| self.parent.conjugate(r, h))
            .collect();
        Subgroup::new(self.parent.clone(), &elems).expect("conjugate of a subgroup")
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }
}

/// Word metric on a finite group with respect to a symmetric generating set.
#[derive(Clone, Debug)]
pub struct FiniteWordMetric {
    group: Arc<FiniteGroup>,
    generators: Vec<usize>,
    distance: Vec<usize>,
}

impl FiniteWordMetric {
    /// Distances by breadth-first search; inverses of the generators are added.
    pub fn new(group: Arc<FiniteGroup>, generators: &[usize]) -> Result<Self> {
        let mut gens: Vec<usize> = generators
            .iter()
            .flat_map(|&s| [s, group.inv(s)])
            .filter(|&s| s != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let mut distance = vec![usize::MAX; group.order()];
        distance[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = group.mul(x, s);
                if distance[y] == usize::MAX {
                    distance[y] = distance[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if distance.contains(&usize::MAX) {
            return Err(Error::NotSubgroup(format!(
                "generators {generators:?} do not generate {}",
                group.label()
            )));
        }
        Ok(FiniteWordMetric {
            group,
            generators: gens,
            distance,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn distances(&self) -> &[usize] {
        &self.distance
    }
}

impl GroupLaw for FiniteWordMetric {
    type Elem = usize;
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.group.mul(*a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        self.group.inv(*a)
    }
    fn describe(&self, a: &usize) -> String {
        self.group.name(*a).to_string()
    }
    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }
    fn finite_elements(&self) -> Option<Vec<usize>> {
        Some(self.group.elements().collect())
    }
}

impl EnumerableGroup for FiniteWordMetric {
    fn word_length(&self, a: &usize) -> usize {
        self.distance[*a]
    }
    fn ball(&self, radius: usize) -> Result<Vec<usize>> {
        Ok((0..self.group.order())
            .filter(|&g| self.distance[g] <= radius)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centralizer_in_s3() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.centralizer(0), vec![0, 1, 2, 3, 4, 5]);
        let t12 = s3.names().iter().position(|n| n == "(12)").unwrap();
        let c: Vec<&str> = s3.centralizer(t12).iter().map(|&g| s3.name(g)).collect();
        assert_eq!(c, vec!["e", "(12)"]);
        let z6 = cyclic(6);
        assert_eq!(z6.centralizer(2).len(), 6);
    }

    #[test]
    fn rejects_non_associative_table() {
        // A Latin square with identity that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", t, None),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn subgroup_local_table_and_cosets() {
        let s3 = Arc::new(symmetric(3).unwrap());
        let t12 = s3.names().iter().position(|n| n == "(12)").unwrap();
        let h = Subgroup::generated_by(s3.clone(), &[t12]);
        assert_eq!(h.order(), 2);
        assert_eq!(h.local().mul(1, 1), 0);
        let reps = h.left_coset_reps();
        assert_eq!(reps.len(), 3);
        assert_eq!(reps[0], 0);
    }

    #[test]
    fn word_metric_on_cyclic() {
        let z5 = Arc::new(cyclic(5));
        let m = FiniteWordMetric::new(z5, &[1]).unwrap();
        assert_eq!(m.distances(), &[0, 1, 2, 2, 1]);
        assert_eq!(m.ball(1).unwrap(), vec![0, 1, 4]);
    }

    #[test]
    fn conjugacy_classes_of_s3() {
        let s3 = symmetric(3).unwrap();
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }
}
