//! Length functions on groups and on duals (sets of irreducible classes),
//! averaging over finite automorphism sets, and the weighted length on
//! direct sums of finite groups.

mod affording;
mod growth;
mod rd;

pub use affording::{affording_family_check, build_affording_family, AffordingFamily, AffordingReport};
pub use growth::{dual_growth, group_growth, twist_dual_growth, GrowthProfile};
pub use rd::{
    ball_classes, cauchy_schwarz_bound, rd_ball_ratio, rd_ratio, rd_shell_ratio, shell_classes, theta_ball_check, RdBracket,
    ThetaBallCheck,
};

use crate::fusion::FusionTable;
use crate::group::{direct_sum_id, EnumerableGroup, FiniteGroup, GroupLaw};
use crate::mackey::SemidirectClassification;
use crate::rep::{identify, IrrClass};
use crate::{Error, Result};
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

pub type Length = Ratio<i64>;

type LengthFn<E> = dyn Fn(&E) -> Length + Send + Sync;

/// A length function on a group, evaluated on demand.
pub struct GroupLength<E> {
    f: Arc<LengthFn<E>>,
}

impl<E> Clone for GroupLength<E> {
    fn clone(&self) -> Self {
        GroupLength { f: self.f.clone() }
    }
}

impl<E: 'static> GroupLength<E> {
    pub fn from_fn(f: impl Fn(&E) -> Length + Send + Sync + 'static) -> Self {
        GroupLength { f: Arc::new(f) }
    }

    pub fn value(&self, e: &E) -> Length {
        (self.f)(e)
    }

    /// Word length of an enumerable group.
    pub fn word<D: EnumerableGroup<Elem = E> + 'static>(group: Arc<D>) -> Self {
        Self::from_fn(move |e| Length::from_integer(group.word_length(e) as i64))
    }

    /// `(1/n) Σᵢ lᵢ`
    pub fn mean(ls: &[GroupLength<E>]) -> Self {
        let ls = ls.to_vec();
        let n = ls.len() as i64;
        Self::from_fn(move |e| ls.iter().map(|l| l.value(e)).sum::<Length>() / n)
    }
}

impl GroupLength<usize> {
    /// Word length of a finite group for a generating set (inverses added).
    pub fn finite_word(group: Arc<FiniteGroup>, generators: &[usize]) -> Result<Self> {
        let metric = crate::group::FiniteWordMetric::new(group, generators)?;
        let d: Vec<Length> = metric
            .distances()
            .iter()
            .map(|&x| Length::from_integer(x as i64))
            .collect();
        Ok(Self::from_fn(move |e| d[*e]))
    }

    /// `l_Θ(γ) = (1/|Θ|) Σ_θ l(θ(γ))` for a set of automorphisms given as
    /// permutations; the set must be closed under composition.
    pub fn average_over(&self, perms: &[Vec<usize>]) -> Result<Self> {
        check_closed(perms)?;
        let n = perms.first().map_or(0, |p| p.len());
        let table: Vec<Length> = (0..n)
            .map(|g| perms.iter().map(|p| self.value(&p[g])).sum::<Length>() / perms.len() as i64)
            .collect();
        Ok(Self::from_fn(move |e| table[*e]))
    }
}

impl<E: Clone + Ord + Send + Sync + 'static> GroupLength<E> {
    /// Average over conjugation by a finite subgroup `Λ`:
    /// `l_Λ(γ) = (1/|Λ|) Σ_λ l(λ⁻¹ γ λ)`.
    pub fn average_by_conjugation<D: GroupLaw<Elem = E> + 'static>(
        &self,
        group: Arc<D>,
        lambda: &[E],
    ) -> Result<Self> {
        let set: BTreeSet<E> = lambda.iter().cloned().collect();
        if lambda.iter().any(|a| lambda.iter().any(|b| !set.contains(&group.mul(a, b)))) {
            return Err(Error::NotClosed);
        }
        let lambda = lambda.to_vec();
        let l = self.clone();
        let n = lambda.len() as i64;
        Ok(Self::from_fn(move |g| {
            lambda
                .iter()
                .map(|r| l.value(&group.mul(&group.inv(r), &group.mul(g, r))))
                .sum::<Length>()
                / n
        }))
    }
}

fn check_closed(perms: &[Vec<usize>]) -> Result<()> {
    let set: BTreeSet<&Vec<usize>> = perms.iter().collect();
    for a in perms {
        for b in perms {
            let c: Vec<usize> = b.iter().map(|&i| a[i]).collect();
            if !set.contains(&c) {
                return Err(Error::NotClosed);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LengthViolation {
    Identity,
    Symmetry(String),
    Subadditivity(String, String, String),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LengthReport {
    pub checked: usize,
    pub violations: Vec<LengthViolation>,
}

impl LengthReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `l(e) = 0`, `l(γ⁻¹) = l(γ)` and `l(γμ) ≤ l(γ) + l(μ)` over pairs from `scope`.
pub fn check_group_length<D: GroupLaw>(group: &D, l: &GroupLength<D::Elem>, scope: &[D::Elem]) -> LengthReport
where
    D::Elem: 'static,
{
    let mut r = LengthReport::default();
    if !l.value(&group.identity()).is_zero() {
        r.violations.push(LengthViolation::Identity);
    }
    for a in scope {
        r.checked += 1;
        let la = l.value(a);
        if la < Length::zero() || l.value(&group.inv(a)) != la {
            r.violations.push(LengthViolation::Symmetry(group.describe(a)));
        }
        for b in scope {
            r.checked += 1;
            let ab = group.mul(a, b);
            if l.value(&ab) > la + l.value(b) {
                r.violations.push(LengthViolation::Subadditivity(
                    group.describe(a),
                    group.describe(b),
                    group.describe(&ab),
                ));
            }
        }
    }
    r
}

/// A length function on a set of irreducible classes, indexed by class id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualLength(pub Vec<Length>);

/// An integer, or `"p/q"` when the value is not integral.
pub fn length_json(l: Length) -> serde_json::Value {
    if l.is_integer() {
        serde_json::json!(l.to_integer())
    } else {
        serde_json::json!(format!("{}/{}", l.numer(), l.denom()))
    }
}

impl Serialize for DualLength {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&l| length_json(l)))
    }
}

impl DualLength {
    pub fn zero(n: usize) -> Self {
        DualLength(vec![Length::zero(); n])
    }

    pub fn from_integers(values: &[i64]) -> Self {
        DualLength(values.iter().map(|&v| Length::from_integer(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, x: usize) -> Length {
        self.0[x]
    }

    /// `l ∘ π` for a permutation `π` of the classes.
    pub fn pullback(&self, perm: &[usize]) -> Self {
        DualLength(perm.iter().map(|&y| self.0[y]).collect())
    }

    pub fn mean(ls: &[DualLength]) -> Self {
        let n = ls[0].len();
        DualLength(
            (0..n)
                .map(|x| ls.iter().map(|l| l.0[x]).sum::<Length>() / ls.len() as i64)
                .collect(),
        )
    }

    /// `l_Θ = (1/|Θ|) Σ_θ l ∘ θ_*` for permutations closed under composition.
    pub fn average_over(&self, perms: &[Vec<usize>]) -> Result<Self> {
        check_closed(perms)?;
        let pulled: Vec<DualLength> = perms.iter().map(|p| self.pullback(p)).collect();
        Ok(Self::mean(&pulled))
    }
}

/// `l(ε) = 0`, `l(x̄) = l(x)` and `l(z) ≤ l(x) + l(y)` whenever `N_{xy}^z ≠ 0`.
pub fn check_dual_length(l: &DualLength, table: &FusionTable) -> LengthReport {
    let mut r = LengthReport::default();
    if !l.get(table.unit()).is_zero() {
        r.violations.push(LengthViolation::Identity);
    }
    for x in 0..table.len() {
        r.checked += 1;
        if l.get(x) < Length::zero() || l.get(table.conj(x)) != l.get(x) {
            r.violations.push(LengthViolation::Symmetry(x.to_string()));
        }
    }
    for (x, y, z) in table.support() {
        r.checked += 1;
        if l.get(z) > l.get(x) + l.get(y) {
            r.violations
                .push(LengthViolation::Subadditivity(x.to_string(), y.to_string(), z.to_string()));
        }
    }
    r
}

/// Whether `l` is constant on the orbits of the given permutations.
pub fn invariance_check(l: &DualLength, perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| (0..l.len()).all(|x| l.get(p[x]) == l.get(x)))
}

/// The permutation `[u] ↦ [u ∘ φ]` of `Irr(G)` for an automorphism `φ`.
pub fn irr_pullback_perm(irr: &[IrrClass], aut: &[usize]) -> Result<Vec<usize>> {
    irr.iter()
        .map(|c| {
            let chi: Vec<_> = aut.iter().map(|&g| c.character[g]).collect();
            identify(irr, &chi).ok_or_else(|| Error::ClassNotFound("pulled-back character".into()))
        })
        .collect()
}

/// `l([(u, V, v)]) = l_Ĝ([u])` on `Irr(G ⋊ Λ)`, for a `Λ`-invariant `l_Ĝ`.
pub fn dual_length_semidirect(cls: &SemidirectClassification, l_g: &DualLength) -> Result<DualLength> {
    if l_g.len() != cls.g_irreps().len() {
        return Err(Error::InvalidTable("dual length has the wrong number of classes".into()));
    }
    if !invariance_check(l_g, cls.lambda_permutations()) {
        return Err(Error::NotInvariant("l_Ĝ is not constant on Λ-orbits of Irr(G)".into()));
    }
    Ok(DualLength(cls.classes().iter().map(|c| l_g.get(c.orbit_rep)).collect()))
}

/// `Σᵢ |aᵢ|` on the characters `χ_a` of `⊕ ℤ/nᵢ`, where `|a| = min(a, n − a)`.
pub fn coordinate_dual_length(irr: &[IrrClass], orders: &[usize]) -> Result<DualLength> {
    let values = irr
        .iter()
        .map(|c| {
            if c.rep.dim() != 1 {
                return Err(Error::Unsupported("coordinate length needs an abelian group".into()));
            }
            let mut total = 0i64;
            for (i, &n) in orders.iter().enumerate() {
                let mut unit = vec![0; orders.len()];
                unit[i] = 1;
                let z = c.character[direct_sum_id(orders, &unit)];
                let turns = z.arg() / std::f64::consts::TAU * n as f64;
                let a = (turns.round() as i64).rem_euclid(n as i64);
                total += a.min(n as i64 - a);
            }
            Ok(Length::from_integer(total))
        })
        .collect::<Result<_>>()?;
    Ok(DualLength(values))
}

/// Word length on a fusion table: the least `n` with `x ⊂ s₁ ⊗ … ⊗ sₙ`,
/// `sᵢ` from the generating set closed under conjugation.
pub fn dual_word_length(table: &FusionTable, generators: &[usize]) -> Result<DualLength> {
    let mut gens: BTreeSet<usize> = generators.iter().flat_map(|&s| [s, table.conj(s)]).collect();
    gens.remove(&table.unit());
    let n = table.len();
    let mut dist = vec![usize::MAX; n];
    dist[table.unit()] = 0;
    let mut queue = VecDeque::from([table.unit()]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            for z in 0..n {
                if dist[z] == usize::MAX && table.get(x, s, z) > 0 {
                    dist[z] = dist[x] + 1;
                    queue.push_back(z);
                }
            }
        }
    }
    if dist.contains(&usize::MAX) {
        return Err(Error::NotSubgroup(format!("classes {generators:?} do not generate the fusion ring")));
    }
    Ok(DualLength(dist.into_iter().map(|d| Length::from_integer(d as i64)).collect()))
}

/// Least prefix of `1, 2, …` (with conjugates) generating the fusion ring.
pub fn generating_classes(table: &FusionTable) -> Vec<usize> {
    let mut gens = Vec::new();
    for x in (0..table.len()).filter(|&x| x != table.unit()) {
        gens.push(x);
        if dual_word_length(table, &gens).is_ok() {
            break;
        }
    }
    gens
}

/// `l(ξ) = Σ_{ξᵢ ≠ eᵢ} Mᵢ` on `⊕ Ξᵢ` with `M_k = N₁ ⋯ N_k`, `Nᵢ = |Ξᵢ|`.
/// The factor orders repeat cyclically, so finitely many describe an
/// infinite sum.
#[derive(Clone, Debug)]
pub struct DirectSumLength {
    orders: Vec<u64>,
}

impl DirectSumLength {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&n| n < 2) {
            return Err(Error::Unsupported("direct-sum factors must be nontrivial".into()));
        }
        Ok(DirectSumLength { orders })
    }

    /// `|Ξᵢ|` for `i ≥ 1`.
    pub fn order(&self, i: usize) -> u64 {
        self.orders[(i - 1) % self.orders.len()]
    }

    /// `M_k` for `k ≥ 1`, or `None` on overflow.
    pub fn weight(&self, k: usize) -> Option<u64> {
        (1..=k).try_fold(1u64, |acc, i| acc.checked_mul(self.order(i)))
    }

    /// Length of the element whose non-identity coordinates are `support` (1-based).
    pub fn value(&self, support: &[usize]) -> u64 {
        let set: BTreeSet<usize> = support.iter().copied().collect();
        set.iter().map(|&i| self.weight(i).expect("weight overflow")).sum()
    }

    /// Factors that can appear in an element of length `< n`.
    pub fn active_factors(&self, n: u64) -> usize {
        (1..).take_while(|&i| self.weight(i).is_some_and(|m| m < n)).count()
    }

    /// `#{ξ : l(ξ) < n}`, exactly, by counting subsets of active factors.
    pub fn count_below(&self, n: u64) -> u128 {
        if n == 0 {
            return 0;
        }
        let limit = n as usize;
        // ways[v] = number of elements of length exactly v
        let mut ways = vec![0u128; limit];
        ways[0] = 1;
        for i in 1..=self.active_factors(n) {
            let m = self.weight(i).expect("active weight") as usize;
            let choices = (self.order(i) - 1) as u128;
            for v in (m..limit).rev() {
                ways[v] += ways[v - m] * choices;
            }
        }
        ways.iter().sum()
    }

    /// Number of elements with `k ≤ l < k + 1` for `k ≤ kmax`.
    pub fn shells(&self, kmax: usize) -> Vec<u128> {
        (0..=kmax as u64)
            .map(|k| self.count_below(k + 1) - self.count_below(k))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric, FreeProduct};
    use crate::instances::cyclic_by_cyclic;
    use crate::mackey::classify_semidirect;
    use proptest::prelude::*;

    fn q(n: i64) -> Length {
        Length::from_integer(n)
    }

    #[test]
    fn free_product_word_length_is_a_length() {
        let fp = Arc::new(FreeProduct::new(vec![2, 3]).unwrap());
        let l = GroupLength::word(fp.clone());
        let ball = fp.ball(4).unwrap();
        assert!(check_group_length(fp.as_ref(), &l, &ball).is_clean());
        let zero: GroupLength<_> = GroupLength::from_fn(|_| Length::zero());
        assert!(check_group_length(fp.as_ref(), &zero, &ball).is_clean());
    }

    #[test]
    fn asymmetric_length_is_reported() {
        let z3 = Arc::new(cyclic(3));
        let l = GroupLength::from_fn(|g: &usize| q([0, 1, 2][*g]));
        let r = check_group_length(z3.as_ref(), &l, &[0, 1, 2]);
        assert!(r.violations.contains(&LengthViolation::Symmetry("1".into())) || !r.is_clean());
    }

    #[test]
    fn averaging_two_points() {
        let l = GroupLength::from_fn(|g: &usize| q([0, 1, 3][*g]));
        let inversion = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let avg = l.average_over(&inversion).unwrap();
        assert_eq!((avg.value(&1), avg.value(&2)), (q(2), q(2)));
        let same = l.average_over(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(same.value(&2), q(3));
        assert!(matches!(l.average_over(&[vec![0, 2, 1]]), Err(Error::NotClosed)));
    }

    #[test]
    fn s3_word_length_averaged_by_conjugation() {
        let s3 = Arc::new(symmetric(3).unwrap());
        // generators (12) and (13)
        let l = GroupLength::finite_word(s3.clone(), &[2, 5]).unwrap();
        let avg = l.average_by_conjugation(s3.clone(), &[0, 2]).unwrap();
        let values: Vec<Length> = (0..6).map(|g| avg.value(&g)).collect();
        assert_eq!(values, vec![q(0), q(2), q(1), q(2), q(2), q(2)]);
        for g in 0..6 {
            assert_eq!(avg.value(&s3.conjugate(2, g)), avg.value(&g));
        }
        let all: Vec<usize> = (0..6).collect();
        assert!(check_group_length(s3.as_ref(), &avg, &all).is_clean());
        assert!(matches!(
            l.average_by_conjugation(s3.clone(), &[0, 3]),
            Err(Error::NotClosed)
        ));
    }

    #[test]
    fn invariance_under_inversion_of_z3() {
        let z3 = Arc::new(cyclic(3));
        let irr = crate::rep::irreps(&z3, 0).unwrap();
        let perm = irr_pullback_perm(&irr, &[0, 2, 1]).unwrap();
        assert_eq!(perm, vec![0, 2, 1]);
        assert!(!invariance_check(&DualLength::from_integers(&[0, 1, 2]), std::slice::from_ref(&perm)));
        let avg = DualLength::from_integers(&[0, 1, 2])
            .average_over(&[vec![0, 1, 2], perm.clone()])
            .unwrap();
        assert!(invariance_check(&avg, &[perm]));
        // inner automorphisms fix every class
        let s3 = Arc::new(symmetric(3).unwrap());
        let irr = crate::rep::irreps(&s3, 0).unwrap();
        for h in 0..6 {
            let inner: Vec<usize> = (0..6).map(|g| s3.conjugate(h, g)).collect();
            assert_eq!(irr_pullback_perm(&irr, &inner).unwrap(), vec![0, 1, 2]);
        }
    }

    #[test]
    fn semidirect_dual_length() {
        let p = Arc::new(cyclic_by_cyclic(3, 2, 2).unwrap());
        let cls = classify_semidirect(&p, 1).unwrap();
        let l = dual_length_semidirect(&cls, &DualLength::from_integers(&[0, 1, 1])).unwrap();
        assert_eq!(l, DualLength::from_integers(&[0, 0, 1]));
        let zero = dual_length_semidirect(&cls, &DualLength::zero(3)).unwrap();
        assert_eq!(zero, DualLength::zero(3));
        let table = crate::mackey::semidirect_fusion_table(&cls).unwrap();
        assert!(check_dual_length(&l, &table).is_clean());
        assert!(matches!(
            dual_length_semidirect(&cls, &DualLength::from_integers(&[0, 1, 2])),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn coordinate_length_on_z3_squared() {
        let g = Arc::new(crate::group::direct_sum(&[cyclic(3), cyclic(3)]));
        let irr = crate::rep::irreps(&g, 0).unwrap();
        let l = coordinate_dual_length(&irr, &[3, 3]).unwrap();
        let mut sorted: Vec<i64> = l.0.iter().map(|v| v.to_integer()).collect();
        assert_eq!(l.get(0), Length::zero());
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 1, 1, 1, 2, 2, 2, 2]);
        // invariant under swapping the coordinates
        let swap: Vec<usize> = (0..9).map(|x| (x % 3) * 3 + x / 3).collect();
        assert!(invariance_check(&l, &[irr_pullback_perm(&irr, &swap).unwrap()]));
    }

    #[test]
    fn dual_word_length_on_s3() {
        let p = Arc::new(cyclic_by_cyclic(3, 2, 2).unwrap());
        let cls = classify_semidirect(&p, 1).unwrap();
        let table = crate::mackey::semidirect_fusion_table(&cls).unwrap();
        let gens = generating_classes(&table);
        assert_eq!(gens, vec![1, 2]);
        let l = dual_word_length(&table, &[2]).unwrap();
        assert_eq!(l, DualLength::from_integers(&[0, 2, 1]));
        assert!(check_dual_length(&l, &table).is_clean());
        assert!(dual_word_length(&table, &[1]).is_err());
        let mut bad = l.clone();
        bad.0[1] = q(3);
        assert!(!check_dual_length(&bad, &table).is_clean());
    }

    #[test]
    fn direct_sum_weights() {
        let z2 = DirectSumLength::new(vec![2]).unwrap();
        assert_eq!(z2.value(&[]), 0);
        assert_eq!(z2.value(&[1, 3]), 10);
        assert_eq!(z2.weight(1), Some(2));
        assert_eq!(z2.weight(3), Some(8));
        // lengths of Z/2 elements are distinct even numbers
        assert_eq!(z2.count_below(1), 1);
        assert_eq!(z2.count_below(3), 2);
        assert_eq!(z2.count_below(16), 8);
        assert_eq!(z2.shells(3), vec![1, 0, 1, 0]);
        // M₁ = 3, M₂ = 6, M₃ = 18 for orders 3, 2, 3
        let mixed = DirectSumLength::new(vec![3, 2]).unwrap();
        assert_eq!(mixed.weight(3), Some(18));
        assert!(DirectSumLength::new(vec![1]).is_err());
    }

    fn brute_count(l: &DirectSumLength, n: u64) -> u128 {
        // enumerate all elements on the active factors
        let m = l.active_factors(n);
        let orders: Vec<u64> = (1..=m).map(|i| l.order(i)).collect();
        let mut count = 0;
        let mut coords = vec![0u64; m];
        loop {
            let support: Vec<usize> = (0..m).filter(|&i| coords[i] != 0).map(|i| i + 1).collect();
            if l.value(&support) < n {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return count;
                }
                coords[i] += 1;
                if coords[i] < orders[i] {
                    break;
                }
                coords[i] = 0;
                i += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn count_below_matches_enumeration(orders in prop::collection::vec(2u64..5, 1..3), n in 0u64..200) {
            let l = DirectSumLength::new(orders).unwrap();
            prop_assert_eq!(l.count_below(n), brute_count(&l, n));
        }

        #[test]
        fn direct_sum_length_is_subadditive(a in prop::collection::btree_set(1usize..8, 0..5), b in prop::collection::btree_set(1usize..8, 0..5)) {
            // the product of two Z/2-vectors has support a Δ b
            let l = DirectSumLength::new(vec![2]).unwrap();
            let sum: Vec<usize> = a.symmetric_difference(&b).copied().collect();
            let av: Vec<usize> = a.iter().copied().collect();
            let bv: Vec<usize> = b.iter().copied().collect();
            prop_assert!(l.value(&sum) <= l.value(&av) + l.value(&bv));
        }

        #[test]
        fn averaged_dual_length_is_invariant(values in prop::collection::vec(0i64..10, 3)) {
            let mut v = values;
            v[0] = 0;
            let perms = vec![vec![0, 1, 2], vec![0, 2, 1]];
            let avg = DualLength::from_integers(&v).average_over(&perms).unwrap();
            prop_assert!(invariance_check(&avg, &perms));
        }
    }
}
