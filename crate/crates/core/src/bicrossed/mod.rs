//! Matched pairs `(Γ, K)` of a discrete group and a finite group, their
//! β-orbits, and the twist construction `K = G ⋊ Λ` for a finite `Λ ≤ Γ`.

mod algebra;
mod classify;

pub use algebra::{
    ad_lambda_automorphisms, compatible_automorphisms, AutomorphismAudit, BlockElement, CorepAudit, DualAction,
    FiniteQuantumAlgebra, QgAutomorphism,
};
pub use classify::{
    classify_bicrossed, BicrossedClassification, BicrossedIrrClass, GammaRange, Isotype,
    IsotypeDescriptor, OrbitData,
};

use crate::group::{
    cyclic, semidirect_product, AutAction, FiniteGroup, FreeProduct, GroupLaw, SemidirectProduct,
    Subgroup, Word,
};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

const SUBGROUP_GUARD: usize = 100_000;

/// The two actions of a matched pair: `α` of `Γ` on the finite factor from
/// the left, `β` of the finite factor on `Γ` from the right.
pub trait MatchedActions<E>: Send + Sync {
    /// `α_γ(k)`
    fn alpha(&self, gamma: &E, k: usize) -> usize;
    /// `β_k(γ) = γ·k`
    fn beta(&self, gamma: &E, k: usize) -> E;
}

type TauFn<E> = dyn Fn(&E) -> Vec<usize> + Send + Sync;

/// Data of the twist: `τ: Γ → Aut(G)` and a finite subgroup `Λ ≤ Γ`.
pub struct Twist<E> {
    g: Arc<FiniteGroup>,
    lambda_elems: Vec<E>,
    lambda: Arc<FiniteGroup>,
    product: Arc<SemidirectProduct>,
    tau: Arc<TauFn<E>>,
    cache: Mutex<HashMap<E, Arc<Vec<usize>>>>,
}

impl<E: Clone + Ord + std::hash::Hash> Twist<E> {
    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    /// `Λ` as an abstract group; local id `i` stands for `lambda_elements()[i]`.
    pub fn lambda(&self) -> &Arc<FiniteGroup> {
        &self.lambda
    }

    pub fn lambda_elements(&self) -> &[E] {
        &self.lambda_elems
    }

    pub fn lambda_index(&self, e: &E) -> Option<usize> {
        self.lambda_elems.binary_search(e).ok()
    }

    /// `G ⋊ Λ`, the finite factor of the matched pair.
    pub fn product(&self) -> &Arc<SemidirectProduct> {
        &self.product
    }

    /// `τ_γ` as a permutation of `G`.
    pub fn tau(&self, gamma: &E) -> Arc<Vec<usize>> {
        if let Some(p) = self.cache.lock().unwrap().get(gamma) {
            return p.clone();
        }
        let p = Arc::new((self.tau)(gamma));
        self.cache.lock().unwrap().insert(gamma.clone(), p.clone());
        p
    }
}

impl<E> fmt::Debug for Twist<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Twist")
            .field("g", &self.g.label())
            .field("lambda_order", &self.lambda.order())
            .finish()
    }
}

/// `α(γ, (g, r)) = (τ_γ(g), r)` and `β_{(g,r)}(γ) = r⁻¹ γ r`.
struct TwistActions<D: GroupLaw> {
    gamma: Arc<D>,
    twist: Arc<Twist<D::Elem>>,
}

impl<D: GroupLaw> MatchedActions<D::Elem> for TwistActions<D> {
    fn alpha(&self, gamma: &D::Elem, k: usize) -> usize {
        let (g, r) = self.twist.product.decode(k);
        self.twist.product.encode(self.twist.tau(gamma)[g], r)
    }

    fn beta(&self, gamma: &D::Elem, k: usize) -> D::Elem {
        let (_, r) = self.twist.product.decode(k);
        let r = &self.twist.lambda_elems[r];
        self.gamma.mul(&self.gamma.inv(r), &self.gamma.mul(gamma, r))
    }
}

/// Actions given by explicit tables over a finite `Γ`:
/// `alpha[γ][k] = α_γ(k)`, `beta[γ][k] = β_k(γ)`.
#[derive(Clone, Debug)]
pub struct TableActions {
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
}

impl MatchedActions<usize> for TableActions {
    fn alpha(&self, gamma: &usize, k: usize) -> usize {
        self.alpha[*gamma][k]
    }

    fn beta(&self, gamma: &usize, k: usize) -> usize {
        self.beta[*gamma][k]
    }
}

pub struct MatchedPair<D: GroupLaw> {
    gamma: Arc<D>,
    compact: Arc<FiniteGroup>,
    actions: Arc<dyn MatchedActions<D::Elem>>,
    twist: Option<Arc<Twist<D::Elem>>>,
}

impl<D: GroupLaw> Clone for MatchedPair<D> {
    fn clone(&self) -> Self {
        MatchedPair {
            gamma: self.gamma.clone(),
            compact: self.compact.clone(),
            actions: self.actions.clone(),
            twist: self.twist.clone(),
        }
    }
}

impl<D: GroupLaw> fmt::Debug for MatchedPair<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatchedPair")
            .field("compact", &self.compact.label())
            .field("twist", &self.twist)
            .finish()
    }
}

impl MatchedPair<FiniteGroup> {
    /// Matched pair from explicit action tables (no validation beyond shape;
    /// see [`verify_matched_pair`]).
    pub fn from_tables(gamma: Arc<FiniteGroup>, compact: Arc<FiniteGroup>, actions: TableActions) -> Result<Self> {
        let shape_ok = |t: &Vec<Vec<usize>>, bound: usize| {
            t.len() == gamma.order()
                && t.iter().all(|row| row.len() == compact.order() && row.iter().all(|&x| x < bound))
        };
        if !shape_ok(&actions.alpha, compact.order()) || !shape_ok(&actions.beta, gamma.order()) {
            return Err(Error::InvalidTable("action tables have the wrong shape".into()));
        }
        Ok(MatchedPair {
            gamma,
            compact,
            actions: Arc::new(actions),
            twist: None,
        })
    }

    /// Both actions trivial: the dual of `Γ × K`.
    pub fn trivial(gamma: Arc<FiniteGroup>, compact: Arc<FiniteGroup>) -> Self {
        let alpha = vec![compact.elements().collect(); gamma.order()];
        let beta = gamma.elements().map(|g| vec![g; compact.order()]).collect();
        MatchedPair {
            gamma,
            compact,
            actions: Arc::new(TableActions { alpha, beta }),
            twist: None,
        }
    }

    /// Action tables, `(alpha[γ][k], beta[γ][k])`.
    pub fn tables(&self) -> TableActions {
        let alpha = self
            .gamma
            .elements()
            .map(|g| self.compact.elements().map(|k| self.alpha(&g, k)).collect())
            .collect();
        let beta = self
            .gamma
            .elements()
            .map(|g| self.compact.elements().map(|k| self.beta(&g, k)).collect())
            .collect();
        TableActions { alpha, beta }
    }
}

impl<D: GroupLaw> MatchedPair<D> {
    pub fn gamma(&self) -> &Arc<D> {
        &self.gamma
    }

    /// The finite factor `K`.
    pub fn compact(&self) -> &Arc<FiniteGroup> {
        &self.compact
    }

    pub fn twist(&self) -> Option<&Arc<Twist<D::Elem>>> {
        self.twist.as_ref()
    }

    #[inline]
    pub fn alpha(&self, gamma: &D::Elem, k: usize) -> usize {
        self.actions.alpha(gamma, k)
    }

    #[inline]
    pub fn beta(&self, gamma: &D::Elem, k: usize) -> D::Elem {
        self.actions.beta(gamma, k)
    }

    /// Whether `α` is trivial on the given points of `Γ`.
    pub fn alpha_is_trivial(&self, scope: &[D::Elem]) -> bool {
        scope
            .iter()
            .all(|g| self.compact.elements().all(|k| self.alpha(g, k) == k))
    }

    /// Whether `β` is trivial on the given points of `Γ`.
    pub fn beta_is_trivial(&self, scope: &[D::Elem]) -> bool {
        scope
            .iter()
            .all(|g| self.compact.elements().all(|k| &self.beta(g, k) == g))
    }
}

fn subgroup_closure<D: GroupLaw>(gamma: &D, gens: &[D::Elem]) -> Result<Vec<D::Elem>> {
    let mut seen: BTreeSet<D::Elem> = BTreeSet::new();
    seen.insert(gamma.identity());
    let mut frontier = vec![gamma.identity()];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = gamma.mul(&x, s);
            if seen.insert(y.clone()) {
                if seen.len() > SUBGROUP_GUARD {
                    return Err(Error::NotSubgroup(format!(
                        "generated subgroup exceeds {SUBGROUP_GUARD} elements"
                    )));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The matched pair `(Γ, G ⋊ Λ)` with `α(γ, (g, r)) = (τ_γ(g), r)` and
/// `β_{(g,r)}(γ) = r⁻¹ γ r`.
///
/// `tau` must be a homomorphism `Γ → Aut(G)`; it is checked on `Λ` here and
/// the constructors [`twist_finite`] and [`twist_free`] check it on all of `Γ`.
pub fn matched_pair_from_twist<D: GroupLaw + 'static>(
    gamma: Arc<D>,
    g: Arc<FiniteGroup>,
    tau: Arc<TauFn<D::Elem>>,
    lambda_gens: &[D::Elem],
) -> Result<MatchedPair<D>> {
    let lambda_elems = subgroup_closure(gamma.as_ref(), lambda_gens)?;
    let index: BTreeMap<&D::Elem, usize> = lambda_elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let rows: Vec<Vec<usize>> = lambda_elems
        .iter()
        .map(|a| lambda_elems.iter().map(|b| index[&gamma.mul(a, b)]).collect())
        .collect();
    let names: Vec<String> = lambda_elems.iter().map(|e| gamma.describe(e)).collect();
    let lambda = Arc::new(FiniteGroup::from_table("Lambda", rows, Some(names))?);
    let perms: Vec<Vec<usize>> = lambda_elems.iter().map(|e| tau(e)).collect();
    let action = AutAction::from_perms(lambda.clone(), g.clone(), perms)?;
    let product = Arc::new(semidirect_product(&action));
    let compact = product.group().clone();
    let twist = Arc::new(Twist {
        g,
        lambda_elems,
        lambda,
        product,
        tau,
        cache: Mutex::new(HashMap::new()),
    });
    let actions = Arc::new(TwistActions {
        gamma: gamma.clone(),
        twist: twist.clone(),
    });
    Ok(MatchedPair {
        gamma,
        compact,
        actions,
        twist: Some(twist),
    })
}

/// Twist over a finite `Γ`, with `τ` given on generators of `Γ`.
pub fn twist_finite(
    gamma: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    tau_gens: &[(usize, Vec<usize>)],
    lambda_gens: &[usize],
) -> Result<MatchedPair<FiniteGroup>> {
    if let Some(&bad) = lambda_gens.iter().find(|&&r| r >= gamma.order()) {
        return Err(Error::NotSubgroup(format!("element {bad} is not in Γ")));
    }
    let tau = AutAction::from_generators(gamma.clone(), g.clone(), tau_gens)?;
    let tau_fn: Arc<TauFn<usize>> = Arc::new(move |x: &usize| tau.perm(*x).to_vec());
    matched_pair_from_twist(gamma, g, tau_fn, lambda_gens)
}

/// Twist over a free product of cyclic groups, with `factor_perms[f]` the
/// automorphism attached to the generator of factor `f`.
pub fn twist_free(
    gamma: Arc<FreeProduct>,
    g: Arc<FiniteGroup>,
    factor_perms: &[Vec<usize>],
    lambda_gens: &[Word],
) -> Result<MatchedPair<FreeProduct>> {
    if factor_perms.len() != gamma.orders().len() {
        return Err(Error::NotHomomorphism(format!(
            "{} generator images for {} factors",
            factor_perms.len(),
            gamma.orders().len()
        )));
    }
    // each image must be an automorphism whose order divides the factor order
    let mut powers = Vec::new();
    for (f, p) in factor_perms.iter().enumerate() {
        let n = gamma.orders()[f];
        let a = AutAction::from_generators(Arc::new(cyclic(n)), g.clone(), &[(1, p.clone())])?;
        powers.push((0..n).map(|e| a.perm(e).to_vec()).collect::<Vec<_>>());
    }
    let n = g.order();
    let tau_fn: Arc<TauFn<Word>> = Arc::new(move |w: &Word| {
        let mut acc: Vec<usize> = (0..n).collect();
        for s in &w.0 {
            let p = &powers[s.factor][s.exp];
            acc = p.iter().map(|&x| acc[x]).collect();
        }
        acc
    });
    matched_pair_from_twist(gamma, g, tau_fn, lambda_gens)
}

/// Outcome of checking the matched-pair relations on a set of points of `Γ`.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct MatchedPairReport {
    pub checked: usize,
    pub violation_count: usize,
    /// The first violations found, described.
    pub violations: Vec<String>,
}

impl MatchedPairReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < 50 {
                self.violations.push(what());
            }
        }
    }
}

/// Check the action axioms and the compatibility relations
/// `α_γ(gh) = α_γ(g) α_{β_g(γ)}(h)`, `β_g(rs) = β_{α_s(g)}(r) β_g(s)`,
/// `α_γ(e) = e`, `β_g(e) = e` over all `γ, r, s` in `scope`.
pub fn verify_matched_pair<D: GroupLaw>(mp: &MatchedPair<D>, scope: &[D::Elem]) -> MatchedPairReport {
    let gamma = mp.gamma();
    let k = mp.compact();
    let mut rep = MatchedPairReport::default();
    let e = gamma.identity();
    for g in k.elements() {
        rep.record(mp.beta(&e, g) == e, || format!("β_{}(e) != e", k.name(g)));
        for h in k.elements() {
            for x in scope {
                let left = mp.beta(&mp.beta(x, g), h);
                let right = mp.beta(x, k.mul(g, h));
                rep.record(left == right, || {
                    format!("β is not a right action at {}, {}, {}", gamma.describe(x), k.name(g), k.name(h))
                });
            }
        }
    }
    for x in scope {
        rep.record(mp.alpha(x, k.identity()) == k.identity(), || {
            format!("α_{}(e) != e", gamma.describe(x))
        });
        for g in k.elements() {
            let bg = mp.beta(x, g);
            let ag = mp.alpha(x, g);
            for h in k.elements() {
                let left = mp.alpha(x, k.mul(g, h));
                let right = k.mul(ag, mp.alpha(&bg, h));
                rep.record(left == right, || {
                    format!("α_γ(gh) relation fails at γ={}, g={}, h={}", gamma.describe(x), k.name(g), k.name(h))
                });
            }
        }
        for y in scope {
            let xy = gamma.mul(x, y);
            for g in k.elements() {
                let left = mp.alpha(&xy, g);
                let right = mp.alpha(x, mp.alpha(y, g));
                rep.record(left == right, || {
                    format!("α is not a left action at {}, {}, {}", gamma.describe(x), gamma.describe(y), k.name(g))
                });
                let left = mp.beta(&xy, g);
                let right = gamma.mul(&mp.beta(x, mp.alpha(y, g)), &mp.beta(y, g));
                rep.record(left == right, || {
                    format!("β_g(rs) relation fails at r={}, s={}, g={}", gamma.describe(x), gamma.describe(y), k.name(g))
                });
            }
        }
    }
    rep
}

/// A β-orbit with its least element as base point, the isotropy subgroup of
/// the base, and sections `σ_μ` (least `k` with `base·k = μ`).
#[derive(Clone, Debug)]
pub struct BetaOrbit<E> {
    elements: Vec<E>,
    isotropy: Subgroup,
    sections: Vec<usize>,
}

impl<E: Clone + Ord> BetaOrbit<E> {
    /// Sorted; the first element is the base point.
    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn base(&self) -> &E {
        &self.elements[0]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, e: &E) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.position(e).is_some()
    }

    /// Stabilizer of the base point in `K`.
    pub fn isotropy(&self) -> &Subgroup {
        &self.isotropy
    }

    /// `σ_μ` for `μ = elements()[i]`.
    pub fn section(&self, i: usize) -> usize {
        self.sections[i]
    }

    pub fn sections(&self) -> &[usize] {
        &self.sections
    }
}

/// The orbit `γ·K`, its isotropy, and canonical sections.
pub fn beta_orbit<D: GroupLaw>(mp: &MatchedPair<D>, gamma: &D::Elem) -> BetaOrbit<D::Elem> {
    let k = mp.compact();
    let mut elements: Vec<D::Elem> = k.elements().map(|x| mp.beta(gamma, x)).collect();
    elements.sort();
    elements.dedup();
    let base = elements[0].clone();
    let mut sections = vec![usize::MAX; elements.len()];
    let mut stab = Vec::new();
    for x in k.elements() {
        let y = mp.beta(&base, x);
        let i = elements.binary_search(&y).expect("orbit closed");
        if sections[i] == usize::MAX {
            sections[i] = x;
        }
        if y == base {
            stab.push(x);
        }
    }
    let isotropy = Subgroup::new(k.clone(), &stab).expect("stabilizers are subgroups");
    BetaOrbit {
        elements,
        isotropy,
        sections,
    }
}

/// Stabilizer of an arbitrary point.
pub fn isotropy_at<D: GroupLaw>(mp: &MatchedPair<D>, gamma: &D::Elem) -> Subgroup {
    let k = mp.compact();
    let stab: Vec<usize> = k.elements().filter(|&x| &mp.beta(gamma, x) == gamma).collect();
    Subgroup::new(k.clone(), &stab).expect("stabilizers are subgroups")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;

    pub(crate) fn s3_twist() -> MatchedPair<FiniteGroup> {
        let s3 = Arc::new(symmetric(3).unwrap());
        let z3 = Arc::new(cyclic(3));
        let inv = vec![0, 2, 1];
        // transpositions act by inversion
        twist_finite(s3, z3, &[(1, inv.clone()), (2, inv)], &[2]).unwrap()
    }

    #[test]
    fn s3_twist_is_a_nontrivial_matched_pair() {
        let mp = s3_twist();
        assert_eq!(mp.compact().order(), 6);
        let all: Vec<usize> = (0..6).collect();
        assert!(verify_matched_pair(&mp, &all).is_clean());
        assert!(!mp.alpha_is_trivial(&all));
        assert!(!mp.beta_is_trivial(&all));
        // (g, r) = (1, (12)) sends γ to (12)γ(12)
        let k = mp.twist().unwrap().product().encode(1, 1);
        assert_eq!(mp.beta(&5, k), 1);
        assert_eq!(mp.alpha(&2, mp.twist().unwrap().product().encode(1, 0)), 2);
    }

    #[test]
    fn trivial_tau_and_central_lambda_give_trivial_actions() {
        let z6 = Arc::new(cyclic(6));
        let z3 = Arc::new(cyclic(3));
        let mp = twist_finite(z6, z3, &[(1, vec![0, 1, 2])], &[3]).unwrap();
        let all: Vec<usize> = (0..6).collect();
        assert!(mp.alpha_is_trivial(&all));
        assert!(mp.beta_is_trivial(&all));
        assert!(verify_matched_pair(&mp, &all).is_clean());
    }

    #[test]
    fn mutated_beta_table_is_caught() {
        let mp = s3_twist();
        let mut t = mp.tables();
        t.beta[5][0] = 1;
        let bad = MatchedPair::from_tables(mp.gamma().clone(), mp.compact().clone(), t).unwrap();
        let all: Vec<usize> = (0..6).collect();
        let rep = verify_matched_pair(&bad, &all);
        assert!(rep.violation_count > 0);
        assert!(!rep.violations.is_empty());
    }

    #[test]
    fn orbits_and_isotropy() {
        let mp = s3_twist();
        let o = beta_orbit(&mp, &0);
        assert_eq!(o.elements(), &[0]);
        assert_eq!(o.isotropy().order(), 6);
        let o = beta_orbit(&mp, &5);
        assert_eq!(o.elements(), &[1, 5]);
        assert_eq!(o.isotropy().order(), 3);
        assert_eq!(o.section(0), 0);
        assert_eq!(mp.beta(&1, o.section(1)), 5);
        let o3 = beta_orbit(&mp, &3);
        assert_eq!(o3.elements(), &[3, 4]);
        // the orbit of inverses is the set of inverses
        let inv: BTreeSet<usize> = o3.elements().iter().map(|&x| mp.gamma().inv(x)).collect();
        let o4 = beta_orbit(&mp, &4);
        assert_eq!(inv, o4.elements().iter().copied().collect());
    }

    #[test]
    fn free_product_twist_has_small_orbits() {
        let fp = Arc::new(FreeProduct::new(vec![2, 3]).unwrap());
        let g = Arc::new(crate::group::direct_sum(&[cyclic(3), cyclic(3)]));
        let swap: Vec<usize> = (0..9).map(|x| (x % 3) * 3 + x / 3).collect();
        let id: Vec<usize> = (0..9).collect();
        let s = fp.generator(0);
        let mp = twist_free(fp.clone(), g, &[swap, id], &[s]).unwrap();
        assert_eq!(mp.compact().order(), 18);
        use crate::group::EnumerableGroup;
        let ball = fp.ball(4).unwrap();
        assert!(verify_matched_pair(&mp, &ball).is_clean());
        for w in &ball {
            assert!(beta_orbit(&mp, w).len() <= 2);
        }
        assert!(!mp.alpha_is_trivial(&ball));
        assert!(!mp.beta_is_trivial(&ball));
    }

    #[test]
    fn bad_tau_is_rejected() {
        let s3 = Arc::new(symmetric(3).unwrap());
        let z3 = Arc::new(cyclic(3));
        // (12) by inversion and (23) trivially is not a homomorphism on S3
        let r = twist_finite(s3, z3, &[(2, vec![0, 2, 1]), (1, vec![0, 1, 2])], &[2]);
        assert!(r.is_err());
    }
}
