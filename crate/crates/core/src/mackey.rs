//! Irreducible representations and fusion rules of `G ⋊ Λ` from
//! representation parameters `(u, V, v)`.

use crate::fusion::FusionTable;
use crate::group::{FiniteGroup, SemidirectProduct, Subgroup};
use crate::linalg::{identity, kron, C64};
use crate::projective::{
    gauge, linking_rep, proj_irreps_for_cocycle, proj_mor_dim, projective_conjugate,
    projective_tensor, ProjectiveRep,
};
use crate::rep::{
    canonical_cmp, character_inner, hs_inner, character_norm2, characters_equal, conjugate, identify,
    induce, intertwiners, irreps, pullback, tensor, IrrClass, UnitaryRep, ROUND_TOL,
};
use crate::linalg::round_multiplicity;
use crate::{Error, Result};
use num_rational::Ratio;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A representation parameter: an irreducible `u` of `G`, a linking projective
/// representation `V` of `Λ₀`, and a projective `v` of `Λ₀` with the opposite cocycle.
#[derive(Clone, Debug)]
pub struct Drp {
    /// Subgroup of `Λ`.
    pub lambda0: Subgroup,
    pub u: UnitaryRep,
    /// On `lambda0.local()`.
    pub big_v: ProjectiveRep,
    /// On `lambda0.local()`.
    pub small_v: ProjectiveRep,
}

impl Drp {
    pub fn dim_u(&self) -> usize {
        self.u.dim()
    }
}

#[derive(Clone, Debug)]
pub struct SemidirectIrrClass {
    pub id: usize,
    /// Canonical id of the orbit representative in `Irr(G)`.
    pub orbit_rep: usize,
    /// Index of `v` among the projective irreducibles for the opposite cocycle.
    pub v_index: usize,
    pub drp: Drp,
    pub realized: UnitaryRep,
    pub character: Vec<C64>,
}

impl SemidirectIrrClass {
    pub fn dim(&self) -> usize {
        self.realized.dim()
    }
}

#[derive(Clone, Debug)]
pub struct SemidirectClassification {
    product: Arc<SemidirectProduct>,
    g_irreps: Vec<IrrClass>,
    /// `lambda_perm[r][x]` is the class of `r·u_x = u_x ∘ τ_{r⁻¹}`.
    lambda_perm: Vec<Vec<usize>>,
    classes: Vec<SemidirectIrrClass>,
    translate_cache: Arc<Mutex<HashMap<(usize, usize), Arc<Drp>>>>,
}

/// `G ⋊ Λ₀` as a subgroup of `G ⋊ Λ`.
pub fn semidirect_subgroup(product: &SemidirectProduct, lambda0: &Subgroup) -> Subgroup {
    let n = product.normal().order();
    let elems: Vec<usize> = lambda0
        .elements()
        .iter()
        .flat_map(|&r| (0..n).map(move |g| r * n + g))
        .collect();
    Subgroup::new(product.group().clone(), &elems).expect("G ⋊ Λ₀ is a subgroup")
}

/// `(g, λ) ↦ u(g) V(λ) ⊗ v(λ)` on `G ⋊ Λ₀` (local ids of [`semidirect_subgroup`]).
pub fn restricted_realization(product: &SemidirectProduct, d: &Drp) -> (Subgroup, UnitaryRep) {
    let sub = semidirect_subgroup(product, &d.lambda0);
    let mats = sub
        .elements()
        .iter()
        .map(|&x| {
            let (g, r) = product.decode(x);
            let l = d.lambda0.local_id(r).unwrap();
            kron(&(d.u.matrix(g) * d.big_v.matrix(l)), d.small_v.matrix(l))
        })
        .collect();
    let rep = UnitaryRep::new_unchecked(sub.local().clone(), mats);
    (sub, rep)
}

/// Induced representation `Ind_{G⋊Λ₀}^{G⋊Λ}(u V ⊗ v)`.
pub fn realize_drp(product: &SemidirectProduct, d: &Drp) -> Result<UnitaryRep> {
    let (sub, rep) = restricted_realization(product, d);
    induce(&sub, &rep)
}

fn irr_action(product: &SemidirectProduct, g_irr: &[IrrClass]) -> Result<Vec<Vec<usize>>> {
    let lam = product.acting();
    let tau = product.action();
    lam.elements()
        .map(|r| {
            let rinv = lam.inv(r);
            g_irr
                .iter()
                .map(|c| {
                    let chi: Vec<C64> = (0..c.character.len())
                        .map(|g| c.character[tau.apply(rinv, g)])
                        .collect();
                    identify(g_irr, &chi).ok_or_else(|| {
                        Error::ClassNotFound("translate of an irreducible character".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// Classify `Irr(G ⋊ Λ)`: one class per `Λ`-orbit in `Irr(G)` and projective
/// irreducible `v` of the stabilizer for the opposite cocycle.
pub fn classify_semidirect(product: &Arc<SemidirectProduct>, seed: u64) -> Result<SemidirectClassification> {
    let g = product.normal().clone();
    let lam = product.acting().clone();
    let g_irr = irreps(&g, seed)?;
    let lambda_perm = irr_action(product, &g_irr)?;
    let mut assigned = vec![false; g_irr.len()];
    let mut classes = Vec::new();
    for x in 0..g_irr.len() {
        if assigned[x] {
            continue;
        }
        let stab: Vec<usize> = lam.elements().filter(|&r| lambda_perm[r][x] == x).collect();
        for r in lam.elements() {
            assigned[lambda_perm[r][x]] = true;
        }
        let lambda0 = Subgroup::new(lam.clone(), &stab)?;
        let tau0 = product.action();
        let u = g_irr[x].rep.clone();
        let big_v = linking_rep(&u, &lambda0, tau0)?;
        let opposite = big_v.cocycle().opposite();
        let vs = proj_irreps_for_cocycle(&opposite, seed.wrapping_add(x as u64 + 1))?;
        for (vi, small_v) in vs.into_iter().enumerate() {
            let d = Drp {
                lambda0: lambda0.clone(),
                u: u.clone(),
                big_v: big_v.clone(),
                small_v,
            };
            let realized = realize_drp(product, &d)?;
            let character = realized.character();
            let n2 = character_norm2(&character);
            if (n2 - 1.0).abs() > 1e-6 {
                return Err(Error::NotUnitaryRep(format!(
                    "realized representation is reducible (|χ|² = {n2:.6})"
                )));
            }
            classes.push(SemidirectIrrClass {
                id: 0,
                orbit_rep: x,
                v_index: vi,
                drp: d,
                realized,
                character,
            });
        }
    }
    classes.sort_by(|a, b| {
        canonical_cmp((a.dim(), &a.character), (b.dim(), &b.character))
    });
    for (i, c) in classes.iter_mut().enumerate() {
        c.id = i;
    }
    let total: usize = classes.iter().map(|c| c.dim() * c.dim()).sum();
    let order = product.group().order();
    if total != order {
        return Err(Error::Completeness {
            expected: order,
            got: total,
        });
    }
    Ok(SemidirectClassification {
        product: product.clone(),
        g_irreps: g_irr,
        lambda_perm,
        classes,
        translate_cache: Arc::new(Mutex::new(HashMap::new())),
    })
}

impl SemidirectClassification {
    pub fn product(&self) -> &Arc<SemidirectProduct> {
        &self.product
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.product.group()
    }

    pub fn classes(&self) -> &[SemidirectIrrClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn g_irreps(&self) -> &[IrrClass] {
        &self.g_irreps
    }

    /// Class of `r·u_x` in `Irr(G)`.
    pub fn lambda_on_irr(&self, r: usize, x: usize) -> usize {
        self.lambda_perm[r][x]
    }

    pub fn lambda_permutations(&self) -> &[Vec<usize>] {
        &self.lambda_perm
    }

    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.dim()).collect()
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    pub fn identify_character(&self, chi: &[C64]) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| characters_equal(&c.character, chi))
    }

    /// Class of the realized representation of any DRP.
    pub fn identify_drp(&self, d: &Drp) -> Result<usize> {
        let w = realize_drp(&self.product, d)?;
        self.identify_character(&w.character())
            .ok_or_else(|| Error::ClassNotFound("realized DRP".into()))
    }

    /// Class of the contragredient (entrywise conjugate) representation.
    pub fn conjugate_class(&self, i: usize) -> Result<usize> {
        let chi: Vec<C64> = self.classes[i].character.iter().map(|z| z.conj()).collect();
        self.identify_character(&chi)
            .ok_or_else(|| Error::ClassNotFound(format!("conjugate of class {i}")))
    }

    fn translated(&self, class: usize, r: usize) -> Arc<Drp> {
        if let Some(d) = self.translate_cache.lock().unwrap().get(&(class, r)) {
            return d.clone();
        }
        let d = Arc::new(act_on_drp(&self.product, r, &self.classes[class].drp));
        self.translate_cache
            .lock()
            .unwrap()
            .insert((class, r), d.clone());
        d
    }
}

/// `r·(u, V, v) = (u ∘ τ_{r⁻¹}, V ∘ Ad_{r⁻¹}, v ∘ Ad_{r⁻¹})` over `r Λ₀ r⁻¹`.
pub fn act_on_drp(product: &SemidirectProduct, r: usize, d: &Drp) -> Drp {
    let lam = product.acting();
    let rinv = lam.inv(r);
    let conj_sub = d.lambda0.conjugated(r);
    // local id in r Λ₀ r⁻¹ -> local id in Λ₀
    let phi: Vec<usize> = conj_sub
        .elements()
        .iter()
        .map(|&l| d.lambda0.local_id(lam.conjugate(rinv, l)).unwrap())
        .collect();
    let u = pullback(&d.u, product.action().perm(rinv));
    Drp {
        lambda0: conj_sub.clone(),
        u,
        big_v: d.big_v.pullback(conj_sub.local().clone(), &phi),
        small_v: d.small_v.pullback(conj_sub.local().clone(), &phi),
    }
}

/// Componentwise contragredient `(ū, V̄, v̄)`.
pub fn contragredient_drp(d: &Drp) -> Drp {
    Drp {
        lambda0: d.lambda0.clone(),
        u: conjugate(&d.u),
        big_v: projective_conjugate(&d.big_v),
        small_v: projective_conjugate(&d.small_v),
    }
}

/// Restrict a projective representation of `from.local()` to `to ≤ from` (both subgroups of `Λ`).
fn restrict_between(v: &ProjectiveRep, from: &Subgroup, to: &Subgroup) -> ProjectiveRep {
    let phi: Vec<usize> = to
        .elements()
        .iter()
        .map(|&r| from.local_id(r).expect("nested subgroups"))
        .collect();
    v.pullback(to.local().clone(), &phi)
}

/// Equivalence decided by comparing the characters of `u V ⊗ v` on `G ⋊ Λ₀`.
pub fn drp_equivalent(product: &SemidirectProduct, d1: &Drp, d2: &Drp) -> bool {
    if d1.lambda0.elements() != d2.lambda0.elements() {
        return false;
    }
    let (_, r1) = restricted_realization(product, d1);
    let (_, r2) = restricted_realization(product, d2);
    characters_equal(&r1.character(), &r2.character())
}

/// Structural equivalence test: a unitary `T ∈ Mor_G(u₁, u₂)` fixes the gauge
/// `𝕓(λ) = tr(V₂(λ)* T V₁(λ) T*)/d`, after which `T` intertwines `𝕓V₁` and `V₂`
/// and the remaining condition is `Mor_{Λ₀}(𝕓̄ v₁, v₂) ≠ 0`.
pub fn drp_equivalent_structural(d1: &Drp, d2: &Drp) -> Result<bool> {
    if d1.lambda0.elements() != d2.lambda0.elements() {
        return Ok(false);
    }
    let basis = intertwiners(&d1.u, &d2.u)?;
    let Some(t) = basis.first() else {
        return Ok(false);
    };
    let dim = d1.u.dim() as f64;
    let t = t * C64::new(dim.sqrt(), 0.0);
    let n = d1.lambda0.order();
    let b: Vec<C64> = (0..n)
        .map(|l| {
            (d2.big_v.matrix(l).adjoint() * &t * d1.big_v.matrix(l) * t.adjoint()).trace() / dim
        })
        .collect();
    let bv1 = gauge(&d1.big_v, &b)?;
    if !bv1.cocycle().approx_eq(d2.big_v.cocycle()) {
        return Ok(false);
    }
    let b_bar: Vec<C64> = b.iter().map(|z| z.conj()).collect();
    let bv_small = gauge(&d1.small_v, &b_bar)?;
    Ok(proj_mor_dim(&bv_small, &d2.small_v)? > 0)
}

/// `dim Mor_{Λ₀}(v₁, V′ × v₂ × v₃)` with `Λ₀ = Λ₁ ∩ Λ₂ ∩ Λ₃` and `V′` the
/// projective representation `X ↦ (V₂ ⊗ V₃)(λ) X V₁(λ)*` on `Mor_G(u₁, u₂ ⊗ u₃)`.
pub fn incidence_number(d1: &Drp, d2: &Drp, d3: &Drp) -> Result<usize> {
    let lambda0 = d1.lambda0.intersect(&d2.lambda0)?.intersect(&d3.lambda0)?;
    let w = tensor(&d2.u, &d3.u)?;
    let basis = intertwiners(&d1.u, &w)?;
    if basis.is_empty() {
        return Ok(0);
    }
    let big1 = restrict_between(&d1.big_v, &d1.lambda0, &lambda0);
    let big2 = restrict_between(&d2.big_v, &d2.lambda0, &lambda0);
    let big3 = restrict_between(&d3.big_v, &d3.lambda0, &lambda0);
    let v1 = restrict_between(&d1.small_v, &d1.lambda0, &lambda0);
    let v2 = restrict_between(&d2.small_v, &d2.lambda0, &lambda0);
    let v3 = restrict_between(&d3.small_v, &d3.lambda0, &lambda0);
    let n = basis.len();
    let mats: Vec<_> = (0..lambda0.order())
        .map(|l| {
            let wl = kron(big2.matrix(l), big3.matrix(l));
            let v1a = big1.matrix(l).adjoint();
            let mut m = identity(n);
            for (c, xl) in basis.iter().enumerate() {
                let moved = &wl * xl * &v1a;
                for (r, xk) in basis.iter().enumerate() {
                    m[(r, c)] = hs_inner(xk, &moved);
                }
            }
            m
        })
        .collect();
    let vp = ProjectiveRep::from_matrices(lambda0.local().clone(), mats)?;
    let rhs = projective_tensor(&projective_tensor(&vp, &v2), &v3);
    let dev = rhs.cocycle().max_deviation(v1.cocycle());
    if dev > 1e-8 {
        return Err(Error::CocycleMismatch { deviation: dev });
    }
    proj_mor_dim(&v1, &rhs)
}

/// `dim Mor(W₁, W₂ × W₃)` by the sum over translated parameters
/// `Σ m(r₁·D₁, r₂·D₂, r₃·D₃) / [Λ : ∩ rᵢ Λᵢ rᵢ⁻¹]`, with `rᵢ` running over
/// least-element representatives of `Λ/Λᵢ`.
pub fn fusion_semidirect(cls: &SemidirectClassification, w1: usize, w2: usize, w3: usize) -> Result<usize> {
    let lam = cls.product.acting();
    let ids = [w1, w2, w3];
    let reps: Vec<Vec<usize>> = ids
        .iter()
        .map(|&w| cls.classes[w].drp.lambda0.left_coset_reps())
        .collect();
    let mut triples = Vec::new();
    for &r1 in &reps[0] {
        for &r2 in &reps[1] {
            for &r3 in &reps[2] {
                triples.push([r1, r2, r3]);
            }
        }
    }
    let terms: Vec<Result<Ratio<i64>>> = triples
        .par_iter()
        .map(|r| {
            let d: Vec<Arc<Drp>> = (0..3).map(|i| cls.translated(ids[i], r[i])).collect();
            let m = incidence_number(&d[0], &d[1], &d[2])?;
            if m == 0 {
                return Ok(Ratio::from_integer(0));
            }
            let inter = d[0].lambda0.intersect(&d[1].lambda0)?.intersect(&d[2].lambda0)?;
            let index = (lam.order() / inter.order()) as i64;
            Ok(Ratio::new(m as i64, index))
        })
        .collect();
    let mut total = Ratio::from_integer(0i64);
    for t in terms {
        total += t?;
    }
    if !total.is_integer() {
        return Err(Error::NonIntegerFusion(total.to_string()));
    }
    Ok(total.to_integer() as usize)
}

/// `(1/|G⋊Λ|) Σ conj(χ₁) χ₂ χ₃` on the explicit product group.
pub fn fusion_oracle(cls: &SemidirectClassification, w1: usize, w2: usize, w3: usize) -> Result<usize> {
    let c = &cls.classes;
    let prod: Vec<C64> = c[w2]
        .character
        .iter()
        .zip(&c[w3].character)
        .map(|(a, b)| a * b)
        .collect();
    round_multiplicity(character_inner(&c[w1].character, &prod), ROUND_TOL, "fusion oracle")
}

/// Full table by the coset formula.
pub fn semidirect_fusion_table(cls: &SemidirectClassification) -> Result<FusionTable> {
    let conj = (0..cls.len()).map(|i| cls.conjugate_class(i)).collect::<Result<Vec<_>>>()?;
    FusionTable::build(cls.dims(), 0, conj, |x, y, z| fusion_semidirect(cls, z, x, y))
}

/// Full table by character inner products on the product group.
pub fn oracle_fusion_table(cls: &SemidirectClassification) -> Result<FusionTable> {
    let conj = (0..cls.len()).map(|i| cls.conjugate_class(i)).collect::<Result<Vec<_>>>()?;
    FusionTable::build(cls.dims(), 0, conj, |x, y, z| fusion_oracle(cls, z, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, semidirect_product, symmetric, AutAction};

    fn z3_by_z2() -> Arc<SemidirectProduct> {
        let act = AutAction::from_generators(
            Arc::new(cyclic(2)),
            Arc::new(cyclic(3)),
            &[(1, vec![0, 2, 1])],
        )
        .unwrap();
        Arc::new(semidirect_product(&act))
    }

    #[test]
    fn s3_as_semidirect_matches_splitting() {
        let p = z3_by_z2();
        let cls = classify_semidirect(&p, 3).unwrap();
        assert_eq!(cls.dims(), vec![1, 1, 2]);
        let irr = irreps(p.group(), 3).unwrap();
        for (a, b) in cls.classes().iter().zip(&irr) {
            assert!(characters_equal(&a.character, &b.character));
        }
        // the two 1-dim classes sit over the trivial character, the 2-dim one over ω
        assert_eq!(cls.classes()[0].orbit_rep, 0);
        assert_eq!(cls.classes()[1].orbit_rep, 0);
        assert_eq!(cls.classes()[2].orbit_rep, 1);
    }

    #[test]
    fn s3_two_dim_fusion_uses_two_half_weight_triples() {
        let p = z3_by_z2();
        let cls = classify_semidirect(&p, 3).unwrap();
        assert_eq!(fusion_semidirect(&cls, 2, 2, 2).unwrap(), 1);
        assert_eq!(fusion_oracle(&cls, 2, 2, 2).unwrap(), 1);
        let d = &cls.classes()[2].drp;
        let s = 1;
        let ds = act_on_drp(&p, s, d);
        // exactly the translates (e,s,s) and (s,e,e) carry incidence 1
        let count = [(d, d, d), (d, d, &ds), (d, &ds, d), (d, &ds, &ds), (&ds, d, d), (&ds, d, &ds), (&ds, &ds, d), (&ds, &ds, &ds)]
            .iter()
            .filter(|(a, b, c)| incidence_number(a, b, c).unwrap() == 1)
            .count();
        assert_eq!(count, 2);
    }

    #[test]
    fn trivial_class_is_fusion_unit() {
        let p = z3_by_z2();
        let cls = classify_semidirect(&p, 3).unwrap();
        for a in 0..3 {
            for c in 0..3 {
                let expect = usize::from(a == c);
                assert_eq!(fusion_semidirect(&cls, a, 0, c).unwrap(), expect);
            }
        }
        let triv = &cls.classes()[0].drp;
        assert_eq!(incidence_number(triv, triv, triv).unwrap(), 1);
    }

    #[test]
    fn direct_product_dims_multiply() {
        let z2 = Arc::new(cyclic(2));
        let s3 = Arc::new(symmetric(3).unwrap());
        let act = AutAction::trivial(z2, s3);
        let p = Arc::new(semidirect_product(&act));
        let cls = classify_semidirect(&p, 1).unwrap();
        assert_eq!(cls.dims(), vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn trivial_lambda_recovers_irr_g() {
        let g = Arc::new(crate::group::quaternion());
        let act = AutAction::trivial(Arc::new(crate::group::trivial_group()), g.clone());
        let p = Arc::new(semidirect_product(&act));
        let cls = classify_semidirect(&p, 1).unwrap();
        assert_eq!(cls.dims(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn contragredient_and_equivalence() {
        let p = z3_by_z2();
        let cls = classify_semidirect(&p, 3).unwrap();
        let two = &cls.classes()[2].drp;
        let c = contragredient_drp(two);
        assert_eq!(cls.identify_drp(&c).unwrap(), 2);
        assert_eq!(cls.identify_drp(&contragredient_drp(&c)).unwrap(), 2);
        assert!(c.u.character()[1].im * two.u.character()[1].im < 0.0);
        let (a, b) = (&cls.classes()[0].drp, &cls.classes()[1].drp);
        assert!(!drp_equivalent(&p, a, b));
        assert!(!drp_equivalent_structural(a, b).unwrap());
        assert!(drp_equivalent(&p, a, a));
        assert!(drp_equivalent_structural(a, a).unwrap());
        let moved = act_on_drp(&p, 1, a);
        assert!(drp_equivalent(&p, a, &moved));
        assert!(drp_equivalent_structural(a, &moved).unwrap());
    }

    #[test]
    fn incidence_for_characters_of_z3() {
        let p = z3_by_z2();
        let cls = classify_semidirect(&p, 3).unwrap();
        let w = &cls.classes()[2].drp;
        let w2 = act_on_drp(&p, 1, w);
        // ω ⊗ ω = ω² and ω² ⊗ ω² = ω
        assert_eq!(incidence_number(&w2, w, w).unwrap(), 1);
        assert_eq!(incidence_number(w, &w2, &w2).unwrap(), 1);
        assert_eq!(incidence_number(w, w, w).unwrap(), 0);
    }

    #[test]
    fn tables_agree_and_satisfy_ring_axioms() {
        let p = z3_by_z2();
        let cls = classify_semidirect(&p, 3).unwrap();
        let a = semidirect_fusion_table(&cls).unwrap();
        let b = oracle_fusion_table(&cls).unwrap();
        assert!(a.diff(&b).is_empty());
        assert!(a.audit().is_clean());
    }
}
