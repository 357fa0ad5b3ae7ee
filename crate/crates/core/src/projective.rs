//! 2-cocycles and projective unitary representations of finite groups.

use crate::group::{AutAction, FiniteGroup, Subgroup};
use crate::linalg::{
    block_diagonal, fix_phase, frobenius, identity, kron, max_abs_diff, unitarity_defect, CMat,
    C64, ONE,
};
use crate::rep::{
    canonical_cmp, character_multiplicity, intertwiner_basis, split, Monomial, UnitaryRep,
};
use crate::{Error, Result};
use std::sync::Arc;

pub const COCYCLE_TOL: f64 = 1e-9;

/// A normalized 2-cocycle `ω: Λ₀ × Λ₀ → 𝕋`, stored densely as `values[a*n + b]`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    group: Arc<FiniteGroup>,
    values: Vec<C64>,
}

impl Cocycle {
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Cocycle {
            group,
            values: vec![ONE; n * n],
        }
    }

    pub fn from_fn(group: Arc<FiniteGroup>, f: impl Fn(usize, usize) -> C64) -> Self {
        let n = group.order();
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Cocycle { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> C64 {
        self.values[a * self.group.order() + b]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Cocycle identity, normalization and unit modulus.
    pub fn audit(&self) -> Result<()> {
        let g = &self.group;
        let mut dev: f64 = 0.0;
        for a in g.elements() {
            dev = dev.max((self.value(0, a) - ONE).norm());
            dev = dev.max((self.value(a, 0) - ONE).norm());
            for b in g.elements() {
                dev = dev.max((self.value(a, b).norm() - 1.0).abs());
                for c in g.elements() {
                    let lhs = self.value(a, b) * self.value(g.mul(a, b), c);
                    let rhs = self.value(b, c) * self.value(a, g.mul(b, c));
                    dev = dev.max((lhs - rhs).norm());
                }
            }
        }
        if dev > COCYCLE_TOL {
            return Err(Error::CocycleMismatch { deviation: dev });
        }
        Ok(())
    }

    /// Pointwise conjugate.
    pub fn opposite(&self) -> Cocycle {
        Cocycle {
            group: self.group.clone(),
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn product(&self, other: &Cocycle) -> Cocycle {
        Cocycle {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    /// `ω'(a,b) = b(a) b(b) / b(ab) · ω(a,b)`
    pub fn gauged(&self, b: &[C64]) -> Cocycle {
        let g = &self.group;
        Cocycle::from_fn(g.clone(), |x, y| b[x] * b[y] / b[g.mul(x, y)] * self.value(x, y))
    }

    pub fn max_deviation(&self, other: &Cocycle) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Cocycle) -> bool {
        self.max_deviation(other) <= COCYCLE_TOL
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|z| (z - ONE).norm() <= COCYCLE_TOL)
    }

    /// Dense table of `[re, im]` pairs, row `a`, column `b`.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.group.order();
        let rows: Vec<Vec<[f64; 2]>> = (0..n)
            .map(|a| (0..n).map(|b| [self.value(a, b).re, self.value(a, b).im]).collect())
            .collect();
        serde_json::json!(rows)
    }
}

/// Unitaries with `V(a) V(b) = ω(a,b) V(ab)` and `V(e) = I`.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    group: Arc<FiniteGroup>,
    mats: Vec<CMat>,
    cocycle: Cocycle,
}

impl ProjectiveRep {
    /// Extract the cocycle `ω(a,b) = tr(V(ab)* V(a) V(b)) / d` and verify the family.
    pub fn from_matrices(group: Arc<FiniteGroup>, mats: Vec<CMat>) -> Result<Self> {
        if mats.len() != group.order() {
            return Err(Error::NotUnitaryRep("one matrix per element required".into()));
        }
        let d = mats[0].nrows();
        for m in &mats {
            if m.nrows() != d || unitarity_defect(m) > 1e-8 {
                return Err(Error::NotUnitaryRep("projective family is not unitary".into()));
            }
        }
        if max_abs_diff(&mats[0], &identity(d)) > 1e-8 {
            return Err(Error::NotUnitaryRep("V(e) is not the identity".into()));
        }
        let g = group.clone();
        let cocycle = Cocycle::from_fn(group.clone(), |a, b| {
            let ab = g.mul(a, b);
            (mats[ab].adjoint() * &mats[a] * &mats[b]).trace() / (d as f64)
        });
        let rep = ProjectiveRep {
            group,
            mats,
            cocycle,
        };
        rep.check_law()?;
        Ok(rep)
    }

    fn check_law(&self) -> Result<()> {
        let g = &self.group;
        let mut dev: f64 = 0.0;
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.mats[a] * &self.mats[b];
                let rhs = &self.mats[g.mul(a, b)] * self.cocycle.value(a, b);
                dev = dev.max(max_abs_diff(&lhs, &rhs));
            }
        }
        if dev > 1e-8 {
            return Err(Error::CocycleMismatch { deviation: dev });
        }
        Ok(())
    }

    pub fn from_unitary(u: &UnitaryRep) -> Self {
        ProjectiveRep {
            group: u.group().clone(),
            mats: u.matrices().to_vec(),
            cocycle: Cocycle::trivial(u.group().clone()),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn matrix(&self, a: usize) -> &CMat {
        &self.mats[a]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.mats
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn character(&self) -> Vec<C64> {
        self.mats.iter().map(|m| m.trace()).collect()
    }

    /// Full audit: unitarity, cocycle identity and the projective law.
    pub fn audit(&self) -> Result<()> {
        self.cocycle.audit()?;
        for m in &self.mats {
            if unitarity_defect(m) > 1e-8 {
                return Err(Error::NotUnitaryRep("matrix not unitary".into()));
            }
        }
        self.check_law()
    }

    /// Restriction to a subgroup (indexed by local ids).
    pub fn restrict(&self, sub: &Subgroup) -> ProjectiveRep {
        let el = sub.elements();
        let local = sub.local().clone();
        let cocycle = Cocycle::from_fn(local.clone(), |a, b| self.cocycle.value(el[a], el[b]));
        ProjectiveRep {
            group: local,
            mats: el.iter().map(|&r| self.mats[r].clone()).collect(),
            cocycle,
        }
    }

    /// Pre-compose with a group isomorphism given as an image table
    /// `phi: other group → this group`.
    pub fn pullback(&self, domain: Arc<FiniteGroup>, phi: &[usize]) -> ProjectiveRep {
        let cocycle = Cocycle::from_fn(domain.clone(), |a, b| self.cocycle.value(phi[a], phi[b]));
        ProjectiveRep {
            group: domain,
            mats: phi.iter().map(|&r| self.mats[r].clone()).collect(),
            cocycle,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        let chi = self.character();
        let n2: f64 = chi.iter().map(|z| z.norm_sqr()).sum::<f64>() / chi.len() as f64;
        (n2 - 1.0).abs() < 1e-6
    }
}

pub fn projective_tensor(a: &ProjectiveRep, b: &ProjectiveRep) -> ProjectiveRep {
    ProjectiveRep {
        group: a.group.clone(),
        mats: a.mats.iter().zip(&b.mats).map(|(x, y)| kron(x, y)).collect(),
        cocycle: a.cocycle.product(&b.cocycle),
    }
}

/// Entrywise conjugate; the cocycle becomes its opposite.
pub fn projective_conjugate(a: &ProjectiveRep) -> ProjectiveRep {
    ProjectiveRep {
        group: a.group.clone(),
        mats: a.mats.iter().map(|m| m.map(|z| z.conj())).collect(),
        cocycle: a.cocycle.opposite(),
    }
}

pub fn projective_direct_sum(a: &ProjectiveRep, b: &ProjectiveRep) -> Result<ProjectiveRep> {
    if !a.cocycle.approx_eq(&b.cocycle) {
        return Err(Error::CocycleMismatch {
            deviation: a.cocycle.max_deviation(&b.cocycle),
        });
    }
    Ok(ProjectiveRep {
        group: a.group.clone(),
        mats: a
            .mats
            .iter()
            .zip(&b.mats)
            .map(|(x, y)| block_diagonal(&[x.clone(), y.clone()]))
            .collect(),
        cocycle: a.cocycle.clone(),
    })
}

pub fn opposite_cocycle(w: &Cocycle) -> Cocycle {
    w.opposite()
}

/// `V'(λ) = 𝕓(λ) V(λ)`; the cocycle changes by the coboundary of `𝕓`.
pub fn gauge(v: &ProjectiveRep, b: &[C64]) -> Result<ProjectiveRep> {
    if b.len() != v.group.order() || (b[0] - ONE).norm() > COCYCLE_TOL {
        return Err(Error::config("gauge", "b must have one entry per element with b(e) = 1"));
    }
    Ok(ProjectiveRep {
        group: v.group.clone(),
        mats: v.mats.iter().zip(b).map(|(m, &z)| m * z).collect(),
        cocycle: v.cocycle.gauged(b),
    })
}

/// Linking representation of a `Λ₀`-fixed irreducible `u` of `G`:
/// `V(λ) ∈ Mor(λ·u, u)` with `(λ·u)(g) = u(τ_{λ⁻¹}(g))`.
///
/// Each `V(λ)` is the unique-up-to-phase unitary intertwiner, with its first
/// nonzero entry (row-major) made real and positive.
pub fn linking_rep(u: &UnitaryRep, lambda0: &Subgroup, tau: &AutAction) -> Result<ProjectiveRep> {
    let g = tau.target();
    let lam = tau.acting();
    let gens = g.generating_set();
    let d = u.dim();
    let b: Vec<&CMat> = gens.iter().map(|&x| u.matrix(x)).collect();
    let mut mats = Vec::with_capacity(lambda0.order());
    for &r in lambda0.elements() {
        let rinv = lam.inv(r);
        let a: Vec<&CMat> = gens.iter().map(|&x| u.matrix(tau.apply(rinv, x))).collect();
        let basis = intertwiner_basis(&a, &b);
        match basis.len() {
            0 => return Err(Error::NotFixed { lambda: r }),
            1 => {}
            n => return Err(Error::Reducible { dim: n }),
        }
        let x = &basis[0];
        let scale = frobenius(x) / (d as f64).sqrt();
        let x = x / C64::new(scale, 0.0);
        mats.push(fix_phase(&x, 1e-9));
    }
    ProjectiveRep::from_matrices(lambda0.local().clone(), mats)
}

/// Dimension of the intertwiner space between two projective representations
/// with the same cocycle: the trace of the averaging projection
/// `X ↦ (1/|Λ₀|) Σ V₂(λ) X V₁(λ)*`, i.e. `(1/|Λ₀|) Σ conj(χ₁) χ₂`.
pub fn proj_mor_dim(v1: &ProjectiveRep, v2: &ProjectiveRep) -> Result<usize> {
    let dev = v1.cocycle.max_deviation(&v2.cocycle);
    if dev > COCYCLE_TOL {
        return Err(Error::CocycleMismatch { deviation: dev });
    }
    character_multiplicity(&v1.character(), &v2.character(), "proj_mor_dim")
}

/// Intertwiner basis `{X : V₂(λ) X = X V₁(λ)}`.
pub fn proj_intertwiners(v1: &ProjectiveRep, v2: &ProjectiveRep) -> Result<Vec<CMat>> {
    let dev = v1.cocycle.max_deviation(&v2.cocycle);
    if dev > COCYCLE_TOL {
        return Err(Error::CocycleMismatch { deviation: dev });
    }
    let gens = v1.group.generating_set();
    let a: Vec<&CMat> = gens.iter().map(|&x| &v1.mats[x]).collect();
    let b: Vec<&CMat> = gens.iter().map(|&x| &v2.mats[x]).collect();
    Ok(intertwiner_basis(&a, &b))
}

/// Complete list of irreducible `ω`-projective representations, in canonical order.
pub fn proj_irreps_for_cocycle(omega: &Cocycle, seed: u64) -> Result<Vec<ProjectiveRep>> {
    omega.audit()?;
    let group = omega.group().clone();
    let n = group.order();
    // ω-twisted left regular representation: L(a) δ_b = ω(a,b) δ_{ab}
    let family: Vec<Monomial> = group
        .elements()
        .map(|a| Monomial {
            target: (0..n).map(|b| group.mul(a, b)).collect(),
            phase: (0..n).map(|b| omega.value(a, b)).collect(),
        })
        .collect();
    let mut out = Vec::new();
    for mats in split::split_monomial_family(&family, seed)? {
        let rep = ProjectiveRep::from_matrices(group.clone(), mats)?;
        let dev = rep.cocycle.max_deviation(omega);
        if dev > 1e-8 {
            return Err(Error::CocycleMismatch { deviation: dev });
        }
        out.push(ProjectiveRep {
            cocycle: omega.clone(),
            ..rep
        });
    }
    let mut keyed: Vec<(Vec<C64>, ProjectiveRep)> =
        out.into_iter().map(|r| (r.character(), r)).collect();
    keyed.sort_by(|a, b| canonical_cmp((a.1.dim(), &a.0), (b.1.dim(), &b.0)));
    let total: usize = keyed.iter().map(|(_, r)| r.dim() * r.dim()).sum();
    if total != n {
        return Err(Error::Completeness {
            expected: n,
            got: total,
        });
    }
    Ok(keyed.into_iter().map(|(_, r)| r).collect())
}

/// For a cyclic group, a gauge `𝕓` with `ω · δ𝕓 ≡ 1`.
pub fn cyclic_trivializer(omega: &Cocycle) -> Result<Vec<C64>> {
    let g = omega.group();
    let n = g.order();
    let gen = g
        .elements()
        .find(|&x| g.element_order(x) == n)
        .ok_or_else(|| Error::NotCyclic(g.label().to_string()))?;
    // f(xy) = f(x) f(y) / ω(x,y) along powers of the generator; c^n = Π ω(g^j, g)
    let mut prod = ONE;
    let mut p = gen;
    for _ in 1..n {
        prod *= omega.value(p, gen);
        p = g.mul(p, gen);
    }
    let c = prod.powf(1.0 / n as f64);
    let mut f = vec![ONE; n];
    let mut prev = 0usize;
    for _ in 1..n {
        let next = g.mul(prev, gen);
        f[next] = f[prev] * c / omega.value(prev, gen);
        prev = next;
    }
    let b: Vec<C64> = f.iter().map(|z| ONE / z).collect();
    let gauged = omega.gauged(&b);
    if !gauged.is_trivial() {
        return Err(Error::CocycleMismatch {
            deviation: gauged.max_deviation(&Cocycle::trivial(g.clone())),
        });
    }
    Ok(b)
}

/// `ω((a₁,a₂),(b₁,b₂)) = (-1)^{a₂ b₁}` on `ℤ/2 ⊕ ℤ/2` (ids `2 a₁ + a₂`).
pub fn klein_four_cocycle(group: Arc<FiniteGroup>) -> Result<Cocycle> {
    if group.order() != 4 || !group.is_abelian() || group.elements().any(|a| group.mul(a, a) != 0)
    {
        return Err(Error::Unsupported("Klein four-group expected".into()));
    }
    Ok(Cocycle::from_fn(group, |a, b| {
        if (a % 2) * (b / 2) == 1 {
            -ONE
        } else {
            ONE
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_sum, symmetric};
    use crate::linalg::root_of_unity;
    use crate::rep::{irreps, mor_dim};

    fn v4() -> Arc<FiniteGroup> {
        Arc::new(direct_sum(&[cyclic(2), cyclic(2)]))
    }

    #[test]
    fn klein_cocycle_has_one_two_dim_irrep() {
        let w = klein_four_cocycle(v4()).unwrap();
        w.audit().unwrap();
        let reps = proj_irreps_for_cocycle(&w, 5).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].dim(), 2);
        reps[0].audit().unwrap();
        assert_eq!(proj_mor_dim(&reps[0], &reps[0]).unwrap(), 1);
        let double = projective_direct_sum(&reps[0], &reps[0]).unwrap();
        assert_eq!(proj_mor_dim(&reps[0], &double).unwrap(), 2);
    }

    #[test]
    fn trivial_cocycle_gives_ordinary_irreps() {
        let s3 = Arc::new(symmetric(3).unwrap());
        let reps = proj_irreps_for_cocycle(&Cocycle::trivial(s3.clone()), 2).unwrap();
        let irr = irreps(&s3, 2).unwrap();
        assert_eq!(reps.iter().map(|r| r.dim()).collect::<Vec<_>>(), vec![1, 1, 2]);
        for (p, i) in reps.iter().zip(&irr) {
            assert!(crate::rep::characters_equal(&p.character(), &i.character));
        }
        for a in &irr {
            for b in &irr {
                let pa = ProjectiveRep::from_unitary(&a.rep);
                let pb = ProjectiveRep::from_unitary(&b.rep);
                assert_eq!(proj_mor_dim(&pa, &pb).unwrap(), mor_dim(&a.rep, &b.rep).unwrap());
            }
        }
    }

    #[test]
    fn cocycles_on_cyclic_groups_are_coboundaries() {
        let z4 = Arc::new(cyclic(4));
        // a coboundary disguised by a random-looking gauge
        let b: Vec<C64> = (0..4)
            .map(|i| if i == 0 { ONE } else { root_of_unity(3 * i as i64 + 1, 11) })
            .collect();
        let w = Cocycle::trivial(z4.clone()).gauged(&b);
        w.audit().unwrap();
        let fix = cyclic_trivializer(&w).unwrap();
        assert!(w.gauged(&fix).is_trivial());
        let reps = proj_irreps_for_cocycle(&w, 1).unwrap();
        assert!(reps.iter().all(|r| r.dim() == 1));
        assert_eq!(reps.len(), 4);
    }

    #[test]
    fn opposite_and_gauge_identities() {
        let w = klein_four_cocycle(v4()).unwrap();
        assert!(w.product(&w.opposite()).is_trivial());
        assert!(Cocycle::trivial(v4()).opposite().is_trivial());
        let reps = proj_irreps_for_cocycle(&w, 5).unwrap();
        let same = gauge(&reps[0], &[ONE; 4]).unwrap();
        assert!(max_abs_diff(same.matrix(3), reps[0].matrix(3)) < 1e-15);
        let b = [ONE, C64::new(0.0, 1.0), -ONE, C64::new(0.0, -1.0)];
        let g = gauge(&reps[0], &b).unwrap();
        g.audit().unwrap();
        assert!(g.cocycle().approx_eq(&w.gauged(&b)));
    }

    #[test]
    fn linking_rep_for_trivial_and_unfixed() {
        let z3 = Arc::new(cyclic(3));
        let z2 = Arc::new(cyclic(2));
        let inv = AutAction::from_generators(z2.clone(), z3.clone(), &[(1, vec![0, 2, 1])]).unwrap();
        let irr = irreps(&z3, 1).unwrap();
        let whole = Subgroup::whole(z2.clone());
        let v = linking_rep(&irr[0].rep, &whole, &inv).unwrap();
        assert!(v.cocycle().is_trivial());
        assert!(max_abs_diff(v.matrix(1), &identity(1)) < 1e-12);
        assert!(matches!(
            linking_rep(&irr[1].rep, &whole, &inv),
            Err(Error::NotFixed { lambda: 1 })
        ));
    }

    #[test]
    fn linking_rep_for_swap_fixed_character() {
        // Λ₀ = ℤ/2 swapping the factors of ℤ/2 ⊕ ℤ/2; the character (1,1) is fixed
        let g = v4();
        let z2 = Arc::new(cyclic(2));
        let swap = vec![0, 2, 1, 3];
        let act = AutAction::from_generators(z2.clone(), g.clone(), &[(1, swap)]).unwrap();
        let irr = irreps(&g, 1).unwrap();
        let fixed = irr
            .iter()
            .find(|c| (c.character[1] + ONE).norm() < 1e-9 && (c.character[2] + ONE).norm() < 1e-9)
            .unwrap();
        let v = linking_rep(&fixed.rep, &Subgroup::whole(z2.clone()), &act).unwrap();
        v.audit().unwrap();
        let sq = v.matrix(1) * v.matrix(1);
        assert!(max_abs_diff(&sq, &identity(1)) < 1e-12);
        let b = cyclic_trivializer(v.cocycle()).unwrap();
        assert!(v.cocycle().gauged(&b).is_trivial());
    }

    #[test]
    fn linking_rep_intertwines() {
        // Q8 with Λ₀ = inner automorphisms by i, j: the 2-dim irrep is fixed
        let q8 = Arc::new(crate::group::quaternion());
        let v4 = v4();
        let conj = |x: usize| -> Vec<usize> { q8.elements().map(|h| q8.conjugate(x, h)).collect() };
        let act = AutAction::from_generators(v4.clone(), q8.clone(), &[(2, conj(2)), (1, conj(4))])
            .unwrap();
        let irr = irreps(&q8, 1).unwrap();
        let two = irr.iter().find(|c| c.dim() == 2).unwrap();
        let v = linking_rep(&two.rep, &Subgroup::whole(v4.clone()), &act).unwrap();
        v.audit().unwrap();
        for l in v4.elements() {
            let linv = v4.inv(l);
            for g in q8.elements() {
                let lhs = v.matrix(l) * two.rep.matrix(act.apply(linv, g)) * v.matrix(l).adjoint();
                assert!(max_abs_diff(&lhs, two.rep.matrix(g)) < 1e-9);
            }
        }
    }
}
