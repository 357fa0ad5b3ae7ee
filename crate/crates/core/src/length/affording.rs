//! Length families on `Irr(Γ ⋈ K)` assembled orbit by orbit from a
//! β-invariant length on `Γ` and a `Γ`-invariant length on `Irr(G)`.

use super::{dual_length_semidirect, invariance_check, irr_pullback_perm, DualLength, GroupLength, Length};
use crate::bicrossed::BicrossedClassification;
use crate::group::GroupLaw;
use crate::mackey::classify_semidirect;
use crate::rep::{irreps, IrrClass};
use crate::{Error, Result};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

/// One value per classified class: `l_𝒪(x)` for the orbit `𝒪` of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffordingFamily {
    pub values: DualLength,
}

impl AffordingFamily {
    pub fn value(&self, x: usize) -> Length {
        self.values.get(x)
    }

    /// A copy with one value replaced.
    pub fn perturbed(&self, x: usize, value: Length) -> Self {
        let mut out = self.clone();
        out.values.0[x] = value;
        out
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AffordingReport {
    /// Classes `ε_𝒪` of the identity orbit with nonzero value.
    pub epsilon: Vec<usize>,
    /// Classes `x` with `l(x̄) ≠ l(x)`.
    pub conjugation: Vec<usize>,
    /// Triples with `N_{xy}^z ≠ 0` and `l(z) > l(x) + l(y)`.
    pub triangle: Vec<(usize, usize, usize)>,
    /// Classes over `{e}` whose value differs from the length on `Irr(G ⋊ Λ)`.
    pub trivial_orbit: Vec<usize>,
    /// Orbits on which `l_Γ` is not the value at `ε_𝒪`.
    pub orbit_constancy: Vec<usize>,
    pub triples_checked: usize,
}

impl AffordingReport {
    pub fn violation_count(&self) -> usize {
        self.epsilon.len()
            + self.conjugation.len()
            + self.triangle.len()
            + self.trivial_orbit.len()
            + self.orbit_constancy.len()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }
}

fn g_irreps<D: GroupLaw>(cls: &BicrossedClassification<D>) -> Result<Vec<IrrClass>> {
    let twist = cls
        .matched_pair()
        .twist()
        .ok_or_else(|| Error::Unsupported("affording families need a twist instance".into()))?;
    irreps(twist.g(), 0)
}

/// `l_𝒪(Ψ_γ[(u, V, v)]) = l_Ĝ([u]) + l_Γ(γ)` on every classified orbit.
pub fn build_affording_family<D: GroupLaw>(
    cls: &BicrossedClassification<D>,
    l_gamma: &GroupLength<D::Elem>,
    l_ghat: &DualLength,
) -> Result<AffordingFamily>
where
    D::Elem: 'static,
{
    let mp = cls.matched_pair();
    let twist = mp.twist().expect("checked by g_irreps");
    let irr = g_irreps(cls)?;
    if l_ghat.len() != irr.len() {
        return Err(Error::InvalidTable("l_Ĝ has the wrong number of classes".into()));
    }
    let gamma = mp.gamma();
    let perms = gamma
        .generators()
        .iter()
        .map(|g| irr_pullback_perm(&irr, &twist.tau(g)))
        .collect::<Result<Vec<_>>>()?;
    if !invariance_check(l_ghat, &perms) {
        return Err(Error::NotInvariant("l_Ĝ is not Γ-invariant".into()));
    }
    for o in cls.orbits() {
        let base = l_gamma.value(o.orbit.base());
        if let Some(e) = o.orbit.elements().iter().find(|e| l_gamma.value(e) != base) {
            return Err(Error::NotInvariant(format!(
                "l_Γ is not β-invariant at {}",
                gamma.describe(e)
            )));
        }
    }
    let values = cls
        .classes()
        .iter()
        .map(|c| {
            let u = cls
                .isotype_of(c.id)
                .descriptor
                .g_class
                .expect("twist isotypes carry their Irr(G) class");
            l_ghat.get(u) + l_gamma.value(cls.orbits()[c.orbit].orbit.base())
        })
        .collect();
    Ok(AffordingFamily {
        values: DualLength(values),
    })
}

/// Audits the five matching conditions. The triangle inequality is checked
/// on all triples of `scope` (all classes when `None`) with nonzero fusion.
pub fn affording_family_check<D: GroupLaw>(
    cls: &BicrossedClassification<D>,
    fam: &AffordingFamily,
    l_gamma: &GroupLength<D::Elem>,
    l_ghat: &DualLength,
    scope: Option<&[usize]>,
) -> Result<AffordingReport>
where
    D::Elem: 'static,
{
    let mp = cls.matched_pair();
    let gamma = mp.gamma();
    let mut r = AffordingReport::default();
    let e = gamma.identity();
    let unit_orbit = cls
        .find_orbit(&e)
        .ok_or_else(|| Error::ClassNotFound("identity orbit".into()))?;

    let unit = cls.unit();
    if !fam.value(unit).is_zero() {
        r.epsilon.push(unit);
    }

    let all: Vec<usize> = (0..cls.len()).collect();
    let scope = scope.unwrap_or(&all);
    for &x in scope {
        let y = cls.conjugate(x)?;
        if fam.value(y) != fam.value(x) {
            r.conjugation.push(x);
        }
    }

    let n = scope.len();
    let triangle: Vec<Result<Option<(usize, usize, usize)>>> = (0..n * n * n)
        .into_par_iter()
        .map(|i| {
            let (x, y, z) = (scope[i / (n * n)], scope[(i / n) % n], scope[i % n]);
            if fam.value(z) <= fam.value(x) + fam.value(y) {
                return Ok(None);
            }
            Ok((cls.fusion(x, y, z)? > 0).then_some((x, y, z)))
        })
        .collect();
    for t in triangle {
        if let Some(v) = t? {
            r.triangle.push(v);
        }
    }
    r.triples_checked = n * n * n;

    // over {e} the classes are Irr(G ⋊ Λ); compare with the semidirect length
    let twist = mp
        .twist()
        .ok_or_else(|| Error::Unsupported("affording families need a twist instance".into()))?;
    let semidirect = classify_semidirect(twist.product(), 0)?;
    let l_k = dual_length_semidirect(&semidirect, l_ghat)?;
    for (i, iso) in cls.orbits()[unit_orbit].isotypes.iter().enumerate() {
        let x = cls.class_at(unit_orbit, i);
        let k_class = semidirect
            .identify_character(&iso.character)
            .ok_or_else(|| Error::ClassNotFound(format!("class {x} in Irr(G ⋊ Λ)")))?;
        if fam.value(x) != l_k.get(k_class) {
            r.trivial_orbit.push(x);
        }
    }

    for (oi, o) in cls.orbits().iter().enumerate() {
        let eps = fam.value(cls.orbit_trivial_class(oi));
        if o.orbit.elements().iter().any(|g| l_gamma.value(g) != eps) {
            r.orbit_constancy.push(oi);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicrossed::{classify_bicrossed, twist_finite, GammaRange};
    use crate::group::{cyclic, symmetric, FiniteGroup};
    use std::sync::Arc;

    fn s3_setup() -> (BicrossedClassification<FiniteGroup>, GroupLength<usize>, DualLength) {
        let s3 = Arc::new(symmetric(3).unwrap());
        let inv = vec![0, 2, 1];
        let mp = twist_finite(s3.clone(), Arc::new(cyclic(3)), &[(1, inv.clone()), (2, inv)], &[2]).unwrap();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let l = GroupLength::finite_word(s3.clone(), &[2, 5])
            .unwrap()
            .average_by_conjugation(s3, &[0, 2])
            .unwrap();
        (cls, l, DualLength::from_integers(&[0, 1, 1]))
    }

    #[test]
    fn s3_family_is_affording() {
        let (cls, l_gamma, l_ghat) = s3_setup();
        let fam = build_affording_family(&cls, &l_gamma, &l_ghat).unwrap();
        let report = affording_family_check(&cls, &fam, &l_gamma, &l_ghat, None).unwrap();
        assert!(report.is_clean(), "{report:?}");
        assert_eq!(report.triples_checked, 12 * 12 * 12);
        // orbit {(23),(13)} has l_Γ = 2; its isotype with l_Ĝ = 1 gets 3
        let orbit = cls.find_orbit(&5).unwrap();
        let values: Vec<i64> = cls
            .classes()
            .iter()
            .filter(|c| c.orbit == orbit)
            .map(|c| fam.value(c.id).to_integer())
            .collect();
        assert_eq!(values, vec![2, 3, 3]);
        assert_eq!(fam.value(cls.unit()), Length::zero());
    }

    #[test]
    fn lowered_value_is_caught() {
        let (cls, l_gamma, l_ghat) = s3_setup();
        let fam = build_affording_family(&cls, &l_gamma, &l_ghat).unwrap();
        let orbit = cls.find_orbit(&2).unwrap();
        let x = cls.orbit_trivial_class(orbit);
        assert_eq!(fam.value(x), Length::from_integer(1));
        let bad = fam.perturbed(x, Length::zero());
        let report = affording_family_check(&cls, &bad, &l_gamma, &l_ghat, None).unwrap();
        assert!(!report.triangle.is_empty(), "{report:?}");
        assert_eq!(report.orbit_constancy, vec![orbit]);
    }

    #[test]
    fn trivial_pair_is_clean() {
        let z2 = Arc::new(cyclic(2));
        let mp = twist_finite(z2.clone(), Arc::new(cyclic(3)), &[(1, vec![0, 1, 2])], &[]).unwrap();
        let cls = classify_bicrossed(&mp, GammaRange::All, 0).unwrap();
        let l_gamma = GroupLength::finite_word(z2, &[1]).unwrap();
        let l_ghat = DualLength::from_integers(&[0, 1, 1]);
        let fam = build_affording_family(&cls, &l_gamma, &l_ghat).unwrap();
        assert!(affording_family_check(&cls, &fam, &l_gamma, &l_ghat, None).unwrap().is_clean());
    }

    #[test]
    fn non_invariant_inputs_are_rejected() {
        let (cls, l_gamma, _) = s3_setup();
        assert!(matches!(
            build_affording_family(&cls, &l_gamma, &DualLength::from_integers(&[0, 1, 2])),
            Err(Error::NotInvariant(_))
        ));
        let raw = GroupLength::finite_word(Arc::new(symmetric(3).unwrap()), &[2, 5]).unwrap();
        assert!(matches!(
            build_affording_family(&cls, &raw, &DualLength::from_integers(&[0, 1, 1])),
            Err(Error::NotInvariant(_))
        ));
    }
}
