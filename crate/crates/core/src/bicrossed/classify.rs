//! Irreducible representations of `Γ ⋈ K` as (β-orbit, isotype) pairs, their
//! conjugates, and fusion through the twisted tensor product.

use super::{beta_orbit, isotropy_at, BetaOrbit, MatchedPair};
use crate::fusion::FusionTable;
use crate::group::{GroupLaw, Subgroup};
use crate::linalg::{kron, round_multiplicity, CMat, C64};
use crate::mackey::{classify_semidirect, SemidirectClassification};
use crate::rep::{character_inner, characters_equal, irreps, UnitaryRep, ROUND_TOL};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Which points of `Γ` to classify over.
#[derive(Clone, Debug)]
pub enum GammaRange<E> {
    /// All of a finite `Γ`.
    All,
    /// The orbits meeting these points.
    Points(Vec<E>),
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypeDescriptor {
    /// Index among the irreducibles of the isotropy group.
    pub index: usize,
    /// For twist instances: the `Irr(G)` class under the parameter `(u, V, v)`.
    pub g_class: Option<usize>,
    /// For twist instances: index of `v` among the projective irreducibles.
    pub v_index: Option<usize>,
    /// For twist instances: the stabilizer `Λ₀` as ids of `Λ`.
    pub lambda0: Option<Vec<usize>>,
}

/// An irreducible representation of the isotropy group of an orbit's base point.
#[derive(Clone, Debug)]
pub struct Isotype {
    pub rep: UnitaryRep,
    pub character: Vec<C64>,
    pub descriptor: IsotypeDescriptor,
}

impl Isotype {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitData<E> {
    pub orbit: BetaOrbit<E>,
    pub isotypes: Vec<Isotype>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BicrossedIrrClass {
    pub id: usize,
    pub orbit: usize,
    pub isotype: usize,
    /// `|orbit| · dim(isotype)`
    pub dim: usize,
}

pub struct BicrossedClassification<D: GroupLaw> {
    mp: MatchedPair<D>,
    orbits: Vec<OrbitData<D::Elem>>,
    classes: Vec<BicrossedIrrClass>,
    complete: bool,
}

type Memo = Mutex<HashMap<Vec<usize>, Arc<SemidirectClassification>>>;

fn twist_isotypes<D: GroupLaw>(
    mp: &MatchedPair<D>,
    orbit: &BetaOrbit<D::Elem>,
    memo: &Memo,
    seed: u64,
) -> Result<Vec<Isotype>> {
    let twist = mp.twist().expect("twist data");
    let product = twist.product();
    let n = twist.g().order();
    let lambda_gamma: Vec<usize> = (0..twist.lambda().order())
        .filter(|&r| orbit.isotropy().contains(product.encode(0, r)))
        .collect();
    if orbit.isotropy().order() != n * lambda_gamma.len() {
        return Err(Error::NotSubgroup("isotropy is not of the form G ⋊ Λ_γ".into()));
    }
    let cls = {
        let cached = memo.lock().unwrap().get(&lambda_gamma).cloned();
        match cached {
            Some(c) => c,
            None => {
                let sub = Subgroup::new(twist.lambda().clone(), &lambda_gamma)?;
                let action = product.action().restrict(&sub);
                let local = Arc::new(crate::group::semidirect_product(&action));
                let c = Arc::new(classify_semidirect(&local, seed)?);
                memo.lock()
                    .unwrap()
                    .entry(lambda_gamma.clone())
                    .or_insert(c)
                    .clone()
            }
        }
    };
    // local ids of G ⋊ Λ_γ and of the isotropy subgroup coincide: both order by (r, g)
    let local = orbit.isotropy().local().clone();
    Ok(cls
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let rep = UnitaryRep::new_unchecked(local.clone(), c.realized.matrices().to_vec());
            let lambda0 = c
                .drp
                .lambda0
                .elements()
                .iter()
                .map(|&r| lambda_gamma[r])
                .collect();
            Isotype {
                character: c.character.clone(),
                rep,
                descriptor: IsotypeDescriptor {
                    index: i,
                    g_class: Some(c.orbit_rep),
                    v_index: Some(c.v_index),
                    lambda0: Some(lambda0),
                },
            }
        })
        .collect())
}

fn generic_isotypes<E>(orbit: &BetaOrbit<E>, seed: u64) -> Result<Vec<Isotype>> {
    Ok(irreps(orbit.isotropy.local(), seed)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| Isotype {
            rep: c.rep,
            character: c.character,
            descriptor: IsotypeDescriptor {
                index: i,
                g_class: None,
                v_index: None,
                lambda0: None,
            },
        })
        .collect())
}

/// One class per (β-orbit, irreducible of the base isotropy). Orbits are
/// ordered by size and then by base point; isotypes canonically.
pub fn classify_bicrossed<D: GroupLaw>(
    mp: &MatchedPair<D>,
    range: GammaRange<D::Elem>,
    seed: u64,
) -> Result<BicrossedClassification<D>> {
    let (points, complete) = match range {
        GammaRange::All => (
            mp.gamma()
                .finite_elements()
                .ok_or_else(|| Error::Unsupported("classification over all of an infinite group".into()))?,
            true,
        ),
        GammaRange::Points(p) => (p, false),
    };
    let mut orbits: Vec<BetaOrbit<D::Elem>> = Vec::new();
    let mut covered = std::collections::BTreeSet::new();
    for p in &points {
        if covered.contains(p) {
            continue;
        }
        let o = beta_orbit(mp, p);
        for e in o.elements() {
            covered.insert(e.clone());
        }
        orbits.push(o);
    }
    orbits.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.base().cmp(b.base())));
    let memo: Memo = Mutex::new(HashMap::new());
    let isotypes: Vec<Vec<Isotype>> = orbits
        .par_iter()
        .map(|o| {
            if mp.twist().is_some() {
                twist_isotypes(mp, o, &memo, seed)
            } else {
                generic_isotypes(o, seed)
            }
        })
        .collect::<Result<_>>()?;
    let mut classes = Vec::new();
    let mut data = Vec::new();
    for (oi, (orbit, iso)) in orbits.into_iter().zip(isotypes).enumerate() {
        let total: usize = iso.iter().map(|i| i.dim() * i.dim()).sum();
        if total != orbit.isotropy().order() {
            return Err(Error::Completeness {
                expected: orbit.isotropy().order(),
                got: total,
            });
        }
        for (ii, t) in iso.iter().enumerate() {
            classes.push(BicrossedIrrClass {
                id: classes.len(),
                orbit: oi,
                isotype: ii,
                dim: orbit.len() * t.dim(),
            });
        }
        data.push(OrbitData { orbit, isotypes: iso });
    }
    let cls = BicrossedClassification {
        mp: mp.clone(),
        orbits: data,
        classes,
        complete,
    };
    if complete {
        let expected = points.len() * mp.compact().order();
        let got = cls.total_dim_squared();
        if expected != got {
            return Err(Error::Completeness { expected, got });
        }
    }
    Ok(cls)
}

impl<D: GroupLaw> BicrossedClassification<D> {
    pub fn matched_pair(&self) -> &MatchedPair<D> {
        &self.mp
    }

    pub fn classes(&self) -> &[BicrossedIrrClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether every orbit of a finite `Γ` was classified.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn orbits(&self) -> &[OrbitData<D::Elem>] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> &BetaOrbit<D::Elem> {
        &self.orbits[self.classes[x].orbit].orbit
    }

    pub fn isotype_of(&self, x: usize) -> &Isotype {
        let c = &self.classes[x];
        &self.orbits[c.orbit].isotypes[c.isotype]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.dim).collect()
    }

    pub fn total_dim_squared(&self) -> usize {
        self.classes.iter().map(|c| c.dim * c.dim).sum()
    }

    /// Index of the orbit containing `gamma`, if classified.
    pub fn find_orbit(&self, gamma: &D::Elem) -> Option<usize> {
        self.orbits.iter().position(|o| o.orbit.contains(gamma))
    }

    /// The class over the orbit with the given isotype index.
    pub fn class_at(&self, orbit: usize, isotype: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.orbit == orbit && c.isotype == isotype)
            .expect("class exists")
    }

    pub fn unit(&self) -> usize {
        let e = self.mp.gamma().identity();
        let o = self.find_orbit(&e).expect("identity orbit is classified");
        self.class_at(o, 0)
    }

    /// The trivial O-representation of an orbit: its first isotype, which is
    /// the trivial representation because isotypes are canonically ordered.
    pub fn orbit_trivial_class(&self, orbit: usize) -> usize {
        self.class_at(orbit, 0)
    }

    /// `u_{r,s}(k)` of the O-representation of class `x`, `None` off `K_{r,s}`.
    pub fn orep_block(&self, x: usize, r: usize, s: usize, k: usize) -> Option<&CMat> {
        let orbit = self.orbit_of(x);
        let (re, se) = (&orbit.elements()[r], &orbit.elements()[s]);
        if &self.mp.beta(re, k) != se {
            return None;
        }
        let kg = self.mp.compact();
        let h = kg.mul(kg.mul(orbit.section(r), k), kg.inv(orbit.section(s)));
        let local = orbit.isotropy().local_id(h).expect("conjugated into the isotropy");
        Some(self.isotype_of(x).rep.matrix(local))
    }

    fn orep_trace(&self, x: usize, r: usize, k: usize) -> C64 {
        self.orep_block(x, r, r, k).map_or(C64::new(0.0, 0.0), |m| m.trace())
    }

    /// `U₁ ×_γ U₂` on the span of pairs `(r₁, r₂)` with `r₁ r₂ = γ`, as a
    /// representation of the isotropy of `γ`: block `((r₁,r₂),(s₁,s₂))` is
    /// `u¹_{r₁,s₁}(α_{r₂}(g)) ⊗ u²_{r₂,s₂}(g)`.
    pub fn twisted_tensor_rep(&self, x1: usize, x2: usize, gamma: &D::Elem) -> Result<Option<(Subgroup, UnitaryRep)>> {
        let pairs = self.pairs_over(x1, x2, gamma);
        if pairs.is_empty() {
            return Ok(None);
        }
        let stab = isotropy_at(&self.mp, gamma);
        let (d1, d2) = (self.isotype_of(x1).dim(), self.isotype_of(x2).dim());
        let block = d1 * d2;
        let o2 = self.orbit_of(x2);
        let mats = stab
            .elements()
            .iter()
            .map(|&g| {
                let mut m = CMat::zeros(pairs.len() * block, pairs.len() * block);
                for (p, &(r1, r2)) in pairs.iter().enumerate() {
                    let twisted = self.mp.alpha(&o2.elements()[r2], g);
                    for (q, &(s1, s2)) in pairs.iter().enumerate() {
                        if let (Some(a), Some(b)) =
                            (self.orep_block(x1, r1, s1, twisted), self.orep_block(x2, r2, s2, g))
                        {
                            m.view_mut((p * block, q * block), (block, block))
                                .copy_from(&kron(a, b));
                        }
                    }
                }
                m
            })
            .collect();
        let rep = UnitaryRep::new(stab.local().clone(), mats)?;
        Ok(Some((stab, rep)))
    }

    fn pairs_over(&self, x1: usize, x2: usize, gamma: &D::Elem) -> Vec<(usize, usize)> {
        let (o1, o2) = (self.orbit_of(x1), self.orbit_of(x2));
        let g = self.mp.gamma();
        let mut pairs = Vec::new();
        for (i, a) in o1.elements().iter().enumerate() {
            for (j, b) in o2.elements().iter().enumerate() {
                if &g.mul(a, b) == gamma {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// `dim Mor_{K_γ}(u³_{γ,γ}, U₁ ×_γ U₂)` by characters, with `γ` the
    /// `gamma_index`-th point of the orbit of `x₃`.
    pub fn fusion_at(&self, x1: usize, x2: usize, x3: usize, gamma_index: usize) -> Result<usize> {
        let o3 = self.orbit_of(x3);
        let gamma = &o3.elements()[gamma_index];
        let pairs = self.pairs_over(x1, x2, gamma);
        if pairs.is_empty() {
            return Ok(0);
        }
        let stab = if gamma_index == 0 {
            o3.isotropy().clone()
        } else {
            isotropy_at(&self.mp, gamma)
        };
        let o2 = self.orbit_of(x2);
        let chi_t: Vec<C64> = stab
            .elements()
            .iter()
            .map(|&g| {
                pairs
                    .iter()
                    .map(|&(r1, r2)| {
                        let twisted = self.mp.alpha(&o2.elements()[r2], g);
                        self.orep_trace(x1, r1, twisted) * self.orep_trace(x2, r2, g)
                    })
                    .sum()
            })
            .collect();
        let chi3: Vec<C64> = stab
            .elements()
            .iter()
            .map(|&g| self.orep_trace(x3, gamma_index, g))
            .collect();
        round_multiplicity(character_inner(&chi3, &chi_t), ROUND_TOL, "twisted tensor multiplicity")
    }

    /// `N_{x₁x₂}^{x₃} = dim Mor(W₃, W₁ × W₂)`, checked to be the same at every
    /// point of the orbit of `x₃`.
    pub fn fusion(&self, x1: usize, x2: usize, x3: usize) -> Result<usize> {
        let o3 = self.orbit_of(x3);
        let values = (0..o3.len())
            .map(|i| self.fusion_at(x1, x2, x3, i))
            .collect::<Result<Vec<_>>>()?;
        if values.iter().any(|&v| v != values[0]) {
            return Err(Error::BasePointDependence(values));
        }
        Ok(values[0])
    }

    /// Conjugate class: over the inverse orbit, with isotype `conj(ψ ∘ α_{γ⁻¹})`
    /// at `γ⁻¹` transported to the base point of the inverse orbit.
    pub fn conjugate(&self, x: usize) -> Result<usize> {
        let g = self.mp.gamma();
        let k = self.mp.compact();
        let orbit = self.orbit_of(x);
        let psi = &self.isotype_of(x).rep;
        let gamma_inv = g.inv(orbit.base());
        let oi = self
            .find_orbit(&gamma_inv)
            .ok_or_else(|| Error::ClassNotFound("inverse orbit is not classified".into()))?;
        let target = &self.orbits[oi];
        let pos = target.orbit.position(&gamma_inv).expect("inverse lies in its orbit");
        let sigma = target.orbit.section(pos);
        let sigma_inv = k.inv(sigma);
        let chi: Vec<C64> = target
            .orbit
            .isotropy()
            .elements()
            .iter()
            .map(|&h| {
                // h fixes the base; σ⁻¹ h σ fixes γ⁻¹; α_{γ⁻¹} moves it into the isotropy of γ
                let at_inverse = k.mul(k.mul(sigma_inv, h), sigma);
                let moved = self.mp.alpha(&gamma_inv, at_inverse);
                let local = orbit.isotropy().local_id(moved).ok_or_else(|| {
                    Error::NotInvariant("α_{γ⁻¹} does not map the isotropy of γ⁻¹ onto that of γ".into())
                })?;
                Ok(psi.matrix(local).trace().conj())
            })
            .collect::<Result<_>>()?;
        let iso = target
            .isotypes
            .iter()
            .position(|t| characters_equal(&t.character, &chi))
            .ok_or_else(|| Error::ClassNotFound(format!("conjugate of class {x}")))?;
        Ok(self.class_at(oi, iso))
    }

    /// Full fusion table by twisted tensor products (finite `Γ` only).
    pub fn fusion_table(&self) -> Result<FusionTable> {
        if !self.complete {
            return Err(Error::Unsupported("fusion table of a partial classification".into()));
        }
        let conj = (0..self.len()).map(|x| self.conjugate(x)).collect::<Result<Vec<_>>>()?;
        FusionTable::build(self.dims(), self.unit(), conj, |x, y, z| self.fusion(x, y, z))
    }

    /// Class-table rows for export.
    pub fn describe(&self) -> Vec<serde_json::Value> {
        let g = self.mp.gamma();
        self.classes
            .iter()
            .map(|c| {
                let o = &self.orbits[c.orbit];
                let words: Vec<String> = o.orbit.elements().iter().map(|e| g.describe(e)).collect();
                serde_json::json!({
                    "class": c.id,
                    "orbit": words,
                    "base": g.describe(o.orbit.base()),
                    "isotype": o.isotypes[c.isotype].descriptor,
                    "isotype_dim": o.isotypes[c.isotype].dim(),
                    "dim": c.dim,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::s3_twist;
    use super::*;
    use crate::group::{cyclic, FiniteGroup};

    #[test]
    fn s3_twist_classes() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        assert_eq!(cls.dims(), vec![1, 1, 2, 1, 1, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!(cls.total_dim_squared(), 36);
        assert_eq!(cls.unit(), 0);
        let bases: Vec<usize> = cls.orbits().iter().map(|o| *o.orbit.base()).collect();
        assert_eq!(bases, vec![0, 2, 1, 3]);
    }

    #[test]
    fn conjugation_is_an_involution_preserving_dims() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        for x in 0..cls.len() {
            let y = cls.conjugate(x).unwrap();
            assert_eq!(cls.conjugate(y).unwrap(), x);
            assert_eq!(cls.dims()[x], cls.dims()[y]);
        }
        // the orbit {(23),(13)} is closed under inversion
        for x in 6..9 {
            assert_eq!(cls.classes()[cls.conjugate(x).unwrap()].orbit, 2);
        }
    }

    #[test]
    fn fusion_unit_and_dimension_bookkeeping() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let n = cls.len();
        for x in 0..n {
            for z in 0..n {
                assert_eq!(cls.fusion(x, 0, z).unwrap(), usize::from(x == z));
            }
        }
        // 2-dim classes over {(23),(13)} only fuse into orbits inside {e,(123),(132)}
        for x in 6..9 {
            let total: usize = (0..n).map(|z| cls.fusion(x, x, z).unwrap() * cls.dims()[z]).sum();
            assert_eq!(total, 4);
            for z in 0..n {
                if cls.fusion(x, x, z).unwrap() > 0 {
                    assert!(matches!(cls.classes()[z].orbit, 0 | 3));
                }
            }
        }
    }

    #[test]
    fn twisted_tensor_is_a_representation() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        for x1 in 0..cls.len() {
            for x2 in 0..cls.len() {
                for gamma in 0..6 {
                    if let Some((_, rep)) = cls.twisted_tensor_rep(x1, x2, &gamma).unwrap() {
                        rep.audit().unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_actions_give_product_theory() {
        let gamma = Arc::new(cyclic(3));
        let k = Arc::new(crate::group::symmetric(3).unwrap());
        let mp: MatchedPair<FiniteGroup> = MatchedPair::trivial(gamma, k);
        let cls = classify_bicrossed(&mp, GammaRange::All, 1).unwrap();
        assert_eq!(cls.dims(), vec![1, 1, 2, 1, 1, 2, 1, 1, 2]);
        let t = cls.fusion_table().unwrap();
        assert!(t.audit().is_clean());
    }

    #[test]
    fn other_sections_give_the_same_orep_character() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let k = mp.compact();
        for x in 0..cls.len() {
            let orbit = cls.orbit_of(x);
            let psi = &cls.isotype_of(x).rep;
            let base = *orbit.base();
            // largest element carrying the base point to each orbit point
            let sections: Vec<usize> = orbit
                .elements()
                .iter()
                .map(|mu| k.elements().rev().find(|&g| mp.beta(&base, g) == *mu).unwrap())
                .collect();
            for g in k.elements() {
                let mut ours = C64::new(0.0, 0.0);
                let mut theirs = C64::new(0.0, 0.0);
                for (r, mu) in orbit.elements().iter().enumerate() {
                    if mp.beta(mu, g) != *mu {
                        continue;
                    }
                    ours += cls.orep_block(x, r, r, g).unwrap().trace();
                    let h = k.mul(k.mul(sections[r], g), k.inv(sections[r]));
                    theirs += psi.matrix(orbit.isotropy().local_id(h).unwrap()).trace();
                }
                assert!((ours - theirs).norm() < 1e-9, "class {x} at {g}");
            }
        }
    }
}
