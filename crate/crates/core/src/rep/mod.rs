//! Unitary representations of finite groups.

mod abelian;
pub(crate) mod split;

use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{
    block_diagonal, identity, kron, max_abs_diff, nullspace, quantize,
    round_multiplicity, unitarity_defect, CMat, C64, ONE,
};
use crate::{Error, Result};
use serde_json::json;
use std::cmp::Ordering;
use std::sync::Arc;

pub use split::Monomial;

pub const UNITARY_TOL: f64 = 1e-9;
pub const ROUND_TOL: f64 = 1e-6;
pub const CHAR_TOL: f64 = 1e-6;

/// A unitary matrix for every element of a finite group.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    mats: Vec<CMat>,
}

impl UnitaryRep {
    /// Checks shapes, unitarity and `ρ(e) = I`; see [`UnitaryRep::audit`] for
    /// the full multiplicativity check.
    pub fn new(group: Arc<FiniteGroup>, mats: Vec<CMat>) -> Result<Self> {
        if mats.len() != group.order() {
            return Err(Error::NotUnitaryRep(format!(
                "{} matrices for a group of order {}",
                mats.len(),
                group.order()
            )));
        }
        let dim = mats[0].nrows();
        for (g, m) in mats.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::NotUnitaryRep(format!("matrix {g} has the wrong shape")));
            }
            let d = unitarity_defect(m);
            if d > UNITARY_TOL {
                return Err(Error::NotUnitaryRep(format!(
                    "matrix of {} is not unitary (defect {d:.3e})",
                    group.name(g)
                )));
            }
        }
        if max_abs_diff(&mats[0], &identity(dim)) > UNITARY_TOL {
            return Err(Error::NotUnitaryRep("identity is not sent to I".into()));
        }
        Ok(UnitaryRep { group, dim, mats })
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, mats: Vec<CMat>) -> Self {
        let dim = mats.first().map_or(0, |m| m.nrows());
        UnitaryRep { group, dim, mats }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let mats = vec![identity(1); group.order()];
        UnitaryRep::new_unchecked(group, mats)
    }

    /// Left regular representation, `L(g) δ_h = δ_{gh}`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mats = group
            .elements()
            .map(|g| {
                let mut m = CMat::zeros(n, n);
                for h in 0..n {
                    m[(group.mul(g, h), h)] = ONE;
                }
                m
            })
            .collect();
        UnitaryRep::new_unchecked(group, mats)
    }

    /// Multiplicativity on every pair, unitarity, identity.
    pub fn audit(&self) -> Result<()> {
        UnitaryRep::new(self.group.clone(), self.mats.clone())?;
        let g = &self.group;
        let mut worst: f64 = 0.0;
        for a in g.elements() {
            for b in g.elements() {
                let d = max_abs_diff(&self.mats[g.mul(a, b)], &(&self.mats[a] * &self.mats[b]));
                worst = worst.max(d);
            }
        }
        if worst > UNITARY_TOL * 10.0 {
            return Err(Error::NotUnitaryRep(format!(
                "not multiplicative (defect {worst:.3e})"
            )));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.mats[g]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.mats
    }

    pub fn character(&self) -> Vec<C64> {
        self.mats.iter().map(|m| m.trace()).collect()
    }

    /// `{dim, matrices: {id: [[re, im], ...]}}` with row-major entries.
    pub fn to_json(&self) -> serde_json::Value {
        let mut mats = serde_json::Map::new();
        for (g, m) in self.mats.iter().enumerate() {
            let mut entries = Vec::with_capacity(self.dim * self.dim);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    entries.push(json!([m[(i, j)].re, m[(i, j)].im]));
                }
            }
            mats.insert(g.to_string(), serde_json::Value::Array(entries));
        }
        json!({"dim": self.dim, "matrices": mats})
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::NotUnitaryRep(format!(
            "representations of different groups ({} vs {})",
            a.label(),
            b.label()
        )))
    }
}

/// An irreducible class with a chosen unitary representative.
#[derive(Clone, Debug)]
pub struct IrrClass {
    pub id: usize,
    pub rep: UnitaryRep,
    pub character: Vec<C64>,
}

impl IrrClass {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

/// Canonical order of classes: dimension, then character values compared
/// element by element on quantized `(-re, -im)` (so the trivial class comes first).
pub fn canonical_cmp(a: (usize, &[C64]), b: (usize, &[C64])) -> Ordering {
    a.0.cmp(&b.0).then_with(|| {
        for (x, y) in a.1.iter().zip(b.1) {
            let kx = (quantize(-x.re), quantize(-x.im));
            let ky = (quantize(-y.re), quantize(-y.im));
            match kx.cmp(&ky) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

pub fn characters_equal(a: &[C64], b: &[C64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < CHAR_TOL)
}

/// Complete list of irreducible classes in canonical order.
///
/// Abelian groups get exact characters; otherwise the regular representation
/// is split with seeded randomness.
pub fn irreps(group: &Arc<FiniteGroup>, seed: u64) -> Result<Vec<IrrClass>> {
    let reps: Vec<UnitaryRep> = if group.is_abelian() {
        abelian::characters(group)
    } else {
        let family: Vec<Monomial> = group
            .elements()
            .map(|g| Monomial {
                target: group.elements().map(|h| group.mul(g, h)).collect(),
                phase: vec![ONE; group.order()],
            })
            .collect();
        split::split_monomial_family(&family, seed)?
            .into_iter()
            .map(|mats| UnitaryRep::new_unchecked(group.clone(), mats))
            .collect()
    };
    let mut classes: Vec<(UnitaryRep, Vec<C64>)> =
        reps.into_iter().map(|r| {
            let c = r.character();
            (r, c)
        }).collect();
    classes.sort_by(|a, b| canonical_cmp((a.0.dim(), &a.1), (b.0.dim(), &b.1)));
    let total: usize = classes.iter().map(|(r, _)| r.dim() * r.dim()).sum();
    if total != group.order() {
        return Err(Error::Completeness {
            expected: group.order(),
            got: total,
        });
    }
    Ok(classes
        .into_iter()
        .enumerate()
        .map(|(id, (rep, character))| IrrClass { id, rep, character })
        .collect())
}

/// `(1/|G|) Σ conj(a(g)) b(g)`
pub fn character_inner(a: &[C64], b: &[C64]) -> C64 {
    let s: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    s / (a.len() as f64)
}

pub fn character_multiplicity(a: &[C64], b: &[C64], what: &str) -> Result<usize> {
    round_multiplicity(character_inner(a, b), ROUND_TOL, what)
}

/// `dim Mor_G(u, v)` from characters.
pub fn mor_dim(u: &UnitaryRep, v: &UnitaryRep) -> Result<usize> {
    same_group(&u.group, &v.group)?;
    character_multiplicity(&u.character(), &v.character(), "mor_dim")
}

pub fn tensor(u: &UnitaryRep, v: &UnitaryRep) -> Result<UnitaryRep> {
    same_group(&u.group, &v.group)?;
    let mats = u.mats.iter().zip(&v.mats).map(|(a, b)| kron(a, b)).collect();
    Ok(UnitaryRep::new_unchecked(u.group.clone(), mats))
}

/// Entrywise complex conjugate, `ū(g) = conj(u(g)) = u(g⁻¹)ᵀ`.
pub fn conjugate(u: &UnitaryRep) -> UnitaryRep {
    let mats = u.mats.iter().map(|m| m.map(|z| z.conj())).collect();
    UnitaryRep::new_unchecked(u.group.clone(), mats)
}

pub fn direct_sum(reps: &[UnitaryRep]) -> Result<UnitaryRep> {
    let first = reps
        .first()
        .ok_or_else(|| Error::NotUnitaryRep("empty direct sum".into()))?;
    for r in reps {
        same_group(&first.group, &r.group)?;
    }
    let mats = first
        .group
        .elements()
        .map(|g| {
            let blocks: Vec<CMat> = reps.iter().map(|r| r.mats[g].clone()).collect();
            block_diagonal(&blocks)
        })
        .collect();
    Ok(UnitaryRep::new_unchecked(first.group.clone(), mats))
}

/// `g ↦ u(θ(g))` for a permutation `θ` of the group that is an automorphism.
pub fn pullback(u: &UnitaryRep, theta: &[usize]) -> UnitaryRep {
    let mats = theta.iter().map(|&t| u.mats[t].clone()).collect();
    UnitaryRep::new_unchecked(u.group.clone(), mats)
}

/// Representation on the subgroup (indexed by local ids).
pub fn restrict(w: &UnitaryRep, sub: &Subgroup) -> Result<UnitaryRep> {
    same_group(&w.group, sub.parent())?;
    let mats = sub.elements().iter().map(|&g| w.mats[g].clone()).collect();
    Ok(UnitaryRep::new_unchecked(sub.local().clone(), mats))
}

/// Induced representation, using the least element of each left coset as section.
pub fn induce(sub: &Subgroup, u: &UnitaryRep) -> Result<UnitaryRep> {
    same_group(&u.group, sub.local())?;
    let g = sub.parent();
    let reps = sub.left_coset_reps();
    let d = u.dim();
    let k = reps.len();
    let mats = g
        .elements()
        .map(|x| {
            let mut m = CMat::zeros(k * d, k * d);
            for (i, &ti) in reps.iter().enumerate() {
                for (j, &tj) in reps.iter().enumerate() {
                    let y = g.mul(g.mul(g.inv(ti), x), tj);
                    if let Some(l) = sub.local_id(y) {
                        m.view_mut((i * d, j * d), (d, d)).copy_from(&u.mats[l]);
                    }
                }
            }
            m
        })
        .collect();
    Ok(UnitaryRep::new_unchecked(g.clone(), mats))
}

/// Class of an irreducible character within `irr`, if any.
pub fn identify(irr: &[IrrClass], character: &[C64]) -> Option<usize> {
    irr.iter()
        .position(|c| characters_equal(&c.character, character))
}

/// Nonzero multiplicities of each irreducible class in `w`.
pub fn decompose(w: &UnitaryRep, irr: &[IrrClass]) -> Result<Vec<(usize, usize)>> {
    let chi = w.character();
    let mut out = Vec::new();
    let mut total = 0;
    for c in irr {
        let m = character_multiplicity(&c.character, &chi, "decompose")?;
        if m > 0 {
            out.push((c.id, m));
            total += m * c.dim();
        }
    }
    if total != w.dim() {
        return Err(Error::Completeness {
            expected: w.dim(),
            got: total,
        });
    }
    Ok(out)
}

/// HS-orthonormal basis of `Mor(u, v)`: matrices `X` with `v(g) X = X u(g)`.
///
/// Only a generating set of the group is used for the linear conditions.
pub fn intertwiners(u: &UnitaryRep, v: &UnitaryRep) -> Result<Vec<CMat>> {
    same_group(&u.group, &v.group)?;
    let gens = u.group.generating_set();
    let families_u: Vec<&CMat> = gens.iter().map(|&g| &u.mats[g]).collect();
    let families_v: Vec<&CMat> = gens.iter().map(|&g| &v.mats[g]).collect();
    Ok(intertwiner_basis(&families_u, &families_v))
}

/// Solve `B_i X = X A_i` for all `i`; returns an HS-orthonormal basis.
pub fn intertwiner_basis(a: &[&CMat], b: &[&CMat]) -> Vec<CMat> {
    let (du, dv) = (
        a.first().map_or(0, |m| m.nrows()),
        b.first().map_or(0, |m| m.nrows()),
    );
    let n = du * dv;
    if n == 0 {
        return Vec::new();
    }
    let mut stacked = CMat::zeros(n * a.len(), n);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let block = kron(&identity(du), bi) - kron(&ai.transpose(), &identity(dv));
        stacked.view_mut((i * n, 0), (n, n)).copy_from(&block);
    }
    let ns = nullspace(&stacked, 1e-10);
    (0..ns.ncols())
        .map(|c| CMat::from_column_slice(dv, du, ns.column(c).as_slice()))
        .collect()
}

/// `‖χ‖²` over the group.
pub fn character_norm2(chi: &[C64]) -> f64 {
    character_inner(chi, chi).re
}

pub(crate) fn hs_inner(a: &CMat, b: &CMat) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}
