//! The finite quantum group of a matched pair of finite groups, realized on
//! `ℓ²(Γ × K)`: corepresentation matrices, Haar state, Fourier transform,
//! Sobolev-0 norm and automorphisms.

use super::{BicrossedClassification, MatchedPair};
use crate::group::{automorphisms, FiniteGroup};
use crate::linalg::{identity, max_abs_diff, operator_norm, round_multiplicity, CMat, C64, ZERO};
use crate::rep::ROUND_TOL;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// An element of `c_c(Ĥ)`: one `dim x × dim x` block per class in the support.
#[derive(Clone, Debug, Default)]
pub struct BlockElement(pub BTreeMap<usize, CMat>);

impl BlockElement {
    /// The central projection `p_x`.
    pub fn projection(x: usize, dim: usize) -> Self {
        BlockElement(BTreeMap::from([(x, identity(dim))]))
    }

    /// Gaussian entries on the given classes.
    pub fn random(support: &[usize], dims: &[usize], rng: &mut impl Rng) -> Self {
        let normal = rand_distr::StandardNormal;
        let mut out = BTreeMap::new();
        for &x in support {
            let d = dims[x];
            out.insert(
                x,
                CMat::from_fn(d, d, |_, _| C64::new(rng.sample(normal), rng.sample(normal))),
            );
        }
        BlockElement(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorepAudit {
    pub max_unitarity_defect: f64,
    /// `(class, r, s, k₁, k₂)` where `F_{r,s}(k₁k₂) ≠ F_{r,t}(k₁) F_{t,s}(k₂)`.
    pub comultiplication_violations: Vec<(usize, usize, usize, usize, usize)>,
}

impl CorepAudit {
    pub fn is_clean(&self, tol: f64) -> bool {
        self.max_unitarity_defect <= tol && self.comultiplication_violations.is_empty()
    }
}

pub struct FiniteQuantumAlgebra<'a> {
    cls: &'a BicrossedClassification<FiniteGroup>,
    n_k: usize,
    size: usize,
    /// `coreps[x][p * d + q] = U^x_{p,q}`
    coreps: Vec<Vec<CMat>>,
    characters: Vec<CMat>,
}

impl<'a> FiniteQuantumAlgebra<'a> {
    /// Realize every class of a complete classification as a unitary
    /// corepresentation `U_{(r,i),(s,j)} = λ(r) π(F^{ij}_{r,s})` with
    /// `F_{r,s}(k) = [β_k(r) = s] ψ(σ_r k σ_s⁻¹)`.
    pub fn new(cls: &'a BicrossedClassification<FiniteGroup>) -> Result<Self> {
        if !cls.is_complete() {
            return Err(Error::Unsupported("Fourier transform needs a finite, fully classified Γ".into()));
        }
        let mp = cls.matched_pair();
        let (n_g, n_k) = (mp.gamma().order(), mp.compact().order());
        let size = n_g * n_k;
        let coreps: Vec<Vec<CMat>> = (0..cls.len())
            .into_par_iter()
            .map(|x| realize_class(cls, x, n_g, n_k))
            .collect();
        let characters = coreps
            .iter()
            .map(|u| {
                let d = (u.len() as f64).sqrt() as usize;
                (0..d).fold(CMat::zeros(size, size), |acc, p| acc + &u[p * d + p])
            })
            .collect();
        Ok(FiniteQuantumAlgebra {
            cls,
            n_k,
            size,
            coreps,
            characters,
        })
    }

    pub fn classification(&self) -> &BicrossedClassification<FiniteGroup> {
        self.cls
    }

    pub fn matched_pair(&self) -> &MatchedPair<FiniteGroup> {
        self.cls.matched_pair()
    }

    /// `|Γ|·|K|`, the dimension of the regular representation space.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dims(&self) -> Vec<usize> {
        self.cls.dims()
    }

    pub fn corep_entry(&self, x: usize, p: usize, q: usize) -> &CMat {
        let d = self.cls.dims()[x];
        &self.coreps[x][p * d + q]
    }

    pub fn character(&self, x: usize) -> &CMat {
        &self.characters[x]
    }

    /// `U^x` as one `(d·N) × (d·N)` unitary.
    pub fn corep_matrix(&self, x: usize) -> CMat {
        let d = self.cls.dims()[x];
        let n = self.size;
        let mut m = CMat::zeros(d * n, d * n);
        for p in 0..d {
            for q in 0..d {
                m.view_mut((p * n, q * n), (n, n)).copy_from(&self.coreps[x][p * d + q]);
            }
        }
        m
    }

    /// `h(X) = (1/|K|) Σ_k X[(e,k),(e,k)]`.
    pub fn haar(&self, m: &CMat) -> C64 {
        (0..self.n_k).map(|k| m[(k, k)]).sum::<C64>() / self.n_k as f64
    }

    /// `h(A* B)`, read off the columns over the identity of `Γ`.
    pub fn haar_inner(&self, a: &CMat, b: &CMat) -> C64 {
        let mut s = ZERO;
        for k in 0..self.n_k {
            s += a.column(k).dotc(&b.column(k));
        }
        s / self.n_k as f64
    }

    /// `N_{xy}^z = h(χ_z* χ_x χ_y)`.
    pub fn oracle_fusion(&self, x: usize, y: usize, z: usize) -> Result<usize> {
        let prod = &self.characters[x] * &self.characters[y];
        round_multiplicity(self.haar_inner(&self.characters[z], &prod), ROUND_TOL, "Haar fusion")
    }

    /// The class whose character is `χ_x*`.
    pub fn oracle_conjugate(&self, x: usize) -> Result<usize> {
        let target = self.characters[x].adjoint();
        (0..self.cls.len())
            .find(|&y| (self.haar_inner(&self.characters[y], &target) - 1.0).norm() < ROUND_TOL)
            .ok_or_else(|| Error::ClassNotFound(format!("Haar conjugate of class {x}")))
    }

    pub fn oracle_fusion_table(&self) -> Result<crate::fusion::FusionTable> {
        let conj = (0..self.cls.len())
            .map(|x| self.oracle_conjugate(x))
            .collect::<Result<Vec<_>>>()?;
        let n = self.cls.len();
        let products: Vec<CMat> = (0..n * n)
            .into_par_iter()
            .map(|xy| &self.characters[xy / n] * &self.characters[xy % n])
            .collect();
        crate::fusion::FusionTable::build(self.dims(), self.cls.unit(), conj, |x, y, z| {
            round_multiplicity(
                self.haar_inner(&self.characters[z], &products[x * n + y]),
                ROUND_TOL,
                "Haar fusion",
            )
        })
    }

    /// Unitarity of every `U^x` and the corepresentation identity of the
    /// block functions `F_{r,s}`.
    pub fn audit_coreps(&self) -> CorepAudit {
        let cls = self.cls;
        let mp = cls.matched_pair();
        let kg = mp.compact();
        let max_unitarity_defect = (0..cls.len())
            .into_par_iter()
            .map(|x| {
                let m = self.corep_matrix(x);
                let id = identity(m.nrows());
                max_abs_diff(&(m.adjoint() * &m), &id).max(max_abs_diff(&(&m * m.adjoint()), &id))
            })
            .reduce(|| 0.0, f64::max);
        let mut violations = Vec::new();
        for x in 0..cls.len() {
            let orbit = cls.orbit_of(x);
            let di = cls.isotype_of(x).dim();
            let zero = CMat::zeros(di, di);
            for r in 0..orbit.len() {
                for s in 0..orbit.len() {
                    for k1 in kg.elements() {
                        let t = orbit
                            .position(&mp.beta(&orbit.elements()[r], k1))
                            .expect("β preserves orbits");
                        for k2 in kg.elements() {
                            let lhs = cls.orep_block(x, r, s, kg.mul(k1, k2)).unwrap_or(&zero);
                            let a = cls.orep_block(x, r, t, k1).unwrap_or(&zero);
                            let b = cls.orep_block(x, t, s, k2).unwrap_or(&zero);
                            if max_abs_diff(lhs, &(a * b)) > 1e-9 {
                                violations.push((x, r, s, k1, k2));
                            }
                        }
                    }
                }
            }
        }
        CorepAudit {
            max_unitarity_defect,
            comultiplication_violations: violations,
        }
    }

    fn check_support(&self, a: &BlockElement) -> Result<()> {
        let dims = self.cls.dims();
        for (&x, m) in &a.0 {
            if x >= dims.len() {
                return Err(Error::OutsideIndex(x));
            }
            if m.nrows() != dims[x] || m.ncols() != dims[x] {
                return Err(Error::InvalidTable(format!("block {x} has the wrong size")));
            }
        }
        Ok(())
    }

    /// `𝓕(a) = Σ_x d_x Σ_{p,q} (a_x)_{q,p} U^x_{p,q}`.
    pub fn fourier(&self, a: &BlockElement) -> Result<CMat> {
        self.check_support(a)?;
        let mut out = CMat::zeros(self.size, self.size);
        for (&x, ax) in &a.0 {
            let d = ax.nrows();
            for p in 0..d {
                for q in 0..d {
                    let c = ax[(q, p)] * d as f64;
                    if c != ZERO {
                        out += &self.coreps[x][p * d + q] * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `‖a‖₀ = (Σ_x d_x Tr(a_x* a_x))^{1/2}`.
    pub fn sobolev_norm(&self, a: &BlockElement) -> Result<f64> {
        self.check_support(a)?;
        Ok(a.0
            .values()
            .map(|m| m.nrows() as f64 * m.norm_squared())
            .sum::<f64>()
            .sqrt())
    }

    /// `(‖𝓕(a)‖, ‖a‖₀)`
    pub fn fourier_and_sobolev(&self, a: &BlockElement) -> Result<(f64, f64)> {
        Ok((operator_norm(&self.fourier(a)?), self.sobolev_norm(a)?))
    }

    /// `B_{p,q} = ⟨η, U^x_{p,q} ξ⟩` for column vectors `ξ, η`.
    pub fn matrix_coefficients(&self, x: usize, xi: &CMat, eta: &CMat) -> CMat {
        let d = self.cls.dims()[x];
        CMat::from_fn(d, d, |p, q| eta.column(0).dotc(&(&self.coreps[x][p * d + q] * xi).column(0)))
    }
}

fn realize_class(cls: &BicrossedClassification<FiniteGroup>, x: usize, n_g: usize, n_k: usize) -> Vec<CMat> {
    let mp = cls.matched_pair();
    let g = mp.gamma();
    let orbit = cls.orbit_of(x);
    let di = cls.isotype_of(x).dim();
    let d = orbit.len() * di;
    let size = n_g * n_k;
    let mut out = vec![CMat::zeros(size, size); d * d];
    for (r, &gamma) in orbit.elements().iter().enumerate() {
        for s in 0..orbit.len() {
            for mu in 0..n_g {
                let row_mu = g.mul(gamma, mu);
                for k in 0..n_k {
                    if let Some(block) = cls.orep_block(x, r, s, mp.alpha(&mu, k)) {
                        for i in 0..di {
                            for j in 0..di {
                                out[(r * di + i) * d + s * di + j][(row_mu * n_k + k, mu * n_k + k)] = block[(i, j)];
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// A pair of automorphisms of `Γ` and `K` intertwining both actions; it acts
/// on `ℓ²(Γ × K)` by the permutation `δ_{μ,k} ↦ δ_{φ_Γ(μ), φ_K(k)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QgAutomorphism {
    pub gamma: Vec<usize>,
    pub compact: Vec<usize>,
}

impl QgAutomorphism {
    /// Checks `φ_K ∘ α_γ = α_{φ_Γ γ} ∘ φ_K` and `φ_Γ ∘ β_k = β_{φ_K k} ∘ φ_Γ`.
    pub fn new(mp: &MatchedPair<FiniteGroup>, gamma: Vec<usize>, compact: Vec<usize>) -> Result<Self> {
        let (gg, kg) = (mp.gamma(), mp.compact());
        let is_aut = |p: &[usize], g: &FiniteGroup| {
            p.len() == g.order()
                && g.elements().all(|a| g.elements().all(|b| p[g.mul(a, b)] == g.mul(p[a], p[b])))
        };
        if !is_aut(&gamma, gg) || !is_aut(&compact, kg) {
            return Err(Error::NotAutomorphism("component is not an automorphism".into()));
        }
        let compatible = gg.elements().all(|c| {
            kg.elements().all(|k| {
                compact[mp.alpha(&c, k)] == mp.alpha(&gamma[c], compact[k])
                    && gamma[mp.beta(&c, k)] == mp.beta(&gamma[c], compact[k])
            })
        });
        if !compatible {
            return Err(Error::NotAutomorphism("pair does not intertwine α and β".into()));
        }
        Ok(QgAutomorphism { gamma, compact })
    }

    fn index_perm(&self, n_k: usize) -> Vec<usize> {
        (0..self.gamma.len() * n_k)
            .map(|i| self.gamma[i / n_k] * n_k + self.compact[i % n_k])
            .collect()
    }

    /// `θ(X) = W X W*`.
    pub fn apply(&self, m: &CMat) -> CMat {
        let perm = self.index_perm(self.compact.len());
        let mut out = CMat::zeros(m.nrows(), m.ncols());
        for a in 0..m.nrows() {
            for b in 0..m.ncols() {
                out[(perm[a], perm[b])] = m[(a, b)];
            }
        }
        out
    }
}

/// Every compatible pair, identity first.
pub fn compatible_automorphisms(mp: &MatchedPair<FiniteGroup>) -> Vec<QgAutomorphism> {
    let auts_k = automorphisms(mp.compact());
    automorphisms(mp.gamma())
        .into_iter()
        .flat_map(|a| auts_k.iter().map(move |b| (a.clone(), b.clone())))
        .filter_map(|(a, b)| QgAutomorphism::new(mp, a, b).ok())
        .collect()
}

/// `Ad_r` on `Γ` paired with `Ad_{(e, r)}` on `K = G ⋊ Λ`, one per `r ∈ Λ`.
pub fn ad_lambda_automorphisms(mp: &MatchedPair<FiniteGroup>) -> Result<Vec<QgAutomorphism>> {
    let twist = mp
        .twist()
        .ok_or_else(|| Error::Unsupported("Ad_Λ needs a twist instance".into()))?;
    let (gg, kg) = (mp.gamma(), mp.compact());
    let product = twist.product();
    twist
        .lambda_elements()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let c = product.encode(0, i);
            let on_gamma = gg.elements().map(|m| gg.conjugate(r, m)).collect();
            let on_k = kg.elements().map(|k| kg.conjugate(c, k)).collect();
            QgAutomorphism::new(mp, on_gamma, on_k)
        })
        .collect()
}

/// Action of an automorphism on classes: `θ(U^x) = T_x U^y T_x*` with `y = θ_*(x)`.
#[derive(Clone, Debug)]
pub struct DualAction {
    pub pushforward: Vec<usize>,
    pub intertwiners: Vec<CMat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismAudit {
    pub pushforward: Vec<usize>,
    /// `max |𝓕(θ̂ a) − θ(𝓕 a)|` over the sampled elements.
    pub fourier_defect: f64,
    /// `max |‖θ̂ a‖₀ − ‖a‖₀|`.
    pub sobolev_defect: f64,
    pub intertwiner_defect: f64,
}

impl AutomorphismAudit {
    pub fn passes(&self, fourier_tol: f64, sobolev_tol: f64) -> bool {
        self.fourier_defect <= fourier_tol && self.sobolev_defect <= sobolev_tol
    }
}

impl FiniteQuantumAlgebra<'_> {
    /// `θ_*` and the unitaries `T_x`, read off Haar inner products.
    pub fn dual_action(&self, theta: &QgAutomorphism) -> Result<DualAction> {
        let n = self.cls.len();
        let dims = self.cls.dims();
        let mut pushforward = Vec::with_capacity(n);
        let mut intertwiners = Vec::with_capacity(n);
        for x in 0..n {
            let moved = theta.apply(&self.characters[x]);
            let y = (0..n)
                .filter(|&y| dims[y] == dims[x])
                .find(|&y| (self.haar_inner(&self.characters[y], &moved) - 1.0).norm() < ROUND_TOL)
                .ok_or_else(|| Error::ClassNotFound(format!("image of class {x} under θ")))?;
            let d = dims[x];
            let moved_entries: Vec<CMat> = (0..d * d).map(|pq| theta.apply(&self.coreps[x][pq])).collect();
            // M[(i,k),(j,l)] = d·h(U^y_{kl}* θ(U^x_{ij})) = T_{ik} conj(T_{jl})
            let m = CMat::from_fn(d * d, d * d, |ik, jl| {
                let (i, k) = (ik / d, ik % d);
                let (j, l) = (jl / d, jl % d);
                self.haar_inner(&self.coreps[y][k * d + l], &moved_entries[i * d + j]) * d as f64
            });
            let col = (0..d * d)
                .max_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re))
                .expect("nonempty");
            let scale = m[(col, col)].re.sqrt();
            let t = CMat::from_fn(d, d, |i, k| m[(i * d + k, col)] / scale);
            pushforward.push(y);
            intertwiners.push(t);
        }
        Ok(DualAction {
            pushforward,
            intertwiners,
        })
    }

    /// `θ̂(a)_{θ_* x} = T_x* a_x T_x`.
    pub fn pushforward_element(&self, action: &DualAction, a: &BlockElement) -> BlockElement {
        BlockElement(
            a.0.iter()
                .map(|(&x, m)| {
                    let t = &action.intertwiners[x];
                    (action.pushforward[x], t.adjoint() * m * t)
                })
                .collect(),
        )
    }

    /// Compares `𝓕(θ̂ a)` with `θ(𝓕 a)` and the Sobolev norms on every
    /// projection `p_x` and on `samples` random elements of full support.
    pub fn audit_automorphism(&self, theta: &QgAutomorphism, samples: usize, seed: u64) -> Result<AutomorphismAudit> {
        let action = self.dual_action(theta)?;
        let dims = self.cls.dims();
        let intertwiner_defect = action
            .intertwiners
            .iter()
            .map(crate::linalg::unitarity_defect)
            .fold(0.0, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<usize> = (0..dims.len()).collect();
        let mut elements: Vec<BlockElement> = all.iter().map(|&x| BlockElement::projection(x, dims[x])).collect();
        elements.extend((0..samples).map(|_| BlockElement::random(&all, &dims, &mut rng)));
        let mut fourier_defect: f64 = 0.0;
        let mut sobolev_defect: f64 = 0.0;
        for a in &elements {
            let pushed = self.pushforward_element(&action, a);
            let lhs = self.fourier(&pushed)?;
            let rhs = theta.apply(&self.fourier(a)?);
            fourier_defect = fourier_defect.max(max_abs_diff(&lhs, &rhs));
            sobolev_defect = sobolev_defect.max((self.sobolev_norm(&pushed)? - self.sobolev_norm(a)?).abs());
        }
        Ok(AutomorphismAudit {
            pushforward: action.pushforward,
            fourier_defect,
            sobolev_defect,
            intertwiner_defect,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::s3_twist;
    use super::super::{classify_bicrossed, GammaRange};
    use super::*;
    use crate::group::trivial_group;
    use crate::instances::semidirect_catalogue;
    use std::sync::Arc;

    #[test]
    fn twisted_fusion_matches_haar_oracle() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let alg = FiniteQuantumAlgebra::new(&cls).unwrap();
        let table = cls.fusion_table().unwrap();
        let oracle = alg.oracle_fusion_table().unwrap();
        assert_eq!(table.diff(&oracle), vec![]);
        assert_eq!(table, oracle);
        assert!(table.audit().is_clean());
    }

    #[test]
    fn coreps_are_unitary_and_multiplicative() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let alg = FiniteQuantumAlgebra::new(&cls).unwrap();
        let audit = alg.audit_coreps();
        assert!(audit.is_clean(1e-9), "{audit:?}");
    }

    #[test]
    fn haar_orthogonality() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let alg = FiniteQuantumAlgebra::new(&cls).unwrap();
        let dims = cls.dims();
        for x in [0, 2, 5, 8] {
            for y in [2, 8, 11] {
                let (dx, dy) = (dims[x], dims[y]);
                for pq in 0..dx * dx {
                    for rs in 0..dy * dy {
                        let v = alg.haar_inner(alg.corep_entry(x, pq / dx, pq % dx), alg.corep_entry(y, rs / dy, rs % dy));
                        let expect = if x == y && pq == rs { 1.0 / dx as f64 } else { 0.0 };
                        assert!((v - expect).norm() < 1e-10, "{x} {y} {pq} {rs} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn fourier_examples() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let alg = FiniteQuantumAlgebra::new(&cls).unwrap();
        let unit = BlockElement::projection(cls.unit(), 1);
        let f = alg.fourier(&unit).unwrap();
        assert!(max_abs_diff(&f, &identity(36)) < 1e-12);
        let (op, sob) = alg.fourier_and_sobolev(&unit).unwrap();
        assert!((op - 1.0).abs() < 1e-12 && (sob - 1.0).abs() < 1e-12);
        let p = BlockElement::projection(7, 2);
        assert!((alg.sobolev_norm(&p).unwrap() - 2.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dims = cls.dims();
        let support = [1, 4, 9];
        let a = BlockElement::random(&support, &dims, &mut rng);
        let (op, sob) = alg.fourier_and_sobolev(&a).unwrap();
        let bound = support.iter().map(|&x| dims[x] * dims[x]).sum::<usize>() as f64;
        assert!(op <= sob * bound.sqrt() + 1e-9);
        // ‖a‖₀² = h(𝓕(a)* 𝓕(a))
        let fa = alg.fourier(&a).unwrap();
        assert!((alg.haar_inner(&fa, &fa).re - sob * sob).abs() < 1e-9);
        assert!(matches!(
            alg.fourier(&BlockElement::projection(99, 1)),
            Err(Error::OutsideIndex(99))
        ));
    }

    #[test]
    fn conjugates_agree_with_oracle() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let alg = FiniteQuantumAlgebra::new(&cls).unwrap();
        for x in 0..cls.len() {
            assert_eq!(cls.conjugate(x).unwrap(), alg.oracle_conjugate(x).unwrap());
        }
    }

    #[test]
    fn s3_twist_automorphisms_lift() {
        let mp = s3_twist();
        let cls = classify_bicrossed(&mp, GammaRange::All, 5).unwrap();
        let alg = FiniteQuantumAlgebra::new(&cls).unwrap();
        let auts = compatible_automorphisms(&mp);
        assert!(auts.len() > 1);
        assert_eq!(auts[0].gamma, (0..6).collect::<Vec<_>>());
        for (i, theta) in auts.iter().enumerate() {
            let audit = alg.audit_automorphism(theta, 2, i as u64).unwrap();
            assert!(audit.passes(1e-8, 1e-10), "{audit:?}");
            assert!(audit.intertwiner_defect < 1e-8);
        }
    }

    #[test]
    fn semidirect_instances_through_trivial_gamma() {
        for (name, product) in semidirect_catalogue().unwrap().into_iter().take(4) {
            let mp = MatchedPair::trivial(Arc::new(trivial_group()), product.group().clone());
            let cls = classify_bicrossed(&mp, GammaRange::All, 2).unwrap();
            assert_eq!(cls.total_dim_squared(), product.group().order(), "{name}");
            let alg = FiniteQuantumAlgebra::new(&cls).unwrap();
            let theta = compatible_automorphisms(&mp).pop().unwrap();
            let audit = alg.audit_automorphism(&theta, 1, 0).unwrap();
            assert!(audit.passes(1e-8, 1e-10), "{name}: {audit:?}");
        }
    }

    #[test]
    fn compatibility_is_enforced() {
        let mp = s3_twist();
        let product = mp.twist().unwrap().product().clone();
        let invert: Vec<usize> = mp
            .compact()
            .elements()
            .map(|x| {
                let (g, r) = product.decode(x);
                product.encode([0, 2, 1][g], r)
            })
            .collect();
        // (g,r) ↦ (g⁻¹,r) commutes with every τ_γ and leaves β alone
        assert!(QgAutomorphism::new(&mp, (0..6).collect(), invert).is_ok());
        // conjugation by a 3-cycle on Γ does not commute with Ad_λ
        let s3 = mp.gamma().clone();
        let ad: Vec<usize> = s3.elements().map(|h| s3.conjugate(3, h)).collect();
        assert!(matches!(
            QgAutomorphism::new(&mp, ad, (0..6).collect()),
            Err(Error::NotAutomorphism(_))
        ));
        assert!(QgAutomorphism::new(&mp, (0..6).collect(), vec![1, 0, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn ad_lambda_pairs_are_compatible() {
        let mp = s3_twist();
        let auts = ad_lambda_automorphisms(&mp).unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[0].gamma, (0..6).collect::<Vec<_>>());
        assert_eq!(auts[0].compact, (0..6).collect::<Vec<_>>());
        // Ad_(12) swaps (23) and (13) and fixes (12)
        assert_eq!((auts[1].gamma[1], auts[1].gamma[5], auts[1].gamma[2]), (5, 1, 2));
        let all = compatible_automorphisms(&mp);
        assert!(auts.iter().all(|a| all.contains(a)));
    }
}
