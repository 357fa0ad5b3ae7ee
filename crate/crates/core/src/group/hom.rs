use super::build::{direct_sum, direct_sum_coords, direct_sum_id};
use super::{FiniteGroup, Subgroup};
use crate::{Error, Result};
use std::collections::VecDeque;
use std::sync::Arc;

/// Extend generator images to a map on the whole domain along the Cayley graph.
///
/// Every edge `x -> x s` is checked, which makes the result a homomorphism
/// whenever it succeeds.
pub(crate) fn extend_from_generators<T: Clone + PartialEq>(
    domain: &FiniteGroup,
    identity: T,
    gens: &[(usize, T)],
    mul: impl Fn(&T, &T) -> T,
) -> std::result::Result<Vec<T>, String> {
    let n = domain.order();
    let mut img: Vec<Option<T>> = vec![None; n];
    img[0] = Some(identity);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = img[x].clone().unwrap();
        for (s, t) in gens {
            let y = domain.mul(x, *s);
            let val = mul(&fx, t);
            match &img[y] {
                None => {
                    img[y] = Some(val);
                    queue.push_back(y);
                }
                Some(v) if *v == val => {}
                Some(_) => {
                    return Err(format!(
                        "generator images are inconsistent at {}",
                        domain.name(y)
                    ))
                }
            }
        }
    }
    if img.iter().any(|v| v.is_none()) {
        return Err("the given elements do not generate the domain".into());
    }
    Ok(img.into_iter().map(|v| v.unwrap()).collect())
}

/// A homomorphism between finite groups, stored as a full image table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn from_generator_images(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        gens: &[(usize, usize)],
    ) -> Result<Self> {
        let images = extend_from_generators(&domain, 0usize, gens, |a, b| codomain.mul(*a, *b))
            .map_err(Error::NotHomomorphism)?;
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn from_table(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self> {
        if images.len() != domain.order() || images.iter().any(|&x| x >= codomain.order()) {
            return Err(Error::NotHomomorphism("image table has the wrong shape".into()));
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if images[domain.mul(a, b)] != codomain.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f({}*{}) != f({})f({})",
                        domain.name(a),
                        domain.name(b),
                        domain.name(a),
                        domain.name(b)
                    )));
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().filter(|&&x| x == 0).count() == 1
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.domain.order() == self.codomain.order()
    }
}

fn is_automorphism(g: &FiniteGroup, p: &[usize]) -> bool {
    let n = g.order();
    if p.len() != n || p.first() != Some(&0) {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    g.elements()
        .all(|a| g.elements().all(|b| p[g.mul(a, b)] == g.mul(p[a], p[b])))
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

/// A homomorphism `acting → Aut(target)`, stored as one permutation per element.
#[derive(Clone, Debug)]
pub struct AutAction {
    acting: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    perms: Vec<Vec<usize>>,
}

impl AutAction {
    /// Extend automorphism images of generators to a homomorphism.
    pub fn from_generators(
        acting: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        gens: &[(usize, Vec<usize>)],
    ) -> Result<Self> {
        for (s, p) in gens {
            if !is_automorphism(&target, p) {
                return Err(Error::NotAutomorphism(format!(
                    "image of {} on {}",
                    acting.name(*s),
                    target.label()
                )));
            }
        }
        let id: Vec<usize> = target.elements().collect();
        let perms = extend_from_generators(&acting, id, gens, |a, b| compose(a, b))
            .map_err(Error::NotHomomorphism)?;
        Ok(AutAction {
            acting,
            target,
            perms,
        })
    }

    /// Validate a full table of automorphisms.
    pub fn from_perms(
        acting: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if perms.len() != acting.order() {
            return Err(Error::NotHomomorphism("one automorphism per element required".into()));
        }
        for (a, p) in perms.iter().enumerate() {
            if !is_automorphism(&target, p) {
                return Err(Error::NotAutomorphism(format!("image of {}", acting.name(a))));
            }
        }
        for a in acting.elements() {
            for b in acting.elements() {
                if perms[acting.mul(a, b)] != compose(&perms[a], &perms[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "tau({}*{}) != tau({}) tau({})",
                        acting.name(a),
                        acting.name(b),
                        acting.name(a),
                        acting.name(b)
                    )));
                }
            }
        }
        Ok(AutAction {
            acting,
            target,
            perms,
        })
    }

    pub fn trivial(acting: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = target.elements().collect();
        let perms = vec![id; acting.order()];
        AutAction {
            acting,
            target,
            perms,
        }
    }

    pub fn acting(&self) -> &Arc<FiniteGroup> {
        &self.acting
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: usize, g: usize) -> usize {
        self.perms[a][g]
    }

    pub fn perm(&self, a: usize) -> &[usize] {
        &self.perms[a]
    }

    pub fn is_trivial(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn is_faithful(&self) -> bool {
        self.perms
            .iter()
            .skip(1)
            .all(|p| p.iter().enumerate().any(|(i, &x)| i != x))
    }

    /// Restriction to a subgroup of the acting group (indexed by local ids).
    pub fn restrict(&self, sub: &Subgroup) -> AutAction {
        AutAction {
            acting: sub.local().clone(),
            target: self.target.clone(),
            perms: sub.elements().iter().map(|&r| self.perms[r].clone()).collect(),
        }
    }
}

/// All automorphisms of `g` as image tables, sorted (identity first).
///
/// Brute force over images of a small generating set, keeping element orders.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            g.elements().filter(|&x| g.element_order(x) == o).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let assignment: Vec<(usize, usize)> = gens
            .iter()
            .zip(&choice)
            .enumerate()
            .map(|(i, (&s, &c))| (s, candidates[i][c]))
            .collect();
        if let Ok(img) = extend_from_generators(g, 0usize, &assignment, |a, b| g.mul(*a, *b)) {
            let mut seen = vec![false; g.order()];
            if img.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                out.push(img);
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort();
                return out;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Embed a cyclic group into `Aut(Cⁿ)` by cyclically shifting coordinates.
///
/// Returns the direct sum `Cⁿ` and the action; the least element of order
/// `n` is the chosen generator `a`, sent to `(c₁,…,cₙ) ↦ (c₂,…,cₙ,c₁)`.
pub fn cyclic_shift_embedding(
    a: Arc<FiniteGroup>,
    c: &FiniteGroup,
) -> Result<(Arc<FiniteGroup>, AutAction)> {
    let n = a.order();
    let generator = a
        .elements()
        .find(|&x| a.element_order(x) == n)
        .ok_or_else(|| Error::NotCyclic(a.label().to_string()))?;
    if c.order() < 2 || !c.is_abelian() {
        return Err(Error::Unsupported(
            "the coefficient group must be nontrivial and abelian".into(),
        ));
    }
    let factors = vec![c.clone(); n];
    let b = Arc::new(direct_sum(&factors));
    let orders = vec![c.order(); n];
    let shift: Vec<usize> = b
        .elements()
        .map(|x| {
            let old = direct_sum_coords(&orders, x);
            let new: Vec<usize> = (0..n).map(|i| old[(i + 1) % n]).collect();
            direct_sum_id(&orders, &new)
        })
        .collect();
    let gens = if n == 1 { vec![] } else { vec![(generator, shift)] };
    let action = AutAction::from_generators(a, b.clone(), &gens)?;
    Ok((b, action))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion, symmetric};

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cyclic(5)).len(), 4);
        assert_eq!(automorphisms(&cyclic(8)).len(), 4);
        assert_eq!(automorphisms(&symmetric(3).unwrap()).len(), 6);
        assert_eq!(automorphisms(&dihedral(4)).len(), 8);
        assert_eq!(automorphisms(&quaternion()).len(), 24);
        let auts = automorphisms(&cyclic(3));
        assert_eq!(auts[0], vec![0, 1, 2]);
    }

    #[test]
    fn inconsistent_generator_images_rejected() {
        let z4 = Arc::new(cyclic(4));
        let z2 = Arc::new(cyclic(2));
        // 1 -> 1 in Z/2 is fine; Z/2 generator to Z/4 element of order 4 is not
        assert!(GroupHom::from_generator_images(z4.clone(), z2.clone(), &[(1, 1)]).is_ok());
        assert!(GroupHom::from_generator_images(z2, z4, &[(1, 1)]).is_err());
    }

    #[test]
    fn non_automorphism_rejected() {
        let z3 = Arc::new(cyclic(3));
        let z2 = Arc::new(cyclic(2));
        let r = AutAction::from_generators(z2, z3, &[(1, vec![0, 1, 1])]);
        assert!(matches!(r, Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn shift_embedding_swaps_coordinates() {
        let (b, act) = cyclic_shift_embedding(Arc::new(cyclic(2)), &cyclic(3)).unwrap();
        assert_eq!(b.order(), 9);
        assert!(act.is_faithful());
        let x = direct_sum_id(&[3, 3], &[1, 2]);
        assert_eq!(act.apply(1, x), direct_sum_id(&[3, 3], &[2, 1]));
    }

    #[test]
    fn shift_embedding_order_three() {
        let (b, act) = cyclic_shift_embedding(Arc::new(cyclic(3)), &cyclic(2)).unwrap();
        assert_eq!(b.order(), 8);
        let a = act.acting().clone();
        let cube = a.mul(a.mul(1, 1), 1);
        assert_eq!(cube, 0);
        assert!(act.perm(cube).iter().enumerate().all(|(i, &x)| i == x));
        assert!(act.is_faithful());
    }

    #[test]
    fn shift_embedding_trivial_and_non_cyclic() {
        let (b, act) = cyclic_shift_embedding(Arc::new(cyclic(1)), &cyclic(5)).unwrap();
        assert_eq!(b.order(), 5);
        assert!(act.is_trivial());
        let v4 = Arc::new(crate::group::direct_sum(&[cyclic(2), cyclic(2)]));
        assert!(matches!(
            cyclic_shift_embedding(v4, &cyclic(3)),
            Err(Error::NotCyclic(_))
        ));
    }
}
