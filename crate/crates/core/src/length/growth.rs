//! Shell sums `Σ_{k ≤ l(x) < k+1} (dim x)²` on duals and shell cardinalities
//! on groups.

use super::{build_affording_family, DualLength, GroupLength, Length};
use crate::bicrossed::{classify_bicrossed, GammaRange, MatchedPair};
use crate::group::EnumerableGroup;
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthProfile {
    pub kmax: usize,
    /// `shells[k]` for `0 ≤ k ≤ kmax`
    pub shells: Vec<u128>,
}

impl GrowthProfile {
    /// Bins `(length, weight)` pairs into shells `k ≤ l < k + 1`.
    pub fn from_values(kmax: usize, items: impl IntoIterator<Item = (Length, u128)>) -> Self {
        let mut shells = vec![0u128; kmax + 1];
        for (l, w) in items {
            let k = l.floor().to_integer();
            if k >= 0 && (k as usize) <= kmax {
                shells[k as usize] += w;
            }
        }
        GrowthProfile { kmax, shells }
    }

    pub fn cumulative(&self) -> Vec<u128> {
        self.shells
            .iter()
            .scan(0u128, |acc, &s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    }

    pub fn total(&self) -> u128 {
        self.shells.iter().sum()
    }

    /// `k,shell_sum,cumulative`
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,shell_sum,cumulative\n");
        for (k, (a, c)) in self.shells.iter().zip(self.cumulative()).enumerate() {
            s.push_str(&format!("{k},{a},{c}\n"));
        }
        s
    }
}

/// Dual shells weighted by `(dim x)²`.
pub fn dual_growth(dims: &[usize], l: &DualLength, kmax: usize) -> GrowthProfile {
    GrowthProfile::from_values(
        kmax,
        dims.iter()
            .enumerate()
            .map(|(x, &d)| (l.get(x), (d * d) as u128)),
    )
}

/// Group shells for a length bounded below by word length over the ball of
/// the given radius; the caller picks a radius covering `l < kmax + 1`.
pub fn group_growth<D: EnumerableGroup>(
    group: &D,
    l: &GroupLength<D::Elem>,
    kmax: usize,
    radius: usize,
) -> Result<GrowthProfile>
where
    D::Elem: 'static,
{
    let ball = group.ball(radius).map_err(|e| match e {
        Error::EnumerationGuard { bound, .. } => Error::EnumerationGuard { bound, shell: radius },
        other => other,
    })?;
    Ok(GrowthProfile::from_values(kmax, ball.iter().map(|g| (l.value(g), 1))))
}

/// Dual shells of a twist instance over an enumerable `Γ`, with the family
/// `l_𝒪 = l_Ĝ + l_Γ` computed on every orbit meeting `ball(radius)`.
pub fn twist_dual_growth<D: EnumerableGroup + 'static>(
    mp: &MatchedPair<D>,
    l_gamma: &GroupLength<D::Elem>,
    l_ghat: &DualLength,
    kmax: usize,
    radius: usize,
    seed: u64,
) -> Result<GrowthProfile> {
    let points = mp.gamma().ball(radius).map_err(|e| match e {
        Error::EnumerationGuard { bound, .. } => Error::EnumerationGuard { bound, shell: radius },
        other => other,
    })?;
    let cls = classify_bicrossed(mp, GammaRange::Points(points), seed)?;
    let fam = build_affording_family(&cls, l_gamma, l_ghat)?;
    Ok(dual_growth(&cls.dims(), &fam.values, kmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicrossed::twist_free;
    use crate::group::{cyclic, direct_sum, FreeProduct, Word};
    use std::sync::Arc;

    #[test]
    fn free_product_sphere_sizes() {
        let fp = FreeProduct::new(vec![2, 3]).unwrap();
        let l = GroupLength::word(Arc::new(fp.clone()));
        let p = group_growth(&fp, &l, 10, 10).unwrap();
        assert_eq!(p.shells, vec![1, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64]);
        assert_eq!(p.cumulative()[3], 14);
        assert!(p.to_csv().starts_with("k,shell_sum,cumulative\n0,1,1\n1,3,4\n"));
    }

    #[test]
    fn guard_overflow_is_reported() {
        let fp = FreeProduct::new(vec![2, 3]).unwrap().with_guard(100);
        let l = GroupLength::word(Arc::new(fp.clone()));
        assert!(matches!(
            group_growth(&fp, &l, 20, 20),
            Err(Error::EnumerationGuard { shell: 20, .. })
        ));
    }

    #[test]
    fn dual_profile_totals() {
        let p = dual_growth(&[1, 1, 2], &DualLength::from_integers(&[0, 0, 1]), 3);
        assert_eq!(p.shells, vec![2, 4, 0, 0]);
        assert_eq!(p.total(), 6);
    }

    #[test]
    fn psl2z_twist_dual_shells() {
        let fp = Arc::new(FreeProduct::new(vec![2, 3]).unwrap());
        let g = Arc::new(direct_sum(&[cyclic(3), cyclic(3)]));
        let swap: Vec<usize> = (0..9).map(|x| (x % 3) * 3 + x / 3).collect();
        let s = fp.generator(0);
        let mp = twist_free(fp.clone(), g, &[swap, (0..9).collect()], std::slice::from_ref(&s)).unwrap();
        let l_gamma = GroupLength::word(fp.clone())
            .average_by_conjugation(fp.clone(), &[Word::identity(), s])
            .unwrap();
        let irr = crate::rep::irreps(mp.twist().unwrap().g(), 0).unwrap();
        let l_ghat = crate::length::coordinate_dual_length(&irr, &[3, 3]).unwrap();
        let kmax = 4;
        let p = twist_dual_growth(&mp, &l_gamma, &l_ghat, kmax, kmax + 2, 0).unwrap();
        let q = twist_dual_growth(&mp, &l_gamma, &l_ghat, kmax, kmax + 3, 0).unwrap();
        assert_eq!(p, q);
        // shell 0: the two characters of Z3² ⋊ Z2 trivial on Z3²
        assert!(p.shells.iter().all(|&s| s > 0));
        assert_eq!(p.shells[0], 2);
    }
}
