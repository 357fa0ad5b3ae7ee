//! Exact characters of finite abelian groups.

use super::UnitaryRep;
use crate::group::FiniteGroup;
use crate::linalg::{root_of_unity, CMat};
use std::sync::Arc;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All characters as exponent tables: `χ(g) = exp(2πi · table[g] / e)` with
/// `e` the group exponent.
pub(crate) fn character_exponents(group: &FiniteGroup) -> (usize, Vec<Vec<usize>>) {
    let e = group
        .elements()
        .map(|g| group.element_order(g))
        .fold(1, |acc, o| acc / gcd(acc, o) * o);
    // characters on the current subgroup, stored on the whole group with
    // usize::MAX outside it
    let mut members = vec![0usize];
    let mut chars: Vec<Vec<usize>> = vec![{
        let mut v = vec![usize::MAX; group.order()];
        v[0] = 0;
        v
    }];
    for g in group.generating_set() {
        let mut in_h = vec![false; group.order()];
        for &h in &members {
            in_h[h] = true;
        }
        if in_h[g] {
            continue;
        }
        let mut m = 1;
        let mut gm = g;
        while !in_h[gm] {
            gm = group.mul(gm, g);
            m += 1;
        }
        let mut new_members = Vec::with_capacity(members.len() * m);
        let mut powers = vec![0usize; m];
        for i in 1..m {
            powers[i] = group.mul(powers[i - 1], g);
        }
        for &h in &members {
            for &p in &powers {
                new_members.push(group.mul(h, p));
            }
        }
        let mut new_chars = Vec::with_capacity(chars.len() * m);
        for chi in &chars {
            let a = chi[gm];
            debug_assert_eq!(a % m, 0);
            for j in 0..m {
                let b = (a / m + j * e / m) % e;
                let mut v = vec![usize::MAX; group.order()];
                for &h in &members {
                    for (i, &p) in powers.iter().enumerate() {
                        v[group.mul(h, p)] = (chi[h] + i * b) % e;
                    }
                }
                new_chars.push(v);
            }
        }
        members = new_members;
        chars = new_chars;
    }
    (e, chars)
}

pub(crate) fn characters(group: &Arc<FiniteGroup>) -> Vec<UnitaryRep> {
    let (e, chars) = character_exponents(group);
    chars
        .into_iter()
        .map(|chi| {
            let mats = chi
                .iter()
                .map(|&k| CMat::from_element(1, 1, root_of_unity(k as i64, e as i64)))
                .collect();
            UnitaryRep::new_unchecked(group.clone(), mats)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_sum};

    #[test]
    fn characters_are_homomorphisms() {
        for g in [
            cyclic(1),
            cyclic(6),
            direct_sum(&[cyclic(2), cyclic(4)]),
            direct_sum(&[cyclic(3), cyclic(3)]),
        ] {
            let (e, chars) = character_exponents(&g);
            assert_eq!(chars.len(), g.order());
            for chi in &chars {
                for a in g.elements() {
                    for b in g.elements() {
                        assert_eq!(chi[g.mul(a, b)], (chi[a] + chi[b]) % e);
                    }
                }
            }
            let mut sorted = chars.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), g.order());
        }
    }
}
