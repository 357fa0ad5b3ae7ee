//! Named small instances used by the command line tool and the test suites.

use crate::group::{
    cyclic, direct_sum, quaternion, semidirect_product, symmetric, AutAction, FiniteGroup,
    SemidirectProduct,
};
use crate::Result;
use std::sync::Arc;

fn mult_perm(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|x| x * k % n).collect()
}

fn inner(g: &FiniteGroup, x: usize) -> Vec<usize> {
    g.elements().map(|h| g.conjugate(x, h)).collect()
}

/// `ℤ/n ⋊ ℤ/m` with the generator of `ℤ/m` acting by multiplication by `k`.
pub fn cyclic_by_cyclic(n: usize, m: usize, k: usize) -> Result<SemidirectProduct> {
    let act = AutAction::from_generators(
        Arc::new(cyclic(m)),
        Arc::new(cyclic(n)),
        &[(1, mult_perm(n, k))],
    )?;
    Ok(semidirect_product(&act))
}

/// `(ℤ/n)² ⋊ ℤ/2` with the coordinate swap.
pub fn square_shift(n: usize) -> Result<SemidirectProduct> {
    let swap = (0..n * n).map(|x| (x % n) * n + x / n).collect();
    let act = AutAction::from_generators(
        Arc::new(cyclic(2)),
        Arc::new(direct_sum(&[cyclic(n), cyclic(n)])),
        &[(1, swap)],
    )?;
    Ok(semidirect_product(&act))
}

/// `Q₈ ⋊ V₄` with `V₄` acting by conjugation by `i` and `j`.
pub fn quaternion_inner() -> Result<SemidirectProduct> {
    let q = quaternion();
    let (i, j) = (2, 4);
    let act = AutAction::from_generators(
        Arc::new(direct_sum(&[cyclic(2), cyclic(2)])),
        Arc::new(q.clone()),
        &[(2, inner(&q, i)), (1, inner(&q, j))],
    )?;
    Ok(semidirect_product(&act))
}

/// `A₄ = V₄ ⋊ ℤ/3` with the three involutions cycled.
pub fn alternating4() -> Result<SemidirectProduct> {
    let act = AutAction::from_generators(
        Arc::new(cyclic(3)),
        Arc::new(direct_sum(&[cyclic(2), cyclic(2)])),
        &[(1, vec![0, 2, 3, 1])],
    )?;
    Ok(semidirect_product(&act))
}

/// `S₃ ⋊ ℤ/2` with `ℤ/2` acting by conjugation by `(12)`.
pub fn s3_inner() -> Result<SemidirectProduct> {
    let s3 = symmetric(3)?;
    let act = AutAction::from_generators(
        Arc::new(cyclic(2)),
        Arc::new(s3.clone()),
        &[(1, inner(&s3, 2))],
    )?;
    Ok(semidirect_product(&act))
}

/// The semidirect instances exercised by the fusion oracle comparison.
pub fn semidirect_catalogue() -> Result<Vec<(&'static str, Arc<SemidirectProduct>)>> {
    Ok(vec![
        ("Z3:Z2", Arc::new(cyclic_by_cyclic(3, 2, 2)?)),
        ("Z5:Z4", Arc::new(cyclic_by_cyclic(5, 4, 2)?)),
        ("Z3^2:Z2", Arc::new(square_shift(3)?)),
        ("Z4:Z2", Arc::new(cyclic_by_cyclic(4, 2, 3)?)),
        ("Z7:Z3", Arc::new(cyclic_by_cyclic(7, 3, 2)?)),
        ("Q8:V4", Arc::new(quaternion_inner()?)),
        ("V4:Z3", Arc::new(alternating4()?)),
        ("S3:Z2", Arc::new(s3_inner()?)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_orders() {
        let orders: Vec<usize> = semidirect_catalogue()
            .unwrap()
            .iter()
            .map(|(_, p)| p.group().order())
            .collect();
        assert_eq!(orders, vec![6, 20, 18, 8, 21, 32, 12, 12]);
    }
}
