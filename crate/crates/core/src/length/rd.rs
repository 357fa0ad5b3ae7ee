//! Brackets for `sup { ‖𝓕(a)‖ / ‖a‖₀ : a supported on a set of classes }`.
//!
//! The lower bound is the ratio of an explicit element found by alternating
//! maximization over rank-one functionals; the upper bound is the
//! Cauchy–Schwarz estimate `(Σ (dim x)²)^{1/2}`.

use super::{DualLength, Length};
use crate::bicrossed::{BlockElement, FiniteQuantumAlgebra};
use crate::linalg::{random_unit_vector, top_singular, CMat};
use crate::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct RdBracket {
    pub k: usize,
    pub classes: Vec<usize>,
    pub lower: f64,
    pub upper: f64,
    /// Which candidate attains `lower`.
    pub argmax: String,
    pub seed: u64,
}

fn ratio(alg: &FiniteQuantumAlgebra<'_>, a: &BlockElement) -> Result<(f64, CMat, CMat)> {
    let f = alg.fourier(a)?;
    let (s, u, v) = top_singular(&f);
    Ok((s / alg.sobolev_norm(a)?, u, v))
}

/// Bracket over elements supported on `classes`. Candidates: every `p_x`,
/// their sum, and `restarts` runs of `iters` alternating steps seeded from
/// `seed`.
pub fn rd_ratio(
    alg: &FiniteQuantumAlgebra<'_>,
    classes: &[usize],
    k: usize,
    seed: u64,
    iters: usize,
    restarts: usize,
) -> Result<RdBracket> {
    let dims = alg.dims();
    let mut bracket = RdBracket {
        k,
        classes: classes.to_vec(),
        lower: 0.0,
        upper: 0.0,
        argmax: "empty".into(),
        seed,
    };
    if classes.is_empty() {
        return Ok(bracket);
    }
    bracket.upper = cauchy_schwarz_bound(&dims, classes);

    let mut candidates: Vec<(f64, String)> = Vec::new();
    for &x in classes {
        let (r, _, _) = ratio(alg, &BlockElement::projection(x, dims[x]))?;
        candidates.push((r, format!("p_{x}")));
    }
    let sum = BlockElement(
        classes
            .iter()
            .map(|&x| (x, crate::linalg::identity(dims[x])))
            .collect(),
    );
    candidates.push((ratio(alg, &sum)?.0, "sum of p_x".into()));

    let runs: Vec<Result<(f64, String)>> = (0..restarts)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((k as u64) << 32) | run as u64);
            let mut xi = random_unit_vector(alg.size(), &mut rng);
            let mut eta = random_unit_vector(alg.size(), &mut rng);
            let mut best = 0.0f64;
            for _ in 0..iters.max(1) {
                // a_x = B_x*, which maximizes |⟨η, 𝓕(a) ξ⟩| / ‖a‖₀
                let a = BlockElement(
                    classes
                        .iter()
                        .map(|&x| (x, alg.matrix_coefficients(x, &xi, &eta).adjoint()))
                        .collect::<BTreeMap<_, _>>(),
                );
                if alg.sobolev_norm(&a)? == 0.0 {
                    break;
                }
                let (r, u, v) = ratio(alg, &a)?;
                best = best.max(r);
                xi = v;
                eta = u;
            }
            Ok((best, format!("alternating run {run}")))
        })
        .collect();
    for r in runs {
        candidates.push(r?);
    }
    let (lower, argmax) = candidates
        .into_iter()
        .fold((0.0, String::new()), |best, c| if c.0 > best.0 { c } else { best });
    bracket.lower = lower;
    bracket.argmax = argmax;
    Ok(bracket)
}

/// `(Σ_{x ∈ classes} (dim x)²)^{1/2}`.
pub fn cauchy_schwarz_bound(dims: &[usize], classes: &[usize]) -> f64 {
    (classes.iter().map(|&x| dims[x] * dims[x]).sum::<usize>() as f64).sqrt()
}

/// Classes with `k ≤ l(x) < k + 1`.
pub fn shell_classes(l: &DualLength, k: usize) -> Vec<usize> {
    let lo = Length::from_integer(k as i64);
    let hi = lo + 1;
    (0..l.len()).filter(|&x| l.get(x) >= lo && l.get(x) < hi).collect()
}

/// Classes with `l(x) < k + 1`.
pub fn ball_classes(l: &DualLength, k: usize) -> Vec<usize> {
    let hi = Length::from_integer(k as i64 + 1);
    (0..l.len()).filter(|&x| l.get(x) < hi).collect()
}

/// Bracket on the shell `k ≤ l(x) < k + 1`.
pub fn rd_shell_ratio(
    alg: &FiniteQuantumAlgebra<'_>,
    l: &DualLength,
    k: usize,
    seed: u64,
    iters: usize,
    restarts: usize,
) -> Result<RdBracket> {
    rd_ratio(alg, &shell_classes(l, k), k, seed, iters, restarts)
}

/// Bracket on the ball `l(x) < k + 1`.
pub fn rd_ball_ratio(
    alg: &FiniteQuantumAlgebra<'_>,
    l: &DualLength,
    k: usize,
    seed: u64,
    iters: usize,
    restarts: usize,
) -> Result<RdBracket> {
    rd_ratio(alg, &ball_classes(l, k), k, seed, iters, restarts)
}

/// Ball-form comparison for a finite family of class permutations `θ_*`:
/// the ratio found on the ball of `l_Θ = mean_θ l ∘ θ_*` against
/// `|Θ|^{1/2} max_θ C(l ∘ θ_*)` with `C` the Cauchy–Schwarz bound.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaBallCheck {
    pub k: usize,
    pub theta_size: usize,
    pub lower: f64,
    pub max_upper: f64,
    pub bound: f64,
    pub holds: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn theta_ball_check(
    alg: &FiniteQuantumAlgebra<'_>,
    l: &DualLength,
    perms: &[Vec<usize>],
    k: usize,
    seed: u64,
    iters: usize,
    restarts: usize,
    tol: f64,
) -> Result<ThetaBallCheck> {
    let pulled: Vec<DualLength> = perms.iter().map(|p| l.pullback(p)).collect();
    let l_theta = DualLength::mean(&pulled);
    let lower = rd_ball_ratio(alg, &l_theta, k, seed, iters, restarts)?.lower;
    let dims = alg.dims();
    let max_upper = pulled
        .iter()
        .map(|li| cauchy_schwarz_bound(&dims, &ball_classes(li, k)))
        .fold(0.0, f64::max);
    let bound = (perms.len() as f64).sqrt() * max_upper;
    Ok(ThetaBallCheck {
        k,
        theta_size: perms.len(),
        lower,
        max_upper,
        bound,
        holds: lower <= bound + tol,
    })
}
