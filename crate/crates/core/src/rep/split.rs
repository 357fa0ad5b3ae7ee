//! Randomized isotypic splitting of (possibly projective) monomial families.

use super::{character_norm2, characters_equal};
use crate::linalg::{eigen_clusters, hermitian_eigen, random_hermitian, CMat, C64};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EIGEN_GAP: f64 = 1e-7;
const IRREDUCIBLE_TOL: f64 = 1e-6;
const MAX_ATTEMPTS: usize = 64;

/// Monomial unitary `L δ_b = phase[b] δ_{target[b]}`.
#[derive(Clone, Debug)]
pub struct Monomial {
    pub target: Vec<usize>,
    pub phase: Vec<C64>,
}

impl Monomial {
    pub fn dense(&self) -> CMat {
        let n = self.target.len();
        let mut m = CMat::zeros(n, n);
        for b in 0..n {
            m[(self.target[b], b)] = self.phase[b];
        }
        m
    }

    /// `L P` computed by row moves.
    fn apply(&self, p: &CMat) -> CMat {
        let mut out = CMat::zeros(p.nrows(), p.ncols());
        for b in 0..self.target.len() {
            let row = p.row(b) * self.phase[b];
            out.set_row(self.target[b], &row);
        }
        out
    }
}

fn trace_family(family: &[CMat]) -> Vec<C64> {
    family.iter().map(|m| m.trace()).collect()
}

/// `(1/n) Σ A H A*`
fn average_dense(family: &[CMat], h: &CMat) -> CMat {
    let n = family.len() as f64;
    let mut t = CMat::zeros(h.nrows(), h.ncols());
    for a in family {
        t += a * h * a.adjoint();
    }
    t / C64::new(n, 0.0)
}

/// `(1/n) Σ L H L*` for monomial `L`.
fn average_monomial(family: &[Monomial], h: &CMat) -> CMat {
    let n = h.nrows();
    let mut t = CMat::zeros(n, n);
    for l in family {
        for a in 0..n {
            let (ta, pa) = (l.target[a], l.phase[a]);
            for b in 0..n {
                t[(ta, l.target[b])] += pa * h[(a, b)] * l.phase[b].conj();
            }
        }
    }
    t / C64::new(family.len() as f64, 0.0)
}

/// Split the family into irreducible constituents and return one matrix
/// family per isomorphism class (classes told apart by their characters).
///
/// The family must be a unitary (projective) representation of a group with
/// `family.len()` elements; the class dimensions must satisfy `Σ d² = n`.
pub fn split_monomial_family(family: &[Monomial], seed: u64) -> Result<Vec<Vec<CMat>>> {
    let n = family.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_hermitian(n, &mut rng);
    let t = average_monomial(family, &h);
    let (values, vecs) = hermitian_eigen(&t);
    let mut work: Vec<Vec<CMat>> = Vec::new();
    for range in eigen_clusters(&values, EIGEN_GAP) {
        let p = vecs.columns(range.start, range.len()).into_owned();
        let pa = p.adjoint();
        work.push(family.iter().map(|l| &pa * l.apply(&p)).collect());
    }
    let mut found: Vec<(Vec<CMat>, Vec<C64>)> = Vec::new();
    let mut total = 0usize;
    // process in order so the first representative found for each class wins
    work.reverse();
    while let Some(block) = work.pop() {
        if total == n {
            break;
        }
        let chi = trace_family(&block);
        // copies of a class already found carry nothing new
        if found.iter().any(|(_, c)| characters_equal(c, &chi)) {
            continue;
        }
        let norm2 = character_norm2(&chi);
        if (norm2 - 1.0).abs() < IRREDUCIBLE_TOL {
            let d = block[0].nrows();
            total += d * d;
            found.push((block, chi));
            continue;
        }
        let mut residual: f64 = norm2 - 1.0;
        let mut split = None;
        for _ in 0..MAX_ATTEMPTS {
            let h = random_hermitian(block[0].nrows(), &mut rng);
            let t = average_dense(&block, &h);
            let (values, vecs) = hermitian_eigen(&t);
            let clusters = eigen_clusters(&values, EIGEN_GAP);
            if clusters.len() > 1 {
                split = Some((clusters, vecs));
                break;
            }
            residual = residual.max(values.last().unwrap() - values[0]);
        }
        let Some((clusters, vecs)) = split else {
            return Err(Error::SplittingFailed { residual });
        };
        let mut pieces = Vec::new();
        for range in clusters {
            let p = vecs.columns(range.start, range.len()).into_owned();
            let pa = p.adjoint();
            pieces.push(block.iter().map(|a| &pa * a * &p).collect::<Vec<CMat>>());
        }
        for piece in pieces.into_iter().rev() {
            work.push(piece);
        }
    }
    if total != n {
        return Err(Error::Completeness {
            expected: n,
            got: total,
        });
    }
    Ok(found.into_iter().map(|(b, _)| b).collect())
}
