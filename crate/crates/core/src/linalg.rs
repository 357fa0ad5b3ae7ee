//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use nalgebra::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn trace(m: &CMat) -> C64 {
    m.trace()
}

/// Deviation of `m` from being unitary, measured as max |(M*M - I)_{ij}|.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    if m.ncols() != n {
        return f64::INFINITY;
    }
    max_abs_diff(&(m.adjoint() * m), &identity(n))
}

pub fn operator_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    top_singular(m).0
}

/// Largest singular value with unit vectors `u, v` such that `M v = σ u`.
///
/// Read off the Hermitian eigenproblem of `M* M`; the complex SVD iteration
/// can stall on matrices with large clustered singular values.
pub fn top_singular(m: &CMat) -> (f64, CMat, CMat) {
    let (values, vecs) = hermitian_eigen(&(m.adjoint() * m));
    let last = values.len() - 1;
    let sigma = values[last].max(0.0).sqrt();
    let v = vecs.columns(last, 1).into_owned();
    let mv = m * &v;
    let norm = frobenius(&mv);
    let u = if norm > 0.0 {
        mv / C64::new(norm, 0.0)
    } else {
        let mut e = CMat::zeros(m.nrows(), 1);
        e[(0, 0)] = ONE;
        e
    };
    (sigma, u, v)
}

/// Random Hermitian matrix with independent Gaussian entries.
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        let d: f64 = rng.sample(StandardNormal);
        m[(i, i)] = C64::new(d, 0.0);
        for j in (i + 1)..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m[(i, j)] = C64::new(re, im);
            m[(j, i)] = C64::new(re, -im);
        }
    }
    m
}

pub fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let mut v = CMat::zeros(n, 1);
    for i in 0..n {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        v[(i, 0)] = C64::new(re, im);
    }
    let norm = frobenius(&v);
    v / C64::new(norm, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        vecs.set_column(c, &eig.eigenvectors.column(i));
    }
    (values, vecs)
}

/// Group sorted eigenvalues into clusters separated by more than `gap`.
pub fn eigen_clusters(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Orthonormal basis (as columns) of the kernel of `m`.
///
/// Uses the eigen-decomposition of `M* M`; eigenvalues below `tol` times the
/// largest one (or below `tol` absolutely) are treated as zero.
pub fn nullspace(m: &CMat, tol: f64) -> CMat {
    let n = m.ncols();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return identity(n);
    }
    let gram = m.adjoint() * m;
    let (values, vecs) = hermitian_eigen(&gram);
    let scale = values.last().copied().unwrap_or(0.0).max(1.0);
    let k = values.iter().take_while(|&&v| v <= tol * scale).count();
    vecs.columns(0, k).into_owned()
}

/// Quantize a float for use in canonical sort keys.
pub fn quantize(x: f64) -> i64 {
    let q = (x * 1e6).round() as i64;
    if q == 0 {
        0
    } else {
        q
    }
}

/// Round a real value to an integer, failing when the residual exceeds `tol`.
pub fn round_checked(value: f64, tol: f64, what: &str) -> crate::Result<i64> {
    let r = value.round();
    let residual = (value - r).abs();
    if residual > tol || !value.is_finite() {
        return Err(crate::Error::RoundingResidual {
            what: what.to_string(),
            value,
            residual,
        });
    }
    Ok(r as i64)
}

/// Round a complex value that should be a non-negative integer.
pub fn round_multiplicity(z: C64, tol: f64, what: &str) -> crate::Result<usize> {
    if z.im.abs() > tol {
        return Err(crate::Error::RoundingResidual {
            what: format!("{what} (imaginary part)"),
            value: z.im,
            residual: z.im.abs(),
        });
    }
    let n = round_checked(z.re, tol, what)?;
    if n < 0 {
        return Err(crate::Error::RoundingResidual {
            what: format!("{what} (negative)"),
            value: z.re,
            residual: z.re.abs(),
        });
    }
    Ok(n as usize)
}

/// Root of unity exp(2πi k / n).
pub fn root_of_unity(k: i64, n: i64) -> C64 {
    let t = 2.0 * std::f64::consts::PI * (k.rem_euclid(n) as f64) / (n as f64);
    C64::new(t.cos(), t.sin())
}

/// Normalize the phase so that the first entry (row-major) with modulus above
/// `tol` becomes real and positive.
pub fn fix_phase(m: &CMat, tol: f64) -> CMat {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            if z.norm() > tol {
                let phase = z.conj() / z.norm();
                return m * phase;
            }
        }
    }
    m.clone()
}

pub fn block_diagonal(blocks: &[CMat]) -> CMat {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let d = b.nrows();
        out.view_mut((off, off), (d, d)).copy_from(b);
        off += d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn top_singular_of_structured_matrices() {
        let ones = CMat::from_element(36, 36, ONE);
        let (s, u, v) = top_singular(&ones);
        assert!((s - 36.0).abs() < 1e-9);
        assert!(max_abs_diff(&(&ones * &v), &(u * C64::new(s, 0.0))) < 1e-9);
        let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(0.0, 3.0),
            C64::new(-5.0, 0.0),
            C64::new(1.0, 1.0),
        ]));
        assert!((operator_norm(&d) - 5.0).abs() < 1e-12);
        assert_eq!(operator_norm(&CMat::zeros(0, 0)), 0.0);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = CMat::from_row_slice(1, 3, &[ONE, ONE, ZERO]);
        let ns = nullspace(&m, 1e-10);
        assert_eq!(ns.ncols(), 2);
        assert!(frobenius(&(&m * &ns)) < 1e-12);
        assert!(max_abs_diff(&(ns.adjoint() * &ns), &identity(2)) < 1e-12);
    }

    #[test]
    fn hermitian_eigen_is_sorted_and_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(5, &mut rng);
        let (vals, vecs) = hermitian_eigen(&h);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            5,
            vals.iter().map(|&v| C64::new(v, 0.0)),
        ));
        let back = &vecs * d * vecs.adjoint();
        assert!(max_abs_diff(&back, &h) < 1e-10);
    }

    #[test]
    fn clusters_split_on_gap() {
        let c = eigen_clusters(&[0.0, 0.0, 1.0, 1.0 + 1e-9, 3.0], 1e-7);
        assert_eq!(c, vec![0..2, 2..4, 4..5]);
    }

    #[test]
    fn rounding_rejects_large_residual() {
        assert_eq!(round_checked(2.0000000001, 1e-6, "x").unwrap(), 2);
        assert!(round_checked(2.4, 1e-6, "x").is_err());
    }

    #[test]
    fn phase_fix_makes_leading_entry_positive() {
        let m = CMat::from_row_slice(1, 2, &[ZERO, C64::new(0.0, 2.0)]);
        let f = fix_phase(&m, 1e-12);
        assert!((f[(0, 1)] - C64::new(2.0, 0.0)).norm() < 1e-12);
    }
}
