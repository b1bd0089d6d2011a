//! Exact eigenvalue path for order-2 tensors (matrices): characteristic
//! polynomial by the Faddeev-LeVerrier recurrence, roots by
//! Aberth-Ehrlich, eigenvectors by shifted inverse iteration with a
//! Rayleigh-quotient polish.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::linalg::{lu_factor, monic_roots};
use crate::oracle::normalize_pivot;
use crate::tensor::Tensor;

/// Row-major dense copy of an order-2 tensor.
pub(crate) fn dense_matrix(a: &Tensor) -> Vec<Complex64> {
    debug_assert_eq!(a.order(), 2);
    let n = a.dim();
    let mut mat = vec![Complex64::ZERO; n * n];
    for (idx, value) in a.entries() {
        mat[(idx[0] - 1) * n + (idx[1] - 1)] = value;
    }
    mat
}

/// Coefficients (low to high, monic leading 1 implied) of
/// `det(zI - A) = z^n + c[n-1] z^{n-1} + ... + c[0]`.
pub(crate) fn char_poly(mat: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::ZERO; n];
    let mut b = mat.to_vec();
    let mut ck = -trace(&b, n);
    coeffs[n - 1] = ck;
    for k in 2..=n {
        // B <- A (B + c_{k-1} I)
        let mut shifted = b;
        for i in 0..n {
            shifted[i * n + i] += ck;
        }
        b = mat_mul(mat, &shifted, n);
        ck = -trace(&b, n) / k as f64;
        coeffs[n - k] = ck;
    }
    coeffs
}

fn trace(mat: &[Complex64], n: usize) -> Complex64 {
    (0..n).map(|i| mat[i * n + i]).sum()
}

fn mat_mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::ZERO {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// All eigenvalues of the matrix, with multiplicity, as polynomial roots.
pub(crate) fn matrix_eigenvalues(mat: &[Complex64], n: usize) -> Vec<Complex64> {
    monic_roots(&char_poly(mat, n))
}

/// Given an approximate eigenvalue, runs shifted inverse iteration to
/// recover an eigenvector, then replaces the eigenvalue by the Rayleigh
/// quotient (which repairs the limited accuracy of clustered polynomial
/// roots). The returned vector has its first max-modulus component equal
/// to exactly 1. `None` means the iteration degenerated, which the caller
/// counts as a discarded candidate.
pub(crate) fn refine_eigenpair(
    mat: &[Complex64],
    n: usize,
    lambda0: Complex64,
) -> Option<(Complex64, Vec<Complex64>)> {
    // fixed random start vector: deterministic, and unlike the all-ones
    // vector it is not accidentally an eigenvector of the structured
    // matrices that show up in tests
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1e55);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    normalize_pivot(&mut v)?;

    let mut delta = 1e-12 * (1.0 + lambda0.norm());
    let lu = loop {
        let mut shifted = mat.to_vec();
        let shift = lambda0 + Complex64::new(delta, 0.0);
        for i in 0..n {
            shifted[i * n + i] -= shift;
        }
        match lu_factor(shifted, n) {
            Some(lu) => break lu,
            None if delta < 1.0 => delta *= 1e4,
            None => return None,
        }
    };

    let mut best: Option<(Complex64, Vec<Complex64>, f64)> = None;
    for _ in 0..8 {
        let w = lu.solve(&v);
        if w.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            break;
        }
        v = w;
        normalize_pivot(&mut v)?;
        // Rayleigh quotient and residual for the current vector
        let av = mat_vec(mat, &v, n);
        let mut num = Complex64::ZERO;
        let mut den = Complex64::ZERO;
        for i in 0..n {
            num += v[i].conj() * av[i];
            den += v[i].conj() * v[i];
        }
        let lambda = num / den;
        let resid = (0..n)
            .map(|i| (av[i] - lambda * v[i]).norm())
            .fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(_, _, r)| resid < *r) {
            best = Some((lambda, v.clone(), resid));
        }
        if resid < 1e-15 * matrix_scale(mat) {
            break;
        }
    }
    best.map(|(lambda, x, _)| (lambda, x))
}

fn mat_vec(mat: &[Complex64], v: &[Complex64], n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| (0..n).map(|j| mat[i * n + j] * v[j]).sum())
        .collect()
}

fn matrix_scale(mat: &[Complex64]) -> f64 {
    mat.iter().map(|c| c.norm()).fold(1.0, f64::max)
}
