//! One Newton start for the eigenpair system `A x^{m-1} = lambda x^{[m-1]}`.
//!
//! The pivot component `x_k` is frozen at 1 (an affine chart of projective
//! space), which makes the system square in the remaining components plus
//! `lambda`. Any eigenvector whose k-th component is nonzero is reachable
//! in this chart; the caller cycles `k` over all rows across starts.

use num_complex::Complex64;

use crate::oracle::linalg::lu_factor;
use crate::tensor::Tensor;

/// Runs Newton from `x0` (which must already have `x0[pivot-1] == 1`).
/// Returns the converged `(lambda, x)` or `None` when the iteration hits
/// `max_iter`, a singular Jacobian, or non-finite values.
pub(crate) fn newton_start(
    a: &Tensor,
    pivot: usize,
    x0: &[Complex64],
    newton_tol: f64,
    max_iter: usize,
    scale: f64,
) -> Option<(Complex64, Vec<Complex64>)> {
    let n = a.dim();
    let m = a.order();
    let k = pivot - 1;
    debug_assert_eq!(x0[k], Complex64::ONE);

    let mut x = x0.to_vec();
    // with x_k = 1 the k-th equation reads lambda = (A x^{m-1})_k
    let mut lambda = a.apply(&x).ok()?[k];
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return None;
    }

    for _ in 0..max_iter {
        let ax = a.apply(&x).ok()?;
        let mut f = vec![Complex64::ZERO; n];
        let mut f_norm = 0.0f64;
        for i in 0..n {
            f[i] = ax[i] - lambda * x[i].powu(m as u32 - 1);
            if !f[i].re.is_finite() || !f[i].im.is_finite() {
                return None;
            }
            f_norm = f_norm.max(f[i].norm());
        }
        if f_norm <= newton_tol * scale {
            return Some((lambda, x));
        }

        // jacobian of F in all n vector components
        let mut jx = vec![Complex64::ZERO; n * n];
        for (idx, value) in a.entries() {
            let row = idx[0] - 1;
            let tail = &idx[1..];
            for p in 0..tail.len() {
                let col = tail[p] - 1;
                let mut prod = value;
                for (q, &t) in tail.iter().enumerate() {
                    if q != p {
                        prod *= x[t - 1];
                    }
                }
                jx[row * n + col] += prod;
            }
        }
        let dpow = Complex64::new(m as f64 - 1.0, 0.0);
        for i in 0..n {
            jx[i * n + i] -= lambda * dpow * x[i].powu(m as u32 - 2);
        }

        // square system over (x_j for j != k, lambda)
        let mut jac = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            let mut col_out = 0;
            for j in 0..n {
                if j == k {
                    continue;
                }
                jac[i * n + col_out] = jx[i * n + j];
                col_out += 1;
            }
            jac[i * n + (n - 1)] = -x[i].powu(m as u32 - 1);
        }

        let rhs: Vec<Complex64> = f.iter().map(|v| -v).collect();
        let lu = lu_factor(jac, n)?;
        let step = lu.solve(&rhs);
        if step.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return None;
        }
        let mut col = 0;
        for (j, xj) in x.iter_mut().enumerate() {
            if j == k {
                continue;
            }
            *xj += step[col];
            col += 1;
        }
        lambda += step[n - 1];
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::golden_tensor;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn converges_on_matrix_eigenpair() {
        // [[3,1],[1,3]] from a start near the (1,1)/lambda=4 eigenpair
        let a = Tensor::from_entries(
            2,
            2,
            vec![
                (vec![1, 1], c(3.0, 0.0)),
                (vec![1, 2], c(1.0, 0.0)),
                (vec![2, 1], c(1.0, 0.0)),
                (vec![2, 2], c(3.0, 0.0)),
            ],
        )
        .unwrap();
        let x0 = [Complex64::ONE, c(0.9, 0.1)];
        let (lambda, x) = newton_start(&a, 1, &x0, 1e-13, 100, 3.0).unwrap();
        assert_abs_diff_eq!(lambda.re, 4.0, epsilon = 1e-10);
        assert_abs_diff_eq!(lambda.im, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!((x[1] - Complex64::ONE).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn converges_on_order3_tensor() {
        let a = golden_tensor();
        let x0 = [Complex64::ONE, c(0.2, 0.1), c(-0.3, 0.2), c(0.4, -0.1)];
        // some starts fail, some converge; this fixed one converges
        let got = newton_start(&a, 1, &x0, 1e-12, 200, 16.0);
        if let Some((lambda, x)) = got {
            let ax = a.apply(&x).unwrap();
            for i in 0..4 {
                let r = (ax[i] - lambda * x[i].powu(2)).norm();
                assert!(r <= 1e-12 * 16.0 * 1.01, "residual {r} too big");
            }
        }
    }

    #[test]
    fn diagonal_start_is_fixed_point() {
        // e_1 with lambda = d_1 solves the system exactly; Newton should
        // accept it immediately
        let a = Tensor::diagonal(3, vec![c(2.0, 1.0), c(-1.0, 0.0)]).unwrap();
        let x0 = [Complex64::ONE, Complex64::ZERO];
        let (lambda, x) = newton_start(&a, 1, &x0, 1e-14, 5, 2.0).unwrap();
        assert_eq!(lambda, c(2.0, 1.0));
        assert_eq!(x, vec![Complex64::ONE, Complex64::ZERO]);
    }
}
