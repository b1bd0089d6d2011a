//! Dense complex linear algebra at the small sizes the oracle needs:
//! LU solves for Newton steps and inverse iteration, and an
//! Aberth-Ehrlich root finder for characteristic polynomials.

use num_complex::Complex64;

/// LU factorization with partial pivoting, row-major storage.
pub(crate) struct Lu {
    n: usize,
    data: Vec<Complex64>,
    piv: Vec<usize>,
}

/// Factors an n x n matrix. Returns `None` when some pivot column is
/// exactly zero (the matrix is singular to working precision; callers
/// either discard the Newton start or nudge their shift).
pub(crate) fn lu_factor(mut data: Vec<Complex64>, n: usize) -> Option<Lu> {
    debug_assert_eq!(data.len(), n * n);
    let mut piv = vec![0usize; n];
    for col in 0..n {
        let mut best = col;
        let mut best_mod = data[col * n + col].norm();
        for row in col + 1..n {
            let m = data[row * n + col].norm();
            if m > best_mod {
                best = row;
                best_mod = m;
            }
        }
        if best_mod == 0.0 {
            return None;
        }
        piv[col] = best;
        if best != col {
            for k in 0..n {
                data.swap(col * n + k, best * n + k);
            }
        }
        let pivot = data[col * n + col];
        for row in col + 1..n {
            let factor = data[row * n + col] / pivot;
            data[row * n + col] = factor;
            for k in col + 1..n {
                let sub = factor * data[col * n + k];
                data[row * n + k] -= sub;
            }
        }
    }
    Some(Lu { n, data, piv })
}

impl Lu {
    pub(crate) fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut x = b.to_vec();
        for col in 0..n {
            x.swap(col, self.piv[col]);
        }
        // forward substitution, unit lower triangle
        for row in 1..n {
            for col in 0..row {
                let sub = self.data[row * n + col] * x[col];
                x[row] -= sub;
            }
        }
        // back substitution
        for row in (0..n).rev() {
            for col in row + 1..n {
                let sub = self.data[row * n + col] * x[col];
                x[row] -= sub;
            }
            x[row] /= self.data[row * n + row];
        }
        x
    }
}

/// Evaluates the monic polynomial `z^n + c[n-1] z^{n-1} + ... + c[0]`
/// and its derivative at `z`.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::ONE;
    let mut dp = Complex64::ZERO;
    for &coeff in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + coeff;
    }
    (p, dp)
}

/// All roots of the monic polynomial with low-to-high coefficients `c`
/// (degree = c.len()), by Aberth-Ehrlich iteration from a deterministic
/// circle of initial points. Accuracy for a root of multiplicity q is
/// about machine-epsilon^(1/q); simple roots come out near full
/// precision.
pub(crate) fn monic_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len();
    if n == 0 {
        return Vec::new();
    }
    // Cauchy bound: every root has modulus below 1 + max |c_k|
    let radius = 1.0 + c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.35) / n as f64 + 0.42;
            Complex64::from_polar(radius * 0.8, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut settled = true;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            if p == Complex64::ZERO {
                continue;
            }
            let ratio = if dp == Complex64::ZERO {
                // sitting on a critical point: take a fixed sidestep
                Complex64::new(radius * 1e-3, radius * 1e-3)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::ZERO;
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 1e-300 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::ONE - ratio * repulsion;
            let step = if denom.norm() > 1e-300 { ratio / denom } else { ratio };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() > 1e-13 * (1.0 + z[i].norm()) {
                settled = false;
            }
        }
        if settled {
            break;
        }
    }
    z
}
