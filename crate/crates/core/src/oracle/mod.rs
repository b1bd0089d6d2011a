//! Desk-scale eigenpair oracle for `A x^{m-1} = lambda x^{[m-1]}`.
//!
//! Three paths, picked automatically:
//!
//! * diagonal tensors: the spectrum is exactly the diagonal (if some
//!   `x_i != 0` then `(d_i - lambda) x_i^{m-1} = 0` forces
//!   `lambda = d_i`), so the answer is written down, complete, with zero
//!   residual, for any order;
//! * order 2 (matrices): characteristic polynomial plus root finder plus
//!   inverse iteration, giving the complete spectrum with multiplicity;
//! * everything else: multi-start Newton on the square system obtained by
//!   pinning one vector component to 1. Finding an eigenvalue proves it
//!   exists; not finding one proves nothing, so callers must treat the
//!   output as a sample of the spectrum, not an enumeration.
//!
//! Every accepted pair satisfies `residual <= 1e-10 * scale` with
//! `scale = max(1, largest entry modulus)`; output order is deterministic
//! (sorted by eigenvalue, then vector), and a fixed seed makes the whole
//! run reproducible.

mod linalg;
mod matrix;
mod newton;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tensor::Tensor;

/// Residual acceptance threshold, relative to the tensor scale.
pub const ACCEPT_RESIDUAL: f64 = 1e-10;

/// One approximate solution of the eigenpair system. The vector is
/// normalized so its first component of largest modulus equals exactly
/// `1 + 0i` (a canonical representative of the projective eigenvector).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: Complex64,
    pub x: Vec<Complex64>,
    /// Infinity norm of `A x^{m-1} - lambda x^{[m-1]}`.
    pub residual: f64,
}

/// Solver knobs. `Default` gives the reference configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Number of Newton starts; `None` means `200 * n * (m - 1)`.
    pub starts: Option<usize>,
    /// Newton stops when the residual drops below `newton_tol * scale`.
    pub newton_tol: f64,
    /// Iteration cap per start.
    pub max_iter: usize,
    /// Two pairs merge when their eigenvalues are within this distance
    /// and their eigenvectors align projectively to the same tolerance.
    pub dedup_tol: f64,
    /// Seed for the start-vector generator.
    pub seed: u64,
    /// Run multi-start Newton even where an exact path exists (used to
    /// cross-validate the two).
    pub force_newton: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            starts: None,
            newton_tol: 1e-12,
            max_iter: 200,
            dedup_tol: 1e-6,
            seed: 42,
            force_newton: false,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == Some(0) {
            return Err(Error::InvalidConfig("starts must be at least 1".into()));
        }
        if !self.newton_tol.is_finite() || self.newton_tol <= 0.0 {
            return Err(Error::InvalidConfig("newton_tol must be positive".into()));
        }
        if !self.dedup_tol.is_finite() || self.dedup_tol <= 0.0 {
            return Err(Error::InvalidConfig("dedup_tol must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    fn starts_for(&self, a: &Tensor) -> usize {
        self.starts
            .unwrap_or_else(|| 200 * a.dim() * (a.order() - 1))
            .max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Closed form for diagonal tensors.
    Diagonal,
    /// Characteristic polynomial (order 2 only).
    CharPoly,
    /// Multi-start Newton.
    Newton,
}

/// Eigenpairs plus run diagnostics. An empty `pairs` with nonzero
/// `starts_attempted` means no start converged; that is inconclusive,
/// not an error.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub pairs: Vec<EigenPair>,
    pub method: SolveMethod,
    pub starts_attempted: usize,
    pub converged_starts: usize,
    /// Starts or candidates dropped: divergence, singular Jacobian,
    /// non-finite values, or a residual above the acceptance threshold.
    pub discarded: usize,
}

/// `max(1, largest entry modulus)`; residual thresholds scale with it.
pub fn scale_of(a: &Tensor) -> f64 {
    a.entries().map(|(_, v)| v.norm()).fold(1.0, f64::max)
}

/// Infinity norm of `A y^{m-1} - lambda y^{[m-1]}` where `y` is `x`
/// normalized by its first max-modulus component.
pub fn residual(a: &Tensor, lambda: Complex64, x: &[Complex64]) -> Result<f64> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: x.len(),
        });
    }
    let mut y = x.to_vec();
    normalize_pivot(&mut y).ok_or(Error::ZeroVector)?;
    let ay = a.apply(&y)?;
    let p = a.order() as u32 - 1;
    Ok(y.iter()
        .zip(&ay)
        .map(|(yi, ayi)| (ayi - lambda * yi.powu(p)).norm())
        .fold(0.0, f64::max))
}

/// Divides by the first component of largest modulus, making it exactly
/// `1 + 0i`. `None` for the zero vector.
pub(crate) fn normalize_pivot(v: &mut [Complex64]) -> Option<()> {
    let mut t = 0;
    let mut t_mod = 0.0;
    for (i, c) in v.iter().enumerate() {
        let m = c.norm();
        if m > t_mod {
            t = i;
            t_mod = m;
        }
    }
    if t_mod == 0.0 || !t_mod.is_finite() {
        return None;
    }
    let pivot = v[t];
    for c in v.iter_mut() {
        *c /= pivot;
    }
    v[t] = Complex64::ONE;
    Some(())
}

/// Finds eigenpairs of `A`. See the module docs for the path selection
/// and the completeness caveats.
pub fn eigen_solve(a: &Tensor, cfg: &OracleConfig) -> Result<SolveOutcome> {
    cfg.validate()?;
    let scale = scale_of(a);
    if !cfg.force_newton {
        if a.is_diagonal() {
            return Ok(diagonal_solve(a));
        }
        if a.order() == 2 {
            return Ok(matrix_solve(a, cfg, scale));
        }
    }
    Ok(newton_solve(a, cfg, scale))
}

fn diagonal_solve(a: &Tensor) -> SolveOutcome {
    let n = a.dim();
    let mut pairs = Vec::with_capacity(n);
    for i in 1..=n {
        let lambda = a.get(&vec![i; a.order()]).expect("diagonal tuple is valid");
        let mut x = vec![Complex64::ZERO; n];
        x[i - 1] = Complex64::ONE;
        let r = residual(a, lambda, &x).expect("basis vector is valid");
        pairs.push(EigenPair {
            lambda,
            x,
            residual: r,
        });
    }
    sort_pairs(&mut pairs);
    SolveOutcome {
        pairs,
        method: SolveMethod::Diagonal,
        starts_attempted: 0,
        converged_starts: 0,
        discarded: 0,
    }
}

fn matrix_solve(a: &Tensor, cfg: &OracleConfig, scale: f64) -> SolveOutcome {
    let n = a.dim();
    let mat = matrix::dense_matrix(a);
    let roots = matrix::matrix_eigenvalues(&mat, n);
    let attempted = roots.len();
    let mut converged = 0;
    let mut discarded = 0;
    let mut cands = Vec::new();
    for root in roots {
        match matrix::refine_eigenpair(&mat, n, root) {
            Some((lambda, x)) => {
                let r = residual(a, lambda, &x).expect("refined vector is nonzero");
                if r <= ACCEPT_RESIDUAL * scale {
                    converged += 1;
                    cands.push(EigenPair {
                        lambda,
                        x,
                        residual: r,
                    });
                } else {
                    discarded += 1;
                }
            }
            None => discarded += 1,
        }
    }
    SolveOutcome {
        pairs: dedup(cands, cfg.dedup_tol),
        method: SolveMethod::CharPoly,
        starts_attempted: attempted,
        converged_starts: converged,
        discarded,
    }
}

fn newton_solve(a: &Tensor, cfg: &OracleConfig, scale: f64) -> SolveOutcome {
    let n = a.dim();
    let starts = cfg.starts_for(a);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut converged = 0;
    let mut discarded = 0;
    let mut cands = Vec::new();
    for s in 0..starts {
        let pivot = (s % n) + 1;
        let mut x0 = vec![Complex64::ZERO; n];
        for (j, slot) in x0.iter_mut().enumerate() {
            if j == pivot - 1 {
                *slot = Complex64::ONE;
            } else {
                // uniform over the closed unit disc
                let r = rng.gen::<f64>().sqrt();
                let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                *slot = Complex64::from_polar(r, theta);
            }
        }
        let run = newton::newton_start(a, pivot, &x0, cfg.newton_tol, cfg.max_iter, scale);
        let Some((lambda, mut x)) = run else {
            discarded += 1;
            continue;
        };
        if !lambda.re.is_finite() || !lambda.im.is_finite() || normalize_pivot(&mut x).is_none() {
            discarded += 1;
            continue;
        }
        let r = residual(a, lambda, &x).expect("normalized vector is nonzero");
        if r <= ACCEPT_RESIDUAL * scale {
            converged += 1;
            cands.push(EigenPair {
                lambda,
                x,
                residual: r,
            });
        } else {
            discarded += 1;
        }
    }
    SolveOutcome {
        pairs: dedup(cands, cfg.dedup_tol),
        method: SolveMethod::Newton,
        starts_attempted: starts,
        converged_starts: converged,
        discarded,
    }
}

fn sort_pairs(pairs: &mut [EigenPair]) {
    pairs.sort_by(|a, b| {
        a.lambda
            .re
            .partial_cmp(&b.lambda.re)
            .unwrap()
            .then(a.lambda.im.partial_cmp(&b.lambda.im).unwrap())
            .then_with(|| vec_cmp(&a.x, &b.x))
    });
}

fn vec_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x
            .re
            .partial_cmp(&y.re)
            .unwrap()
            .then(x.im.partial_cmp(&y.im).unwrap());
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// True when the two pivot-normalized vectors represent the same
/// projective point: a single complex factor carries one onto the other
/// within `tol` per component. This absorbs the `(m-1)`-th root of unity
/// ambiguity (and any other phase) between converged representatives.
fn vectors_aligned(x: &[Complex64], y: &[Complex64], tol: f64) -> bool {
    let mut t = 0;
    let mut t_mod = 0.0;
    for (i, c) in y.iter().enumerate() {
        let m = c.norm();
        if m > t_mod {
            t = i;
            t_mod = m;
        }
    }
    // both sides are pivot-normalized, so matching vectors cannot have a
    // small component where the other has its maximum
    if x[t].norm() < 0.5 {
        return false;
    }
    let factor = y[t] / x[t];
    x.iter()
        .zip(y)
        .all(|(xi, yi)| (factor * xi - yi).norm() <= tol)
}

/// Merges duplicates (same eigenvalue within `tol` and projectively
/// aligned eigenvectors), keeping the representative with the smallest
/// residual, and returns the survivors in canonical order.
fn dedup(mut cands: Vec<EigenPair>, tol: f64) -> Vec<EigenPair> {
    sort_pairs(&mut cands);
    let mut reps: Vec<EigenPair> = Vec::new();
    'next: for cand in cands {
        for rep in reps.iter_mut() {
            if (cand.lambda - rep.lambda).norm() <= tol
                && vectors_aligned(&cand.x, &rep.x, tol)
            {
                if cand.residual < rep.residual {
                    *rep = cand;
                }
                continue 'next;
            }
        }
        reps.push(cand);
    }
    sort_pairs(&mut reps);
    reps
}

/// JSON-lines rendering: one object per pair, fields `lambda_re`,
/// `lambda_im`, `x` (array of `[re, im]`), `residual`. Floats use the
/// shortest representation that round-trips, so equal runs give equal
/// bytes.
pub fn to_jsonl(pairs: &[EigenPair]) -> String {
    let mut out = String::new();
    for p in pairs {
        out.push_str(&format!(
            "{{\"lambda_re\":{:?},\"lambda_im\":{:?},\"x\":[",
            p.lambda.re, p.lambda.im
        ));
        for (k, c) in p.x.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&format!("[{:?},{:?}]", c.re, c.im));
        }
        out.push_str(&format!("],\"residual\":{:?}}}\n", p.residual));
    }
    out
}
