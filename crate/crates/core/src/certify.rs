//! Nonsingularity certificates.
//!
//! Both certificates assert `det(A) != 0` by showing `0` cannot be an
//! eigenvalue: the first checks that `0` escapes every `omega_i`, the
//! second that `0` escapes every `theta_ij`. Each is sufficient, never
//! necessary, so the negative verdict is `Unknown` rather than singular.
//!
//! Comparisons are exact (no tolerance): a borderline value must come out
//! `Unknown`. The left/right sides reuse the region module's term helpers
//! evaluated at `z = 0`, which makes `certify_gersgorin` agree with
//! `region_contains(Omega, 0)` exactly, not just approximately, and
//! likewise for the Brauer pair.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::region::{delta_terms, gamma_terms, k_terms, lambda_terms};
use crate::tensor::RowSums;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMethod {
    GersgorinExclusion,
    BrauerExclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Nonsingular,
    Unknown,
}

/// What the certificate had to show for one row or ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Row(usize),
    Pair(usize, usize),
}

/// Which disjunct fired, with the two compared values for auditing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    /// `0` lies strictly outside the inclusion set for this target
    /// (`lhs > rhs`, where `lhs <= rhs` would be membership).
    OutsideInclusion { lhs: f64, rhs: f64 },
    /// `0` lies strictly inside an exclusion set through index `via`
    /// (`lhs < rhs`).
    InsideExclusion { via: usize, lhs: f64, rhs: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub target: Target,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub method: CertMethod,
    pub verdict: Verdict,
    /// One entry per target whose disjunction fired, in scan order. When
    /// the verdict is `Nonsingular` this covers every row (respectively
    /// every ordered pair); when `Unknown` the targets missing from this
    /// list are the ones that blocked the certificate.
    pub witnesses: Vec<Witness>,
}

impl Certificate {
    pub fn is_nonsingular(&self) -> bool {
        self.verdict == Verdict::Nonsingular
    }
}

/// Geršgorin-with-exclusion certificate: nonsingular iff for every row
/// `i`, either `|d_i| > r_i` or some `j != i` has `|d_j| < 2|a_{ji...i}|
/// - r_j`. Equivalent to `0` not lying in the `omega` union.
pub fn certify_gersgorin(s: &RowSums) -> Certificate {
    let z = Complex64::ZERO;
    let mut witnesses = Vec::new();
    let mut all_covered = true;
    for i in 1..=s.dim() {
        let (lhs, rhs) = gamma_terms(s, i, z);
        if lhs > rhs {
            witnesses.push(Witness {
                target: Target::Row(i),
                branch: Branch::OutsideInclusion { lhs, rhs },
            });
            continue;
        }
        let mut found = false;
        for j in 1..=s.dim() {
            if j == i {
                continue;
            }
            let (lhs, rhs) = delta_terms(s, i, j, z);
            if lhs < rhs {
                witnesses.push(Witness {
                    target: Target::Row(i),
                    branch: Branch::InsideExclusion { via: j, lhs, rhs },
                });
                found = true;
                break;
            }
        }
        all_covered &= found;
    }
    Certificate {
        method: CertMethod::GersgorinExclusion,
        verdict: if all_covered {
            Verdict::Nonsingular
        } else {
            Verdict::Unknown
        },
        witnesses,
    }
}

/// Brauer-type certificate: nonsingular iff for every ordered pair
/// `(i, j)`, `j != i`, either `(|d_i| - r_i^j) |d_j| > |a_{ij...j}| r_j`
/// or some `p != i` has `(|d_i| + r_i^p) |d_p| < |a_{ip...p}|
/// (2|a_{pi...i}| - r_p)`. Equivalent to `0` not lying in the `theta`
/// union. Needs `n >= 2`.
pub fn certify_brauer(s: &RowSums) -> Result<Certificate> {
    if s.dim() < 2 {
        return Err(Error::RequiresDimTwo {
            family: "the brauer certificate",
        });
    }
    let z = Complex64::ZERO;
    let mut witnesses = Vec::new();
    let mut all_covered = true;
    for i in 1..=s.dim() {
        for j in 1..=s.dim() {
            if j == i {
                continue;
            }
            let (lhs, rhs) = k_terms(s, i, j, z);
            if lhs > rhs {
                witnesses.push(Witness {
                    target: Target::Pair(i, j),
                    branch: Branch::OutsideInclusion { lhs, rhs },
                });
                continue;
            }
            let mut found = false;
            for p in 1..=s.dim() {
                if p == i {
                    continue;
                }
                let (lhs, rhs) = lambda_terms(s, i, p, z);
                if lhs < rhs {
                    witnesses.push(Witness {
                        target: Target::Pair(i, j),
                        branch: Branch::InsideExclusion { via: p, lhs, rhs },
                    });
                    found = true;
                    break;
                }
            }
            all_covered &= found;
        }
    }
    Ok(Certificate {
        method: CertMethod::BrauerExclusion,
        verdict: if all_covered {
            Verdict::Nonsingular
        } else {
            Verdict::Unknown
        },
        witnesses,
    })
}
