//! Eigenvalue localization sets in the complex plane.
//!
//! For a tensor with row data `S` (diagonal `d_i`, radii `r_i`, couplings
//! `|a_{ij...j}|`, partial radii `r_i^j`), the families are:
//!
//! * `gamma_i`: the disk `|z - d_i| <= r_i`; `gamma` is their union and
//!   contains every eigenvalue.
//! * `delta_ij`: the open disk `|z - d_j| < 2|a_{ji...i}| - r_j` (mind the
//!   index order: it is centered at `d_j` and its radius uses row `j`).
//!   No eigenvalue lies in it, so it can be carved out of `gamma_i`.
//! * `omega_i = gamma_i \ union of delta_ij`; `omega` still contains the
//!   spectrum but is never larger than `gamma`.
//! * `k_ij`: the Cassini-style oval `(|z - d_i| - r_i^j) |z - d_j| <=
//!   |a_{ij...j}| r_j`; the union `k` over ordered pairs also contains the
//!   spectrum and is contained in `gamma`.
//! * `lambda_ip`: the open set `(|z - d_i| + r_i^p) |z - d_p| <
//!   |a_{ip...p}| (2|a_{pi...i}| - r_p)`, eigenvalue-free.
//! * `theta_ij = k_ij \ union of lambda_ip`; the union `theta` is the
//!   sharpest set here, with `theta` contained in `k` contained in `gamma`.
//!
//! Boundary handling: inclusion families use the non-strict `<=` and a
//! tolerance `tol` widens them; exclusion families use the strict `<` and
//! the same `tol` shrinks them. A positive tolerance therefore never
//! ejects a true eigenvalue, it only blurs set boundaries outward.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::RowSums;

/// A named localization set, possibly indexed. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Union of all `gamma_i`.
    Gamma,
    GammaI(usize),
    DeltaIj(usize, usize),
    /// Union of `delta_ij` over `j != i` for fixed row `i`.
    DeltaI(usize),
    /// Union of all `omega_i`.
    Omega,
    OmegaI(usize),
    /// Union of `k_ij` over all ordered pairs.
    K,
    KIj(usize, usize),
    LambdaIp(usize, usize),
    /// Union of `lambda_ip` over `p != i` for fixed row `i`.
    LambdaI(usize),
    /// Union of `theta_ij` over all ordered pairs.
    Theta,
    ThetaIj(usize, usize),
}

impl Region {
    /// Checks index arity and range against a tensor dimension. The union
    /// families `k` and `theta` need `n >= 2`; the per-row unions
    /// `delta_i`/`lambda_i` are legal at `n = 1` (they are empty).
    pub fn validate(&self, dim: usize) -> Result<()> {
        match *self {
            Region::Gamma | Region::Omega => Ok(()),
            Region::GammaI(i) | Region::OmegaI(i) | Region::DeltaI(i) | Region::LambdaI(i) => {
                check_index(i, dim)
            }
            Region::DeltaIj(i, j)
            | Region::KIj(i, j)
            | Region::LambdaIp(i, j)
            | Region::ThetaIj(i, j) => check_pair(i, j, dim),
            Region::K => {
                if dim < 2 {
                    Err(Error::RequiresDimTwo { family: "k" })
                } else {
                    Ok(())
                }
            }
            Region::Theta => {
                if dim < 2 {
                    Err(Error::RequiresDimTwo { family: "theta" })
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Region::Gamma => write!(f, "gamma"),
            Region::GammaI(i) => write!(f, "gamma_{i}"),
            Region::DeltaIj(i, j) => write!(f, "delta_{i}_{j}"),
            Region::DeltaI(i) => write!(f, "delta_{i}"),
            Region::Omega => write!(f, "omega"),
            Region::OmegaI(i) => write!(f, "omega_{i}"),
            Region::K => write!(f, "k"),
            Region::KIj(i, j) => write!(f, "k_{i}_{j}"),
            Region::LambdaIp(i, p) => write!(f, "lambda_{i}_{p}"),
            Region::LambdaI(i) => write!(f, "lambda_{i}"),
            Region::Theta => write!(f, "theta"),
            Region::ThetaIj(i, j) => write!(f, "theta_{i}_{j}"),
        }
    }
}

impl FromStr for Region {
    type Err = Error;

    /// Parses names like `gamma`, `gamma_2`, `delta_1_4`, `k_2_1`, `theta`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownRegion(s.to_string());
        let mut parts = s.split('_');
        let family = parts.next().ok_or_else(unknown)?;
        let idx: Vec<usize> = parts
            .map(|p| p.parse::<usize>().map_err(|_| unknown()))
            .collect::<Result<_>>()?;
        match (family, idx.as_slice()) {
            ("gamma", []) => Ok(Region::Gamma),
            ("gamma", &[i]) => Ok(Region::GammaI(i)),
            ("delta", &[i, j]) => Ok(Region::DeltaIj(i, j)),
            ("delta", &[i]) => Ok(Region::DeltaI(i)),
            ("omega", []) => Ok(Region::Omega),
            ("omega", &[i]) => Ok(Region::OmegaI(i)),
            ("k", []) => Ok(Region::K),
            ("k", &[i, j]) => Ok(Region::KIj(i, j)),
            ("lambda", &[i, p]) => Ok(Region::LambdaIp(i, p)),
            ("lambda", &[i]) => Ok(Region::LambdaI(i)),
            ("theta", []) => Ok(Region::Theta),
            ("theta", &[i, j]) => Ok(Region::ThetaIj(i, j)),
            _ => Err(unknown()),
        }
    }
}

/// A region plus the boundary tolerance to evaluate it with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionQuery {
    pub region: Region,
    /// Nonnegative boundary slack; widens inclusion sets, shrinks
    /// exclusion sets.
    pub tol: f64,
}

impl RegionQuery {
    pub fn new(region: Region, tol: f64) -> Result<Self> {
        check_tol(tol)?;
        Ok(RegionQuery { region, tol })
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        check_tol(self.tol)?;
        self.region.validate(dim)
    }
}

/// A disk in the complex plane. A negative radius encodes the empty set
/// (exclusion disks frequently come out empty).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskParams {
    pub center: Complex64,
    pub radius: f64,
}

impl DiskParams {
    pub fn is_empty(&self) -> bool {
        self.radius < 0.0
    }
}

/// Axis-aligned rectangle in the complex plane. May be degenerate (zero
/// width or height); rasterization validates with [`Window::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn validate(&self) -> Result<()> {
        let ok = self.re_min.is_finite()
            && self.re_max.is_finite()
            && self.im_min.is_finite()
            && self.im_max.is_finite()
            && self.re_min < self.re_max
            && self.im_min < self.im_max;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidWindow)
        }
    }

    pub fn re_extent(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn im_extent(&self) -> f64 {
        self.im_max - self.im_min
    }
}

// The left-hand/right-hand sides of each family's defining comparison.
// Certificates evaluate the same expressions at z = 0, so certificate
// verdicts and membership tests can never disagree by a rounding hair.

pub(crate) fn gamma_terms(s: &RowSums, i: usize, z: Complex64) -> (f64, f64) {
    ((z - s.diag(i)).norm(), s.radius(i))
}

pub(crate) fn delta_terms(s: &RowSums, i: usize, j: usize, z: Complex64) -> (f64, f64) {
    (
        (z - s.diag(j)).norm(),
        2.0 * s.coupling(j, i) - s.radius(j),
    )
}

pub(crate) fn k_terms(s: &RowSums, i: usize, j: usize, z: Complex64) -> (f64, f64) {
    let di = (z - s.diag(i)).norm();
    let dj = (z - s.diag(j)).norm();
    // the left factor may be negative; the inequality wants it that way
    ((di - s.partial_radius(i, j)) * dj, s.coupling(i, j) * s.radius(j))
}

pub(crate) fn lambda_terms(s: &RowSums, i: usize, p: usize, z: Complex64) -> (f64, f64) {
    let di = (z - s.diag(i)).norm();
    let dp = (z - s.diag(p)).norm();
    (
        (di + s.partial_radius(i, p)) * dp,
        s.coupling(i, p) * (2.0 * s.coupling(p, i) - s.radius(p)),
    )
}

/// Disk parameters of `gamma_i`.
pub fn gamma_disk(s: &RowSums, i: usize) -> Result<DiskParams> {
    check_index(i, s.dim())?;
    Ok(DiskParams {
        center: s.diag(i),
        radius: s.radius(i),
    })
}

/// Disk parameters of `delta_ij`: centered at `d_j`, open, often empty.
pub fn delta_disk(s: &RowSums, i: usize, j: usize) -> Result<DiskParams> {
    check_pair(i, j, s.dim())?;
    Ok(DiskParams {
        center: s.diag(j),
        radius: 2.0 * s.coupling(j, i) - s.radius(j),
    })
}

/// `|z - d_i| <= r_i + tol`.
pub fn gamma_i_contains(s: &RowSums, i: usize, z: Complex64, tol: f64) -> Result<bool> {
    check_index(i, s.dim())?;
    check_tol(tol)?;
    let (lhs, rhs) = gamma_terms(s, i, z);
    Ok(lhs <= rhs + tol)
}

/// `|z - d_j| < 2|a_{ji...i}| - r_j - tol` (strict).
pub fn delta_ij_contains(s: &RowSums, i: usize, j: usize, z: Complex64, tol: f64) -> Result<bool> {
    check_pair(i, j, s.dim())?;
    check_tol(tol)?;
    let (lhs, rhs) = delta_terms(s, i, j, z);
    Ok(lhs < rhs - tol)
}

/// Union of `delta_ij` over `j != i`; empty (false) when `n = 1`.
pub fn delta_i_contains(s: &RowSums, i: usize, z: Complex64, tol: f64) -> Result<bool> {
    check_index(i, s.dim())?;
    check_tol(tol)?;
    for j in 1..=s.dim() {
        if j != i && delta_ij_contains(s, i, j, z, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `gamma_i` minus all its exclusion disks.
pub fn omega_i_contains(s: &RowSums, i: usize, z: Complex64, tol: f64) -> Result<bool> {
    Ok(gamma_i_contains(s, i, z, tol)? && !delta_i_contains(s, i, z, tol)?)
}

/// `(|z - d_i| - r_i^j) |z - d_j| <= |a_{ij...j}| r_j + tol`.
pub fn k_ij_contains(s: &RowSums, i: usize, j: usize, z: Complex64, tol: f64) -> Result<bool> {
    check_pair(i, j, s.dim())?;
    check_tol(tol)?;
    let (lhs, rhs) = k_terms(s, i, j, z);
    Ok(lhs <= rhs + tol)
}

/// `(|z - d_i| + r_i^p) |z - d_p| < |a_{ip...p}| (2|a_{pi...i}| - r_p) - tol`.
pub fn lambda_ip_contains(s: &RowSums, i: usize, p: usize, z: Complex64, tol: f64) -> Result<bool> {
    check_pair(i, p, s.dim())?;
    check_tol(tol)?;
    let (lhs, rhs) = lambda_terms(s, i, p, z);
    Ok(lhs < rhs - tol)
}

/// Union of `lambda_ip` over `p != i`; empty (false) when `n = 1`.
pub fn lambda_i_contains(s: &RowSums, i: usize, z: Complex64, tol: f64) -> Result<bool> {
    check_index(i, s.dim())?;
    check_tol(tol)?;
    for p in 1..=s.dim() {
        if p != i && lambda_ip_contains(s, i, p, z, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `k_ij` minus the row-`i` exclusion sets.
pub fn theta_ij_contains(s: &RowSums, i: usize, j: usize, z: Complex64, tol: f64) -> Result<bool> {
    Ok(k_ij_contains(s, i, j, z, tol)? && !lambda_i_contains(s, i, z, tol)?)
}

/// Union of all `gamma_i`.
pub fn gamma_contains(s: &RowSums, z: Complex64, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    for i in 1..=s.dim() {
        if gamma_i_contains(s, i, z, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Union of all `omega_i`.
pub fn omega_contains(s: &RowSums, z: Complex64, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    for i in 1..=s.dim() {
        if omega_i_contains(s, i, z, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Union of `k_ij` over ordered pairs, ascending `(i, j)`. Needs `n >= 2`.
pub fn k_contains(s: &RowSums, z: Complex64, tol: f64) -> Result<bool> {
    Region::K.validate(s.dim())?;
    check_tol(tol)?;
    for i in 1..=s.dim() {
        for j in 1..=s.dim() {
            if j != i && k_ij_contains(s, i, j, z, tol)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Union of `theta_ij` over ordered pairs. Needs `n >= 2`.
pub fn theta_contains(s: &RowSums, z: Complex64, tol: f64) -> Result<bool> {
    Region::Theta.validate(s.dim())?;
    check_tol(tol)?;
    for i in 1..=s.dim() {
        for j in 1..=s.dim() {
            if j != i && theta_ij_contains(s, i, j, z, tol)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Membership dispatch over every family.
pub fn region_contains(s: &RowSums, q: &RegionQuery, z: Complex64) -> Result<bool> {
    q.validate(s.dim())?;
    let tol = q.tol;
    match q.region {
        Region::Gamma => gamma_contains(s, z, tol),
        Region::GammaI(i) => gamma_i_contains(s, i, z, tol),
        Region::DeltaIj(i, j) => delta_ij_contains(s, i, j, z, tol),
        Region::DeltaI(i) => delta_i_contains(s, i, z, tol),
        Region::Omega => omega_contains(s, z, tol),
        Region::OmegaI(i) => omega_i_contains(s, i, z, tol),
        Region::K => k_contains(s, z, tol),
        Region::KIj(i, j) => k_ij_contains(s, i, j, z, tol),
        Region::LambdaIp(i, p) => lambda_ip_contains(s, i, p, z, tol),
        Region::LambdaI(i) => lambda_i_contains(s, i, z, tol),
        Region::Theta => theta_contains(s, z, tol),
        Region::ThetaIj(i, j) => theta_ij_contains(s, i, j, z, tol),
    }
}

/// Smallest axis-aligned rectangle containing every `gamma_i` disk,
/// expanded by `margin` on all four sides. Since every other family is
/// contained in `gamma`, the window covers them all.
pub fn bounding_window(s: &RowSums, margin: f64) -> Result<Window> {
    if !margin.is_finite() || margin < 0.0 {
        return Err(Error::InvalidTolerance(margin));
    }
    let mut re_min = f64::INFINITY;
    let mut re_max = f64::NEG_INFINITY;
    let mut im_min = f64::INFINITY;
    let mut im_max = f64::NEG_INFINITY;
    for i in 1..=s.dim() {
        let d = s.diag(i);
        let r = s.radius(i);
        re_min = re_min.min(d.re - r);
        re_max = re_max.max(d.re + r);
        im_min = im_min.min(d.im - r);
        im_max = im_max.max(d.im + r);
    }
    Ok(Window {
        re_min: re_min - margin,
        re_max: re_max + margin,
        im_min: im_min - margin,
        im_max: im_max + margin,
    })
}

fn check_index(i: usize, dim: usize) -> Result<()> {
    if i < 1 || i > dim {
        return Err(Error::IndexOutOfRange { index: i, dim });
    }
    Ok(())
}

fn check_pair(i: usize, j: usize, dim: usize) -> Result<()> {
    check_index(i, dim)?;
    check_index(j, dim)?;
    if i == j {
        return Err(Error::IndicesEqual(i));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}
