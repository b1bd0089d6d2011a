//! Sparse complex tensors of order `m` and dimension `n`, and the per-row
//! quantities (diagonal entries, radii, partial radii) that every
//! localization set is built from.
//!
//! Index tuples are 1-based everywhere in the public API, matching the
//! usual convention `N = {1, ..., n}` for this problem domain.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Order-`m`, dimension-`n` complex tensor with sparse entry storage.
///
/// Entries are kept in canonical sparse form: absent tuples are zero and an
/// exact zero is never stored. Keys are sorted, so iteration order (and
/// therefore every summation in this crate) is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, Complex64>,
}

impl Tensor {
    /// Builds a tensor from `(index tuple, value)` pairs. Tuples are 1-based.
    ///
    /// Zero values are accepted and dropped; duplicated tuples are an error
    /// even when one of the values is zero.
    pub fn from_entries<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Complex64)>,
    {
        if order < 2 {
            return Err(Error::OrderTooSmall(order));
        }
        if dim < 1 {
            return Err(Error::DimTooSmall(dim));
        }
        let mut map = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (idx, value) in entries {
            validate_tuple(&idx, order, dim)?;
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(Error::NonFiniteEntry);
            }
            if !seen.insert(idx.clone()) {
                return Err(Error::DuplicateIndexTuple(idx));
            }
            if value != Complex64::ZERO {
                map.insert(idx, value);
            }
        }
        Ok(Tensor {
            order,
            dim,
            entries: map,
        })
    }

    /// The all-zero tensor.
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Self::from_entries(order, dim, std::iter::empty())
    }

    /// Diagonal tensor with `a_{i...i} = diag[i-1]`.
    pub fn diagonal(order: usize, diag: Vec<Complex64>) -> Result<Self> {
        let dim = diag.len();
        Self::from_entries(
            order,
            dim,
            diag.into_iter()
                .enumerate()
                .map(|(i, d)| (vec![i + 1; order], d)),
        )
    }

    /// Identity tensor: ones on the diagonal.
    pub fn identity(order: usize, dim: usize) -> Result<Self> {
        Self::diagonal(order, vec![Complex64::ONE; dim])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entry at a 1-based index tuple; absent tuples are zero.
    pub fn get(&self, idx: &[usize]) -> Result<Complex64> {
        validate_tuple(idx, self.order, self.dim)?;
        Ok(self.entries.get(idx).copied().unwrap_or(Complex64::ZERO))
    }

    /// Iterates stored entries in lexicographic tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], Complex64)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    /// True iff the tuple is a diagonal position `(i, i, ..., i)`, i.e. the
    /// generalized Kronecker delta of the tuple equals 1.
    pub fn is_diagonal_index(&self, idx: &[usize]) -> Result<bool> {
        validate_tuple(idx, self.order, self.dim)?;
        Ok(all_equal(idx))
    }

    /// True iff every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|idx| all_equal(idx))
    }

    /// True iff every entry is invariant under all permutations of its
    /// index tuple (exact comparison).
    pub fn is_symmetric(&self) -> bool {
        for (idx, value) in &self.entries {
            let mut perm = idx.clone();
            let mut ok = true;
            for_each_permutation(&mut perm, &mut |p| {
                if self.entries.get(p).copied().unwrap_or(Complex64::ZERO) != *value {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Evaluates `(A x^{m-1})_i = sum a_{i i2...im} x_{i2} ... x_{im}`.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut out = vec![Complex64::ZERO; self.dim];
        for (idx, value) in &self.entries {
            let mut term = *value;
            for &k in &idx[1..] {
                term *= x[k - 1];
            }
            out[idx[0] - 1] += term;
        }
        Ok(out)
    }

    /// Computes the diagonal, the radii `r_i`, the couplings `|a_{ij...j}|`,
    /// and the partial radii `r_i^j = r_i - |a_{ij...j}|`.
    pub fn row_sums(&self) -> RowSums {
        let n = self.dim;
        let mut diag = vec![Complex64::ZERO; n];
        let mut r = vec![0.0; n];
        for (idx, value) in &self.entries {
            let i = idx[0] - 1;
            if all_equal(idx) {
                diag[i] = *value;
            } else {
                r[i] += value.norm();
            }
        }
        let mut special_col = vec![vec![0.0; n]; n];
        let mut r_partial = vec![vec![0.0; n]; n];
        let mut key = vec![0usize; self.order];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                key[0] = i + 1;
                key[1..].fill(j + 1);
                let coupling = self
                    .entries
                    .get(&key)
                    .map(|v| v.norm())
                    .unwrap_or(0.0);
                special_col[i][j] = coupling;
                r_partial[i][j] = r[i] - coupling;
            }
        }
        RowSums {
            order: self.order,
            dim: n,
            diag,
            r,
            special_col,
            r_partial,
        }
    }
}

/// Per-row quantities of a tensor: diagonal entries `a_{i...i}`, radii
/// `r_i` (sum of off-diagonal entry moduli in row `i`), the couplings
/// `|a_{ij...j}|`, and the partial radii `r_i^j = r_i - |a_{ij...j}|`.
///
/// All accessors take 1-based indices and panic when an index is out of
/// range or when a pair accessor gets `i == j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSums {
    order: usize,
    dim: usize,
    diag: Vec<Complex64>,
    r: Vec<f64>,
    special_col: Vec<Vec<f64>>,
    r_partial: Vec<Vec<f64>>,
}

impl RowSums {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Diagonal entry `a_{i...i}`.
    pub fn diag(&self, i: usize) -> Complex64 {
        self.check(i);
        self.diag[i - 1]
    }

    /// Radius `r_i`: sum of moduli of all off-diagonal entries in row `i`.
    pub fn radius(&self, i: usize) -> f64 {
        self.check(i);
        self.r[i - 1]
    }

    /// Coupling `|a_{ij...j}|` (second through last index all equal `j`).
    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.check_pair(i, j);
        self.special_col[i - 1][j - 1]
    }

    /// Partial radius `r_i^j = r_i - |a_{ij...j}|`.
    pub fn partial_radius(&self, i: usize, j: usize) -> f64 {
        self.check_pair(i, j);
        self.r_partial[i - 1][j - 1]
    }

    fn check(&self, i: usize) {
        assert!(
            (1..=self.dim).contains(&i),
            "index {i} out of range 1..={}",
            self.dim
        );
    }

    fn check_pair(&self, i: usize, j: usize) {
        self.check(i);
        self.check(j);
        assert!(i != j, "pair accessors need distinct indices, got i = j = {i}");
    }
}

fn validate_tuple(idx: &[usize], order: usize, dim: usize) -> Result<()> {
    if idx.len() != order {
        return Err(Error::WrongTupleLength {
            expected: order,
            got: idx.len(),
        });
    }
    for &k in idx {
        if k < 1 || k > dim {
            return Err(Error::IndexOutOfRange { index: k, dim });
        }
    }
    Ok(())
}

fn all_equal(idx: &[usize]) -> bool {
    idx.iter().all(|&k| k == idx[0])
}

/// Heap's algorithm; visits every arrangement of `items` (repeats included
/// when the tuple has repeated indices, which is harmless for our checks).
fn for_each_permutation<T, F: FnMut(&[T])>(items: &mut [T], visit: &mut F) {
    fn inner<T, F: FnMut(&[T])>(k: usize, items: &mut [T], visit: &mut F) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k {
            inner(k - 1, items, visit);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    inner(items.len(), items, visit);
}
