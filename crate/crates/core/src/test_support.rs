//! Shared fixtures for the unit tests.

use num_complex::Complex64;

use crate::tensor::Tensor;

/// Text form of [`golden_tensor`], exercising comments and both one- and
/// two-number value syntax.
pub(crate) const GOLDEN_TEXT: &str = "\
# order 3, dimension 4
3 4
1 1 1 12
1 2 2 4 1
1 4 4 15 -1
2 1 1 -2 -1
2 2 2 14
2 3 3 5 -1
3 2 2 6
3 3 3 8 1
3 4 4 4
4 1 1 16
4 2 2 2
4 4 4 11
";

/// Order-3, dimension-4 tensor used as the main worked example across the
/// crate. Its sparsity couples every row to at least one other row, all
/// four exclusion disks are nonempty, and it is nonsingular.
pub(crate) fn golden_tensor() -> Tensor {
    let c = Complex64::new;
    Tensor::from_entries(
        3,
        4,
        vec![
            (vec![1, 1, 1], c(12.0, 0.0)),
            (vec![1, 2, 2], c(4.0, 1.0)),
            (vec![1, 4, 4], c(15.0, -1.0)),
            (vec![2, 1, 1], c(-2.0, -1.0)),
            (vec![2, 2, 2], c(14.0, 0.0)),
            (vec![2, 3, 3], c(5.0, -1.0)),
            (vec![3, 2, 2], c(6.0, 0.0)),
            (vec![3, 3, 3], c(8.0, 1.0)),
            (vec![3, 4, 4], c(4.0, 0.0)),
            (vec![4, 1, 1], c(16.0, 0.0)),
            (vec![4, 2, 2], c(2.0, 0.0)),
            (vec![4, 4, 4], c(11.0, 0.0)),
        ],
    )
    .unwrap()
}
