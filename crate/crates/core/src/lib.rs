//! Eigenvalue localization for complex tensors.
//!
//! Given an order-`m`, dimension-`n` complex tensor `A`, the eigenproblem
//! `A x^{m-1} = lambda x^{[m-1]}` (with `x^{[m-1]}` the componentwise power)
//! generalizes the matrix eigenproblem. This crate computes classical and
//! sharpened inclusion sets for the spectrum, turns two of them into
//! nonsingularity certificates, approximates the spectrum itself with a
//! dense multi-start solver, and renders any of the sets on a pixel grid.

pub mod certify;
pub mod error;
mod format;
pub mod oracle;
pub mod raster;
pub mod region;
pub mod tensor;

#[cfg(test)]
pub(crate) mod test_support;

pub use num_complex::Complex64;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use tensor::{RowSums, Tensor};
