//! Numerical engine for slice regular functions of one quaternionic variable.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational. It covers
//! quaternion arithmetic and slice decomposition, quaternionic matrix inversion
//! through the complex adjoint, the ζ / σ_N / 𝓜(J) matrix calculus, the two-slice
//! extension formula and the 2^N-point representation formula, N-part paths and
//! their liftings, germ continuation with monodromy tracking, the multivalued
//! logarithm obstruction to the classical extension theorem, and sampled
//! slice-topology predicates.
//!
//! File formats and the command line live in the companion `slicereg-cli` crate.

#![no_std]
// `!(x > t)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod continuation;
mod error;
pub mod formulas;
pub mod paths;
pub mod qlinalg;
pub mod quaternion;
pub mod slice_calculus;
pub mod slice_topology;

pub use error::{Error, Result};

pub use num_complex::Complex64 as Complex;

pub use continuation::{ContinuationOptions, HolomorphicGerm, LinearOde};
pub use formulas::{SlicePolynomial, SliceValueVector};
pub use paths::{NPartPath, PlanarPath, QPath};
pub use qlinalg::QMatrix;
pub use quaternion::{ImaginaryUnit, Quaternion, SamplingScheme, SlicePoint};
pub use slice_calculus::{SignedPermutation, UnitMatrix, UnitTuple};
pub use slice_topology::{PlanarRegion, SliceSet};
