//! Index of increase for transfer functions.
//!
//! The index of increase of a function `h` on a window `(a, b]` is the share of
//! its total variation that comes from upward movement: `1` for nondecreasing
//! functions, `0` for nonincreasing ones, and somewhere in between otherwise.
//! This crate computes it two ways:
//!
//! * exactly, from the derivative sign structure and declared jump points of a
//!   piecewise-smooth function ([`index::theoretical_index`]), with an
//!   independent quantile-domain route ([`index::theoretical_index_via_h`]);
//! * empirically, from input/output samples ordered by their inputs
//!   ([`estimators::empirical_index`]), together with the scaled total
//!   variation statistic `B_n` that diagnoses the noise degeneracy regime.
//!
//! The crate is `no_std` and only needs `alloc`. Float math goes through
//! [`libm`], so results do not depend on the platform's libm.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod distributions;
pub mod error;
pub mod estimators;
pub mod index;
pub mod numerics;
pub mod rng;
pub mod transfer;

pub use crate::distributions::{LomaxParams, Window, WindowedDistribution};
pub use crate::error::{Error, Result};
pub use crate::estimators::{empirical_index, index_from_ordered_outputs, EstimateResult, SamplePairs};
pub use crate::index::{theoretical_index, theoretical_index_via_h, IndexBreakdown};
pub use crate::numerics::QuadratureConfig;
pub use crate::transfer::{Breakpoint, HFunction, PiecewiseFunction, PiecewiseSmooth, TransferFunction};
