//! Polynomial-valued measures on box complexes.
//!
//! The representable sets are finite disjoint unions of generalized boxes
//! (products of open, closed, half-open, point or unbounded intervals). On
//! them the crate computes, exactly up to floating-point rounding:
//!
//! - the o-minimal Euler characteristic and all intrinsic volumes,
//! - the polynomial `mu_A(x) = mu_0(A) + mu_1(A) x + ... + mu_d(A) x^d`,
//!   ordered lexicographically from the leading coefficient,
//! - Hausdorff measure read off the leading coefficient.
//!
//! [`crofton`] re-derives the top two intrinsic volumes from their integral
//! definition by Monte Carlo, and [`sampler`] builds finite point samples
//! whose counts track `mu_A(N)` at a common scale `N`.
//!
//! Everything is generic over [`Scalar`] (`f32`, `f64`); the aliases below
//! fix `f64`.

pub mod boxset;
pub mod crofton;
pub mod dsl;
mod error;
pub mod measure;
pub mod sampler;
mod scalar;
pub mod xpoly;

pub use boxset::{BoxComplex, Cell, Dim, Interval};
pub use crofton::CroftonEstimate;
pub use error::{Error, Result};
pub use measure::MeasureResult;
pub use sampler::{SampleOptions, SampleResult};
pub use scalar::Scalar;
pub use xpoly::{XPoly, XReal};

pub type XReal64 = XReal<f64>;
pub type XPoly64 = XPoly<f64>;
pub type Interval64 = Interval<f64>;
pub type Cell64 = Cell<f64>;
pub type BoxComplex64 = BoxComplex<f64>;
pub type MeasureResult64 = MeasureResult<f64>;
pub type CroftonEstimate64 = CroftonEstimate<f64>;
pub type SampleResult64 = SampleResult<f64>;

pub type XPoly32 = XPoly<f32>;
pub type BoxComplex32 = BoxComplex<f32>;
