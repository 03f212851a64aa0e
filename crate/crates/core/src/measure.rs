//! Euler characteristic, intrinsic volumes and the polynomial measure `mu`.
//!
//! On one axis `mu` of an interval is `chi + length * x`, with the
//! o-minimal Euler characteristic `chi` read off the endpoint flags: a point
//! or closed segment has `chi = 1`, an open segment `-1`, a half-open one
//! `0`. Unbounded intervals count their infinite ends as open and get an
//! infinite `x` coefficient. `mu` of a cell is the product of its factor
//! polynomials and `mu` of a complex is the sum over its disjoint cells.

use std::cmp::Ordering;

use serde::Serialize;

use crate::boxset::{BoxComplex, Cell, Dim, Interval};
use crate::xpoly::{XPoly, XReal};
use crate::{Result, Scalar};

/// `mu(A)` together with its dimension and the finiteness/boundedness flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct MeasureResult<T> {
    pub mu: XPoly<T>,
    pub dim: Dim,
    /// All coefficients of `mu` finite.
    #[serde(rename = "in_Uf")]
    pub in_uf: bool,
    /// The set is bounded.
    #[serde(rename = "in_Ub")]
    pub in_ub: bool,
}

fn interval_chi<T: Scalar>(iv: &Interval<T>) -> T {
    if iv.is_point() {
        return T::one();
    }
    let closed_ends = iv.lo_closed() as i32 + iv.hi_closed() as i32;
    T::of((closed_ends - 1) as f64)
}

pub fn mu_interval<T: Scalar>(iv: &Interval<T>) -> XPoly<T> {
    let chi = XReal::Finite(interval_chi(iv));
    if iv.is_point() {
        return XPoly::constant(chi);
    }
    XPoly::new(vec![chi, XReal::new(iv.length())])
}

pub fn mu_cell<T: Scalar>(cell: &Cell<T>) -> Result<XPoly<T>> {
    cell.factors()
        .iter()
        .try_fold(XPoly::one(), |acc, f| acc.mul(&mu_interval(f)))
}

pub fn mu<T: Scalar>(set: &BoxComplex<T>) -> Result<MeasureResult<T>> {
    let per_cell = set
        .cells()
        .iter()
        .map(mu_cell)
        .collect::<Result<Vec<_>>>()?;
    let mu = XPoly::sum(&per_cell)?;
    Ok(MeasureResult {
        in_uf: mu.is_finite(),
        in_ub: set.is_bounded(),
        dim: set.dimension(),
        mu,
    })
}

/// `mu_0`. Constant terms never involve infinities, so this is defined even
/// where higher coefficients are indeterminate.
pub fn euler_characteristic<T: Scalar>(set: &BoxComplex<T>) -> XReal<T> {
    let chi = set
        .cells()
        .iter()
        .map(|c| {
            c.factors()
                .iter()
                .fold(T::one(), |acc, f| acc * interval_chi(f))
        })
        .fold(T::zero(), |a, b| a + b);
    XReal::Finite(chi)
}

/// The `x^i` coefficient of `mu(A)`.
pub fn intrinsic_volume<T: Scalar>(set: &BoxComplex<T>, i: usize) -> Result<XReal<T>> {
    Ok(mu(set)?.mu.coeff(i))
}

/// `H^i(A)`: zero above the dimension, `+inf` below it, and the leading
/// coefficient of `mu` at the dimension.
pub fn hausdorff_measure<T: Scalar>(set: &BoxComplex<T>, i: usize) -> XReal<T> {
    let Dim::Finite(d) = set.dimension() else {
        return XReal::zero();
    };
    match i.cmp(&d) {
        Ordering::Greater => XReal::zero(),
        Ordering::Less => XReal::PosInf,
        // Only top-dimensional cells contribute: their x^d coefficient is the
        // product of the nondegenerate lengths.
        Ordering::Equal => set
            .cells()
            .iter()
            .filter(|c| c.dim() == d)
            .map(|c| {
                c.factors()
                    .iter()
                    .filter(|f| !f.is_point())
                    .fold(XReal::Finite(T::one()), |acc, f| {
                        acc * XReal::new(f.length())
                    })
            })
            .fold(XReal::zero(), |acc, v| {
                acc.checked_add(v).expect("lengths are nonnegative")
            }),
    }
}

/// Lexicographic comparison of `mu(A)` and `mu(B)`.
pub fn mu_compare<T: Scalar>(a: &BoxComplex<T>, b: &BoxComplex<T>) -> Result<Ordering> {
    Ok(mu(a)?.mu.lex_cmp(&mu(b)?.mu))
}
