//! Polynomials with coefficients in the extended reals.
//!
//! [`XPoly`] carries the value of the measure `mu`. Coefficient `i` is the
//! `x^i` coefficient; the stored sequence is always trimmed so the highest
//! stored coefficient is nonzero. Comparison is lexicographic starting from
//! the highest index, so the leading (highest-dimensional) content decides
//! first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

/// An element of `R ∪ {+inf, -inf}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XReal<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: Scalar> XReal<T> {
    /// Wraps a float, mapping float infinities onto the infinite variants.
    ///
    /// Panics on NaN.
    pub fn new(v: T) -> Self {
        assert!(!v.is_nan(), "NaN is not an extended real");
        if v == T::infinity() {
            XReal::PosInf
        } else if v == T::neg_infinity() {
            XReal::NegInf
        } else {
            XReal::Finite(v)
        }
    }

    pub fn zero() -> Self {
        XReal::Finite(T::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, XReal::Finite(v) if v.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XReal::Finite(_))
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            XReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// The value as a float, with infinities mapped to float infinities.
    pub fn to_scalar(&self) -> T {
        match *self {
            XReal::NegInf => T::neg_infinity(),
            XReal::Finite(v) => v,
            XReal::PosInf => T::infinity(),
        }
    }

    /// Total order: `-inf < finite < +inf`.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        use XReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.partial_cmp(b).expect("finite extended reals are not NaN"),
        }
    }

    /// Sum, or `None` for `+inf + -inf`.
    pub fn checked_add(self, other: Self) -> Option<Self> {
        use XReal::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (Finite(a), Finite(b)) => Some(XReal::new(a + b)),
        }
    }

    fn is_negative(&self) -> bool {
        match *self {
            XReal::NegInf => true,
            XReal::PosInf => false,
            XReal::Finite(v) => v < T::zero(),
        }
    }
}

impl<T: Scalar> From<T> for XReal<T> {
    fn from(v: T) -> Self {
        XReal::new(v)
    }
}

/// Product with `0 * (±inf) = 0`; otherwise signs propagate.
impl<T: Scalar> Mul for XReal<T> {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        use XReal::*;
        if self.is_zero() || other.is_zero() {
            return XReal::zero();
        }
        match (self, other) {
            (Finite(a), Finite(b)) => XReal::new(a * b),
            _ => {
                if self.is_negative() == other.is_negative() {
                    PosInf
                } else {
                    NegInf
                }
            }
        }
    }
}

impl<T: Scalar> Neg for XReal<T> {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            XReal::NegInf => XReal::PosInf,
            XReal::PosInf => XReal::NegInf,
            XReal::Finite(v) => XReal::Finite(-v),
        }
    }
}

impl<T: Scalar> fmt::Display for XReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XReal::NegInf => f.write_str("-inf"),
            XReal::PosInf => f.write_str("inf"),
            XReal::Finite(v) => write!(f, "{}", v),
        }
    }
}

impl<T: Scalar> Serialize for XReal<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            XReal::NegInf => s.serialize_str("-inf"),
            XReal::PosInf => s.serialize_str("inf"),
            XReal::Finite(v) => s.serialize_f64(v.as_f64()),
        }
    }
}

impl<'de, T: Scalar> Deserialize<'de> for XReal<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ExtendedVisitor)
            .map(|v| XReal::new(T::of(v)))
    }
}

/// Accepts a JSON number or one of the `"inf"` / `"-inf"` sentinels.
pub(crate) struct ExtendedVisitor;

impl<'de> Visitor<'de> for ExtendedVisitor {
    type Value = f64;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number, \"inf\" or \"-inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<f64, E> {
        if v.is_nan() {
            return Err(E::custom("NaN is not allowed"));
        }
        Ok(v)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<f64, E> {
        match v {
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
        }
    }
}

/// Polynomial with extended-real coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly<T> {
    coeffs: Vec<XReal<T>>,
}

impl<T: Scalar> XPoly<T> {
    /// Builds a polynomial from `[c0, c1, ...]`, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<XReal<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn from_scalars(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| XReal::new(c)).collect())
    }

    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(XReal::Finite(T::one()))
    }

    pub fn constant(c: XReal<T>) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: XReal<T>, k: usize) -> Self {
        let mut coeffs = vec![XReal::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[XReal<T>] {
        &self.coeffs
    }

    /// The `x^i` coefficient (zero past the degree).
    pub fn coeff(&self, i: usize) -> XReal<T> {
        self.coeffs.get(i).copied().unwrap_or_else(XReal::zero)
    }

    pub fn leading(&self) -> Option<XReal<T>> {
        self.coeffs.last().copied()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(XReal::is_finite)
    }

    /// Finite coefficients as floats, or the index of the first infinite one.
    pub fn finite_coeffs(&self) -> Result<Vec<T>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.finite().ok_or(Error::InfiniteCoefficient(i)))
            .collect()
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeff(i)
                    .checked_add(other.coeff(i))
                    .ok_or(Error::IndeterminateCoefficient(i))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn neg(&self) -> Self {
        XPoly {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    /// Convolution product, `0 * inf = 0`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let lo = k.saturating_sub(other.coeffs.len() - 1);
            let hi = k.min(self.coeffs.len() - 1);
            let terms = (lo..=hi).map(|i| self.coeffs[i] * other.coeffs[k - i]);
            out.push(sum_extended(terms).ok_or(Error::IndeterminateCoefficient(k))?);
        }
        Ok(Self::new(out))
    }

    /// Sums many polynomials with compensated (Neumaier) accumulation of the
    /// finite parts of each coefficient.
    pub fn sum<'a, I>(polys: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a XPoly<T>>,
    {
        let mut acc: Vec<ExtendedAccumulator<T>> = Vec::new();
        for p in polys {
            if acc.len() < p.coeffs.len() {
                acc.resize(p.coeffs.len(), ExtendedAccumulator::default());
            }
            for (a, c) in acc.iter_mut().zip(&p.coeffs) {
                a.push(*c);
            }
        }
        let coeffs = acc
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.finish().ok_or(Error::IndeterminateCoefficient(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Lexicographic order from the highest index down: the first differing
    /// coefficient (scanning downward) decides.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        for i in (0..n).rev() {
            match self.coeff(i).total_cmp(&other.coeff(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// `p(beta * x)`: coefficient `i` is multiplied by `beta^i`.
    pub fn rescale_argument(&self, beta: T) -> Self {
        let mut factor = T::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = *c * XReal::Finite(factor);
                factor = factor * beta;
                out
            })
            .collect();
        Self::new(coeffs)
    }

    /// Evaluates at a natural number with compensated Horner.
    ///
    /// The result is as accurate as plain Horner run in twice the working
    /// precision and rounded once: `|r - p(n)| <= u |p(n)| + g(2k)^2 P(n)`,
    /// where `u` is the unit roundoff, `k` the degree, `g(j) = j u / (1 - j u)`
    /// and `P(n) = sum |c_i| n^i`. `n` itself is exact in `T` only up to the
    /// mantissa width (`2^53` for `f64`).
    pub fn eval(&self, n: u64) -> Result<T> {
        let coeffs = self.finite_coeffs()?;
        Ok(compensated_horner(&coeffs, T::of_u64(n)))
    }

    /// True when every finite coefficient agrees with `other` to within
    /// `rel_tol * max(1, |a|, |b|)` and infinities match exactly.
    pub fn approx_eq(&self, other: &Self, rel_tol: T) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| match (self.coeff(i), other.coeff(i)) {
            (XReal::Finite(a), XReal::Finite(b)) => {
                let scale = T::one().max(a.abs()).max(b.abs());
                (a - b).abs() <= rel_tol * scale
            }
            (a, b) => a == b,
        })
    }
}

impl<T: Scalar> fmt::Display for XPoly<T> {
    /// `1 + 2x + 1x^2`; zero terms are skipped and the zero polynomial
    /// prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let sep = if c.is_finite() { "" } else { "*" };
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}{}x", c, sep)?,
                _ => write!(f, "{}{}x^{}", c, sep, i)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct XPolyRepr<T> {
    coeffs: Vec<XReal<T>>,
}

impl<T: Scalar> Serialize for XPoly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        XPolyRepr {
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for XPoly<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        XPolyRepr::deserialize(d).map(|r| XPoly::new(r.coeffs))
    }
}

/// Distance from `v` to the nearest integer, in `[0, 1/2]`.
pub fn dist_to_nearest_integer<T: Scalar>(v: T) -> T {
    (v - v.round()).abs()
}

fn sum_extended<T: Scalar>(terms: impl Iterator<Item = XReal<T>>) -> Option<XReal<T>> {
    let mut acc = ExtendedAccumulator::default();
    for t in terms {
        acc.push(t);
    }
    acc.finish()
}

#[derive(Clone, Default)]
struct ExtendedAccumulator<T> {
    sum: T,
    comp: T,
    pos_inf: bool,
    neg_inf: bool,
}

impl<T: Scalar> ExtendedAccumulator<T> {
    fn push(&mut self, v: XReal<T>) {
        match v {
            XReal::PosInf => self.pos_inf = true,
            XReal::NegInf => self.neg_inf = true,
            XReal::Finite(x) => {
                let t = self.sum + x;
                if self.sum.abs() >= x.abs() {
                    self.comp = self.comp + ((self.sum - t) + x);
                } else {
                    self.comp = self.comp + ((x - t) + self.sum);
                }
                self.sum = t;
            }
        }
    }

    fn finish(self) -> Option<XReal<T>> {
        match (self.pos_inf, self.neg_inf) {
            (true, true) => None,
            (true, false) => Some(XReal::PosInf),
            (false, true) => Some(XReal::NegInf),
            (false, false) => Some(XReal::new(self.sum + self.comp)),
        }
    }
}

fn two_sum<T: Scalar>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod<T: Scalar>(a: T, b: T) -> (T, T) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn compensated_horner<T: Scalar>(coeffs: &[T], x: T) -> T {
    let Some((&top, rest)) = coeffs.split_last() else {
        return T::zero();
    };
    let mut s = top;
    let mut c = T::zero();
    for &a in rest.iter().rev() {
        let (p, pi) = two_prod(s, x);
        let (t, sigma) = two_sum(p, a);
        s = t;
        c = c.mul_add(x, pi + sigma);
    }
    s + c
}
