use std::cmp::Ordering;
use std::fmt;

use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::xpoly::ExtendedVisitor;
use crate::{Error, Result, Scalar};

/// A nonempty interval of the real line with independent endpoint flags.
///
/// Endpoints may be float infinities; an infinite endpoint is always open.
/// `lo == hi` is only allowed for a closed point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
    lo_closed: bool,
    hi_closed: bool,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidInterval("NaN endpoint".into()));
        }
        if (lo.is_infinite() && lo_closed) || (hi.is_infinite() && hi_closed) {
            return Err(Error::InvalidInterval(format!(
                "infinite endpoint must be open ({}, {})",
                lo, hi
            )));
        }
        match lo.partial_cmp(&hi) {
            Some(Ordering::Less) => {}
            Some(Ordering::Equal) if lo_closed && hi_closed => {}
            _ => {
                return Err(Error::InvalidInterval(format!(
                    "empty interval {}{}, {}{}",
                    if lo_closed { '[' } else { '(' },
                    lo,
                    hi,
                    if hi_closed { ']' } else { ')' }
                )))
            }
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn point(a: T) -> Result<Self> {
        Self::new(a, a, true, true)
    }

    pub fn open(lo: T, hi: T) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn closed(lo: T, hi: T) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn closed_open(lo: T, hi: T) -> Result<Self> {
        Self::new(lo, hi, true, false)
    }

    pub fn open_closed(lo: T, hi: T) -> Result<Self> {
        Self::new(lo, hi, false, true)
    }

    pub fn real_line() -> Self {
        Interval {
            lo: T::neg_infinity(),
            hi: T::infinity(),
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn length(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, x: T) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }

    /// Intersection, `None` if empty.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo)? {
            Ordering::Less => (other.lo, other.lo_closed),
            Ordering::Greater => (self.lo, self.lo_closed),
            Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi)? {
            Ordering::Less => (self.hi, self.hi_closed),
            Ordering::Greater => (other.hi, other.hi_closed),
            Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed).ok()
    }

    /// Image under `x -> scale * x + shift` for `scale > 0`.
    pub(crate) fn affine(&self, scale: T, shift: T) -> Result<Self> {
        Interval::new(
            self.lo * scale + shift,
            self.hi * scale + shift,
            self.lo_closed,
            self.hi_closed,
        )
        .map_err(|_| Error::DegenerateImage)
    }

    /// Image under `x -> -x`.
    pub fn reflected(&self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Deserialize)]
struct IntervalRepr {
    #[serde(deserialize_with = "extended")]
    lo: f64,
    #[serde(deserialize_with = "extended")]
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

fn extended<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    d.deserialize_any(ExtendedVisitor)
}

fn ser_extended<T: Scalar>(v: T) -> serde_json_like::Extended {
    if v == T::infinity() {
        serde_json_like::Extended::Str("inf")
    } else if v == T::neg_infinity() {
        serde_json_like::Extended::Str("-inf")
    } else {
        serde_json_like::Extended::Num(v.as_f64())
    }
}

mod serde_json_like {
    use serde::{Serialize, Serializer};

    pub enum Extended {
        Num(f64),
        Str(&'static str),
    }

    impl Serialize for Extended {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self {
                Extended::Num(v) => s.serialize_f64(*v),
                Extended::Str(v) => s.serialize_str(v),
            }
        }
    }
}

impl<T: Scalar> Serialize for Interval<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Interval", 4)?;
        st.serialize_field("lo", &ser_extended(self.lo))?;
        st.serialize_field("hi", &ser_extended(self.hi))?;
        st.serialize_field("lo_closed", &self.lo_closed)?;
        st.serialize_field("hi_closed", &self.hi_closed)?;
        st.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Interval<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = IntervalRepr::deserialize(d)?;
        Interval::new(T::of(r.lo), T::of(r.hi), r.lo_closed, r.hi_closed)
            .map_err(serde::de::Error::custom)
    }
}

/// A generalized box: one nonempty [`Interval`] per axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Cell<T> {
    factors: Vec<Interval<T>>,
}

impl<T: Scalar> Cell<T> {
    pub fn new(factors: Vec<Interval<T>>) -> Self {
        Cell { factors }
    }

    pub fn factors(&self) -> &[Interval<T>] {
        &self.factors
    }

    pub fn ambient_dim(&self) -> usize {
        self.factors.len()
    }

    /// Number of non-degenerate factors.
    pub fn dim(&self) -> usize {
        self.factors.iter().filter(|f| !f.is_point()).count()
    }

    pub fn is_bounded(&self) -> bool {
        self.factors.iter().all(Interval::is_bounded)
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.factors.len() && self.factors.iter().zip(x).all(|(f, &v)| f.contains(v))
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        if self.factors.len() != other.factors.len() {
            return None;
        }
        self.factors
            .iter()
            .zip(&other.factors)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()
            .map(Cell::new)
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Cell { factors }
    }
}

impl<T: Scalar> fmt::Display for Cell<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", iv)?;
        }
        Ok(())
    }
}
