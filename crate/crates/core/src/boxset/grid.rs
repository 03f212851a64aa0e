//! Per-axis grid refinement.
//!
//! Each axis is cut at every finite endpoint occurring on it. With sorted
//! coordinates `c_0 < ... < c_{n-1}` the axis atoms are indexed
//!
//! ```text
//! 0: (-inf, c_0)   1: {c_0}   2: (c_0, c_1)   ...   2n-1: {c_{n-1}}   2n: (c_{n-1}, inf)
//! ```
//!
//! so an interval whose endpoints are grid coordinates covers a contiguous
//! range of atom indices, and a cell covers a box of atom keys.

use std::collections::BTreeSet;

use super::{Cell, Interval};
use crate::Scalar;

pub(crate) type AtomKey = Vec<usize>;

pub(crate) struct AxisGrid<T> {
    coords: Vec<T>,
}

impl<T: Scalar> AxisGrid<T> {
    fn new(mut coords: Vec<T>) -> Self {
        coords.sort_by(|a, b| a.partial_cmp(b).expect("grid coordinates are not NaN"));
        coords.dedup();
        AxisGrid { coords }
    }

    pub(crate) fn atom_count(&self) -> usize {
        2 * self.coords.len() + 1
    }

    fn position(&self, v: T) -> usize {
        self.coords
            .binary_search_by(|c| c.partial_cmp(&v).expect("grid coordinates are not NaN"))
            .expect("endpoint registered in the grid")
    }

    /// Inclusive range of atom indices covered by `iv`.
    pub(crate) fn range(&self, iv: &Interval<T>) -> (usize, usize) {
        let first = if iv.lo().is_infinite() {
            0
        } else {
            let k = self.position(iv.lo());
            if iv.lo_closed() {
                2 * k + 1
            } else {
                2 * k + 2
            }
        };
        let last = if iv.hi().is_infinite() {
            2 * self.coords.len()
        } else {
            let k = self.position(iv.hi());
            if iv.hi_closed() {
                2 * k + 1
            } else {
                2 * k
            }
        };
        (first, last)
    }

    pub(crate) fn atom(&self, idx: usize) -> Interval<T> {
        let n = self.coords.len();
        let lo = if idx == 0 {
            T::neg_infinity()
        } else {
            self.coords[(idx - 1) / 2]
        };
        if idx % 2 == 1 {
            return Interval::point(lo).expect("grid point");
        }
        let hi = if idx == 2 * n {
            T::infinity()
        } else {
            self.coords[idx / 2]
        };
        Interval::open(lo, hi).expect("consecutive grid coordinates")
    }
}

pub(crate) struct Grid<T> {
    axes: Vec<AxisGrid<T>>,
}

impl<T: Scalar> Grid<T> {
    pub(crate) fn from_cells<'a, I>(dim: usize, cells: I) -> Self
    where
        I: IntoIterator<Item = &'a Cell<T>>,
    {
        let mut coords: Vec<Vec<T>> = vec![Vec::new(); dim];
        for c in cells {
            for (axis, f) in c.factors().iter().enumerate() {
                for v in [f.lo(), f.hi()] {
                    if v.is_finite() {
                        coords[axis].push(v);
                    }
                }
            }
        }
        Grid {
            axes: coords.into_iter().map(AxisGrid::new).collect(),
        }
    }

    pub(crate) fn cell(&self, key: &[usize]) -> Cell<T> {
        Cell::new(self.axes.iter().zip(key).map(|(a, &i)| a.atom(i)).collect())
    }

    /// Inserts every atom key covered by `cell` into `out`.
    pub(crate) fn expand_into(&self, cell: &Cell<T>, out: &mut BTreeSet<AtomKey>) {
        let ranges: Vec<(usize, usize)> = self
            .axes
            .iter()
            .zip(cell.factors())
            .map(|(a, f)| a.range(f))
            .collect();
        for_each_key(&ranges, |k| {
            out.insert(k.to_vec());
        });
    }

    pub(crate) fn keys_of<'a, I>(&self, cells: I) -> BTreeSet<AtomKey>
    where
        I: IntoIterator<Item = &'a Cell<T>>,
    {
        let mut out = BTreeSet::new();
        for c in cells {
            self.expand_into(c, &mut out);
        }
        out
    }

    /// Every atom key of the grid, in lexicographic order.
    pub(crate) fn all_keys(&self) -> BTreeSet<AtomKey> {
        let ranges: Vec<(usize, usize)> =
            self.axes.iter().map(|a| (0, a.atom_count() - 1)).collect();
        let mut out = BTreeSet::new();
        for_each_key(&ranges, |k| {
            out.insert(k.to_vec());
        });
        out
    }
}

/// Odometer over the box `ranges[0] x ranges[1] x ...` (inclusive bounds).
fn for_each_key(ranges: &[(usize, usize)], mut f: impl FnMut(&[usize])) {
    if ranges.iter().any(|&(a, b)| a > b) {
        return;
    }
    let mut key: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&key);
        let mut axis = ranges.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            if key[axis] < ranges[axis].1 {
                key[axis] += 1;
                break;
            }
            key[axis] = ranges[axis].0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_ranges() {
        let g = AxisGrid::new(vec![2.0, 0.0, 1.0, 1.0]);
        assert_eq!(g.atom_count(), 7);
        assert_eq!(g.range(&Interval::closed(0.0, 2.0).unwrap()), (1, 5));
        assert_eq!(g.range(&Interval::open(0.0, 1.0).unwrap()), (2, 2));
        assert_eq!(g.range(&Interval::closed_open(1.0, 2.0).unwrap()), (3, 4));
        assert_eq!(
            g.range(&Interval::open(2.0, f64::INFINITY).unwrap()),
            (6, 6)
        );
        assert_eq!(g.range(&Interval::<f64>::real_line()), (0, 6));
        assert_eq!(g.atom(0), Interval::open(f64::NEG_INFINITY, 0.0).unwrap());
        assert_eq!(g.atom(3), Interval::point(1.0).unwrap());
        assert_eq!(g.atom(4), Interval::open(1.0, 2.0).unwrap());
    }

    #[test]
    fn odometer_counts() {
        let mut n = 0;
        for_each_key(&[(0, 2), (1, 3)], |_| n += 1);
        assert_eq!(n, 9);
        let mut m = 0;
        for_each_key(&[], |k| {
            assert!(k.is_empty());
            m += 1
        });
        assert_eq!(m, 1);
    }
}
