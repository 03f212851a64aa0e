//! Box complexes: finite disjoint unions of generalized boxes.
//!
//! Every [`BoxComplex`] is kept in canonical form, the unmerged grid-atom
//! decomposition: each axis is cut at every endpoint present on that axis and
//! the complex is the sorted list of grid atoms (products of points and open
//! segments) it contains. Boolean operations refine both operands onto a
//! common grid and select atoms, so results are exact; endpoints are compared
//! by exact float equality, never snapped.

mod grid;
mod interval;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub use interval::{Cell, Interval};

pub(crate) use grid::{AtomKey, Grid};

use crate::{Error, Result, Scalar};

/// Dimension of a set; the empty set has dimension `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    MinusInfinity,
    Finite(usize),
}

impl Dim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::MinusInfinity => None,
        }
    }
}

impl Add for Dim {
    type Output = Dim;

    fn add(self, rhs: Dim) -> Dim {
        match (self, rhs) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::MinusInfinity,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::MinusInfinity => f.write_str("-inf"),
            Dim::Finite(d) => write!(f, "{}", d),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::MinusInfinity => s.serialize_str("-inf"),
            Dim::Finite(d) => s.serialize_u64(*d as u64),
        }
    }
}

/// A canonical finite disjoint union of cells in `R^ambient_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxComplex<T> {
    ambient_dim: usize,
    cells: Vec<Cell<T>>,
}

impl<T: Scalar> BoxComplex<T> {
    pub fn empty(ambient_dim: usize) -> Self {
        BoxComplex {
            ambient_dim,
            cells: Vec::new(),
        }
    }

    /// All of `R^ambient_dim`.
    pub fn whole_space(ambient_dim: usize) -> Self {
        BoxComplex {
            ambient_dim,
            cells: vec![Cell::new(vec![Interval::real_line(); ambient_dim])],
        }
    }

    /// Canonical complex of a single cell.
    pub fn from_cell(cell: Cell<T>) -> Self {
        let d = cell.ambient_dim();
        Self::canonicalize(d, vec![cell]).expect("single cell has consistent dimension")
    }

    /// Splits possibly overlapping cells into the disjoint grid atoms of
    /// their union.
    pub fn canonicalize(ambient_dim: usize, raw: Vec<Cell<T>>) -> Result<Self> {
        check_cells(ambient_dim, &raw)?;
        let grid = Grid::from_cells(ambient_dim, &raw);
        let keys = grid.keys_of(&raw);
        Ok(Self::from_keys(ambient_dim, &grid, &keys))
    }

    fn from_keys(ambient_dim: usize, grid: &Grid<T>, keys: &BTreeSet<AtomKey>) -> Self {
        BoxComplex {
            ambient_dim,
            cells: keys.iter().map(|k| grid.cell(k)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cells(&self) -> &[Cell<T>] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.cells.iter().all(Cell::is_bounded)
    }

    pub fn dimension(&self) -> Dim {
        self.cells
            .iter()
            .map(|c| Dim::Finite(c.dim()))
            .max()
            .unwrap_or(Dim::MinusInfinity)
    }

    /// Closed axis-aligned bounding box as `(lo, hi)` per axis; `None` when
    /// empty.
    pub fn bounding_box(&self) -> Option<Vec<(T, T)>> {
        let first = self.cells.first()?;
        let mut bb: Vec<(T, T)> = first.factors().iter().map(|f| (f.lo(), f.hi())).collect();
        for c in &self.cells[1..] {
            for (b, f) in bb.iter_mut().zip(c.factors()) {
                b.0 = b.0.min(f.lo());
                b.1 = b.1.max(f.hi());
            }
        }
        Some(bb)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.check_same_dim(other)?;
        let grid = Grid::from_cells(self.ambient_dim, self.cells.iter().chain(&other.cells));
        let a = grid.keys_of(&self.cells);
        let b = grid.keys_of(&other.cells);
        let keys: BTreeSet<AtomKey> = a
            .union(&b)
            .filter(|k| keep(a.contains(*k), b.contains(*k)))
            .cloned()
            .collect();
        Ok(Self::from_keys(self.ambient_dim, &grid, &keys))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b)
    }

    /// Complement relative to `R^ambient_dim`.
    pub fn complement(&self) -> Self {
        let grid = Grid::from_cells(self.ambient_dim, &self.cells);
        let mine = grid.keys_of(&self.cells);
        let keys: BTreeSet<AtomKey> = grid
            .all_keys()
            .into_iter()
            .filter(|k| !mine.contains(k))
            .collect();
        Self::from_keys(self.ambient_dim, &grid, &keys)
    }

    pub fn cartesian_product(&self, other: &Self) -> Self {
        let cells = self
            .cells
            .iter()
            .flat_map(|a| other.cells.iter().map(move |b| a.product(b)))
            .collect();
        BoxComplex {
            ambient_dim: self.ambient_dim + other.ambient_dim,
            cells,
        }
    }

    fn map_cells(&self, f: impl Fn(&Cell<T>) -> Result<Cell<T>>) -> Result<Self> {
        let cells = self.cells.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::canonicalize(self.ambient_dim, cells)
    }

    pub fn translate(&self, v: &[T]) -> Result<Self> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("translation must be finite".into()));
        }
        self.map_cells(|c| {
            c.factors()
                .iter()
                .zip(v)
                .map(|(f, &s)| f.affine(T::one(), s))
                .collect::<Result<Vec<_>>>()
                .map(Cell::new)
        })
    }

    /// Image under `x -> beta * x`, `beta > 0`.
    pub fn scale(&self, beta: T) -> Result<Self> {
        if beta.is_nan() || beta <= T::zero() || beta.is_infinite() {
            return Err(Error::NonpositiveScale(beta.as_f64()));
        }
        self.map_cells(|c| {
            c.factors()
                .iter()
                .map(|f| f.affine(beta, T::zero()))
                .collect::<Result<Vec<_>>>()
                .map(Cell::new)
        })
    }

    /// Reorders axes: output axis `i` is input axis `perm[i]`.
    pub fn axis_permute(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.ambient_dim];
        let valid = perm.len() == self.ambient_dim
            && perm
                .iter()
                .all(|&p| p < self.ambient_dim && !std::mem::replace(&mut seen[p], true));
        if !valid {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        self.map_cells(|c| Ok(Cell::new(perm.iter().map(|&p| c.factors()[p]).collect())))
    }

    /// Mirror image in the hyperplane `x_axis = 0`.
    pub fn reflect(&self, axis: usize) -> Result<Self> {
        if axis >= self.ambient_dim {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.ambient_dim,
            });
        }
        self.map_cells(|c| {
            let mut factors = c.factors().to_vec();
            factors[axis] = factors[axis].reflected();
            Ok(Cell::new(factors))
        })
    }

    pub fn contains_point(&self, x: &[T]) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        Ok(self.cells.iter().any(|c| c.contains(x)))
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.check_same_dim(other)?;
        let grid = Grid::from_cells(self.ambient_dim, self.cells.iter().chain(&other.cells));
        let b = grid.keys_of(&other.cells);
        let mut a = BTreeSet::new();
        for c in &self.cells {
            grid.expand_into(c, &mut a);
        }
        Ok(a.is_subset(&b))
    }

    pub fn set_equal(&self, other: &Self) -> Result<bool> {
        self.check_same_dim(other)?;
        let grid = Grid::from_cells(self.ambient_dim, self.cells.iter().chain(&other.cells));
        Ok(grid.keys_of(&self.cells) == grid.keys_of(&other.cells))
    }

    /// Pairwise emptiness of cell intersections.
    pub fn cells_pairwise_disjoint(&self) -> bool {
        self.cells
            .iter()
            .enumerate()
            .all(|(i, a)| self.cells[i + 1..].iter().all(|b| a.intersect(b).is_none()))
    }
}

fn check_cells<T: Scalar>(ambient_dim: usize, cells: &[Cell<T>]) -> Result<()> {
    match cells.iter().find(|c| c.ambient_dim() != ambient_dim) {
        Some(c) => Err(Error::DimensionMismatch {
            expected: ambient_dim,
            found: c.ambient_dim(),
        }),
        None => Ok(()),
    }
}

impl<T: Scalar> fmt::Display for BoxComplex<T> {
    /// The DSL spelling: cells joined by `|`, `{}` for the empty set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "{{}} (empty, dim {})", self.ambient_dim);
        }
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct BoxComplexRepr<T> {
    dim: usize,
    cells: Vec<Cell<T>>,
}

impl<T: Scalar> Serialize for BoxComplex<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoxComplexRepr {
            dim: self.ambient_dim,
            cells: self.cells.clone(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for BoxComplex<T> {
    /// Input cells may overlap; they are canonicalized on load.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BoxComplexRepr::<T>::deserialize(d)?;
        BoxComplex::canonicalize(r.dim, r.cells).map_err(serde::de::Error::custom)
    }
}
