#![allow(dead_code)]

pub mod dsl_cases;

use proptest::prelude::*;
use tame_measure::{BoxComplex64, Cell64, Interval64, XPoly64, XReal64};

/// Bounded interval with endpoints on the half-integer grid in [0, 3].
pub fn interval() -> impl Strategy<Value = Interval64> {
    (0u8..=6, 0u8..=6, 0u8..5).prop_map(|(a, b, kind)| {
        let (lo, hi) = (a.min(b) as f64 / 2.0, a.max(b) as f64 / 2.0);
        if lo == hi || kind == 0 {
            return Interval64::point(lo).unwrap();
        }
        Interval64::new(lo, hi, kind & 1 == 0, kind >= 3).unwrap()
    })
}

pub fn cell(d: usize) -> impl Strategy<Value = Cell64> {
    proptest::collection::vec(interval(), d).prop_map(Cell64::new)
}

/// Canonical complex of up to four random cells.
pub fn complex(d: usize) -> impl Strategy<Value = BoxComplex64> {
    proptest::collection::vec(cell(d), 0..=4)
        .prop_map(move |cells| BoxComplex64::canonicalize(d, cells).unwrap())
}

pub fn nonempty_complex(d: usize) -> impl Strategy<Value = BoxComplex64> {
    proptest::collection::vec(cell(d), 1..=4)
        .prop_map(move |cells| BoxComplex64::canonicalize(d, cells).unwrap())
}

pub fn pair() -> impl Strategy<Value = (BoxComplex64, BoxComplex64)> {
    (1usize..=3).prop_flat_map(|d| (complex(d), complex(d)))
}

pub fn any_complex() -> impl Strategy<Value = BoxComplex64> {
    (1usize..=3).prop_flat_map(complex)
}

/// `|a - b| <= tol * max(1, |a|, |b|)` for every coefficient; infinities must match.
pub fn poly_close(a: &XPoly64, b: &XPoly64, tol: f64) -> bool {
    let n = a.coeffs().len().max(b.coeffs().len());
    (0..n).all(|i| match (a.coeff(i), b.coeff(i)) {
        (XReal64::Finite(x), XReal64::Finite(y)) => {
            (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
        }
        (x, y) => x == y,
    })
}

/// Points on the quarter grid around [0, 3]^d, so endpoints, interiors and
/// outside points all occur.
pub fn grid_points(d: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..d)
                .map(|_| {
                    if rng.random_bool(0.8) {
                        rng.random_range(-2i32..=14) as f64 / 4.0
                    } else {
                        rng.random_range(-0.5..3.5)
                    }
                })
                .collect()
        })
        .collect()
}

/// `B` minus one of its canonical atoms.
pub fn proper_subset() -> impl Strategy<Value = (BoxComplex64, BoxComplex64)> {
    (1usize..=3)
        .prop_flat_map(nonempty_complex)
        .prop_flat_map(|b| {
            let n = b.cells().len();
            (Just(b), 0..n)
        })
        .prop_map(|(b, k)| {
            let rest: Vec<Cell64> = b
                .cells()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, c)| c.clone())
                .collect();
            (
                BoxComplex64::canonicalize(b.ambient_dim(), rest).unwrap(),
                b,
            )
        })
}
