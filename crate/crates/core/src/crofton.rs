//! Monte Carlo estimates of intrinsic volumes from the Crofton integral
//!
//! `mu_i(A) = ∫_{G(d, d-i)} ∫_{L^⊥} chi(A ∩ (L + x)) dx dγ(L)`,
//!
//! with `γ(G(n, m)) = C(n, m) β_n / (β_m β_{n-m})` and `β_k` the volume of
//! the unit `k`-ball. Two cases are implemented:
//!
//! - `i = d`: the flats are points, `chi` of a point slice is membership, and
//!   the estimator is hit-or-miss volume over the bounding box;
//! - `i = d - 1`: the flats are lines. A direction is drawn uniformly on the
//!   sphere, a base point uniformly in a `(d-1)`-ball of `u^⊥` around the
//!   bounding-box centre (radius half the box diagonal, so it covers the
//!   projection), and the slice Euler characteristic is averaged.
//!
//! Randomness comes from [`SampleStreams`]: sample `j` draws from its own
//! ChaCha8 stream `j`, so results do not depend on how the index range is
//! split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boxset::{BoxComplex, Interval};
use crate::{Error, Result, Scalar};

/// Samples per parallel work unit. Partial sums are formed per block and
/// combined in block order, so the reduction order is fixed.
const BLOCK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CroftonEstimate<T> {
    /// Which intrinsic volume `mu_i` was estimated.
    pub index: usize,
    pub estimate: T,
    pub std_error: T,
    pub n_samples: u64,
    pub seed: u64,
}

/// Counter-based random streams.
///
/// The 64-bit seed is expanded to a 256-bit ChaCha key once (PCG32 expansion,
/// as in `SeedableRng::seed_from_u64`); stream `j` is ChaCha8 with that key
/// and 64-bit stream id `j`, starting at block counter zero. The output is
/// fully determined by `(seed, j)` on every platform.
#[derive(Clone, Debug)]
pub struct SampleStreams {
    key: [u8; 32],
}

impl SampleStreams {
    pub fn new(seed: u64) -> Self {
        SampleStreams {
            key: ChaCha8Rng::seed_from_u64(seed).get_seed(),
        }
    }

    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(index);
        rng
    }
}

/// Volume of the unit ball in `R^k`.
pub fn unit_ball_volume<T: Scalar>(k: usize) -> T {
    let two_pi = T::PI() + T::PI();
    let mut v = if k.is_multiple_of(2) {
        T::one()
    } else {
        T::of(2.0)
    };
    let mut j = if k.is_multiple_of(2) { 2 } else { 3 };
    while j <= k {
        v = v * two_pi / T::of(j as f64);
        j += 2;
    }
    v
}

/// Total mass of the Grassmannian `G(n, m)` under the normalization above.
pub fn grassmannian_norm<T: Scalar>(n: usize, m: usize) -> T {
    assert!(m <= n, "G({n}, {m}) needs m <= n");
    let k = m.min(n - m);
    let binom = (0..k).fold(T::one(), |acc, i| {
        acc * T::of((n - i) as f64) / T::of((i + 1) as f64)
    });
    binom * unit_ball_volume::<T>(n) / (unit_ball_volume::<T>(m) * unit_ball_volume::<T>(n - m))
}

/// Intersection of `A` with the line `p + t u`, as maximal disjoint
/// intervals of the parameter `t`, sorted.
pub fn slice_line<T: Scalar>(set: &BoxComplex<T>, p: &[T], u: &[T]) -> Result<Vec<Interval<T>>> {
    let d = set.ambient_dim();
    for v in [p, u] {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
    }
    let norm = u.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
    let off = (norm - T::one()).abs();
    if off.is_nan() || off > T::of(1e-6) {
        return Err(Error::InvalidArgument(format!(
            "direction must be a unit vector (norm {})",
            norm
        )));
    }
    Ok(slice_line_unchecked(set, p, u))
}

/// One endpoint constraint on `t`: value and whether it is attained.
#[derive(Clone, Copy)]
struct Bound<T> {
    at: T,
    closed: bool,
}

fn slice_line_unchecked<T: Scalar>(set: &BoxComplex<T>, p: &[T], u: &[T]) -> Vec<Interval<T>> {
    let mut pieces: Vec<Interval<T>> = Vec::new();
    'cells: for cell in set.cells() {
        let mut lo = Bound {
            at: T::neg_infinity(),
            closed: false,
        };
        let mut hi = Bound {
            at: T::infinity(),
            closed: false,
        };
        for ((f, &pj), &uj) in cell.factors().iter().zip(p).zip(u) {
            if uj == T::zero() {
                if !f.contains(pj) {
                    continue 'cells;
                }
                continue;
            }
            let a = Bound {
                at: (f.lo() - pj) / uj,
                closed: f.lo_closed(),
            };
            let b = Bound {
                at: (f.hi() - pj) / uj,
                closed: f.hi_closed(),
            };
            let (enter, exit) = if uj > T::zero() { (a, b) } else { (b, a) };
            lo = tighter_lower(lo, enter);
            hi = tighter_upper(hi, exit);
        }
        if let Ok(iv) = Interval::new(lo.at, hi.at, lo.closed, hi.closed) {
            pieces.push(iv);
        }
    }
    merge_pieces(pieces)
}

fn tighter_lower<T: Scalar>(a: Bound<T>, b: Bound<T>) -> Bound<T> {
    if a.at > b.at {
        a
    } else if b.at > a.at {
        b
    } else {
        Bound {
            at: a.at,
            closed: a.closed && b.closed,
        }
    }
}

fn tighter_upper<T: Scalar>(a: Bound<T>, b: Bound<T>) -> Bound<T> {
    if a.at < b.at {
        a
    } else if b.at < a.at {
        b
    } else {
        Bound {
            at: a.at,
            closed: a.closed && b.closed,
        }
    }
}

/// Sorts slice pieces and glues those that touch or (through rounding)
/// overlap.
fn merge_pieces<T: Scalar>(mut pieces: Vec<Interval<T>>) -> Vec<Interval<T>> {
    pieces.sort_by(|a, b| {
        a.lo()
            .partial_cmp(&b.lo())
            .expect("slice endpoints are not NaN")
            .then(b.lo_closed().cmp(&a.lo_closed()))
    });
    let mut out: Vec<Interval<T>> = Vec::with_capacity(pieces.len());
    for iv in pieces {
        if let Some(last) = out.last_mut() {
            let joins = iv.lo() < last.hi()
                || (iv.lo() == last.hi() && (iv.lo_closed() || last.hi_closed()));
            if joins {
                let (hi, hi_closed) = if iv.hi() > last.hi() {
                    (iv.hi(), iv.hi_closed())
                } else if iv.hi() < last.hi() {
                    (last.hi(), last.hi_closed())
                } else {
                    (last.hi(), last.hi_closed() || iv.hi_closed())
                };
                *last = Interval::new(last.lo(), hi, last.lo_closed(), hi_closed)
                    .expect("merged interval is nonempty");
                continue;
            }
        }
        out.push(iv);
    }
    out
}

/// Euler characteristic of a disjoint union of intervals.
pub fn slice_chi<T: Scalar>(pieces: &[Interval<T>]) -> i64 {
    pieces
        .iter()
        .map(|iv| {
            if iv.is_point() {
                1
            } else {
                iv.lo_closed() as i64 + iv.hi_closed() as i64 - 1
            }
        })
        .sum()
}

fn require_bounded_nonempty<T: Scalar>(set: &BoxComplex<T>) -> Result<Vec<(T, T)>> {
    if !set.is_bounded() {
        return Err(Error::UnboundedSet);
    }
    set.bounding_box().ok_or(Error::EmptySet)
}

/// Sum and sum of squares of `f(j)` over `j in 0..n`, reduced in a fixed
/// order.
fn accumulate<F>(n: u64, f: F) -> (f64, f64)
where
    F: Fn(u64) -> f64 + Sync,
{
    let blocks = n.div_ceil(BLOCK);
    let partial: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let end = ((b + 1) * BLOCK).min(n);
            (b * BLOCK..end).fold((0.0, 0.0), |(s, ss), j| {
                let v = f(j);
                (s + v, ss + v * v)
            })
        })
        .collect();
    partial
        .into_iter()
        .fold((0.0, 0.0), |(s, ss), (a, b)| (s + a, ss + b))
}

/// `mu_d(A)` by uniform sampling of the closed bounding box.
pub fn estimate_volume<T: Scalar>(
    set: &BoxComplex<T>,
    n_samples: u64,
    seed: u64,
) -> Result<CroftonEstimate<T>> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be positive".into()));
    }
    let bbox = require_bounded_nonempty(set)?;
    let streams = SampleStreams::new(seed);
    let box_volume = bbox.iter().fold(T::one(), |v, &(lo, hi)| v * (hi - lo));
    let (hits, _) = accumulate(n_samples, |j| {
        let mut rng = streams.stream(j);
        let x: Vec<T> = bbox
            .iter()
            .map(|&(lo, hi)| lo + (hi - lo) * T::of(rng.random::<f64>()))
            .collect();
        if set
            .contains_point(&x)
            .expect("sample has the ambient dimension")
        {
            1.0
        } else {
            0.0
        }
    });
    let n = n_samples as f64;
    let frac = hits / n;
    let bv = box_volume.as_f64();
    Ok(CroftonEstimate {
        index: set.ambient_dim(),
        estimate: T::of(bv * frac),
        std_error: T::of(bv * (frac * (1.0 - frac) / n).sqrt()),
        n_samples,
        seed,
    })
}

/// `mu_{d-1}(A)` by averaging the Euler characteristic of random line
/// slices.
pub fn estimate_codim1<T: Scalar>(
    set: &BoxComplex<T>,
    n_samples: u64,
    seed: u64,
) -> Result<CroftonEstimate<T>> {
    codim1(set, None, n_samples, seed)
}

/// Same estimator for the rotated set `R A` (rotation about the origin),
/// where `rotation` is an orthogonal `d x d` matrix given by rows.
///
/// Lines are drawn in the world frame around the rotated bounding ball and
/// mapped back by `R^T` before slicing the axis-aligned complex.
pub fn estimate_codim1_rotated<T: Scalar>(
    set: &BoxComplex<T>,
    rotation: &[Vec<T>],
    n_samples: u64,
    seed: u64,
) -> Result<CroftonEstimate<T>> {
    let d = set.ambient_dim();
    if rotation.len() != d || rotation.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rotation.len(),
        });
    }
    let tol = T::of(1e-9);
    for i in 0..d {
        for j in 0..d {
            let dot = (0..d).fold(T::zero(), |a, k| a + rotation[i][k] * rotation[j][k]);
            let want = if i == j { T::one() } else { T::zero() };
            if (dot - want).abs() > tol {
                return Err(Error::InvalidArgument("rotation is not orthogonal".into()));
            }
        }
    }
    codim1(set, Some(rotation), n_samples, seed)
}

/// Rotation by `angle` in the `(i, j)` coordinate plane of `R^d`.
pub fn plane_rotation<T: Scalar>(d: usize, i: usize, j: usize, angle: T) -> Vec<Vec<T>> {
    let mut r = vec![vec![T::zero(); d]; d];
    for (k, row) in r.iter_mut().enumerate() {
        row[k] = T::one();
    }
    let (s, c) = angle.sin_cos();
    r[i][i] = c;
    r[i][j] = -s;
    r[j][i] = s;
    r[j][j] = c;
    r
}

fn mat_vec<T: Scalar>(m: &[Vec<T>], v: &[T], transpose: bool) -> Vec<T> {
    let d = v.len();
    (0..d)
        .map(|i| {
            (0..d).fold(T::zero(), |a, k| {
                let e = if transpose { m[k][i] } else { m[i][k] };
                a + e * v[k]
            })
        })
        .collect()
}

/// Orthonormal basis of the complement of unit vector `u` (Gram-Schmidt over
/// the standard basis).
fn orthonormal_complement(u: &[f64]) -> Vec<Vec<f64>> {
    let d = u.len();
    let mut basis: Vec<Vec<f64>> = vec![u.to_vec()];
    for k in 0..d {
        if basis.len() == d {
            break;
        }
        let mut v = vec![0.0; d];
        v[k] = 1.0;
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis.remove(0);
    basis
}

fn unit_gaussian_vector(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn codim1<T: Scalar>(
    set: &BoxComplex<T>,
    rotation: Option<&[Vec<T>]>,
    n_samples: u64,
    seed: u64,
) -> Result<CroftonEstimate<T>> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be positive".into()));
    }
    let d = set.ambient_dim();
    if d == 0 {
        return Err(Error::InvalidArgument(
            "line slices need ambient dimension >= 1".into(),
        ));
    }
    let bbox = require_bounded_nonempty(set)?;
    let centre: Vec<f64> = bbox
        .iter()
        .map(|&(lo, hi)| ((lo + hi) / T::of(2.0)).as_f64())
        .collect();
    let radius = bbox
        .iter()
        .map(|&(lo, hi)| (hi - lo).as_f64().powi(2))
        .sum::<f64>()
        .sqrt()
        / 2.0;
    let world_centre: Vec<f64> = match rotation {
        Some(r) => {
            let c: Vec<T> = centre.iter().map(|&x| T::of(x)).collect();
            mat_vec(r, &c, false)
                .into_iter()
                .map(Scalar::as_f64)
                .collect()
        }
        None => centre.clone(),
    };
    let ball = unit_ball_volume::<f64>(d - 1) * radius.powi(d as i32 - 1);
    let factor = grassmannian_norm::<f64>(d, 1) * ball;
    let streams = SampleStreams::new(seed);

    let (s, ss) = accumulate(n_samples, |j| {
        let mut rng = streams.stream(j);
        let u = unit_gaussian_vector(&mut rng, d);
        let mut p = world_centre.clone();
        if d > 1 {
            let basis = orthonormal_complement(&u);
            let dir = unit_gaussian_vector(&mut rng, d - 1);
            let r = radius * rng.random::<f64>().powf(1.0 / (d - 1) as f64);
            for (b, &w) in basis.iter().zip(&dir) {
                for (pk, bk) in p.iter_mut().zip(b) {
                    *pk += r * w * bk;
                }
            }
        }
        let mut pt: Vec<T> = p.into_iter().map(T::of).collect();
        let mut ut: Vec<T> = u.into_iter().map(T::of).collect();
        if let Some(r) = rotation {
            pt = mat_vec(r, &pt, true);
            ut = mat_vec(r, &ut, true);
        }
        slice_chi(&slice_line_unchecked(set, &pt, &ut)) as f64
    });
    let n = n_samples as f64;
    let mean = s / n;
    let var = if n_samples > 1 {
        ((ss - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(CroftonEstimate {
        index: d - 1,
        estimate: T::of(factor * mean),
        std_error: T::of(factor * (var / n).sqrt()),
        n_samples,
        seed,
    })
}
