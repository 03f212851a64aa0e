//! Finite-scale numerosity samples.
//!
//! Given bounded complexes `A_1..A_v`, forced points `x_1..x_k` and
//! `epsilon = 1/m`, [`build_sample`] constructs a finite set `lambda` with
//! `#(lambda ∩ U) = N` for the unit interval `U = [0,1) x {0}^(d-1)` and
//!
//! `|#(lambda ∩ A_i) - mu_{A_i}(N)| < epsilon` for every `i`.
//!
//! The construction partitions `U` (the B-regions) and the rest of the
//! union (the C-regions) by membership signature, finds a scale `N` at which
//! every region polynomial is within `epsilon / (2 max(u, w))` of an integer,
//! and then places exactly `round(mu_R(N))` points in each region.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::boxset::{AtomKey, BoxComplex, Cell, Dim, Grid, Interval};
use crate::measure::{hausdorff_measure, mu, mu_cell};
use crate::xpoly::{dist_to_nearest_integer, XPoly};
use crate::{Error, Result, Scalar};

/// Largest denominator accepted by the rational shortcut.
pub const MAX_DENOMINATOR: u64 = 1_000_000;

/// Tolerance for the integrality of constant terms.
pub const CONSTANT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    /// `epsilon = 1/m`.
    pub m: u64,
    pub n_start: u64,
    pub n_max: u64,
    /// Refuse to build samples with more points than this.
    pub max_points: u64,
}

impl SampleOptions {
    pub fn new(m: u64) -> Self {
        SampleOptions {
            m,
            n_start: 1,
            n_max: 1_000_000,
            max_points: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar + Serialize")]
pub struct SetCount<T> {
    pub count: u64,
    #[serde(rename = "mu_at_N")]
    pub mu_at_n: T,
    pub discrepancy: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar + Serialize")]
pub struct SampleResult<T> {
    #[serde(rename = "N")]
    pub n: u64,
    pub epsilon: T,
    pub points: Vec<Vec<T>>,
    pub per_set: Vec<SetCount<T>>,
}

/// Best rational approximation `p/q` with `q <= max_den` that reproduces
/// `c` to within a few units in the last place of `T`.
pub fn rational_approx<T: Scalar>(c: T, max_den: u64) -> Option<(i128, u64)> {
    if !c.is_finite() {
        return None;
    }
    let x0 = c.as_f64();
    if x0.fract() == 0.0 {
        return (x0.abs() < 1e30).then_some((x0 as i128, 1));
    }
    let tol = 4.0 * T::epsilon().as_f64() * x0.abs().max(1.0);
    let (mut h1, mut h2): (i128, i128) = (1, 0);
    let (mut k1, mut k2): (i128, i128) = (0, 1);
    let mut x = x0;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e18 {
            return None;
        }
        let a = a as i128;
        let h = a * h1 + h2;
        let k = a * k1 + k2;
        if k > max_den as i128 {
            return None;
        }
        if (x0 - h as f64 / k as f64).abs() <= tol {
            return Some((h, k as u64));
        }
        let frac = x - x.floor();
        if frac == 0.0 {
            return None;
        }
        x = 1.0 / frac;
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Common denominator of every non-constant coefficient, when all of them
/// are rational with denominators up to [`MAX_DENOMINATOR`] and the lcm fits.
fn rational_period<T: Scalar>(coeffs: &[Vec<T>]) -> Option<u64> {
    let mut l: u64 = 1;
    for c in coeffs.iter().flat_map(|p| p.iter().skip(1)) {
        let (_, q) = rational_approx(*c, MAX_DENOMINATOR)?;
        l = (l / gcd(l, q)).checked_mul(q)?;
    }
    Some(l)
}

/// Distances `||p_i(n)||` for every polynomial.
pub fn distances<T: Scalar>(polys: &[XPoly<T>], n: u64) -> Result<Vec<T>> {
    polys
        .iter()
        .map(|p| p.eval(n).map(dist_to_nearest_integer))
        .collect()
}

/// Least `N` in `[n_start, n_max]` with `||p_i(N)|| < epsilon` for all `i`
/// and `extra(N)`.
///
/// When every coefficient is rational the search walks multiples of the
/// common denominator only, where each `p_i(N)` is an integer; otherwise it
/// scans every `N`.
pub fn find_near_integer_n<T, F>(
    polys: &[XPoly<T>],
    epsilon: T,
    n_start: u64,
    n_max: u64,
    extra: F,
) -> Result<u64>
where
    T: Scalar,
    F: Fn(u64) -> bool,
{
    if !(epsilon > T::zero() && epsilon < T::one()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie in (0, 1), got {}",
            epsilon
        )));
    }
    let coeffs = polys
        .iter()
        .map(XPoly::finite_coeffs)
        .collect::<Result<Vec<_>>>()?;
    for c in &coeffs {
        let c0 = c.first().copied().unwrap_or_else(T::zero);
        if dist_to_nearest_integer(c0).as_f64() > CONSTANT_TOLERANCE {
            return Err(Error::NonIntegerConstant(c0.as_f64()));
        }
    }
    let accept = |n: u64| -> bool {
        polys.iter().all(|p| {
            p.eval(n)
                .map(|v| dist_to_nearest_integer(v) < epsilon)
                .unwrap_or(false)
        }) && extra(n)
    };
    match rational_period(&coeffs) {
        Some(period) => {
            let mut n = n_start.div_ceil(period) * period;
            while n <= n_max {
                if accept(n) {
                    return Ok(n);
                }
                n = match n.checked_add(period) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        None => {
            for n in n_start..=n_max {
                if accept(n) {
                    return Ok(n);
                }
            }
        }
    }
    Err(Error::SearchExhausted(n_max))
}

/// `k` distinct points of `cell`, evenly spaced along its diagonal at
/// parameters `j/(k+1)`.
///
/// Degenerate axes stay at their coordinate. A nondegenerate axis runs over
/// its own extent when bounded, otherwise over a unit segment next to its
/// finite end (or `[0, 1]` for the whole line).
pub fn pick_points_in_cell<T: Scalar>(cell: &Cell<T>, k: usize) -> Result<Vec<Vec<T>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    if cell.dim() == 0 {
        if k > 1 {
            return Err(Error::CellTooSmall(k));
        }
        return Ok(vec![cell.factors().iter().map(Interval::lo).collect()]);
    }
    let spans: Vec<(T, T)> = cell
        .factors()
        .iter()
        .map(|f| match (f.lo().is_finite(), f.hi().is_finite()) {
            (true, true) => (f.lo(), f.hi()),
            (true, false) => (f.lo(), f.lo() + T::one()),
            (false, true) => (f.hi() - T::one(), f.hi()),
            (false, false) => (T::zero(), T::one()),
        })
        .collect();
    let denom = T::of_u64(k as u64 + 1);
    let mut out: Vec<Vec<T>> = Vec::with_capacity(k);
    for j in 1..=k {
        let t = T::of_u64(j as u64) / denom;
        let p: Vec<T> = spans.iter().map(|&(s, e)| s + (e - s) * t).collect();
        // Coordinates increase strictly with j along every nondegenerate
        // axis unless the spacing is below the float resolution.
        if !cell.contains(&p) || out.last().is_some_and(|q| *q == p) {
            return Err(Error::CellTooSmall(k));
        }
        out.push(p);
    }
    Ok(out)
}

/// One block of the B/C partition: atoms sharing a membership signature.
struct Region<T> {
    cells: Vec<Cell<T>>,
    mu: XPoly<T>,
    finite: bool,
    in_unit: bool,
    /// Indices into the deduplicated forced points.
    forced: Vec<usize>,
}

fn point_key<T: Scalar>(p: &[T]) -> Vec<u64> {
    // +0.0 and -0.0 are the same point.
    p.iter()
        .map(|v| (*v + T::zero()).as_f64().to_bits())
        .collect()
}

/// `U = [0,1) x {0}^(d-1)`.
pub fn unit_interval<T: Scalar>(d: usize) -> BoxComplex<T> {
    let mut factors = vec![Interval::closed_open(T::zero(), T::one()).expect("[0,1)")];
    factors.extend((1..d).map(|_| Interval::point(T::zero()).expect("{0}")));
    BoxComplex::from_cell(Cell::new(factors))
}

fn partition<T: Scalar>(
    d: usize,
    sets: &[BoxComplex<T>],
    unit: &BoxComplex<T>,
) -> Result<Vec<Region<T>>> {
    let grid = Grid::from_cells(d, sets.iter().flat_map(|s| s.cells()).chain(unit.cells()));
    let set_keys: Vec<BTreeSet<AtomKey>> = sets.iter().map(|s| grid.keys_of(s.cells())).collect();
    let unit_keys = grid.keys_of(unit.cells());
    let mut all: BTreeSet<AtomKey> = unit_keys.clone();
    for k in &set_keys {
        all.extend(k.iter().cloned());
    }
    let mut groups: BTreeMap<(bool, Vec<bool>), Vec<Cell<T>>> = BTreeMap::new();
    for key in &all {
        let sig: Vec<bool> = set_keys.iter().map(|s| s.contains(key)).collect();
        // B-regions first (in_unit = true sorts after false, so negate).
        groups
            .entry((!unit_keys.contains(key), sig))
            .or_default()
            .push(grid.cell(key));
    }
    groups
        .into_iter()
        .map(|((outside, _), cells)| {
            let polys = cells.iter().map(mu_cell).collect::<Result<Vec<_>>>()?;
            Ok(Region {
                mu: XPoly::sum(&polys)?,
                finite: cells.iter().all(|c| c.dim() == 0),
                in_unit: !outside,
                cells,
                forced: Vec::new(),
            })
        })
        .collect()
}

fn nearest_count<T: Scalar>(p: &XPoly<T>, n: u64) -> Result<i64> {
    Ok(p.eval(n)?
        .round()
        .to_i64()
        .expect("region counts fit in i64"))
}

/// Builds `lambda` for `sets` and forced `points` at `epsilon = 1/m`.
pub fn build_sample<T: Scalar>(
    sets: &[BoxComplex<T>],
    points: &[Vec<T>],
    opts: SampleOptions,
) -> Result<SampleResult<T>> {
    if opts.m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let d = sets
        .first()
        .map(BoxComplex::ambient_dim)
        .or_else(|| points.first().map(Vec::len))
        .ok_or_else(|| Error::InvalidArgument("no sets or points given".into()))?;
    if d == 0 {
        return Err(Error::InvalidArgument(
            "the unit interval needs ambient dimension >= 1".into(),
        ));
    }
    for s in sets {
        if s.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.ambient_dim(),
            });
        }
        if !s.is_bounded() {
            return Err(Error::UnboundedSet);
        }
    }
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "forced points must be finite".into(),
            ));
        }
    }

    let mut forced: Vec<Vec<T>> = Vec::new();
    let mut seen = BTreeSet::new();
    for p in points {
        if seen.insert(point_key(p)) {
            forced.push(p.clone());
        }
    }
    let k = forced.len();

    let unit = unit_interval::<T>(d);
    let mut regions = partition(d, sets, &unit)?;
    let mut outside: Vec<usize> = Vec::new();
    for (i, p) in forced.iter().enumerate() {
        match regions
            .iter_mut()
            .find(|r| r.cells.iter().any(|c| c.contains(p)))
        {
            Some(r) => r.forced.push(i),
            None => outside.push(i),
        }
    }

    let u = regions.iter().filter(|r| r.in_unit).count();
    let w = regions.iter().filter(|r| !r.in_unit).count() + usize::from(!outside.is_empty());
    let epsilon = T::one() / T::of_u64(opts.m);
    let threshold = epsilon / T::of_u64(2 * u.max(w) as u64);

    // lambda_0' = forced points together with every point of a finite B-region.
    let finite_b_points: usize = regions
        .iter()
        .filter(|r| r.in_unit && r.finite)
        .map(|r| r.cells.len())
        .sum();
    let forced_in_finite_b: usize = regions
        .iter()
        .filter(|r| r.in_unit && r.finite)
        .map(|r| r.forced.len())
        .sum();
    let lambda0_prime = (k - forced_in_finite_b + finite_b_points) as u64;

    let mut polys: Vec<XPoly<T>> = regions.iter().map(|r| r.mu.clone()).collect();
    if !outside.is_empty() {
        polys.push(XPoly::from_scalars(&[T::of_u64(outside.len() as u64)]));
    }
    let growing: Vec<&XPoly<T>> = polys
        .iter()
        .filter(|p| p.degree().unwrap_or(0) > 0)
        .collect();
    let floor = T::of_u64(k as u64 + 1);
    let n = find_near_integer_n(&polys, threshold, opts.n_start.max(1), opts.n_max, |n| {
        n > lambda0_prime
            && growing
                .iter()
                .all(|p| p.eval(n).map(|v| v > floor).unwrap_or(false))
    })?;

    let targets = regions
        .iter()
        .map(|r| nearest_count(&r.mu, n))
        .collect::<Result<Vec<_>>>()?;
    let total: i64 = targets.iter().sum::<i64>() + outside.len() as i64;
    if total as u64 > opts.max_points {
        return Err(Error::SampleTooLarge(total as u64));
    }

    let mut lambda: Vec<Vec<T>> = forced.clone();
    for (region, &target) in regions.iter().zip(&targets) {
        if region.finite {
            if target != region.cells.len() as i64 {
                return Err(Error::ConstructionViolation(format!(
                    "finite region with {} points rounds to {}",
                    region.cells.len(),
                    target
                )));
            }
            for c in &region.cells {
                let p: Vec<T> = c.factors().iter().map(Interval::lo).collect();
                if !seen.contains(&point_key(&p)) {
                    lambda.push(p);
                }
            }
            continue;
        }
        let need = target - region.forced.len() as i64;
        if need < 0 {
            return Err(Error::ConstructionViolation(format!(
                "region target {} below its {} forced points",
                target,
                region.forced.len()
            )));
        }
        let need = need as usize;
        let host = region
            .cells
            .iter()
            .max_by_key(|c| c.dim())
            .expect("regions are nonempty");
        let blocked = region
            .forced
            .iter()
            .filter(|&&i| host.contains(&forced[i]))
            .count();
        let picked: Vec<Vec<T>> = pick_points_in_cell(host, need + blocked)?
            .into_iter()
            .filter(|p| !seen.contains(&point_key(p)))
            .take(need)
            .collect();
        if picked.len() != need {
            return Err(Error::ConstructionViolation(
                "could not place enough fresh points".into(),
            ));
        }
        lambda.extend(picked);
    }

    verify_sample(sets, &unit, lambda, n, epsilon)
}

fn verify_sample<T: Scalar>(
    sets: &[BoxComplex<T>],
    unit: &BoxComplex<T>,
    lambda: Vec<Vec<T>>,
    n: u64,
    epsilon: T,
) -> Result<SampleResult<T>> {
    let distinct: BTreeSet<Vec<u64>> = lambda.iter().map(|p| point_key(p)).collect();
    if distinct.len() != lambda.len() {
        return Err(Error::ConstructionViolation("duplicate points".into()));
    }
    let count_in = |s: &BoxComplex<T>| -> u64 {
        lambda
            .iter()
            .filter(|p| {
                s.contains_point(p)
                    .expect("points have the ambient dimension")
            })
            .count() as u64
    };
    let in_unit = count_in(unit);
    if in_unit != n {
        return Err(Error::ConstructionViolation(format!(
            "#(lambda ∩ U) = {} but N = {}",
            in_unit, n
        )));
    }
    let mut per_set = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let count = count_in(s);
        let mu_at_n = mu(s)?.mu.eval(n)?;
        let discrepancy = (T::of_u64(count) - mu_at_n).abs();
        if discrepancy.is_nan() || discrepancy >= epsilon {
            return Err(Error::ConstructionViolation(format!(
                "set {}: count {} vs mu(N) = {}",
                i, count, mu_at_n
            )));
        }
        per_set.push(SetCount {
            count,
            mu_at_n,
            discrepancy,
        });
    }
    Ok(SampleResult {
        n,
        epsilon,
        points: lambda,
        per_set,
    })
}

/// Finite-scale comparison of `#(lambda ∩ A) / N^i` with `H^i(A)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar + Serialize")]
pub struct HausdorffRatio<T> {
    #[serde(rename = "N")]
    pub n: u64,
    pub count: u64,
    pub ratio: T,
    pub target: T,
    pub gap: T,
    /// `(|sum_{j<i} mu_j N^j| + epsilon) / N^i`, which bounds `gap`.
    pub bound: T,
}

pub fn hausdorff_ratio_check<T: Scalar>(
    set: &BoxComplex<T>,
    i: usize,
    opts: SampleOptions,
) -> Result<HausdorffRatio<T>> {
    if !set.is_bounded() {
        return Err(Error::UnboundedSet);
    }
    match set.dimension() {
        Dim::Finite(d) if d == i => {}
        Dim::Finite(d) => {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: i,
            })
        }
        Dim::MinusInfinity => return Err(Error::EmptySet),
    }
    let sample = build_sample(std::slice::from_ref(set), &[], opts)?;
    let n = sample.n;
    let count = sample.per_set[0].count;
    let scale = T::of_u64(n).powi(i as i32);
    let target = hausdorff_measure(set, i).to_scalar();
    let ratio = T::of_u64(count) / scale;
    let lower = XPoly::new(mu(set)?.mu.coeffs()[..i].to_vec());
    let bound = (lower.eval(n)?.abs() + sample.epsilon) / scale;
    Ok(HausdorffRatio {
        n,
        count,
        ratio,
        target,
        gap: (ratio - target).abs(),
        bound,
    })
}
