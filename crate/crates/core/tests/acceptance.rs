//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p tame-measure --test acceptance`.

mod common;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use tame_measure::crofton::{
    estimate_codim1, estimate_codim1_rotated, estimate_volume, plane_rotation,
};
use tame_measure::dsl::{evaluate, parse};
use tame_measure::measure::{euler_characteristic, mu, mu_compare};
use tame_measure::sampler::{
    build_sample, distances, find_near_integer_n, hausdorff_ratio_check, unit_interval,
};
use tame_measure::{BoxComplex64, Cell64, Interval64, SampleOptions, XPoly64, XReal64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(src: &str) -> BoxComplex64 {
    evaluate(&parse(src).expect("valid literal"), &HashMap::new()).expect("evaluates")
}

fn poly(s: &BoxComplex64) -> XPoly64 {
    mu(s).expect("finite mu").mu
}

/// `n` deterministic draws from `strategy`.
fn draws<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

fn golden_mu() -> Outcome {
    let tol = 1e-12;
    let check = |src: &str, want: &[f64]| {
        let got = poly(&set(src));
        ensure(
            common::poly_close(&got, &XPoly64::from_scalars(want), tol),
            || format!("mu({src}) = {got}, want {}", XPoly64::from_scalars(want)),
        )
    };
    check("[0,1)", &[0.0, 1.0])?;
    check("[0,1]", &[1.0, 1.0])?;
    check("[0,1],[0,1]", &[1.0, 2.0, 1.0])?;
    check("[0,1],[0,1],[0,1]", &[1.0, 3.0, 3.0, 1.0])?;
    check("[0,3],[0,3] \\ (1,2),(1,2)", &[0.0, 8.0, 8.0])?;
    for (d, src) in ["(0,1)", "(0,1),(0,1)", "(0,1),(0,1),(0,1)"]
        .into_iter()
        .enumerate()
    {
        let want = if d % 2 == 0 { -1.0 } else { 1.0 };
        let chi = euler_characteristic(&set(src));
        ensure(chi == XReal64::Finite(want), || {
            format!("chi({src}) = {chi}, want {want}")
        })?;
    }
    Ok("8 golden values".into())
}

fn monotonicity() -> Outcome {
    let pairs = draws(common::proper_subset(), 500);
    for (a, b) in &pairs {
        ensure(a.is_subset(b).unwrap() && !b.is_subset(a).unwrap(), || {
            format!("not a proper subset: {a} / {b}")
        })?;
        let c = mu_compare(a, b).map_err(|e| e.to_string())?;
        ensure(c == Ordering::Less, || {
            format!("mu_compare({a}, {b}) = {c:?}")
        })?;
    }
    Ok(format!("{} pairs, all less", pairs.len()))
}

fn product_formula() -> Outcome {
    let pairs = draws((common::any_complex(), common::any_complex()), 200);
    for (a, b) in &pairs {
        let lhs = poly(&a.cartesian_product(b));
        let rhs = poly(a).mul(&poly(b)).map_err(|e| e.to_string())?;
        ensure(common::poly_close(&lhs, &rhs, 1e-10), || {
            format!("{lhs} vs {rhs} for {a} x {b}")
        })?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn valuation() -> Outcome {
    let pairs = draws(common::pair(), 200);
    for (a, b) in &pairs {
        let lhs = poly(&a.union(b).unwrap())
            .add(&poly(&a.intersect(b).unwrap()))
            .unwrap();
        let rhs = poly(a).add(&poly(b)).unwrap();
        ensure(common::poly_close(&lhs, &rhs, 1e-10), || {
            format!("{lhs} vs {rhs} for {a} and {b}")
        })?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn crofton() -> Outcome {
    let start = Instant::now();
    let square = set("[0,1],[0,1]");
    let c = estimate_codim1(&square, 1_000_000, 2024).map_err(|e| e.to_string())?;
    ensure((c.estimate - 2.0).abs() < 4.0 * c.std_error, || {
        format!("codim-1 {c:?}")
    })?;
    ensure(c.std_error < 0.02, || format!("std_error {}", c.std_error))?;
    let ring = set("[0,3],[0,3] \\ (1,2),(1,2)");
    let v = estimate_volume(&ring, 100_000, 7).map_err(|e| e.to_string())?;
    ensure((v.estimate - 8.0).abs() < 4.0 * v.std_error, || {
        format!("ring volume {v:?}")
    })?;
    let r = estimate_codim1_rotated(&square, &plane_rotation(2, 0, 1, 0.5), 1_000_000, 99)
        .map_err(|e| e.to_string())?;
    let se = (c.std_error.powi(2) + r.std_error.powi(2)).sqrt();
    ensure((r.estimate - c.estimate).abs() < 4.0 * se, || {
        format!("rotated {r:?} vs {c:?}")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "mu_1 = {:.4} +/- {:.4}, ring area = {:.3} +/- {:.3}, rotated mu_1 = {:.4}, {:.1?}",
        c.estimate, c.std_error, v.estimate, v.std_error, r.estimate, elapsed
    ))
}

fn near_integer() -> Outcome {
    let sqrt2 = XPoly64::from_scalars(&[0.0, 2f64.sqrt()]);
    let n = find_near_integer_n(std::slice::from_ref(&sqrt2), 0.05, 1, 1_000_000, |_| true)
        .map_err(|e| e.to_string())?;
    ensure(n == 12, || format!("N = {n}, want 12"))?;
    let dist = (12.0 * 2f64.sqrt() - 17.0).abs();
    ensure((dist - 0.0294).abs() < 1e-4, || format!("distance {dist}"))?;
    ensure(distances(&[sqrt2], n).unwrap()[0] == dist, || {
        "re-verified distance differs".into()
    })?;
    let rational = [
        XPoly64::from_scalars(&[0.0, 0.5]),
        XPoly64::from_scalars(&[1.0, 1.0 / 3.0, 0.25]),
        XPoly64::from_scalars(&[2.0, 0.7, 0.0, 1.0 / 7.0]),
    ];
    let n =
        find_near_integer_n(&rational, 0.05, 1, 1_000_000, |_| true).map_err(|e| e.to_string())?;
    ensure(n % 420 == 0, || {
        format!("N = {n} is not a multiple of lcm 420")
    })?;
    for (p, d) in rational.iter().zip(distances(&rational, n).unwrap()) {
        ensure(d < 1e-9, || format!("{p} at N = {n}: distance {d}"))?;
    }
    Ok(format!(
        "N = 12 at distance {dist:.6}; rational shortcut N = {n}"
    ))
}

fn construction() -> Outcome {
    let start = Instant::now();
    let r2 = 2f64.sqrt();
    let seg = |lo: f64, lo_closed: bool, hi: f64, hi_closed: bool| {
        BoxComplex64::from_cell(Cell64::new(vec![
            Interval64::new(lo, hi, lo_closed, hi_closed).unwrap(),
            Interval64::point(0.0).unwrap(),
        ]))
    };
    let forced = vec![vec![0.5, 0.0], vec![1.5, 0.0], vec![5.0, 5.0]];
    let mut sets = vec![
        seg(0.0, true, 2.0, true),
        seg(0.0, true, r2, false),
        seg(1.0, true, 3.0, false),
    ];
    // [sqrt 2, 2] completes [0, sqrt 2) to [0, 2].
    sets.push(seg(r2, true, 2.0, true));
    sets.extend(forced.iter().map(|x| {
        BoxComplex64::from_cell(Cell64::new(
            x.iter().map(|&c| Interval64::point(c).unwrap()).collect(),
        ))
    }));
    let res = build_sample(&sets, &forced, SampleOptions::new(100)).map_err(|e| e.to_string())?;
    let unit = unit_interval::<f64>(2);
    let count = |s: &BoxComplex64| {
        res.points
            .iter()
            .filter(|x| s.contains_point(x).unwrap())
            .count() as u64
    };
    ensure(count(&unit) == res.n, || {
        format!("#(lambda in U) = {} but N = {}", count(&unit), res.n)
    })?;
    for (k, s) in sets.iter().enumerate() {
        let c = count(s);
        let want = poly(s).eval(res.n).unwrap();
        ensure(c == res.per_set[k].count, || {
            format!("set {k}: reported count differs")
        })?;
        ensure((c as f64 - want).abs() < 0.01, || {
            format!("set {k}: count {c} vs mu(N) = {want}")
        })?;
    }
    ensure(count(&sets[0]) == count(&sets[1]) + count(&sets[3]), || {
        "additivity".into()
    })?;
    for s in &sets[4..] {
        ensure(count(s) == 1, || {
            format!("singleton {s} counted {}", count(s))
        })?;
    }
    let mut pts = res.points.clone();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    ensure(pts.len() == res.points.len(), || "repeated points".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    let worst = res
        .per_set
        .iter()
        .map(|c| c.discrepancy)
        .fold(0.0, f64::max);
    Ok(format!(
        "N = {}, {} points, max discrepancy {worst:.2e}, {elapsed:.1?}",
        res.n,
        res.points.len()
    ))
}

fn hausdorff_ratio() -> Outcome {
    let seg = set("[0,1] x {0}");
    let first =
        hausdorff_ratio_check(&seg, 1, SampleOptions::new(100)).map_err(|e| e.to_string())?;
    let bound = |n: u64| (1.0 + 0.01) / n as f64;
    ensure(first.gap <= bound(first.n), || format!("{first:?}"))?;
    let mut opts = SampleOptions::new(100);
    opts.n_start = 100 * first.n;
    let later = hausdorff_ratio_check(&seg, 1, opts).map_err(|e| e.to_string())?;
    ensure(later.n > first.n, || "N did not grow".into())?;
    ensure(later.gap <= bound(later.n), || format!("{later:?}"))?;
    ensure(later.gap < first.gap, || {
        format!("gap {} did not shrink below {}", later.gap, first.gap)
    })?;
    Ok(format!(
        "N = {}: gap {:.3e}; N = {}: gap {:.3e}",
        first.n, first.gap, later.n, later.gap
    ))
}

fn parser() -> Outcome {
    use common::dsl_cases::{CORPUS, ERROR_CASES};
    use tame_measure::dsl::SetExpr;
    let n = |s: &str| Box::new(SetExpr::Name(s.into()));
    let golden = [
        (
            "A | B & C",
            SetExpr::Union(n("A"), Box::new(SetExpr::Intersect(n("B"), n("C")))),
        ),
        (
            "!A x B",
            SetExpr::Complement(Box::new(SetExpr::Product(n("A"), n("B")))),
        ),
        (
            "A \\ B \\ C",
            SetExpr::Difference(Box::new(SetExpr::Difference(n("A"), n("B"))), n("C")),
        ),
    ];
    for (src, want) in golden {
        let got = parse(src).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{src:?} parsed as {got}"))?;
    }
    for src in CORPUS {
        let e = parse(src).map_err(|err| format!("{src:?}: {err}"))?;
        let back = parse(&e.to_string()).map_err(|err| format!("{src:?} reprint: {err}"))?;
        ensure(back == e, || format!("{src:?} does not round-trip"))?;
    }
    for &(src, offset, expected) in ERROR_CASES.iter() {
        match parse(src) {
            Ok(_) => return Err(format!("{src:?} parsed")),
            Err(e) => ensure(
                e.offset == offset
                    && e.column == offset + 1
                    && e.expected.iter().any(|x| x == expected),
                || format!("{src:?}: {e} (offset {})", e.offset),
            )?,
        }
    }
    Ok(format!(
        "{} golden, {} round trips, {} error positions",
        3,
        CORPUS.len(),
        ERROR_CASES.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact mu golden values", golden_mu),
        ("strict monotonicity", monotonicity),
        ("product formula", product_formula),
        ("valuation identity", valuation),
        ("crofton validation", crofton),
        ("near-integer search", near_integer),
        ("finite sample construction", construction),
        ("hausdorff ratio", hausdorff_ratio),
        ("parser", parser),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[{}] PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("[{}] FAIL {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
