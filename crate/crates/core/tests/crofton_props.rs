mod common;

use common::*;
use proptest::prelude::*;
use tame_measure::crofton::{
    estimate_codim1, estimate_codim1_rotated, estimate_volume, plane_rotation, slice_line,
};
use tame_measure::{BoxComplex64, Cell64, Interval64};

fn unit_square() -> BoxComplex64 {
    let i = Interval64::closed(0.0, 1.0).unwrap();
    BoxComplex64::from_cell(Cell64::new(vec![i, i]))
}

#[test]
fn rotated_square_agrees() {
    let sq = unit_square();
    let n = 200_000;
    let base = estimate_codim1(&sq, n, 11).unwrap();
    for (k, angle) in [0.3, 0.785, 1.1].into_iter().enumerate() {
        let r = plane_rotation(2, 0, 1, angle);
        let rot = estimate_codim1_rotated(&sq, &r, n, 100 + k as u64).unwrap();
        let se = (base.std_error.powi(2) + rot.std_error.powi(2)).sqrt();
        assert!(
            (rot.estimate - base.estimate).abs() < 4.0 * se,
            "{:?} vs {:?}",
            rot,
            base
        );
    }
}

#[test]
fn rotated_box_in_3d() {
    // [0,1]^2 x [0,2]: mu_2 = 1 + 2 + 2 = 5.
    let i = Interval64::closed(0.0, 1.0).unwrap();
    let set = BoxComplex64::from_cell(Cell64::new(vec![
        i,
        i,
        Interval64::closed(0.0, 2.0).unwrap(),
    ]));
    let r = plane_rotation(3, 0, 2, 0.6);
    let est = estimate_codim1_rotated(&set, &r, 200_000, 5).unwrap();
    assert!(
        (est.estimate - 5.0).abs() < 4.0 * est.std_error,
        "{:?}",
        est
    );
}

#[test]
fn std_error_scales_with_root_n() {
    let sq = unit_square();
    let ring = BoxComplex64::canonicalize(
        2,
        vec![Cell64::new(vec![Interval64::closed(0.0, 3.0).unwrap(); 2])],
    )
    .unwrap()
    .difference(&BoxComplex64::from_cell(Cell64::new(vec![
        Interval64::open(
            1.0, 2.0
        )
        .unwrap();
        2
    ])))
    .unwrap();
    let seeds = 0..6u64;
    let mean_ratio = |f: &dyn Fn(u64, u64) -> f64| {
        seeds
            .clone()
            .map(|s| f(40_000, s + 50) / f(20_000, s))
            .sum::<f64>()
            / seeds.clone().count() as f64
    };
    let target = 1.0 / 2f64.sqrt();
    let codim = mean_ratio(&|n, s| estimate_codim1(&sq, n, s).unwrap().std_error);
    let vol = mean_ratio(&|n, s| estimate_volume(&ring, n, s).unwrap().std_error);
    for r in [codim, vol] {
        assert!((r / target - 1.0).abs() < 0.2, "ratio {r}");
    }
}

#[test]
fn deterministic() {
    let sq = unit_square();
    assert_eq!(
        estimate_codim1(&sq, 30_000, 9).unwrap(),
        estimate_codim1(&sq, 30_000, 9).unwrap()
    );
    assert_eq!(
        estimate_volume(&sq, 30_000, 9).unwrap(),
        estimate_volume(&sq, 30_000, 9).unwrap()
    );
    assert_ne!(
        estimate_codim1(&sq, 30_000, 9).unwrap(),
        estimate_codim1(&sq, 30_000, 10).unwrap()
    );
}

fn direction(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop_oneof![
        (0..d).prop_map(move |k| (0..d)
            .map(|j| if j == k { 1.0 } else { 0.0 })
            .collect::<Vec<f64>>()),
        proptest::collection::vec(-1.0f64..1.0, d)
            .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
            .prop_map(|v| {
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.into_iter().map(|x| x / n).collect()
            }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn slice_matches_membership(
        (a, p, u) in (1usize..=3).prop_flat_map(|d| (
            complex(d),
            proptest::collection::vec((-2i32..=14).prop_map(|k| k as f64 / 4.0), d),
            direction(d),
        )),
        ts in proptest::collection::vec(-6.0f64..6.0, 100),
    ) {
        let pieces = slice_line(&a, &p, &u).unwrap();
        for t in ts {
            let x: Vec<f64> = p.iter().zip(&u).map(|(pi, ui)| pi + t * ui).collect();
            let on_slice = pieces.iter().any(|iv| iv.contains(t));
            prop_assert_eq!(on_slice, a.contains_point(&x).unwrap(), "t = {}", t);
        }
        for w in pieces.windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
        }
    }
}
