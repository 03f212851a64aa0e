mod common;

use common::*;
use proptest::prelude::*;
use tame_measure::{BoxComplex64, Dim};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boolean_laws((a, b) in pair()) {
        let not = |x: &BoxComplex64| x.complement();
        // de Morgan
        prop_assert!(not(&a.union(&b).unwrap()).set_equal(&not(&a).intersect(&not(&b)).unwrap()).unwrap());
        prop_assert!(not(&a.intersect(&b).unwrap()).set_equal(&not(&a).union(&not(&b)).unwrap()).unwrap());
        prop_assert!(a.difference(&b).unwrap().set_equal(&a.intersect(&not(&b)).unwrap()).unwrap());
        prop_assert!(a.union(&a).unwrap().set_equal(&a).unwrap());
        prop_assert!(a.intersect(&a).unwrap().set_equal(&a).unwrap());
        prop_assert!(not(&not(&a)).set_equal(&a).unwrap());
    }

    #[test]
    fn membership_oracle((a, b) in pair(), seed in any::<u64>()) {
        let d = a.ambient_dim();
        let u = a.union(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        let m = a.difference(&b).unwrap();
        let c = a.complement();
        for x in grid_points(d, 1000, seed) {
            let (pa, pb) = (a.contains_point(&x).unwrap(), b.contains_point(&x).unwrap());
            prop_assert_eq!(u.contains_point(&x).unwrap(), pa || pb);
            prop_assert_eq!(i.contains_point(&x).unwrap(), pa && pb);
            prop_assert_eq!(m.contains_point(&x).unwrap(), pa && !pb);
            prop_assert_eq!(c.contains_point(&x).unwrap(), !pa);
        }
    }

    #[test]
    fn canonical_cells_are_disjoint((a, b) in pair()) {
        for s in [&a, &b, &a.union(&b).unwrap(), &a.complement()] {
            prop_assert!(s.cells_pairwise_disjoint());
            for (k, p) in s.cells().iter().enumerate() {
                for q in &s.cells()[k + 1..] {
                    prop_assert!(p.intersect(q).is_none());
                }
            }
        }
    }

    #[test]
    fn subset_both_ways_is_equality((a, b) in pair()) {
        let both = a.is_subset(&b).unwrap() && b.is_subset(&a).unwrap();
        prop_assert_eq!(both, a.set_equal(&b).unwrap());
        let u = a.union(&b).unwrap();
        prop_assert!(a.is_subset(&u).unwrap());
        prop_assert!(a.intersect(&b).unwrap().is_subset(&b).unwrap());
    }

    #[test]
    fn product_dimension(
        a in (1usize..=3).prop_flat_map(nonempty_complex),
        b in (1usize..=3).prop_flat_map(nonempty_complex),
    ) {
        let p = a.cartesian_product(&b);
        prop_assert_eq!(p.dimension(), a.dimension() + b.dimension());
        prop_assert_eq!(p.ambient_dim(), a.ambient_dim() + b.ambient_dim());
    }

    #[test]
    fn motions_preserve_membership(a in any_complex(), seed in any::<u64>()) {
        let d = a.ambient_dim();
        let v: Vec<f64> = (0..d).map(|k| 0.25 * (k as f64 + 1.0)).collect();
        let t = a.translate(&v).unwrap();
        let r = a.reflect(0).unwrap();
        let s = a.scale(2.0).unwrap();
        let perm: Vec<usize> = (0..d).rev().collect();
        let p = a.axis_permute(&perm).unwrap();
        for x in grid_points(d, 200, seed) {
            let inside = a.contains_point(&x).unwrap();
            let shifted: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + b).collect();
            prop_assert_eq!(t.contains_point(&shifted).unwrap(), inside);
            let mut mirrored = x.clone();
            mirrored[0] = -mirrored[0];
            prop_assert_eq!(r.contains_point(&mirrored).unwrap(), inside);
            let doubled: Vec<f64> = x.iter().map(|c| 2.0 * c).collect();
            prop_assert_eq!(s.contains_point(&doubled).unwrap(), inside);
            let permuted: Vec<f64> = perm.iter().map(|&k| x[k]).collect();
            prop_assert_eq!(p.contains_point(&permuted).unwrap(), inside);
        }
    }
}

#[test]
fn empty_dimension_marker() {
    assert_eq!(BoxComplex64::empty(2).dimension(), Dim::MinusInfinity);
}
