use frieze_core::deformation::{c_sequence, DeformationInput};
use frieze_core::frieze::{build_from_first_row, validate};
use frieze_core::scalar::{Rational, Scalar};
use frieze_core::sign::{cross_ratio_1, cross_ratio_2, sign_changes, CyclicSeq, ProjPoint};
use frieze_core::triangulation::{random_triangulation, triangulation_to_frieze};
use proptest::prelude::*;

fn brute_changes(v: &[i64]) -> usize {
    let nz: Vec<i64> = v.iter().copied().filter(|&x| x != 0).collect();
    (0..nz.len()).filter(|&i| (nz[i] > 0) != (nz[(i + 1) % nz.len()] > 0)).count()
}

fn exact(v: &[i64]) -> CyclicSeq<Rational> {
    CyclicSeq::new(v.iter().map(|&x| Rational::from_i64(x)).collect())
}

proptest! {
    #[test]
    fn sign_changes_matches_brute_force(v in prop::collection::vec(-3i64..=3, 1..20)) {
        prop_assert_eq!(sign_changes(&exact(&v)), brute_changes(&v));
    }

    #[test]
    fn sign_changes_is_even_and_invariant(v in prop::collection::vec(-5i64..=5, 1..20), shift in 0usize..20) {
        let base = sign_changes(&exact(&v));
        prop_assert_eq!(base % 2, 0);
        let mut rotated = v.clone();
        rotated.rotate_left(shift % v.len());
        prop_assert_eq!(sign_changes(&exact(&rotated)), base);
        let negated: Vec<i64> = v.iter().map(|x| -x).collect();
        prop_assert_eq!(sign_changes(&exact(&negated)), base);
    }

    #[test]
    fn cross_ratios_differ_by_one(
        pts in prop::collection::vec((-40i64..=40, 1i64..=12), 4),
        inf in prop::option::of(0usize..4),
    ) {
        let mut p: Vec<ProjPoint<Rational>> = pts
            .iter()
            .map(|&(a, b)| ProjPoint::Finite(Rational::new(a.into(), b.into())))
            .collect();
        if let Some(i) = inf {
            p[i] = ProjPoint::Infinity;
        }
        if let (Ok(c1), Ok(c2)) = (cross_ratio_1(&p[0], &p[1], &p[2], &p[3]), cross_ratio_2(&p[0], &p[1], &p[2], &p[3])) {
            prop_assert_eq!(c2 - c1, Rational::from_i64(1));
        }
    }

    #[test]
    fn cc_friezes_have_glide_symmetry(n in 4usize..14, seed in any::<u64>()) {
        let f = triangulation_to_frieze(&random_triangulation(n, seed).unwrap()).unwrap();
        prop_assert!(validate(&f).passed);
        for i in 0..n as isize {
            for d in 0..=n {
                prop_assert_eq!(f.entry(i, d).unwrap(), f.entry(i + d as isize, n - d).unwrap());
            }
        }
        // Rebuilding from any rotation of the first row gives the rotated frieze.
        let mut a = f.first_row();
        a.rotate_left(1);
        let g = build_from_first_row(&a).unwrap();
        prop_assert_eq!(g.entry(0, 3).unwrap(), f.entry(1, 3).unwrap());
    }

    #[test]
    fn c_sequence_is_linear(
        q1 in prop::collection::vec(-5.0f64..5.0, 9),
        q2 in prop::collection::vec(-5.0f64..5.0, 9),
        k in 2usize..=7,
    ) {
        let c = |q: Vec<f64>| c_sequence(&DeformationInput::new(q, k).unwrap()).unwrap().c;
        let sum: Vec<f64> = q1.iter().zip(&q2).map(|(a, b)| a + b).collect();
        let (c1, c2, c12) = (c(q1), c(q2), c(sum));
        let scale = c1.iter().chain(&c2).fold(1.0f64, |m, v| m.max(v.abs()));
        for i in 0..9 {
            prop_assert!((c12[i] - c1[i] - c2[i]).abs() <= 1e-12 * scale);
        }
    }
}
