use super::*;
use crate::bernstein::bernstein_value;
use crate::fixtures::{bezier_knots, example13, example15, random_multiplicity_knots};
use crate::rng::Rng;

#[test]
fn divided_difference_base_case_is_the_truncated_power() {
    let v = divided_difference_truncpow(&[2.5f64], 3, &1.0).unwrap();
    assert_eq!(v, 1.5f64.powi(3));
    let below = divided_difference_truncpow(&[0.5f64], 3, &1.0).unwrap();
    assert_eq!(below, 0.0);
}

#[test]
fn divided_difference_coincident_run_uses_the_derivative_branch() {
    // All nodes at c with l = m: f^(m)(c)/m! = 1 when c >= u.
    let nodes = [2.0f64; 4];
    assert_eq!(divided_difference_truncpow(&nodes, 3, &1.5).unwrap(), 1.0);
    assert_eq!(divided_difference_truncpow(&nodes, 3, &2.5).unwrap(), 0.0);
    // At the kink itself the x >= c branch applies.
    assert_eq!(divided_difference_truncpow(&nodes, 3, &2.0).unwrap(), 1.0);
}

#[test]
fn divided_difference_matches_a_hand_expansion() {
    // f(t) = (t - 0.5)_+ over nodes 0, 1, 2:
    // [0,1]f = 0.5, [1,2]f = 1, [0,1,2]f = 0.25.
    let v = divided_difference_truncpow(&[0.0f64, 1.0, 2.0], 1, &0.5).unwrap();
    assert_eq!(v, 0.25);
}

#[test]
fn divided_difference_rejects_decreasing_nodes() {
    let err = divided_difference_truncpow(&[1.0f64, 0.5], 2, &0.0).unwrap_err();
    assert_eq!(err, OracleError::DecreasingNodes { index: 0 });
}

#[test]
fn divdiff_bspline_is_exactly_zero_outside_the_support() {
    let kv = example13();
    assert_eq!(bspline_via_divdiff(&kv, 1, 0.5), 0.0);
    assert_eq!(bspline_via_divdiff(&kv, -3, 3.5), 0.0);
    assert_eq!(bspline_via_recurrence(&kv, 1, 0.5), 0.0);
}

#[test]
fn divdiff_reduces_to_bernstein_for_bezier_knots() {
    for m in 1..=6usize {
        let kv = bezier_knots(m);
        for k in 0..=m {
            let i = k as isize - m as isize;
            for step in 0..=10 {
                let u = step as f64 / 10.0;
                let lhs = bspline_via_divdiff(&kv, i, u);
                let rhs = bernstein_value(m, k as isize, u);
                assert!(
                    (lhs - rhs).abs() <= 1e-12,
                    "m={m} k={k} u={u}: {lhs} vs {rhs}"
                );
            }
        }
    }
}

#[test]
fn the_two_oracles_agree() {
    let kv = example13();
    let d = bspline_via_divdiff(&kv, -2, 1.7);
    let r = bspline_via_recurrence(&kv, -2, 1.7);
    assert!((d - r).abs() <= 1e-10, "{d} vs {r}");

    let mut rng = Rng::new(0xacc0);
    for _ in 0..12 {
        let m = 1 + rng.below(8);
        let kv = random_multiplicity_knots(&mut rng, m, 10);
        let n = kv.n() as isize;
        for &j in &kv.nonempty_spans() {
            let tj = kv.knot(j as isize);
            let len = kv.knot(j as isize + 1) - tj;
            for s in 0..20 {
                let u = tj + (s as f64 + 0.5) / 20.0 * len;
                for i in (j as isize - m as isize).max(-(m as isize))..=(j as isize).min(n - 1) {
                    let d = bspline_via_divdiff(&kv, i, u);
                    let r = bspline_via_recurrence(&kv, i, u);
                    assert!((d - r).abs() <= 1e-9, "m={m} i={i} u={u}: {d} vs {r}");
                }
            }
        }
    }
}

#[test]
fn recurrence_respects_clamped_endpoints_and_unity() {
    let kv = example13();
    assert_eq!(bspline_via_recurrence(&kv, -3, 0.0), 1.0);
    for i in -2..=4 {
        assert_eq!(bspline_via_recurrence(&kv, i, 0.0), 0.0);
    }
    // Left limits at the domain end: only the last function survives.
    assert_eq!(bspline_via_recurrence(&kv, 4, 10.0), 1.0);

    for step in 0..=40 {
        let u = step as f64 * 0.25;
        let mut sum = 0.0;
        for i in -3..=4 {
            let v = bspline_via_recurrence(&kv, i, u);
            assert!(v >= 0.0);
            sum += v;
        }
        assert!((sum - 1.0).abs() <= 1e-13, "u={u} sum={sum}");
    }
}

#[test]
fn derivative_of_a_hat_function_is_plus_minus_inverse_span() {
    let kv = KnotVector::new(1, 3, vec![0.0, 0.0, 1.0, 3.0, 4.0, 4.0]).unwrap();
    // N_{1,0} rises on [t_0, t_1) = [0,1) and falls on [1,3).
    let rising: f64 = bspline_derivative(&kv, 0, 0.5);
    let falling: f64 = bspline_derivative(&kv, 0, 2.0);
    assert!((rising - 1.0).abs() < 1e-14);
    assert!((falling + 0.5).abs() < 1e-14);
}

#[test]
fn derivative_matches_finite_differences_and_sums_to_zero() {
    let kv = example13();
    let h = 1e-5;
    for i in -3..=4 {
        for u in [0.7, 2.2, 5.4, 8.0] {
            let fd = (bspline_via_recurrence(&kv, i, u + h)
                - bspline_via_recurrence(&kv, i, u - h))
                / (2.0 * h);
            let exact = bspline_derivative(&kv, i, u);
            assert!((fd - exact).abs() <= 1e-6, "i={i} u={u}: {fd} vs {exact}");
        }
    }
    for u in [0.7, 2.2, 5.4, 8.0] {
        let sum: f64 = (-3..=4).map(|i| bspline_derivative(&kv, i, u)).sum();
        assert!(sum.abs() <= 1e-12, "u={u} sum={sum}");
    }
}

#[test]
fn active_basis_matches_single_function_recurrence() {
    let mut rng = Rng::new(0xab);
    for _ in 0..10 {
        let m = 1 + rng.below(7);
        let kv = crate::bench::generate_knots(&mut rng, m, 8);
        for _ in 0..20 {
            let (lo, hi) = kv.domain();
            let u = rng.uniform(lo, hi);
            let j = kv.find_span(u).unwrap();
            let vals = active_basis_via_recurrence(&kv, j, u, &mut crate::ops::NoTally);
            for (r, &v) in vals.iter().enumerate() {
                let i = j as isize - m as isize + r as isize;
                let reference = bspline_via_recurrence(&kv, i, u);
                assert!((v - reference).abs() <= 1e-13, "m={m} i={i} u={u}");
            }
        }
    }
}

#[test]
fn de_boor_cox_interpolates_clamped_endpoints_and_constants() {
    let kv = example13();
    let dim = 2;
    let control: Vec<f64> = (0..(kv.n() + kv.degree()) * dim)
        .map(|q| q as f64 * 0.25 - 1.0)
        .collect();
    let curve = BSplineCurve::new(kv.clone(), dim, control).unwrap();
    let start = de_boor_cox_point(&curve, 0.0).unwrap();
    assert_eq!(start, curve.control_point(-3).to_vec());
    let end = de_boor_cox_point(&curve, 10.0).unwrap();
    assert_eq!(end, curve.control_point(4).to_vec());

    let constant = BSplineCurve::new(kv.clone(), 1, vec![0.75; kv.n() + kv.degree()]).unwrap();
    for u in [0.0, 1.5, 3.0, 7.7, 10.0] {
        let p = de_boor_cox_point(&constant, u).unwrap();
        assert!((p[0] - 0.75).abs() <= 1e-15);
    }
}

#[test]
fn de_boor_cox_equals_the_basis_expansion() {
    let mut rng = Rng::new(0xdbc);
    for _ in 0..8 {
        let m = 1 + rng.below(6);
        let kv = crate::bench::generate_knots(&mut rng, m, 7);
        let curves = crate::bench::generate_curves(&mut rng, &kv, 1, 3);
        let curve = &curves[0];
        let (lo, hi) = kv.domain();
        for _ in 0..25 {
            let u = rng.uniform(lo, hi);
            let point = de_boor_cox_point(curve, u).unwrap();
            let mut expansion = [0.0; 3];
            for i in -(m as isize)..kv.n() as isize {
                let w = bspline_via_recurrence(&kv, i, u);
                for c in 0..3 {
                    expansion[c] += w * curve.control_point(i)[c];
                }
            }
            for c in 0..3 {
                let scale = 1.0 + point[c].abs();
                assert!(
                    (point[c] - expansion[c]).abs() <= 1e-12 * scale,
                    "u={u} c={c}"
                );
            }
        }
    }
}

#[test]
fn de_boor_cox_output_weights_are_convex() {
    let mut rng = Rng::new(0x71);
    for _ in 0..6 {
        let m = 1 + rng.below(5);
        let kv = crate::bench::generate_knots(&mut rng, m, 6);
        let (lo, hi) = kv.domain();
        for _ in 0..30 {
            let u = rng.uniform(lo, hi);
            let j = kv.find_span(u).unwrap();
            let weights = active_basis_via_recurrence(&kv, j, u, &mut crate::ops::NoTally);
            let sum: f64 = weights.iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12);
            for &w in &weights {
                assert!((-1e-12..=1.0 + 1e-12).contains(&w));
            }
        }
    }
}

#[test]
fn tensor_de_boor_reproduces_constants() {
    let mut rng = Rng::new(5);
    let kv_u = crate::bench::generate_knots(&mut rng, 3, 5);
    let kv_v = crate::bench::generate_knots(&mut rng, 2, 4);
    let rows = kv_u.n() + kv_u.degree();
    let cols = kv_v.n() + kv_v.degree();
    let surf =
        TensorProductSurface::new(kv_u.clone(), kv_v.clone(), 2, vec![0.3; rows * cols * 2])
            .unwrap();
    for _ in 0..20 {
        let (ulo, uhi) = kv_u.domain();
        let (vlo, vhi) = kv_v.domain();
        let p = tensor_de_boor_cox_point(
            &surf,
            rng.uniform(ulo, uhi),
            rng.uniform(vlo, vhi),
        )
        .unwrap();
        assert!((p[0] - 0.3).abs() <= 1e-14 && (p[1] - 0.3).abs() <= 1e-14);
    }
}

#[test]
fn example15_oracles_agree_on_the_repeated_knot() {
    let kv = example15();
    for i in -3..=4 {
        for u in [2.9, 3.0, 3.1] {
            let d = bspline_via_divdiff(&kv, i, u);
            let r = bspline_via_recurrence(&kv, i, u);
            assert!((d - r).abs() <= 1e-10, "i={i} u={u}: {d} vs {r}");
        }
    }
}

#[test]
fn uniform_reference_rows_have_unit_columns() {
    use num_traits::One;
    for m in 1..=6usize {
        let rows: Vec<Vec<BigRational>> =
            (0..=m).map(|r| uniform_reference_row(m, r)).collect();
        for k in 0..=m {
            let sum: BigRational = rows.iter().map(|row| row[k].clone()).sum();
            assert!(sum.is_one(), "m={m} k={k} sum={sum}");
        }
    }
}
