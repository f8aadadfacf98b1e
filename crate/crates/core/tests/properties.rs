use muntz::bounds::{jlambda_upper, lemma31_bound, r_epsilon};
use muntz::linalg::{symmetric_eigen, SquareMatrix};
use muntz::lpnorm::{lp_norm, pairing_integral, MuntzPolynomial};
use muntz::sequences::generate_geometric;
use muntz::verify::domination_trials;
use muntz::{ExponentSequence, Measure};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jlambda_bound_decreases_in_r(p in 1.2f64..6.0, r in 1.5f64..50.0, step in 0.1f64..10.0) {
        let a = jlambda_upper(p, r).unwrap().upper_bound;
        let b = jlambda_upper(p, r + step).unwrap().upper_bound;
        prop_assert!(b <= a * (1.0 + 1e-12));
    }

    #[test]
    fn r_epsilon_decreases_in_eps(p in 1.1f64..6.0, eps in 0.01f64..0.9, step in 0.001f64..0.09) {
        prop_assert!(r_epsilon(p, eps + step).unwrap() <= r_epsilon(p, eps).unwrap());
    }

    #[test]
    fn lp_norm_is_homogeneous(
        c in prop::collection::vec(-1.0f64..1.0, 6),
        s in -20.0f64..20.0,
        p in 1.0f64..4.0,
    ) {
        prop_assume!(c.iter().any(|x| x.abs() > 1e-3) && s.abs() > 1e-3);
        let seq = generate_geometric(1.0, 2.0, 6).unwrap();
        let f = MuntzPolynomial::new(&seq, c).unwrap();
        let mu = Measure::lebesgue();
        let a = lp_norm(&f, &mu, p).unwrap();
        let b = lp_norm(&f.scaled(s), &mu, p).unwrap();
        prop_assert!((b - s.abs() * a).abs() <= 1e-12 * b.max(1e-300) * 10.0, "{} vs {}", b, s.abs() * a);
    }

    #[test]
    fn lp_norm_monotone_under_restriction(
        c in prop::collection::vec(-1.0f64..1.0, 5),
        a in 0.0f64..0.9,
        p in 1.0f64..3.0,
    ) {
        let seq = generate_geometric(1.0, 3.0, 5).unwrap();
        let f = MuntzPolynomial::new(&seq, c).unwrap();
        let full = Measure::lebesgue();
        let part = full.restrict(a, 1.0).unwrap();
        prop_assert!(lp_norm(&f, &part, p).unwrap() <= lp_norm(&f, &full, p).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn pairing_above_ratio(base in 0.1f64..10.0, ratio in 1.05f64..30.0, p in 1.0f64..5.0, n in 0usize..8) {
        let seq = generate_geometric(base, ratio, 10).unwrap();
        let x = pairing_integral(&seq, p, n).unwrap();
        prop_assert!(x.value >= x.lower_bound * (1.0 - 1e-12));
        prop_assert!(x.value <= 1.0 + 1e-12);
    }

    #[test]
    fn double_sum_below_bound(p in 1.2f64..6.0, alpha in 0.2f64..3.0, r in 1.5f64..20.0, len in 2usize..40) {
        let q: Vec<f64> = std::iter::successors(Some(1.0), |x| Some(x * r)).take(len).collect();
        let (lhs, rhs) = lemma31_bound(p, alpha, &q, r).unwrap();
        prop_assert!(lhs <= rhs, "{} > {}", lhs, rhs);
    }
}

#[test]
fn domination_holds_on_many_trials() {
    let seq = generate_geometric(1.0, 2.0, 10).unwrap();
    let mu = Measure::atoms_at(&[(0.5, 0.3), (0.9, 0.2), (0.99, 0.05), (0.999, 0.01)]).unwrap();
    for p in [1.0, 2.0, 3.0] {
        let (ok, worst) = domination_trials(&seq, &mu, p, 120, 7, 1e-14).unwrap();
        assert!(ok, "p = {p}: worst gap {worst}");
    }
    let (ok, worst) = domination_trials(
        &seq,
        &Measure::lebesgue().restrict(0.3, 1.0).unwrap(),
        2.0,
        100,
        1,
        1e-14,
    )
    .unwrap();
    assert!(ok, "restricted Lebesgue: worst gap {worst}");
}

#[test]
fn jacobi_eigenvalues_match_nalgebra() {
    let seq = ExponentSequence::new((1..=8).map(f64::from).collect()).unwrap();
    let l = seq.as_slice();
    // Gram matrix of t^λ on [0, 1]
    let a = SquareMatrix::from_fn(8, |i, j| 1.0 / (l[i] + l[j] + 1.0));
    let ours = symmetric_eigen(&a, 100).unwrap();
    let m = nalgebra::DMatrix::from_fn(8, 8, |i, j| 1.0 / (l[i] + l[j] + 1.0));
    let mut sv: Vec<f64> = m
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    let mut ev = ours.values.clone();
    ev.sort_by(|x, y| y.total_cmp(x));
    for (x, y) in ev.iter().zip(&sv) {
        approx::assert_abs_diff_eq!(*x, *y, epsilon = 1e-12 * sv[0]);
    }
}
