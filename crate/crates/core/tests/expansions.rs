use proptest::prelude::*;
use wbasis::expansion::{
    derivative_coefficients, error_report_with, expand, expand_with, Basis, DerivativeMode, ErrorReportOptions,
    PartialSum, PhiRule, TestFunction,
};
use wbasis::wfunctions::eval_wfunction_sequence;
use wbasis::WeightFamily;

fn us(a: f64) -> WeightFamily {
    WeightFamily::ultraspherical(a).unwrap()
}

fn lag(a: f64) -> WeightFamily {
    WeightFamily::laguerre(a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sqrt_weight_times_polynomial_round_trips(
        laguerre in any::<bool>(),
        alpha in 0.5f64..4.0,
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..12),
        xs in prop::collection::vec(0.01f64..0.99, 30),
    ) {
        let fam = if laguerre { lag(alpha) } else { us(alpha) };
        let q = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let f = |x: f64| fam.eval(x).unwrap().sqrt() * q(x);
        let n = coeffs.len() - 1;
        let c = expand_with(&f, Basis::Phi, fam, n, PhiRule::Weight).unwrap();
        let s = PartialSum::new(c.clone()).unwrap();
        for &t in &xs {
            let x = if laguerre { 20.0 * t } else { 2.0 * t - 1.0 };
            let exact = f(x);
            let phi = eval_wfunction_sequence(fam, n, x).unwrap();
            let scale: f64 = c.values().iter().zip(&phi).map(|(a, b)| (a * b).abs()).sum();
            prop_assert!((s.eval(x, 0).unwrap() - exact).abs() <= 1e-10 * scale.max(exact.abs()),
                "x = {x}: {} vs {exact}", s.eval(x, 0).unwrap());
        }
    }
}

#[test]
fn derivative_through_matrix_matches_partial_sum() {
    // The Φ-coefficients of F′_N, projected on φ_0..φ_N, are (−D_N f̂).
    let n = 40;
    let c = expand(&TestFunction::Us1, Basis::Phi, us(2.0), n).unwrap();
    let direct = PartialSum::new(c.clone()).unwrap();
    let projected = expand(&|x: f64| direct.eval(x, 1).unwrap(), Basis::Phi, us(2.0), n).unwrap();
    let via_d = derivative_coefficients(&c, 1, 0).unwrap();
    for (a, b) in projected.values().iter().zip(via_d.values()) {
        assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
    }
}

#[test]
fn pointwise_derivative_through_matrix_converges_slowly() {
    let c = expand(&TestFunction::Us1, Basis::Phi, us(2.0), 40).unwrap();
    let direct = PartialSum::new(c.clone()).unwrap();
    let err = |extra: usize| {
        let via = PartialSum::new(derivative_coefficients(&c, 1, extra).unwrap()).unwrap();
        [-0.5, 0.0, 0.3].iter().map(|&x| (direct.eval(x, 1).unwrap() - via.eval(x, 0).unwrap()).abs()).fold(0.0, f64::max)
    };
    let (coarse, fine) = (err(100), err(2000));
    println!("pointwise gap: 100 extra rows {coarse:.2e}, 2000 extra rows {fine:.2e}");
    assert!(fine < coarse);
}

#[test]
fn derivative_modes_agree_for_smooth_case() {
    // US2′ vanishes at ±1, so expanding it directly converges as fast as
    // differentiating the partial sum.
    let grid: Vec<f64> = (1..20).map(|i| -1.0 + 0.1 * i as f64).collect();
    let mut results = Vec::new();
    for mode in [DerivativeMode::PartialSum, DerivativeMode::ExpandDerivative] {
        let opts = ErrorReportOptions { mode, ..Default::default() };
        let rows = error_report_with(TestFunction::Us2, us(2.0), Basis::Phi, &[30], &grid, 1, &opts).unwrap();
        results.push(rows[0].sup_err);
    }
    assert!(results.iter().all(|&e| e < 1e-9), "{results:?}");
}

#[test]
fn us1_error_decreases_to_the_floor() {
    let grid: Vec<f64> = (0..=200).map(|i| -1.0 + 0.01 * i as f64).collect();
    let ns = [4, 8, 12, 16, 20, 24];
    let rows = error_report_with(TestFunction::Us1, us(2.0), Basis::Phi, &ns, &grid, 0, &Default::default()).unwrap();
    for pair in rows.windows(2) {
        let floor = 1e-14;
        assert!(pair[1].sup_err <= pair[0].sup_err.max(floor), "{pair:?}");
    }
}

#[test]
fn p_basis_error_grows_along_the_half_line() {
    let at = |x: f64| {
        error_report_with(TestFunction::Lag1, lag(2.0), Basis::P, &[40], &[x], 0, &Default::default()).unwrap()[0].sup_err
    };
    assert!(at(30.0) >= 1e3 * at(5.0));
}

#[test]
fn lag2_second_derivative_blows_up_at_the_origin() {
    let rows = error_report_with(TestFunction::Lag2, lag(1.0), Basis::Phi, &[60], &[0.0], 2, &Default::default()).unwrap();
    assert!(rows[0].sup_err >= 1e6);
}

#[test]
fn phi_rules_agree_on_smooth_quotient() {
    // For α = 2, f/√w is analytic, so both rules converge to the same values.
    let a = expand_with(&TestFunction::Us1, Basis::Phi, us(2.0), 20, PhiRule::SqrtWeight).unwrap();
    let b = expand_with(&TestFunction::Us1, Basis::Phi, us(2.0), 20, PhiRule::Weight).unwrap();
    for (x, y) in a.values().iter().zip(b.values()) {
        assert!((x - y).abs() < 1e-12);
    }
}
