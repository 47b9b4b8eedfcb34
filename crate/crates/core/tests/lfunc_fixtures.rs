use hhc::lfunc::{conductor37_coeffs, ramanujan_tau, sign_detect, LSeries, RootSign};
use hhc::scalars::bigfloat::BigFloat;
use hhc::scalars::Real;
use num_traits::ToPrimitive;

fn delta<T: Real>(n: usize) -> LSeries<T> {
    let c = ramanujan_tau(n).iter().map(|t| T::from_f64(t.to_f64().unwrap())).collect();
    LSeries::new(1, 12, c).unwrap()
}

fn curve37<T: Real>(n: usize) -> LSeries<T> {
    let c = conductor37_coeffs(n).into_iter().map(T::from_i64).collect();
    LSeries::new(37, 2, c).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn delta_sign_and_direct_sum() {
    let ls = delta::<f64>(6000);
    let det = sign_detect(&ls, 1e-8).unwrap();
    assert_eq!(det.sign, RootSign::Plus, "residual {}", det.residual);
    let ls = ls.with_sign(RootSign::Plus);
    let s = 10.0;
    let afe = ls.lambda_value(&s, &1.0).unwrap();
    let direct = ls.gamma_factor(&s).unwrap() * ls.dirichlet_sum(&s);
    assert!(rel(afe, direct) < 1e-12, "{afe} vs {direct}");
}

#[test]
fn delta_two_cutoffs() {
    let ls = delta::<f64>(200).with_sign(RootSign::Plus);
    for s in [5.2, 6.0, 7.5] {
        let a = ls.lambda_value(&s, &1.0).unwrap();
        let b = ls.lambda_value(&s, &1.3).unwrap();
        assert!(rel(a, b) < 1e-10, "s = {s}: {a} vs {b}");
    }
}

#[test]
fn curve37_odd_sign_and_derivative() {
    let ls = curve37::<f64>(400);
    let det = sign_detect(&ls, 1e-8).unwrap();
    assert_eq!(det.sign, RootSign::Minus);
    let ls = ls.with_sign(RootSign::Minus);
    assert!(ls.l_value(&1.0, &1.0).unwrap().abs() < 1e-10);
    let d1 = ls.l_derivative_central(&1.0).unwrap();
    let d2 = ls.l_derivative_central(&1.3).unwrap();
    assert!(rel(d1, d2) < 1e-8, "{d1} vs {d2}");
    assert!((d1 - 0.305_999_773_834_052).abs() < 1e-9, "{d1}");
}

#[test]
fn curve37_bigfloat() {
    let ls = curve37::<BigFloat>(400).with_sign(RootSign::Minus);
    let d1 = ls.l_derivative_central(&BigFloat::from_f64(1.0)).unwrap().to_f64();
    let d2 = ls.l_derivative_central(&BigFloat::from_f64(1.3)).unwrap().to_f64();
    assert!(rel(d1, d2) < 1e-8, "{d1} vs {d2}");
    assert!((d1 - 0.305_999_773_834_052).abs() < 1e-12, "{d1}");
}

#[test]
fn garbage_has_unknown_sign() {
    let c: Vec<f64> = (1..=300).map(|n| ((n * 7919) % 13) as f64 - 6.0).collect();
    let ls = LSeries::new(5, 2, c).unwrap();
    let det = sign_detect(&ls, 1e-6).unwrap();
    assert_eq!(det.sign, RootSign::Unknown, "residual {}", det.residual);
}
