//! Self-checks of the test oracles against reference values computed with
//! mpmath at 20 digits.

mod common;

use num_complex::Complex64;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn gamma_oracle_matches_reference() {
    let cases = [
        (Complex64::new(-3.0, 2.0), Complex64::new(-0.00170208480237223, -0.00289571189454483)),
        (Complex64::new(-5.5, -3.0), Complex64::new(2.55093317859349e-6, 2.56699255329031e-6)),
        (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
    ];
    for (z, want) in cases {
        assert!(close(common::gamma(z), want, 1e-13), "Γ({z}) = {}", common::gamma(z));
    }
}

#[test]
fn zeta_oracle_matches_reference() {
    let cases = [
        (Complex64::new(2.0, 0.0), Complex64::new(1.64493406684823, 0.0)),
        (Complex64::new(-3.0, 2.0), Complex64::new(0.0218497264804625, 0.0471744372730894)),
        (Complex64::new(0.5, 20.0), Complex64::new(0.429913860437843, -1.06429144308059)),
    ];
    for (s, want) in cases {
        assert!(close(common::zeta(s), want, 1e-13), "ζ({s}) = {}", common::zeta(s));
    }
}

#[test]
fn hurwitz_oracle_matches_reference() {
    let cases = [
        (Complex64::new(-2.5, 4.1), 0.25, Complex64::new(0.36297401029114101622, -0.037363465122390666532)),
        (Complex64::new(3.1, -5.2), 0.25, Complex64::new(44.396413786870757823, -58.34089957336361267)),
        (Complex64::new(1.5, 0.0), 0.75, Complex64::new(3.297034132776984416, 0.0)),
    ];
    for (s, a, want) in cases {
        let got = common::hurwitz(s, a);
        assert!(close(got, want, 1e-12), "ζ({s}, {a}) = {got}");
    }
}

#[test]
fn zeta_reflection_branch_matches_reference() {
    let s = Complex64::new(-2.5, 4.1);
    let want = Complex64::new(0.064996647486468960788, 0.31467346206444445781);
    assert!(close(common::zeta(s), want, 1e-13), "ζ({s}) = {}", common::zeta(s));
}

#[test]
fn theta_power_oracle_is_consistent() {
    // r₂(m) for m = 1..10 and r₄(m) = 8σ(m) - 32σ(m/4)
    let r2 = common::theta_power_coeffs(2.0, 10);
    assert_eq!(r2[1..].to_vec(), vec![4.0, 4.0, 0.0, 4.0, 8.0, 0.0, 0.0, 4.0, 4.0, 8.0]);
    let r4 = common::theta_power_coeffs(4.0, 8);
    assert_eq!(r4[1..].to_vec(), vec![8.0, 24.0, 32.0, 24.0, 48.0, 96.0, 64.0, 24.0]);
    // θ^{1/2} squared is θ
    let h = common::theta_power_coeffs(0.5, 40);
    let one = common::theta_power_coeffs(1.0, 40);
    for m in 0..=40 {
        let sq: f64 = (0..=m).map(|k| h[k] * h[m - k]).sum();
        assert!((sq - one[m]).abs() < 1e-12, "m = {m}");
    }
}

#[test]
fn lattice_count_matches_sums_of_two_squares() {
    let r2 = common::theta_power_coeffs(2.0, 30);
    for n in 1..=30 {
        assert_eq!(common::lattice_count((1, 0, 1), n) as f64, r2[n as usize]);
    }
}

#[test]
fn oracle_zero_ordinates() {
    let z = common::zeta_zero_ordinates(30.0);
    assert_eq!(z.len(), 3);
    assert!((z[0] - 14.134725141734693).abs() < 1e-8);
    let l = common::l_chi4_zero_ordinates(12.0);
    assert!((l[0] - 6.020948904697596).abs() < 1e-8, "{l:?}");
}
