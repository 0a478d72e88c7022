//! Small complex helpers shared by the evaluators.

use num_complex::Complex64;

/// `e^z - 1` without cancellation for small `|z|`.
pub(crate) fn cexpm1(z: Complex64) -> Complex64 {
    let (a, b) = (z.re, z.im);
    if z.norm() > 0.5 {
        return z.exp() - 1.0;
    }
    let s = (0.5 * b).sin();
    Complex64::new(a.exp_m1() * b.cos() - 2.0 * s * s, a.exp() * b.sin())
}

/// `(e^z - 1)/z`, equal to 1 at `z = 0`.
pub(crate) fn expm1_over_x(z: Complex64) -> Complex64 {
    if z.norm() < 1e-5 {
        return 1.0 + z / 2.0 + z * z / 6.0;
    }
    cexpm1(z) / z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_small_and_large() {
        let z = Complex64::new(1e-12, -2e-12);
        let e = cexpm1(z);
        assert!((e - z).norm() < 1e-23);
        let z = Complex64::new(1.5, 0.3);
        assert!((cexpm1(z) - (z.exp() - 1.0)).norm() < 1e-15);
        assert!((expm1_over_x(Complex64::new(0.0, 0.0)) - 1.0).norm() == 0.0);
        let z = Complex64::new(0.2, 0.1);
        assert!((expm1_over_x(z) - (z.exp() - 1.0) / z).norm() < 1e-15);
    }
}
