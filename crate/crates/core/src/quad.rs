//! Adaptive Simpson quadrature with an absolute-error target.

use crate::error::{Error, Result};

fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    eps: f64,
    depth: usize,
    worst: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, fa, m, fm, flm);
    let right = simpson(m, fm, b, fb, frm);
    let err = left + right - whole;
    if err.abs() <= 15.0 * eps || depth == 0 {
        if depth == 0 {
            *worst = worst.max(err.abs() / 15.0);
        }
        return left + right + err / 15.0;
    }
    recurse(f, a, fa, m, fm, flm, left, 0.5 * eps, depth - 1, worst)
        + recurse(f, m, fm, b, fb, frm, right, 0.5 * eps, depth - 1, worst)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, b, fb, fm);
    let mut worst = 0.0_f64;
    let value = recurse(&f, a, fa, b, fb, fm, whole, tol, 48, &mut worst);
    if worst > tol {
        return Err(Error::QuadratureNonConvergence { achieved: worst });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 0.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_mass() {
        // ∫_{-6}^{6} e^{-x²} dx = √π within the truncation tail
        let v = integrate(|x| math::exp(-x * x), -6.0, 6.0, 1e-12).unwrap();
        assert!((v - math::sqrt(core::f64::consts::PI)).abs() < 1e-10);
    }
}
