//! Direct tridiagonal solves and conjugate gradients for the masked 2D
//! Laplacian systems of the heat solver and eigen solver.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Solve a constant-coefficient tridiagonal system `(d, off)` in place:
/// diagonal `d`, sub/super-diagonal `off` (Thomas algorithm). The matrix must
/// be diagonally dominant, which the Crank–Nicolson systems are.
pub fn solve_tridiagonal_const(d: f64, off: f64, rhs: &mut [f64], scratch: &mut Vec<f64>) {
    let n = rhs.len();
    scratch.clear();
    scratch.resize(n, 0.0);
    if n == 0 {
        return;
    }
    // forward sweep
    scratch[0] = off / d;
    rhs[0] /= d;
    for i in 1..n {
        let denom = d - off * scratch[i - 1];
        scratch[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    // back substitution
    for i in (0..n.saturating_sub(1)).rev() {
        rhs[i] -= scratch[i] * rhs[i + 1];
    }
}

/// Conjugate gradients for a symmetric positive definite operator given as a
/// matrix-free `apply`. Converges on the relative residual 2-norm.
pub fn conjugate_gradient(
    apply: impl Fn(&[f64], &mut [f64]),
    b: &[f64],
    x: &mut [f64],
    tol: f64,
    max_iter: usize,
) -> Result<()> {
    let n = b.len();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let b_norm = dot(b, b).max(f64::MIN_POSITIVE);

    let mut r = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut ap = vec![0.0; n];

    apply(x, &mut ap);
    for i in 0..n {
        r[i] = b[i] - ap[i];
        p[i] = r[i];
    }
    let mut rr = dot(&r, &r);
    for _ in 0..max_iter {
        if rr <= tol * tol * b_norm {
            return Ok(());
        }
        apply(&p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        rr = rr_next;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    if rr <= tol * tol * b_norm {
        Ok(())
    } else {
        Err(Error::NoConvergence {
            what: "conjugate gradients",
            iterations: max_iter,
            residual: math::sqrt(rr / b_norm),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_matches_dense() {
        // solve (2, -1) tridiagonal against a known solution
        let n = 8;
        let x_true: Vec<f64> = (0..n).map(|i| (i as f64 + 1.0) * 0.3).collect();
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            rhs[i] = 2.0 * x_true[i];
            if i > 0 {
                rhs[i] -= x_true[i - 1];
            }
            if i + 1 < n {
                rhs[i] -= x_true[i + 1];
            }
        }
        let mut scratch = Vec::new();
        solve_tridiagonal_const(2.0, -1.0, &mut rhs, &mut scratch);
        for i in 0..n {
            assert!((rhs[i] - x_true[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn cg_solves_laplacian_like_system() {
        let n = 50;
        let apply = |v: &[f64], out: &mut [f64]| {
            for i in 0..n {
                let mut acc = 2.0 * v[i];
                if i > 0 {
                    acc -= v[i - 1];
                }
                if i + 1 < n {
                    acc -= v[i + 1];
                }
                out[i] = acc + 0.1 * v[i];
            }
        };
        let x_true: Vec<f64> = (0..n).map(|i| ((i * 7) % 11) as f64 / 11.0).collect();
        let mut b = vec![0.0; n];
        apply(&x_true, &mut b);
        let mut x = vec![0.0; n];
        conjugate_gradient(apply, &b, &mut x, 1e-12, 1000).unwrap();
        for i in 0..n {
            assert!((x[i] - x_true[i]).abs() < 1e-9);
        }
    }
}
