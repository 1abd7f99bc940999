//! First Dirichlet eigenpair of the discrete Laplacian via inverse power
//! iteration (shift 0, deterministic all-ones start).

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::interval::Interval;
use crate::linalg;
use crate::math;

/// First eigenpair `−Δ_h φ = λ φ` with zero Dirichlet data. `eigenfunction`
/// is sup-normalized (`max = 1`); `l2_normalized` is the same vector scaled
/// to unit discrete L² norm.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub eigenvalue: f64,
    pub eigenfunction: Field,
    pub l2_normalized: Field,
    /// `‖−Δ_h φ − λφ‖_∞ / ‖φ‖_∞` at convergence.
    pub residual: f64,
}

struct Stencil {
    nodes: Vec<usize>,
    neighbors: Vec<[Option<usize>; 4]>,
    count: usize,
}

fn build_stencil(domain: &Domain) -> Stencil {
    let nodes: Vec<usize> = domain.interior_nodes().collect();
    let mut index = vec![None; domain.len()];
    for (k, &n) in nodes.iter().enumerate() {
        index[n] = Some(k);
    }
    let count = if domain.is_1d() { 2 } else { 4 };
    let neighbors = nodes
        .iter()
        .map(|&n| {
            let (ix, iy) = domain.lattice_coords(n);
            let mut nb = [None; 4];
            let shifts: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
            for (slot, (dx, dy)) in shifts.iter().enumerate().take(count) {
                let jx = ix as i64 + dx;
                let jy = iy as i64 + dy;
                if jx < 0 || jy < 0 {
                    continue;
                }
                nb[slot] = domain
                    .node_at(jx as usize, jy as usize)
                    .and_then(|j| index[j]);
            }
            nb
        })
        .collect();
    Stencil {
        nodes,
        neighbors,
        count,
    }
}

/// Compute the first Dirichlet eigenpair to the given residual tolerance.
pub fn first_eigenpair(domain: &Arc<Domain>, tolerance: f64) -> Result<EigenPair> {
    let st = build_stencil(domain);
    let n = st.nodes.len();
    if n == 0 {
        return Err(Error::InvalidDomain("domain has no interior nodes".into()));
    }
    let h2 = domain.h() * domain.h();
    let apply = |v: &[f64], out: &mut [f64]| {
        for (i, nb) in st.neighbors.iter().enumerate() {
            let mut acc = st.count as f64 * v[i];
            for slot in nb.iter().flatten() {
                acc -= v[*slot];
            }
            out[i] = acc / h2;
        }
    };

    let mut phi = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut work = vec![0.0; n];
    let mut scratch = Vec::new();
    let mut eigenvalue = 0.0;
    let mut residual = f64::INFINITY;
    const MAX_ITER: usize = 500;

    for _ in 0..MAX_ITER {
        // next = (−Δ_h)^{-1} phi
        if domain.is_1d() {
            next.copy_from_slice(&phi);
            for v in next.iter_mut() {
                *v *= h2;
            }
            linalg::solve_tridiagonal_const(2.0, -1.0, &mut next, &mut scratch);
        } else {
            // warm-start from the previous iterate
            next.copy_from_slice(&phi);
            let rhs: Vec<f64> = phi.clone();
            linalg::conjugate_gradient(apply, &rhs, &mut next, 1e-10, 20 * n + 200)?;
        }
        let sup = next.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        for v in next.iter_mut() {
            *v /= sup;
        }
        core::mem::swap(&mut phi, &mut next);

        // Rayleigh quotient and residual
        apply(&phi, &mut work);
        let num: f64 = phi.iter().zip(&work).map(|(a, b)| a * b).sum();
        let den: f64 = phi.iter().map(|a| a * a).sum();
        eigenvalue = num / den;
        let phi_sup = phi.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        residual = phi
            .iter()
            .zip(&work)
            .map(|(p, w)| (w - eigenvalue * p).abs())
            .fold(0.0_f64, f64::max)
            / phi_sup;
        if residual <= tolerance {
            break;
        }
    }
    if residual > tolerance {
        return Err(Error::NoConvergence {
            what: "inverse power iteration",
            iterations: MAX_ITER,
            residual,
        });
    }

    // the discrete ground state has one sign; orient it positive
    if phi.iter().sum::<f64>() < 0.0 {
        for v in phi.iter_mut() {
            *v = -*v;
        }
    }
    let sup = phi.iter().fold(0.0_f64, |a, &b| a.max(b));
    let dim_factor = if domain.is_1d() { domain.h() } else { h2 };
    let l2 = math::sqrt(phi.iter().map(|a| a * a).sum::<f64>() * dim_factor);

    let mut sup_values = vec![0.0; domain.len()];
    let mut l2_values = vec![0.0; domain.len()];
    for (k, &node) in st.nodes.iter().enumerate() {
        sup_values[node] = phi[k] / sup;
        l2_values[node] = phi[k] / l2;
    }
    let any = Interval::open(f64::NEG_INFINITY, f64::INFINITY);
    Ok(EigenPair {
        eigenvalue,
        eigenfunction: Field::from_values(domain.clone(), sup_values, any)?,
        l2_normalized: Field::from_values(domain.clone(), l2_values, any)?,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn unit_interval_ground_state() {
        let d = Arc::new(Domain::interval(0.0, 1.0, 1e-3).unwrap());
        let pair = first_eigenpair(&d, 1e-8).unwrap();
        let rel = (pair.eigenvalue - PI * PI).abs() / (PI * PI);
        assert!(rel < 5e-3, "lambda_1 = {} off by {rel}", pair.eigenvalue);
        for node in d.interior_nodes() {
            assert!(pair.eigenfunction.value(node) > 0.0);
        }
        // shape matches sin(pi x) after sup normalization
        let mid = d.node_near(0.25, 0.0).unwrap();
        assert!((pair.eigenfunction.value(mid) - math::sin(PI * 0.25)).abs() < 1e-4);
    }

    #[test]
    fn unit_square_ground_state() {
        let square = alloc::vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let d = Arc::new(Domain::polygon(square, 1.0 / 40.0).unwrap());
        let pair = first_eigenpair(&d, 1e-8).unwrap();
        let target = 2.0 * PI * PI;
        let rel = (pair.eigenvalue - target).abs() / target;
        assert!(rel < 5e-3, "lambda_1 = {} off by {rel}", pair.eigenvalue);
        for node in d.interior_nodes() {
            assert!(pair.eigenfunction.value(node) > 0.0);
        }
    }

    #[test]
    fn l2_copy_has_unit_norm() {
        let d = Arc::new(Domain::interval(0.0, 1.0, 1e-2).unwrap());
        let pair = first_eigenpair(&d, 1e-8).unwrap();
        let norm2: f64 = pair
            .l2_normalized
            .values()
            .iter()
            .map(|v| v * v)
            .sum::<f64>()
            * d.h();
        assert!((norm2 - 1.0).abs() < 1e-12);
    }
}
