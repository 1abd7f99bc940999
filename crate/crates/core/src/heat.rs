//! Crank–Nicolson evolution of the Dirichlet heat equation on gridded 1D/2D
//! domains, and the concavity-preservation probe built on top of it.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::concavity::{check_f_concave_with_floor, ConcavityReport};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::interval::Interval;
use crate::linalg;
use crate::math;
use crate::transform::Transform;

pub const SCHEME: &str = "crank-nicolson";

#[derive(Clone, Copy, Debug)]
pub struct HeatDiagnostics {
    /// Discrete integral `h^dim · Σ u`.
    pub mass: f64,
    pub max_value: f64,
    pub dt: f64,
    pub h: f64,
    pub scheme: &'static str,
}

#[derive(Clone, Debug)]
pub struct HeatState {
    pub field: Field,
    pub time: f64,
    pub diagnostics: HeatDiagnostics,
}

/// Interior-node system for the masked Laplacian: unknowns are the interior
/// nodes; boundary and exterior values are identically zero.
struct InteriorSystem {
    /// interior index -> node index
    nodes: Vec<usize>,
    /// interior neighbor indices (up to 4), per interior node
    neighbors: Vec<[Option<usize>; 4]>,
    /// 2 in 1D, 4 in 2D
    stencil: usize,
}

impl InteriorSystem {
    fn build(domain: &Domain) -> InteriorSystem {
        let nodes: Vec<usize> = domain.interior_nodes().collect();
        let mut int_index = vec![None; domain.len()];
        for (k, &n) in nodes.iter().enumerate() {
            int_index[n] = Some(k);
        }
        let stencil = if domain.is_1d() { 2 } else { 4 };
        let neighbors = nodes
            .iter()
            .map(|&n| {
                let (ix, iy) = domain.lattice_coords(n);
                let mut nb = [None; 4];
                let shifts: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
                for (slot, (dx, dy)) in shifts.iter().enumerate().take(stencil) {
                    let jx = ix as i64 + dx;
                    let jy = iy as i64 + dy;
                    if jx < 0 || jy < 0 {
                        continue;
                    }
                    nb[slot] = domain
                        .node_at(jx as usize, jy as usize)
                        .and_then(|j| int_index[j]);
                }
                nb
            })
            .collect();
        InteriorSystem {
            nodes,
            neighbors,
            stencil,
        }
    }

    /// `out = (Δ_h v) · h²` (negated Laplacian stencil: `k·v_i − Σ v_nb`).
    fn apply_minus_laplacian_h2(&self, v: &[f64], out: &mut [f64]) {
        for (i, nb) in self.neighbors.iter().enumerate() {
            let mut acc = self.stencil as f64 * v[i];
            for slot in nb.iter().flatten() {
                acc -= v[*slot];
            }
            out[i] = acc;
        }
    }
}

fn resolve_steps(t_targets: &[f64], dt: f64) -> Result<Vec<usize>> {
    if !(dt > 0.0) {
        return Err(Error::BadTimeTargets(alloc::format!("dt must be > 0, got {dt}")));
    }
    let mut prev = 0.0;
    let mut steps = Vec::with_capacity(t_targets.len());
    for &t in t_targets {
        if t <= prev {
            return Err(Error::BadTimeTargets(alloc::format!(
                "targets must be strictly increasing and positive, got {t} after {prev}"
            )));
        }
        let k = math::round(t / dt);
        if (k * dt - t).abs() > 1e-6 * t {
            return Err(Error::BadTimeTargets(alloc::format!(
                "target {t} is not a multiple of dt = {dt}"
            )));
        }
        steps.push(k as usize);
        prev = t;
    }
    // let step-function wiggles from rough initial data decay before sampling
    if steps[0] < 10 {
        return Err(Error::BadTimeTargets(alloc::format!(
            "first target {} must be at least 10·dt = {}",
            t_targets[0],
            10.0 * dt
        )));
    }
    Ok(steps)
}

/// Crank–Nicolson evolution with zero Dirichlet data, saving a state at each
/// target time. Targets must be increasing multiples of `dt`, the first at
/// least `10·dt`.
pub fn fd_evolve(
    domain: &Arc<Domain>,
    initial: &Field,
    t_targets: &[f64],
    dt: f64,
) -> Result<Vec<HeatState>> {
    if t_targets.is_empty() {
        return Err(Error::BadTimeTargets("no target times given".into()));
    }
    let steps = resolve_steps(t_targets, dt)?;
    let h = domain.h();
    let sys = InteriorSystem::build(domain);
    let n = sys.nodes.len();
    let r = dt / (2.0 * h * h);

    let mut u: Vec<f64> = sys.nodes.iter().map(|&i| initial.value(i)).collect();
    let mut rhs = vec![0.0; n];
    let mut lap = vec![0.0; n];
    let mut scratch = Vec::new();

    let dim_factor = if domain.is_1d() { h } else { h * h };
    let mut states = Vec::with_capacity(t_targets.len());
    let mut step = 0usize;
    for (target_idx, &target_step) in steps.iter().enumerate() {
        while step < target_step {
            // (I + r·A) u_next = (I − r·A) u, with A the −Δ·h² stencil
            sys.apply_minus_laplacian_h2(&u, &mut lap);
            for i in 0..n {
                rhs[i] = u[i] - r * lap[i];
            }
            if domain.is_1d() {
                // interior nodes are contiguous: constant tridiagonal solve
                linalg::solve_tridiagonal_const(1.0 + 2.0 * r, -r, &mut rhs, &mut scratch);
                u.copy_from_slice(&rhs);
            } else {
                linalg::conjugate_gradient(
                    |v, out| {
                        sys.apply_minus_laplacian_h2(v, out);
                        for i in 0..v.len() {
                            out[i] = v[i] + r * out[i];
                        }
                    },
                    &rhs,
                    &mut u,
                    1e-12,
                    10 * n + 100,
                )?;
            }
            step += 1;
        }
        // scatter interior values back onto the full node set
        let mut full = vec![0.0; domain.len()];
        for (k, &node) in sys.nodes.iter().enumerate() {
            full[node] = u[k];
        }
        let mass = full.iter().sum::<f64>() * dim_factor;
        let max_value = full.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let field = Field::from_values(
            domain.clone(),
            full,
            Interval::open(f64::NEG_INFINITY, f64::INFINITY),
        )?;
        states.push(HeatState {
            field,
            time: t_targets[target_idx],
            diagnostics: HeatDiagnostics {
                mass,
                max_value,
                dt,
                h,
                scheme: SCHEME,
            },
        });
    }
    Ok(states)
}

/// Evolve and check F-concavity at each saved time, skipping triples whose
/// values fall below `value_floor` (where the `F(0⁺) = −∞` singularity
/// amplifies solver noise).
pub fn preservation_probe(
    f: &Transform,
    domain: &Arc<Domain>,
    initial: &Field,
    t_targets: &[f64],
    dt: f64,
    tolerance: f64,
    value_floor: f64,
) -> Result<Vec<(f64, ConcavityReport)>> {
    let states = fd_evolve(domain, initial, t_targets, dt)?;
    states
        .into_iter()
        .map(|s| {
            let report = check_f_concave_with_floor(f, &s.field, tolerance, value_floor)?;
            Ok((s.time, report))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn unit_interval(h: f64) -> Arc<Domain> {
        Arc::new(Domain::interval(0.0, 1.0, h).unwrap())
    }

    fn any_range() -> Interval {
        Interval::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    fn sine_error(h: f64, dt: f64, t: f64) -> f64 {
        let d = unit_interval(h);
        let initial = Field::from_fn(d.clone(), any_range(), |x, _| math::sin(PI * x)).unwrap();
        let states = fd_evolve(&d, &initial, &[t], dt).unwrap();
        let decay = math::exp(-PI * PI * t);
        (0..d.len())
            .map(|i| {
                let (x, _) = d.coords(i);
                (states[0].field.value(i) - decay * math::sin(PI * x)).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn separable_solution_reproduced() {
        assert!(sine_error(1.0 / 200.0, 1e-4, 0.01) < 1e-3);
    }

    #[test]
    fn second_order_convergence() {
        let coarse = sine_error(1.0 / 100.0, 2e-4, 0.01);
        let fine = sine_error(1.0 / 200.0, 1e-4, 0.01);
        assert!(
            coarse / fine >= 3.5,
            "convergence factor {} below 3.5",
            coarse / fine
        );
    }

    #[test]
    fn mass_decays_and_max_principle_holds() {
        let d = unit_interval(1.0 / 100.0);
        let chi = Field::from_fn(d.clone(), any_range(), |x, _| {
            f64::from(u8::from((0.4..=0.6).contains(&x)))
        })
        .unwrap();
        let states = fd_evolve(&d, &chi, &[0.01, 0.1], 1e-4).unwrap();
        let mass0 = chi.values().iter().sum::<f64>() * d.h();
        assert!(states[0].diagnostics.mass < mass0);
        assert!(states[1].diagnostics.mass < states[0].diagnostics.mass);
        for s in &states {
            assert!(s.diagnostics.max_value <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn comparison_principle_on_ordered_data() {
        let d = unit_interval(1.0 / 50.0);
        let lower = Field::from_fn(d.clone(), any_range(), |x, _| {
            0.5 * math::sin(PI * x)
        })
        .unwrap();
        let upper = Field::from_fn(d.clone(), any_range(), |x, _| {
            math::sin(PI * x) + 0.1 * math::sin(2.0 * PI * x).abs()
        })
        .unwrap();
        let lo_states = fd_evolve(&d, &lower, &[0.01, 0.05], 1e-3).unwrap();
        let hi_states = fd_evolve(&d, &upper, &[0.01, 0.05], 1e-3).unwrap();
        for (ls, hs) in lo_states.iter().zip(&hi_states) {
            for i in 0..d.len() {
                assert!(ls.field.value(i) <= hs.field.value(i) + 1e-12);
            }
        }
    }

    #[test]
    fn square_domain_evolution_is_symmetric() {
        let square = alloc::vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let d = Arc::new(Domain::polygon(square, 1.0 / 20.0).unwrap());
        let bump = Field::from_fn(d.clone(), any_range(), |x, y| {
            math::sin(PI * x) * math::sin(PI * y)
        })
        .unwrap();
        let states = fd_evolve(&d, &bump, &[0.01], 1e-3).unwrap();
        // x <-> y symmetry of data and domain survives evolution
        for i in 0..d.len() {
            let (x, y) = d.coords(i);
            let j = d.node_near(y, x).unwrap();
            assert!((states[0].field.value(i) - states[0].field.value(j)).abs() < 1e-10);
        }
        // and the decay rate is near the analytic 2π²
        let decay = states[0].field.value(d.node_near(0.5, 0.5).unwrap());
        assert!((decay - math::exp(-2.0 * PI * PI * 0.01)).abs() < 5e-3);
    }

    #[test]
    fn bad_targets_rejected() {
        let d = unit_interval(0.1);
        let f = Field::from_fn(d.clone(), any_range(), |_, _| 1.0).unwrap();
        assert!(fd_evolve(&d, &f, &[0.2, 0.1], 1e-3).is_err()); // non-monotone
        assert!(fd_evolve(&d, &f, &[0.0005], 1e-3).is_err()); // below dt
        assert!(fd_evolve(&d, &f, &[0.00125], 1e-3).is_err()); // not a multiple
        assert!(fd_evolve(&d, &f, &[0.005], 1e-3).is_err()); // below 10·dt
        assert!(fd_evolve(&d, &f, &[0.01], 1e-3).is_ok());
    }

    #[test]
    fn indicator_stays_log_concave_under_flow() {
        let d = unit_interval(1.0 / 100.0);
        let chi = Field::from_fn(d.clone(), any_range(), |x, _| {
            f64::from(u8::from((0.45..=0.55).contains(&x)))
        })
        .unwrap();
        let reports = preservation_probe(
            &Transform::power_star(0.0),
            &d,
            &chi,
            &[1e-2, 1e-1],
            1e-4,
            1e-4,
            1e-10,
        )
        .unwrap();
        for (t, r) in &reports {
            assert!(r.certified(), "not log-concave at t = {t}: {:?}", r.min_slack);
        }
    }
}
