//! Convex 1D/2D domains discretized on uniform grids: interval segments and
//! convex polygons masked onto a lattice, plus the midpoint-triple machinery
//! used by the concavity checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

#[derive(Clone, Debug, PartialEq)]
pub enum DomainShape {
    Interval { lo: f64, hi: f64 },
    Polygon { vertices: Vec<(f64, f64)> },
}

/// A convex domain with a uniform grid of spacing `h`. Nodes are the lattice
/// points inside the closed domain, stored row-major (y outer, x inner);
/// `interior` marks nodes strictly inside (Dirichlet solvers clamp the rest).
#[derive(Clone, Debug)]
pub struct Domain {
    shape: DomainShape,
    h: f64,
    origin: (f64, f64),
    nx: usize,
    ny: usize,
    /// lattice coordinates of each node
    lattice: Vec<(usize, usize)>,
    /// lattice index -> node index
    node_of: Vec<Option<usize>>,
    interior: Vec<bool>,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl Domain {
    pub fn interval(lo: f64, hi: f64, h: f64) -> Result<Domain> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidDomain(format!(
                "interval domain requires finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        if !(h > 0.0) || h >= hi - lo {
            return Err(Error::InvalidDomain(format!(
                "grid spacing {h} does not fit [{lo}, {hi}]"
            )));
        }
        let nx = (math::round((hi - lo) / h) as usize) + 1;
        if ((nx - 1) as f64 * h - (hi - lo)).abs() > 1e-9 * (hi - lo) {
            return Err(Error::InvalidDomain(format!(
                "spacing {h} does not divide the interval [{lo}, {hi}]"
            )));
        }
        let lattice: Vec<_> = (0..nx).map(|ix| (ix, 0)).collect();
        let node_of = (0..nx).map(Some).collect();
        let interior = (0..nx).map(|ix| ix > 0 && ix + 1 < nx).collect();
        Ok(Domain {
            shape: DomainShape::Interval { lo, hi },
            h,
            origin: (lo, 0.0),
            nx,
            ny: 1,
            lattice,
            node_of,
            interior,
        })
    }

    pub fn polygon(vertices: Vec<(f64, f64)>, h: f64) -> Result<Domain> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidDomain(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        if !(h > 0.0) {
            return Err(Error::InvalidDomain(format!("grid spacing must be > 0, got {h}")));
        }
        // counterclockwise convexity: every consecutive cross-product >= 0,
        // and at least one strictly positive
        let mut any_positive = false;
        for i in 0..n {
            let c = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if c < 0.0 {
                return Err(Error::InvalidDomain(format!(
                    "polygon is not convex counterclockwise at vertex {}",
                    (i + 1) % n
                )));
            }
            if c > 0.0 {
                any_positive = true;
            }
        }
        if !any_positive {
            return Err(Error::InvalidDomain(
                "polygon vertices are collinear".into(),
            ));
        }

        let min_x = vertices.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
        let max_x = vertices.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = vertices.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
        let max_y = vertices.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
        let scale = [min_x, max_x, min_y, max_y]
            .iter()
            .fold(1.0_f64, |acc, v| acc.max(v.abs()));
        let eps = 1e-12 * scale;

        let nx = (math::floor((max_x - min_x) / h + 1e-9) as usize) + 1;
        let ny = (math::floor((max_y - min_y) / h + 1e-9) as usize) + 1;
        let side = |p: (f64, f64)| -> f64 {
            // min signed distance proxy: most-violating edge test
            let mut worst = f64::INFINITY;
            for i in 0..n {
                worst = worst.min(cross(vertices[i], vertices[(i + 1) % n], p));
            }
            worst
        };

        let mut lattice = Vec::new();
        let mut node_of = vec![None; nx * ny];
        let mut interior = Vec::new();
        for iy in 0..ny {
            for ix in 0..nx {
                let p = (min_x + ix as f64 * h, min_y + iy as f64 * h);
                let s = side(p);
                if s >= -eps {
                    node_of[iy * nx + ix] = Some(lattice.len());
                    lattice.push((ix, iy));
                    interior.push(s > eps);
                }
            }
        }
        if lattice.is_empty() {
            return Err(Error::InvalidDomain(
                "no grid nodes fall inside the polygon".into(),
            ));
        }
        Ok(Domain {
            shape: DomainShape::Polygon { vertices },
            h,
            origin: (min_x, min_y),
            nx,
            ny,
            lattice,
            node_of,
            interior,
        })
    }

    pub fn shape(&self) -> &DomainShape {
        &self.shape
    }

    pub fn is_1d(&self) -> bool {
        self.ny == 1
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// Physical coordinates of a node (`y = 0` for 1D domains).
    pub fn coords(&self, node: usize) -> (f64, f64) {
        let (ix, iy) = self.lattice[node];
        (
            self.origin.0 + ix as f64 * self.h,
            self.origin.1 + iy as f64 * self.h,
        )
    }

    pub fn lattice_coords(&self, node: usize) -> (usize, usize) {
        self.lattice[node]
    }

    pub fn node_at(&self, ix: usize, iy: usize) -> Option<usize> {
        if ix >= self.nx || iy >= self.ny {
            return None;
        }
        self.node_of[iy * self.nx + ix]
    }

    /// Strictly inside the domain (not on the discrete boundary).
    pub fn is_interior(&self, node: usize) -> bool {
        self.interior[node]
    }

    pub fn interior_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.interior[i])
    }

    /// The node at physical position `(x, y)`, if it lies on the lattice
    /// within a tight snapping tolerance.
    pub fn node_near(&self, x: f64, y: f64) -> Option<usize> {
        let fx = (x - self.origin.0) / self.h;
        let fy = (y - self.origin.1) / self.h;
        let ix = math::round(fx);
        let iy = math::round(fy);
        if ix < 0.0 || iy < 0.0 || (fx - ix).abs() > 1e-6 || (fy - iy).abs() > 1e-6 {
            return None;
        }
        self.node_at(ix as usize, iy as usize)
    }

    /// All midpoint triples `(x, m, y)` of distinct nodes whose lattice gaps
    /// are even and whose midpoint is itself a node, in a fixed total order
    /// (pair order by node index) so reports are deterministic.
    pub fn midpoint_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut triples = Vec::new();
        for i in 0..self.len() {
            let (ix, iy) = self.lattice[i];
            for j in (i + 1)..self.len() {
                let (jx, jy) = self.lattice[j];
                if (ix + jx) % 2 != 0 || (iy + jy) % 2 != 0 {
                    continue;
                }
                if let Some(m) = self.node_at((ix + jx) / 2, (iy + jy) / 2) {
                    triples.push((i, m, j));
                }
            }
        }
        triples
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_grid_layout() {
        let d = Domain::interval(-1.0, 1.0, 0.5).unwrap();
        assert_eq!(d.len(), 5);
        assert!(d.is_1d());
        assert_eq!(d.coords(0), (-1.0, 0.0));
        assert_eq!(d.coords(4), (1.0, 0.0));
        assert!(!d.is_interior(0));
        assert!(d.is_interior(2));
        assert_eq!(d.node_near(0.5, 0.0), Some(3));
        assert_eq!(d.node_near(0.3, 0.0), None);
    }

    #[test]
    fn interval_triples_have_node_midpoints() {
        let d = Domain::interval(0.0, 1.0, 0.25).unwrap();
        let triples = d.midpoint_triples();
        // gaps of 2 and 4 on 5 nodes: (0,1,2),(0,2,4),(1,2,3),(2,3,4)
        assert_eq!(triples.len(), 4);
        for (x, m, y) in triples {
            let (cx, _) = d.coords(x);
            let (cm, _) = d.coords(m);
            let (cy, _) = d.coords(y);
            assert!((cm - 0.5 * (cx + cy)).abs() < 1e-15);
        }
    }

    #[test]
    fn square_polygon_mask() {
        let square = vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let d = Domain::polygon(square, 0.25).unwrap();
        assert_eq!(d.len(), 25);
        assert_eq!(d.interior_nodes().count(), 9);
        assert!(!d.is_1d());
    }

    #[test]
    fn triangle_mask_excludes_outside() {
        let tri = vec![(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
        let d = Domain::polygon(tri, 0.25).unwrap();
        // nodes with x + y <= 1: 15 of the 25 bounding-box points
        assert_eq!(d.len(), 15);
        for i in 0..d.len() {
            let (x, y) = d.coords(i);
            assert!(x + y <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Domain::interval(1.0, 0.0, 0.1).is_err());
        assert!(Domain::interval(0.0, 1.0, 0.3).is_err()); // does not divide
        // clockwise square
        let cw = vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)];
        assert!(Domain::polygon(cw, 0.25).is_err());
        let line = vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)];
        assert!(Domain::polygon(line, 0.25).is_err());
    }
}
