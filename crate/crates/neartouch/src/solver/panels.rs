//! Composite Gauss-Legendre panels on the two circles, graded towards the
//! fixed points where the boundary density varies on the sqrt(eps) scale.

use crate::gauss::{GL16, PANEL_ORDER};
use crate::geometry::{Disk, DiskPair};
use crate::vec2::Vec2;
use std::f64::consts::PI;

/// Circle j is parametrised by phi in [-pi, pi] with phi = 0 at the point
/// closest to the gap:  x(phi) = (r sin phi, s (eps + 2 r sin^2(phi/2)))
/// with s = +1 for disk 1 and -1 for disk 2 (this form avoids cancellation
/// near the gap).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Vec2,
    pub radius: f64,
    pub eps: f64,
    pub side: f64,
}

impl Circle {
    pub fn of(pair: &DiskPair, j: Disk) -> Self {
        Circle {
            center: pair.center(j),
            radius: pair.radius(j),
            eps: pair.eps,
            side: j.sign(),
        }
    }

    pub fn point(&self, phi: f64) -> Vec2 {
        let s = (0.5 * phi).sin();
        Vec2::new(
            self.radius * phi.sin(),
            self.side * (self.eps + 2.0 * self.radius * s * s),
        )
    }

    pub fn normal(&self, phi: f64) -> Vec2 {
        Vec2::new(phi.sin(), -self.side * phi.cos())
    }

    /// Parameter of the radial projection of x onto the circle.
    pub fn angle_of(&self, x: Vec2) -> f64 {
        let v = x - self.center;
        v.x1.atan2(-self.side * v.x2)
    }

    /// Distance from x to the arc phi in [a, b].
    pub fn dist_to_arc(&self, x: Vec2, a: f64, b: f64) -> f64 {
        let phi = self.angle_of(x);
        if phi >= a && phi <= b {
            (x.dist(self.center) - self.radius).abs()
        } else {
            x.dist(self.point(a)).min(x.dist(self.point(b)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub disk: Disk,
    pub phi_a: f64,
    pub phi_b: f64,
    /// Index of the panel's first node in `Discretization::nodes`.
    pub first: usize,
}

impl Panel {
    pub fn phi_of(&self, t: f64) -> f64 {
        0.5 * (self.phi_a + self.phi_b) + 0.5 * (self.phi_b - self.phi_a) * t
    }

    /// d phi / d t.
    pub fn half_angle(&self) -> f64 {
        0.5 * (self.phi_b - self.phi_a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub disk: Disk,
    pub panel: usize,
    pub phi: f64,
    pub pos: Vec2,
    pub normal: Vec2,
    /// Arc-length quadrature weight.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discretization {
    pub pair: DiskPair,
    pub circles: [Circle; 2],
    pub panels: Vec<Panel>,
    pub nodes: Vec<Node>,
    /// Panel length bound relative to the distance to the nearest fixed point.
    pub grading: f64,
}

/// Largest angular extent of any panel.
pub const MAX_PANEL_ANGLE: f64 = PI / 8.0;

impl Discretization {
    pub fn build(pair: &DiskPair, grading: f64) -> Self {
        let circles = [Circle::of(pair, Disk::One), Circle::of(pair, Disk::Two)];
        let fp = pair.fixed_points();
        let sources = [fp.point1(), fp.point2()];
        let mut panels = Vec::new();
        for j in Disk::BOTH {
            let c = &circles[j.index()];
            let mut stack: Vec<(f64, f64)> = (0..16)
                .rev()
                .map(|m| {
                    let a = -PI + m as f64 * PI / 8.0;
                    (a, a + PI / 8.0)
                })
                .collect();
            while let Some((a, b)) = stack.pop() {
                let len = c.radius * (b - a);
                let d = sources
                    .iter()
                    .map(|&p| c.dist_to_arc(p, a, b))
                    .fold(f64::INFINITY, f64::min);
                if (len > grading * d || b - a > MAX_PANEL_ANGLE) && b - a > 1e-12 {
                    let m = 0.5 * (a + b);
                    stack.push((m, b));
                    stack.push((a, m));
                } else {
                    panels.push(Panel {
                        disk: j,
                        phi_a: a,
                        phi_b: b,
                        first: 0,
                    });
                }
            }
        }
        let g = &*GL16;
        let mut nodes = Vec::with_capacity(panels.len() * PANEL_ORDER);
        for (ip, p) in panels.iter_mut().enumerate() {
            p.first = nodes.len();
            let c = &circles[p.disk.index()];
            for q in 0..PANEL_ORDER {
                let phi = p.phi_of(g.nodes[q]);
                nodes.push(Node {
                    disk: p.disk,
                    panel: ip,
                    phi,
                    pos: c.point(phi),
                    normal: c.normal(phi),
                    weight: g.weights[q] * p.half_angle() * c.radius,
                });
            }
        }
        Discretization {
            pair: *pair,
            circles,
            panels,
            nodes,
            grading,
        }
    }

    pub fn circle(&self, j: Disk) -> &Circle {
        &self.circles[j.index()]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Panel of disk j containing parameter phi.
    pub fn locate(&self, j: Disk, phi: f64) -> Option<usize> {
        self.panels
            .iter()
            .position(|p| p.disk == j && phi >= p.phi_a && phi <= p.phi_b)
    }

    /// Interpolates nodal values on disk j at parameter phi.
    pub fn interpolate<T>(&self, j: Disk, phi: f64, values: &[T]) -> Option<T>
    where
        T: Copy + std::ops::Mul<f64, Output = T> + std::iter::Sum<T>,
    {
        let ip = self.locate(j, phi)?;
        let p = &self.panels[ip];
        let t = (phi - 0.5 * (p.phi_a + p.phi_b)) / p.half_angle();
        let mut basis = [0.0; PANEL_ORDER];
        GL16.lagrange_basis(t.clamp(-1.0, 1.0), &mut basis);
        Some(
            (0..PANEL_ORDER)
                .map(|m| values[p.first + m] * basis[m])
                .sum(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_parametrisation() {
        let pair = DiskPair::new(1.0, 0.5, 0.01).unwrap();
        for j in Disk::BOTH {
            let c = Circle::of(&pair, j);
            for phi in [-3.0, -0.5, 0.0, 0.2, 2.9] {
                let x = c.point(phi);
                assert!((x.dist(c.center) - c.radius).abs() < 1e-14);
                assert!(((x - c.center) * (1.0 / c.radius) - c.normal(phi)).norm() < 1e-14);
                assert!((c.angle_of(x) - phi).abs() < 1e-12);
            }
            assert!((c.point(0.0).x2.abs() - 0.01).abs() < 1e-17);
        }
    }

    #[test]
    fn weights_sum_to_circumference() {
        let pair = DiskPair::new(1.0, 0.3, 1e-3).unwrap();
        let d = Discretization::build(&pair, 1.0);
        for j in Disk::BOTH {
            let s: f64 = d
                .nodes
                .iter()
                .filter(|n| n.disk == j)
                .map(|n| n.weight)
                .sum();
            assert!((s - 2.0 * PI * pair.radius(j)).abs() < 1e-12);
        }
        assert_eq!(d.len() % PANEL_ORDER, 0);
    }

    #[test]
    fn grading_refines_near_gap() {
        let pair = DiskPair::new(1.0, 1.0, 1e-4).unwrap();
        let d = Discretization::build(&pair, 1.0);
        let at_gap = d.locate(Disk::One, 0.0).unwrap();
        let p = d.panels[at_gap];
        assert!(p.phi_b - p.phi_a < 0.02);
        let far = d.locate(Disk::One, 3.0).unwrap();
        assert!((d.panels[far].phi_b - d.panels[far].phi_a - MAX_PANEL_ANGLE).abs() < 1e-12);
    }
}
