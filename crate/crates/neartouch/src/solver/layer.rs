//! Product integration of layer kernels against the panel interpolant.
//!
//! For a target x and a panel, `panel_weights` returns W_m with
//! int_panel K(x, y) sigma(y) ds_y = sum_m W_m sigma_m for any density that
//! is a degree-15 polynomial in the panel parameter.  Near targets (including
//! targets on the panel itself) are handled by recursive bisection of the
//! parameter interval until every piece is at least `ACCEPT` of its own
//! length away from x.

use super::panels::{Discretization, Panel};
use crate::gauss::{GL16, PANEL_ORDER};
use crate::specfun::hankel1_01;
use crate::vec2::{CVec2, Vec2};
use num_complex::Complex64;

/// A piece is integrated directly once dist >= ACCEPT * length.
const ACCEPT: f64 = 1.0;
/// Bisection depth cap; the last piece around an on-curve target has
/// length ~ 2^-MAX_DEPTH of the panel.
const MAX_DEPTH: usize = 44;

/// Kernels evaluated at source points.
pub trait Kernel {
    type Out: Copy + Default + std::ops::AddAssign + std::ops::Mul<f64, Output = Self::Out>;
    fn eval(&self, y: Vec2) -> Self::Out;
}

/// Phi(x, y) = (i/4) H_0(k |x - y|).
pub struct SingleLayer {
    pub k: f64,
    pub x: Vec2,
}

impl Kernel for SingleLayer {
    type Out = Complex64;
    #[inline]
    fn eval(&self, y: Vec2) -> Complex64 {
        let r = self.x.dist(y);
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (h0, _) = hankel1_01(self.k * r);
        Complex64::new(0.0, 0.25) * h0
    }
}

/// grad_x Phi(x, y) = -(i k / 4) H_1(k |x - y|) (x - y) / |x - y|.
pub struct SingleLayerGradient {
    pub k: f64,
    pub x: Vec2,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CPair(pub Complex64, pub Complex64);

impl std::ops::AddAssign for CPair {
    fn add_assign(&mut self, o: CPair) {
        self.0 += o.0;
        self.1 += o.1;
    }
}

impl std::ops::Mul<f64> for CPair {
    type Output = CPair;
    fn mul(self, s: f64) -> CPair {
        CPair(self.0 * s, self.1 * s)
    }
}

impl From<CPair> for CVec2 {
    fn from(p: CPair) -> CVec2 {
        CVec2::new(p.0, p.1)
    }
}

impl Kernel for SingleLayerGradient {
    type Out = CPair;
    #[inline]
    fn eval(&self, y: Vec2) -> CPair {
        let d = self.x - y;
        let r = d.norm();
        if r == 0.0 {
            return CPair::default();
        }
        let (_, h1) = hankel1_01(self.k * r);
        let s = Complex64::new(0.0, -0.25 * self.k) * h1 / r;
        CPair(s * d.x1, s * d.x2)
    }
}

/// True when the whole panel can be integrated with its own nodes.
pub fn is_far(disc: &Discretization, panel: &Panel, x: Vec2) -> bool {
    let c = disc.circle(panel.disk);
    let len = c.radius * (panel.phi_b - panel.phi_a);
    c.dist_to_arc(x, panel.phi_a, panel.phi_b) >= ACCEPT * len
}

/// Product-integration weights of `panel` for target x.
pub fn panel_weights<K: Kernel>(
    disc: &Discretization,
    panel: &Panel,
    x: Vec2,
    kernel: &K,
) -> [K::Out; PANEL_ORDER] {
    let mut out = [K::Out::default(); PANEL_ORDER];
    if is_far(disc, panel, x) {
        for (m, o) in out.iter_mut().enumerate() {
            let n = &disc.nodes[panel.first + m];
            *o = kernel.eval(n.pos) * n.weight;
        }
        return out;
    }
    let g = &*GL16;
    let c = disc.circle(panel.disk);
    let dphi = panel.half_angle();
    let mut basis = [0.0; PANEL_ORDER];
    let mut stack: Vec<(f64, f64, usize)> = Vec::with_capacity(2 * MAX_DEPTH + 4);
    stack.push((-1.0, 1.0, 0));
    while let Some((ta, tb, depth)) = stack.pop() {
        let (pa, pb) = (panel.phi_of(ta), panel.phi_of(tb));
        let len = c.radius * (pb - pa);
        if depth < MAX_DEPTH && c.dist_to_arc(x, pa, pb) < ACCEPT * len {
            let tm = 0.5 * (ta + tb);
            stack.push((ta, tm, depth + 1));
            stack.push((tm, tb, depth + 1));
            continue;
        }
        let h = 0.5 * (tb - ta);
        let mid = 0.5 * (tb + ta);
        for q in 0..PANEL_ORDER {
            let t = mid + h * g.nodes[q];
            let phi = panel.phi_of(t);
            let w = g.weights[q] * h * dphi * c.radius;
            let kv = kernel.eval(c.point(phi)) * w;
            g.lagrange_basis(t, &mut basis);
            for m in 0..PANEL_ORDER {
                out[m] += kv * basis[m];
            }
        }
    }
    out
}
