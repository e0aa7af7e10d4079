//! Maximum of |grad u| in the narrow gap.

use super::Solution;
use crate::geometry::Disk;
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};

/// Samples on the gap segment {(0, t) : |t| <= eps}, endpoints included.
const SEGMENT_SAMPLES: usize = 65;
/// Golden-section iterations around the best segment sample.
const REFINE_STEPS: usize = 40;
/// Samples per guard curve.
const GUARD_SAMPLES: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapMaximum {
    pub value: f64,
    pub location: Vec2,
    /// Whether the maximum over all samples was attained on the segment.
    pub on_segment: bool,
    /// Largest value seen on the guard curves alone.
    pub guard_value: f64,
}

/// |grad u| at (0, t) for |t| <= eps; the endpoints lie on the circles.
fn segment_value(sol: &Solution, t: f64) -> f64 {
    let eps = sol.pair.eps;
    if t >= eps {
        sol.boundary_density(Disk::One, 0.0).norm()
    } else if t <= -eps {
        sol.boundary_density(Disk::Two, 0.0).norm()
    } else {
        sol.gradient(Vec2::new(0.0, t))
            .map(|g| g.norm())
            .unwrap_or(0.0)
    }
}

/// Sup of |grad u| over the gap segment, refined by golden-section search,
/// compared against guard samples of the gap neighbourhood |x1| < r0 with
/// r0 = min(r1, r2) / 2: both boundary arcs, the midline between them and
/// the two mouth segments at x1 = +-r0.
pub fn max_gap_gradient(sol: &Solution) -> GapMaximum {
    let eps = sol.pair.eps;
    let ts: Vec<f64> = (0..SEGMENT_SAMPLES)
        .map(|i| -eps + 2.0 * eps * i as f64 / (SEGMENT_SAMPLES - 1) as f64)
        .collect();
    let vals: Vec<f64> = ts.iter().map(|&t| segment_value(sol, t)).collect();
    let ib = (0..vals.len())
        .max_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap_or(0);
    let (mut best_t, mut best_v) = (ts[ib], vals[ib]);
    if ib > 0 && ib + 1 < ts.len() {
        let (t, v) = golden_max(|t| segment_value(sol, t), ts[ib - 1], ts[ib + 1]);
        if v > best_v {
            best_t = t;
            best_v = v;
        }
    }
    let (guard_value, guard_at) = guards(sol);
    if guard_value > best_v {
        GapMaximum {
            value: guard_value,
            location: guard_at,
            on_segment: false,
            guard_value,
        }
    } else {
        GapMaximum {
            value: best_v,
            location: Vec2::new(0.0, best_t),
            on_segment: true,
            guard_value,
        }
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..REFINE_STEPS {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn guards(sol: &Solution) -> (f64, Vec2) {
    let pair = &sol.pair;
    let r0 = 0.5 * pair.min_radius();
    let mut best = (0.0, Vec2::ZERO);
    let mut consider = |v: f64, x: Vec2| {
        if v > best.0 {
            best = (v, x);
        }
    };
    // Boundary arcs, using the nodal density where grad u = psi nu.
    for (node, psi) in sol.disc.nodes.iter().zip(&sol.density) {
        if node.pos.x1.abs() < r0 && node.phi.abs() < 0.5 * std::f64::consts::PI {
            consider(psi.norm(), node.pos);
        }
    }
    // Abscissae clustered towards x1 = 0 where the gap is narrowest.
    let xs: Vec<f64> = (0..GUARD_SAMPLES)
        .map(|i| {
            let s = -1.0 + 2.0 * (i as f64 + 0.5) / GUARD_SAMPLES as f64;
            r0 * s * s * s.abs()
        })
        .collect();
    for &x1 in &xs {
        let (Ok(g1), Ok(g2)) = (
            pair.arc_height(Disk::One, x1),
            pair.arc_height(Disk::Two, x1),
        ) else {
            continue;
        };
        let x = Vec2::new(x1, 0.5 * (g1 - g2));
        if let Ok(g) = sol.gradient(x) {
            consider(g.norm(), x);
        }
    }
    for x1 in [-r0, r0] {
        let (Ok(g1), Ok(g2)) = (
            pair.arc_height(Disk::One, x1),
            pair.arc_height(Disk::Two, x1),
        ) else {
            continue;
        };
        let (top, bottom) = (pair.eps + g1, -(pair.eps + g2));
        for i in 1..16 {
            let x = Vec2::new(x1, bottom + (top - bottom) * i as f64 / 16.0);
            if let Ok(g) = sol.gradient(x) {
                consider(g.norm(), x);
            }
        }
    }
    best
}
