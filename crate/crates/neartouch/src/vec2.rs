//! Small planar vector types.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    pub const fn new(x1: f64, x2: f64) -> Self {
        Vec2 { x1, x2 }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x1, -self.x2)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x1 * s, self.x2 * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

/// Complex 2-vector, used for gradients of complex fields.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CVec2 {
    pub x1: Complex64,
    pub x2: Complex64,
}

impl CVec2 {
    pub const ZERO: CVec2 = CVec2 {
        x1: Complex64::new(0.0, 0.0),
        x2: Complex64::new(0.0, 0.0),
    };

    pub fn new(x1: Complex64, x2: Complex64) -> Self {
        CVec2 { x1, x2 }
    }

    /// Scalar field gradient `s * v` for real direction `v`.
    pub fn along(s: Complex64, v: Vec2) -> Self {
        CVec2::new(s * v.x1, s * v.x2)
    }

    /// Hermitian norm `sqrt(|a|^2 + |b|^2)`.
    pub fn norm(self) -> f64 {
        (self.x1.norm_sqr() + self.x2.norm_sqr()).sqrt()
    }

    pub fn dot_real(self, v: Vec2) -> Complex64 {
        self.x1 * v.x1 + self.x2 * v.x2
    }
}

impl Add for CVec2 {
    type Output = CVec2;
    fn add(self, o: CVec2) -> CVec2 {
        CVec2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for CVec2 {
    type Output = CVec2;
    fn sub(self, o: CVec2) -> CVec2 {
        CVec2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Mul<Complex64> for CVec2 {
    type Output = CVec2;
    fn mul(self, s: Complex64) -> CVec2 {
        CVec2::new(self.x1 * s, self.x2 * s)
    }
}
